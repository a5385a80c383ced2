//! Regenerates tests/fixtures/torus1_heat.symbol: the heat semigroup symbol
//! e^{-lambda} on the circle with cutoff 9 (frequencies |j| <= 3).

use std::sync::Arc;

use num_complex::Complex64;
use specmult::io::write_symbol;
use specmult::manifold::{enumerate_partition, ManifoldId};
use specmult::symbol::Symbol;

fn main() {
    let cutoff = 9.0;
    let p = Arc::new(enumerate_partition(ManifoldId::Torus(1), cutoff).unwrap());
    let s = Symbol::from_spectral_function(p, |lambda| Complex64::new((-lambda).exp(), 0.0))
        .unwrap();
    print!("{}", write_symbol(&s, cutoff));
}

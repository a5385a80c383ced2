//! Deterministic random inputs for tests and diagnostics.

use num_complex::Complex64;
use rand::Rng;

use crate::linalg::CMatrix;

/// Matrix with independent standard complex Gaussian-ish entries
/// (uniform in the unit square is enough for conditioning at these sizes).
pub fn complex_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// Haar-ish random unitary via modified Gram-Schmidt on a random matrix.
pub fn unitary(rng: &mut impl Rng, n: usize) -> CMatrix {
    let a = complex_matrix(rng, n, n);
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| a.at(i, j)).collect()).collect();
    for j in 0..n {
        for k in 0..j {
            let proj: Complex64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..n {
                let v = cols[k][i];
                cols[j][i] -= proj * v;
            }
        }
        let norm: f64 = cols[j].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        for v in &mut cols[j] {
            *v /= norm;
        }
    }
    CMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Random complex vector of the given length.
pub fn complex_vector(rng: &mut impl Rng, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

//! Integral-kernel machinery: synthesis of K(x,y) from a symbol, double
//! Fourier coefficients of kernels, mixed-norm quantities, and the
//! sequence-norm vs mixed-norm inequality check.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{GridFunction, Transform};
use crate::linalg::CMatrix;
use crate::manifold::{ManifoldId, Partition, QuadratureGrid};
use crate::symbol::Symbol;

/// Node-count caps for dense kernel storage; overridable per call.
pub const MAX_KERNEL_NODES_TORUS: usize = 4096;
pub const MAX_KERNEL_NODES_SU2: usize = 8000;

pub fn default_kernel_cap(manifold: ManifoldId) -> usize {
    match manifold {
        ManifoldId::Torus(_) => MAX_KERNEL_NODES_TORUS,
        ManifoldId::Su2 => MAX_KERNEL_NODES_SU2,
    }
}

/// Dense kernel values K(x_i, y_j) over all quadrature node pairs.
#[derive(Clone, Debug)]
pub struct GridKernel {
    grid: Arc<QuadratureGrid>,
    /// row-major over (x index, y index)
    values: Vec<Complex64>,
}

impl GridKernel {
    pub fn from_values(grid: Arc<QuadratureGrid>, values: Vec<Complex64>) -> Result<Self> {
        let n = grid.len();
        if values.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} kernel values for {n}x{n} node pairs",
                values.len()
            )));
        }
        for v in &values {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFinite("kernel value".into()));
            }
        }
        Ok(GridKernel { grid, values })
    }

    pub fn grid(&self) -> &Arc<QuadratureGrid> {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    #[inline]
    pub fn at(&self, ix: usize, iy: usize) -> Complex64 {
        self.values[ix * self.grid.len() + iy]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Transposed kernel K(y,x).
    pub fn transpose(&self) -> GridKernel {
        let n = self.grid.len();
        let mut values = vec![Complex64::default(); n * n];
        for i in 0..n {
            for j in 0..n {
                values[j * n + i] = self.values[i * n + j];
            }
        }
        GridKernel { grid: self.grid.clone(), values }
    }

    /// Quadrature L1(M x M) norm.
    pub fn l1_norm(&self) -> f64 {
        let w = self.grid.weights();
        let n = self.grid.len();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += self.values[i * n + j].norm() * w[i] * w[j];
            }
        }
        acc
    }

    /// Quadrature of the diagonal x -> K(x,x).
    pub fn diagonal_integral(&self) -> Complex64 {
        let w = self.grid.weights();
        (0..self.grid.len()).map(|i| self.at(i, i) * w[i]).sum()
    }
}

/// K(x,y) = sum_l sum_{m,k} sigma(l)_{mk} e_l^m(x) conj(e_l^k(y)).
pub fn synthesize(sigma: &Symbol, tr: &Transform) -> Result<GridKernel> {
    synthesize_capped(sigma, tr, default_kernel_cap(tr.grid().manifold()))
}

pub fn synthesize_capped(sigma: &Symbol, tr: &Transform, max_nodes: usize) -> Result<GridKernel> {
    if !sigma.partition().same_layout(tr.partition()) {
        return Err(Error::PartitionMismatch("symbol from a different partition".into()));
    }
    let n = tr.grid().len();
    if n > max_nodes {
        return Err(Error::BandExceeded(format!(
            "kernel needs {n}x{n} node pairs, cap is {max_nodes} nodes"
        )));
    }
    let offsets = tr.partition().level_offsets();
    let mut values = vec![Complex64::default(); n * n];
    for (li, level) in tr.partition().levels().iter().enumerate() {
        let d = level.dim();
        let mat = sigma.level(li);
        // w[m][y] = sum_k sigma_{mk} conj(e_l^k(y))
        let mut w = vec![vec![Complex64::default(); n]; d];
        for m in 0..d {
            for k in 0..d
            {
                let s = mat.at(m, k);
                if s.norm_sqr() == 0.0 {
                    continue;
                }
                let basis_k = tr.basis_values(offsets[li] + k);
                for (wy, bk) in w[m].iter_mut().zip(basis_k) {
                    *wy += s * bk.conj();
                }
            }
        }
        for m in 0..d {
            let basis_m = tr.basis_values(offsets[li] + m);
            for ix in 0..n {
                let e = basis_m[ix];
                if e.norm_sqr() == 0.0 {
                    continue;
                }
                let row = &mut values[ix * n..(ix + 1) * n];
                for (rv, wy) in row.iter_mut().zip(&w[m]) {
                    *rv += e * wy;
                }
            }
        }
    }
    GridKernel::from_values(tr.grid().clone(), values)
}

/// Integral-operator action (Tf)(x) = int K(x,y) f(y) dy by quadrature.
pub fn apply_kernel(k: &GridKernel, f: &GridFunction) -> Result<GridFunction> {
    let n = k.len();
    if f.values().len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} samples against a {n}-node kernel",
            f.values().len()
        )));
    }
    let w = k.grid().weights();
    let values = (0..n)
        .map(|ix| (0..n).map(|iy| k.at(ix, iy) * f.values()[iy] * w[iy]).sum())
        .collect();
    GridFunction::from_values(k.grid().clone(), values)
}

/// Double Fourier coefficients of a kernel over all flattened basis pairs:
/// entry (flat(l,m), flat(l',m')) = int int K(x,y) conj(e_l^m(x)) e_{l'}^{m'}(y).
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    partition: Arc<Partition>,
    table: CMatrix,
}

impl CoefficientTable {
    pub fn partition(&self) -> &Arc<Partition> {
        &self.partition
    }

    pub fn table(&self) -> &CMatrix {
        &self.table
    }

    /// Largest magnitude among entries coupling different levels.
    pub fn off_block_mass(&self) -> f64 {
        let offsets = self.partition.level_offsets();
        let levels = self.partition.levels();
        let mut max = 0.0f64;
        for (a, la) in levels.iter().enumerate() {
            for (b, lb) in levels.iter().enumerate() {
                if a == b {
                    continue;
                }
                for m in 0..la.dim() {
                    for mp in 0..lb.dim() {
                        max = max.max(self.table.at(offsets[a] + m, offsets[b] + mp).norm());
                    }
                }
            }
        }
        max
    }

    /// Per-level diagonal blocks reassembled as a symbol.
    pub fn diagonal_symbol(&self) -> Result<Symbol> {
        let offsets = self.partition.level_offsets();
        let mats = self
            .partition
            .levels()
            .iter()
            .zip(&offsets)
            .map(|(l, &o)| CMatrix::from_fn(l.dim(), l.dim(), |m, mp| self.table.at(o + m, o + mp)))
            .collect();
        Symbol::from_matrices(self.partition.clone(), mats)
    }
}

pub fn kernel_coefficients(k: &GridKernel, tr: &Transform) -> Result<CoefficientTable> {
    if !Arc::ptr_eq(k.grid(), tr.grid()) && k.len() != tr.grid().len() {
        return Err(Error::PartitionMismatch("kernel from a different grid".into()));
    }
    let n = k.len();
    let w = tr.grid().weights();
    let s = tr.partition().total_dim();
    // stage 1: integrate out y against e_{flat'}(y)
    let mut stage = vec![vec![Complex64::default(); n]; s];
    for (fp, st) in stage.iter_mut().enumerate() {
        let basis = tr.basis_values(fp);
        for ix in 0..n {
            let mut acc = Complex64::default();
            for iy in 0..n {
                acc += k.at(ix, iy) * basis[iy] * w[iy];
            }
            st[ix] = acc;
        }
    }
    // stage 2: integrate out x against conj(e_flat(x))
    let mut table = CMatrix::zeros(s, s);
    for f in 0..s {
        let basis = tr.basis_values(f);
        for (fp, st) in stage.iter().enumerate() {
            let mut acc = Complex64::default();
            for ix in 0..n {
                acc += st[ix] * basis[ix].conj() * w[ix];
            }
            table.set(f, fp, acc);
        }
    }
    Ok(CoefficientTable { partition: tr.partition().clone(), table })
}

/// Iterated mixed norms of a kernel; `None` for an exponent means the grid
/// sup. `xy` integrates y innermost with exponent p2 and x outermost with
/// p1; `yx` swaps the roles of the two variables. `lp1p2` is the max.
#[derive(Clone, Copy, Debug)]
pub struct MixedNorms {
    pub xy: f64,
    pub yx: f64,
    pub lp1p2: f64,
}

pub fn mixed_norm(k: &GridKernel, p1: Option<f64>, p2: Option<f64>) -> Result<MixedNorms> {
    for p in [p1, p2].into_iter().flatten() {
        if !(p >= 1.0) {
            return Err(Error::InvalidArgument(format!("mixed-norm exponent {p} below 1")));
        }
    }
    let n = k.len();
    let w = k.grid().weights();
    let outer = |inner_vals: &[f64]| -> f64 {
        match p1 {
            None => inner_vals.iter().cloned().fold(0.0, f64::max),
            Some(p) => inner_vals
                .iter()
                .zip(w)
                .map(|(v, wi)| v.powf(p) * wi)
                .sum::<f64>()
                .powf(1.0 / p),
        }
    };
    let inner = |vals: Box<dyn Iterator<Item = Complex64> + '_>| -> f64 {
        match p2 {
            None => vals.map(|v| v.norm()).fold(0.0, f64::max),
            Some(p) => vals
                .zip(w)
                .map(|(v, wi)| v.norm().powf(p) * wi)
                .sum::<f64>()
                .powf(1.0 / p),
        }
    };
    let per_x: Vec<f64> =
        (0..n).map(|ix| inner(Box::new((0..n).map(move |iy| k.at(ix, iy))))).collect();
    let per_y: Vec<f64> =
        (0..n).map(|iy| inner(Box::new((0..n).map(move |ix| k.at(ix, iy))))).collect();
    let xy = outer(&per_x);
    let yx = outer(&per_y);
    Ok(MixedNorms { xy, yx, lp1p2: xy.max(yx) })
}

/// Sequence-norm vs mixed-norm inequality for invariant kernels:
/// for p in [1,2] with conjugate p', checks
/// (sum_l ||sigma(l)||_{S_{p'}}^{p'})^{1/p'} <= L^{(p',p)} mixed norm.
/// Interior violations above 1 + 1e-6 are flagged, not failed.
#[derive(Clone, Debug)]
pub struct Ffb2Report {
    pub p: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub ok: bool,
    pub flagged: bool,
}

pub fn ffb2_check(
    k: &GridKernel,
    tr: &Transform,
    p: f64,
    invariance_tol: f64,
) -> Result<Ffb2Report> {
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("exponent p={p} outside [1,2]")));
    }
    let coeffs = kernel_coefficients(k, tr)?;
    let off = coeffs.off_block_mass();
    if off > invariance_tol {
        return Err(Error::BlockStructure { max_deviation: off, tolerance: invariance_tol });
    }
    let sigma = coeffs.diagonal_symbol()?;
    let (lhs, p_dual) = if p == 1.0 {
        (sigma.l2_bound()?, None)
    } else {
        let pd = p / (p - 1.0);
        (sigma.schatten(pd)?.value, Some(pd))
    };
    let rhs = mixed_norm(k, p_dual, Some(p))?.lp1p2;
    let ratio = if rhs > 0.0 { lhs / rhs } else if lhs == 0.0 { 0.0 } else { f64::INFINITY };
    let interior = p > 1.0 && p < 2.0;
    let ok = ratio <= 1.0 + 1e-9 || (interior && ratio <= 1.0 + 1e-6);
    let flagged = interior && ratio > 1.0 + 1e-6;
    Ok(Ffb2Report { p, lhs, rhs, ratio, ok, flagged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::FourierCoefficients;
    use crate::linalg;
    use crate::manifold::{build_quadrature, enumerate_partition, eval_basis, Point};
    use crate::random;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(manifold: ManifoldId, cutoff: f64) -> Transform {
        let p = Arc::new(enumerate_partition(manifold, cutoff).unwrap());
        let g = Arc::new(build_quadrature(&p, cutoff).unwrap());
        Transform::new(p, g).unwrap()
    }

    fn random_symbol(rng: &mut impl Rng, partition: &Arc<Partition>) -> Symbol {
        let mats = partition
            .levels()
            .iter()
            .map(|l| random::complex_matrix(rng, l.dim(), l.dim()))
            .collect();
        Symbol::from_matrices(partition.clone(), mats).unwrap()
    }

    #[test]
    fn identity_symbol_gives_dirichlet_kernel() {
        let tr = setup(ManifoldId::Torus(1), 16.0);
        let k = synthesize(&Symbol::identity(tr.partition().clone()), &tr).unwrap();
        let nn = 2.0 * 4.0 + 1.0; // 2N+1 retained frequencies
        for ix in 0..k.len() {
            for iy in 0..k.len() {
                let (x, y) = match (&tr.grid().nodes()[ix], &tr.grid().nodes()[iy]) {
                    (Point::Torus(a), Point::Torus(b)) => (a[0], b[0]),
                    _ => unreachable!(),
                };
                let t = x - y;
                let expect = if (t * std::f64::consts::PI).sin().abs() < 1e-12 {
                    nn
                } else {
                    (nn * std::f64::consts::PI * t).sin() / (std::f64::consts::PI * t).sin()
                };
                assert!(
                    (k.at(ix, iy) - Complex64::new(expect, 0.0)).norm() < 1e-10,
                    "({ix},{iy}): {} vs {expect}",
                    k.at(ix, iy)
                );
            }
        }
    }

    #[test]
    fn single_entry_symbol_gives_rank_one_kernel() {
        let tr = setup(ManifoldId::Torus(1), 9.0);
        let p = tr.partition().clone();
        let mut mats: Vec<CMatrix> =
            p.levels().iter().map(|l| CMatrix::zeros(l.dim(), l.dim())).collect();
        let s = Complex64::new(0.7, -1.2);
        let (li, m, kk) = (2usize, 1usize, 0usize);
        mats[li].set(m, kk, s);
        let sym = Symbol::from_matrices(p.clone(), mats).unwrap();
        let ker = synthesize(&sym, &tr).unwrap();
        for ix in 0..ker.len() {
            for iy in 0..ker.len() {
                let em = eval_basis(&p, li, m + 1, &tr.grid().nodes()[ix]).unwrap();
                let ek = eval_basis(&p, li, kk + 1, &tr.grid().nodes()[iy]).unwrap();
                assert!((ker.at(ix, iy) - s * em * ek.conj()).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn kernel_and_coefficient_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for manifold in [ManifoldId::Torus(1), ManifoldId::Su2] {
            let tr = setup(manifold, if manifold == ManifoldId::Su2 { 2.0 } else { 16.0 });
            let p = tr.partition().clone();
            let sym = random_symbol(&mut rng, &p);
            let ker = synthesize(&sym, &tr).unwrap();
            let data = p.levels().iter().map(|l| random::complex_vector(&mut rng, l.dim())).collect();
            let c = FourierCoefficients::from_vectors(p.clone(), data).unwrap();
            let f = tr.inverse(&c).unwrap();
            let via_kernel = apply_kernel(&ker, &f).unwrap();
            let via_coeffs = tr.inverse(&sym.apply(&tr.forward(&f).unwrap()).unwrap()).unwrap();
            for (a, b) in via_kernel.values().iter().zip(via_coeffs.values()) {
                assert!((a - b).norm() < 1e-9, "{manifold:?}");
            }
        }
    }

    #[test]
    fn coefficients_round_trip_symbol() {
        let mut rng = ChaCha8Rng::seed_from_u64(62);
        let tr = setup(ManifoldId::Torus(1), 16.0);
        let p = tr.partition().clone();
        let sym = random_symbol(&mut rng, &p);
        let table = kernel_coefficients(&synthesize(&sym, &tr).unwrap(), &tr).unwrap();
        assert!(table.off_block_mass() < 1e-10);
        let got = table.diagonal_symbol().unwrap();
        for (a, b) in sym.matrices().iter().zip(got.matrices()) {
            assert!(a.sub(b).unwrap().max_abs() < 1e-11);
        }
    }

    #[test]
    fn separable_cross_level_kernel_is_not_invariant() {
        // K(x,y) = e_a(x) conj(e_b(y)) with a, b from different levels puts
        // exactly one unit entry in an off-diagonal block
        let tr = setup(ManifoldId::Torus(1), 9.0);
        let p = tr.partition().clone();
        let n = tr.grid().len();
        let mut values = vec![Complex64::default(); n * n];
        for ix in 0..n {
            for iy in 0..n {
                let ea = eval_basis(&p, 1, 1, &tr.grid().nodes()[ix]).unwrap();
                let eb = eval_basis(&p, 2, 2, &tr.grid().nodes()[iy]).unwrap();
                values[ix * n + iy] = ea * eb.conj();
            }
        }
        let ker = GridKernel::from_values(tr.grid().clone(), values).unwrap();
        let table = kernel_coefficients(&ker, &tr).unwrap();
        let offsets = p.level_offsets();
        assert!((table.off_block_mass() - 1.0).abs() < 1e-12);
        assert!((table.table().at(offsets[1], offsets[2] + 1) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(matches!(
            ffb2_check(&ker, &tr, 2.0, 1e-8),
            Err(Error::BlockStructure { .. })
        ));
    }

    #[test]
    fn constant_kernel_hits_only_trivial_level() {
        let tr = setup(ManifoldId::Torus(1), 9.0);
        let n = tr.grid().len();
        let ker = GridKernel::from_values(
            tr.grid().clone(),
            vec![Complex64::new(1.0, 0.0); n * n],
        )
        .unwrap();
        let table = kernel_coefficients(&ker, &tr).unwrap();
        let s = tr.partition().total_dim();
        for i in 0..s {
            for j in 0..s {
                let expect = if i == 0 && j == 0 { 1.0 } else { 0.0 };
                assert!((table.table().at(i, j) - Complex64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn mixed_norm_of_constant() {
        let tr = setup(ManifoldId::Torus(1), 9.0);
        let n = tr.grid().len();
        let c = Complex64::new(-1.5, 2.0);
        let ker = GridKernel::from_values(tr.grid().clone(), vec![c; n * n]).unwrap();
        for (p1, p2) in [(Some(1.0), Some(2.0)), (None, Some(1.5)), (Some(2.0), None), (None, None)] {
            let m = mixed_norm(&ker, p1, p2).unwrap();
            assert!((m.xy - c.norm()).abs() < 1e-12);
            assert!((m.yx - c.norm()).abs() < 1e-12);
            assert!((m.lp1p2 - c.norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn hilbert_schmidt_mixed_norm_matches_symbol() {
        let mut rng = ChaCha8Rng::seed_from_u64(63);
        let tr = setup(ManifoldId::Torus(1), 16.0);
        let sym = random_symbol(&mut rng, tr.partition());
        let ker = synthesize(&sym, &tr).unwrap();
        let m = mixed_norm(&ker, Some(2.0), Some(2.0)).unwrap();
        let hs = sym.schatten(2.0).unwrap().value;
        assert!((m.lp1p2 - hs).abs() < 1e-9 * hs, "{} vs {hs}", m.lp1p2);
    }

    #[test]
    fn mixed_norm_transpose_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(64);
        let tr = setup(ManifoldId::Torus(1), 9.0);
        let n = tr.grid().len();
        let values = random::complex_vector(&mut rng, n * n);
        let ker = GridKernel::from_values(tr.grid().clone(), values).unwrap();
        let kt = ker.transpose();
        for (p1, p2) in [(Some(1.0), Some(3.0)), (None, Some(2.0))] {
            let a = mixed_norm(&ker, p1, p2).unwrap();
            let b = mixed_norm(&kt, p1, p2).unwrap();
            assert!((a.xy - b.yx).abs() < 1e-12);
            assert!((a.yx - b.xy).abs() < 1e-12);
        }
    }

    #[test]
    fn ffb2_equality_at_p_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(65);
        let tr = setup(ManifoldId::Torus(1), 16.0);
        for _ in 0..5 {
            let sym = random_symbol(&mut rng, tr.partition());
            let ker = synthesize(&sym, &tr).unwrap();
            let rep = ffb2_check(&ker, &tr, 2.0, 1e-8).unwrap();
            assert!((rep.lhs - rep.rhs).abs() < 1e-9 * rep.rhs, "{rep:?}");
            assert!(rep.ok && !rep.flagged);
        }
    }

    #[test]
    fn ffb2_inequality_at_p_one_and_interior() {
        let mut rng = ChaCha8Rng::seed_from_u64(66);
        let tr = setup(ManifoldId::Torus(1), 16.0);
        for _ in 0..10 {
            let sym = random_symbol(&mut rng, tr.partition());
            let ker = synthesize(&sym, &tr).unwrap();
            for p in [1.0, 4.0 / 3.0] {
                let rep = ffb2_check(&ker, &tr, p, 1e-8).unwrap();
                assert!(rep.ok, "p={p}: {rep:?}");
            }
        }
    }

    #[test]
    fn trace_matches_kernel_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        let tr = setup(ManifoldId::Torus(1), 16.0);
        let sym = random_symbol(&mut rng, tr.partition());
        let ker = synthesize(&sym, &tr).unwrap();
        let via_kernel = ker.diagonal_integral();
        let via_symbol = sym.trace_formula().unwrap().value;
        assert!((via_kernel - via_symbol).norm() < 1e-9 * via_symbol.norm().max(1.0));
    }

    #[test]
    fn per_level_outer_product_is_rank_one() {
        // the level contribution matrix e_l(x) (conj e_l(y))^T at any fixed
        // node pair has one dominant singular value
        let tr = setup(ManifoldId::Torus(2), 5.0);
        let p = tr.partition().clone();
        for li in [1usize, 4] {
            let d = p.levels()[li].dim();
            for (ix, iy) in [(0usize, 3usize), (5, 2)] {
                let q = CMatrix::from_fn(d, d, |m, k| {
                    let em = eval_basis(&p, li, m + 1, &tr.grid().nodes()[ix]).unwrap();
                    let ek = eval_basis(&p, li, k + 1, &tr.grid().nodes()[iy]).unwrap();
                    em * ek.conj()
                });
                let sv = linalg::svd(&q).unwrap();
                let s = sv.values();
                assert!(s[0] > 0.0);
                assert!(s[1] < 1e-10 * s[0], "level {li}: {:?}", &s[..2]);
            }
        }
    }

    #[test]
    fn symbol_bound_from_kernel_l1() {
        let mut rng = ChaCha8Rng::seed_from_u64(68);
        let tr = setup(ManifoldId::Torus(1), 9.0);
        let p = tr.partition().clone();
        for _ in 0..5 {
            let sym = random_symbol(&mut rng, &p);
            let ker = synthesize(&sym, &tr).unwrap();
            let l1 = ker.l1_norm();
            for (li, level) in p.levels().iter().enumerate() {
                // sup_x ||e_l(x)||: vector of all level basis values at x
                let sup: f64 = tr
                    .grid()
                    .nodes()
                    .iter()
                    .map(|node| {
                        (1..=level.dim())
                            .map(|k| eval_basis(&p, li, k, node).unwrap().norm_sqr())
                            .sum::<f64>()
                            .sqrt()
                    })
                    .fold(0.0, f64::max);
                let bound = l1 * sup * sup;
                let op = linalg::op_norm(sym.level(li)).unwrap();
                assert!(op <= bound + 1e-9, "level {li}: {op} vs {bound}");
            }
        }
    }

    #[test]
    fn kernel_cap_guard() {
        let tr = setup(ManifoldId::Torus(1), 16.0);
        let sym = Symbol::identity(tr.partition().clone());
        assert!(matches!(
            synthesize_capped(&sym, &tr, 4),
            Err(Error::BandExceeded(_))
        ));
    }
}

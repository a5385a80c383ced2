//! Concrete spectral backends for the torus (n = 1, 2, 3) and SU(2):
//! eigenvalue partitions of the reference Laplacian, eigenfunction
//! evaluation, band-exact quadrature, and Weyl-law diagnostics.
//!
//! Conventions: on the torus `E = -(2 pi)^{-2} Laplacian`, so the character
//! `exp(2 pi i j.x)` has eigenvalue `|j|^2`; on SU(2) `E` is minus the
//! Casimir with eigenvalue `l(l+1)` on the irrep of dimension `2l+1`. Both
//! manifolds carry total measure 1 and order `nu = 2`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::wigner;

const TAU: f64 = std::f64::consts::TAU;

/// Default ceiling on quadrature node counts; overridable per call.
pub const DEFAULT_MAX_NODES: usize = 500_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ManifoldId {
    /// Flat torus R^n / Z^n for n in 1..=3.
    Torus(u32),
    Su2,
}

impl ManifoldId {
    pub fn dim(&self) -> u32 {
        match self {
            ManifoldId::Torus(n) => *n,
            ManifoldId::Su2 => 3,
        }
    }

    pub fn name(&self) -> String {
        match self {
            ManifoldId::Torus(n) => format!("torus{n}"),
            ManifoldId::Su2 => "su2".into(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "torus1" => Ok(ManifoldId::Torus(1)),
            "torus2" => Ok(ManifoldId::Torus(2)),
            "torus3" => Ok(ManifoldId::Torus(3)),
            "su2" => Ok(ManifoldId::Su2),
            other => Err(Error::InvalidArgument(format!(
                "unsupported manifold '{other}'; supported: torus1, torus2, torus3, su2"
            ))),
        }
    }
}

/// Basis-function label inside an eigenspace level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Label {
    /// Torus character exp(2 pi i j.x) for lattice vector j.
    Lattice(Vec<i64>),
    /// Rescaled representation entry sqrt(2l+1) D^l_{row,col}; indices 1-based,
    /// rows enumerate m' = l, l-1, ..., -l.
    RepEntry { two_l: u32, row: u32, col: u32 },
}

/// One eigenvalue level: lambda together with its labelled basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    lambda: f64,
    labels: Vec<Label>,
}

impl Level {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }
}

/// Ordered eigenvalue partition of the reference operator.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    manifold: ManifoldId,
    order_nu: f64,
    levels: Vec<Level>,
}

impl Partition {
    pub fn manifold(&self) -> ManifoldId {
        self.manifold
    }

    pub fn dim_n(&self) -> u32 {
        self.manifold.dim()
    }

    pub fn order_nu(&self) -> f64 {
        self.order_nu
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn max_lambda(&self) -> f64 {
        self.levels.last().map(|l| l.lambda).unwrap_or(0.0)
    }

    pub fn total_dim(&self) -> usize {
        self.levels.iter().map(|l| l.dim()).sum()
    }

    /// Offset of each level's first basis function in the flattened basis.
    pub fn level_offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.levels.len());
        let mut acc = 0;
        for l in &self.levels {
            off.push(acc);
            acc += l.dim();
        }
        off
    }

    /// Structural compatibility: same manifold and identical level layout.
    pub fn same_layout(&self, other: &Partition) -> bool {
        self.manifold == other.manifold
            && self.levels.len() == other.levels.len()
            && self
                .levels
                .iter()
                .zip(&other.levels)
                .all(|(a, b)| a.lambda == b.lambda && a.dim() == b.dim())
    }
}

/// Point on the manifold.
#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    /// Torus coordinates in [0,1)^n.
    Torus(Vec<f64>),
    /// z-y-z Euler angles; gamma has period 4 pi.
    Euler { alpha: f64, beta: f64, gamma: f64 },
}

/// Quadrature nodes and weights exact for the retained band limit,
/// normalised to total measure 1.
#[derive(Clone, Debug)]
pub struct QuadratureGrid {
    manifold: ManifoldId,
    nodes: Vec<Point>,
    weights: Vec<f64>,
    band_limit: f64,
}

impl QuadratureGrid {
    pub fn manifold(&self) -> ManifoldId {
        self.manifold
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn band_limit(&self) -> f64 {
        self.band_limit
    }
}

/// Enumerate all eigenvalue levels with lambda <= cutoff.
pub fn enumerate_partition(manifold: ManifoldId, lambda_cutoff: f64) -> Result<Partition> {
    if !(lambda_cutoff >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "cutoff must be non-negative, got {lambda_cutoff}"
        )));
    }
    let levels = match manifold {
        ManifoldId::Torus(n) => {
            if !(1..=3).contains(&n) {
                return Err(Error::InvalidArgument(format!(
                    "torus dimension must be 1..=3, got {n}"
                )));
            }
            torus_levels(n, lambda_cutoff)
        }
        ManifoldId::Su2 => su2_levels(lambda_cutoff),
    };
    Ok(Partition { manifold, order_nu: 2.0, levels })
}

fn torus_levels(n: u32, cutoff: f64) -> Vec<Level> {
    let jmax = cutoff.sqrt().floor() as i64;
    let cutoff_int = cutoff.floor() as i64;
    let mut by_lambda: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
    let mut j = vec![-jmax; n as usize];
    'outer: loop {
        let norm2: i64 = j.iter().map(|x| x * x).sum();
        if norm2 <= cutoff_int {
            by_lambda.entry(norm2).or_default().push(j.clone());
        }
        // lexicographic increment
        for axis in (0..n as usize).rev() {
            if j[axis] < jmax {
                j[axis] += 1;
                for later in (axis + 1)..n as usize {
                    j[later] = -jmax;
                }
                continue 'outer;
            }
        }
        break;
    }
    by_lambda
        .into_iter()
        .map(|(norm2, mut vecs)| {
            vecs.sort();
            Level { lambda: norm2 as f64, labels: vecs.into_iter().map(Label::Lattice).collect() }
        })
        .collect()
}

fn su2_levels(cutoff: f64) -> Vec<Level> {
    let mut levels = Vec::new();
    let mut two_l: u32 = 0;
    // lambda = l(l+1) = two_l(two_l+2)/4, exact in integers before division
    while (two_l * (two_l + 2)) as f64 <= 4.0 * cutoff {
        let d = two_l + 1;
        let mut labels = Vec::with_capacity((d * d) as usize);
        for row in 1..=d {
            for col in 1..=d {
                labels.push(Label::RepEntry { two_l, row, col });
            }
        }
        levels.push(Level { lambda: (two_l * (two_l + 2)) as f64 / 4.0, labels });
        two_l += 1;
    }
    levels
}

/// Value of the basis function `e_l^k` (k is 1-based) at a point.
pub fn eval_basis(partition: &Partition, level_index: usize, k: usize, point: &Point) -> Result<Complex64> {
    let level = partition
        .levels
        .get(level_index)
        .ok_or_else(|| Error::InvalidArgument(format!("level index {level_index} out of range")))?;
    if k < 1 || k > level.dim() {
        return Err(Error::InvalidArgument(format!(
            "basis index {k} out of range 1..={}",
            level.dim()
        )));
    }
    eval_label(&level.labels[k - 1], point)
}

pub fn eval_label(label: &Label, point: &Point) -> Result<Complex64> {
    match (label, point) {
        (Label::Lattice(j), Point::Torus(x)) => {
            if j.len() != x.len() {
                return Err(Error::DimensionMismatch(format!(
                    "lattice label dimension {} vs point dimension {}",
                    j.len(),
                    x.len()
                )));
            }
            let phase: f64 = j.iter().zip(x).map(|(ji, xi)| *ji as f64 * xi).sum();
            Ok(Complex64::from_polar(1.0, TAU * phase))
        }
        (Label::RepEntry { two_l, row, col }, Point::Euler { alpha, beta, gamma }) => {
            let two_mp = *two_l as i64 - 2 * (*row as i64 - 1);
            let two_m = *two_l as i64 - 2 * (*col as i64 - 1);
            let d = wigner::big_d(*two_l, two_mp, two_m, *alpha, *beta, *gamma);
            Ok(((*two_l + 1) as f64).sqrt() * d)
        }
        _ => Err(Error::InvalidArgument("label/point manifold mismatch".into())),
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P'_n(x)
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Build a quadrature grid exact for products of basis functions with
/// eigenvalue up to `band_limit`.
pub fn build_quadrature(partition: &Partition, band_limit: f64) -> Result<QuadratureGrid> {
    build_quadrature_capped(partition, band_limit, DEFAULT_MAX_NODES)
}

pub fn build_quadrature_capped(
    partition: &Partition,
    band_limit: f64,
    max_nodes: usize,
) -> Result<QuadratureGrid> {
    if band_limit < partition.max_lambda() {
        return Err(Error::BandExceeded(format!(
            "band limit {band_limit} below partition cutoff {}",
            partition.max_lambda()
        )));
    }
    match partition.manifold {
        ManifoldId::Torus(n) => {
            let per_axis = 2 * (band_limit.sqrt().ceil() as usize) + 1;
            let total = per_axis.pow(n);
            if total > max_nodes {
                return Err(Error::BandExceeded(format!(
                    "torus grid needs {total} nodes ({per_axis} per axis), cap is {max_nodes}"
                )));
            }
            let w = 1.0 / total as f64;
            let mut nodes = Vec::with_capacity(total);
            let mut idx = vec![0usize; n as usize];
            'outer: loop {
                nodes.push(Point::Torus(idx.iter().map(|&i| i as f64 / per_axis as f64).collect()));
                for axis in (0..n as usize).rev() {
                    if idx[axis] + 1 < per_axis {
                        idx[axis] += 1;
                        for later in (axis + 1)..n as usize {
                            idx[later] = 0;
                        }
                        continue 'outer;
                    }
                }
                break;
            }
            let weights = vec![w; nodes.len()];
            Ok(QuadratureGrid { manifold: partition.manifold, nodes, weights, band_limit })
        }
        ManifoldId::Su2 => {
            let mut two_l_max: u32 = 0;
            while ((two_l_max + 1) * (two_l_max + 3)) as f64 <= 4.0 * band_limit {
                two_l_max += 1;
            }
            let tl = two_l_max as usize;
            // Uniform alpha over 2 pi kills integer frequencies up to 2L;
            // uniform gamma over 4 pi also separates half-integer from
            // integer spins; Gauss nodes in cos(beta) integrate the
            // residual polynomial part exactly.
            let n_alpha = tl + 2;
            let n_beta = tl + 2;
            let n_gamma = 2 * tl + 2;
            let total = n_alpha * n_beta * n_gamma;
            if total > max_nodes {
                return Err(Error::BandExceeded(format!(
                    "SU(2) grid needs {total} nodes ({n_alpha}x{n_beta}x{n_gamma}), cap is {max_nodes}"
                )));
            }
            let (beta_nodes, beta_weights) = gauss_legendre(n_beta);
            let mut nodes = Vec::with_capacity(total);
            let mut weights = Vec::with_capacity(total);
            for ia in 0..n_alpha {
                let alpha = TAU * ia as f64 / n_alpha as f64;
                for ib in 0..n_beta {
                    let beta = beta_nodes[ib].acos();
                    for ig in 0..n_gamma {
                        let gamma = 2.0 * TAU * ig as f64 / n_gamma as f64;
                        nodes.push(Point::Euler { alpha, beta, gamma });
                        weights.push(beta_weights[ib] / (2.0 * n_alpha as f64 * n_gamma as f64));
                    }
                }
            }
            Ok(QuadratureGrid { manifold: partition.manifold, nodes, weights, band_limit })
        }
    }
}

/// Largest deviation of the discrete Gram matrix from the identity over all
/// retained basis-function pairs.
pub fn orthonormality_defect(partition: &Partition, grid: &QuadratureGrid) -> Result<f64> {
    let mut basis_values: Vec<Vec<Complex64>> = Vec::new();
    for (li, level) in partition.levels.iter().enumerate() {
        for k in 1..=level.dim() {
            let vals: Result<Vec<Complex64>> =
                grid.nodes.iter().map(|p| eval_basis(partition, li, k, p)).collect();
            basis_values.push(vals?);
        }
    }
    let mut defect = 0.0f64;
    for (a, va) in basis_values.iter().enumerate() {
        for (b, vb) in basis_values.iter().enumerate().skip(a) {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, w) in grid.weights.iter().enumerate() {
                acc += va[i].conj() * vb[i] * w;
            }
            let target = if a == b { 1.0 } else { 0.0 };
            defect = defect.max((acc - Complex64::new(target, 0.0)).norm());
        }
    }
    Ok(defect)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Summability {
    Convergent,
    Divergent,
}

#[derive(Clone, Debug)]
pub struct SummabilityEntry {
    pub q: f64,
    pub verdict: Summability,
    pub partial_sum: f64,
}

/// Weyl-law diagnostics for a partition.
#[derive(Clone, Debug)]
pub struct WeylReport {
    /// max_j d_j (1 + lambda_j)^{-n/nu}
    pub fitted_c: f64,
    /// Counting-function ratio N(L)/L^{n/nu} bounded over the last decade.
    pub exponent_ok: bool,
    pub ratio_min: f64,
    pub ratio_max: f64,
    pub summability: Vec<SummabilityEntry>,
}

/// Check the multiplicity bound and classify summability of
/// `sum d_j (1+lambda_j)^{-q}` for the requested exponents q.
///
/// The verdict follows the analytic rule q > n/nu; partial sums over the
/// retained levels are reported as evidence only.
pub fn weyl_check(partition: &Partition, qs: &[f64]) -> Result<WeylReport> {
    if partition.num_levels() < 10 {
        return Err(Error::InvalidArgument(format!(
            "need at least 10 levels for Weyl diagnostics, got {}",
            partition.num_levels()
        )));
    }
    let exponent = partition.dim_n() as f64 / partition.order_nu();
    let fitted_c = partition
        .levels
        .iter()
        .skip(1)
        .map(|l| l.dim() as f64 * (1.0 + l.lambda).powf(-exponent))
        .fold(0.0, f64::max);

    let max_lambda = partition.max_lambda();
    let mut count = 0usize;
    let mut ratio_min = f64::INFINITY;
    let mut ratio_max = 0.0f64;
    for level in &partition.levels {
        count += level.dim();
        if level.lambda >= max_lambda / 10.0 && level.lambda > 0.0 {
            let ratio = count as f64 / level.lambda.powf(exponent);
            ratio_min = ratio_min.min(ratio);
            ratio_max = ratio_max.max(ratio);
        }
    }
    let exponent_ok = ratio_min > 0.0 && ratio_min.is_finite() && ratio_max / ratio_min < 4.0;

    let summability = qs
        .iter()
        .map(|&q| {
            let partial_sum: f64 = partition
                .levels
                .iter()
                .map(|l| l.dim() as f64 * (1.0 + l.lambda).powf(-q))
                .sum();
            let verdict = if q > exponent { Summability::Convergent } else { Summability::Divergent };
            SummabilityEntry { q, verdict, partial_sum }
        })
        .collect();

    Ok(WeylReport { fitted_c, exponent_ok, ratio_min, ratio_max, summability })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus2_partition_cutoff_5() {
        let p = enumerate_partition(ManifoldId::Torus(2), 5.0).unwrap();
        let lambdas: Vec<f64> = p.levels().iter().map(|l| l.lambda()).collect();
        let dims: Vec<usize> = p.levels().iter().map(|l| l.dim()).collect();
        assert_eq!(lambdas, vec![0.0, 1.0, 2.0, 4.0, 5.0]);
        assert_eq!(dims, vec![1, 4, 4, 4, 8]);
    }

    #[test]
    fn torus1_partition_cutoff_4() {
        let p = enumerate_partition(ManifoldId::Torus(1), 4.0).unwrap();
        let lambdas: Vec<f64> = p.levels().iter().map(|l| l.lambda()).collect();
        let dims: Vec<usize> = p.levels().iter().map(|l| l.dim()).collect();
        assert_eq!(lambdas, vec![0.0, 1.0, 4.0]);
        assert_eq!(dims, vec![1, 2, 2]);
    }

    #[test]
    fn su2_partition_cutoff_2() {
        let p = enumerate_partition(ManifoldId::Su2, 2.0).unwrap();
        let lambdas: Vec<f64> = p.levels().iter().map(|l| l.lambda()).collect();
        let dims: Vec<usize> = p.levels().iter().map(|l| l.dim()).collect();
        assert_eq!(lambdas, vec![0.0, 0.75, 2.0]);
        assert_eq!(dims, vec![1, 4, 9]);
    }

    #[test]
    fn torus_multiplicities_even_above_zero() {
        let p = enumerate_partition(ManifoldId::Torus(2), 50.0).unwrap();
        for level in p.levels().iter().skip(1) {
            assert_eq!(level.dim() % 2, 0, "lambda={}", level.lambda());
        }
    }

    #[test]
    fn eigenvalues_strictly_increasing() {
        for m in [ManifoldId::Torus(1), ManifoldId::Torus(2), ManifoldId::Torus(3), ManifoldId::Su2] {
            let p = enumerate_partition(m, 30.0).unwrap();
            assert_eq!(p.levels()[0].lambda(), 0.0);
            assert_eq!(p.levels()[0].dim(), 1);
            for w in p.levels().windows(2) {
                assert!(w[0].lambda() < w[1].lambda());
            }
        }
    }

    #[test]
    fn constant_eigenfunction_is_one() {
        let p = enumerate_partition(ManifoldId::Torus(1), 4.0).unwrap();
        let v = eval_basis(&p, 0, 1, &Point::Torus(vec![0.37])).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn torus2_character_value() {
        let p = enumerate_partition(ManifoldId::Torus(2), 5.0).unwrap();
        // locate label j = (1, 0) at lambda = 1
        let level = 1;
        let k = p.levels()[level]
            .labels()
            .iter()
            .position(|l| matches!(l, Label::Lattice(v) if v == &vec![1, 0]))
            .unwrap()
            + 1;
        let v = eval_basis(&p, level, k, &Point::Torus(vec![0.25, 0.3])).unwrap();
        assert!((v - Complex64::new(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn su2_fundamental_rep_values() {
        // e_l^k for two_l = 1 must be sqrt(2) times the defining matrix.
        let p = enumerate_partition(ManifoldId::Su2, 2.0).unwrap();
        let g = Point::Euler { alpha: 0.9, beta: 1.3, gamma: 2.2 };
        let rep = wigner::rep_matrix(1, 0.9, 1.3, 2.2);
        let mut got = crate::linalg::CMatrix::zeros(2, 2);
        for k in 1..=4usize {
            let v = eval_basis(&p, 1, k, &g).unwrap();
            let row = (k - 1) / 2;
            let col = (k - 1) % 2;
            got.set(row, col, v);
        }
        let expect = rep.scale(Complex64::new(2.0f64.sqrt(), 0.0));
        assert!(got.sub(&expect).unwrap().max_abs() < 1e-13);
        // unitary * sqrt(2): columns have norm sqrt(2)
        let gram = got.adjoint().mul(&got).unwrap();
        let dev = gram.sub(&crate::linalg::CMatrix::identity(2).scale(Complex64::new(2.0, 0.0))).unwrap();
        assert!(dev.max_abs() < 1e-13);
    }

    #[test]
    fn torus1_quadrature_is_uniform() {
        let p = enumerate_partition(ManifoldId::Torus(1), 16.0).unwrap();
        let g = build_quadrature(&p, 16.0).unwrap();
        assert_eq!(g.len(), 9); // 2*4+1
        assert!((g.weights().iter().sum::<f64>() - 1.0).abs() < 1e-13);
        assert!(orthonormality_defect(&p, &g).unwrap() < 1e-14);
    }

    #[test]
    fn torus2_quadrature_orthonormality() {
        let p = enumerate_partition(ManifoldId::Torus(2), 10.0).unwrap();
        let g = build_quadrature(&p, 10.0).unwrap();
        assert!((g.weights().iter().sum::<f64>() - 1.0).abs() < 1e-13);
        assert!(orthonormality_defect(&p, &g).unwrap() < 1e-12);
    }

    #[test]
    fn su2_quadrature_orthonormality() {
        let p = enumerate_partition(ManifoldId::Su2, 8.75).unwrap(); // l <= 5/2
        let g = build_quadrature(&p, 8.75).unwrap();
        assert!((g.weights().iter().sum::<f64>() - 1.0).abs() < 1e-13);
        let defect = orthonormality_defect(&p, &g).unwrap();
        assert!(defect < 1e-12, "defect {defect}");
    }

    #[test]
    fn su2_basis_columns_unitary_at_nodes() {
        let p = enumerate_partition(ManifoldId::Su2, 2.0).unwrap();
        let g = build_quadrature(&p, 2.0).unwrap();
        for node in g.nodes().iter().step_by(7) {
            if let Point::Euler { alpha, beta, gamma } = node {
                for two_l in [1u32, 2] {
                    let m = wigner::rep_matrix(two_l, *alpha, *beta, *gamma);
                    let d = m.rows();
                    for col in 0..d {
                        let s: f64 = (0..d).map(|r| m.at(r, col).norm_sqr()).sum();
                        assert!((s - 1.0).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn quadrature_band_guard() {
        let p = enumerate_partition(ManifoldId::Torus(2), 10.0).unwrap();
        assert!(matches!(build_quadrature(&p, 5.0), Err(Error::BandExceeded(_))));
        assert!(matches!(
            build_quadrature_capped(&p, 10.0, 3),
            Err(Error::BandExceeded(_))
        ));
    }

    #[test]
    fn weyl_report_torus2() {
        let p = enumerate_partition(ManifoldId::Torus(2), 400.0).unwrap();
        let r = weyl_check(&p, &[1.5, 0.9]).unwrap();
        assert!(r.fitted_c.is_finite() && r.fitted_c > 0.0);
        assert!(r.exponent_ok);
        assert_eq!(r.summability[0].verdict, Summability::Convergent);
        assert_eq!(r.summability[1].verdict, Summability::Divergent);
    }

    #[test]
    fn weyl_report_torus1_and_su2() {
        let p1 = enumerate_partition(ManifoldId::Torus(1), 400.0).unwrap();
        let r1 = weyl_check(&p1, &[0.6]).unwrap();
        assert_eq!(r1.summability[0].verdict, Summability::Convergent); // n/nu = 1/2

        let p2 = enumerate_partition(ManifoldId::Su2, 120.0).unwrap();
        let r2 = weyl_check(&p2, &[2.0, 1.4]).unwrap();
        assert_eq!(r2.summability[0].verdict, Summability::Convergent); // n/nu = 3/2
        assert_eq!(r2.summability[1].verdict, Summability::Divergent);
    }

    #[test]
    fn weyl_needs_levels() {
        let p = enumerate_partition(ManifoldId::Torus(1), 4.0).unwrap();
        assert!(weyl_check(&p, &[1.0]).is_err());
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(6);
        // exact for degree <= 11
        for deg in [0usize, 2, 5, 8, 11] {
            let got: f64 = x.iter().zip(&w).map(|(xi, wi)| xi.powi(deg as i32) * wi).sum();
            let expect = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
            assert!((got - expect).abs() < 1e-13, "deg {deg}");
        }
    }
}

//! SU(2) correspondence layer: index bijection between rep-entry pairs and
//! flat eigenspace indices, conversion between per-irrep group symbols and
//! per-level manifold symbols, matrix-valued group Fourier transform and
//! quantization, and coarse assembly of symbols from finer spectral pieces.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::GridFunction;
use crate::linalg::{self, CMatrix};
use crate::manifold::{Label, ManifoldId, Partition, Point, QuadratureGrid};
use crate::symbol::Symbol;
use crate::wigner;

/// Tolerance for recognising the replicated block structure of a manifold
/// symbol that came from a group symbol.
pub const BLOCK_TOL: f64 = 1e-10;

/// Flat index of the (j,k) rep entry, 1-based: (j-1)d + k.
pub fn gamma(d: u32, j: u32, k: u32) -> Result<u32> {
    if d == 0 || j < 1 || j > d || k < 1 || k > d {
        return Err(Error::InvalidArgument(format!("gamma indices (d={d}, j={j}, k={k})")));
    }
    Ok((j - 1) * d + k)
}

/// Inverse pair of `gamma`: returns (phi, psi) with gamma(psi, phi) = t.
pub fn phi_psi(t: u32, d: u32) -> Result<(u32, u32)> {
    if d == 0 || t < 1 || t > d * d {
        return Err(Error::InvalidArgument(format!("flat index t={t} for d={d}")));
    }
    let psi = (t - 1) / d + 1;
    let phi = t - (t - 1) / d * d;
    Ok((phi, psi))
}

/// Per-irrep square matrices keyed by the doubled spin 2l.
#[derive(Clone, Debug, Default)]
pub struct GroupSymbol {
    mats: BTreeMap<u32, CMatrix>,
}

/// Matrix Fourier coefficients share the per-irrep layout.
pub type MatrixFourier = GroupSymbol;

impl GroupSymbol {
    pub fn new() -> Self {
        GroupSymbol { mats: BTreeMap::new() }
    }

    pub fn insert(&mut self, two_l: u32, mat: CMatrix) -> Result<()> {
        let d = (two_l + 1) as usize;
        if mat.rows() != d || mat.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for rep 2l={two_l} (dim {d})",
                mat.rows(),
                mat.cols()
            )));
        }
        mat.check_finite()?;
        self.mats.insert(two_l, mat);
        Ok(())
    }

    pub fn identity_up_to(two_l_max: u32) -> Self {
        let mut g = GroupSymbol::new();
        for two_l in 0..=two_l_max {
            g.insert(two_l, CMatrix::identity((two_l + 1) as usize)).unwrap();
        }
        g
    }

    pub fn get(&self, two_l: u32) -> Option<&CMatrix> {
        self.mats.get(&two_l)
    }

    pub fn reps(&self) -> impl Iterator<Item = (u32, &CMatrix)> {
        self.mats.iter().map(|(k, v)| (*k, v))
    }

    pub fn max_two_l(&self) -> Option<u32> {
        self.mats.keys().next_back().copied()
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }
}

/// Doubled spin of an SU(2) partition level, read off its labels.
pub fn level_two_l(partition: &Partition, level_index: usize) -> Result<u32> {
    let level = partition
        .levels()
        .get(level_index)
        .ok_or_else(|| Error::InvalidArgument(format!("level index {level_index} out of range")))?;
    match level.labels().first() {
        Some(Label::RepEntry { two_l, .. }) => Ok(*two_l),
        _ => Err(Error::PartitionMismatch("partition is not an SU(2) rep partition".into())),
    }
}

/// Expand a group symbol into the manifold symbol: each level matrix is a
/// direct sum of d copies of tau, one copy per row of the rep.
pub fn tau_to_sigma(tau: &GroupSymbol, partition: &Arc<Partition>) -> Result<Symbol> {
    if partition.manifold() != ManifoldId::Su2 {
        return Err(Error::PartitionMismatch("tau_to_sigma needs an SU(2) partition".into()));
    }
    let mut mats = Vec::with_capacity(partition.num_levels());
    for li in 0..partition.num_levels() {
        let two_l = level_two_l(partition, li)?;
        let t = tau.get(two_l).ok_or_else(|| {
            Error::DimensionMismatch(format!("group symbol missing rep 2l={two_l}"))
        })?;
        let copies: Vec<CMatrix> = (0..t.rows()).map(|_| t.clone()).collect();
        mats.push(CMatrix::block_diag(&copies));
    }
    Symbol::from_matrices(partition.clone(), mats)
}

/// Recover the group symbol from a replicated-block manifold symbol.
/// Rejects inputs whose off-pattern mass exceeds `BLOCK_TOL`.
pub fn sigma_to_tau(sigma: &Symbol) -> Result<GroupSymbol> {
    let partition = sigma.partition();
    if partition.manifold() != ManifoldId::Su2 {
        return Err(Error::PartitionMismatch("sigma_to_tau needs an SU(2) partition".into()));
    }
    let mut out = GroupSymbol::new();
    let mut max_deviation = 0.0f64;
    for li in 0..partition.num_levels() {
        let two_l = level_two_l(partition, li)?;
        let d = (two_l + 1) as usize;
        let m = sigma.level(li);
        let tau = CMatrix::from_fn(d, d, |i, j| m.at(i, j));
        // every diagonal block must repeat the top-left one; everything else zero
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let (br, bc) = (r / d, c / d);
                let expect =
                    if br == bc { tau.at(r % d, c % d) } else { Complex64::new(0.0, 0.0) };
                max_deviation = max_deviation.max((m.at(r, c) - expect).norm());
            }
        }
        out.insert(two_l, tau)?;
    }
    if max_deviation > BLOCK_TOL {
        return Err(Error::BlockStructure { max_deviation, tolerance: BLOCK_TOL });
    }
    Ok(out)
}

/// Per-level and aggregate check of the Schatten bookkeeping identity
/// ||sigma(l)||_{S_r}^r = d ||tau(l)||_{S_r}^r for r in {1/2, 1, 2}.
#[derive(Clone, Debug)]
pub struct SchattenConsistency {
    pub per_r: Vec<SchattenConsistencyEntry>,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct SchattenConsistencyEntry {
    pub r: f64,
    pub max_rel_dev: f64,
    pub aggregate_sigma: f64,
    pub aggregate_tau: f64,
}

pub fn schatten_consistency(tau: &GroupSymbol, sigma: &Symbol) -> Result<SchattenConsistency> {
    let partition = sigma.partition();
    let mut per_r = Vec::new();
    let mut ok = true;
    for r in [0.5, 1.0, 2.0] {
        let mut max_rel_dev = 0.0f64;
        let mut agg_sigma = 0.0;
        let mut agg_tau = 0.0;
        for li in 0..partition.num_levels() {
            let two_l = level_two_l(partition, li)?;
            let d = (two_l + 1) as f64;
            let t = tau.get(two_l).ok_or_else(|| {
                Error::DimensionMismatch(format!("group symbol missing rep 2l={two_l}"))
            })?;
            let lhs = linalg::schatten_q(sigma.level(li), r)?.powf(r);
            let rhs = d * linalg::schatten_q(t, r)?.powf(r);
            agg_sigma += lhs;
            agg_tau += rhs;
            let scale = lhs.abs().max(rhs.abs()).max(1e-300);
            max_rel_dev = max_rel_dev.max((lhs - rhs).abs() / scale);
        }
        if max_rel_dev > 1e-10 {
            ok = false;
        }
        per_r.push(SchattenConsistencyEntry {
            r,
            max_rel_dev,
            aggregate_sigma: agg_sigma,
            aggregate_tau: agg_tau,
        });
    }
    Ok(SchattenConsistency { per_r, ok })
}

fn euler_of(point: &Point) -> Result<(f64, f64, f64)> {
    match point {
        Point::Euler { alpha, beta, gamma } => Ok((*alpha, *beta, *gamma)),
        _ => Err(Error::PartitionMismatch("SU(2) grid required".into())),
    }
}

/// Matrix Fourier coefficients f-hat(xi) = sum_nodes f(x) xi(x)* w(x)
/// for all reps with Casimir eigenvalue within the grid band.
pub fn group_fourier(f: &GridFunction, two_l_max: u32) -> Result<MatrixFourier> {
    let grid = f.grid();
    let lam_max = (two_l_max * (two_l_max + 2)) as f64 / 4.0;
    if lam_max > grid.band_limit() {
        return Err(Error::BandExceeded(format!(
            "rep 2l={two_l_max} (lambda {lam_max}) beyond grid band {}",
            grid.band_limit()
        )));
    }
    let mut out = MatrixFourier::new();
    for two_l in 0..=two_l_max {
        let d = (two_l + 1) as usize;
        let mut acc = CMatrix::zeros(d, d);
        for (node, (&w, &fv)) in grid
            .nodes()
            .iter()
            .zip(grid.weights().iter().zip(f.values()))
        {
            let (a, b, g) = euler_of(node)?;
            let xi_star = wigner::rep_matrix(two_l, a, b, g).adjoint();
            for i in 0..d {
                for j in 0..d {
                    let v = acc.at(i, j) + fv * xi_star.at(i, j) * w;
                    acc.set(i, j, v);
                }
            }
        }
        out.insert(two_l, acc)?;
    }
    Ok(out)
}

/// Quantization A f(x) = sum_xi d_xi Tr(xi(x) tau(xi) f-hat(xi)), summed
/// over the reps present in tau.
pub fn group_quantize(tau: &GroupSymbol, f: &GridFunction) -> Result<GridFunction> {
    let grid = f.grid().clone();
    let two_l_max = tau
        .max_two_l()
        .ok_or_else(|| Error::InvalidArgument("empty group symbol".into()))?;
    let fhat = group_fourier(f, two_l_max)?;
    synthesize_from_fourier(tau, &fhat, &grid)
}

/// Peter-Weyl synthesis sum_xi d_xi Tr(xi(x) tau(xi) f-hat(xi)) at the nodes.
pub fn synthesize_from_fourier(
    tau: &GroupSymbol,
    fhat: &MatrixFourier,
    grid: &Arc<QuadratureGrid>,
) -> Result<GridFunction> {
    let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
    for (two_l, t) in tau.reps() {
        let d = (two_l + 1) as usize;
        let fh = fhat.get(two_l).ok_or_else(|| {
            Error::DimensionMismatch(format!("Fourier data missing rep 2l={two_l}"))
        })?;
        let tf = t.mul(fh)?;
        for (vi, node) in values.iter_mut().zip(grid.nodes()) {
            let (a, b, g) = euler_of(node)?;
            let xi = wigner::rep_matrix(two_l, a, b, g);
            let tr = linalg::mat_trace(&xi.mul(&tf)?)?;
            *vi += d as f64 * tr;
        }
    }
    GridFunction::from_values(grid.clone(), values)
}

/// Assemble a coarse per-level symbol from finer spectral pieces: pieces are
/// (eigenvalue, matrix) in assembly order, grouped by the partition levels.
pub fn coarsen(pieces: &[(f64, CMatrix)], partition: &Arc<Partition>) -> Result<Symbol> {
    let mut mats = Vec::with_capacity(partition.num_levels());
    let mut it = pieces.iter().peekable();
    for level in partition.levels() {
        let mut blocks: Vec<CMatrix> = Vec::new();
        let mut dim = 0usize;
        while let Some((lam, m)) = it.peek() {
            if (lam - level.lambda()).abs() > 1e-12 {
                break;
            }
            if !m.is_square() {
                return Err(Error::DimensionMismatch("coarsen pieces must be square".into()));
            }
            dim += m.rows();
            blocks.push((*m).clone());
            it.next();
        }
        if dim != level.dim() {
            return Err(Error::DimensionMismatch(format!(
                "pieces at lambda={} cover dimension {dim}, level needs {}",
                level.lambda(),
                level.dim()
            )));
        }
        mats.push(CMatrix::block_diag(&blocks));
    }
    if it.next().is_some() {
        return Err(Error::DimensionMismatch("leftover pieces beyond the partition".into()));
    }
    Symbol::from_matrices(partition.clone(), mats)
}

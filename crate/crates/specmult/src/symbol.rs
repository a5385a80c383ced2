//! Matrix symbols of invariant operators: construction, extraction from
//! black-box coefficient maps, application, composition, invariance testing,
//! and boundedness / Schatten / trace / smoothness analysis.
//!
//! All analysis values are reported "on truncation", i.e. over the retained
//! finite partition; series convergence is classified separately by
//! tail-exponent analysis.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::FourierCoefficients;
use crate::linalg::{self, CMatrix};
use crate::manifold::Partition;

/// Default tolerance for invariance verdicts, limited by quadrature accuracy.
pub const DEFAULT_INVARIANCE_TOL: f64 = 1e-9;

/// Per-level square matrices sigma(l) acting on coefficient columns.
#[derive(Clone, Debug)]
pub struct Symbol {
    partition: Arc<Partition>,
    mats: Vec<CMatrix>,
}

impl Symbol {
    pub fn from_matrices(partition: Arc<Partition>, mats: Vec<CMatrix>) -> Result<Self> {
        if mats.len() != partition.num_levels() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} levels",
                mats.len(),
                partition.num_levels()
            )));
        }
        for (level, m) in partition.levels().iter().zip(&mats) {
            if m.rows() != level.dim() || m.cols() != level.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "{}x{} matrix at lambda={} (dim {})",
                    m.rows(),
                    m.cols(),
                    level.lambda(),
                    level.dim()
                )));
            }
            m.check_finite()?;
        }
        Ok(Symbol { partition, mats })
    }

    /// Spectral multiplier F(E): sigma(l) = F(lambda_l) I.
    pub fn from_spectral_function(
        partition: Arc<Partition>,
        f: impl Fn(f64) -> Complex64,
    ) -> Result<Self> {
        let mats = partition
            .levels()
            .iter()
            .map(|level| {
                let v = f(level.lambda());
                if !v.re.is_finite() || !v.im.is_finite() {
                    return Err(Error::NonFinite(format!(
                        "spectral function at lambda={}",
                        level.lambda()
                    )));
                }
                Ok(CMatrix::identity(level.dim()).scale(v))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Symbol { partition, mats })
    }

    pub fn identity(partition: Arc<Partition>) -> Self {
        let mats = partition.levels().iter().map(|l| CMatrix::identity(l.dim())).collect();
        Symbol { partition, mats }
    }

    pub fn partition(&self) -> &Arc<Partition> {
        &self.partition
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.mats
    }

    pub fn level(&self, idx: usize) -> &CMatrix {
        &self.mats[idx]
    }

    /// Coefficient action: per-level matrix-vector product sigma(l) f-hat(l).
    pub fn apply(&self, c: &FourierCoefficients) -> Result<FourierCoefficients> {
        if !self.partition.same_layout(c.partition()) {
            return Err(Error::PartitionMismatch("symbol applied across partitions".into()));
        }
        let data = self
            .mats
            .iter()
            .zip(c.levels())
            .map(|(m, v)| m.matvec(v))
            .collect::<Result<Vec<_>>>()?;
        FourierCoefficients::from_vectors(self.partition.clone(), data)
    }

    /// Per-level matrix product: the symbol of the composition a then b
    /// acting as a(b(f)).
    pub fn compose(&self, inner: &Symbol) -> Result<Symbol> {
        if !self.partition.same_layout(&inner.partition) {
            return Err(Error::PartitionMismatch("symbol composition".into()));
        }
        let mats = self
            .mats
            .iter()
            .zip(&inner.mats)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Symbol { partition: self.partition.clone(), mats })
    }

    /// Dense block-diagonal matrix of the operator in the full eigenbasis.
    /// The restriction to each level is sigma(l) transposed.
    pub fn assemble(&self) -> CMatrix {
        let blocks: Vec<CMatrix> = self.mats.iter().map(|m| m.transpose()).collect();
        CMatrix::block_diag(&blocks)
    }

    /// Operator norm on L2: sup over retained levels of the symbol op norm.
    pub fn l2_bound(&self) -> Result<f64> {
        let mut sup = 0.0f64;
        for m in &self.mats {
            sup = sup.max(linalg::op_norm(m)?);
        }
        Ok(sup)
    }

    /// Schatten quasi-norm on truncation: (sum_l ||sigma(l)||_{S_r}^r)^{1/r}.
    pub fn schatten(&self, r: f64) -> Result<SchattenResult> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "Schatten exponent must be positive, got {r}"
            )));
        }
        let mut sum = 0.0;
        for m in &self.mats {
            sum += linalg::schatten_q(m, r)?.powf(r);
        }
        let value = sum.powf(1.0 / r);
        Ok(SchattenResult { value, finite_on_truncation: value.is_finite() })
    }

    /// Trace on truncation: sum_l Tr(sigma(l)). Warns when the per-level
    /// trace-norm contributions do not visibly decay over the retained tail.
    pub fn trace_formula(&self) -> Result<TraceResult> {
        let mut value = Complex64::new(0.0, 0.0);
        let mut s1 = Vec::with_capacity(self.mats.len());
        for m in &self.mats {
            value += linalg::mat_trace(m)?;
            s1.push(linalg::schatten_q(m, 1.0)?);
        }
        let total: f64 = s1.iter().sum();
        let slow_decay = match (s1.last(), total > 0.0) {
            (Some(&last), true) => self.mats.len() >= 4 && last > 1e-3 * total,
            _ => false,
        };
        Ok(TraceResult { value, slow_decay })
    }

    /// Least-squares growth-order fit: ||sigma(l)||_op ~ C (1+lambda)^{m/nu}
    /// over the upper half of retained levels.
    pub fn sobolev_order(&self) -> Result<SobolevFit> {
        let nu = self.partition.order_nu();
        let mut pts: Vec<(f64, f64)> = Vec::new();
        for (level, m) in self.partition.levels().iter().zip(&self.mats) {
            if level.lambda() > 0.0 {
                let norm = linalg::op_norm(m)?;
                if norm > 0.0 {
                    pts.push(((1.0 + level.lambda()).ln() / nu, norm.ln()));
                }
            }
        }
        if pts.len() < 8 {
            return Err(Error::InvalidArgument(format!(
                "growth-order fit needs at least 8 positive levels with nonzero symbol, got {}",
                pts.len()
            )));
        }
        // upper half of the retained levels suppresses low-eigenvalue transients
        let tail = &pts[pts.len() / 2..];
        let n = tail.len() as f64;
        let sx: f64 = tail.iter().map(|p| p.0).sum();
        let sy: f64 = tail.iter().map(|p| p.1).sum();
        let sxx: f64 = tail.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = tail.iter().map(|p| p.0 * p.1).sum();
        let denom = n * sxx - sx * sx;
        if denom.abs() < 1e-300 {
            return Err(Error::InvalidArgument("degenerate fit window".into()));
        }
        let m_est = (n * sxy - sx * sy) / denom;
        let intercept = (sy - m_est * sx) / n;
        Ok(SobolevFit { m_est, c_est: intercept.exp() })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SchattenResult {
    pub value: f64,
    pub finite_on_truncation: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct TraceResult {
    pub value: Complex64,
    pub slow_decay: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct SobolevFit {
    pub m_est: f64,
    pub c_est: f64,
}

/// Outcome of probing a black-box coefficient map for level invariance.
#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub max_offblock: f64,
    pub tolerance: f64,
    pub verdict: bool,
    pub extracted: Symbol,
}

/// Extract the per-level symbol of a black-box coefficient map:
/// sigma(j)_{mk} is the m-th level-j coefficient of the image of the
/// (j,k) unit coefficient vector. Off-level responses are ignored here;
/// use `check_invariance` to quantify them.
pub fn extract(
    op: impl Fn(&FourierCoefficients) -> Result<FourierCoefficients>,
    partition: &Arc<Partition>,
) -> Result<Symbol> {
    Ok(probe(op, partition, false)?.0)
}

/// Probe every basis coefficient vector, recording diagonal blocks and the
/// largest off-level response magnitude.
pub fn check_invariance(
    op: impl Fn(&FourierCoefficients) -> Result<FourierCoefficients>,
    partition: &Arc<Partition>,
    tolerance: f64,
) -> Result<InvarianceReport> {
    if !(tolerance > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "invariance tolerance must be positive, got {tolerance}"
        )));
    }
    let (extracted, max_offblock) = probe(op, partition, true)?;
    Ok(InvarianceReport { max_offblock, tolerance, verdict: max_offblock < tolerance, extracted })
}

fn probe(
    op: impl Fn(&FourierCoefficients) -> Result<FourierCoefficients>,
    partition: &Arc<Partition>,
    scan_offblock: bool,
) -> Result<(Symbol, f64)> {
    let mut mats: Vec<CMatrix> =
        partition.levels().iter().map(|l| CMatrix::zeros(l.dim(), l.dim())).collect();
    let mut max_offblock = 0.0f64;
    for (j, level) in partition.levels().iter().enumerate() {
        for k in 1..=level.dim() {
            let unit = FourierCoefficients::basis_unit(partition.clone(), j, k)?;
            let image = op(&unit)?;
            if !partition.same_layout(image.partition()) {
                return Err(Error::PartitionMismatch(
                    "black-box returned coefficients on a different partition".into(),
                ));
            }
            for (m, &v) in image.level(j).iter().enumerate() {
                mats[j].set(m, k - 1, v);
            }
            if scan_offblock {
                for (jp, vec) in image.levels().iter().enumerate() {
                    if jp != j {
                        for v in vec {
                            max_offblock = max_offblock.max(v.norm());
                        }
                    }
                }
            }
        }
    }
    Ok((Symbol::from_matrices(partition.clone(), mats)?, max_offblock))
}

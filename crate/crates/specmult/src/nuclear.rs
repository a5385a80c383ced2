//! Nuclearity sufficiency estimators: the piecewise exponent map on [1, inf],
//! eigenfunction-growth controls, the weighted Schatten sufficiency sums,
//! and closed-form thresholds for negative powers of the shifted operator.
//!
//! Series convergence is decided by tail-exponent analysis. Partial sums over
//! the retained levels are reported as evidence only and never drive a
//! verdict.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fourier::Transform;
use crate::linalg;
use crate::manifold::{ManifoldId, Partition};
use crate::symbol::Symbol;

/// Piecewise exponent: 0 on [1,2], (p-2)/p on (2,inf), 1 at infinity
/// (`None` encodes infinity).
pub fn ptilde(p: Option<f64>) -> Result<f64> {
    match p {
        None => Ok(1.0),
        Some(p) if p >= 1.0 && p.is_finite() => {
            if p <= 2.0 {
                Ok(0.0)
            } else {
                Ok((p - 2.0) / p)
            }
        }
        Some(p) => Err(Error::InvalidArgument(format!("exponent p={p} outside [1, inf]"))),
    }
}

/// Conjugate exponent on [1, inf] with `None` as infinity.
pub fn dual(p: Option<f64>) -> Result<Option<f64>> {
    match p {
        None => Ok(Some(1.0)),
        Some(p) if (p - 1.0).abs() < 1e-15 => Ok(None),
        Some(p) if p > 1.0 && p.is_finite() => Ok(Some(p / (p - 1.0))),
        Some(p) => Err(Error::InvalidArgument(format!("exponent p={p} outside [1, inf]"))),
    }
}

/// Combined growth exponent (ptilde(p2) + ptilde(dual(p1))) entering the
/// sufficiency sums.
pub fn combined_exponent(p1: Option<f64>, p2: Option<f64>) -> Result<f64> {
    Ok(ptilde(p2)? + ptilde(dual(p1)?)?)
}

/// Eigenfunction sup-norm growth model Lambda(l).
#[derive(Clone, Debug)]
pub enum LambdaControl {
    /// Constant bound (torus characters: 1).
    Uniform(f64),
    /// C (1+lambda)^{(n-1)/(2 nu)}; the constant does not affect verdicts.
    Hormander,
    /// sqrt(rep dimension) = (level dim)^{1/4}; SU(2) rep partitions only.
    GroupSqrtDim,
    /// Measured per-level sup-norms; tail behaviour is always fitted.
    Empirical(Vec<f64>),
}

impl LambdaControl {
    /// Evaluated control at a level; `dim` is the level multiplicity.
    fn value(&self, level_index: usize, dim: usize, lambda: f64, n: u32, nu: f64) -> Result<f64> {
        match self {
            LambdaControl::Uniform(c) => Ok(*c),
            LambdaControl::Hormander => {
                Ok((1.0 + lambda).powf((n as f64 - 1.0) / (2.0 * nu)))
            }
            LambdaControl::GroupSqrtDim => Ok((dim as f64).powf(0.25)),
            LambdaControl::Empirical(v) => v.get(level_index).copied().ok_or_else(|| {
                Error::DimensionMismatch(format!("empirical control missing level {level_index}"))
            }),
        }
    }

    /// Asymptotic exponent of the control in (1+lambda); `None` when only
    /// fitted analysis applies.
    fn exponent(&self, manifold: ManifoldId, n: u32, nu: f64) -> Option<f64> {
        match self {
            LambdaControl::Uniform(_) => Some(0.0),
            LambdaControl::Hormander => Some((n as f64 - 1.0) / (2.0 * nu)),
            // rep dimension 2l+1 grows like lambda^{1/2} on SU(2)
            LambdaControl::GroupSqrtDim => {
                if manifold == ManifoldId::Su2 {
                    Some(0.25)
                } else {
                    None
                }
            }
            LambdaControl::Empirical(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NuclearityVerdict {
    SufficientConditionHolds,
    Fails,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct NuclearityReport {
    pub partial_sum: f64,
    /// Exponent e of the per-level summand modulo multiplicity,
    /// summand ~ d_l (1+lambda)^e; the series converges iff e < -n/nu.
    pub tail_exponent: f64,
    pub verdict: NuclearityVerdict,
    pub threshold_alpha: Option<f64>,
}

/// Quadrature Lp norms of every retained basis function; `None` is the grid
/// sup. Returned per level, in basis order.
pub fn eigenfunction_lp_norms(tr: &Transform, p: Option<f64>) -> Result<Vec<Vec<f64>>> {
    if let Some(p) = p {
        if !(p >= 1.0) {
            return Err(Error::InvalidArgument(format!("exponent p={p} below 1")));
        }
    }
    let partition = tr.partition();
    let weights = tr.grid().weights();
    let offsets = partition.level_offsets();
    let mut out = Vec::with_capacity(partition.num_levels());
    for (li, level) in partition.levels().iter().enumerate() {
        let mut norms = Vec::with_capacity(level.dim());
        for k in 0..level.dim() {
            let vals = tr.basis_values(offsets[li] + k);
            let norm = match p {
                None => vals.iter().map(|v| v.norm()).fold(0.0, f64::max),
                Some(p) => vals
                    .iter()
                    .zip(weights)
                    .map(|(v, w)| v.norm().powf(p) * w)
                    .sum::<f64>()
                    .powf(1.0 / p),
            };
            norms.push(norm);
        }
        out.push(norms);
    }
    Ok(out)
}

/// Closed-form alpha threshold above which the sufficiency condition holds
/// for the symbol of (I + E)^{-alpha/nu} under the given control.
pub fn power_threshold(
    n: u32,
    nu: f64,
    r: f64,
    p1: Option<f64>,
    p2: Option<f64>,
    control: &LambdaControl,
    manifold: ManifoldId,
) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!("exponent r={r} must be positive")));
    }
    let pq = combined_exponent(p1, p2)?;
    let c_exp = control.exponent(manifold, n, nu).ok_or_else(|| {
        Error::InvalidArgument("no closed-form threshold for this control".into())
    })?;
    // summand ~ d_l (1+lambda)^{-alpha r/nu + c_exp pq r}; converges iff the
    // negated exponent exceeds n/nu
    Ok(n as f64 / r + c_exp * pq * nu)
}

/// Weighted sufficiency sum with tail-exponent classification.
///
/// Summand per level: ||sigma(l)||_{S_r}^r Lambda(l)^{(ptilde2 + qtilde1) r}.
/// When the symbol follows an exact power law in (1+lambda) and the control
/// has a known exponent, the tail exponent is analytic; otherwise it is
/// least-squares fitted over the upper half of levels, with an Inconclusive
/// verdict when the fit is unstable.
pub fn nuclearity_sum(
    sigma: &Symbol,
    r: f64,
    p1: Option<f64>,
    p2: Option<f64>,
    control: &LambdaControl,
) -> Result<NuclearityReport> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::InvalidArgument(format!("exponent r={r} outside (0, 1]")));
    }
    let partition = sigma.partition().clone();
    let n = partition.dim_n();
    let nu = partition.order_nu();
    let pq = combined_exponent(p1, p2)?;
    let manifold = partition.manifold();

    let mut partial_sum = 0.0;
    // per-level Schatten masses normalised by multiplicity
    let mut u: Vec<(f64, f64)> = Vec::new(); // (1+lambda, ||sigma||_{S_r}^r / d)
    for (li, level) in partition.levels().iter().enumerate() {
        let mass = linalg::schatten_q(sigma.level(li), r)?.powf(r);
        let lam_ctrl = control.value(li, level.dim(), level.lambda(), n, nu)?;
        partial_sum += mass * lam_ctrl.powf(pq * r);
        if level.lambda() > 0.0 {
            u.push((1.0 + level.lambda(), mass / level.dim() as f64));
        }
    }

    let threshold_alpha = power_threshold(n, nu, r, p1, p2, control, manifold).ok();
    let need = n as f64 / nu; // convergence iff tail exponent < -need

    let positive: Vec<(f64, f64)> =
        u.iter().filter(|(_, m)| *m > 0.0).map(|&(x, m)| (x.ln(), m.ln())).collect();
    if positive.len() < 3 {
        // fewer than three informative levels: trivial or undecidable
        let all_zero = u.iter().all(|(_, m)| *m == 0.0);
        return Ok(NuclearityReport {
            partial_sum,
            tail_exponent: if all_zero { f64::NEG_INFINITY } else { f64::NAN },
            verdict: if all_zero {
                NuclearityVerdict::SufficientConditionHolds
            } else {
                NuclearityVerdict::Inconclusive
            },
            threshold_alpha,
        });
    }

    // exact power-law recognition: every point must sit on the line through
    // the last point with the slope of the final segment
    let m = positive.len();
    let (x1, y1) = positive[m - 2];
    let (x2, y2) = positive[m - 1];
    let slope_last = (y2 - y1) / (x2 - x1);
    let exact = positive
        .iter()
        .all(|&(x, y)| (y - (y2 + slope_last * (x - x2))).abs() <= 1e-9 * (1.0 + y.abs()));
    let control_exp = control.exponent(manifold, n, nu);

    let (tail_exponent, fit_ok) = if exact && control_exp.is_some() {
        (slope_last + control_exp.unwrap() * pq * r, true)
    } else {
        // fitted path: include the evaluated control in the summand
        let mut pts: Vec<(f64, f64)> = Vec::new();
        for (li, level) in partition.levels().iter().enumerate() {
            if level.lambda() <= 0.0 {
                continue;
            }
            let mass = linalg::schatten_q(sigma.level(li), r)?.powf(r);
            if mass <= 0.0 {
                continue;
            }
            let lam_ctrl = control.value(li, level.dim(), level.lambda(), n, nu)?;
            let s = mass / level.dim() as f64 * lam_ctrl.powf(pq * r);
            pts.push(((1.0 + level.lambda()).ln(), s.ln()));
        }
        let tail = &pts[pts.len() / 2..];
        if tail.len() < 3 {
            return Ok(NuclearityReport {
                partial_sum,
                tail_exponent: f64::NAN,
                verdict: NuclearityVerdict::Inconclusive,
                threshold_alpha,
            });
        }
        let nn = tail.len() as f64;
        let sx: f64 = tail.iter().map(|p| p.0).sum();
        let sy: f64 = tail.iter().map(|p| p.1).sum();
        let sxx: f64 = tail.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = tail.iter().map(|p| p.0 * p.1).sum();
        let slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
        let intercept = (sy - slope * sx) / nn;
        let x_min = tail.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let x_max = tail.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let max_dev = tail
            .iter()
            .map(|&(x, y)| (y - (intercept + slope * x)).abs())
            .fold(0.0, f64::max);
        // residual in slope units: how much the exponent could move within
        // the observed deviations
        let residual_slope = max_dev / (x_max - x_min).max(1e-300);
        (slope, residual_slope <= 0.1)
    };

    let verdict = if !fit_ok {
        NuclearityVerdict::Inconclusive
    } else if tail_exponent < -need {
        NuclearityVerdict::SufficientConditionHolds
    } else {
        NuclearityVerdict::Fails
    };

    Ok(NuclearityReport { partial_sum, tail_exponent, verdict, threshold_alpha })
}

/// Fitted constant in the eigenfunction sup-norm bound
/// ||e_l^m||_inf <= C lambda^{(n-1)/(2 nu)} over positive levels.
#[derive(Clone, Debug)]
pub struct HormanderFit {
    pub c: f64,
    /// per positive level: max_m sup-norm / lambda^{(n-1)/(2 nu)}
    pub ratios: Vec<f64>,
}

pub fn hormander_constant_fit(tr: &Transform) -> Result<HormanderFit> {
    let partition: &Arc<Partition> = tr.partition();
    let n = partition.dim_n() as f64;
    let nu = partition.order_nu();
    let sups = eigenfunction_lp_norms(tr, None)?;
    let mut ratios = Vec::new();
    for (level, level_sups) in partition.levels().iter().zip(&sups) {
        if level.lambda() <= 0.0 {
            continue;
        }
        let sup = level_sups.iter().cloned().fold(0.0, f64::max);
        ratios.push(sup / level.lambda().powf((n - 1.0) / (2.0 * nu)));
    }
    if ratios.len() < 5 {
        return Err(Error::InvalidArgument(format!(
            "sup-norm constant fit needs at least 5 positive levels, got {}",
            ratios.len()
        )));
    }
    let c = ratios.iter().cloned().fold(0.0, f64::max);
    Ok(HormanderFit { c, ratios })
}

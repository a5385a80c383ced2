//! Dense complex-matrix kernel: products, adjoints, one-sided Jacobi SVD,
//! Schatten quasi-norms, operator norm and trace.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative threshold below which singular values are clamped to zero.
const SV_CLAMP: f64 = 1e-14;
/// Convergence threshold for the Jacobi sweeps, relative to the Gram mass.
const JACOBI_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 60;

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument("matrix dimensions must be positive".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "entry count {} does not match {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        let m = CMatrix { rows, cols, data };
        m.check_finite()?;
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, &v) in entries.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn check_finite(&self) -> Result<()> {
        for (idx, v) in self.data.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFinite(format!(
                    "entry ({},{}) = {}",
                    idx / self.cols,
                    idx % self.cols,
                    v
                )));
            }
        }
        Ok(())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).conj())
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i))
    }

    pub fn mul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix {}x{} applied to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self.at(i, j) * v[j];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix addition".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(CMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        Ok(self.add(&other.scale(Complex64::new(-1.0, 0.0)))?)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Direct sum of square blocks along the diagonal.
    pub fn block_diag(blocks: &[CMatrix]) -> CMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = CMatrix::zeros(n.max(1), m.max(1));
        let mut ro = 0;
        let mut co = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(ro + i, co + j, b.at(i, j));
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }
}

/// Non-increasing singular values of a matrix.
#[derive(Clone, Debug)]
pub struct SingularValues {
    values: Vec<f64>,
}

impl SingularValues {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn largest(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }
}

/// Singular values by one-sided Jacobi on the columns.
///
/// Column pairs are orthogonalised with phase-adjusted plane rotations until
/// the Gram off-diagonal mass drops below `JACOBI_TOL` relative to the total
/// Gram mass; the column norms are then the singular values.
pub fn svd(a: &CMatrix) -> Result<SingularValues> {
    a.check_finite()?;
    // Work on the adjoint when rows < cols; singular values coincide.
    let work = if a.rows >= a.cols { a.clone() } else { a.adjoint() };
    let m = work.rows;
    let n = work.cols;

    // Column-major copy for cache-friendly column rotations.
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..m).map(|i| work.at(i, j)).collect()).collect();

    let total_mass: f64 = work.frobenius_norm().powi(2);
    if total_mass == 0.0 {
        return Ok(SingularValues { values: vec![0.0; n] });
    }

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let mut off_mass = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut hpp = 0.0f64;
                let mut hqq = 0.0f64;
                let mut hpq = Complex64::new(0.0, 0.0);
                for i in 0..m {
                    hpp += cols[p][i].norm_sqr();
                    hqq += cols[q][i].norm_sqr();
                    hpq += cols[p][i].conj() * cols[q][i];
                }
                let abs_pq = hpq.norm();
                off_mass += abs_pq * abs_pq;
                if abs_pq <= JACOBI_TOL * (hpp * hqq).sqrt() || abs_pq == 0.0 {
                    continue;
                }
                // Phase-align column q, then apply the real Jacobi rotation
                // that annihilates the Gram entry.
                let phase = hpq / abs_pq;
                let zeta = (hqq - hpp) / (2.0 * abs_pq);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let vp = cols[p][i];
                    let vq = cols[q][i] * phase.conj();
                    cols[p][i] = vp * c - vq * s;
                    cols[q][i] = vp * s + vq * c;
                }
            }
        }
        if off_mass.sqrt() <= JACOBI_TOL * total_mass {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence(format!(
            "one-sided Jacobi SVD did not converge in {MAX_SWEEPS} sweeps for a {}x{} matrix",
            a.rows, a.cols
        )));
    }

    let mut values: Vec<f64> = cols
        .iter()
        .map(|cv| cv.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    values.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let smax = values.first().copied().unwrap_or(0.0);
    for v in &mut values {
        if *v < SV_CLAMP * smax {
            *v = 0.0;
        }
    }
    Ok(SingularValues { values })
}

/// Schatten quasi-norm `(sum s_k^r)^{1/r}` for `r > 0`.
pub fn schatten_q(a: &CMatrix, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!("Schatten exponent must be positive, got {r}")));
    }
    let sv = svd(a)?;
    let sum: f64 = sv.values().iter().map(|s| s.powf(r)).sum();
    Ok(sum.powf(1.0 / r))
}

/// Largest singular value.
pub fn op_norm(a: &CMatrix) -> Result<f64> {
    Ok(svd(a)?.largest())
}

/// Sum of diagonal entries of a square matrix.
pub fn mat_trace(a: &CMatrix) -> Result<Complex64> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!("trace of {}x{} matrix", a.rows, a.cols)));
    }
    let mut t = Complex64::new(0.0, 0.0);
    for i in 0..a.rows {
        t += a.at(i, i);
    }
    Ok(t)
}

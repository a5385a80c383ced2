//! Forward/inverse Fourier transform relative to the reference operator:
//! per-level coefficient vectors, Plancherel and Sobolev diagnostics.
//!
//! Transforms are direct dense summation over quadrature nodes; every
//! coefficient set carries its partition and is never silently zero-extended.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::manifold::{eval_basis, Partition, QuadratureGrid};

/// Per-level complex coefficient vectors, column convention.
#[derive(Clone, Debug)]
pub struct FourierCoefficients {
    partition: Arc<Partition>,
    data: Vec<Vec<Complex64>>,
}

impl FourierCoefficients {
    pub fn zero(partition: Arc<Partition>) -> Self {
        let data = partition.levels().iter().map(|l| vec![Complex64::new(0.0, 0.0); l.dim()]).collect();
        FourierCoefficients { partition, data }
    }

    pub fn from_vectors(partition: Arc<Partition>, data: Vec<Vec<Complex64>>) -> Result<Self> {
        if data.len() != partition.num_levels() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficient vectors for {} levels",
                data.len(),
                partition.num_levels()
            )));
        }
        for (level, vec) in partition.levels().iter().zip(&data) {
            if vec.len() != level.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "coefficient vector length {} at lambda={} (dim {})",
                    vec.len(),
                    level.lambda(),
                    level.dim()
                )));
            }
        }
        Ok(FourierCoefficients { partition, data })
    }

    /// Unit coefficient at (level, k), k 1-based; zero elsewhere.
    pub fn basis_unit(partition: Arc<Partition>, level: usize, k: usize) -> Result<Self> {
        let mut c = FourierCoefficients::zero(partition);
        let vec = c
            .data
            .get_mut(level)
            .ok_or_else(|| Error::InvalidArgument(format!("level {level} out of range")))?;
        if k < 1 || k > vec.len() {
            return Err(Error::InvalidArgument(format!("index {k} out of range 1..={}", vec.len())));
        }
        vec[k - 1] = Complex64::new(1.0, 0.0);
        Ok(c)
    }

    pub fn partition(&self) -> &Arc<Partition> {
        &self.partition
    }

    pub fn level(&self, idx: usize) -> &[Complex64] {
        &self.data[idx]
    }

    pub fn levels(&self) -> &[Vec<Complex64>] {
        &self.data
    }

    pub fn levels_mut(&mut self) -> &mut [Vec<Complex64>] {
        &mut self.data
    }

    pub fn norm_sq(&self) -> f64 {
        self.data.iter().flatten().map(|v| v.norm_sqr()).sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn axpy(&mut self, alpha: Complex64, other: &FourierCoefficients) -> Result<()> {
        if !self.partition.same_layout(&other.partition) {
            return Err(Error::PartitionMismatch("coefficient combination".into()));
        }
        for (a, b) in self.data.iter_mut().flatten().zip(other.data.iter().flatten()) {
            *a += alpha * b;
        }
        Ok(())
    }
}

/// Complex samples of a function at the quadrature nodes.
#[derive(Clone, Debug)]
pub struct GridFunction {
    grid: Arc<QuadratureGrid>,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn from_values(grid: Arc<QuadratureGrid>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} samples for {} nodes",
                values.len(),
                grid.len()
            )));
        }
        for v in &values {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFinite("grid sample".into()));
            }
        }
        Ok(GridFunction { grid, values })
    }

    pub fn grid(&self) -> &Arc<QuadratureGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Quadrature L2 norm.
    pub fn l2_norm(&self) -> f64 {
        self.values
            .iter()
            .zip(self.grid.weights())
            .map(|(v, w)| v.norm_sqr() * w)
            .sum::<f64>()
            .sqrt()
    }

    /// Quadrature Lp norm; `None` means the grid sup.
    pub fn lp_norm(&self, p: Option<f64>) -> f64 {
        match p {
            None => self.values.iter().map(|v| v.norm()).fold(0.0, f64::max),
            Some(p) => self
                .values
                .iter()
                .zip(self.grid.weights())
                .map(|(v, w)| v.norm().powf(p) * w)
                .sum::<f64>()
                .powf(1.0 / p),
        }
    }

    pub fn map(&self, f: impl Fn(usize, Complex64) -> Complex64) -> GridFunction {
        GridFunction {
            grid: self.grid.clone(),
            values: self.values.iter().enumerate().map(|(i, &v)| f(i, v)).collect(),
        }
    }
}

/// Precomputed basis table binding a partition to a quadrature grid.
pub struct Transform {
    partition: Arc<Partition>,
    grid: Arc<QuadratureGrid>,
    /// basis[flat][node], flat index in level-offset order
    basis: Vec<Vec<Complex64>>,
}

impl Transform {
    pub fn new(partition: Arc<Partition>, grid: Arc<QuadratureGrid>) -> Result<Self> {
        if grid.band_limit() < partition.max_lambda() {
            return Err(Error::BandExceeded(format!(
                "grid band {} below partition cutoff {}",
                grid.band_limit(),
                partition.max_lambda()
            )));
        }
        if grid.manifold() != partition.manifold() {
            return Err(Error::PartitionMismatch("grid/partition manifold".into()));
        }
        let mut basis = Vec::with_capacity(partition.total_dim());
        for (li, level) in partition.levels().iter().enumerate() {
            for k in 1..=level.dim() {
                let vals: Result<Vec<Complex64>> =
                    grid.nodes().iter().map(|p| eval_basis(&partition, li, k, p)).collect();
                basis.push(vals?);
            }
        }
        Ok(Transform { partition, grid, basis })
    }

    pub fn partition(&self) -> &Arc<Partition> {
        &self.partition
    }

    pub fn grid(&self) -> &Arc<QuadratureGrid> {
        &self.grid
    }

    /// Values of the flattened basis function at all nodes.
    pub fn basis_values(&self, flat: usize) -> &[Complex64] {
        &self.basis[flat]
    }

    /// f-hat(l, k) = sum_nodes f(x) conj(e_l^k(x)) w(x).
    pub fn forward(&self, f: &GridFunction) -> Result<FourierCoefficients> {
        if !Arc::ptr_eq(f.grid(), &self.grid) && f.grid().len() != self.grid.len() {
            return Err(Error::PartitionMismatch("grid function from a different grid".into()));
        }
        let weights = self.grid.weights();
        let mut out = FourierCoefficients::zero(self.partition.clone());
        let mut flat = 0;
        for vec in out.data.iter_mut() {
            for slot in vec.iter_mut() {
                let basis = &self.basis[flat];
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..basis.len() {
                    acc += f.values[i] * basis[i].conj() * weights[i];
                }
                *slot = acc;
                flat += 1;
            }
        }
        Ok(out)
    }

    /// Pointwise synthesis sum_l sum_k c(l,k) e_l^k(x).
    pub fn inverse(&self, c: &FourierCoefficients) -> Result<GridFunction> {
        if !self.partition.same_layout(c.partition()) {
            return Err(Error::PartitionMismatch("coefficients from a different partition".into()));
        }
        let mut values = vec![Complex64::new(0.0, 0.0); self.grid.len()];
        let mut flat = 0;
        for vec in c.data.iter() {
            for coeff in vec.iter() {
                if coeff.norm_sqr() != 0.0 {
                    let basis = &self.basis[flat];
                    for i in 0..values.len() {
                        values[i] += coeff * basis[i];
                    }
                }
                flat += 1;
            }
        }
        Ok(GridFunction { grid: self.grid.clone(), values })
    }
}

/// Sobolev norm (sum (1+lambda)^{2s/nu} |c|^2)^{1/2} over retained levels.
pub fn sobolev_norm(c: &FourierCoefficients, s: f64) -> f64 {
    let nu = c.partition().order_nu();
    let mut acc = 0.0;
    for (level, vec) in c.partition().levels().iter().zip(c.levels()) {
        let weight = (1.0 + level.lambda()).powf(2.0 * s / nu);
        acc += weight * vec.iter().map(|v| v.norm_sqr()).sum::<f64>();
    }
    acc.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{build_quadrature, enumerate_partition, ManifoldId};
    use crate::random;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(manifold: ManifoldId, cutoff: f64) -> Transform {
        let p = Arc::new(enumerate_partition(manifold, cutoff).unwrap());
        let g = Arc::new(build_quadrature(&p, cutoff).unwrap());
        Transform::new(p, g).unwrap()
    }

    fn random_coefficients(rng: &mut impl Rng, partition: &Arc<Partition>) -> FourierCoefficients {
        let data = partition
            .levels()
            .iter()
            .map(|l| random::complex_vector(rng, l.dim()))
            .collect();
        FourierCoefficients::from_vectors(partition.clone(), data).unwrap()
    }

    #[test]
    fn forward_of_basis_function_is_delta() {
        let tr = setup(ManifoldId::Torus(2), 5.0);
        let c = FourierCoefficients::basis_unit(tr.partition().clone(), 2, 3).unwrap();
        let f = tr.inverse(&c).unwrap();
        let back = tr.forward(&f).unwrap();
        for (li, vec) in back.levels().iter().enumerate() {
            for (ki, v) in vec.iter().enumerate() {
                let expect = if li == 2 && ki == 2 { 1.0 } else { 0.0 };
                assert!((v - Complex64::new(expect, 0.0)).norm() < 1e-12, "({li},{ki})");
            }
        }
    }

    #[test]
    fn constant_function_hits_only_level_zero() {
        let tr = setup(ManifoldId::Torus(1), 9.0);
        let ones = vec![Complex64::new(1.0, 0.0); tr.grid().len()];
        let f = GridFunction::from_values(tr.grid().clone(), ones).unwrap();
        let c = tr.forward(&f).unwrap();
        assert!((c.level(0)[0] - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        for vec in c.levels().iter().skip(1) {
            for v in vec {
                assert!(v.norm() < 1e-13);
            }
        }
    }

    #[test]
    fn plancherel_on_random_band_limited() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for m in [ManifoldId::Torus(1), ManifoldId::Torus(2), ManifoldId::Su2] {
            let tr = setup(m, 8.0);
            for _ in 0..5 {
                let c = random_coefficients(&mut rng, tr.partition());
                let f = tr.inverse(&c).unwrap();
                let lhs = f.l2_norm().powi(2);
                let rhs = c.norm_sq();
                assert!((lhs - rhs).abs() < 1e-11 * rhs, "{m:?}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn round_trip_on_band_limited() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let tr = setup(ManifoldId::Torus(2), 8.0);
        let c = random_coefficients(&mut rng, tr.partition());
        let f = tr.inverse(&c).unwrap();
        let back = tr.forward(&f).unwrap();
        for (a, b) in c.levels().iter().flatten().zip(back.levels().iter().flatten()) {
            assert!((a - b).norm() < 1e-11);
        }
    }

    #[test]
    fn real_even_function_synthesises_real() {
        // conjugate-symmetric coefficients c(-j) = conj(c(j)) give a real f
        let tr = setup(ManifoldId::Torus(1), 9.0);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut c = FourierCoefficients::zero(tr.partition().clone());
        let partition = tr.partition().clone();
        for (li, level) in partition.levels().iter().enumerate() {
            if level.dim() == 1 {
                c.levels_mut()[li][0] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
            } else {
                // labels sorted lexicographically: (-j, +j)
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                c.levels_mut()[li][0] = z.conj();
                c.levels_mut()[li][1] = z;
            }
        }
        let f = tr.inverse(&c).unwrap();
        for v in f.values() {
            assert!(v.im.abs() < 1e-12);
        }
    }

    #[test]
    fn linearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let tr = setup(ManifoldId::Torus(2), 5.0);
        let c1 = random_coefficients(&mut rng, tr.partition());
        let c2 = random_coefficients(&mut rng, tr.partition());
        let f1 = tr.inverse(&c1).unwrap();
        let f2 = tr.inverse(&c2).unwrap();
        let a = Complex64::new(0.3, -1.1);
        let b = Complex64::new(-0.7, 0.2);
        let combo = GridFunction::from_values(
            tr.grid().clone(),
            f1.values().iter().zip(f2.values()).map(|(x, y)| a * x + b * y).collect(),
        )
        .unwrap();
        let got = tr.forward(&combo).unwrap();
        let mut expect = tr.forward(&f1).unwrap();
        for v in expect.levels_mut().iter_mut().flatten() {
            *v *= a;
        }
        expect.axpy(b, &tr.forward(&f2).unwrap()).unwrap();
        for (x, y) in got.levels().iter().flatten().zip(expect.levels().iter().flatten()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn sobolev_norm_cases() {
        let tr = setup(ManifoldId::Torus(1), 16.0);
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        let c = random_coefficients(&mut rng, tr.partition());
        // s = 0 reduces to the l2 norm
        assert!((sobolev_norm(&c, 0.0) - c.l2_norm()).abs() < 1e-13);

        // single basis function: (1 + lambda)^{s/nu}
        let unit = FourierCoefficients::basis_unit(tr.partition().clone(), 2, 1).unwrap();
        let lam = tr.partition().levels()[2].lambda();
        let s = 1.7;
        let expect = (1.0 + lam).powf(s / 2.0);
        assert!((sobolev_norm(&unit, s) - expect).abs() < 1e-13);

        // direct-summation oracle for decaying coefficients
        let p = tr.partition().clone();
        let data: Vec<Vec<Complex64>> = p
            .levels()
            .iter()
            .map(|l| {
                vec![Complex64::new((1.0 + l.lambda()).powf(-2.0), 0.0); l.dim()]
            })
            .collect();
        let c2 = FourierCoefficients::from_vectors(p.clone(), data).unwrap();
        let s = 0.8;
        let direct: f64 = p
            .levels()
            .iter()
            .map(|l| {
                l.dim() as f64
                    * (1.0 + l.lambda()).powf(2.0 * s / 2.0)
                    * (1.0 + l.lambda()).powf(-4.0)
            })
            .sum::<f64>()
            .sqrt();
        assert!((sobolev_norm(&c2, s) - direct).abs() < 1e-12 * direct);
    }

    #[test]
    fn smoothness_decay_probe() {
        // imposing stronger smoothing power increases the fitted decay exponent
        let tr = setup(ManifoldId::Torus(1), 64.0);
        let p = tr.partition().clone();
        let mut fitted = Vec::new();
        for power in [1.0, 2.0, 3.0] {
            let data: Vec<Vec<Complex64>> = p
                .levels()
                .iter()
                .map(|l| vec![Complex64::new((1.0 + l.lambda()).powf(-power), 0.0); l.dim()])
                .collect();
            let c = FourierCoefficients::from_vectors(p.clone(), data).unwrap();
            // least-squares slope of log|c| against log(1+lambda)
            let pts: Vec<(f64, f64)> = p
                .levels()
                .iter()
                .zip(c.levels())
                .filter(|(l, _)| l.lambda() > 0.0)
                .map(|(l, v)| ((1.0 + l.lambda()).ln(), v[0].norm().ln()))
                .collect();
            let n = pts.len() as f64;
            let sx: f64 = pts.iter().map(|p| p.0).sum();
            let sy: f64 = pts.iter().map(|p| p.1).sum();
            let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
            let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
            fitted.push(-(n * sxy - sx * sy) / (n * sxx - sx * sx));
        }
        assert!(fitted[0] < fitted[1] && fitted[1] < fitted[2], "{fitted:?}");
    }

    #[test]
    fn band_mismatch_rejected() {
        let p_small = Arc::new(enumerate_partition(ManifoldId::Torus(1), 4.0).unwrap());
        let g_small = Arc::new(build_quadrature(&p_small, 4.0).unwrap());
        let p_big = Arc::new(enumerate_partition(ManifoldId::Torus(1), 16.0).unwrap());
        assert!(Transform::new(p_big, g_small).is_err());
    }
}

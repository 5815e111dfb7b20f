//! Compound-Gaussian interference: Gamma texture times correlated speckle.
//!
//! A snapshot of interference is `sigma_c * sqrt(tau) * z` where
//! `tau ~ Gamma(nu, nu)` (unit mean, variance `1/nu`) modulates power and
//! `z` is a circular complex Gaussian with a Toeplitz spatial covariance
//! spread around the interference direction.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::error::{Error, Result};
use crate::sim::scenario::power_from_db;

/// Statistical description of the interference component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceParams {
    /// Gamma shape (spikiness); smaller means heavier tails.
    pub nu: f64,
    /// Angular-spread correlation of the speckle, in [0, 1).
    pub rho: f64,
    /// Interference direction in radians.
    pub theta_c: f64,
    /// Interference-to-noise ratio in dB; fixes `sigma_c^2` relative to the
    /// noise power.
    pub inr_db: f64,
}

impl InterferenceParams {
    pub fn new(nu: f64, rho: f64, theta_c: f64, inr_db: f64) -> Result<Self> {
        if !nu.is_finite() || nu <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "texture shape nu must be positive, got {nu}"
            )));
        }
        if !rho.is_finite() || !(0.0..1.0).contains(&rho) {
            return Err(Error::InvalidParameter(format!(
                "speckle correlation rho must lie in [0, 1), got {rho}"
            )));
        }
        if !theta_c.is_finite() || theta_c.abs() >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::InvalidAngle(format!(
                "interference DOA {theta_c} rad outside (-pi/2, pi/2)"
            )));
        }
        if !inr_db.is_finite() {
            return Err(Error::InvalidParameter("INR must be finite".into()));
        }
        Ok(Self {
            nu,
            rho,
            theta_c,
            inr_db,
        })
    }

    /// Interference power `sigma_c^2` for a given noise power.
    pub fn power(&self, noise_power: f64) -> f64 {
        power_from_db(self.inr_db, noise_power)
    }
}

/// Speckle covariance matrix: entry (m, l) is
/// `rho^|m-l| * exp(j*(m-l)*pi*sin(theta_c))`. Hermitian with unit diagonal.
pub fn interference_covariance(params: &InterferenceParams, l: usize) -> Result<DMatrix<Complex64>> {
    if !(0.0..1.0).contains(&params.rho) {
        return Err(Error::InvalidParameter(format!(
            "speckle correlation rho must lie in [0, 1), got {}",
            params.rho
        )));
    }
    let phase = std::f64::consts::PI * params.theta_c.sin();
    Ok(DMatrix::from_fn(l, l, |m, n| {
        let diff = m as isize - n as isize;
        let mag = params.rho.powi(diff.unsigned_abs() as i32);
        Complex64::from_polar(mag, phase * diff as f64)
    }))
}

/// Draw one texture value `tau ~ Gamma(shape = nu, rate = nu)`.
///
/// Valid for any positive shape, including the heavy-tailed nu < 1 regime.
pub fn sample_texture<R: Rng + ?Sized>(nu: f64, rng: &mut R) -> Result<f64> {
    if !nu.is_finite() || nu <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "texture shape nu must be positive, got {nu}"
        )));
    }
    let gamma = Gamma::new(nu, 1.0 / nu)
        .map_err(|e| Error::InvalidParameter(format!("gamma({nu}, {nu}): {e}")))?;
    let tau: f64 = gamma.sample(rng);
    // Guard against underflow to exactly zero for very small shapes.
    Ok(tau.max(f64::MIN_POSITIVE))
}

/// Draw a standard circular complex Gaussian value (unit variance).
pub(crate) fn standard_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Lower-triangular factor of the speckle covariance, with a tiny diagonal
/// jitter retry if the factorization fails numerically.
pub(crate) fn speckle_factor(
    params: &InterferenceParams,
    l: usize,
) -> Result<DMatrix<Complex64>> {
    let cov = interference_covariance(params, l)?;
    if let Some(chol) = cov.clone().cholesky() {
        return Ok(chol.l());
    }
    let jitter = 1e-12;
    let mut jittered = cov;
    for i in 0..l {
        jittered[(i, i)] += Complex64::new(jitter, 0.0);
    }
    jittered.cholesky().map(|c| c.l()).ok_or_else(|| {
        Error::Numerical(format!(
            "speckle covariance factorization failed for rho={}, L={l}, \
             even with diagonal jitter {jitter:e}",
            params.rho
        ))
    })
}

/// Sample `k` i.i.d. interference snapshots as the columns of an `L x k`
/// matrix. Each column is `sigma_c * sqrt(tau) * z` with a fresh texture per
/// snapshot and speckle covariance from [`interference_covariance`].
pub fn sample_interference<R: Rng + ?Sized>(
    params: &InterferenceParams,
    l: usize,
    noise_power: f64,
    k: usize,
    rng: &mut R,
) -> Result<DMatrix<Complex64>> {
    let factor = speckle_factor(params, l)?;
    let sigma_c = params.power(noise_power).sqrt();
    let mut out = DMatrix::zeros(l, k);
    let mut white = DVecBuf::new(l);
    for col in 0..k {
        let tau = sample_texture(params.nu, rng)?;
        let scale = sigma_c * tau.sqrt();
        white.fill_standard(rng);
        // column = scale * (factor * white)
        for row in 0..l {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..=row {
                acc += factor[(row, j)] * white.values[j];
            }
            out[(row, col)] = acc * scale;
        }
    }
    Ok(out)
}

/// Scratch buffer of standard complex normals.
struct DVecBuf {
    values: Vec<Complex64>,
}

impl DVecBuf {
    fn new(l: usize) -> Self {
        Self {
            values: vec![Complex64::new(0.0, 0.0); l],
        }
    }

    fn fill_standard<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        for v in &mut self.values {
            *v = standard_complex(rng);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::rng::param_rng;
    use approx::assert_relative_eq;

    #[test]
    fn covariance_with_zero_rho_is_identity() {
        let p = InterferenceParams::new(0.2, 0.0, 0.3, 5.0).unwrap();
        let m = interference_covariance(&p, 5).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_relative_eq!(m[(i, j)].re, want, epsilon = 1e-15);
                assert_relative_eq!(m[(i, j)].im, 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn covariance_entry_matches_model() {
        // theta_c = 0 removes the phase term, so entry (2, 1) is rho itself.
        let p = InterferenceParams::new(0.2, 0.9, 0.0, 5.0).unwrap();
        let m = interference_covariance(&p, 4).unwrap();
        assert_relative_eq!(m[(2, 1)].re, 0.9, epsilon = 1e-15);
        assert_relative_eq!(m[(2, 1)].im, 0.0, epsilon = 1e-15);
        for i in 0..4 {
            assert_relative_eq!(m[(i, i)].re, 1.0, epsilon = 1e-15);
        }
        // Hermitian by construction.
        for i in 0..4 {
            for j in 0..4 {
                let a = m[(i, j)];
                let b = m[(j, i)].conj();
                assert_relative_eq!(a.re, b.re, epsilon = 1e-15);
                assert_relative_eq!(a.im, b.im, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(InterferenceParams::new(0.0, 0.5, 0.0, 5.0).is_err());
        assert!(InterferenceParams::new(0.2, 1.0, 0.0, 5.0).is_err());
        assert!(InterferenceParams::new(0.2, -0.1, 0.0, 5.0).is_err());
        assert!(InterferenceParams::new(0.2, 0.5, 2.0, 5.0).is_err());
        let mut rng = param_rng(1);
        assert!(sample_texture(-1.0, &mut rng).is_err());
        assert!(sample_texture(0.0, &mut rng).is_err());
    }

    #[test]
    fn texture_moments_match_gamma_law() {
        // E[tau] = 1 for every shape; Var[tau] = 1/nu.
        let mut rng = param_rng(123);
        let n = 200_000;
        for nu in [0.2, 1.0] {
            let mut sum = 0.0;
            let mut sumsq = 0.0;
            for _ in 0..n {
                let t = sample_texture(nu, &mut rng).unwrap();
                assert!(t > 0.0);
                sum += t;
                sumsq += t * t;
            }
            let mean = sum / n as f64;
            let var = sumsq / n as f64 - mean * mean;
            assert!((mean - 1.0).abs() < 0.02, "nu={nu}: mean {mean}");
            assert!(
                (var - 1.0 / nu).abs() < 0.10 / nu,
                "nu={nu}: var {var} vs {}",
                1.0 / nu
            );
        }
    }

    #[test]
    fn texture_with_unit_shape_is_exponential() {
        // Gamma(1, 1) is Exp(1); Kolmogorov-Smirnov at the 1% level.
        let mut rng = param_rng(7);
        let n = 100_000;
        let mut draws: Vec<f64> = (0..n)
            .map(|_| sample_texture(1.0, &mut rng).unwrap())
            .collect();
        draws.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut ks = 0.0f64;
        for (i, x) in draws.iter().enumerate() {
            let cdf = 1.0 - (-x).exp();
            let lo = i as f64 / n as f64;
            let hi = (i + 1) as f64 / n as f64;
            ks = ks.max((cdf - lo).abs()).max((cdf - hi).abs());
        }
        let critical = 1.63 / (n as f64).sqrt(); // alpha = 0.01
        assert!(ks < critical, "KS statistic {ks} exceeds {critical}");
    }

    #[test]
    fn texture_and_speckle_are_uncorrelated() {
        let p = InterferenceParams::new(0.5, 0.8, 0.2, 0.0).unwrap();
        let mut rng = param_rng(99);
        let n = 50_000;
        // Correlate tau with |z| by regenerating the same draws the sampler
        // makes: texture first, then speckle whites.
        let factor = speckle_factor(&p, 4).unwrap();
        let mut sum_t = 0.0;
        let mut sum_z = 0.0;
        let mut sum_tz = 0.0;
        let mut sum_tt = 0.0;
        let mut sum_zz = 0.0;
        for _ in 0..n {
            let tau = sample_texture(p.nu, &mut rng).unwrap();
            let mut z0 = Complex64::new(0.0, 0.0);
            let whites: Vec<Complex64> = (0..4).map(|_| standard_complex(&mut rng)).collect();
            for j in 0..1 {
                z0 += factor[(0, j)] * whites[j];
            }
            let zmag = z0.norm();
            sum_t += tau;
            sum_z += zmag;
            sum_tz += tau * zmag;
            sum_tt += tau * tau;
            sum_zz += zmag * zmag;
        }
        let nf = n as f64;
        let cov = sum_tz / nf - (sum_t / nf) * (sum_z / nf);
        let var_t = sum_tt / nf - (sum_t / nf).powi(2);
        let var_z = sum_zz / nf - (sum_z / nf).powi(2);
        let corr = cov / (var_t * var_z).sqrt();
        assert!(corr.abs() < 0.012, "corr {corr}");
    }

    #[test]
    fn interference_covariance_converges_to_model() {
        // Desk-size version of the acceptance check: 10^5 snapshots.
        let p = InterferenceParams::new(0.2, 0.9, 0.0, 5.0).unwrap();
        let l = 4;
        let n = 100_000;
        let mut rng = param_rng(2024);
        let x = sample_interference(&p, l, 1.0, n, &mut rng).unwrap();
        let mut acc = DMatrix::<Complex64>::zeros(l, l);
        for k in 0..n {
            let col = x.column(k);
            for i in 0..l {
                for j in 0..l {
                    acc[(i, j)] += col[i] * col[j].conj();
                }
            }
        }
        acc /= Complex64::new(n as f64, 0.0);
        let truth = interference_covariance(&p, l).unwrap() * Complex64::from(p.power(1.0));
        for i in 0..l {
            for j in 0..l {
                let err = (acc[(i, j)] - truth[(i, j)]).norm();
                let rel = err / truth[(i, j)].norm();
                assert!(rel < 0.05, "entry ({i},{j}) rel err {rel}");
            }
        }
    }
}

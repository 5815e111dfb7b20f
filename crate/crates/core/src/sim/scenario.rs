//! Scenario description and snapshot generation.
//!
//! A scenario fixes everything about one simulated scene: geometry, number of
//! snapshots, source DOAs and powers, noise power, optional interference, the
//! label grid, and a seed. Generation is a pure function of the scenario.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::sim::geometry::{steering_vector, AngularGrid, ArrayGeometry};
use crate::sim::interference::{sample_interference, standard_complex, InterferenceParams};
use crate::sim::rng;

/// Convert a dB level to linear power relative to a reference:
/// `reference_power * 10^(level_db / 10)`.
pub fn power_from_db(level_db: f64, reference_power: f64) -> f64 {
    debug_assert!(reference_power > 0.0, "reference power must be positive");
    reference_power * 10f64.powf(level_db / 10.0)
}

/// All physical and statistical parameters of one simulated scene.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub geometry: ArrayGeometry,
    pub num_snapshots: usize,
    /// Source DOAs in radians; arbitrary off-grid values are allowed.
    pub source_doas: Vec<f64>,
    /// Linear source powers, one per DOA.
    pub source_powers: Vec<f64>,
    pub noise_power: f64,
    pub interference: Option<InterferenceParams>,
    pub grid: AngularGrid,
    pub seed: u64,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_snapshots == 0 {
            return Err(Error::InvalidScenario("need at least one snapshot".into()));
        }
        if self.source_doas.len() != self.source_powers.len() {
            return Err(Error::InvalidScenario(format!(
                "{} DOAs but {} powers",
                self.source_doas.len(),
                self.source_powers.len()
            )));
        }
        if !(self.noise_power.is_finite() && self.noise_power > 0.0) {
            return Err(Error::InvalidScenario(format!(
                "noise power must be positive, got {}",
                self.noise_power
            )));
        }
        for &theta in &self.source_doas {
            if !self.grid.contains(theta) {
                return Err(Error::InvalidScenario(format!(
                    "source DOA {:.4} deg outside the field of view",
                    theta.to_degrees()
                )));
            }
        }
        for &p in &self.source_powers {
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::InvalidScenario(format!(
                    "source power must be positive, got {p}"
                )));
            }
        }
        for (i, &a) in self.source_doas.iter().enumerate() {
            for &b in &self.source_doas[i + 1..] {
                if a == b {
                    return Err(Error::InvalidScenario(format!(
                        "duplicate source DOA {:.4} deg",
                        a.to_degrees()
                    )));
                }
            }
        }
        if let Some(p) = &self.interference {
            if !self.grid.contains(p.theta_c) {
                return Err(Error::InvalidScenario(format!(
                    "interference DOA {:.4} deg outside the field of view",
                    p.theta_c.to_degrees()
                )));
            }
        }
        Ok(())
    }

    pub fn num_sources(&self) -> usize {
        self.source_doas.len()
    }
}

/// One simulated example: the measurement matrix, its label, and an
/// occupancy mask used for loss weighting.
#[derive(Debug, Clone)]
pub struct SnapshotExample {
    /// Complex measurements, one snapshot per column (L x K).
    pub x: DMatrix<Complex64>,
    /// Binary label over the grid: one at the grid point nearest each source.
    pub y: Vec<u8>,
    /// Grid points holding source *or* interference.
    pub occupied: Vec<u8>,
    pub meta: ScenarioConfig,
}

impl SnapshotExample {
    pub fn num_sources(&self) -> usize {
        self.meta.num_sources()
    }
}

/// Generate the snapshot matrix, label, and occupancy mask for a scenario.
///
/// The measurement model is `x_k = A(Theta) s_k + sigma_c c_k + n_k` with
/// temporally white Gaussian sources, compound-Gaussian interference, and
/// white thermal noise. Fully determined by `config.seed`.
pub fn generate_example(config: &ScenarioConfig) -> Result<SnapshotExample> {
    config.validate()?;
    let l = config.geometry.num_sensors();
    let k = config.num_snapshots;
    let m = config.num_sources();

    let mut x = DMatrix::<Complex64>::zeros(l, k);

    if m > 0 {
        let mut steering = DMatrix::<Complex64>::zeros(l, m);
        for (idx, &theta) in config.source_doas.iter().enumerate() {
            let a = steering_vector(theta, &config.geometry)?;
            steering.set_column(idx, &a);
        }
        let mut src = rng::source_rng(config.seed);
        let mut signals = DMatrix::<Complex64>::zeros(m, k);
        for col in 0..k {
            for (row, &power) in config.source_powers.iter().enumerate() {
                signals[(row, col)] = standard_complex(&mut src) * power.sqrt();
            }
        }
        x += steering * signals;
    }

    if let Some(params) = &config.interference {
        let mut irng = rng::interference_rng(config.seed);
        x += sample_interference(params, l, config.noise_power, k, &mut irng)?;
    }

    let mut nrng = rng::noise_rng(config.seed);
    let sigma_n = config.noise_power.sqrt();
    for col in 0..k {
        for row in 0..l {
            x[(row, col)] += standard_complex(&mut nrng) * sigma_n;
        }
    }

    let d = config.grid.len();
    let mut y = vec![0u8; d];
    for &theta in &config.source_doas {
        let idx = config.grid.nearest_index(theta);
        if y[idx] != 0 {
            return Err(Error::InvalidScenario(format!(
                "two sources label the same grid point {idx}"
            )));
        }
        y[idx] = 1;
    }
    let mut occupied = y.clone();
    if let Some(params) = &config.interference {
        occupied[config.grid.nearest_index(params.theta_c)] = 1;
    }

    Ok(SnapshotExample {
        x,
        y,
        occupied,
        meta: config.clone(),
    })
}

/// Draw a DOA set of size `m`, i.i.d. uniform on `[lo, hi]`, redrawn until all
/// pairwise separations reach `min_sep`.
pub(crate) fn draw_separated_doas<R: Rng + ?Sized>(
    m: usize,
    lo: f64,
    hi: f64,
    min_sep: f64,
    rng: &mut R,
) -> Result<Vec<f64>> {
    const MAX_ATTEMPTS: usize = 100_000;
    if hi <= lo {
        return Err(Error::InvalidParameter(format!(
            "empty DOA interval [{lo}, {hi}]"
        )));
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    if (hi - lo) < min_sep * (m as f64 - 1.0) {
        return Err(Error::InvalidParameter(format!(
            "interval of width {:.4} cannot hold {m} DOAs separated by {:.4}",
            hi - lo,
            min_sep
        )));
    }
    for _ in 0..MAX_ATTEMPTS {
        let doas: Vec<f64> = (0..m).map(|_| rng.random_range(lo..=hi)).collect();
        let mut ok = true;
        'outer: for i in 0..m {
            for j in i + 1..m {
                if (doas[i] - doas[j]).abs() < min_sep {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            return Ok(doas);
        }
    }
    Err(Error::InvalidParameter(format!(
        "failed to draw {m} separated DOAs in [{lo:.4}, {hi:.4}]"
    )))
}

//! Training-set mixture policy.
//!
//! Batches mix interference-free and interference-containing scenes, with a
//! sub-population whose sources sit close to the interference direction, and
//! draw all statistical parameters from the configured ranges.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sim::geometry::{AngularGrid, ArrayGeometry};
use crate::sim::interference::InterferenceParams;
use crate::sim::rng::{mix_seed3, param_rng};
use crate::sim::scenario::{
    draw_separated_doas, generate_example, power_from_db, ScenarioConfig, SnapshotExample,
};

const EXAMPLE_SALT: u64 = 0x45584d50; // "EXMP"

/// Mixture and parameter ranges for generated training scenes.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingSetPolicy {
    pub geometry: ArrayGeometry,
    pub num_snapshots: usize,
    pub grid: AngularGrid,
    pub max_sources: usize,
    pub noise_power: f64,
    /// Fraction of examples with no interference at all.
    pub interference_free_fraction: f64,
    /// Of the interference-containing examples, the fraction whose sources are
    /// confined to a window around the interference DOA.
    pub near_interference_fraction: f64,
    /// Half-width irrelevant: the window is `theta_c +- near_window`.
    pub near_window: f64,
    pub rho_range: (f64, f64),
    pub nu_range: (f64, f64),
    pub inr_range_db: (f64, f64),
    pub sir_range_db: (f64, f64),
    pub snr_range_db: (f64, f64),
    /// Minimum pairwise DOA separation; defaults to the grid resolution.
    pub min_separation: f64,
}

impl TrainingSetPolicy {
    /// The published training-set policy: 10% interference-free, 10% of the
    /// rest near-interference, rho ~ U[0.7, 0.95], nu ~ U[0.1, 1.5],
    /// INR ~ U[0, 10] dB, per-source SIR (or SNR) ~ U[-10, 10] dB.
    pub fn paper_default() -> Self {
        let grid = AngularGrid::default();
        let min_separation = grid.resolution();
        Self {
            geometry: ArrayGeometry::ula(16).expect("valid ULA"),
            num_snapshots: 16,
            grid,
            max_sources: 4,
            noise_power: 1.0,
            interference_free_fraction: 0.10,
            near_interference_fraction: 0.10,
            near_window: 8f64.to_radians(),
            rho_range: (0.70, 0.95),
            nu_range: (0.1, 1.5),
            inr_range_db: (0.0, 10.0),
            sir_range_db: (-10.0, 10.0),
            snr_range_db: (-10.0, 10.0),
            min_separation,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_sources == 0 {
            return Err(Error::InvalidParameter("max_sources must be >= 1".into()));
        }
        if self.num_snapshots == 0 {
            return Err(Error::InvalidParameter("num_snapshots must be >= 1".into()));
        }
        for (name, frac) in [
            ("interference_free_fraction", self.interference_free_fraction),
            ("near_interference_fraction", self.near_interference_fraction),
        ] {
            if !(0.0..=1.0).contains(&frac) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must lie in [0, 1], got {frac}"
                )));
            }
        }
        for (name, (lo, hi)) in [
            ("rho_range", self.rho_range),
            ("nu_range", self.nu_range),
            ("inr_range_db", self.inr_range_db),
            ("sir_range_db", self.sir_range_db),
            ("snr_range_db", self.snr_range_db),
        ] {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(Error::InvalidParameter(format!(
                    "{name} is not an interval: ({lo}, {hi})"
                )));
            }
        }
        if !(self.noise_power.is_finite() && self.noise_power > 0.0) {
            return Err(Error::InvalidParameter("noise_power must be positive".into()));
        }
        if !(self.near_window.is_finite() && self.near_window > 0.0) {
            return Err(Error::InvalidParameter("near_window must be positive".into()));
        }
        Ok(())
    }

    fn uniform<R: Rng + ?Sized>(range: (f64, f64), rng: &mut R) -> f64 {
        if range.0 == range.1 {
            range.0
        } else {
            rng.random_range(range.0..=range.1)
        }
    }

    /// Draw one scenario under this policy; all randomness comes from the
    /// parameter stream of `seed`, and the scenario keeps `seed` for its own
    /// measurement draws.
    pub fn sample_scenario(&self, seed: u64) -> Result<ScenarioConfig> {
        let mut rng = param_rng(seed);
        let fov = (self.grid.fov_min(), self.grid.fov_max());
        let m = rng.random_range(1..=self.max_sources);

        let with_interference = rng.random::<f64>() >= self.interference_free_fraction;
        let (interference, doas, powers) = if with_interference {
            let near = rng.random::<f64>() < self.near_interference_fraction;
            let theta_c = rng.random_range(fov.0..=fov.1);
            let rho = Self::uniform(self.rho_range, &mut rng);
            let nu = Self::uniform(self.nu_range, &mut rng);
            let inr_db = Self::uniform(self.inr_range_db, &mut rng);
            let params = InterferenceParams::new(nu, rho, theta_c, inr_db)?;
            let (lo, hi) = if near {
                (
                    (theta_c - self.near_window).max(fov.0),
                    (theta_c + self.near_window).min(fov.1),
                )
            } else {
                fov
            };
            let doas = draw_separated_doas(m, lo, hi, self.min_separation, &mut rng)?;
            let sigma_c_sq = params.power(self.noise_power);
            let powers = (0..m)
                .map(|_| power_from_db(Self::uniform(self.sir_range_db, &mut rng), sigma_c_sq))
                .collect();
            (Some(params), doas, powers)
        } else {
            let doas = draw_separated_doas(m, fov.0, fov.1, self.min_separation, &mut rng)?;
            let powers = (0..m)
                .map(|_| {
                    power_from_db(Self::uniform(self.snr_range_db, &mut rng), self.noise_power)
                })
                .collect();
            (None, doas, powers)
        };

        Ok(ScenarioConfig {
            geometry: self.geometry,
            num_snapshots: self.num_snapshots,
            source_doas: doas,
            source_powers: powers,
            noise_power: self.noise_power,
            interference,
            grid: self.grid.clone(),
            seed,
        })
    }
}

/// Generate `n` examples under the policy. Example `i` derives its own RNG
/// stream from `(base_seed, i)`, so generation parallelizes without any
/// shared state and the result is independent of thread count.
pub fn make_training_batch(
    policy: &TrainingSetPolicy,
    n: usize,
    base_seed: u64,
) -> Result<Vec<SnapshotExample>> {
    policy.validate()?;
    (0..n)
        .into_par_iter()
        .map(|i| {
            let seed = mix_seed3(base_seed, i as u64, EXAMPLE_SALT);
            let scenario = policy.sample_scenario(seed)?;
            generate_example(&scenario)
        })
        .collect()
}

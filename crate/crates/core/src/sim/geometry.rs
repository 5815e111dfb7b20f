//! Array geometry, angular grid, and steering vectors for a half-wavelength ULA.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Inter-element spacing as a fraction of the wavelength. Fixed: ULA only.
pub const HALF_WAVELENGTH_SPACING: f64 = 0.5;

/// Uniform linear array described by its element count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayGeometry {
    num_sensors: usize,
    spacing: f64,
}

impl ArrayGeometry {
    /// A half-wavelength ULA with `num_sensors` elements (at least 2).
    pub fn ula(num_sensors: usize) -> Result<Self> {
        if num_sensors < 2 {
            return Err(Error::InvalidParameter(format!(
                "ULA needs at least 2 sensors, got {num_sensors}"
            )));
        }
        Ok(Self {
            num_sensors,
            spacing: HALF_WAVELENGTH_SPACING,
        })
    }

    pub fn num_sensors(&self) -> usize {
        self.num_sensors
    }

    /// Element spacing in wavelengths (always one half).
    pub fn spacing(&self) -> f64 {
        self.spacing
    }
}

/// Steering vector of the ULA for a plane wave from angle `theta` (radians,
/// broadside convention): element `l` is `exp(j*pi*l*sin(theta))`.
pub fn steering_vector(theta: f64, geometry: &ArrayGeometry) -> Result<DVector<Complex64>> {
    if !theta.is_finite() || theta.abs() >= std::f64::consts::FRAC_PI_2 {
        return Err(Error::InvalidAngle(format!(
            "steering angle {theta} rad outside (-pi/2, pi/2)"
        )));
    }
    let phase_step = 2.0 * std::f64::consts::PI * geometry.spacing * theta.sin();
    Ok(DVector::from_fn(geometry.num_sensors, |l, _| {
        Complex64::from_polar(1.0, phase_step * l as f64)
    }))
}

/// Evenly spaced angular grid spanning the field of view. Angles in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularGrid {
    fov_min: f64,
    fov_max: f64,
    resolution: f64,
    points: Vec<f64>,
}

impl AngularGrid {
    /// Build a grid from bounds and resolution in radians. The span must be an
    /// integer multiple of the resolution.
    pub fn new(fov_min: f64, fov_max: f64, resolution: f64) -> Result<Self> {
        if !(fov_min.is_finite() && fov_max.is_finite() && resolution.is_finite()) {
            return Err(Error::InvalidParameter("non-finite grid bounds".into()));
        }
        if fov_max <= fov_min {
            return Err(Error::InvalidParameter(format!(
                "empty field of view: [{fov_min}, {fov_max}]"
            )));
        }
        if resolution <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "grid resolution must be positive, got {resolution}"
            )));
        }
        let steps = (fov_max - fov_min) / resolution;
        let rounded = steps.round();
        if (steps - rounded).abs() > 1e-9 * steps.max(1.0) {
            return Err(Error::InvalidParameter(format!(
                "field of view [{fov_min}, {fov_max}] is not a whole number of {resolution}-steps"
            )));
        }
        let d = rounded as usize + 1;
        let points = (0..d).map(|i| fov_min + i as f64 * resolution).collect();
        Ok(Self {
            fov_min,
            fov_max,
            resolution,
            points,
        })
    }

    /// Convenience constructor with bounds and step in degrees.
    pub fn from_degrees(min_deg: f64, max_deg: f64, step_deg: f64) -> Result<Self> {
        Self::new(
            min_deg.to_radians(),
            max_deg.to_radians(),
            step_deg.to_radians(),
        )
    }

    /// Number of grid points `d`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn fov_min(&self) -> f64 {
        self.fov_min
    }

    pub fn fov_max(&self) -> f64 {
        self.fov_max
    }

    /// Width of the field of view in radians.
    pub fn fov_width(&self) -> f64 {
        self.fov_max - self.fov_min
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn angle(&self, index: usize) -> f64 {
        self.points[index]
    }

    pub fn contains(&self, theta: f64) -> bool {
        theta.is_finite() && theta >= self.fov_min && theta <= self.fov_max
    }

    /// Index of the grid point nearest to `theta`. A tie between two grid
    /// points resolves toward the lower index.
    pub fn nearest_index(&self, theta: f64) -> usize {
        let u = (theta - self.fov_min) / self.resolution;
        let lower = u.floor();
        let frac = u - lower;
        let mut idx = if frac > 0.5 { lower + 1.0 } else { lower };
        if idx < 0.0 {
            idx = 0.0;
        }
        (idx as usize).min(self.points.len() - 1)
    }
}

/// Table-II default: [-60 deg, 60 deg] at 1 deg resolution (121 points).
impl Default for AngularGrid {
    fn default() -> Self {
        Self::from_degrees(-60.0, 60.0, 1.0).expect("default grid is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn steering_at_broadside_is_all_ones() {
        let geom = ArrayGeometry::ula(4).unwrap();
        let a = steering_vector(0.0, &geom).unwrap();
        for l in 0..4 {
            assert_relative_eq!(a[l].re, 1.0, epsilon = 1e-15);
            assert_relative_eq!(a[l].im, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn steering_at_30_degrees_three_elements() {
        // sin(30 deg) = 0.5 so the element phases step by pi/2.
        let geom = ArrayGeometry::ula(3).unwrap();
        let a = steering_vector(30f64.to_radians(), &geom).unwrap();
        let expect = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
        ];
        for (got, want) in a.iter().zip(expect) {
            assert_relative_eq!(got.re, want.re, epsilon = 1e-12);
            assert_relative_eq!(got.im, want.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn steering_entries_are_unit_modulus_successive_powers() {
        let geom = ArrayGeometry::ula(8).unwrap();
        for theta in [-1.0f64, -0.3, 0.17, 0.9] {
            let a = steering_vector(theta, &geom).unwrap();
            let base = a[1];
            for l in 0..8 {
                assert_relative_eq!(a[l].norm(), 1.0, epsilon = 1e-12);
                let pow = base.powu(l as u32);
                assert_relative_eq!(a[l].re, pow.re, epsilon = 1e-10);
                assert_relative_eq!(a[l].im, pow.im, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn steering_rejects_out_of_range_angles() {
        let geom = ArrayGeometry::ula(4).unwrap();
        assert!(steering_vector(std::f64::consts::FRAC_PI_2, &geom).is_err());
        assert!(steering_vector(-2.0, &geom).is_err());
        assert!(steering_vector(f64::NAN, &geom).is_err());
    }

    #[test]
    fn ula_needs_two_sensors() {
        assert!(ArrayGeometry::ula(1).is_err());
        assert!(ArrayGeometry::ula(2).is_ok());
    }

    #[test]
    fn default_grid_matches_table() {
        let grid = AngularGrid::default();
        assert_eq!(grid.len(), 121);
        assert_relative_eq!(grid.angle(0).to_degrees(), -60.0, epsilon = 1e-12);
        assert_relative_eq!(grid.angle(120).to_degrees(), 60.0, epsilon = 1e-12);
        assert_relative_eq!(grid.resolution().to_degrees(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn nearest_index_rounds_to_closest_point() {
        let grid = AngularGrid::default();
        // 0.55 deg sits nearest the 1-deg point, which is index 61.
        assert_eq!(grid.nearest_index(0.55f64.to_radians()), 61);
        assert_eq!(grid.nearest_index(0.45f64.to_radians()), 60);
        assert_eq!(grid.nearest_index(-60.0f64.to_radians()), 0);
        assert_eq!(grid.nearest_index(60.0f64.to_radians()), 120);
    }

    #[test]
    fn nearest_index_tie_rounds_down() {
        // Exact representable half-step tie: grid step 0.5 rad, theta 0.25 rad.
        let grid = AngularGrid::new(0.0, 2.0, 0.5).unwrap();
        assert_eq!(grid.nearest_index(0.25), 0);
        assert_eq!(grid.nearest_index(0.75), 1);
        assert_eq!(grid.nearest_index(0.26), 1);
    }

    #[test]
    fn grid_rejects_uneven_span() {
        assert!(AngularGrid::new(0.0, 1.0, 0.3).is_err());
        assert!(AngularGrid::new(1.0, 0.0, 0.1).is_err());
        assert!(AngularGrid::new(0.0, 1.0, -0.1).is_err());
    }
}

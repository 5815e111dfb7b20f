//! Snapshot simulation: geometry, interference model, scenarios, and the
//! training-set mixture policy.

pub mod dataset;
pub mod geometry;
pub mod interference;
pub mod policy;
pub mod rng;
pub mod scenario;

pub use geometry::{steering_vector, AngularGrid, ArrayGeometry};
pub use interference::{
    interference_covariance, sample_interference, sample_texture, InterferenceParams,
};
pub use policy::{make_training_batch, TrainingSetPolicy};
pub use scenario::{generate_example, power_from_db, ScenarioConfig, SnapshotExample};

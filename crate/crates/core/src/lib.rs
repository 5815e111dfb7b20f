//! DOA estimation under heavy-tailed, spatially-colored interference.
//!
//! This crate provides the full pipeline: a compound-Gaussian snapshot
//! simulator, a small reverse-mode autodiff engine with Adam and plateau
//! LR scheduling, the DAFC spectrum network and an FC reference network,
//! classical baselines (MVDR, MDL/AIC enumeration), and set-valued
//! evaluation metrics (Hausdorff RMSD, probability of resolution,
//! enumeration confusion matrices).

pub mod error;
pub mod sim;

pub use error::{Error, Result};

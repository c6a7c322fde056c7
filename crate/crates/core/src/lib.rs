//! Private states, PPT key-distillable families and key-repeater bounds,
//! with dense numerical verification.
//!
//! * [`opcore`]: labeled dense operators, partial trace/transpose, spectra,
//!   entropies, purification, Haar sampling.
//! * [`states`]: private bits in X-form, the PPT mixture, data-hiding
//!   families, flower states, erasure resources.
//! * [`measures`]: log-negativity, Devetak–Winter rates, privacy squeezing,
//!   accessible-information search.
//! * [`bounds`]: closed-form repeater-rate bound calculators.
//! * [`repsim`]: Bell-measurement swapping, teleportation through noisy
//!   resources, Haar-average checks.
//! * [`report`]: CSV/JSON emission.

pub mod bounds;
pub mod error;
pub mod measures;
pub mod opcore;
pub mod report;
pub mod repsim;
pub mod states;

pub use error::{Error, Result};

//! Dense simulations of swapping and teleportation protocols.

pub mod erasure;
pub mod haar;
pub mod swap;

pub use erasure::{
    erasure_demo, erasure_demo_gauge, erasure_demo_state, erasure_demo_with,
    erasure_expected_state, ShieldChannel,
};
pub use haar::{haar_average_check, haar_average_operator, HaarCheck};
pub use swap::{bell_correction, bell_swap, teleport_through, MeasurementEnsemble};

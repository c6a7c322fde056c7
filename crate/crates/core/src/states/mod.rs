//! Constructors for the explicit state families.

pub mod basic;
pub mod flower;
pub mod hiding;
pub mod pbit;

pub use basic::{epr, epr_vector, erasure_choi};
pub use flower::{
    flower_correlated, flower_state, flower_vector, maximally_correlated, mc_structure_defect,
    FlowerParams, FlowerSide,
};
pub use hiding::{
    hiding_dense, hiding_structured, rho_m, werner, HidingParams, HidingStructure, WernerSector,
};
pub use pbit::{
    assemble_key_blocks, check_pbit_layout, fourier_x, key_attacked, key_block, pbit_layout,
    ppt_mixture_weight, ppt_pbit_mixture, private_bit, shield_layout, swap_x, KeyBlock,
    XFormPrivateBit, KEY_A, KEY_B, SHIELD_A, SHIELD_B,
};

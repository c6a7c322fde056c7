//! Closeness of the hiding family to private bits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opcore::linalg::{c, svd, CMatrix};
use crate::opcore::{eta, partial_trace, Operator};
use crate::states::{
    assemble_key_blocks, check_pbit_layout, hiding_dense, key_block, HidingParams, KEY_A, KEY_B,
};

/// Upper end 1/(8 e^2) of the epsilon range where `delta_of_epsilon` bounds
/// the distance to a private bit.
pub const PROXIMITY_HYPOTHESIS: f64 = 1.0 / (8.0 * std::f64::consts::E * std::f64::consts::E);

/// delta(eps) = 2 sqrt(4 sqrt(2 eps) + eta(2 sqrt(2 eps))) + 2 sqrt(2 eps).
pub fn delta_of_epsilon(epsilon: f64) -> Result<f64> {
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::OutOfRange(format!("epsilon = {epsilon} < 0")));
    }
    let r = (2.0 * epsilon).sqrt();
    Ok(2.0 * (4.0 * r + eta((2.0 * r).min(1.0))?).sqrt() + 2.0 * r)
}

/// Proximity data for the member p = 1/3, d = m^2, k = m of the hiding
/// family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Proximity {
    pub m: u32,
    /// ||A_0011||_1 = (1/2)(1 - 2^-m)^m / (1 + 2^-m).
    pub a0011: f64,
    /// 1/2 - ||A_0011||_1.
    pub epsilon_raw: f64,
    /// (4/3) epsilon_raw, the value fed to delta.
    pub epsilon: f64,
    pub delta: f64,
    /// Whether 0 < epsilon < 1/(8 e^2).
    pub hypothesis: bool,
}

pub fn pbit_proximity(m: u32) -> Result<Proximity> {
    if m < 2 {
        return Err(Error::OutOfRange(format!("m = {m} < 2")));
    }
    let p: f64 = 1.0 / 3.0;
    let mi = m as i32;
    let ratio = (1.0 - 2.0 * p) / (2.0 * p);
    let a0011 = 0.5 * (1.0 - 0.5_f64.powi(mi)).powi(mi) / (1.0 + ratio.powi(mi));
    let epsilon_raw = 0.5 - a0011;
    let epsilon = 4.0 / 3.0 * epsilon_raw;
    Ok(Proximity {
        m,
        a0011,
        epsilon_raw,
        epsilon,
        delta: delta_of_epsilon(epsilon)?,
        hypothesis: epsilon > 0.0 && epsilon < PROXIMITY_HYPOTHESIS,
    })
}

/// Nearby private bit of a key/shield state: with A_0011 = W S V^dag and the
/// twist U = |00><00| (x) W^dag + |11><11| (x) V^dag + (identity on 01, 10),
/// returns U^dag [phi+ (x) tr_AB(U rho U^dag)] U.
pub fn twisted_pbit_approx(rho: &Operator) -> Result<Operator> {
    let (sa, sb) = check_pbit_layout(rho)?;
    let s = sa * sb;
    let dec = svd(&key_block(rho, (0, 0), (1, 1))?)?;
    let twist = twist_unitary(&dec.w.adjoint(), &dec.v_adj, s);
    let twisted = rho.conjugate_by(&twist)?;
    let shield = partial_trace(&twisted, &[KEY_A, KEY_B])?.into_matrix();
    let half = shield * c(0.5, 0.0);
    let untwisted_target = assemble_key_blocks(
        sa,
        sb,
        &[
            ((0, 0), (0, 0), half.clone()),
            ((0, 0), (1, 1), half.clone()),
            ((1, 1), (0, 0), half.clone()),
            ((1, 1), (1, 1), half),
        ],
    )?;
    untwisted_target.conjugate_by(&twist.adjoint())
}

fn twist_unitary(u00: &CMatrix, u11: &CMatrix, s: usize) -> CMatrix {
    let mut u = CMatrix::identity(4 * s, 4 * s);
    u.view_mut((0, 0), (s, s)).copy_from(u00);
    u.view_mut((3 * s, 3 * s), (s, s)).copy_from(u11);
    u
}

/// The private bit associated with a dense member of the hiding family.
pub fn gamma_m_construct(params: &HidingParams, cap: usize) -> Result<Operator> {
    twisted_pbit_approx(&hiding_dense(params, cap)?)
}

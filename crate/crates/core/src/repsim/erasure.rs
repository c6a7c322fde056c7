//! Key repeating through one EPR pair and a 50% erasure channel.

use serde::{Deserialize, Serialize};

use crate::bounds::{BoundReport, Direction};
use crate::error::{Error, Result};
use crate::measures::dw::{dw_from_purification, EVE};
use crate::opcore::linalg::{c, CMatrix};
use crate::opcore::{
    check_cap, partial_trace, purification, purification_sqrt, tensor, Operator, SubsystemLayout,
};
use crate::repsim::swap::teleport_through;
use crate::states::{epr, erasure_choi, fourier_x, private_bit, KEY_A, KEY_B, SHIELD_A, SHIELD_B};

/// Channel carrying Charlie's shield to Bob.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShieldChannel {
    Erasure,
    Epr,
}

fn check_shield(shield_d: usize, cap: usize) -> Result<()> {
    if shield_d < 2 {
        return Err(Error::OutOfRange(format!(
            "shield dimension {shield_d} < 2"
        )));
    }
    check_cap(4 * shield_d * (shield_d + 1), cap)
}

/// Alice and Charlie share the Fourier-shield p-bit on [A, CA, A', CA'];
/// Charlie teleports CA to B through an EPR pair and CA' to B' through
/// `channel`. Returns Alice and Bob's state on [A, B, A', B'].
pub fn erasure_demo_state(shield_d: usize, channel: ShieldChannel, cap: usize) -> Result<Operator> {
    check_shield(shield_d, cap)?;
    let gamma = private_bit(&fourier_x(shield_d)?)?
        .relabel(KEY_B, "CA")?
        .relabel(SHIELD_B, "CA'")?;
    let key_link = epr(2)?.relabel("A", "C")?;
    let after_key = teleport_through(&key_link, &gamma, "CA")?;
    let shield_link = match channel {
        ShieldChannel::Erasure => erasure_choi(shield_d)?,
        ShieldChannel::Epr => epr(shield_d)?,
    }
    .relabel("B", SHIELD_B)?
    .relabel("A", "C'")?;
    teleport_through(&shield_link, &after_key, "CA'")
}

/// 1/2 gamma + 1/2 tr_B'(gamma) (x) |e><e|, with gamma's B' embedded in the
/// first d levels of a (d+1)-level factor.
pub fn erasure_expected_state(shield_d: usize) -> Result<Operator> {
    let gamma = private_bit(&fourier_x(shield_d)?)?;
    let d = shield_d;
    let mut iso = CMatrix::zeros(d + 1, d);
    for i in 0..d {
        iso[(i, i)] = c(1.0, 0.0);
    }
    let embed = CMatrix::identity(4 * d, 4 * d).kronecker(&iso);
    let layout = SubsystemLayout::new(&[2, 2, d, d + 1], &[KEY_A, KEY_B, SHIELD_A, SHIELD_B])?;
    let padded = Operator::new(&embed * gamma.matrix() * embed.adjoint(), layout)?;
    let flag = Operator::basis_projector(d, SubsystemLayout::single(d + 1, SHIELD_B)?)?;
    let erased = tensor(&partial_trace(&gamma, &[SHIELD_B])?, &flag)?;
    Ok(&(&padded * 0.5) + &(&erased * 0.5))
}

/// Devetak–Winter rate of the demo state, Alice's key against Bob's key
/// qubit, with Eve holding a spectral purification.
pub fn erasure_demo_with(
    shield_d: usize,
    channel: ShieldChannel,
    cap: usize,
) -> Result<BoundReport> {
    let sigma = erasure_demo_state(shield_d, channel, cap)?;
    let rate = dw_from_purification(&purification(&sigma, EVE)?, KEY_A, &[KEY_B])?;
    let name = match channel {
        ShieldChannel::Erasure => "erasure_dw_rate",
        ShieldChannel::Epr => "epr_dw_rate",
    };
    Ok(
        BoundReport::new(name, Direction::Lower, rate, "erasure-repeater")
            .input("shield_d", shield_d as f64),
    )
}

pub fn erasure_demo(shield_d: usize, cap: usize) -> Result<BoundReport> {
    erasure_demo_with(shield_d, ShieldChannel::Erasure, cap)
}

/// The same rate with Eve holding the square-root purification rotated by
/// `env_unitary`; equal to `erasure_demo` up to rounding.
pub fn erasure_demo_gauge(shield_d: usize, env_unitary: &CMatrix, cap: usize) -> Result<f64> {
    let sigma = erasure_demo_state(shield_d, ShieldChannel::Erasure, cap)?;
    let pur = purification_sqrt(&sigma, EVE)?.rotate_env(env_unitary)?;
    dw_from_purification(&pur, KEY_A, &[KEY_B])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::trace_distance;
    use crate::opcore::DEFAULT_DENSE_CAP;

    #[test]
    fn teleported_state_matches_closed_form() {
        for d in [2, 3] {
            let sigma = erasure_demo_state(d, ShieldChannel::Erasure, DEFAULT_DENSE_CAP).unwrap();
            let expected = erasure_expected_state(d).unwrap();
            assert!(trace_distance(&sigma, &expected).unwrap() < 1e-10);
        }
    }

    #[test]
    fn epr_channel_is_perfect() {
        let sigma = erasure_demo_state(2, ShieldChannel::Epr, DEFAULT_DENSE_CAP).unwrap();
        let gamma = private_bit(&fourier_x(2).unwrap()).unwrap();
        assert!(trace_distance(&sigma, &gamma).unwrap() < 1e-10);
    }

    #[test]
    fn rate_at_two() {
        let r = erasure_demo(2, DEFAULT_DENSE_CAP).unwrap();
        assert!(r.value >= 0.5 - 1e-9, "rate {}", r.value);
    }

    #[test]
    fn shield_checks() {
        assert!(erasure_demo(1, DEFAULT_DENSE_CAP).is_err());
        assert!(matches!(erasure_demo(8, 100), Err(Error::SizeCap { .. })));
    }
}

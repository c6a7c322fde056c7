//! Closed-form repeater-rate bounds, packaged as [`BoundReport`]s.

pub mod proximity;

pub use proximity::{
    delta_of_epsilon, gamma_m_construct, pbit_proximity, twisted_pbit_approx, Proximity,
    PROXIMITY_HYPOTHESIS,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opcore::{binary_entropy, eta};
use crate::opcore::{partial_transpose, trace_norm, Operator};
use crate::states::{check_pbit_layout, key_block, shield_layout, XFormPrivateBit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Upper,
    Lower,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Upper => "upper",
            Direction::Lower => "lower",
        }
    }
}

/// A named scalar bound with its inputs.
///
/// `anchor` is a short stable tag naming the statement the value belongs to.
/// When `applicable` is false the stated precondition fails and `value` is
/// whatever the formula gives (possibly NaN); it must not be used as a bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub inputs: BTreeMap<String, f64>,
    pub value: f64,
    pub direction: Direction,
    pub applicable: bool,
    pub anchor: String,
}

impl BoundReport {
    pub fn new(name: &str, direction: Direction, value: f64, anchor: &str) -> Self {
        Self {
            name: name.to_owned(),
            inputs: BTreeMap::new(),
            value,
            direction,
            applicable: true,
            anchor: anchor.to_owned(),
        }
    }

    pub fn input(mut self, key: &str, value: f64) -> Self {
        self.inputs.insert(key.to_owned(), value);
        self
    }

    pub fn applicable(mut self, ok: bool) -> Self {
        self.applicable = ok;
        self
    }

    /// `k=v;k=v` in key order.
    pub fn inputs_string(&self) -> String {
        self.inputs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// eta extended by NaN outside [0, 1], for formulas evaluated off-domain.
fn eta_or_nan(x: f64) -> f64 {
    eta(x).unwrap_or(f64::NAN)
}

/// Weight 1/(sqrt d + 1) of the separable part in the PPT mixture.
pub fn gap_weight(d: f64) -> f64 {
    1.0 / (d.sqrt() + 1.0)
}

/// Lower bound 1 - 2h(p) on the distillable key of the PPT mixture and
/// upper bound 2p log2(2d) + eta(p) on its repeater rate (two copies),
/// p = 1/(sqrt d + 1).
pub fn gap_report(d: u64) -> Result<(BoundReport, BoundReport)> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("shield dimension {d} < 2")));
    }
    let df = d as f64;
    let p = gap_weight(df);
    let lower = 1.0 - 2.0 * binary_entropy(p)?;
    let upper = 2.0 * p * (2.0 * df).log2() + eta(p)?;
    Ok((
        BoundReport::new("kd_lower", Direction::Lower, lower, "ppt-mixture-key")
            .input("d", df)
            .input("p", p),
        BoundReport::new(
            "repeater_upper",
            Direction::Upper,
            upper,
            "ppt-mixture-repeater",
        )
        .input("d", df)
        .input("p", p),
    ))
}

/// 4(1 + log2 d) eps' + 2 eta(eps') with eps' = eps (mu + 1); applicable
/// only when eps' <= 1/3.
pub fn single_copy_bound(epsilon: f64, mu: f64, d: u64) -> Result<BoundReport> {
    if !(epsilon >= 0.0 && mu >= 0.0 && epsilon.is_finite() && mu.is_finite()) || d == 0 {
        return Err(Error::OutOfRange(format!(
            "single-copy bound needs eps, mu >= 0 and d >= 1 (eps = {epsilon}, mu = {mu}, d = {d})"
        )));
    }
    let eps_prime = epsilon * (mu + 1.0);
    let value = 4.0 * (1.0 + (d as f64).log2()) * eps_prime + 2.0 * eta_or_nan(eps_prime);
    Ok(BoundReport::new(
        "single_copy_upper",
        Direction::Upper,
        value,
        "single-copy-key",
    )
    .input("epsilon", epsilon)
    .input("mu", mu)
    .input("d", d as f64)
    .input("epsilon_prime", eps_prime)
    .applicable(eps_prime <= 1.0 / 3.0))
}

/// 4(2d+1)(log2 d + 1)/d^2 + 2 eta((2d+1)/d^2) for the SWAP-shield p-bit;
/// applicable for d >= 7.
pub fn swap_pbit_bound(d: u64) -> Result<BoundReport> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("shield dimension {d} < 2")));
    }
    let df = d as f64;
    let e = (2.0 * df + 1.0) / (df * df);
    let value = 4.0 * (2.0 * df + 1.0) * (df.log2() + 1.0) / (df * df) + 2.0 * eta_or_nan(e);
    Ok(BoundReport::new(
        "swap_pbit_upper",
        Direction::Upper,
        value,
        "swap-pbit-single-copy",
    )
    .input("d", df)
    .input("epsilon_prime", e)
    .applicable(d >= 7))
}

/// (E_D + E_C)/2 from caller-supplied measure values.
pub fn ed_ec_bound(ed: f64, ec: f64) -> Result<BoundReport> {
    if !(ed >= 0.0 && ec >= 0.0 && ed.is_finite() && ec.is_finite()) {
        return Err(Error::OutOfRange(format!(
            "measure values must be finite and >= 0 (ed = {ed}, ec = {ec})"
        )));
    }
    Ok(BoundReport::new(
        "repeater_upper",
        Direction::Upper,
        0.5 * ed + 0.5 * ec,
        "ed-ec-combinator",
    )
    .input("ed", ed)
    .input("ec", ec))
}

/// 1 + 2 m^2 log2(2m) / (2^m + 1).
pub fn ef_hiding_bound(m: u32) -> Result<BoundReport> {
    if m < 2 {
        return Err(Error::OutOfRange(format!("m = {m} < 2")));
    }
    let mf = m as f64;
    let value = 1.0 + 2.0 * mf * mf * (2.0 * mf).log2() / (2.0_f64.powf(mf) + 1.0);
    Ok(BoundReport::new("ef_upper", Direction::Upper, value, "hiding-formation").input("m", mf))
}

/// ||X^Gamma||_1 for a shield operator on [A', B'].
fn shield_gamma_norm(x: &Operator) -> Result<f64> {
    Ok(trace_norm(&partial_transpose(x, &["B'"])?))
}

/// Shield-size lower bound 1/||X^Gamma||_1 of a p-bit in X-form, with
/// ||X^Gamma||_1 and E_N = log2(1 + ||X^Gamma||_1) as inputs.
pub fn en_shield_lower(gamma: &Operator) -> Result<BoundReport> {
    let (sa, sb) = check_pbit_layout(gamma)?;
    let x = key_block(gamma, (0, 0), (1, 1))? * crate::opcore::linalg::c(2.0, 0.0);
    let x = Operator::new(x, shield_layout(sa, sb)?)?;
    shield_report(shield_gamma_norm(&x)?, sa.min(sb))
}

pub fn en_shield_from_x(x: &XFormPrivateBit) -> Result<BoundReport> {
    shield_report(x.x_gamma_norm(), x.shield_dim())
}

fn shield_report(xg: f64, shield: usize) -> Result<BoundReport> {
    if xg <= 0.0 {
        return Err(Error::Numerical("X^Gamma vanishes".into()));
    }
    Ok(BoundReport::new(
        "shield_lower",
        Direction::Lower,
        1.0 / xg,
        "negativity-shield-size",
    )
    .input("x_gamma_norm", xg)
    .input("log_negativity", (1.0 + xg).log2())
    .input("shield_dim", shield as f64))
}

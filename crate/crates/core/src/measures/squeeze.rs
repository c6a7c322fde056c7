//! Privacy squeezing: key blocks replaced by their trace norms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opcore::{matrix_trace_norm, shannon_entropy, Operator, ProbVector};
use crate::states::{key_block, HidingStructure};

const CELL_TOL: f64 = 1e-9;

/// Entries of the squeezed two-qubit matrix: a on |00><00| and |11><11|,
/// x on |01><01| and |10><10|, b (as a magnitude) on |00><11|.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SqueezeCell {
    pub a: f64,
    pub b: f64,
    pub x: f64,
}

impl SqueezeCell {
    /// Requires nonnegative entries, 2a + 2x = 1 and b <= a (within 1e-9).
    pub fn new(a: f64, b: f64, x: f64) -> Result<Self> {
        if a < -CELL_TOL || b < -CELL_TOL || x < -CELL_TOL {
            return Err(Error::OutOfRange(format!(
                "negative cell entry ({a}, {b}, {x})"
            )));
        }
        if (2.0 * a + 2.0 * x - 1.0).abs() > CELL_TOL {
            return Err(Error::OutOfRange(format!(
                "2a + 2x = {}",
                2.0 * a + 2.0 * x
            )));
        }
        if b > a + CELL_TOL {
            return Err(Error::OutOfRange(format!("b = {b} exceeds a = {a}")));
        }
        Ok(Self {
            a: a.max(0.0),
            b: b.clamp(0.0, a.max(0.0)),
            x: x.max(0.0),
        })
    }
}

/// Squeezes a dense key/shield operator.
pub fn privacy_squeeze(rho: &Operator) -> Result<SqueezeCell> {
    let a = matrix_trace_norm(&key_block(rho, (0, 0), (0, 0))?);
    let x = matrix_trace_norm(&key_block(rho, (0, 1), (0, 1))?);
    let b = matrix_trace_norm(&key_block(rho, (0, 0), (1, 1))?);
    SqueezeCell::new(a, b, x)
}

/// Squeezes the hiding family from its closed-form block norms.
pub fn privacy_squeeze_structured(s: &HidingStructure) -> Result<SqueezeCell> {
    SqueezeCell::new(s.diagonal, s.coherence, s.flipped)
}

/// 1 - H(a+b, a-b, x, x).
pub fn kd_ps_lower(cell: &SqueezeCell) -> Result<f64> {
    // cells accepted within CELL_TOL can sum to 1 + O(1e-16); rescale
    let raw = [cell.a + cell.b, cell.a - cell.b, cell.x, cell.x];
    let total: f64 = raw.iter().sum();
    let dist = ProbVector::normalized(raw.iter().map(|v| v / total).collect())?;
    Ok(1.0 - shannon_entropy(&dist)?)
}

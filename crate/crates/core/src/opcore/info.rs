//! Entropic functionals. All logarithms are base 2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opcore::linalg::{self, c};
use crate::opcore::{Operator, TAU_PSD, TAU_SUPP, TAU_TR};

/// Nonnegative weights, optionally required to sum to one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::OutOfRange(format!("probability entry {bad}")));
        }
        Ok(Self(entries))
    }

    /// Like `new`, but also requires the entries to sum to one within `TAU_TR`.
    pub fn normalized(entries: Vec<f64>) -> Result<Self> {
        let v = Self::new(entries)?;
        let total = v.total();
        if (total - 1.0).abs() > TAU_TR {
            return Err(Error::OutOfRange(format!(
                "probabilities sum to {total}, expected 1"
            )));
        }
        Ok(v)
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// eta(x) = -x log2 x, with eta(0) = 0.
pub fn eta(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfRange(format!(
            "eta argument {x} outside [0, 1]"
        )));
    }
    Ok(eta_unchecked(x))
}

pub(crate) fn eta_unchecked(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(format!("binary entropy argument {p}")));
    }
    Ok(eta_unchecked(p) + eta_unchecked(1.0 - p))
}

pub fn shannon_entropy(p: &ProbVector) -> Result<f64> {
    if let Some(bad) = p.entries().iter().find(|&&x| x > 1.0) {
        return Err(Error::OutOfRange(format!("probability entry {bad} > 1")));
    }
    Ok(p.entries().iter().map(|&x| eta_unchecked(x)).sum())
}

/// Entropy of a spectrum. Entries in `[-TAU_PSD, 0)` count as zero.
pub fn spectrum_entropy(values: &[f64]) -> Result<f64> {
    let mut h = 0.0;
    for &v in values {
        if v < -TAU_PSD {
            return Err(Error::NegativeEigenvalue(v));
        }
        h += eta_unchecked(v.clamp(0.0, 1.0));
    }
    Ok(h)
}

pub fn von_neumann_entropy(op: &Operator) -> Result<f64> {
    op.ensure_hermitian()?;
    spectrum_entropy(&linalg::hermitian_eigenvalues(op.matrix()))
}

/// Relative entropy; `Infinite` when the support condition fails.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RelativeEntropy {
    Finite(f64),
    Infinite,
}

impl RelativeEntropy {
    pub fn finite(self) -> Option<f64> {
        match self {
            Self::Finite(v) => Some(v),
            Self::Infinite => None,
        }
    }
}

/// D(rho || sigma) = tr rho (log rho - log sigma), in bits.
pub fn relative_entropy(rho: &Operator, sigma: &Operator) -> Result<RelativeEntropy> {
    if rho.layout() != sigma.layout() {
        return Err(Error::Layout(format!(
            "relative entropy of {} against {}",
            rho.layout(),
            sigma.layout()
        )));
    }
    rho.validate_state()?;
    sigma.validate_state()?;
    let (svals, svecs) = linalg::hermitian_eigen(sigma.matrix());
    let rotated = svecs.adjoint() * rho.matrix() * &svecs;
    let mut cross = 0.0;
    let mut outside = 0.0;
    for (k, &s) in svals.iter().enumerate() {
        let weight = rotated[(k, k)].re;
        if s > TAU_SUPP {
            cross += weight * s.log2();
        } else {
            outside += weight;
        }
    }
    if outside > TAU_SUPP {
        return Ok(RelativeEntropy::Infinite);
    }
    let h_rho = von_neumann_entropy(rho)?;
    Ok(RelativeEntropy::Finite(-h_rho - cross))
}

/// Holevo quantity chi = H(sum p_i rho_i) - sum p_i H(rho_i).
pub fn holevo(probs: &ProbVector, states: &[Operator]) -> Result<f64> {
    if probs.len() != states.len() || states.is_empty() {
        return Err(Error::DimensionMismatch(format!(
            "{} probabilities for {} states",
            probs.len(),
            states.len()
        )));
    }
    let mut avg = states[0].matrix() * c(0.0, 0.0);
    let mut conditional = 0.0;
    for (&p, s) in probs.entries().iter().zip(states) {
        if s.layout() != states[0].layout() {
            return Err(Error::Layout(
                "ensemble members have different layouts".into(),
            ));
        }
        if p == 0.0 {
            continue;
        }
        avg += s.matrix() * c(p, 0.0);
        conditional += p * von_neumann_entropy(s)?;
    }
    let avg = Operator::new(avg, states[0].layout().clone())?;
    Ok(von_neumann_entropy(&avg)? - conditional)
}

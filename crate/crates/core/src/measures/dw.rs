//! Devetak–Winter rates of classical-quantum-quantum ensembles.

use crate::error::{Error, Result};
use crate::opcore::{
    check_cap, holevo, partial_trace, purification, Operator, ProbVector, Purification,
};

/// Environment label used for Eve's purifying system.
pub const EVE: &str = "E";

/// Alice's outcome distribution with Bob's and Eve's conditional states.
#[derive(Clone, Debug)]
pub struct CcqEnsemble {
    labels: Vec<usize>,
    probs: ProbVector,
    bob_states: Vec<Operator>,
    eve_states: Vec<Operator>,
}

impl CcqEnsemble {
    pub fn new(
        labels: Vec<usize>,
        probs: ProbVector,
        bob_states: Vec<Operator>,
        eve_states: Vec<Operator>,
    ) -> Result<Self> {
        let n = labels.len();
        if probs.len() != n || bob_states.len() != n || eve_states.len() != n || n == 0 {
            return Err(Error::DimensionMismatch(format!(
                "{n} labels, {} probabilities, {} Bob states, {} Eve states",
                probs.len(),
                bob_states.len(),
                eve_states.len()
            )));
        }
        let probs = ProbVector::normalized(probs.entries().to_vec())?;
        for s in bob_states.iter().chain(&eve_states) {
            s.validate_state()?;
        }
        Ok(Self {
            labels,
            probs,
            bob_states,
            eve_states,
        })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn probs(&self) -> &ProbVector {
        &self.probs
    }

    pub fn bob_states(&self) -> &[Operator] {
        &self.bob_states
    }

    pub fn eve_states(&self) -> &[Operator] {
        &self.eve_states
    }

    /// I(X:B) as the Holevo quantity of Bob's branch.
    pub fn bob_information(&self) -> Result<f64> {
        holevo(&self.probs, &self.bob_states)
    }

    /// I(X:E) as the Holevo quantity of Eve's branch.
    pub fn eve_information(&self) -> Result<f64> {
        holevo(&self.probs, &self.eve_states)
    }
}

/// I(X:B) - I(X:E).
pub fn devetak_winter(ens: &CcqEnsemble) -> Result<f64> {
    Ok(ens.bob_information()? - ens.eve_information()?)
}

/// Alice measures `key_label` in the computational basis, Bob keeps
/// `bob_labels`, every other factor stays in the labs unused and Eve holds
/// the environment of `pur`.
pub fn ensemble_from_purification<S: AsRef<str>>(
    pur: &Purification,
    key_label: &str,
    bob_labels: &[S],
) -> Result<CcqEnsemble> {
    let layout = pur.system_layout();
    let key_dim = layout.dim_of(key_label)?;
    let bob_pos = layout.positions(bob_labels)?;
    if bob_pos.contains(&layout.position(key_label)?) {
        return Err(Error::Layout(format!(
            "key label `{key_label}` cannot also be Bob's"
        )));
    }
    let discard: Vec<&String> = layout
        .labels()
        .iter()
        .enumerate()
        .filter(|(k, _)| !bob_pos.contains(k))
        .map(|(_, l)| l)
        .collect();
    let rho = pur.system_marginal()?;
    let mut labels = Vec::new();
    let mut probs = Vec::new();
    let mut bob = Vec::new();
    let mut eve = Vec::new();
    for x in 0..key_dim {
        let (p, env) = pur.conditional_env(key_label, x)?;
        let Some(env) = env else { continue };
        let branch = partial_trace(&rho.project_factor(key_label, x)?, &discard)?;
        let pb = branch.trace().re;
        bob.push(branch.scale(1.0 / pb));
        eve.push(env);
        labels.push(x);
        probs.push(p);
    }
    CcqEnsemble::new(labels, ProbVector::normalized(probs)?, bob, eve)
}

/// Devetak–Winter rate with Eve holding a given purification.
pub fn dw_from_purification<S: AsRef<str>>(
    pur: &Purification,
    key_label: &str,
    bob_labels: &[S],
) -> Result<f64> {
    devetak_winter(&ensemble_from_purification(pur, key_label, bob_labels)?)
}

/// Devetak–Winter rate of `rho` with Eve holding its spectral purification.
pub fn dw_from_state<S: AsRef<str>>(
    rho: &Operator,
    key_label: &str,
    bob_labels: &[S],
    cap: usize,
) -> Result<f64> {
    check_cap(rho.dim(), cap)?;
    dw_from_purification(&purification(rho, EVE)?, key_label, bob_labels)
}

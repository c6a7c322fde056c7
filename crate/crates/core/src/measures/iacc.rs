//! Heuristic lower bounds on the accessible information of pure-state
//! ensembles, by local search over rank-one POVMs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::opcore::linalg::{self, c, CMatrix, CVector};
use crate::opcore::ProbVector;

/// Eigenvalues of the frame operator below this are treated as zero.
const FRAME_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IaccConfig {
    /// Local-search iterations per restart.
    pub iters: usize,
    /// Restarts; the first starts from the pretty-good measurement.
    pub restarts: usize,
    /// Stops a restart once the step size falls below this.
    pub tol: f64,
    pub seed: u64,
}

impl IaccConfig {
    pub fn new(iters: usize, seed: u64) -> Self {
        Self {
            iters,
            restarts: 32,
            tol: 1e-8,
            seed,
        }
    }
}

/// Mutual information (bits) between the ensemble label and the outcome of
/// the rank-one POVM {|phi_j><phi_j|}.
pub fn mutual_information(probs: &[f64], states: &[CVector], povm: &[CVector]) -> f64 {
    let joint: Vec<Vec<f64>> = povm
        .iter()
        .map(|phi| {
            probs
                .iter()
                .zip(states)
                .map(|(&p, psi)| p * phi.dotc(psi).norm_sqr())
                .collect()
        })
        .collect();
    let mut info = 0.0;
    for row in &joint {
        let q: f64 = row.iter().sum();
        for (&pij, &p) in row.iter().zip(probs) {
            if pij > 0.0 && q > 0.0 && p > 0.0 {
                info += pij * (pij / (p * q)).log2();
            }
        }
    }
    info.max(0.0)
}

/// G^{-1/2} on the support of G.
fn inverse_sqrt(g: &CMatrix) -> CMatrix {
    linalg::hermitian_function(g, |v| if v > FRAME_TOL { 1.0 / v.sqrt() } else { 0.0 })
}

/// Rescales vectors so that sum |phi><phi| is the identity on their span.
fn normalize_frame(vectors: &[CVector]) -> Vec<CVector> {
    let dim = vectors[0].len();
    let mut frame = CMatrix::zeros(dim, dim);
    for v in vectors {
        frame += v * v.adjoint();
    }
    let root = inverse_sqrt(&frame);
    vectors.iter().map(|v| &root * v).collect()
}

/// Square-root measurement, completed by a basis of the ensemble's kernel.
fn pretty_good(probs: &[f64], states: &[CVector]) -> Vec<CVector> {
    let dim = states[0].len();
    let weighted: Vec<CVector> = probs
        .iter()
        .zip(states)
        .map(|(&p, s)| s * c(p.sqrt(), 0.0))
        .collect();
    let mut avg = CMatrix::zeros(dim, dim);
    for v in &weighted {
        avg += v * v.adjoint();
    }
    let (vals, vecs) = linalg::hermitian_eigen(&avg);
    let root = inverse_sqrt(&avg);
    let mut povm: Vec<CVector> = weighted.iter().map(|v| &root * v).collect();
    for (k, &v) in vals.iter().enumerate() {
        if v <= FRAME_TOL {
            povm.push(vecs.column(k).into_owned());
        }
    }
    povm
}

fn random_frame(dim: usize, outcomes: usize, rng: &mut ChaCha8Rng) -> Vec<CVector> {
    let raw: Vec<CVector> = (0..outcomes)
        .map(|_| {
            CVector::from_fn(dim, |_, _| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                c(re, im)
            })
        })
        .collect();
    normalize_frame(&raw)
}

/// Iterative ascent Pi_j <- G^{-1/2}(1 + eps R_j) Pi_j (1 + eps R_j)^dag G^{-1/2}
/// with R_j = sum_i p_i log2(p(i|j)/p(i)) |psi_i><psi_i|; steps that do not
/// improve the mutual information halve eps.
fn ascend(
    probs: &[f64],
    states: &[CVector],
    mut povm: Vec<CVector>,
    iters: usize,
    tol: f64,
) -> f64 {
    let dim = states[0].len();
    let mut best = mutual_information(probs, states, &povm);
    let mut eps = 0.5;
    for _ in 0..iters {
        if eps < tol {
            break;
        }
        let stepped: Vec<CVector> = povm
            .iter()
            .map(|phi| {
                let q: Vec<f64> = probs
                    .iter()
                    .zip(states)
                    .map(|(&p, psi)| p * phi.dotc(psi).norm_sqr())
                    .collect();
                let total: f64 = q.iter().sum();
                let mut r = CMatrix::zeros(dim, dim);
                if total > 0.0 {
                    for ((&qi, &p), psi) in q.iter().zip(probs).zip(states) {
                        if qi > 0.0 && p > 0.0 {
                            let w = p * (qi / (p * total)).log2();
                            r += psi * psi.adjoint() * c(w, 0.0);
                        }
                    }
                }
                phi + (r * phi) * c(eps, 0.0)
            })
            .collect();
        let candidate = normalize_frame(&stepped);
        let value = mutual_information(probs, states, &candidate);
        if value > best {
            best = value;
            povm = candidate;
        } else {
            eps *= 0.5;
        }
    }
    best
}

/// Best mutual information found over rank-one POVMs with dim^2 outcomes:
/// a lower bound on the accessible information of {p_i, |psi_i>}.
/// Restarts run in parallel on independent ChaCha streams; the result is
/// their maximum and does not depend on scheduling.
pub fn iacc_search(probs: &ProbVector, states: &[CVector], config: &IaccConfig) -> Result<f64> {
    if states.is_empty() || probs.len() != states.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} probabilities for {} states",
            probs.len(),
            states.len()
        )));
    }
    let probs = ProbVector::normalized(probs.entries().to_vec())?;
    let dim = states[0].len();
    if dim == 0 || states.iter().any(|s| s.len() != dim) {
        return Err(Error::DimensionMismatch(
            "states differ in dimension".into(),
        ));
    }
    let states: Vec<CVector> = states
        .iter()
        .map(|s| {
            let n = s.norm();
            if n == 0.0 {
                Err(Error::NotAState("zero vector in ensemble".into()))
            } else {
                Ok(s / c(n, 0.0))
            }
        })
        .collect::<Result<_>>()?;
    let p = probs.entries();
    let restarts = config.restarts.max(1);
    let best = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let start = if r == 0 {
                pretty_good(p, &states)
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                rng.set_stream(r as u64);
                random_frame(dim, dim * dim, &mut rng)
            };
            ascend(p, &states, start, config.iters, config.tol)
        })
        .reduce(|| 0.0, f64::max);
    Ok(best)
}

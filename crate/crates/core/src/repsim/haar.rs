//! Monte-Carlo check that Haar-averaged flower overlaps are flat.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opcore::haar_unitary;
use crate::opcore::linalg::{self, c, CMatrix};

/// (1/dn) sum_{i,j} U^j|i><i|U^j^dag (x) V^{j+alpha}|i+beta><i+beta|V^{j+alpha}^dag,
/// indices modulo n and d.
pub fn haar_average_operator(
    u_list: &[CMatrix],
    v_list: &[CMatrix],
    alpha: usize,
    beta: usize,
) -> Result<CMatrix> {
    let n = u_list.len();
    if n == 0 || v_list.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} U's and {} V's",
            n,
            v_list.len()
        )));
    }
    let d = u_list[0].nrows();
    let mut out = CMatrix::zeros(d * d, d * d);
    for j in 0..n {
        let u = &u_list[j];
        let v = &v_list[(j + alpha) % n];
        for i in 0..d {
            let a = u.column(i);
            let b = v.column((i + beta) % d);
            let pa = a * a.adjoint();
            let pb = b * b.adjoint();
            out += pa.kronecker(&pb);
        }
    }
    Ok(out * c(1.0 / (d * n) as f64, 0.0))
}

/// Per-trial extremal eigenvalues, the deviation max |lambda d^2 - 1| and
/// the distance of the trial mean from 1/d^2.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HaarCheck {
    pub d: usize,
    pub n: usize,
    pub alpha: usize,
    pub beta: usize,
    pub trials: usize,
    pub min_eigenvalues: Vec<f64>,
    pub max_eigenvalues: Vec<f64>,
    pub deviations: Vec<f64>,
    pub median_deviation: f64,
    /// Operator norm of (mean over trials) - 1/d^2.
    pub mean_defect: f64,
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        0.5 * (v[k / 2 - 1] + v[k / 2])
    }
}

/// Samples `trials` independent Haar lists (trial t uses stream t of the
/// seeded ChaCha generator) for d <= 4 and n <= 64.
pub fn haar_average_check(
    d: usize,
    n: usize,
    alpha: usize,
    beta: usize,
    trials: usize,
    seed: u64,
) -> Result<HaarCheck> {
    if !(1..=4).contains(&d) || !(1..=64).contains(&n) || trials == 0 {
        return Err(Error::OutOfRange(format!(
            "Haar check needs 1 <= d <= 4, 1 <= n <= 64, trials >= 1 (got d = {d}, n = {n}, trials = {trials})"
        )));
    }
    let ops = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let u = (0..n)
                .map(|_| haar_unitary(d, &mut rng))
                .collect::<Result<Vec<_>>>()?;
            let v = (0..n)
                .map(|_| haar_unitary(d, &mut rng))
                .collect::<Result<Vec<_>>>()?;
            haar_average_operator(&u, &v, alpha, beta)
        })
        .collect::<Result<Vec<_>>>()?;
    let dd = (d * d) as f64;
    let mut min_eigenvalues = Vec::with_capacity(trials);
    let mut max_eigenvalues = Vec::with_capacity(trials);
    let mut deviations = Vec::with_capacity(trials);
    let mut mean = CMatrix::zeros(d * d, d * d);
    for op in &ops {
        let eig = linalg::hermitian_eigenvalues(op);
        let lo = eig[0];
        let hi = eig[eig.len() - 1];
        min_eigenvalues.push(lo);
        max_eigenvalues.push(hi);
        deviations.push((lo * dd - 1.0).abs().max((hi * dd - 1.0).abs()));
        mean += op;
    }
    mean *= c(1.0 / trials as f64, 0.0);
    let flat = CMatrix::identity(d * d, d * d) * c(1.0 / dd, 0.0);
    Ok(HaarCheck {
        d,
        n,
        alpha,
        beta,
        trials,
        median_deviation: median(&deviations),
        min_eigenvalues,
        max_eigenvalues,
        deviations,
        mean_defect: linalg::operator_norm(&(mean - flat)),
    })
}

#![allow(dead_code)]

use qkrep_core::opcore::linalg::{c, CMatrix};
use qkrep_core::opcore::{haar_unitary, Operator, SubsystemLayout};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random density matrix of the given rank with a Haar eigenbasis.
pub fn random_density(dim: usize, rank: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = haar_unitary(dim, &mut rng).unwrap();
    let mut m = CMatrix::zeros(dim, dim);
    let mut total = 0.0;
    for k in 0..rank.clamp(1, dim) {
        let w: f64 = rng.random_range(0.05..1.0);
        let col = u.column(k);
        m += col * col.adjoint() * c(w, 0.0);
        total += w;
    }
    m / c(total, 0.0)
}

pub fn random_state(dims: &[usize], labels: &[&str], seed: u64) -> Operator {
    let layout = SubsystemLayout::new(dims, labels).unwrap();
    let n = layout.total_dim();
    let rank = 1 + (seed as usize) % n;
    Operator::new(random_density(n, rank, seed), layout).unwrap()
}

/// Random Hermitian matrix with entries of order one.
pub fn random_hermitian(dim: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = CMatrix::from_fn(dim, dim, |_, _| {
        c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    (&g + g.adjoint()) * c(0.5, 0.0)
}

/// Eigenvalues via nalgebra's full Hermitian solver, no block splitting.
pub fn plain_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Sum of singular values via nalgebra's SVD.
pub fn plain_trace_norm(m: &CMatrix) -> f64 {
    m.clone().singular_values().iter().sum()
}

pub fn plain_entropy(m: &CMatrix) -> f64 {
    plain_eigenvalues(m)
        .into_iter()
        .filter(|&x| x > 1e-15)
        .map(|x| -x * x.log2())
        .sum()
}

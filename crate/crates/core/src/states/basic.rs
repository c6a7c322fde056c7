//! Maximally entangled states and the erasure-channel Choi state.

use crate::error::{Error, Result};
use crate::opcore::linalg::{c, CMatrix, CVector};
use crate::opcore::{Operator, SubsystemLayout};

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("dimension {d} < 2")));
    }
    Ok(())
}

/// sum_i |ii> / sqrt(d) as a vector.
pub fn epr_vector(d: usize) -> CVector {
    let mut v = CVector::zeros(d * d);
    let amp = c(1.0 / (d as f64).sqrt(), 0.0);
    for i in 0..d {
        v[i * d + i] = amp;
    }
    v
}

/// Maximally entangled projector on [A:d, B:d].
pub fn epr(d: usize) -> Result<Operator> {
    check_dim(d)?;
    Operator::pure(&epr_vector(d), SubsystemLayout::new(&[d, d], &["A", "B"])?)
}

/// Choi state of the 50% erasure channel, on [A:d, B:d+1], with the erasure
/// flag at output index d.
pub fn erasure_choi(d: usize) -> Result<Operator> {
    check_dim(d)?;
    let out = d + 1;
    let n = d * out;
    let mut m = CMatrix::zeros(n, n);
    let inv = 1.0 / d as f64;
    for i in 0..d {
        for j in 0..d {
            m[(i * out + i, j * out + j)] += c(0.5 * inv, 0.0);
        }
        m[(i * out + d, i * out + d)] += c(0.5 * inv, 0.0);
    }
    Operator::new(m, SubsystemLayout::new(&[d, out], &["A", "B"])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcore::{partial_trace, partial_transpose, trace_norm};

    #[test]
    fn epr_marginal_and_negativity() {
        let e = epr(4).unwrap();
        e.validate_state().unwrap();
        let a = partial_trace(&e, &["B"]).unwrap();
        assert!((a.matrix() - CMatrix::identity(4, 4) * c(0.25, 0.0)).norm() < 1e-14);
        let g = partial_transpose(&e, &["B"]).unwrap();
        assert!((trace_norm(&g).log2() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn erasure_choi_marginals() {
        let d = 3;
        let rho = erasure_choi(d).unwrap();
        rho.validate_state().unwrap();
        let a = partial_trace(&rho, &["B"]).unwrap();
        assert!((a.matrix() - CMatrix::identity(d, d) * c(1.0 / 3.0, 0.0)).norm() < 1e-14);
        let b = partial_trace(&rho, &["A"]).unwrap();
        let mut expected = CMatrix::zeros(d + 1, d + 1);
        for i in 0..d {
            expected[(i, i)] = c(0.5 / d as f64, 0.0);
        }
        expected[(d, d)] = c(0.5, 0.0);
        assert!((b.matrix() - expected).norm() < 1e-14);
    }

    #[test]
    fn small_dimensions_rejected() {
        assert!(epr(1).is_err());
        assert!(erasure_choi(1).is_err());
    }
}

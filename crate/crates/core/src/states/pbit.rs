//! Private bits in X-form and the PPT mixture built from the Fourier shield.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::opcore::linalg::{self, c, CMatrix};
use crate::opcore::{partial_transpose, Operator, SubsystemLayout};

/// Alice's key qubit.
pub const KEY_A: &str = "A";
/// Bob's key qubit.
pub const KEY_B: &str = "B";
/// Alice's shield.
pub const SHIELD_A: &str = "A'";
/// Bob's shield.
pub const SHIELD_B: &str = "B'";

/// Tolerance on ||X||_1 = 1 accepted by the constructors.
pub const X_NORM_TOL: f64 = 1e-6;

/// Canonical (key_A, key_B, shield_A, shield_B) layout with qubit keys.
pub fn pbit_layout(shield_a: usize, shield_b: usize) -> Result<SubsystemLayout> {
    SubsystemLayout::new(
        &[2, 2, shield_a, shield_b],
        &[KEY_A, KEY_B, SHIELD_A, SHIELD_B],
    )
}

pub fn shield_layout(shield_a: usize, shield_b: usize) -> Result<SubsystemLayout> {
    SubsystemLayout::new(&[shield_a, shield_b], &[SHIELD_A, SHIELD_B])
}

/// Ensures `op` carries the canonical key-then-shield layout and returns the
/// shield dimensions.
pub fn check_pbit_layout(op: &Operator) -> Result<(usize, usize)> {
    let l = op.layout();
    let expected = [KEY_A, KEY_B, SHIELD_A, SHIELD_B];
    if l.len() != 4 || l.labels().iter().zip(expected).any(|(a, b)| a != b) {
        return Err(Error::Layout(format!(
            "expected key/shield layout [A, B, A', B'], got {l}"
        )));
    }
    if l.dims()[0] != 2 || l.dims()[1] != 2 {
        return Err(Error::Layout(format!(
            "key factors must be qubits, got {l}"
        )));
    }
    Ok((l.dims()[2], l.dims()[3]))
}

/// Index of a key basis pair |ab>.
pub fn key_index(a: usize, b: usize) -> usize {
    2 * a + b
}

/// The shield block A_{ijkl} of rho = sum |ij><kl| (x) A_{ijkl}.
pub fn key_block(op: &Operator, row: (usize, usize), col: (usize, usize)) -> Result<CMatrix> {
    let (sa, sb) = check_pbit_layout(op)?;
    let s = sa * sb;
    let r0 = key_index(row.0, row.1) * s;
    let c0 = key_index(col.0, col.1) * s;
    Ok(op.matrix().view((r0, c0), (s, s)).into_owned())
}

/// A shield block placed at key row (a, b) and key column (a', b').
pub type KeyBlock = ((usize, usize), (usize, usize), CMatrix);

/// Assembles a key/shield operator from its nonzero shield blocks.
pub fn assemble_key_blocks(
    shield_a: usize,
    shield_b: usize,
    blocks: &[KeyBlock],
) -> Result<Operator> {
    let s = shield_a * shield_b;
    let mut m = CMatrix::zeros(4 * s, 4 * s);
    for (row, col, block) in blocks {
        if block.nrows() != s || block.ncols() != s {
            return Err(Error::DimensionMismatch(format!(
                "shield block is {}x{}, expected {s}x{s}",
                block.nrows(),
                block.ncols()
            )));
        }
        let r0 = key_index(row.0, row.1) * s;
        let c0 = key_index(col.0, col.1) * s;
        m.view_mut((r0, c0), (s, s)).copy_from(block);
    }
    Operator::new(m, pbit_layout(shield_a, shield_b)?)
}

/// Shield operator X of a private bit, acting on A' (x) B'.
#[derive(Clone, Debug, PartialEq)]
pub struct XFormPrivateBit {
    x: Operator,
    shield_dim: usize,
}

impl XFormPrivateBit {
    /// Accepts a d^2 x d^2 matrix with unit trace norm (within `X_NORM_TOL`).
    pub fn new(x: CMatrix, shield_dim: usize) -> Result<Self> {
        if shield_dim == 0 {
            return Err(Error::OutOfRange("shield dimension must be >= 1".into()));
        }
        let x = Operator::new(x, shield_layout(shield_dim, shield_dim)?)?;
        let norm = crate::opcore::trace_norm(&x);
        if (norm - 1.0).abs() > X_NORM_TOL {
            return Err(Error::NormViolation(norm));
        }
        Ok(Self { x, shield_dim })
    }

    pub fn x(&self) -> &Operator {
        &self.x
    }

    pub fn shield_dim(&self) -> usize {
        self.shield_dim
    }

    /// X with Bob's shield transposed.
    pub fn x_gamma(&self) -> Operator {
        partial_transpose(&self.x, &[SHIELD_B]).expect("shield layout carries B'")
    }

    /// ||X^Gamma||_1.
    pub fn x_gamma_norm(&self) -> f64 {
        crate::opcore::trace_norm(&self.x_gamma())
    }
}

fn require_shield(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("shield dimension {d} < 2")));
    }
    Ok(())
}

/// Entry u_{ij} of the d-dimensional discrete Fourier transform.
pub fn fourier_entry(d: usize, i: usize, j: usize) -> linalg::C64 {
    let angle = 2.0 * PI * ((i * j) % d) as f64 / d as f64;
    linalg::C64::from_polar(1.0 / (d as f64).sqrt(), angle)
}

/// X = d^{-3/2} sum_{ij} u_ij |ij><ji| with u the Fourier matrix.
pub fn fourier_x(d: usize) -> Result<XFormPrivateBit> {
    require_shield(d)?;
    let scale = 1.0 / (d as f64 * (d as f64).sqrt());
    let mut x = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            x[(i * d + j, j * d + i)] = fourier_entry(d, i, j) * scale;
        }
    }
    XFormPrivateBit::new(x, d)
}

/// X = V / d^2 with V the swap operator.
pub fn swap_x(d: usize) -> Result<XFormPrivateBit> {
    require_shield(d)?;
    let w = 1.0 / (d * d) as f64;
    let mut x = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            x[(i * d + j, j * d + i)] = c(w, 0.0);
        }
    }
    XFormPrivateBit::new(x, d)
}

/// The private bit 1/2 [[sqrt(XX^dag),0,0,X],[0,0,0,0],[0,0,0,0],[X^dag,0,0,sqrt(X^dag X)]].
pub fn private_bit(shield: &XFormPrivateBit) -> Result<Operator> {
    let x = shield.x().matrix();
    let norm = crate::opcore::trace_norm(shield.x());
    if (norm - 1.0).abs() > X_NORM_TOL {
        return Err(Error::NormViolation(norm));
    }
    let svd = linalg::svd(x)?;
    let half = c(0.5, 0.0);
    let d = shield.shield_dim();
    let gamma = assemble_key_blocks(
        d,
        d,
        &[
            ((0, 0), (0, 0), svd.left_modulus() * half),
            ((0, 0), (1, 1), x * half),
            ((1, 1), (0, 0), x.adjoint() * half),
            ((1, 1), (1, 1), svd.right_modulus() * half),
        ],
    )?;
    gamma.validate_state()?;
    Ok(gamma)
}

/// Dephases Alice's key qubit: all coherences between different values of
/// key_A are removed.
pub fn key_attacked(op: &Operator) -> Result<Operator> {
    check_pbit_layout(op)?;
    op.dephase(KEY_A)
}

/// Mixing weight 1/(sqrt(d)+1) that makes the Fourier mixture PPT.
pub fn ppt_mixture_weight(d: usize) -> f64 {
    1.0 / ((d as f64).sqrt() + 1.0)
}

/// Mixture of the Fourier private bit (weight 1-p) with the separable state
/// 1/2 (|01><01| (x) sqrt(YY^dag) + |10><10| (x) sqrt(Y^dag Y)) (weight p),
/// where Y = sqrt(d) X^Gamma and p = 1/(sqrt(d)+1).
pub fn ppt_pbit_mixture(d: usize) -> Result<Operator> {
    let shield = fourier_x(d)?;
    let p = ppt_mixture_weight(d);
    let x = shield.x().matrix();
    let y = shield.x_gamma().into_matrix() * c((d as f64).sqrt(), 0.0);
    let sx = linalg::svd(x)?;
    let sy = linalg::svd(&y)?;
    let key = c(0.5 * (1.0 - p), 0.0);
    let noise = c(0.5 * p, 0.0);
    let rho = assemble_key_blocks(
        d,
        d,
        &[
            ((0, 0), (0, 0), sx.left_modulus() * key),
            ((0, 0), (1, 1), x * key),
            ((1, 1), (0, 0), x.adjoint() * key),
            ((1, 1), (1, 1), sx.right_modulus() * key),
            ((0, 1), (0, 1), sy.left_modulus() * noise),
            ((1, 0), (1, 0), sy.right_modulus() * noise),
        ],
    )?;
    rho.validate_state()?;
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcore::trace_norm;

    #[test]
    fn fourier_shield_has_unit_norm() {
        for d in 2..6 {
            let x = fourier_x(d).unwrap();
            assert!((trace_norm(x.x()) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn swap_shield_entries() {
        let x = swap_x(2).unwrap();
        let m = x.x().matrix();
        // |01><10| and |10><01| plus the diagonal |00><00|, |11><11|
        for (r, col) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            assert!((m[(r, col)].re - 0.25).abs() < 1e-15);
        }
        assert_eq!(m.iter().filter(|z| z.norm() > 0.0).count(), 4);
    }

    #[test]
    fn norm_violation_rejected() {
        let x = CMatrix::identity(4, 4);
        assert!(matches!(
            XFormPrivateBit::new(x, 2),
            Err(Error::NormViolation(_))
        ));
    }

    #[test]
    fn shield_dimension_below_two_rejected() {
        assert!(fourier_x(1).is_err());
        assert!(swap_x(0).is_err());
    }

    #[test]
    fn key_attack_requires_key_layout() {
        let op = Operator::maximally_mixed(SubsystemLayout::new(&[2, 2], &["A", "B"]).unwrap());
        assert!(matches!(key_attacked(&op), Err(Error::Layout(_))));
    }

    #[test]
    fn key_blocks_round_trip() {
        let gamma = private_bit(&fourier_x(3).unwrap()).unwrap();
        let x = key_block(&gamma, (0, 0), (1, 1)).unwrap() * c(2.0, 0.0);
        assert!((&x - fourier_x(3).unwrap().x().matrix()).norm() < 1e-14);
        assert!(key_block(&gamma, (0, 1), (0, 1)).unwrap().norm() == 0.0);
    }
}

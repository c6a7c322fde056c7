//! Werner states and the data-hiding private-state family.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opcore::linalg::{c, CMatrix};
use crate::opcore::{check_cap, Operator, SubsystemLayout};
use crate::states::pbit::assemble_key_blocks;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WernerSector {
    Symmetric,
    Antisymmetric,
}

fn swap_matrix(d: usize) -> CMatrix {
    let mut v = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            v[(i * d + j, j * d + i)] = c(1.0, 0.0);
        }
    }
    v
}

fn werner_matrix(d: usize, sector: WernerSector) -> CMatrix {
    let n = d * d;
    let (sign, rank) = match sector {
        WernerSector::Symmetric => (1.0, d * (d + 1) / 2),
        WernerSector::Antisymmetric => (-1.0, d * (d - 1) / 2),
    };
    (CMatrix::identity(n, n) + swap_matrix(d) * c(sign, 0.0)) * c(0.5 / rank as f64, 0.0)
}

/// Normalized projector onto the (anti)symmetric subspace of C^d (x) C^d,
/// on layout [A:d, B:d].
pub fn werner(d: usize, sector: WernerSector) -> Result<Operator> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("Werner dimension {d} < 2")));
    }
    Operator::new(
        werner_matrix(d, sector),
        SubsystemLayout::new(&[d, d], &["A", "B"])?,
    )
}

/// Parameters (p, d, k, m) of the hiding family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HidingParams {
    pub p: f64,
    pub d: usize,
    pub k: u32,
    pub m: u32,
}

impl HidingParams {
    pub fn new(p: f64, d: usize, k: u32, m: u32) -> Result<Self> {
        if !(p > 0.0 && p < 0.5) {
            return Err(Error::OutOfRange(format!("p = {p} outside (0, 1/2)")));
        }
        if d < 2 {
            return Err(Error::OutOfRange(format!("Werner dimension {d} < 2")));
        }
        if k == 0 || m == 0 {
            return Err(Error::OutOfRange("k and m must be >= 1".into()));
        }
        Ok(Self { p, d, k, m })
    }

    /// N_m = 2 p^m + 2 (1/2 - p)^m.
    pub fn normalization(&self) -> f64 {
        let m = self.m as i32;
        2.0 * self.p.powi(m) + 2.0 * (0.5 - self.p).powi(m)
    }

    /// Local dimension of one party's shield, d^{km}.
    pub fn shield_dim(&self) -> Option<usize> {
        self.d.checked_pow(self.k.checked_mul(self.m)?)
    }

    /// Total dense dimension 4 d^{2km}, `None` on overflow.
    pub fn dense_dim(&self) -> Option<usize> {
        self.shield_dim()?.checked_pow(2)?.checked_mul(4)
    }

    /// PPT iff p <= 1/3 and (1-p)/p >= (d/(d-1))^k.
    pub fn ppt_predicate(&self) -> bool {
        const SLACK: f64 = 1e-12;
        let ratio = (1.0 - self.p) / self.p;
        let threshold = (self.d as f64 / (self.d as f64 - 1.0)).powi(self.k as i32);
        self.p <= 1.0 / 3.0 + SLACK && ratio >= threshold * (1.0 - SLACK)
    }
}

/// Block trace norms of the hiding state, without materializing it.
///
/// The key-diagonal blocks |00><00|, |11><11| carry
/// `[p (tau1+tau2)/2]^{(x)m}`, the flipped blocks |01><01|, |10><10| carry
/// `[(1/2-p) tau2]^{(x)m}` and the coherences |00><11|, |11><00| carry
/// `[p (tau1-tau2)/2]^{(x)m}`, all divided by N_m.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HidingStructure {
    pub params: HidingParams,
    pub normalization: f64,
    /// ||[p (tau1+tau2)/2]^{(x)m}||_1 / N_m = p^m / N_m
    pub diagonal: f64,
    /// ||[(1/2-p) tau2]^{(x)m}||_1 / N_m = (1/2-p)^m / N_m
    pub flipped: f64,
    /// ||[p (tau1-tau2)/2]^{(x)m}||_1 / N_m = (p (1 - 2^-k))^m / N_m
    pub coherence: f64,
}

impl HidingStructure {
    /// Trace norm of the key block |ij><kl|.
    pub fn block_norm(&self, row: (usize, usize), col: (usize, usize)) -> f64 {
        match (row, col) {
            ((0, 0), (0, 0)) | ((1, 1), (1, 1)) => self.diagonal,
            ((0, 1), (0, 1)) | ((1, 0), (1, 0)) => self.flipped,
            ((0, 0), (1, 1)) | ((1, 1), (0, 0)) => self.coherence,
            _ => 0.0,
        }
    }
}

/// ||(tau1 - tau2)/2||_1 = 1 - 2^{-k}.
pub fn tau_difference_norm(k: u32) -> f64 {
    1.0 - 0.5_f64.powi(k as i32)
}

pub fn hiding_structured(params: &HidingParams) -> HidingStructure {
    let n = params.normalization();
    let m = params.m as i32;
    HidingStructure {
        params: *params,
        normalization: n,
        diagonal: params.p.powi(m) / n,
        flipped: (0.5 - params.p).powi(m) / n,
        coherence: (params.p * tau_difference_norm(params.k)).powi(m) / n,
    }
}

fn tensor_power(m: &CMatrix, power: u32) -> CMatrix {
    let mut out = m.clone();
    for _ in 1..power {
        out = out.kronecker(m);
    }
    out
}

/// Shield blocks on the interleaved layout (a_1, b_1, ..., a_km, b_km).
fn interleaved_blocks(params: &HidingParams) -> (CMatrix, CMatrix, CMatrix) {
    let rs = werner_matrix(params.d, WernerSector::Symmetric);
    let ra = werner_matrix(params.d, WernerSector::Antisymmetric);
    let tau1 = tensor_power(&((&ra + &rs) * c(0.5, 0.0)), params.k);
    let tau2 = tensor_power(&rs, params.k);
    let p = params.p;
    let diag = (&tau1 + &tau2) * c(0.5 * p, 0.0);
    let flip = &tau2 * c(0.5 - p, 0.0);
    let coh = (&tau1 - &tau2) * c(0.5 * p, 0.0);
    (
        tensor_power(&diag, params.m),
        tensor_power(&flip, params.m),
        tensor_power(&coh, params.m),
    )
}

/// Groups the interleaved shield factors into A' = (a_1..a_km) and
/// B' = (b_1..b_km).
fn group_shield(block: CMatrix, d: usize, copies: usize) -> Result<CMatrix> {
    let mut dims = Vec::with_capacity(2 * copies);
    let mut labels = Vec::with_capacity(2 * copies);
    for t in 0..copies {
        dims.extend([d, d]);
        labels.push(format!("a{t}"));
        labels.push(format!("b{t}"));
    }
    let op = Operator::new(block, SubsystemLayout::new(&dims, &labels)?)?;
    let order: Vec<String> = (0..copies)
        .map(|t| format!("a{t}"))
        .chain((0..copies).map(|t| format!("b{t}")))
        .collect();
    Ok(op.permute(&order)?.into_matrix())
}

/// Dense hiding state on [A:2, B:2, A':d^{km}, B':d^{km}].
pub fn hiding_dense(params: &HidingParams, cap: usize) -> Result<Operator> {
    let dim = params.dense_dim().ok_or(Error::SizeCap {
        dim: usize::MAX,
        cap,
    })?;
    check_cap(dim, cap)?;
    let copies = (params.k * params.m) as usize;
    let (diag, flip, coh) = interleaved_blocks(params);
    let inv_n = c(1.0 / params.normalization(), 0.0);
    let diag = group_shield(diag, params.d, copies)? * inv_n;
    let flip = group_shield(flip, params.d, copies)? * inv_n;
    let coh = group_shield(coh, params.d, copies)? * inv_n;
    let s = params.shield_dim().expect("checked by dense_dim");
    assemble_key_blocks(
        s,
        s,
        &[
            ((0, 0), (0, 0), diag.clone()),
            ((1, 1), (1, 1), diag),
            ((0, 1), (0, 1), flip.clone()),
            ((1, 0), (1, 0), flip),
            ((0, 0), (1, 1), coh.clone()),
            ((1, 1), (0, 0), coh),
        ],
    )
}

/// The member with p = 1/3, d = m^2, k = m.
pub fn rho_m(m: u32) -> Result<HidingParams> {
    if m < 2 {
        return Err(Error::OutOfRange(format!("m = {m} < 2")));
    }
    let d = (m as usize)
        .checked_mul(m as usize)
        .ok_or_else(|| Error::OutOfRange(format!("m = {m} too large")))?;
    HidingParams::new(1.0 / 3.0, d, m, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcore::trace_norm;

    #[test]
    fn werner_traces_and_completeness() {
        let d = 3;
        let s = werner(d, WernerSector::Symmetric).unwrap();
        let a = werner(d, WernerSector::Antisymmetric).unwrap();
        assert!((s.trace().re - 1.0).abs() < 1e-14);
        assert!((a.trace().re - 1.0).abs() < 1e-14);
        let sum = s.matrix() * c((d * (d + 1) / 2) as f64, 0.0)
            + a.matrix() * c((d * (d - 1) / 2) as f64, 0.0);
        assert!((sum - CMatrix::identity(9, 9)).norm() < 1e-13);
    }

    #[test]
    fn antisymmetric_qubit_sector_is_singlet() {
        let a = werner(2, WernerSector::Antisymmetric).unwrap();
        let m = a.matrix();
        assert!((m[(1, 1)].re - 0.5).abs() < 1e-15);
        assert!((m[(1, 2)].re + 0.5).abs() < 1e-15);
        assert!(m[(0, 0)].norm() < 1e-15 && m[(3, 3)].norm() < 1e-15);
    }

    #[test]
    fn params_validation() {
        assert!(HidingParams::new(0.5, 2, 1, 1).is_err());
        assert!(HidingParams::new(0.0, 2, 1, 1).is_err());
        assert!(HidingParams::new(0.3, 1, 1, 1).is_err());
        assert!(HidingParams::new(0.3, 2, 0, 1).is_err());
    }

    #[test]
    fn rho_m_substitution() {
        let p = rho_m(2).unwrap();
        assert_eq!((p.d, p.k, p.m), (4, 2, 2));
        assert!((p.p - 1.0 / 3.0).abs() < 1e-16);
        for m in 2..12 {
            let p = rho_m(m).unwrap();
            let expected =
                2.0 * (1.0_f64 / 3.0).powi(m as i32) + 2.0 * (1.0_f64 / 6.0).powi(m as i32);
            assert!((p.normalization() - expected).abs() < 1e-15 * expected.max(1.0));
            assert!(p.ppt_predicate(), "m = {m}");
        }
        assert!(rho_m(1).is_err());
    }

    #[test]
    fn tau_difference_norm_matches_dense() {
        for (d, k) in [(2usize, 1u32), (2, 2), (3, 1), (3, 2)] {
            let rs = werner_matrix(d, WernerSector::Symmetric);
            let ra = werner_matrix(d, WernerSector::Antisymmetric);
            let tau1 = tensor_power(&((&ra + &rs) * c(0.5, 0.0)), k);
            let tau2 = tensor_power(&rs, k);
            let dense = crate::opcore::matrix_trace_norm(&((tau1 - tau2) * c(0.5, 0.0)));
            assert!((dense - tau_difference_norm(k)).abs() < 1e-12);
        }
    }

    #[test]
    fn structured_diagonal_norms_sum_to_one() {
        let s = hiding_structured(&HidingParams::new(0.2, 3, 2, 4).unwrap());
        assert!((2.0 * s.diagonal + 2.0 * s.flipped - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dense_cap_is_enforced() {
        let params = HidingParams::new(1.0 / 3.0, 2, 2, 3).unwrap();
        assert!(matches!(
            hiding_dense(&params, 4096),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn dense_smallest_member_is_a_state() {
        let params = HidingParams::new(1.0 / 3.0, 2, 1, 1).unwrap();
        let rho = hiding_dense(&params, 4096).unwrap();
        rho.validate_state().unwrap();
        assert!((trace_norm(&rho) - 1.0).abs() < 1e-12);
    }
}

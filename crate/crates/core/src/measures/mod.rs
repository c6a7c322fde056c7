//! Computable entanglement and key-rate functionals.

pub mod dw;
pub mod iacc;
pub mod squeeze;

pub use dw::{devetak_winter, dw_from_purification, dw_from_state, CcqEnsemble};
pub use iacc::{iacc_search, mutual_information, IaccConfig};
pub use squeeze::{kd_ps_lower, privacy_squeeze, privacy_squeeze_structured, SqueezeCell};

use crate::error::{Error, Result};
use crate::opcore::{eta, partial_transpose, trace_norm, von_neumann_entropy, Operator};
use crate::states::mc_structure_defect;

/// Off-pattern entries allowed in a maximally correlated input.
pub const MC_TOL: f64 = 1e-10;

/// log2 ||rho^Gamma||_1 with the transpose taken on `transpose`.
pub fn log_negativity<S: AsRef<str>>(rho: &Operator, transpose: &[S]) -> Result<f64> {
    if transpose.is_empty() || transpose.len() >= rho.layout().len() {
        return Err(Error::Layout(format!(
            "transposed labels must form a proper nonempty subset of {}",
            rho.layout()
        )));
    }
    let norm = trace_norm(&partial_transpose(rho, transpose)?);
    // ||rho^Gamma||_1 >= tr rho^Gamma = 1; clip rounding below zero.
    Ok(norm.log2().max(0.0))
}

/// ||rho - sigma||_1, unhalved.
pub fn trace_distance(rho: &Operator, sigma: &Operator) -> Result<f64> {
    Ok(trace_norm(&rho.try_sub(sigma)?))
}

/// 2 eps log2(2d) + eta(eps), for 0 < eps < 1/3.
pub fn er_fannes_bound(epsilon: f64, d: usize) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0 / 3.0) {
        return Err(Error::OutOfRange(format!(
            "epsilon = {epsilon} outside (0, 1/3)"
        )));
    }
    if d == 0 {
        return Err(Error::OutOfRange("shield dimension must be >= 1".into()));
    }
    Ok(2.0 * epsilon * (2.0 * d as f64).log2() + eta(epsilon)?)
}

/// log2 d - H(rho) for a maximally correlated state on two d-dimensional
/// factors.
pub fn mc_distillable(rho: &Operator) -> Result<f64> {
    let defect = mc_structure_defect(rho)?;
    if defect >= MC_TOL {
        return Err(Error::Structure(format!(
            "entry {defect:e} outside the |ii><kk| pattern"
        )));
    }
    let d = rho.layout().dims()[0] as f64;
    Ok(d.log2() - von_neumann_entropy(rho)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcore::linalg::{c, CVector};
    use crate::states::{epr, fourier_x, maximally_correlated, ppt_pbit_mixture, private_bit};

    #[test]
    fn log_negativity_values() {
        assert!((log_negativity(&epr(2).unwrap(), &["B"]).unwrap() - 1.0).abs() < 1e-12);
        let ppt = ppt_pbit_mixture(4).unwrap();
        assert!(log_negativity(&ppt, &["B", "B'"]).unwrap() < 1e-9);
        let g = private_bit(&fourier_x(4).unwrap()).unwrap();
        let en = log_negativity(&g, &["B", "B'"]).unwrap();
        assert!((en - 1.5_f64.log2()).abs() < 1e-10);
        assert!(log_negativity(&g, &[] as &[&str]).is_err());
    }

    #[test]
    fn trace_distance_extremes() {
        let e = epr(2).unwrap();
        assert!(trace_distance(&e, &e).unwrap() < 1e-15);
        let l = e.layout().clone();
        let a = Operator::basis_projector(0, l.clone()).unwrap();
        let b = Operator::basis_projector(3, l).unwrap();
        assert!((trace_distance(&a, &b).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn fannes_bound_values() {
        // 2 (1/5) log2 32 + eta(1/5)
        let expected = 2.0 + 0.2 * 5.0_f64.log2();
        assert!((er_fannes_bound(0.2, 16).unwrap() - expected).abs() < 1e-12);
        assert!((er_fannes_bound(0.2, 1).unwrap() - (0.4 + 0.2 * 5.0_f64.log2())).abs() < 1e-12);
        assert!(er_fannes_bound(1e-12, 4).unwrap() < 1e-9);
        assert!(er_fannes_bound(0.0, 4).is_err());
        assert!(er_fannes_bound(0.34, 4).is_err());
    }

    #[test]
    fn mc_distillable_extremes() {
        assert!((mc_distillable(&epr(4).unwrap()).unwrap() - 2.0).abs() < 1e-12);
        let basis: Vec<CVector> = (0..3)
            .map(|i| CVector::from_fn(3, |k, _| c(if k == i { 1.0 } else { 0.0 }, 0.0)))
            .collect();
        let classical = maximally_correlated(&basis).unwrap();
        assert!(mc_distillable(&classical).unwrap().abs() < 1e-12);
        let g = private_bit(&fourier_x(2).unwrap()).unwrap();
        assert!(mc_distillable(&g).is_err());
    }
}

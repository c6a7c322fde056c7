use crate::error::{Error, Result};
use crate::opcore::linalg::{self, c, CMatrix, CVector};
use crate::opcore::{Operator, SubsystemLayout, DEFAULT_DENSE_CAP};

/// Eigenvalues below this are dropped from the eigenvector purification.
const RANK_TOL: f64 = 1e-13;

/// A pure state |psi> = sum_{s,e} amp[s, e] |s>|e> on system x environment,
/// stored as its amplitude matrix so the environment can be large without
/// materializing the projector.
#[derive(Clone, Debug)]
pub struct Purification {
    amplitudes: CMatrix,
    layout: SubsystemLayout,
    env_label: String,
}

impl Purification {
    pub fn amplitudes(&self) -> &CMatrix {
        &self.amplitudes
    }

    pub fn system_layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn env_label(&self) -> &str {
        &self.env_label
    }

    pub fn env_dim(&self) -> usize {
        self.amplitudes.ncols()
    }

    /// tr_E |psi><psi| = A A^dag.
    pub fn system_marginal(&self) -> Result<Operator> {
        Operator::new(
            &self.amplitudes * self.amplitudes.adjoint(),
            self.layout.clone(),
        )
    }

    /// tr_S |psi><psi| = (A^dag A)^T.
    pub fn env_marginal(&self) -> Result<Operator> {
        Operator::new(
            (self.amplitudes.adjoint() * &self.amplitudes).transpose(),
            SubsystemLayout::single(self.env_dim(), &self.env_label)?,
        )
    }

    /// Probability of outcome `value` when factor `label` of the system is
    /// measured in the computational basis, and the (normalized) environment
    /// state conditioned on it. The environment state is `None` when the
    /// outcome has zero probability.
    pub fn conditional_env(&self, label: &str, value: usize) -> Result<(f64, Option<Operator>)> {
        let pos = self.layout.position(label)?;
        let d = self.layout.dims()[pos];
        if value >= d {
            return Err(Error::OutOfRange(format!(
                "outcome {value} on factor `{label}` of dimension {d}"
            )));
        }
        let stride = self.layout.strides()[pos];
        let rows: Vec<usize> = (0..self.amplitudes.nrows())
            .filter(|&i| (i / stride) % d == value)
            .collect();
        let sub = self.amplitudes.select_rows(&rows);
        let env = (sub.adjoint() * &sub).transpose();
        let p = env.trace().re;
        if p <= 0.0 {
            return Ok((0.0, None));
        }
        let state = Operator::new(
            env * c(1.0 / p, 0.0),
            SubsystemLayout::single(self.env_dim(), &self.env_label)?,
        )?;
        Ok((p, Some(state)))
    }

    /// Applies a unitary on the environment: |e> -> U|e>.
    pub fn rotate_env(&self, unitary: &CMatrix) -> Result<Self> {
        if unitary.nrows() != self.env_dim() || unitary.ncols() != self.env_dim() {
            return Err(Error::DimensionMismatch(format!(
                "environment unitary is {}x{}, environment has dimension {}",
                unitary.nrows(),
                unitary.ncols(),
                self.env_dim()
            )));
        }
        Ok(Self {
            amplitudes: &self.amplitudes * unitary.transpose(),
            layout: self.layout.clone(),
            env_label: self.env_label.clone(),
        })
    }

    pub fn vector(&self) -> CVector {
        let (ns, ne) = self.amplitudes.shape();
        CVector::from_fn(ns * ne, |k, _| self.amplitudes[(k / ne, k % ne)])
    }

    /// The rank-one projector on system x environment.
    pub fn to_operator(&self, cap: usize) -> Result<Operator> {
        let layout = self
            .layout
            .concat(&SubsystemLayout::single(self.env_dim(), &self.env_label)?)?;
        let dim = layout.total_dim();
        if dim > cap {
            return Err(Error::SizeCap { dim, cap });
        }
        let v = self.vector();
        Operator::new(&v * v.adjoint(), layout)
    }
}

fn check_env_label(rho: &Operator, env_label: &str) -> Result<()> {
    if rho.layout().contains(env_label) {
        return Err(Error::LabelCollision(env_label.to_owned()));
    }
    Ok(())
}

/// Spectral purification sum_k sqrt(lambda_k) |k>|k>; the environment
/// dimension equals the numerical rank of `rho`.
pub fn purification(rho: &Operator, env_label: &str) -> Result<Purification> {
    rho.validate_state()?;
    check_env_label(rho, env_label)?;
    let (vals, vecs) = linalg::hermitian_eigen(rho.matrix());
    let support: Vec<usize> = (0..vals.len()).filter(|&k| vals[k] > RANK_TOL).collect();
    let n = rho.dim();
    let amplitudes = CMatrix::from_fn(n, support.len(), |s, e| {
        let k = support[e];
        vecs[(s, k)] * vals[k].sqrt()
    });
    Ok(Purification {
        amplitudes,
        layout: rho.layout().clone(),
        env_label: env_label.to_owned(),
    })
}

/// Canonical purification (sqrt(rho) x 1) sum_i |i>|i>; the environment is a
/// full copy of the system. Differs from `purification` by an isometry on E.
pub fn purification_sqrt(rho: &Operator, env_label: &str) -> Result<Purification> {
    rho.validate_state()?;
    check_env_label(rho, env_label)?;
    let root = linalg::hermitian_function(rho.matrix(), |v| v.max(0.0).sqrt());
    Ok(Purification {
        amplitudes: root,
        layout: rho.layout().clone(),
        env_label: env_label.to_owned(),
    })
}

/// Purifies `rho` onto `rho.layout() x env_label`, returning the projector.
pub fn purify(rho: &Operator, env_label: &str) -> Result<Operator> {
    purification(rho, env_label)?.to_operator(DEFAULT_DENSE_CAP)
}

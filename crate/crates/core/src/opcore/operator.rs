use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::opcore::linalg::{self, c, CMatrix, C64};
use crate::opcore::{SubsystemLayout, TAU_HERM, TAU_PSD, TAU_TR};

/// Dense complex square matrix tagged with its tensor layout.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    matrix: CMatrix,
    layout: SubsystemLayout,
}

impl Operator {
    pub fn new(matrix: CMatrix, layout: SubsystemLayout) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "operator must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.nrows() != layout.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "matrix dimension {} does not match layout {layout}",
                matrix.nrows()
            )));
        }
        Ok(Self { matrix, layout })
    }

    pub fn identity(layout: SubsystemLayout) -> Self {
        let n = layout.total_dim();
        Self {
            matrix: CMatrix::identity(n, n),
            layout,
        }
    }

    /// Maximally mixed state on the layout.
    pub fn maximally_mixed(layout: SubsystemLayout) -> Self {
        let n = layout.total_dim();
        Self {
            matrix: CMatrix::identity(n, n) * c(1.0 / n as f64, 0.0),
            layout,
        }
    }

    /// Projector onto a (not necessarily normalized) vector, normalized to
    /// unit trace.
    pub fn pure(vector: &linalg::CVector, layout: SubsystemLayout) -> Result<Self> {
        let norm = vector.norm();
        if norm == 0.0 {
            return Err(Error::NotAState("zero vector".into()));
        }
        let v = vector / c(norm, 0.0);
        Self::new(&v * v.adjoint(), layout)
    }

    /// Computational basis projector |i><i| on a layout.
    pub fn basis_projector(index: usize, layout: SubsystemLayout) -> Result<Self> {
        let n = layout.total_dim();
        if index >= n {
            return Err(Error::OutOfRange(format!("basis index {index} >= {n}")));
        }
        let mut m = CMatrix::zeros(n, n);
        m[(index, index)] = c(1.0, 0.0);
        Self::new(m, layout)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            layout: self.layout.clone(),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            matrix: &self.matrix * c(factor, 0.0),
            layout: self.layout.clone(),
        }
    }

    pub fn hermitian_defect(&self) -> f64 {
        linalg::hermitian_defect(&self.matrix)
    }

    pub fn ensure_hermitian(&self) -> Result<()> {
        let defect = self.hermitian_defect();
        if defect > TAU_HERM {
            return Err(Error::NotHermitian(defect));
        }
        Ok(())
    }

    /// Checks the density-operator invariants: Hermitian within `TAU_HERM`,
    /// unit trace within `TAU_TR`, spectrum above `-TAU_PSD`.
    pub fn validate_state(&self) -> Result<()> {
        self.ensure_hermitian()?;
        let tr = self.trace();
        if (tr.re - 1.0).abs() > TAU_TR || tr.im.abs() > TAU_TR {
            return Err(Error::NotAState(format!("trace is {tr}")));
        }
        let min = linalg::hermitian_eigenvalues(&self.matrix)
            .first()
            .copied()
            .unwrap_or(0.0);
        if min < -TAU_PSD {
            return Err(Error::NegativeEigenvalue(min));
        }
        Ok(())
    }

    pub fn is_state(&self) -> bool {
        self.validate_state().is_ok()
    }

    pub fn with_layout(&self, layout: SubsystemLayout) -> Result<Self> {
        Self::new(self.matrix.clone(), layout)
    }

    pub fn relabel(&self, from: &str, to: &str) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.clone(),
            layout: self.layout.relabel(from, to)?,
        })
    }

    /// Conjugation `U rho U^dag` by a full-space unitary.
    pub fn conjugate_by(&self, unitary: &CMatrix) -> Result<Self> {
        if unitary.nrows() != self.dim() || unitary.ncols() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "unitary is {}x{}, operator is {}",
                unitary.nrows(),
                unitary.ncols(),
                self.dim()
            )));
        }
        Ok(Self {
            matrix: unitary * &self.matrix * unitary.adjoint(),
            layout: self.layout.clone(),
        })
    }

    /// Reorders tensor factors; `order` lists every label once, giving the
    /// new factor sequence.
    pub fn permute<S: AsRef<str>>(&self, order: &[S]) -> Result<Self> {
        if order.len() != self.layout.len() {
            return Err(Error::Layout(format!(
                "permutation lists {} labels, layout has {}",
                order.len(),
                self.layout.len()
            )));
        }
        let perm = self.layout.positions(order)?;
        let new_layout = self.layout.reorder(&perm);
        let old_strides = self.layout.strides();
        let new_dims = new_layout.dims().to_vec();
        let n = self.dim();
        // map[new_index] = old_index
        let mut map = vec![0usize; n];
        let mut digits = vec![0usize; new_dims.len()];
        for slot in map.iter_mut() {
            *slot = digits
                .iter()
                .zip(&perm)
                .map(|(&dg, &p)| dg * old_strides[p])
                .sum();
            for k in (0..digits.len()).rev() {
                digits[k] += 1;
                if digits[k] < new_dims[k] {
                    break;
                }
                digits[k] = 0;
            }
        }
        let matrix = CMatrix::from_fn(n, n, |i, j| self.matrix[(map[i], map[j])]);
        Self::new(matrix, new_layout)
    }

    /// Merges adjacent factors listed in `labels` (must be contiguous and in
    /// layout order) into one factor called `merged`.
    pub fn merge_factors<S: AsRef<str>>(&self, labels: &[S], merged: &str) -> Result<Self> {
        let pos = self.layout.positions(labels)?;
        if pos.is_empty() || pos.windows(2).any(|w| w[1] != w[0] + 1) {
            return Err(Error::Layout(
                "merged factors must be contiguous and in order".into(),
            ));
        }
        let dims = self.layout.dims();
        let labels_all = self.layout.labels();
        let mut new_dims = Vec::new();
        let mut new_labels = Vec::new();
        let mut k = 0;
        while k < dims.len() {
            if k == pos[0] {
                new_dims.push(pos.iter().map(|&p| dims[p]).product());
                new_labels.push(merged.to_owned());
                k += pos.len();
            } else {
                new_dims.push(dims[k]);
                new_labels.push(labels_all[k].clone());
                k += 1;
            }
        }
        Self::new(
            self.matrix.clone(),
            SubsystemLayout::new(&new_dims, &new_labels)?,
        )
    }

    /// Keeps only matrix entries whose digit on factor `label` equals `value`
    /// on both sides: `(|v><v| x 1) rho (|v><v| x 1)`.
    pub fn project_factor(&self, label: &str, value: usize) -> Result<Self> {
        let pos = self.layout.position(label)?;
        let d = self.layout.dims()[pos];
        if value >= d {
            return Err(Error::OutOfRange(format!(
                "basis value {value} on factor `{label}` of dimension {d}"
            )));
        }
        let stride = self.layout.strides()[pos];
        let digit = |i: usize| (i / stride) % d;
        let n = self.dim();
        let matrix = CMatrix::from_fn(n, n, |i, j| {
            if digit(i) == value && digit(j) == value {
                self.matrix[(i, j)]
            } else {
                c(0.0, 0.0)
            }
        });
        Self::new(matrix, self.layout.clone())
    }

    /// Completely dephases factor `label` in the computational basis.
    pub fn dephase(&self, label: &str) -> Result<Self> {
        let pos = self.layout.position(label)?;
        let d = self.layout.dims()[pos];
        let stride = self.layout.strides()[pos];
        let digit = |i: usize| (i / stride) % d;
        let n = self.dim();
        let matrix = CMatrix::from_fn(n, n, |i, j| {
            if digit(i) == digit(j) {
                self.matrix[(i, j)]
            } else {
                c(0.0, 0.0)
            }
        });
        Self::new(matrix, self.layout.clone())
    }

    fn check_same_layout(&self, other: &Operator) -> Result<()> {
        if self.layout != other.layout {
            return Err(Error::Layout(format!(
                "layouts differ: {} vs {}",
                self.layout, other.layout
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Operator) -> Result<Self> {
        self.check_same_layout(other)?;
        Ok(Self {
            matrix: &self.matrix + &other.matrix,
            layout: self.layout.clone(),
        })
    }

    pub fn try_sub(&self, other: &Operator) -> Result<Self> {
        self.check_same_layout(other)?;
        Ok(Self {
            matrix: &self.matrix - &other.matrix,
            layout: self.layout.clone(),
        })
    }

    /// Largest entrywise distance; layouts must agree.
    pub fn max_abs_diff(&self, other: &Operator) -> Result<f64> {
        self.check_same_layout(other)?;
        Ok(linalg::max_abs(&(&self.matrix - &other.matrix)))
    }
}

impl Add for &Operator {
    type Output = Operator;

    /// Panics on layout mismatch; use `try_add` for fallible code paths.
    fn add(self, rhs: &Operator) -> Operator {
        self.try_add(rhs)
            .expect("layout mismatch in operator addition")
    }
}

impl Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        self.try_sub(rhs)
            .expect("layout mismatch in operator subtraction")
    }
}

impl Mul<f64> for &Operator {
    type Output = Operator;

    fn mul(self, rhs: f64) -> Operator {
        self.scale(rhs)
    }
}

/// Kronecker product; the layout is the concatenation of both layouts.
pub fn tensor(a: &Operator, b: &Operator) -> Result<Operator> {
    let layout = a.layout.concat(&b.layout)?;
    Operator::new(linalg::kron(&a.matrix, &b.matrix), layout)
}

/// Traces out the factors named in `discard`.
pub fn partial_trace<S: AsRef<str>>(op: &Operator, discard: &[S]) -> Result<Operator> {
    let drop = op.layout.positions(discard)?;
    let keep: Vec<usize> = (0..op.layout.len()).filter(|k| !drop.contains(k)).collect();
    let kept_layout = op.layout.select(&keep);
    let strides = op.layout.strides();
    let dims = op.layout.dims();
    let kept_strides = kept_layout.strides();
    let traced_dim: usize = drop.iter().map(|&k| dims[k]).product();
    let traced_strides = {
        let mut s = vec![1usize; drop.len()];
        for t in (0..drop.len().saturating_sub(1)).rev() {
            s[t] = s[t + 1] * dims[drop[t + 1]];
        }
        s
    };
    // bucket every full index by its traced multi-index
    let mut buckets: Vec<Vec<(usize, usize)>> = vec![Vec::new(); traced_dim];
    for i in 0..op.dim() {
        let digit = |k: usize| (i / strides[k]) % dims[k];
        let kept: usize = keep
            .iter()
            .enumerate()
            .map(|(q, &k)| digit(k) * kept_strides[q])
            .sum();
        let traced: usize = drop
            .iter()
            .enumerate()
            .map(|(q, &k)| digit(k) * traced_strides[q])
            .sum();
        buckets[traced].push((i, kept));
    }
    let n_out = kept_layout.total_dim();
    let mut out = CMatrix::zeros(n_out, n_out);
    for bucket in &buckets {
        for &(i, ki) in bucket {
            for &(j, kj) in bucket {
                out[(ki, kj)] += op.matrix[(i, j)];
            }
        }
    }
    Operator::new(out, kept_layout)
}

/// Transposes the factors named in `labels` (entrywise, computational basis).
pub fn partial_transpose<S: AsRef<str>>(op: &Operator, labels: &[S]) -> Result<Operator> {
    let tpos = op.layout.positions(labels)?;
    let strides = op.layout.strides();
    let dims = op.layout.dims();
    let n = op.dim();
    let tpart: Vec<usize> = (0..n)
        .map(|i| {
            tpos.iter()
                .map(|&k| ((i / strides[k]) % dims[k]) * strides[k])
                .sum()
        })
        .collect();
    let mut out = CMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            let ni = i - tpart[i] + tpart[j];
            let nj = j - tpart[j] + tpart[i];
            out[(ni, nj)] = op.matrix[(i, j)];
        }
    }
    Operator::new(out, op.layout.clone())
}

/// Sum of singular values. Hermitian input uses the eigenvalue route.
pub fn trace_norm(op: &Operator) -> f64 {
    matrix_trace_norm(op.matrix())
}

pub fn matrix_trace_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    if linalg::hermitian_defect(m) <= TAU_HERM {
        linalg::hermitian_eigenvalues(m)
            .iter()
            .map(|v| v.abs())
            .sum()
    } else {
        linalg::singular_values(m).iter().sum()
    }
}

pub fn min_eigenvalue(op: &Operator) -> Result<f64> {
    op.ensure_hermitian()?;
    linalg::hermitian_eigenvalues(op.matrix())
        .first()
        .copied()
        .ok_or_else(|| Error::DimensionMismatch("empty operator".into()))
}

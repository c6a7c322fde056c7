//! Dense spectral kernels.
//!
//! Hermitian inputs are split into the connected components of their
//! nonzero pattern before diagonalization. The state families built in this
//! crate are extremely sparse in the computational basis (block-diagonal
//! after partial transposition, permutation-like shields), so a 2500-dim
//! operator typically falls apart into blocks of a few dozen.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Entries at or below this fraction of the largest entry are treated as
/// structural zeros when splitting into components. The dropped mass is
/// bounded by `n * PATTERN_TOL * max|a_ij|` in spectral norm.
const PATTERN_TOL: f64 = 1e-15;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Largest entrywise deviation from Hermiticity.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * c(0.5, 0.0)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Index sets of the connected components of the nonzero pattern of a
/// Hermitian matrix, each sorted ascending, ordered by smallest index.
pub fn pattern_components(m: &CMatrix) -> Vec<Vec<usize>> {
    let n = m.nrows();
    let cut = PATTERN_TOL * max_abs(m);
    let mut uf = UnionFind::new(n);
    for j in 0..n {
        for i in (j + 1)..n {
            if m[(i, j)].norm() > cut || m[(j, i)].norm() > cut {
                uf.union(i, j);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = uf.find(i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

fn submatrix(m: &CMatrix, idx: &[usize]) -> CMatrix {
    CMatrix::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])])
}

/// Eigenvalues of a Hermitian matrix, ascending. The input is symmetrized
/// first; callers are responsible for checking Hermiticity.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let h = hermitian_part(m);
    let mut out = Vec::with_capacity(h.nrows());
    for comp in pattern_components(&h) {
        if comp.len() == 1 {
            out.push(h[(comp[0], comp[0])].re);
        } else {
            out.extend(submatrix(&h, &comp).symmetric_eigenvalues().iter());
        }
    }
    out.sort_by(|a, b| a.total_cmp(b));
    out
}

/// Full Hermitian eigendecomposition: eigenvalues ascending and the unitary
/// whose columns are the matching eigenvectors.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let h = hermitian_part(m);
    let n = h.nrows();
    let mut pairs: Vec<(f64, Vec<(usize, C64)>)> = Vec::with_capacity(n);
    for comp in pattern_components(&h) {
        if comp.len() == 1 {
            pairs.push((h[(comp[0], comp[0])].re, vec![(comp[0], c(1.0, 0.0))]));
            continue;
        }
        let eig = submatrix(&h, &comp).symmetric_eigen();
        for (k, &val) in eig.eigenvalues.iter().enumerate() {
            let col = eig.eigenvectors.column(k);
            let vec = comp.iter().zip(col.iter()).map(|(&i, &z)| (i, z)).collect();
            pairs.push((val, vec));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut vectors = CMatrix::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (k, (val, entries)) in pairs.into_iter().enumerate() {
        values.push(val);
        for (i, z) in entries {
            vectors[(i, k)] = z;
        }
    }
    (values, vectors)
}

/// Applies a real function to the spectrum of a Hermitian matrix.
pub fn hermitian_function(m: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let (vals, vecs) = hermitian_eigen(m);
    let scaled = CMatrix::from_fn(vecs.nrows(), vecs.ncols(), |i, j| vecs[(i, j)] * f(vals[j]));
    scaled * vecs.adjoint()
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Thin SVD `m = w * diag(s) * v_adj`.
pub struct Svd {
    pub w: CMatrix,
    pub s: Vec<f64>,
    pub v_adj: CMatrix,
}

pub fn svd(m: &CMatrix) -> Result<Svd> {
    let svd = m.clone().svd(true, true);
    let w = svd
        .u
        .ok_or_else(|| Error::Numerical("SVD did not return left vectors".into()))?;
    let v_adj = svd
        .v_t
        .ok_or_else(|| Error::Numerical("SVD did not return right vectors".into()))?;
    Ok(Svd {
        w,
        s: svd.singular_values.iter().copied().collect(),
        v_adj,
    })
}

impl Svd {
    /// sqrt(M M^dag) = W S W^dag.
    pub fn left_modulus(&self) -> CMatrix {
        weighted_gram(&self.w, &self.s)
    }

    /// sqrt(M^dag M) = V S V^dag.
    pub fn right_modulus(&self) -> CMatrix {
        weighted_gram(&self.v_adj.adjoint(), &self.s)
    }
}

fn weighted_gram(basis: &CMatrix, weights: &[f64]) -> CMatrix {
    let scaled = CMatrix::from_fn(basis.nrows(), weights.len(), |i, j| {
        basis[(i, j)] * weights[j]
    });
    &scaled * basis.columns(0, weights.len()).adjoint()
}

/// Operator (spectral) norm.
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    if hermitian_defect(m) <= 1e-12 * max_abs(m).max(1.0) {
        hermitian_eigenvalues(m)
            .iter()
            .fold(0.0_f64, |acc, v| acc.max(v.abs()))
    } else {
        singular_values(m).first().copied().unwrap_or(0.0)
    }
}

/// Dense Kronecker product.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

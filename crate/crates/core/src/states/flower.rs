//! Flower states and general maximally correlated states.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opcore::linalg::{c, CMatrix, CVector};
use crate::opcore::{partial_trace, unitarity_defect, Operator, SubsystemLayout};

const UNITARY_TOL: f64 = 1e-10;

/// Key dimension d, shield count n and the two unitary lists.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowerParams {
    d: usize,
    n: usize,
    u_list: Vec<CMatrix>,
    v_list: Vec<CMatrix>,
}

impl FlowerParams {
    pub fn new(d: usize, u_list: Vec<CMatrix>, v_list: Vec<CMatrix>) -> Result<Self> {
        let n = u_list.len();
        if d == 0 || n == 0 {
            return Err(Error::OutOfRange("flower state needs d, n >= 1".into()));
        }
        if v_list.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} U's but {} V's",
                n,
                v_list.len()
            )));
        }
        for u in u_list.iter().chain(&v_list) {
            if u.nrows() != d || u.ncols() != d {
                return Err(Error::DimensionMismatch(format!(
                    "unitary is {}x{}, expected {d}x{d}",
                    u.nrows(),
                    u.ncols()
                )));
            }
            let defect = unitarity_defect(u);
            if defect > UNITARY_TOL {
                return Err(Error::Structure(format!(
                    "non-unitary entry, defect {defect:e}"
                )));
            }
        }
        Ok(Self {
            d,
            n,
            u_list,
            v_list,
        })
    }

    /// Haar-random lists of length n.
    pub fn haar<R: rand::Rng + ?Sized>(d: usize, n: usize, rng: &mut R) -> Result<Self> {
        let u = (0..n)
            .map(|_| crate::opcore::haar_unitary(d, rng))
            .collect::<Result<Vec<_>>>()?;
        let v = (0..n)
            .map(|_| crate::opcore::haar_unitary(d, rng))
            .collect::<Result<Vec<_>>>()?;
        Self::new(d, u, v)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn u_list(&self) -> &[CMatrix] {
        &self.u_list
    }

    pub fn v_list(&self) -> &[CMatrix] {
        &self.v_list
    }
}

/// Which half of the repeater link the flower state lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlowerSide {
    /// [A, CA, A', CA', EA] built from the U list.
    Alice,
    /// [CB, B, CB', B', EB] built from the V list.
    Bob,
}

impl FlowerSide {
    /// Labels (key, key, shield, shield, environment) in layout order.
    pub fn labels(self) -> [&'static str; 5] {
        match self {
            FlowerSide::Alice => ["A", "CA", "A'", "CA'", "EA"],
            FlowerSide::Bob => ["CB", "B", "CB'", "B'", "EB"],
        }
    }
}

/// (1/sqrt(dn)) sum_{i,j} |ii> (x) |jj> (x) W^j |i>, W = U or V.
pub fn flower_vector(params: &FlowerParams, side: FlowerSide) -> CVector {
    let (d, n) = (params.d, params.n);
    let list = match side {
        FlowerSide::Alice => &params.u_list,
        FlowerSide::Bob => &params.v_list,
    };
    let strides = [d * n * n * d, n * n * d, n * d, d, 1];
    let mut v = CVector::zeros(d * d * n * n * d);
    let amp = 1.0 / ((d * n) as f64).sqrt();
    for i in 0..d {
        for (j, w) in list.iter().enumerate() {
            let base = i * strides[0] + i * strides[1] + j * strides[2] + j * strides[3];
            for e in 0..d {
                v[base + e] += w[(e, i)] * c(amp, 0.0);
            }
        }
    }
    v
}

/// Pure flower state on the side's five-factor layout.
pub fn flower_state(params: &FlowerParams, side: FlowerSide) -> Result<Operator> {
    let (d, n) = (params.d, params.n);
    let layout = SubsystemLayout::new(&[d, d, n, n, d], &side.labels())?;
    Operator::pure(&flower_vector(params, side), layout)
}

/// The flower state with the environment traced out and key and shield
/// merged, as a maximally correlated state of local dimension dn on
/// [A, CA] (Alice) or [CB, B] (Bob).
pub fn flower_correlated(params: &FlowerParams, side: FlowerSide) -> Result<Operator> {
    let full = flower_state(params, side)?;
    let [k1, k2, s1, s2, env] = side.labels();
    let reduced = partial_trace(&full, &[env])?;
    reduced
        .permute(&[k1, s1, k2, s2])?
        .merge_factors(&[k1, s1], k1)?
        .merge_factors(&[k2, s2], k2)
}

/// sum_{ik} a_ik |ii><kk| on [A:d, B:d] with a_ik = <u_k|u_i> / d.
pub fn maximally_correlated(u_list: &[CVector]) -> Result<Operator> {
    let d = u_list.len();
    if d == 0 {
        return Err(Error::OutOfRange("empty vector list".into()));
    }
    let dim = u_list[0].len();
    for u in u_list {
        if u.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "vector lengths {} and {dim}",
                u.len()
            )));
        }
        if (u.norm() - 1.0).abs() > UNITARY_TOL {
            return Err(Error::OutOfRange(format!("vector norm {}", u.norm())));
        }
    }
    let mut m = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for k in 0..d {
            m[(i * d + i, k * d + k)] = u_list[k].dotc(&u_list[i]) / c(d as f64, 0.0);
        }
    }
    Operator::new(m, SubsystemLayout::new(&[d, d], &["A", "B"])?)
}

/// Largest |entry| outside the |ii><kk| pattern of a two-factor operator.
pub fn mc_structure_defect(op: &Operator) -> Result<f64> {
    let dims = op.layout().dims();
    if dims.len() != 2 || dims[0] != dims[1] {
        return Err(Error::Layout(format!(
            "maximally correlated check needs two equal factors, got {}",
            op.layout()
        )));
    }
    let d = dims[0];
    let on_pattern = |idx: usize| idx / d == idx % d;
    let m = op.matrix();
    let mut worst = 0.0_f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if !(on_pattern(i) && on_pattern(j)) {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    Ok(worst)
}

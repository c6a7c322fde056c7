//! Generalized Bell measurements: entanglement swapping and teleportation.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::opcore::linalg::{c, CMatrix, C64};
use crate::opcore::{Operator, ProbVector};

/// Outcomes below this probability carry the maximally mixed state.
const NULL_OUTCOME: f64 = 1e-14;

/// Post-measurement states indexed by Bell outcomes (nu, mu).
#[derive(Clone, Debug)]
pub struct MeasurementEnsemble {
    outcomes: Vec<(usize, usize)>,
    probs: ProbVector,
    states: Vec<Operator>,
}

impl MeasurementEnsemble {
    pub fn outcomes(&self) -> &[(usize, usize)] {
        &self.outcomes
    }

    pub fn probs(&self) -> &ProbVector {
        &self.probs
    }

    pub fn states(&self) -> &[Operator] {
        &self.states
    }

    /// sum_i p_i rho_i, the output when the outcome is forgotten.
    pub fn average(&self) -> Result<Operator> {
        let mut m = self.states[0].matrix() * c(0.0, 0.0);
        for (&p, s) in self.probs.entries().iter().zip(&self.states) {
            m += s.matrix() * c(p, 0.0);
        }
        Operator::new(m, self.states[0].layout().clone())
    }
}

fn omega(d: usize, k: usize) -> C64 {
    let t = 2.0 * PI * (k % d) as f64 / d as f64;
    c(t.cos(), t.sin())
}

/// U^{nu mu} = sum_j w^{j nu} |j><j + mu| on the first d levels of a
/// dimension-`dim` factor, identity on the rest.
pub fn bell_correction(d: usize, dim: usize, nu: usize, mu: usize) -> CMatrix {
    let mut u = CMatrix::zeros(dim, dim);
    for j in 0..d {
        u[(j, (j + mu) % d)] = omega(d, j * nu);
    }
    for j in d..dim {
        u[(j, j)] = c(1.0, 0.0);
    }
    u
}

/// Operator as blocks indexed by the digit of one factor: returns the
/// permuted operator with `label` first or last.
fn move_factor(op: &Operator, label: &str, to_front: bool) -> Result<Operator> {
    let labels = op.layout().labels();
    let mut order: Vec<&str> = labels
        .iter()
        .map(String::as_str)
        .filter(|l| *l != label)
        .collect();
    if to_front {
        order.insert(0, label);
    } else {
        order.push(label);
    }
    op.permute(&order)
}

/// Charlie measures `charlie_a` (of `rho_ac`) and `charlie_b` (of `rho_cb`)
/// in the basis Psi^{nu mu} = d^{-1/2} sum_j w^{j nu} |j>|j + mu>, and Bob
/// applies U^{nu mu} to `target` (a factor of `rho_cb`). The output layout
/// is the remaining factors of `rho_ac` followed by those of `rho_cb`.
pub fn bell_swap(
    rho_ac: &Operator,
    charlie_a: &str,
    rho_cb: &Operator,
    charlie_b: &str,
    target: &str,
) -> Result<MeasurementEnsemble> {
    let d = rho_ac.layout().dim_of(charlie_a)?;
    let db = rho_cb.layout().dim_of(charlie_b)?;
    if d != db {
        return Err(Error::DimensionMismatch(format!(
            "Charlie's factors have dimensions {d} and {db}"
        )));
    }
    if target == charlie_b {
        return Err(Error::Layout(
            "Bob's target cannot be Charlie's factor".into(),
        ));
    }
    let target_dim = rho_cb.layout().dim_of(target)?;
    if target_dim < d {
        return Err(Error::DimensionMismatch(format!(
            "target `{target}` has dimension {target_dim} < {d}"
        )));
    }
    let a = move_factor(rho_ac, charlie_a, false)?;
    let b = move_factor(rho_cb, charlie_b, true)?;
    let la = a
        .layout()
        .select(&(0..a.layout().len() - 1).collect::<Vec<_>>());
    let lb = b
        .layout()
        .select(&(1..b.layout().len()).collect::<Vec<_>>());
    let out_layout = la.concat(&lb)?;
    let ra = la.total_dim();
    let rb = lb.total_dim();

    // a[(r d + j, r' d + j')] and b[(j rb + s, j' rb + s')]
    let block_a = |j: usize, jp: usize| {
        CMatrix::from_fn(ra, ra, |r, rp| a.matrix()[(r * d + j, rp * d + jp)])
    };
    let block_b = |j: usize, jp: usize| b.matrix().view((j * rb, jp * rb), (rb, rb)).into_owned();
    let blocks_a: Vec<Vec<CMatrix>> = (0..d)
        .map(|j| (0..d).map(|jp| block_a(j, jp)).collect())
        .collect();

    let target_pos = lb.position(target)?;
    let left: usize = lb.dims()[..target_pos].iter().product();
    let right: usize = lb.dims()[target_pos + 1..].iter().product();

    let mut outcomes = Vec::with_capacity(d * d);
    let mut probs = Vec::with_capacity(d * d);
    let mut raw = Vec::with_capacity(d * d);
    for nu in 0..d {
        for mu in 0..d {
            let mut m = CMatrix::zeros(ra * rb, ra * rb);
            for (j, row) in blocks_a.iter().enumerate() {
                for (jp, a_block) in row.iter().enumerate() {
                    let phase = omega(d, jp * nu) * omega(d, j * nu).conj() / c(d as f64, 0.0);
                    let bb = block_b((j + mu) % d, (jp + mu) % d);
                    m += a_block.kronecker(&bb) * phase;
                }
            }
            let corr = CMatrix::identity(ra * left, ra * left)
                .kronecker(&bell_correction(d, target_dim, nu, mu))
                .kronecker(&CMatrix::identity(right, right));
            let m = &corr * m * corr.adjoint();
            outcomes.push((nu, mu));
            probs.push(m.trace().re);
            raw.push(m);
        }
    }
    let total: f64 = probs.iter().sum();
    let states = raw
        .into_iter()
        .zip(&probs)
        .map(|(m, &p)| {
            if p > NULL_OUTCOME * total {
                Operator::new(m * c(1.0 / p, 0.0), out_layout.clone())
            } else {
                Ok(Operator::maximally_mixed(out_layout.clone()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasurementEnsemble {
        outcomes,
        probs: ProbVector::normalized(probs)?,
        states,
    })
}

/// Teleports factor `send_label` of `joint` through a two-factor resource
/// [input, output]. The output factor takes the sent factor's place and
/// keeps the resource's output label; levels of the output beyond the input
/// dimension (such as an erasure flag) pass the corrections unchanged.
pub fn teleport_through(
    resource: &Operator,
    joint: &Operator,
    send_label: &str,
) -> Result<Operator> {
    let rl = resource.layout();
    if rl.len() != 2 {
        return Err(Error::Layout(format!(
            "resource must have two factors [input, output], got {rl}"
        )));
    }
    let (input, output) = (rl.labels()[0].as_str(), rl.labels()[1].as_str());
    if joint.layout().contains(output) && output != send_label {
        return Err(Error::LabelCollision(output.to_owned()));
    }
    // Keep Charlie's labels distinct from the joint state's.
    let resource = if joint.layout().contains(input) {
        resource.relabel(input, "\u{0}charlie")?
    } else {
        resource.clone()
    };
    let charlie = resource.layout().labels()[0].clone();
    let output_tmp = if output == send_label {
        "\u{0}out"
    } else {
        output
    };
    let resource = resource.relabel(output, output_tmp)?;
    let avg = bell_swap(joint, send_label, &resource, &charlie, output_tmp)?.average()?;
    let mut order: Vec<String> = joint.layout().labels().to_vec();
    let slot = joint.layout().position(send_label)?;
    order[slot] = output_tmp.to_owned();
    let placed = avg.permute(&order)?;
    if output_tmp != output {
        placed.relabel(output_tmp, output)
    } else {
        Ok(placed)
    }
}

//! Verification suites behind `qkrep verify`.

use clap::ValueEnum;
use qkrep_core::bounds::Direction;
use qkrep_core::measures::{dw_from_state, kd_ps_lower, privacy_squeeze_structured};
use qkrep_core::opcore::{
    binary_entropy, matrix_trace_norm, min_eigenvalue, partial_trace, partial_transpose, trace_norm,
};
use qkrep_core::report::{Cell, Table};
use qkrep_core::repsim::{bell_swap, erasure_demo_with, haar_average_check, ShieldChannel};
use qkrep_core::states::{
    flower_correlated, fourier_x, hiding_dense, hiding_structured, key_attacked, key_block,
    mc_structure_defect, ppt_mixture_weight, ppt_pbit_mixture, private_bit, rho_m, swap_x,
    FlowerParams, FlowerSide, HidingParams, XFormPrivateBit,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Pbit,
    PptMixture,
    Hiding,
    Swap,
    Erasure,
    Haar,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Pbit => "pbit",
            Suite::PptMixture => "ppt-mixture",
            Suite::Hiding => "hiding",
            Suite::Swap => "swap",
            Suite::Erasure => "erasure",
            Suite::Haar => "haar",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Relation {
    Eq,
    Ge,
    Le,
}

/// One measured value against its target.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    relation: Relation,
    pub bound: f64,
    pub tolerance: f64,
}

impl Check {
    fn eq(name: String, value: f64, bound: f64, tolerance: f64) -> Self {
        Self {
            name,
            value,
            relation: Relation::Eq,
            bound,
            tolerance,
        }
    }

    fn ge(name: String, value: f64, bound: f64, tolerance: f64) -> Self {
        Self {
            name,
            value,
            relation: Relation::Ge,
            bound,
            tolerance,
        }
    }

    fn le(name: String, value: f64, bound: f64, tolerance: f64) -> Self {
        Self {
            name,
            value,
            relation: Relation::Le,
            bound,
            tolerance,
        }
    }

    fn flag(name: String, ok: bool) -> Self {
        Self::eq(name, if ok { 1.0 } else { 0.0 }, 1.0, 0.0)
    }

    pub fn passed(&self) -> bool {
        let (v, b, t) = (self.value, self.bound, self.tolerance);
        v.is_finite()
            && match self.relation {
                Relation::Eq => (v - b).abs() <= t,
                Relation::Ge => v >= b - t,
                Relation::Le => v <= b + t,
            }
    }

    fn relation(&self) -> &'static str {
        match self.relation {
            Relation::Eq => "==",
            Relation::Ge => ">=",
            Relation::Le => "<=",
        }
    }
}

pub const CHECK_COLUMNS: [&str; 6] = ["check", "value", "relation", "bound", "tolerance", "pass"];

pub fn check_table(checks: &[Check]) -> Table {
    let mut t = Table::new(&CHECK_COLUMNS);
    for c in checks {
        t.push(vec![
            Cell::from(c.name.as_str()),
            c.value.into(),
            c.relation().into(),
            c.bound.into(),
            c.tolerance.into(),
            c.passed().into(),
        ]);
    }
    t
}

pub struct VerifyOptions {
    pub max_d: Option<usize>,
    pub shield_d: usize,
    pub seed: u64,
    pub cap: usize,
    pub trials: usize,
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Vec<Check>, CliError> {
    match suite {
        Suite::Pbit => pbit_suite(opts.max_d.unwrap_or(5), opts.cap),
        Suite::PptMixture => ppt_mixture_suite(opts.max_d.unwrap_or(16), opts.cap),
        Suite::Hiding => hiding_suite(opts.cap),
        Suite::Swap => swap_suite(opts.seed),
        Suite::Erasure => erasure_suite(opts.shield_d, opts.cap),
        Suite::Haar => haar_suite(opts.seed, opts.trials),
    }
}

const KEY_SHIELD_B: [&str; 2] = ["B", "B'"];

fn pbit_suite(max_d: usize, cap: usize) -> Result<Vec<Check>, CliError> {
    if max_d < 2 {
        return Err(CliError::Usage(format!("--max-d {max_d} < 2")));
    }
    let mut checks = Vec::new();
    for d in 2..=max_d {
        qkrep_core::opcore::check_cap(4 * d * d, cap)?;
        let shields: [(&str, XFormPrivateBit); 2] =
            [("fourier", fourier_x(d)?), ("swap", swap_x(d)?)];
        for (name, x) in shields {
            let gamma = private_bit(&x)?;
            let tag = format!("{name} d={d}");
            checks.push(Check::ge(
                format!("min eigenvalue {tag}"),
                min_eigenvalue(&gamma)?,
                0.0,
                1e-9,
            ));
            let key = partial_trace(&gamma, &["A'", "B'"])?;
            let agree = key.matrix()[(0, 0)].re + key.matrix()[(3, 3)].re;
            checks.push(Check::eq(format!("key agreement {tag}"), agree, 1.0, 1e-10));
            let neg = trace_norm(&partial_transpose(&gamma, &KEY_SHIELD_B)?);
            checks.push(Check::eq(
                format!("negativity identity {tag}"),
                neg,
                1.0 + x.x_gamma_norm(),
                1e-8,
            ));
            if name == "swap" {
                checks.push(Check::eq(
                    format!("swap X^Gamma norm d={d}"),
                    x.x_gamma_norm(),
                    1.0 / d as f64,
                    1e-10,
                ));
            }
        }
    }
    Ok(checks)
}

fn ppt_mixture_suite(max_d: usize, cap: usize) -> Result<Vec<Check>, CliError> {
    let grid: Vec<usize> = [4usize, 9, 16, 25]
        .into_iter()
        .filter(|&d| d <= max_d)
        .collect();
    if grid.is_empty() {
        return Err(CliError::Usage(format!(
            "--max-d {max_d} < 4 leaves no PPT mixture to check"
        )));
    }
    let mut checks = Vec::new();
    for d in grid {
        qkrep_core::opcore::check_cap(4 * d * d, cap)?;
        let rho = ppt_pbit_mixture(d)?;
        let p = ppt_mixture_weight(d);
        let rg = partial_transpose(&rho, &KEY_SHIELD_B)?;
        let sg = partial_transpose(&key_attacked(&rho)?, &KEY_SHIELD_B)?;
        checks.push(Check::eq(
            format!("distance to key-attacked d={d}"),
            trace_norm(&rg.try_sub(&sg)?),
            p,
            1e-8,
        ));
        checks.push(Check::ge(
            format!("PPT min eigenvalue d={d}"),
            min_eigenvalue(&rg)?,
            0.0,
            1e-9,
        ));
        checks.push(Check::ge(
            format!("DW rate d={d}"),
            dw_from_state(&rho, "A", &["B"], cap)?,
            1.0 - 2.0 * binary_entropy(p)?,
            1e-9,
        ));
    }
    Ok(checks)
}

fn hiding_suite(cap: usize) -> Result<Vec<Check>, CliError> {
    let blocks = [
        ((0, 0), (0, 0)),
        ((1, 1), (1, 1)),
        ((0, 1), (0, 1)),
        ((1, 0), (1, 0)),
        ((0, 0), (1, 1)),
        ((1, 1), (0, 0)),
        ((0, 0), (0, 1)),
    ];
    let mut checks = Vec::new();
    for p in [1.0 / 3.0, 0.4] {
        for k in [1u32, 2] {
            for m in [1u32, 2] {
                let params = HidingParams::new(p, 2, k, m)?;
                let rho = hiding_dense(&params, cap)?;
                let s = hiding_structured(&params);
                let mut worst = 0.0_f64;
                for (row, col) in blocks {
                    let dense = matrix_trace_norm(&key_block(&rho, row, col)?);
                    worst = worst.max((dense - s.block_norm(row, col)).abs());
                }
                let tag = format!("p={p:.4} k={k} m={m}");
                checks.push(Check::le(format!("block norms {tag}"), worst, 0.0, 1e-9));
                let g = partial_transpose(&rho, &KEY_SHIELD_B)?;
                let dense_ppt = min_eigenvalue(&g)? >= -1e-9;
                checks.push(Check::flag(
                    format!("PPT predicate {tag}"),
                    dense_ppt == params.ppt_predicate(),
                ));
            }
        }
    }
    for m in 12..=16 {
        let cell = privacy_squeeze_structured(&hiding_structured(&rho_m(m)?))?;
        checks.push(Check::ge(
            format!("kd_ps_lower m={m}"),
            kd_ps_lower(&cell)?,
            0.9,
            0.0,
        ));
    }
    Ok(checks)
}

fn swap_suite(seed: u64) -> Result<Vec<Check>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = FlowerParams::haar(2, 2, &mut rng)?;
    let left = flower_correlated(&params, FlowerSide::Alice)?;
    let right = flower_correlated(&params, FlowerSide::Bob)?;
    let ens = bell_swap(&left, "CA", &right, "CB", "B")?;
    let outcomes = ens.probs().len() as f64;
    let mut checks = Vec::new();
    for (&(nu, mu), (&p, s)) in ens
        .outcomes()
        .iter()
        .zip(ens.probs().entries().iter().zip(ens.states()))
    {
        checks.push(Check::eq(
            format!("probability nu={nu} mu={mu}"),
            p,
            1.0 / outcomes,
            1e-9,
        ));
        checks.push(Check::le(
            format!("off-structure mass nu={nu} mu={mu}"),
            mc_structure_defect(s)?,
            0.0,
            1e-9,
        ));
    }
    Ok(checks)
}

fn erasure_suite(shield_d: usize, cap: usize) -> Result<Vec<Check>, CliError> {
    let erased = erasure_demo_with(shield_d, ShieldChannel::Erasure, cap)?;
    let perfect = erasure_demo_with(shield_d, ShieldChannel::Epr, cap)?;
    debug_assert_eq!(erased.direction, Direction::Lower);
    Ok(vec![
        Check::ge(
            format!("erasure DW rate shield_d={shield_d}"),
            erased.value,
            0.5,
            1e-9,
        ),
        Check::ge(
            format!("EPR DW rate shield_d={shield_d}"),
            perfect.value,
            1.0,
            1e-9,
        ),
    ])
}

fn haar_suite(seed: u64, trials: usize) -> Result<Vec<Check>, CliError> {
    let h = haar_average_check(2, 8, 1, 0, trials, seed)?;
    Ok(vec![Check::le(
        format!("trial-mean defect d=2 n=8 trials={trials}"),
        h.mean_defect,
        0.05,
        0.0,
    )])
}

//! Command-line front end for qkrep-core: gap tables, hiding-family sweeps,
//! swapping and erasure demos, and verification suites.

pub mod grid;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qkrep_core::bounds::proximity::pbit_proximity;
use qkrep_core::bounds::{ed_ec_bound, ef_hiding_bound, gap_report};
use qkrep_core::measures::{kd_ps_lower, mc_distillable, privacy_squeeze_structured, MC_TOL};
use qkrep_core::opcore::{check_cap, DEFAULT_DENSE_CAP};
use qkrep_core::report::Table;
use qkrep_core::repsim::{bell_swap, erasure_demo_with, ShieldChannel};
use qkrep_core::states::{
    flower_correlated, hiding_structured, mc_structure_defect, rho_m, FlowerParams, FlowerSide,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use output::{report_table, Document};
use verify::{check_table, run_suite, Suite, VerifyOptions};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Seed used by stochastic verification suites when none is given.
pub const DEFAULT_VERIFY_SEED: u64 = 2024;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] qkrep_core::Error),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    /// Parameter violations reported by the library count as usage errors.
    pub fn exit_code(&self) -> i32 {
        use qkrep_core::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(E::OutOfRange(_) | E::SizeCap { .. }) => EXIT_USAGE,
            _ => EXIT_FAIL,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "qkrep",
    version,
    about = "Key repeater bounds, state families and verification suites"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Master seed for stochastic commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Largest dense matrix dimension allowed.
    #[arg(long, env = "QKREP_DENSE_CAP", default_value_t = DEFAULT_DENSE_CAP, global = true)]
    pub dense_cap: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Key lower bound against repeater upper bound for the PPT mixture.
    GapTable {
        /// Shield dimensions, e.g. 4:1024:geometric.
        #[arg(long = "d", value_parser = grid_arg)]
        d: Grid,
    },
    /// Run a verification suite; exit 1 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest shield dimension (pbit, ppt-mixture).
        #[arg(long)]
        max_d: Option<usize>,
        /// Shield dimension for the erasure suite.
        #[arg(long, default_value_t = 2)]
        shield_d: usize,
        /// Number of Haar trials (haar).
        #[arg(long, default_value_t = 500)]
        trials: usize,
    },
    /// Formation bound and privacy-squeezed key of the hiding family.
    Hiding {
        /// Values of m, e.g. 2:8.
        #[arg(long = "m", value_parser = grid_arg)]
        m: Grid,
    },
    /// Entanglement swapping of flower states with Haar twists.
    SwapDemo {
        #[arg(long = "d")]
        d: usize,
        #[arg(long = "n")]
        n: usize,
    },
    /// Key rate after teleporting a shield through an erasure channel.
    ErasureDemo {
        #[arg(long, default_value_t = 2)]
        shield_d: usize,
    },
}

/// A parsed parameter grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid(pub Vec<u64>);

fn grid_arg(s: &str) -> Result<Grid, String> {
    grid::parse_grid(s).map(Grid).map_err(|e| e.to_string())
}

/// Parses `args`, runs the command and writes its document to `stdout` (or
/// `--output`). Returns the process exit code.
pub fn run<I, T, W>(args: I, stdout: W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(doc) => {
            let written = match &cli.global.output {
                Some(path) => File::create(path)
                    .map_err(CliError::from)
                    .and_then(|f| doc.write(cli.global.format, BufWriter::new(f))),
                None => doc.write(cli.global.format, stdout),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return EXIT_FAIL;
            }
            match doc.passed {
                Some(false) => EXIT_FAIL,
                _ => EXIT_PASS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Document, CliError> {
    let cap = cli.global.dense_cap;
    match &cli.command {
        Command::GapTable { d } => gap_table(&d.0),
        Command::Verify {
            suite,
            max_d,
            shield_d,
            trials,
        } => {
            let opts = VerifyOptions {
                max_d: *max_d,
                shield_d: *shield_d,
                seed: cli.global.seed.unwrap_or(DEFAULT_VERIFY_SEED),
                cap,
                trials: *trials,
            };
            let checks = run_suite(*suite, &opts)?;
            let failed = checks.iter().filter(|c| !c.passed()).count();
            eprintln!(
                "suite {}: {}/{} checks passed",
                suite.name(),
                checks.len() - failed,
                checks.len()
            );
            let mut doc = Document::new("verify", check_table(&checks));
            doc.passed = Some(failed == 0);
            Ok(doc)
        }
        Command::Hiding { m } => hiding(&m.0),
        Command::SwapDemo { d, n } => {
            let seed = cli
                .global
                .seed
                .ok_or_else(|| CliError::Usage("swap-demo needs --seed".into()))?;
            swap_demo(*d, *n, seed, cap)
        }
        Command::ErasureDemo { shield_d } => {
            let reports = vec![
                erasure_demo_with(*shield_d, ShieldChannel::Erasure, cap)?,
                erasure_demo_with(*shield_d, ShieldChannel::Epr, cap)?,
            ];
            let mut doc = Document::new("erasure-demo", report_table(&reports));
            doc.reports = reports;
            Ok(doc)
        }
    }
}

fn gap_table(grid: &[u64]) -> Result<Document, CliError> {
    let mut t = Table::new(&["d", "p", "kd_lower", "repeater_upper", "gap_open"]);
    let mut reports = Vec::new();
    for &d in grid {
        let (lower, upper) = gap_report(d)?;
        t.push(vec![
            d.into(),
            lower.inputs["p"].into(),
            lower.value.into(),
            upper.value.into(),
            (upper.value < lower.value).into(),
        ]);
        reports.extend([lower, upper]);
    }
    let mut doc = Document::new("gap-table", t);
    doc.reports = reports;
    Ok(doc)
}

fn hiding(grid: &[u64]) -> Result<Document, CliError> {
    let mut t = Table::new(&[
        "m",
        "d",
        "ef_upper",
        "repeater_upper",
        "kd_ps_lower",
        "epsilon",
        "delta",
        "proximity_hypothesis",
    ]);
    let mut reports = Vec::new();
    for &m in grid {
        let m = u32::try_from(m)
            .ok()
            .filter(|&m| m >= 2)
            .ok_or_else(|| CliError::Usage(format!("m = {m} must lie in 2..2^32")))?;
        let ef = ef_hiding_bound(m)?;
        // E_D vanishes on the PPT family, leaving half the formation bound
        let rep = ed_ec_bound(0.0, ef.value)?.input("m", m as f64);
        let params = rho_m(m)?;
        let kd = kd_ps_lower(&privacy_squeeze_structured(&hiding_structured(&params))?)?;
        let prox = pbit_proximity(m)?;
        t.push(vec![
            m.into(),
            (params.d as u64).into(),
            ef.value.into(),
            rep.value.into(),
            kd.into(),
            prox.epsilon.into(),
            prox.delta.into(),
            prox.hypothesis.into(),
        ]);
        reports.extend([ef, rep]);
    }
    let mut doc = Document::new("hiding", t);
    doc.reports = reports;
    Ok(doc)
}

fn swap_demo(d: usize, n: usize, seed: u64, cap: usize) -> Result<Document, CliError> {
    if d < 2 || n < 1 {
        return Err(CliError::Usage(format!(
            "swap-demo needs d >= 2 and n >= 1 (got d = {d}, n = {n})"
        )));
    }
    let side = d
        .checked_mul(n)
        .and_then(|dn| dn.checked_mul(dn))
        .ok_or_else(|| CliError::Usage("d n too large".into()))?;
    check_cap(side, cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = FlowerParams::haar(d, n, &mut rng)?;
    let left = flower_correlated(&params, FlowerSide::Alice)?;
    let right = flower_correlated(&params, FlowerSide::Bob)?;
    let ens = bell_swap(&left, "CA", &right, "CB", "B")?;
    let mut t = Table::new(&["nu", "mu", "probability", "off_structure", "distillable"]);
    for (&(nu, mu), (&p, s)) in ens
        .outcomes()
        .iter()
        .zip(ens.probs().entries().iter().zip(ens.states()))
    {
        let defect = mc_structure_defect(s)?;
        let ed = if defect < MC_TOL {
            mc_distillable(s)?
        } else {
            f64::NAN
        };
        t.push(vec![
            nu.into(),
            mu.into(),
            p.into(),
            defect.into(),
            ed.into(),
        ]);
    }
    Ok(Document::new("swap-demo", t))
}

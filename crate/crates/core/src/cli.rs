//! Command-line front end: `compute` builds objects, `verify` runs campaigns.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::brauer::{identity_suite, jm_campaign};
use crate::coeff::Rational;
use crate::error::{Error, Result};
use crate::report::Report;
use crate::ssv::{
    ev_centrality_check, phi_integral, phi_invariants, psi_relation_check, verify_annihilation, verify_commutativity,
    verify_equivalence, verify_odd_vanishing, verify_rep_identities, Context,
};
use crate::superspace::{qxq_check, rep_relations_check, Signature};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug, Clone)]
#[command(name = "sugawara", version, about = "Segal-Sugawara vectors for osp(M|2n), computed and checked exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Build an object and print it.
    Compute(Config),
    /// Run a verification campaign; exit 1 if any check fails.
    Verify(Config),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Phi,
    Brauer,
    Rep,
    Annihilation,
    Commutativity,
    Psi,
    Centrality,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Config {
    pub target: Target,
    #[arg(long = "M", default_value_t = 1)]
    pub big_m: usize,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Degree `m` (for `brauer`, the largest Brauer size checked).
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// `k` for the ψ relation; defaults to `m`.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0,1", allow_hyphen_values = true)]
    pub modes: Vec<i32>,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub degrees: Vec<usize>,
    /// Evaluation point of `t` for `centrality`, an integer or `p/q`.
    #[arg(long, default_value = "1")]
    pub z: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Instances per identity for `rep`.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report `timing_ms` as 0, for byte-identical output across runs.
    #[arg(long)]
    pub no_timing: bool,
}

/// What a run produced: the exit status and the serialized output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub output: String,
}

fn render<T: Serialize + std::fmt::Display>(x: &T, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(x).expect("serializable") + "\n",
        Format::Text => format!("{x}\n"),
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("cannot parse {s:?} as a rational"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::frac(p, q))
        }
        None => Ok(Rational::from_int(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn need_m(cfg: &Config, lo: usize, hi: usize) -> Result<()> {
    if cfg.m < lo || cfg.m > hi {
        return Err(Error::InvalidArgument(format!("{:?} needs {lo} <= m <= {hi}, got {}", cfg.target, cfg.m)));
    }
    Ok(())
}

fn verify(cfg: &Config) -> Result<Report> {
    if cfg.target == Target::Brauer {
        need_m(cfg, 1, 4)?;
        let mut r = identity_suite(cfg.m)?;
        r.absorb("jm", jm_campaign(cfg.m, 5)?);
        return Ok(r);
    }
    let sig = Signature::new(cfg.big_m, cfg.n)?;
    let ctx = Context::new(sig)?;
    let report = match cfg.target {
        Target::Brauer => unreachable!(),
        Target::Phi => {
            need_m(cfg, 2, 6)?;
            let phi = phi_integral(&ctx, cfg.m)?;
            let mut r = Report::new("phi").param("M", sig.m).param("n", sig.n).param("m", cfg.m);
            r.extend(phi_invariants(&phi));
            r.absorb("equivalence", verify_equivalence(&ctx, cfg.m)?);
            r.absorb("odd", verify_odd_vanishing(&ctx, cfg.m)?);
            r.finish()
        }
        Target::Rep => {
            need_m(cfg, 2, 3)?;
            let mut r = rep_relations_check(sig, 4)?;
            r.absorb("qxq", qxq_check(sig, cfg.m.min(3), 8, cfg.seed)?);
            r.absorb("identities", verify_rep_identities(&ctx, cfg.m, cfg.samples, cfg.seed)?);
            r.param("samples", cfg.samples).param("seed", cfg.seed)
        }
        Target::Annihilation => {
            need_m(cfg, 2, 6)?;
            verify_annihilation(&ctx, cfg.m, &cfg.modes)?
        }
        Target::Commutativity => {
            if cfg.degrees.iter().any(|&d| !(2..=4).contains(&d)) {
                return Err(Error::InvalidArgument("degrees must lie in 2..=4".into()));
            }
            verify_commutativity(&ctx, &cfg.degrees)?
        }
        Target::Psi => {
            need_m(cfg, 1, 3)?;
            psi_relation_check(&ctx, cfg.m, cfg.k.unwrap_or(cfg.m))?
        }
        Target::Centrality => {
            need_m(cfg, 2, 3)?;
            ev_centrality_check(&ctx, cfg.m, &parse_rational(&cfg.z)?)?
        }
    };
    Ok(report)
}

fn run_config(command: &Command) -> Result<Outcome> {
    match command {
        Command::Compute(cfg) => {
            if cfg.target != Target::Phi {
                return Err(Error::InvalidArgument(format!(
                    "compute supports the phi target only; use verify {:?}",
                    cfg.target
                )));
            }
            need_m(cfg, 2, 6)?;
            let ctx = Context::new(Signature::new(cfg.big_m, cfg.n)?)?;
            let phi = phi_integral(&ctx, cfg.m)?;
            Ok(Outcome { status: EXIT_PASS, output: render(&phi, cfg.format) })
        }
        Command::Verify(cfg) => {
            let mut report = verify(cfg)?;
            if cfg.no_timing {
                report.timing_ms = 0;
            }
            let status = if report.all_passed() { EXIT_PASS } else { EXIT_FAIL };
            Ok(Outcome { status, output: render(&report, cfg.format) })
        }
    }
}

fn config(command: &Command) -> &Config {
    match command {
        Command::Compute(c) | Command::Verify(c) => c,
    }
}

/// Parses `args` (program name first) and runs; never panics on bad input.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            return Outcome { status, output: e.to_string() };
        }
    };
    match run_config(&cli.command) {
        Ok(out) => out,
        Err(e @ Error::InvalidArgument(_)) => Outcome { status: EXIT_USAGE, output: format!("error: {e}\n") },
        Err(e) => Outcome { status: EXIT_FAIL, output: format!("error: {e}\n") },
    }
    .with_out(config(&cli.command))
}

impl Outcome {
    // Writes to `--out` when given; a write failure is a usage error.
    fn with_out(self, cfg: &Config) -> Outcome {
        let Some(path) = &cfg.out else { return self };
        if self.status == EXIT_USAGE {
            return self;
        }
        match std::fs::write(path, &self.output) {
            Ok(()) => Outcome { status: self.status, output: String::new() },
            Err(e) => Outcome { status: EXIT_USAGE, output: format!("error: cannot write {}: {e}\n", path.display()) },
        }
    }
}

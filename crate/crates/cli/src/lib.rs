//! The `setcross` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure, 3 capacity
//! exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use setcross::asymptotics::{approx_report, ApproxFormula, ApproxParams, ApproxReport};
use setcross::distribution::{t_poly, t_poly_global, DistPolyJson, Method, Pmf};
use setcross::exactnum::rational_to_scientific;
use setcross::extremal::{build_pi, max_global, report_block, report_global};
use setcross::moments::{moment_report, MomentMethod};
use setcross::sampling::{PartitionSampler, SamplerConfig};
use setcross::verify::{run_suite, VerifyLevel};
use setcross::{Error, IntegerPartition, Statistic};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

/// Limits read from `--config`; unknown keys are rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Largest `n` for commands that enumerate partitions. Memory and time
    /// grow with the Bell number `B_n`.
    pub enumeration_limit: usize,
    /// Largest `n` for closed-form polynomial routes (`jr`, `ksz`, `series`).
    pub jr_limit: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            enumeration_limit: 12,
            jr_limit: 40,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Failure::usage(format!("bad config {}: {e}", path.display())))
    }

    fn enumeration(&self, n: usize) -> Result<(), Failure> {
        cap("enumeration n", n, self.enumeration_limit)
    }

    fn formula(&self, n: usize) -> Result<(), Failure> {
        cap("polynomial n", n, self.jr_limit)
    }
}

fn cap(what: &'static str, value: usize, limit: usize) -> Result<(), Failure> {
    if value > limit {
        Err(Error::Capacity { what, value, limit }.into())
    } else {
        Ok(())
    }
}

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Invalid(_) | Error::Parse { .. } | Error::Domain { .. } => EXIT_USAGE,
            Error::NotDivisible(_) | Error::Verification(_) => EXIT_VERIFY,
            Error::Capacity { .. } => EXIT_CAPACITY,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure {
                code: EXIT_OK,
                message: String::new(),
            };
        }
        Failure {
            code: EXIT_VERIFY,
            message: format!("output error: {e}"),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure {
            code: EXIT_VERIFY,
            message: format!("serialization error: {e}"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "setcross", version, about = "Crossing statistics on set partitions")]
pub struct Cli {
    /// TOML file with `enumeration_limit` and `jr_limit`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StatArg {
    Linear,
    Circular,
}

impl From<StatArg> for Statistic {
    fn from(s: StatArg) -> Self {
        match s {
            StatArg::Linear => Statistic::Linear,
            StatArg::Circular => Statistic::Circular,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Ksz,
    Jr,
    Series,
    Brute,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Ksz => Method::Ksz,
            MethodArg::Jr => Method::Jr,
            MethodArg::Series => Method::Series,
            MethodArg::Brute => Method::Brute,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MomentMethodArg {
    Closed,
    Poly,
    Brute,
}

impl From<MomentMethodArg> for MomentMethod {
    fn from(m: MomentMethodArg) -> Self {
        match m {
            MomentMethodArg::Closed => MomentMethod::ClosedForm,
            MomentMethodArg::Poly => MomentMethod::FromPoly,
            MomentMethodArg::Brute => MomentMethod::Brute,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SampleFormat {
    Text,
    Hist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

#[derive(Args, Debug)]
pub struct NkStat {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value = "linear")]
    pub stat: StatArg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Distribution polynomial T(q) of one statistic.
    Dist {
        #[command(flatten)]
        nks: NkStat,
        /// Defaults to jr for the linear statistic and brute for the circular one.
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exact mean, variance and second factorial moment.
    Moments {
        #[command(flatten)]
        nks: NkStat,
        #[arg(long, value_enum, default_value = "closed")]
        method: MomentMethodArg,
    },
    /// Maximum value with maximizing shapes and a witness partition.
    Maxima {
        #[command(flatten)]
        nks: NkStat,
    },
    /// Extremal constructions.
    Extremal {
        #[command(subcommand)]
        action: ExtremalAction,
    },
    /// Exact values beside leading-term approximations, as CSV.
    Approx {
        #[arg(long)]
        formula: String,
        /// Comma-separated values of n.
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "linear")]
        stat: StatArg,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        t: i64,
        #[arg(long, default_value_t = 0)]
        u: usize,
    },
    /// Uniform random partitions.
    Sample {
        #[command(flatten)]
        nks: NkStat,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: SampleFormat,
    },
    /// Exact law as (x, probability) pairs.
    Hist {
        #[command(flatten)]
        nks: NkStat,
        /// Divide x by a_n = floor(C(n-1, 2) / 3), the linear global maximum.
        #[arg(long)]
        normalize: bool,
    },
    /// Cross-method invariant suite.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExtremalAction {
    /// Build π(λ) from a partition of n, given as parts.
    Build {
        #[arg(long)]
        parts: String,
    },
}

/// Output of `extremal build`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildReport {
    pub parts: IntegerPartition,
    pub partition: setcross::SetPartition,
    pub linear: u64,
    pub circular: u64,
}

/// Wire form of `dist --format json` without `--k`.
fn global_dist_json(n: usize, stat: Statistic, method: Method, cfg: &Config) -> Result<DistPolyJson, Failure> {
    check_method_cap(n, stat, method, cfg)?;
    let poly = t_poly_global(n, stat, method)?;
    Ok(DistPolyJson {
        n,
        k: None,
        stat,
        method,
        coeffs: poly
            .dense_from_zero()
            .unwrap_or_default()
            .iter()
            .map(ToString::to_string)
            .collect(),
    })
}

fn check_method_cap(n: usize, stat: Statistic, method: Method, cfg: &Config) -> Result<(), Failure> {
    if method == Method::Brute || stat == Statistic::Circular {
        cfg.enumeration(n)
    } else {
        cfg.formula(n)
    }
}

fn default_method(stat: Statistic) -> Method {
    match stat {
        Statistic::Linear => Method::Jr,
        Statistic::Circular => Method::Brute,
    }
}

fn exact_pmf(n: usize, k: Option<usize>, stat: Statistic, cfg: &Config) -> Result<Pmf, Failure> {
    let method = default_method(stat);
    check_method_cap(n, stat, method, cfg)?;
    let poly = match k {
        Some(k) => t_poly(n, k, stat, method)?.poly,
        None => t_poly_global(n, stat, method)?,
    };
    Ok(Pmf::from_poly(&poly)?)
}

fn write_json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn exec(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    match cli.command {
        Command::Dist { nks, method, format } => {
            let stat = nks.stat.into();
            let method = method.map(Method::from).unwrap_or(default_method(stat));
            let json = match nks.k {
                Some(k) => {
                    check_method_cap(nks.n, stat, method, &cfg)?;
                    t_poly(nks.n, k, stat, method)?.to_json()
                }
                None => global_dist_json(nks.n, stat, method, &cfg)?,
            };
            match format {
                Format::Json => write_json(out, &json)?,
                Format::Csv => {
                    writeln!(out, "n,k,stat,method,x,count")?;
                    let k = json.k.map(|k| k.to_string()).unwrap_or_default();
                    for (x, c) in json.coeffs.iter().enumerate() {
                        writeln!(out, "{},{},{},{},{},{}", json.n, k, json.stat, json.method, x, c)?;
                    }
                }
            }
        }
        Command::Moments { nks, method } => {
            let method: MomentMethod = method.into();
            let stat = nks.stat.into();
            match method {
                MomentMethod::Brute => cfg.enumeration(nks.n)?,
                MomentMethod::FromPoly => cfg.formula(nks.n)?,
                MomentMethod::ClosedForm => {}
            }
            write_json(out, &moment_report(nks.n, nks.k, stat, method)?)?;
        }
        Command::Maxima { nks } => {
            let stat = nks.stat.into();
            let rep = match nks.k {
                Some(k) => report_block(nks.n, k, stat)?,
                None => report_global(nks.n, stat)?,
            };
            write_json(out, &rep)?;
        }
        Command::Extremal {
            action: ExtremalAction::Build { parts },
        } => {
            let lambda: IntegerPartition = parts.parse()?;
            let pi = build_pi(&lambda);
            let rep = BuildReport {
                linear: Statistic::Linear.of(&pi),
                circular: Statistic::Circular.of(&pi),
                parts: lambda,
                partition: pi,
            };
            write_json(out, &rep)?;
        }
        Command::Approx {
            formula,
            grid,
            k,
            stat,
            s,
            t,
            u,
        } => {
            let formula: ApproxFormula = formula.parse()?;
            let stat: Statistic = stat.into();
            let params = ApproxParams { k, stat, s, t, u };
            let enumerates = stat == Statistic::Circular
                && matches!(formula, ApproxFormula::VarBlock | ApproxFormula::VarGlobal);
            let mut rows = Vec::with_capacity(grid.len());
            for &n in &grid {
                if enumerates {
                    cfg.enumeration(n)?;
                }
                rows.push(approx_report(formula, n, &params)?);
            }
            writeln!(out, "{}", ApproxReport::CSV_HEADER)?;
            for r in rows {
                writeln!(out, "{}", r.csv_row())?;
            }
        }
        Command::Sample {
            nks,
            count,
            seed,
            format,
        } => {
            let sc = SamplerConfig {
                n: nks.n,
                k: nks.k,
                seed,
                count,
            };
            sc.validate()?;
            let sampler = PartitionSampler::new(sc.n, sc.k)?;
            match format {
                SampleFormat::Text => {
                    for p in sampler.samples(seed, count) {
                        writeln!(out, "{p}")?;
                    }
                }
                SampleFormat::Hist => {
                    let stat: Statistic = nks.stat.into();
                    let mut hist = std::collections::BTreeMap::<u64, u64>::new();
                    for p in sampler.samples(seed, count) {
                        *hist.entry(stat.of(&p)).or_default() += 1;
                    }
                    writeln!(out, "x,count")?;
                    for (x, c) in hist {
                        writeln!(out, "{x},{c}")?;
                    }
                }
            }
        }
        Command::Hist { nks, normalize } => {
            let stat: Statistic = nks.stat.into();
            let pmf = exact_pmf(nks.n, nks.k, stat, &cfg)?;
            let scale = if normalize {
                let a = max_global(nks.n, Statistic::Linear)?;
                if a == 0 {
                    return Err(Failure::usage(format!("a_n = 0 for n = {}; --normalize needs n >= 4", nks.n)));
                }
                Some(a)
            } else {
                None
            };
            writeln!(out, "x,prob")?;
            for (x, p) in pmf.iter() {
                let prob = rational_to_scientific(p, 17);
                match scale {
                    Some(a) => writeln!(out, "{:.6},{prob}", x as f64 / a as f64)?,
                    None => writeln!(out, "{x},{prob}")?,
                }
            }
        }
        Command::Verify { level } => {
            let level = match level {
                LevelArg::Quick => VerifyLevel::Quick,
                LevelArg::Full => VerifyLevel::Full,
            };
            let results = run_suite(level);
            let mut ok = true;
            for r in &results {
                writeln!(out, "{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail)?;
                ok &= r.passed;
            }
            if !ok {
                return Ok(EXIT_VERIFY);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `argv` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match exec(cli, out) {
        Ok(code) => code,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}

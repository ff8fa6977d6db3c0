//! Command-line front end: tone solving, curve sweeps, isoperimetric checks
//! and the one-shot verification suite.
//!
//! Exit codes: 0 on success, 1 when a computation fails or a verification
//! check fails, 2 on usage errors. Output files are written atomically.

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use freeplate_core::ball;
use freeplate_core::bessel::{ultra_i, ultra_j, UltraIndex};
use freeplate_core::iso::{self, DirectionSampler, DomainSpec};
use freeplate_core::report::{branch_csv, curve_csv, fmt_f64};
use freeplate_core::rod;
use freeplate_core::verify::{run_suite, Selection};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "freeplate",
    version,
    about = "Free plate and rod spectra with a lemma verification suite"
)]
struct Cli {
    /// Plain key=value defaults file; explicit flags override its entries.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate ultraspherical Bessel functions (debug hook).
    Bessel {
        #[command(subcommand)]
        cmd: BesselCmd,
    },
    /// Free plate on the unit ball.
    Ball {
        #[command(subcommand)]
        cmd: BallCmd,
    },
    /// Free rod on [-1, 1].
    Rod {
        #[command(subcommand)]
        cmd: RodCmd,
    },
    /// Isoperimetric quotient bound on a domain.
    Iso {
        #[command(subcommand)]
        cmd: IsoCmd,
    },
    /// Run the verification suites and report per-check status.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum BesselCmd {
    /// Evaluate j_l or i_l (or a derivative) at one point.
    Eval(BesselEvalArgs),
}

#[derive(Args)]
struct BesselEvalArgs {
    #[arg(long)]
    dim: Option<u32>,
    #[arg(long)]
    l: Option<u32>,
    /// Argument z >= 0.
    #[arg(long)]
    z: Option<f64>,
    /// Derivative order 0..4.
    #[arg(long, default_value_t = 0)]
    deriv: u32,
    /// Which family: j (oscillatory) or i (modified).
    #[arg(long, default_value = "j")]
    kind: String,
    #[arg(long)]
    format: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BallCmd {
    /// Fundamental tone at one tension.
    Tone(BallToneArgs),
    /// Tone table over a tension grid.
    Curve(BallCurveArgs),
}

#[derive(Args)]
struct BallToneArgs {
    #[arg(long)]
    dim: Option<u32>,
    #[arg(long)]
    tau: Option<f64>,
    /// Angular order; defaults to the fundamental l = 1.
    #[arg(long)]
    l: Option<u32>,
    #[arg(long)]
    format: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BallCurveArgs {
    #[arg(long)]
    dim: Option<u32>,
    #[arg(long = "tau-min")]
    tau_min: Option<f64>,
    #[arg(long = "tau-max")]
    tau_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    format: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum RodCmd {
    /// First positive vibration modes at one tension.
    Modes(RodModesArgs),
    /// Branch sweep over a tension range (all regimes).
    Curve(RodCurveArgs),
}

#[derive(Args)]
struct RodModesArgs {
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    modes: Option<usize>,
    #[arg(long)]
    format: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RodCurveArgs {
    #[arg(long = "tau-min")]
    tau_min: Option<f64>,
    #[arg(long = "tau-max")]
    tau_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    modes: Option<usize>,
    #[arg(long)]
    format: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum IsoCmd {
    /// Quotient bound of a domain against the ball tone.
    Check(IsoCheckArgs),
}

#[derive(Args)]
struct IsoCheckArgs {
    /// Domain: a spec file path, or one of ball | ellipse | square.
    #[arg(long)]
    domain: Option<String>,
    /// Axis ratio for the built-in ellipse.
    #[arg(long)]
    aspect: Option<f64>,
    #[arg(long)]
    dim: Option<u32>,
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    format: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run every suite.
    #[arg(long, conflicts_with = "module")]
    all: bool,
    /// Run one module's suite (special_functions | ball_spectrum |
    /// rod_spectrum | isoperimetric | numerics_core).
    #[arg(long)]
    module: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    format: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// key=value defaults loaded from --config.
struct Defaults(BTreeMap<String, String>);

impl Defaults {
    fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        let mut map = BTreeMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| anyhow!("config line {line:?} is not key=value"))?;
                map.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        Ok(Self(map))
    }

    /// Explicit flag value, else config entry, else None.
    fn resolve<T: FromStr>(&self, flag: Option<T>, key: &str) -> anyhow::Result<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.0.get(key) {
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|_| anyhow!("config value {key}={raw} does not parse")),
            None => Ok(None),
        }
    }

    fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> anyhow::Result<T> {
        self.resolve(flag, key)?
            .ok_or_else(|| anyhow!("missing --{key} (and no config entry)"))
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Format {
    Json,
    Csv,
    Text,
}

fn parse_format(s: Option<String>, default: Format) -> anyhow::Result<Format> {
    match s.as_deref() {
        None => Ok(default),
        Some("json") => Ok(Format::Json),
        Some("csv") => Ok(Format::Csv),
        Some("text") => Ok(Format::Text),
        Some(other) => bail!("unknown format {other:?} (expected csv or json)"),
    }
}

fn atomic_write(path: &Path, content: &str) -> anyhow::Result<()> {
    let tmp = path.with_extension("tmp-write");
    std::fs::write(&tmp, content).with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path).with_context(|| format!("renaming onto {}", path.display()))?;
    Ok(())
}

fn emit(content: &str, output: Option<&Path>) -> anyhow::Result<()> {
    match output {
        Some(path) => atomic_write(path, content),
        None => {
            print!("{content}");
            std::io::stdout().flush()?;
            Ok(())
        }
    }
}

fn run() -> anyhow::Result<u8> {
    let cli = Cli::parse();
    let cfg = Defaults::load(cli.config.as_deref())?;

    match cli.command {
        Command::Bessel {
            cmd: BesselCmd::Eval(args),
        } => {
            let dim = cfg.require(args.dim, "dim")?;
            let l = cfg.require(args.l, "l")?;
            let z: f64 = cfg.require(args.z, "z")?;
            let idx = UltraIndex::new(dim, l)?;
            let value = match args.kind.as_str() {
                "j" => ultra_j(idx, args.deriv, z)?,
                "i" => ultra_i(idx, args.deriv, z)?,
                other => bail!("unknown kind {other:?} (expected j or i)"),
            };
            let format = parse_format(cfg.resolve(args.format, "format")?, Format::Text)?;
            let content = match format {
                Format::Json => format!(
                    "{{\n  \"kind\": \"{}\",\n  \"dim\": {},\n  \"l\": {},\n  \"deriv\": {},\n  \"z\": {},\n  \"value\": {}\n}}\n",
                    args.kind, dim, l, args.deriv, z, value
                ),
                _ => format!("{}\n", fmt_f64(value)),
            };
            emit(&content, args.output.as_deref())?;
            Ok(0)
        }

        Command::Ball {
            cmd: BallCmd::Tone(args),
        } => {
            let dim = cfg.require(args.dim, "dim")?;
            let tau = cfg.require(args.tau, "tau")?;
            let l = cfg.resolve(args.l, "l")?.unwrap_or(1);
            let tone = if l == 1 {
                ball::fundamental_tone(dim, tau)?
            } else {
                match ball::tone_for_order(dim, l, tau)? {
                    ball::OrderTone::Tone(t) => t,
                    ball::OrderTone::NoRootBelowCap { cap } => {
                        bail!("no l = {l} root below the search cap a = {cap}")
                    }
                }
            };
            let format = parse_format(cfg.resolve(args.format, "format")?, Format::Json)?;
            let content = match format {
                Format::Csv => curve_csv(&[ball::CurveRow {
                    tau: tone.tau,
                    a: tone.a,
                    b: tone.b,
                    omega: tone.omega,
                    gamma: tone.gamma,
                }]),
                _ => {
                    // Stable key order: tau, a, b, omega, gamma.
                    format!(
                        "{{\n  \"tau\": {},\n  \"a\": {},\n  \"b\": {},\n  \"omega\": {},\n  \"gamma\": {}\n}}\n",
                        tone.tau, tone.a, tone.b, tone.omega, tone.gamma
                    )
                }
            };
            emit(&content, args.output.as_deref())?;
            Ok(0)
        }

        Command::Ball {
            cmd: BallCmd::Curve(args),
        } => {
            let dim = cfg.require(args.dim, "dim")?;
            let lo: f64 = cfg.require(args.tau_min, "tau-min")?;
            let hi: f64 = cfg.require(args.tau_max, "tau-max")?;
            let steps: usize = cfg.resolve(args.steps, "steps")?.unwrap_or(50);
            if !(lo < hi) || steps < 2 {
                bail!("need tau-min < tau-max and steps >= 2");
            }
            let grid: Vec<f64> = (0..steps)
                .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
                .collect();
            let res = ball::curve(dim, &grid)?;
            for (tau, err) in &res.errors {
                eprintln!("warning: tau = {tau}: {err}");
            }
            let format = parse_format(cfg.resolve(args.format, "format")?, Format::Csv)?;
            let content = match format {
                Format::Json => serde_json::to_string_pretty(&res.rows)? + "\n",
                _ => curve_csv(&res.rows),
            };
            emit(&content, args.output.as_deref())?;
            Ok(0)
        }

        Command::Rod {
            cmd: RodCmd::Modes(args),
        } => {
            let tau = cfg.require(args.tau, "tau")?;
            let count: usize = cfg.resolve(args.modes, "modes")?.unwrap_or(4);
            let modes = rod::positive_modes(tau, count)?;
            let rows: Vec<rod::BranchRow> = modes
                .iter()
                .map(|m| rod::BranchRow {
                    tau: m.tau,
                    omega: m.omega,
                    parity: m.parity,
                    regime: m.regime,
                    a: m.a,
                    b: m.b,
                    coeff_ratio: m.coeff_ratio,
                    residual: m.residual,
                })
                .collect();
            let format = parse_format(cfg.resolve(args.format, "format")?, Format::Csv)?;
            let content = match format {
                Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
                _ => branch_csv(&rows),
            };
            emit(&content, args.output.as_deref())?;
            Ok(0)
        }

        Command::Rod {
            cmd: RodCmd::Curve(args),
        } => {
            let lo: f64 = cfg.require(args.tau_min, "tau-min")?;
            let hi: f64 = cfg.require(args.tau_max, "tau-max")?;
            let steps: usize = cfg.resolve(args.steps, "steps")?.unwrap_or(100);
            let modes: usize = cfg.resolve(args.modes, "modes")?.unwrap_or(4);
            let table = rod::branch_curves(lo, hi, steps, modes)?;
            for (tau, err) in &table.errors {
                eprintln!("warning: tau = {tau}: {err}");
            }
            let format = parse_format(cfg.resolve(args.format, "format")?, Format::Csv)?;
            let content = match format {
                Format::Json => serde_json::to_string_pretty(&table.rows)? + "\n",
                _ => branch_csv(&table.rows),
            };
            emit(&content, args.output.as_deref())?;
            Ok(0)
        }

        Command::Iso {
            cmd: IsoCmd::Check(args),
        } => {
            let dim = cfg.resolve(args.dim, "dim")?.unwrap_or(2);
            let tau = cfg.require(args.tau, "tau")?;
            let seed = cfg.resolve(args.seed, "seed")?.unwrap_or(0);
            let name: String = cfg.require(args.domain, "domain")?;
            let spec = resolve_domain(&name, dim, cfg.resolve(args.aspect, "aspect")?)?;
            let sampler = DirectionSampler::new(spec.d, seed, 1 << 14)?;
            let q = iso::quotient_bound(&spec, tau, &sampler)?;
            let is_ball = matches!(spec.kind, freeplate_core::DomainKind::Ball { .. });
            let status = if is_ball {
                if q.gap.abs() <= (1e-6 * q.tone_ball).max(q.eps_mc) {
                    "pass"
                } else {
                    "fail"
                }
            } else if q.gap > 3.0 * q.eps_mc {
                "pass"
            } else if q.gap.abs() <= 3.0 * q.eps_mc {
                "inconclusive"
            } else {
                "fail"
            };
            let content = format!(
                "{{\n  \"check\": \"quotient-bound\",\n  \"status\": \"{}\",\n  \"qhat\": {},\n  \"tone_ball\": {},\n  \"gap\": {},\n  \"eps_mc\": {},\n  \"center\": {:?}\n}}\n",
                status, q.qhat, q.tone_ball, q.gap, q.eps_mc, q.center
            );
            emit(&content, args.output.as_deref())?;
            Ok(if status == "fail" { 1 } else { 0 })
        }

        Command::Verify(args) => {
            let selection = if args.all {
                Selection::All
            } else {
                match cfg.resolve(args.module, "module")? {
                    Some(name) => name.parse::<Selection>()?,
                    None => Selection::All,
                }
            };
            let seed = cfg.resolve(args.seed, "seed")?.unwrap_or(0);
            let report = run_suite(selection, seed);
            for e in &report.entries {
                eprintln!(
                    "{:<34} {:<22} {:>12} ({} ms)",
                    e.check_id,
                    e.lemma,
                    match e.status {
                        freeplate_core::CheckStatus::Pass => "pass",
                        freeplate_core::CheckStatus::Fail => "FAIL",
                        freeplate_core::CheckStatus::Inconclusive => "inconclusive",
                    },
                    e.runtime_ms
                );
            }
            let format = parse_format(cfg.resolve(args.format, "format")?, Format::Json)?;
            let content = match format {
                Format::Csv => report.to_csv(),
                _ => report.to_json(),
            };
            emit(&content, args.output.as_deref())?;
            Ok(if report.overall_pass { 0 } else { 1 })
        }
    }
}

fn resolve_domain(name: &str, dim: u32, aspect: Option<f64>) -> anyhow::Result<DomainSpec> {
    if Path::new(name).is_file() {
        let text = std::fs::read_to_string(name)?;
        return Ok(iso::parse_domain_block(&text)?);
    }
    let spec = match name {
        "ball" => DomainSpec::ball(dim, 1.0)?,
        "ellipse" | "ellipsoid" => {
            let aspect = aspect.unwrap_or(2.0);
            if !(aspect > 0.0) {
                bail!("aspect must be positive");
            }
            // Aspect-ratio ellipsoid with unit generalized mean radius.
            let mut axes = vec![1.0; dim as usize];
            axes[0] = aspect;
            DomainSpec::ellipsoid(dim, axes)?
        }
        "square" | "box" => DomainSpec::cuboid(dim, vec![1.0; dim as usize])?,
        other => bail!("unknown domain {other:?} (expected a spec file or ball | ellipse | square)"),
    };
    Ok(spec)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

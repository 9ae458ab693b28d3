//! `qent`: categorical entropy of endofunctors on perfect complexes over
//! path algebras of acyclic quivers.

mod check;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qent_core::algebra::{builtin, load_quiver, PathAlgebra};
use qent_core::complexes::{ObjExpr, PerfComplex};
use qent_core::entropy::{duality_check, entropy_curve, Budget, Channel, GrowthRun, CHANNEL_TOLERANCE, DEFAULT_NMAX};
use qent_core::filtrations::{cot_filtration, delta_check, delta_hat, t_filtration};
use qent_core::functors::Functor;
use qent_core::scalars::{DynFp, FieldSpec, Scalar};
use qent_core::Rational;

const EXIT_WARNING: u8 = 2;

#[derive(Parser)]
#[command(name = "qent", version, about = "Categorical entropy of endofunctors of perfect derived categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Growth-rate table of the chosen channels over a grid of t.
    Entropy(EntropyArgs),
    /// t- or co-t-filtration profile of an object, as JSON.
    Filtration(ObjectArgs),
    /// Complexities δ̂_t and δ̌_t of an object at one t, as JSON.
    Delta {
        #[command(flatten)]
        object: ObjectArgs,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Compare hom_A of Φ at t with hom_B of Φ^-1 at -t.
    Duality(RunArgs),
    /// ST-triple audit plus the randomized invariant suite.
    Check {
        #[arg(long)]
        quiver: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Quiver JSON file, or one of a2, a3, kronecker, two_points.
    #[arg(long)]
    quiver: String,
    #[arg(long)]
    functor: String,
    #[arg(long)]
    generator: String,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    tmin: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    tmax: f64,
    #[arg(long, default_value_t = 0.5)]
    tstep: f64,
    #[arg(long, default_value_t = DEFAULT_NMAX)]
    nmax: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    output: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Accepted for reproducibility records; the computation is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Wall-clock cap in milliseconds; the series is truncated when reached.
    #[arg(long)]
    budget_ms: Option<u64>,
    #[arg(long)]
    max_summands: Option<usize>,
}

#[derive(Args)]
struct EntropyArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Comma-separated subset of delta_hat, delta_check, hom_A, hom_B.
    #[arg(long, default_value = "delta_hat,delta_check,hom_A,hom_B")]
    channels: String,
}

#[derive(Args)]
struct ObjectArgs {
    #[arg(long)]
    quiver: String,
    #[arg(long)]
    object: String,
    #[arg(long, value_enum, default_value_t = Kind::T)]
    kind: Kind,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Kind {
    T,
    Cot,
}

impl RunArgs {
    fn grid(&self) -> anyhow::Result<Vec<f64>> {
        if self.tstep.is_nan() || self.tstep <= 0.0 {
            bail!("--tstep must be positive");
        }
        if self.tmin > self.tmax {
            bail!("--tmin must not exceed --tmax");
        }
        if self.nmax < 2 {
            bail!("--nmax must be at least 2");
        }
        let steps = ((self.tmax - self.tmin) / self.tstep + 1e-9).floor() as usize;
        Ok((0..=steps).map(|i| self.tmin + i as f64 * self.tstep).collect())
    }

    fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(m) = self.max_summands {
            b.max_summands = m;
        }
        b.deadline = self.budget_ms.map(|ms| Instant::now() + Duration::from_millis(ms));
        b
    }

    fn emit(&self, text: &str) -> anyhow::Result<()> {
        match &self.out {
            Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn read_algebra(spec: &str) -> anyhow::Result<PathAlgebra> {
    let path = std::path::Path::new(spec);
    let mut alg = if path.exists() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        load_quiver(&text)?
    } else if let Some(alg) = builtin::by_name(spec) {
        alg
    } else {
        bail!("no quiver file or built-in quiver named '{spec}'");
    };
    if let Ok(p) = std::env::var("QENT_PRIME") {
        let p: u64 = p.trim().parse().context("QENT_PRIME must be an integer")?;
        alg.field = FieldSpec::prime(p)?;
    }
    Ok(alg)
}

fn object<F: Scalar>(alg: &PathAlgebra, text: &str) -> anyhow::Result<PerfComplex<F>> {
    Ok(ObjExpr::parse(text)?.resolve(alg)?)
}

fn parse_channels(text: &str) -> anyhow::Result<Vec<Channel>> {
    Ok(text.split(',').map(|c| c.trim().parse()).collect::<qent_core::Result<_>>()?)
}

/// Runs one command over the field `F`; returns the exit code.
fn execute<F: Scalar>(command: &Command, alg: &PathAlgebra) -> anyhow::Result<u8> {
    match command {
        Command::Entropy(args) => {
            let run = &args.run;
            let channels = parse_channels(&args.channels)?;
            let grid = run.grid()?;
            let f = Functor::<F>::parse(&run.functor, alg)?;
            let g = object::<F>(alg, &run.generator)?;
            let mut growth = GrowthRun::new(alg, f, &g)?;
            let report = entropy_curve(&mut growth, &grid, run.nmax, &channels, &run.budget())?;
            let text = match run.output {
                Format::Csv => output::curve_csv(&report.rows)?,
                Format::Json => output::curve_json(&report)?,
            };
            run.emit(&text)?;
            if report.disagrees() {
                eprintln!("warning: channels disagree by more than {CHANNEL_TOLERANCE}");
                return Ok(EXIT_WARNING);
            }
            Ok(0)
        }
        Command::Duality(run) => {
            let grid = run.grid()?;
            let f = Functor::<F>::parse(&run.functor, alg)?;
            let g = object::<F>(alg, &run.generator)?;
            let rows = duality_check(alg, &f, &g, &grid, run.nmax, &run.budget())?;
            let text = match run.output {
                Format::Csv => output::duality_csv(&rows)?,
                Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
            };
            run.emit(&text)?;
            if rows.iter().any(|r| r.gap > CHANNEL_TOLERANCE) {
                eprintln!("warning: duality gap above {CHANNEL_TOLERANCE}");
                return Ok(EXIT_WARNING);
            }
            Ok(0)
        }
        Command::Filtration(o) => {
            let x = object::<F>(alg, &o.object)?;
            let profile = match o.kind {
                Kind::T => t_filtration(alg, &x),
                Kind::Cot => cot_filtration(&x)?,
            };
            println!("{}", serde_json::to_string(&profile)?);
            Ok(0)
        }
        Command::Delta { object: o, t } => {
            let x = object::<F>(alg, &o.object)?;
            let value = match o.kind {
                Kind::T => delta_hat(alg, &x, *t),
                Kind::Cot => delta_check(&x, *t)?,
            };
            println!("{}", serde_json::to_string(&value)?);
            Ok(0)
        }
        Command::Check { seed, samples, .. } => {
            let outcomes = check::run_suite::<F>(alg, *seed, *samples);
            let mut failed = false;
            for o in &outcomes {
                println!("{o}");
                failed |= !o.passed;
            }
            Ok(u8::from(failed))
        }
    }
}

fn quiver_arg(command: &Command) -> &str {
    match command {
        Command::Entropy(a) => &a.run.quiver,
        Command::Duality(a) => &a.quiver,
        Command::Filtration(o) | Command::Delta { object: o, .. } => &o.quiver,
        Command::Check { quiver, .. } => quiver,
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<u8> {
    let alg = read_algebra(quiver_arg(&cli.command))?;
    match alg.field {
        FieldSpec::Prime(p) => {
            DynFp::set_modulus(p)?;
            execute::<DynFp>(&cli.command, &alg)
        }
        FieldSpec::Rational => execute::<Rational>(&cli.command, &alg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

//! Command-line front end behind the `bcl` binary.
//!
//! Exit codes: 0 success, 1 failed assertion, 2 usage or spec error,
//! 3 solver non-convergence.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::constants::{self, ConstantEstimate};
use crate::error::{Error, Result};
use crate::report::{self, Document, Meta, Payload};
use crate::solvers::{PackingMode, SolverConfig};
use crate::spaces::{polyhedral, NormedSpace, SpaceSpec, Subspace};
use crate::verify::{self, LipschitzConstant, SweepSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bcl", version, about = "Separation, covering and James-type constants of finite-dimensional normed spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate one constant of a space (or the gap between two subspaces).
    Compute(ComputeArgs),
    /// Run a verification suite; exits 1 if any asserted row fails.
    Verify(VerifyArgs),
    /// Evaluate an experiment over a one-parameter grid.
    Sweep(SweepArgs),
    /// Re-emit a saved document as JSON or CSV, optionally plotting a sweep.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub iters: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Use the smaller exploratory budget.
    #[arg(long)]
    pub quick: bool,
}

impl SolverArgs {
    pub fn config(&self) -> Result<SolverConfig> {
        let mut c = if self.quick { SolverConfig::quick() } else { SolverConfig::default() };
        c.seed = self.seed;
        if let Some(r) = self.restarts {
            c.restarts = r;
            c.covering.restarts = r.min(c.covering.restarts.max(1));
        }
        if let Some(i) = self.iters {
            c.max_iters = i;
        }
        if let Some(t) = self.tol {
            c.tol = t;
        }
        c.validate()?;
        Ok(c)
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; a `<out>.meta.json` with wall times is written next to it. Defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstantArg {
    Kottman,
    KottmanSymmetric,
    KottmanDisjoint,
    Thickness,
    Entropy,
    James,
    GJames,
    Gap,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long, value_enum)]
    pub constant: ConstantArg,
    /// Space spec JSON file.
    #[arg(long)]
    pub space: Option<PathBuf>,
    /// First subspace spec for `--constant gap`.
    #[arg(long)]
    pub space_m: Option<PathBuf>,
    /// Second subspace spec for `--constant gap`.
    #[arg(long)]
    pub space_l: Option<PathBuf>,
    /// Number of points or centers (N).
    #[arg(long)]
    pub points: Option<usize>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    LpValues,
    Duality,
    Interpolation,
    Lipschitz,
    Twisted,
    SumFormulas,
    Identities,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Space spec files. duality and identities: the spaces to test;
    /// interpolation: X0,X1; sum-formulas: lambda,X,Y; lipschitz: one ambient.
    #[arg(long, value_delimiter = ',')]
    pub spaces: Vec<PathBuf>,
    /// lp-values: exponent grid (`inf` allowed). twisted and lipschitz: single base exponent.
    #[arg(long, value_delimiter = ',', value_parser = parse_exponent)]
    pub p: Vec<f64>,
    /// lp-values: dimension grid. twisted: half the base dimension.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub eps: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub theta: Vec<f64>,
    /// lipschitz: rotation angles of planes in 4-space, compared with the coordinate plane and each other.
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<f64>,
    /// lipschitz: constants to compare.
    #[arg(long, value_delimiter = ',', value_enum)]
    pub constants: Vec<LipschitzArg>,
    /// interpolation: compare plain instead of disjoint Kottman estimates.
    #[arg(long)]
    pub plain: bool,
    #[arg(long)]
    pub points: Option<usize>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LipschitzArg {
    Kottman,
    Thickness,
    James,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Sweep spec JSON file.
    #[arg(long)]
    pub spec: PathBuf,
    /// Also write an SVG line chart.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Document previously written by compute, verify or sweep.
    #[arg(long)]
    pub input: PathBuf,
    /// SVG line chart of a sweep document.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_exponent(s: &str) -> std::result::Result<f64, String> {
    match s.trim() {
        "inf" | "infinity" | "Infinity" => Ok(f64::INFINITY),
        t => match t.parse::<f64>() {
            Ok(p) if p >= 1.0 => Ok(p),
            Ok(p) => Err(format!("exponent {p} must be >= 1")),
            Err(e) => Err(format!("`{t}`: {e}")),
        },
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonConvergence(_) => EXIT_NONCONVERGENCE,
        _ => EXIT_USAGE,
    }
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("BCL_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Error::spec("BCL_THREADS", format!("expected a positive integer, got `{v}`")))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn execute(command: &Command) -> Result<i32> {
    let started = Instant::now();
    let (name, doc, output) = match command {
        Command::Compute(a) => ("compute", compute(a)?, &a.output),
        Command::Verify(a) => ("verify", verify_suite(a)?, &a.output),
        Command::Sweep(a) => {
            let doc = sweep(a)?;
            if let (Some(path), Payload::Sweep(t)) = (&a.plot, &doc.payload) {
                report::write_text(path, &report::sweep_svg(t)?)?;
            }
            ("sweep", doc, &a.output)
        }
        Command::Report(a) => {
            let text = read_file(&a.input, "--input")?;
            let doc = Document::from_json(&text)?;
            if let Some(path) = &a.plot {
                match &doc.payload {
                    Payload::Sweep(t) => report::write_text(path, &report::sweep_svg(t)?)?,
                    _ => return Err(Error::spec("--plot", "only sweep documents can be plotted")),
                }
            }
            ("report", doc, &a.output)
        }
    };
    emit(&doc, output, name, started.elapsed().as_secs_f64())?;
    if let Payload::Reports(reports) = &doc.payload {
        for r in reports {
            for row in r.failures() {
                eprintln!("FAIL {}: {} ({} {} {}, slack {})", r.suite, row.param, row.lhs, row.relation.symbol(), row.rhs, row.slack);
            }
        }
    }
    Ok(if doc.passed() { EXIT_OK } else { EXIT_ASSERTION })
}

fn emit(doc: &Document, output: &OutputArgs, command: &str, wall: f64) -> Result<()> {
    let text = match output.format {
        Format::Json => doc.to_json()?,
        Format::Csv => doc.to_csv()?,
    };
    match &output.out {
        Some(path) => {
            report::write_text(path, &text)?;
            let meta = Meta::new(command, wall, doc);
            report::write_text(&report::meta_path(path), &(serde_json::to_string_pretty(&meta)? + "\n"))?;
        }
        None => {
            print!("{text}");
            eprintln!("wall time: {wall:.2}s");
        }
    }
    Ok(())
}

fn read_file(path: &Path, field: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::spec(field, format!("cannot read {}: {e}", path.display())))
}

/// Reads a space spec, attributing any failure to the flag that named the file.
pub fn load_spec(path: &Path, field: &str) -> Result<SpaceSpec> {
    let text = read_file(path, field)?;
    let spec: SpaceSpec = serde_json::from_str(&text)
        .map_err(|e| Error::spec(field, format!("{}: {e}", path.display())))?;
    spec.validate().map_err(|e| match e {
        Error::InvalidSpec { field: f, reason } => Error::spec(f, format!("{reason} (in {field} {})", path.display())),
        other => other,
    })?;
    Ok(spec)
}

fn require<T: Copy>(v: Option<T>, field: &str, what: &str) -> Result<T> {
    v.ok_or_else(|| Error::spec(field, format!("required for {what}")))
}

fn compute(a: &ComputeArgs) -> Result<Document> {
    let config = a.solver.config()?;
    let estimates: Vec<ConstantEstimate> = if a.constant == ConstantArg::Gap {
        let (Some(pm), Some(pl)) = (&a.space_m, &a.space_l) else {
            return Err(Error::spec(
                if a.space_m.is_none() { "--space-m" } else { "--space-l" },
                "required for --constant gap",
            ));
        };
        let m = as_subspace(&load_spec(pm, "--space-m")?)?;
        let l = as_subspace(&load_spec(pl, "--space-l")?)?;
        if !m.same_ambient(&l) {
            return Err(Error::spec("--space-l", "ambient differs from --space-m"));
        }
        vec![constants::gap(&m, &l, &config)?]
    } else {
        let path = a
            .space
            .as_ref()
            .ok_or_else(|| Error::spec("--space", "required unless --constant gap"))?;
        let space = NormedSpace::build(&load_spec(path, "--space")?)?;
        let what = "this constant";
        match a.constant {
            ConstantArg::Kottman => vec![constants::kottman(&space, require(a.points, "--points", what)?, &PackingMode::Plain, &config)?],
            ConstantArg::KottmanSymmetric => {
                vec![constants::kottman(&space, require(a.points, "--points", what)?, &PackingMode::Symmetric, &config)?]
            }
            ConstantArg::KottmanDisjoint => vec![constants::kottman(
                &space,
                require(a.points, "--points", what)?,
                &PackingMode::disjoint_auto(),
                &config,
            )?],
            ConstantArg::Thickness => vec![constants::thickness(&space, require(a.points, "--points", what)?, &config)?],
            ConstantArg::Entropy => vec![constants::entropy_covering(&space, require(a.points, "--points", what)?, &config)?],
            ConstantArg::James | ConstantArg::GJames => {
                let (j, g) = constants::james_constants(&space, &config)?;
                if a.constant == ConstantArg::James {
                    vec![j, g]
                } else {
                    vec![g, j]
                }
            }
            ConstantArg::Gap => unreachable!(),
        }
    };
    Ok(Document::new(Payload::Estimates(estimates)))
}

/// A subspace spec as is; any other spec as the whole space.
fn as_subspace(spec: &SpaceSpec) -> Result<Subspace> {
    match spec {
        SpaceSpec::Subspace { .. } => Subspace::from_spec(spec),
        other => {
            let n = other.dim()?;
            Subspace::new(other, (0..n).map(|i| crate::linalg::unit(n, i)).collect())
        }
    }
}

fn load_all(paths: &[PathBuf]) -> Result<Vec<SpaceSpec>> {
    paths.iter().map(|p| load_spec(p, "--spaces")).collect()
}

fn exactly<T: Clone>(v: &[T], k: usize, field: &str, what: &str) -> Result<Vec<T>> {
    if v.len() != k {
        return Err(Error::spec(field, format!("{what} takes exactly {k} value(s), got {}", v.len())));
    }
    Ok(v.to_vec())
}

fn or_default<T: Clone>(v: &[T], default: &[T]) -> Vec<T> {
    if v.is_empty() {
        default.to_vec()
    } else {
        v.to_vec()
    }
}

fn verify_suite(a: &VerifyArgs) -> Result<Document> {
    let config = a.solver.config()?;
    let inf = f64::INFINITY;
    let report = match a.suite {
        Suite::LpValues => {
            let ps = or_default(&a.p, &[1.0, 1.5, 2.0, 3.0, inf]);
            let ns = or_default(&a.n, &[4, 5, 6, 7, 8]);
            verify::check_lp_values(&ps, &ns, &config)?
        }
        Suite::Duality => {
            let spaces = if a.spaces.is_empty() {
                vec![
                    SpaceSpec::lp(4, 3.0),
                    SpaceSpec::polyhedral(polyhedral::hexagon(0.3)),
                    SpaceSpec::weighted_lp(3, 2.0, vec![1.0, 2.0, 0.5]),
                ]
            } else {
                load_all(&a.spaces)?
            };
            verify::check_duality(&spaces, &config)?
        }
        Suite::Interpolation => {
            let (x0, x1) = if a.spaces.is_empty() {
                (SpaceSpec::lp(6, 1.0), SpaceSpec::lp(6, inf))
            } else {
                let s = load_all(&exactly(&a.spaces, 2, "--spaces", "interpolation")?)?;
                (s[0].clone(), s[1].clone())
            };
            let thetas = or_default(&a.theta, &[0.0, 0.25, 0.5, 0.75, 1.0]);
            let n = a.points.unwrap_or(3);
            verify::check_interpolation(&x0, &x1, &thetas, n, !a.plain, &config)?
        }
        Suite::Lipschitz => {
            let ambient = if a.spaces.is_empty() {
                let p = exactly(&or_default(&a.p, &[2.0]), 1, "--p", "lipschitz")?[0];
                SpaceSpec::lp(4, p)
            } else {
                load_all(&exactly(&a.spaces, 1, "--spaces", "lipschitz")?)?.remove(0)
            };
            if ambient.dim()? != 4 {
                return Err(Error::spec("--spaces", "lipschitz rotates planes in a 4-dimensional ambient"));
            }
            let alphas = or_default(&a.alpha, &[0.05, 0.1, 0.2]);
            let which: Vec<LipschitzConstant> = or_default(
                &a.constants,
                &[LipschitzArg::Kottman, LipschitzArg::Thickness, LipschitzArg::James],
            )
            .into_iter()
            .map(|c| match c {
                LipschitzArg::Kottman => LipschitzConstant::Kottman,
                LipschitzArg::Thickness => LipschitzConstant::Thickness,
                LipschitzArg::James => LipschitzConstant::James,
            })
            .collect();
            let family = verify::rotated_planes(&alphas);
            verify::check_lipschitz(&ambient, &family, a.points.unwrap_or(3), &which, &config)?
        }
        Suite::Twisted => {
            let n = exactly(&or_default(&a.n, &[3]), 1, "--n", "twisted")?[0];
            let p = exactly(&or_default(&a.p, &[1.0]), 1, "--p", "twisted")?[0];
            let eps = or_default(&a.eps, &[0.5, 0.1, 0.01]);
            verify::check_twisted(n, p, &eps, a.points.unwrap_or(4), &config)?
        }
        Suite::SumFormulas => {
            let s = if a.spaces.is_empty() {
                vec![SpaceSpec::lp(3, 1.0), SpaceSpec::lp(3, inf), SpaceSpec::lp(2, 1.0)]
            } else {
                load_all(&exactly(&a.spaces, 3, "--spaces", "sum-formulas")?)?
            };
            verify::check_sum_formulas(&s[0], &s[1], &s[2], a.points.unwrap_or(3), &config)?
        }
        Suite::Identities => {
            let spaces = if a.spaces.is_empty() {
                [1.0, 1.2, 2.0, 4.0, inf].iter().map(|&p| SpaceSpec::lp(2, p)).collect()
            } else {
                load_all(&a.spaces)?
            };
            verify::check_identities(&spaces, &config)?
        }
    };
    Ok(Document::new(Payload::Reports(vec![report])))
}

fn sweep(a: &SweepArgs) -> Result<Document> {
    let config = a.solver.config()?;
    let text = read_file(&a.spec, "--spec")?;
    let spec: SweepSpec =
        serde_json::from_str(&text).map_err(|e| Error::spec("--spec", format!("{}: {e}", a.spec.display())))?;
    let table = verify::run_sweep(&spec, &config)?;
    Ok(Document::new(Payload::Sweep(table)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exponent_lists() {
        let cli = Cli::try_parse_from(["bcl", "verify", "--suite", "lp-values", "--p", "1,2,inf", "--n", "4"]).unwrap();
        let Command::Verify(v) = cli.command else { panic!() };
        assert_eq!(v.p, vec![1.0, 2.0, f64::INFINITY]);
        assert_eq!(v.solver.seed, 42);
    }

    #[test]
    fn unknown_suite_is_a_usage_error() {
        assert_eq!(run(["bcl", "verify", "--suite", "nope"]), EXIT_USAGE);
    }

    #[test]
    fn exit_codes_by_error() {
        assert_eq!(exit_code(&Error::NonConvergence("x".into())), EXIT_NONCONVERGENCE);
        assert_eq!(exit_code(&Error::spec("p", "bad")), EXIT_USAGE);
    }
}

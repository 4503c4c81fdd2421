//! `floydtree`: distance, classification and Lipschitz checks on Floyd
//! compactifications of regular trees.
//!
//! Exit codes: 0 success, 2 malformed input or usage, 3 well-formed but
//! invalid input, 4 tolerance unattainable, 5 output not writable. Nothing is
//! printed to stdout unless the command succeeds.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use floyd_core::error::{EstimateError, FloydError};
use floyd_core::floyd::{
    comparability, eta_inf, is_lipschitz_compactification, reconstruct_floyd, EdgeLengthAssignment,
    FloydMetric,
};
use floyd_core::format::{
    parse_assignment, parse_aut, parse_floyd, parse_point, parse_rational, LoadError,
};
use floyd_core::lipschitz::{empirical_bilipschitz, SampleSpec};
use floyd_core::svg::ball_svg;
use floyd_core::{AutError, AutWord, MetricSpec, Point, Rational};

const DEFAULT_TOL: &str = "1/1000000";

#[derive(Debug, Parser)]
#[command(
    name = "floydtree",
    version,
    about = "Exact Floyd-metric computations on regular trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct TreeArg {
    /// Floyd function file
    #[arg(long = "tree", value_name = "FILE")]
    tree: PathBuf,
}

#[derive(Debug, Args)]
struct AutArgs {
    #[command(flatten)]
    tree: TreeArg,
    /// Automorphism file
    #[arg(long = "aut", value_name = "FILE")]
    aut: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Floyd distance between two points
    Dist {
        #[command(flatten)]
        tree: TreeArg,
        p: String,
        q: String,
        #[arg(long, default_value = DEFAULT_TOL)]
        tol: String,
    },
    /// Elliptic, inversion or translation
    Classify(AutArgs),
    /// Translation length
    Tlen(AutArgs),
    /// Depth-N vertex on the ray from the root to the attracting end of the axis
    Axis {
        #[command(flatten)]
        args: AutArgs,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// eta* and the Lipschitz verdict for a Floyd function
    Check(TreeArg),
    /// Comparability of two Floyd functions (pass --tree twice)
    Compare {
        #[arg(long = "tree", value_name = "FILE", num_args = 1, required = true)]
        trees: Vec<PathBuf>,
    },
    /// Sampled bilipschitz ratios of an automorphism
    Estimate {
        #[command(flatten)]
        args: AutArgs,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        pre: usize,
        #[arg(long, default_value_t = 2)]
        per: usize,
        #[arg(long, default_value = DEFAULT_TOL)]
        tol: String,
    },
    /// Recover h from an edge-length assignment file, or from the assignment a
    /// tree file induces up to --depth
    Reconstruct {
        assignment: Option<PathBuf>,
        #[arg(long = "tree", value_name = "FILE")]
        tree: Option<PathBuf>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// SVG picture of the ball of combinatorial radius --depth
    BallSvg {
        #[command(flatten)]
        tree: TreeArg,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = DEFAULT_TOL)]
        tol: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Invalid(String),
    Tolerance(String),
    Output(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Invalid(_) => 3,
            Failure::Tolerance(_) => 4,
            Failure::Output(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m)
            | Failure::Invalid(m)
            | Failure::Tolerance(m)
            | Failure::Output(m) => m,
        }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Parse(p) => Failure::Parse(p.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<FloydError> for Failure {
    fn from(e: FloydError) -> Self {
        match e {
            FloydError::ToleranceUnattainable { .. } => Failure::Tolerance(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<AutError> for Failure {
    fn from(e: AutError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<EstimateError> for Failure {
    fn from(e: EstimateError) -> Self {
        match e {
            EstimateError::Floyd(f) => f.into(),
            EstimateError::Unresolved(..) => Failure::Tolerance(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn load_tree(path: &Path) -> Result<MetricSpec, Failure> {
    parse_floyd(&read(path)?).map_err(|e| with_path(path, e.into()))
}

fn load_aut(args: &AutArgs) -> Result<(MetricSpec, AutWord), Failure> {
    let spec = load_tree(&args.tree.tree)?;
    let g = parse_aut(&read(&args.aut)?, spec.tree).map_err(|e| with_path(&args.aut, e.into()))?;
    Ok((spec, g))
}

fn with_path(path: &Path, f: Failure) -> Failure {
    let msg = format!("{}: {}", path.display(), f.message());
    match f {
        Failure::Parse(_) => Failure::Parse(msg),
        Failure::Invalid(_) => Failure::Invalid(msg),
        Failure::Tolerance(_) => Failure::Tolerance(msg),
        Failure::Output(_) => Failure::Output(msg),
    }
}

fn tolerance(s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(|e| Failure::Parse(format!("--tol: {e}")))
}

fn point(spec: &MetricSpec, s: &str) -> Result<Point, Failure> {
    let p = parse_point(s).map_err(|e| Failure::Parse(e.to_string()))?;
    spec.tree
        .check_point(&p)
        .map_err(|e| Failure::Invalid(format!("{s}: {e}")))?;
    Ok(p)
}

fn execute(command: Command) -> Result<String, Failure> {
    match command {
        Command::Dist { tree, p, q, tol } => {
            let spec = load_tree(&tree.tree)?;
            let (p, q) = (point(&spec, &p)?, point(&spec, &q)?);
            let metric = FloydMetric::new(spec, tolerance(&tol)?)?;
            Ok(format!("{}\n", metric.distance(&p, &q)?))
        }
        Command::Classify(args) => {
            let (_, g) = load_aut(&args)?;
            Ok(format!("{}\n", g.classify()?))
        }
        Command::Tlen(args) => {
            let (_, g) = load_aut(&args)?;
            Ok(format!("T = {}\n", g.translation_length()?))
        }
        Command::Axis { args, depth } => {
            let (_, g) = load_aut(&args)?;
            Ok(format!("{}\n", g.axis_ray_prefix(depth)?))
        }
        Command::Check(tree) => {
            let spec = load_tree(&tree.tree)?;
            let eta = eta_inf(&spec.h);
            let verdict = if is_lipschitz_compactification(&spec.h) {
                "yes"
            } else {
                "no"
            };
            Ok(format!("eta* = {}\nlipschitz = {verdict}\n", eta.eta_star))
        }
        Command::Compare { trees } => {
            let [a, b] = trees.as_slice() else {
                return Err(Failure::Parse(format!(
                    "compare takes exactly two --tree files, got {}",
                    trees.len()
                )));
            };
            let (a, b) = (load_tree(a)?, load_tree(b)?);
            Ok(match comparability(&a.h, &b.h) {
                Some(c) => format!("comparable C = {}\n", c.constant),
                None => "not comparable\n".to_string(),
            })
        }
        Command::Estimate {
            args,
            depth,
            pre,
            per,
            tol,
        } => {
            let (spec, g) = load_aut(&args)?;
            let tol = tolerance(&tol)?;
            let sample = SampleSpec::new(depth, pre, per);
            Ok(format!(
                "{}\n",
                empirical_bilipschitz(&g, &spec, &sample, &tol)?
            ))
        }
        Command::Reconstruct {
            assignment,
            tree,
            depth,
        } => {
            let a = match (assignment, tree, depth) {
                (Some(path), None, None) => {
                    parse_assignment(&read(&path)?).map_err(|e| with_path(&path, e.into()))?
                }
                (None, Some(path), Some(depth)) => {
                    let spec = load_tree(&path)?;
                    EdgeLengthAssignment::induced(spec.tree, &spec.h, depth)
                }
                _ => {
                    return Err(Failure::Parse(
                        "reconstruct takes either an assignment file or --tree FILE --depth N"
                            .to_string(),
                    ))
                }
            };
            let h = reconstruct_floyd(&a)?;
            Ok(h.iter()
                .enumerate()
                .map(|(r, x)| format!("h({r}) = {x}\n"))
                .collect())
        }
        Command::BallSvg {
            tree,
            depth,
            out,
            tol,
        } => {
            let spec = load_tree(&tree.tree)?;
            let svg = ball_svg(&spec, depth, &tolerance(&tol)?)?;
            fs::write(&out, svg).map_err(|e| Failure::Output(format!("{}: {e}", out.display())))?;
            Ok(String::new())
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(cli.command) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message()),
        },
    }
}

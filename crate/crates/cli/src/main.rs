use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use morera_core::analysis::{
    self, test_family, Classification, Report, TheoremConfig, Tolerances,
};
use morera_core::expr::{parse, parse_complex, EvalError, Expr};
use morera_core::extension::{CircleAnalysis, MoreraOptions};
use morera_core::fiber::{fiber_curve, region_contains, FiberField, FiberOptions};
use morera_core::geometry::{Circle, Complex, PencilConfig};
use morera_core::grid::{PolarGrid, GRID_TOL_INFLATION};
use morera_core::oracle::{Oracle, Rotated};
use morera_core::zoo::{builtin, ZooEntry};
use morera_core::Error;
use serde_json::json;

const EXIT_FAILURE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

/// Numerical tests for holomorphic extension from circle families in the unit disc.
#[derive(Parser)]
#[command(name = "morera", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Morera test on a single circle.
    TestCircle {
        #[command(flatten)]
        common: Common,
        /// Circle center (e.g. "0.1-0.2i"); requires --radius.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "t")]
        center: Option<String>,
        #[arg(long, requires = "center")]
        radius: Option<f64>,
        /// Pencil member with parameter t through --p, instead of --center/--radius.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<f64>,
    },
    /// Test every grid circle of each family and report per-circle results.
    Sweep {
        #[command(flatten)]
        common: Common,
    },
    /// Fiber curves M_z as polyline CSV (normalized frame, pencil through -1).
    Fiber {
        #[command(flatten)]
        common: Common,
        /// Base points; repeat or separate with commas.
        #[arg(long = "z", required = true, value_delimiter = ',', allow_hyphen_values = true)]
        zs: Vec<String>,
        /// Polyline points per piece.
        #[arg(long, default_value_t = 64)]
        points: usize,
    },
    /// Cauchy transform Θ(z, W) over a rectangular W-grid, as CSV.
    Theta {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// "re_min,re_max,im_min,im_max"; defaults to a box around the fiber curve.
        #[arg(long, allow_hyphen_values = true)]
        w_box: Option<String>,
        /// Grid points per axis.
        #[arg(long, default_value_t = 21)]
        w_points: usize,
        /// Quadrature nodes per piece of M_z.
        #[arg(long, default_value_t = 512)]
        nodes: usize,
    },
    /// Full pipeline: family sweeps, cross-consistency and the dbar oracle.
    Verdict {
        #[command(flatten)]
        common: Common,
    },
    /// Run a function under a valid and a hypothesis-violating configuration.
    DemoSharpness {
        #[command(flatten)]
        common: Common,
        /// Radius floor applied to both families in the violating run.
        #[arg(long, default_value_t = 0.6)]
        floor: f64,
    },
    /// Sample a function on a polar grid and write it as CSV (r,theta,re,im).
    ExportGrid {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 41)]
        n_r: usize,
        #[arg(long, default_value_t = 128)]
        n_theta: usize,
    },
}

#[derive(Args, Clone)]
struct Common {
    /// Built-in function name.
    #[arg(long)]
    builtin: Option<String>,
    /// Function as an expression in z (and conj(z) / zbar).
    #[arg(long)]
    expr: Option<String>,
    /// Polar-grid CSV file with rows r,theta,re,im.
    #[arg(long)]
    grid: Option<PathBuf>,
    /// Boundary point of the pencil.
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    p: String,
    /// Radius floor of the pencil in the main configuration.
    #[arg(long, default_value_t = 0.25)]
    tau: f64,
    /// Floor of the centered family (0 = all centered circles).
    #[arg(long, default_value_t = 0.0)]
    r_min: f64,
    /// Radius floor of the pencil; overrides --tau.
    #[arg(long)]
    rho: Option<f64>,
    /// Use two pencils, through --p and this second boundary point.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "r_min")]
    two_point: Option<String>,
    /// Radius floor of the second pencil (defaults to the first).
    #[arg(long, requires = "two_point")]
    rho2: Option<f64>,
    /// Circles per family.
    #[arg(long, default_value_t = analysis::DEFAULT_GRID_SIZE)]
    grid_size: usize,
    #[arg(long, default_value_t = morera_core::extension::DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = morera_core::extension::MAX_SAMPLES)]
    max_samples: usize,
    #[arg(long, default_value_t = morera_core::extension::DEFAULT_MORERA_TOL)]
    morera_tol: f64,
    #[arg(long, default_value_t = analysis::DEFAULT_CROSS_TOL)]
    cross_tol: f64,
    #[arg(long, default_value_t = analysis::DEFAULT_DBAR_TOL)]
    dbar_tol: f64,
    /// Output file (written atomically); standard output if omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::MoreraFailure { .. } => EXIT_FAILURE,
            Error::Inconclusive { .. } | Error::NoConvergence { .. } => EXIT_INCONCLUSIVE,
            _ => EXIT_CONFIG,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

enum Source {
    Builtin(ZooEntry),
    Expr(Expr),
    Grid(PolarGrid),
}

impl Oracle for Source {
    fn eval(&self, z: Complex) -> Result<Complex, EvalError> {
        match self {
            Source::Builtin(e) => e.eval(z),
            Source::Expr(e) => e.eval(z),
            Source::Grid(g) => g.eval(z),
        }
    }
}

struct Function {
    source: Source,
    label: String,
    warnings: Vec<String>,
}

impl Function {
    fn tol_factor(&self) -> f64 {
        match self.source {
            Source::Grid(_) => GRID_TOL_INFLATION,
            _ => 1.0,
        }
    }
}

fn complex_arg(name: &str, text: &str) -> CliResult<Complex> {
    let v = parse_complex(text).map_err(|e| CliError::config(format!("--{name} {text:?}: {e}")))?;
    // "-1" parses as -(1 + 0i); drop the signed zero so reports read cleanly.
    Ok(Complex::new(v.re + 0.0, v.im + 0.0))
}

impl Common {
    fn function(&self) -> CliResult<Function> {
        let given = [self.builtin.is_some(), self.expr.is_some(), self.grid.is_some()];
        if given.iter().filter(|g| **g).count() != 1 {
            return Err(CliError::config(
                "give exactly one function source: --builtin, --expr or --grid",
            ));
        }
        let mut warnings = Vec::new();
        if let Some(name) = &self.builtin {
            let entry = builtin(name)?;
            return Ok(Function {
                source: Source::Builtin(entry),
                label: format!("builtin:{name}"),
                warnings,
            });
        }
        if let Some(text) = &self.expr {
            let e = parse(text).map_err(|e| CliError::config(format!("--expr {text:?}: {e}")))?;
            if e.has_branch_power() {
                warnings.push(
                    "expression uses a non-integer power (principal branch); continuity on the disc is not guaranteed".into(),
                );
            }
            return Ok(Function {
                source: Source::Expr(e),
                label: format!("expr:{text}"),
                warnings,
            });
        }
        let path = self.grid.as_ref().expect("one source is present");
        let file = std::fs::File::open(path)
            .map_err(|e| CliError::config(format!("--grid {}: {e}", path.display())))?;
        let grid = PolarGrid::read_csv(std::io::BufReader::new(file))?;
        warnings.push(format!(
            "grid data: Morera tolerance inflated by {GRID_TOL_INFLATION} for interpolation error"
        ));
        Ok(Function {
            source: Source::Grid(grid),
            label: format!("grid:{}", path.display()),
            warnings,
        })
    }

    fn pencil_floor(&self) -> f64 {
        self.rho.unwrap_or(self.tau)
    }

    fn pencil(&self) -> CliResult<PencilConfig> {
        Ok(PencilConfig::new(complex_arg("p", &self.p)?, self.pencil_floor())?)
    }

    fn theorem(&self, f: &Function) -> CliResult<TheoremConfig> {
        let p = complex_arg("p", &self.p)?;
        let rho = self.pencil_floor();
        let mut cfg = match &self.two_point {
            Some(text) => {
                let p2 = complex_arg("two-point", text)?;
                TheoremConfig::two_pencils(p, rho, p2, self.rho2.unwrap_or(rho))?
            }
            None => TheoremConfig::centered_and_pencil(p, self.r_min, rho)?,
        }
        .with_grid_size(self.grid_size);
        cfg.samples = self.samples;
        cfg.max_samples = self.max_samples;
        cfg.tolerances = Tolerances {
            morera: self.morera_tol * f.tol_factor(),
            cross: self.cross_tol,
            dbar: self.dbar_tol,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn morera(&self, f: &Function) -> MoreraOptions {
        MoreraOptions {
            samples: self.samples,
            max_samples: self.max_samples,
            tol: self.morera_tol * f.tol_factor(),
        }
    }

    fn write(&self, text: &str) -> CliResult<()> {
        match &self.out {
            Some(path) => write_atomic(path, text.as_bytes()),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())
                    .and_then(|_| out.flush())
                    .map_err(|e| CliError::config(format!("writing output: {e}")))
            }
        }
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let io = |e: std::io::Error| CliError::config(format!("writing {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn to_json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialization cannot fail");
    s.push('\n');
    s
}

fn exit_for(c: Classification) -> u8 {
    match c {
        Classification::HolomorphicConsistent => 0,
        Classification::MoreraFailure | Classification::Inconsistent => EXIT_FAILURE,
        Classification::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn test_circle(
    common: &Common,
    center: &Option<String>,
    radius: Option<f64>,
    t: Option<f64>,
) -> CliResult<u8> {
    let f = common.function()?;
    let (circle, parameter) = match (center, radius, t) {
        (Some(c), Some(r), None) => (Circle::new(complex_arg("center", c)?, r)?, None),
        (None, None, Some(t)) => (common.pencil()?.circle(t)?, Some(t)),
        _ => {
            return Err(CliError::config(
                "give either --center with --radius, or --t",
            ))
        }
    };
    let a = CircleAnalysis::run(&f.source, &circle, &common.morera(&f))?;
    let coeffs: Vec<_> = (-4..=4)
        .map(|k| json!({ "k": k, "c": a.data.coefficient(k) }))
        .collect();
    let out = json!({
        "schema_version": analysis::REPORT_SCHEMA_VERSION,
        "function": f.label,
        "circle": { "center": circle.center, "radius": circle.radius, "pencil_t": parameter },
        "samples": a.data.sample_count(),
        "negative_energy": a.result.negative_energy,
        "total_energy": a.data.total_energy,
        "threshold": a.result.threshold_used,
        "aliasing": a.result.aliasing_flag,
        "inconclusive": a.inconclusive,
        "passes": a.result.passes,
        "coefficients": coeffs,
        "warnings": f.warnings,
    });
    common.write(&to_json(&out))?;
    eprintln!(
        "{} on {circle}: negative energy {:.3e}, threshold {:.3e}",
        if a.result.passes { "extends" } else { "does not extend" },
        a.result.negative_energy,
        a.result.threshold_used
    );
    Ok(if a.inconclusive && !a.result.passes {
        EXIT_INCONCLUSIVE
    } else if a.result.passes {
        0
    } else {
        EXIT_FAILURE
    })
}

fn sweep(common: &Common) -> CliResult<u8> {
    let f = common.function()?;
    let cfg = common.theorem(&f)?;
    let opts = cfg.morera_options();
    let reports = cfg
        .families
        .iter()
        .map(|fam| test_family(&f.source, fam, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    let out = json!({
        "schema_version": analysis::REPORT_SCHEMA_VERSION,
        "function": f.label,
        "config": cfg,
        "families": reports,
        "warnings": f.warnings,
    });
    common.write(&to_json(&out))?;
    for r in &reports {
        let failing = r.failing().count();
        eprintln!(
            "{:?} family: {} circles, {failing} failing{}",
            r.family,
            r.circles.len(),
            r.worst_circle()
                .map(|w| format!(", worst parameter {:.6}", w.parameter))
                .unwrap_or_default()
        );
    }
    Ok(if reports.iter().any(|r| r.failing().next().is_some()) {
        EXIT_FAILURE
    } else if reports.iter().any(|r| r.inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        0
    })
}

fn fiber(common: &Common, zs: &[String], points: usize) -> CliResult<u8> {
    if points < 2 {
        return Err(CliError::config("--points must be at least 2"));
    }
    let tau = common.pencil_floor();
    let mut csv = String::from("z_re,z_im,piece,index,param,w_re,w_im\n");
    for text in zs {
        let z = complex_arg("z", text)?;
        let curve = fiber_curve(z, tau, 1)?;
        for (piece, k, param, w) in curve.polyline(points) {
            writeln!(csv, "{},{},{},{k},{param},{},{}", z.re, z.im, piece.name(), w.re, w.im)
                .expect("writing to a string cannot fail");
        }
    }
    common.write(&csv)?;
    Ok(0)
}

fn parse_box(text: &str) -> CliResult<[f64; 4]> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::config(format!("--w-box {text:?}: {e}")))?;
    match parts[..] {
        [a, b, c, d] if a < b && c < d => Ok([a, b, c, d]),
        _ => Err(CliError::config(format!(
            "--w-box {text:?}: expected re_min,re_max,im_min,im_max with min < max"
        ))),
    }
}

fn theta(common: &Common, z: &str, w_box: &Option<String>, w_points: usize, nodes: usize) -> CliResult<u8> {
    if w_points < 2 {
        return Err(CliError::config("--w-points must be at least 2"));
    }
    let f = common.function()?;
    let pencil = common.pencil()?;
    let z = complex_arg("z", z)?;
    let rotated = Rotated {
        inner: &f.source,
        rotation: pencil.rotation(),
    };
    let mut opts = FiberOptions::new(pencil.tau);
    opts.nodes_per_piece = nodes;
    opts.morera = common.morera(&f);
    let field = FiberField::new(&rotated, z, &opts)?;
    let bounds = match w_box {
        Some(text) => parse_box(text)?,
        None => {
            let k = field.curve.arc.circle;
            let (a, b) = field.curve.segment;
            let pad = 0.1 * field.curve.diameter();
            [
                (k.center.re - k.radius).min(a.re).min(b.re) - pad,
                (k.center.re + k.radius).max(a.re).max(b.re) + pad,
                (k.center.im - k.radius).min(a.im).min(b.im) - pad,
                (k.center.im + k.radius).max(a.im).max(b.im) + pad,
            ]
        }
    };
    let step = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / (w_points - 1) as f64;
    let mut csv = String::from("w_re,w_im,region,theta_re,theta_im\n");
    for j in 0..w_points {
        for i in 0..w_points {
            let w = Complex::new(step(bounds[0], bounds[1], i), step(bounds[2], bounds[3], j));
            let line = match region_contains(&field.curve, w) {
                Ok(inside) => {
                    let v = field.theta(w)?;
                    let region = if inside { "inside" } else { "outside" };
                    format!("{},{},{region},{},{}", w.re, w.im, v.re, v.im)
                }
                Err(Error::NearCurve { .. }) => format!("{},{},near-curve,,", w.re, w.im),
                Err(e) => return Err(e.into()),
            };
            csv.push_str(&line);
            csv.push('\n');
        }
    }
    common.write(&csv)?;
    Ok(0)
}

fn run_verdict(common: &Common) -> CliResult<u8> {
    let f = common.function()?;
    let cfg = common.theorem(&f)?;
    let details = analysis::verdict(&f.source, &cfg)?;
    let mut report = Report::new(f.label.clone(), &cfg, details);
    report.warnings = f.warnings.clone();
    if !report.hypotheses_hold {
        report
            .warnings
            .push("the smallest circles of the two families intersect: the configuration violates the theorem's hypotheses".into());
    }
    common.write(&report.to_json())?;
    eprintln!("verdict: {}", report.verdict.as_str());
    if let Some(w) = report.details.worst_failure() {
        eprintln!(
            "failing {:?} circle: parameter {:.6}, center {}, radius {:.6}, relative negative energy {:.3e}",
            w.family,
            w.parameter,
            w.center,
            w.radius,
            w.relative_negative_energy()
        );
    }
    Ok(exit_for(report.verdict))
}

fn demo_sharpness(common: &Common, floor: f64) -> CliResult<u8> {
    let mut common = common.clone();
    if common.builtin.is_none() && common.expr.is_none() && common.grid.is_none() {
        common.builtin = Some("counterexample".into());
    }
    let f = common.function()?;
    let valid = common.theorem(&f)?;
    let mut violating_args = common.clone();
    violating_args.r_min = floor;
    violating_args.rho = Some(floor);
    violating_args.two_point = None;
    let violating = violating_args.theorem(&f)?;

    let a = analysis::verdict(&f.source, &valid)?;
    let b = analysis::verdict(&f.source, &violating)?;
    let all_pass = b.families.iter().all(|fam| fam.passes);
    let reproduced = a.verdict == Classification::MoreraFailure
        && all_pass
        && b.verdict == Classification::Inconsistent;
    let out = json!({
        "schema_version": analysis::REPORT_SCHEMA_VERSION,
        "function": f.label,
        "valid": { "hypotheses_hold": a.hypotheses_hold, "verdict": a.verdict, "details": a },
        "violating": { "hypotheses_hold": b.hypotheses_hold, "verdict": b.verdict, "details": b },
        "contrast_reproduced": reproduced,
    });
    common.write(&to_json(&out))?;
    eprintln!(
        "valid configuration (hypotheses hold: {}): {}",
        a.hypotheses_hold,
        a.verdict.as_str()
    );
    if let Some(w) = a.worst_failure() {
        eprintln!("  failing {:?} circle at parameter {:.6}", w.family, w.parameter);
    }
    eprintln!(
        "floors {floor}/{floor} (hypotheses hold: {}): every circle passes: {all_pass}, dbar residual {:.6}, verdict {}",
        b.hypotheses_hold,
        b.dbar.residual,
        b.verdict.as_str()
    );
    Ok(if reproduced { 0 } else { EXIT_FAILURE })
}

fn export_grid(common: &Common, n_r: usize, n_theta: usize) -> CliResult<u8> {
    if n_r < 4 || n_theta < 4 {
        return Err(CliError::config("--n-r and --n-theta must be at least 4"));
    }
    let f = common.function()?;
    let radii: Vec<f64> = (0..n_r).map(|i| i as f64 / (n_r - 1) as f64).collect();
    let grid = PolarGrid::sample(&f.source, &radii, n_theta)?;
    let mut buf = Vec::new();
    grid.write_csv(&mut buf)?;
    common.write(&String::from_utf8(buf).expect("CSV output is UTF-8"))?;
    Ok(0)
}

fn configure_threads() -> CliResult<()> {
    let Ok(text) = std::env::var("MORERA_THREADS") else {
        return Ok(());
    };
    let n: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::config(format!("MORERA_THREADS={text:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::config(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> CliResult<u8> {
    configure_threads()?;
    match &cli.command {
        Command::TestCircle {
            common,
            center,
            radius,
            t,
        } => test_circle(common, center, *radius, *t),
        Command::Sweep { common } => sweep(common),
        Command::Fiber { common, zs, points } => fiber(common, zs, *points),
        Command::Theta {
            common,
            z,
            w_box,
            w_points,
            nodes,
        } => theta(common, z, w_box, *w_points, *nodes),
        Command::Verdict { common } => run_verdict(common),
        Command::DemoSharpness { common, floor } => demo_sharpness(common, *floor),
        Command::ExportGrid {
            common,
            n_r,
            n_theta,
        } => export_grid(common, *n_r, *n_theta),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

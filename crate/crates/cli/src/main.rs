//! Verification front end plus table emitter for the curved-maxwell library.
//!
//! * `verify [SCOPE]` runs one named check suite (or all of them), prints a
//!   line per check, and exits nonzero when anything misses its tolerance;
//! * `spectrum` emits the closed-model frequency table `omega = (n+1+j)/rho`;
//! * `mode` evaluates a single mode on a coordinate grid: cyclic components,
//!   physical `E`/`cB`, and a per-point operator residual;
//! * `flatcheck` runs only the flat-space matrix-vs-classical equivalence.
//!
//! Tables are CSV (header row, `.` decimal, 17-significant-digit floats, byte
//! stable for a fixed config) or JSON (array of row objects). `--threads` or
//! the `CURVED_MAXWELL_THREADS` variable caps the worker pool.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use curved_maxwell::geometry::SpaceKind;
use curved_maxwell::modes::{spectrum, to_physical_fields, ModeEvaluator, ModeGrid, ModeSpec};
use curved_maxwell::verify::{
    algebra_suite, flat_suite, geometry_suite, modes_suite, radial_suite, wigner_suite, GridSizes,
    ModeSelection, Sense, SuiteReport, Tolerances,
};

#[derive(Parser)]
#[command(name = "curved-maxwell", version, about = "Matrix-form Maxwell on S3/H3: checks, spectra, mode tables")]
struct Cli {
    /// Cap on worker threads (overrides CURVED_MAXWELL_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite; nonzero exit on any failed check.
    Verify(VerifyArgs),
    /// Emit the discrete frequency table of the closed model.
    Spectrum(SpectrumArgs),
    /// Evaluate one mode over a grid and emit the field table.
    Mode(ModeArgs),
    /// Flat-space equivalence checks only.
    Flatcheck(FlatcheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scope {
    Algebra,
    Geometry,
    Wigner,
    Radial,
    Modes,
    Flat,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    S3,
    H3,
}

impl From<Model> for SpaceKind {
    fn from(m: Model) -> Self {
        match m {
            Model::S3 => SpaceKind::S3,
            Model::H3 => SpaceKind::H3,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run.
    #[arg(value_enum, default_value_t = Scope::All)]
    scope: Scope,
    /// Restrict the radial/mode suites to one background.
    #[arg(long, value_enum)]
    model: Option<Model>,
    /// Single total angular momentum instead of the default sweep.
    #[arg(long)]
    j: Option<u32>,
    /// Single azimuthal index instead of the default sweep.
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i32>,
    /// Single radial overtone (closed model).
    #[arg(long)]
    n: Option<u32>,
    /// Single frequency; on the closed model this must hit n+1+j.
    #[arg(long)]
    omega: Option<f64>,
    /// Random interior points for the geometry oracle.
    #[arg(long, default_value_t = 120)]
    points: usize,
    /// Seed for the geometry oracle points.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Grid side for the dual-path operator showcase.
    #[arg(long, default_value_t = 20)]
    grid: usize,
    /// Grid side for the all-modes constraint sweep.
    #[arg(long, default_value_t = 6)]
    sweep_grid: usize,
    #[command(flatten)]
    tols: TolArgs,
}

/// Per-check tolerance overrides; unset flags keep the library defaults.
#[derive(Args, Default)]
struct TolArgs {
    /// Exact matrix identities.
    #[arg(long = "tol-algebra")]
    algebra: Option<f64>,
    /// Closed-form geometry vs the finite-difference oracle.
    #[arg(long = "tol-geometry")]
    geometry: Option<f64>,
    /// Routes that agree to rounding (transforms, wiring identities).
    #[arg(long = "tol-exact-route")]
    exact_route: Option<f64>,
    /// Wigner recurrences.
    #[arg(long = "tol-recurrence")]
    recurrence: Option<f64>,
    /// Wigner derivative and angular action vs finite differences.
    #[arg(long = "tol-wigner-fd")]
    wigner_fd: Option<f64>,
    /// d-function row orthogonality under quadrature.
    #[arg(long = "tol-orthogonality")]
    orthogonality: Option<f64>,
    /// Second-order radial residual.
    #[arg(long = "tol-radial-second")]
    radial_second: Option<f64>,
    /// First-order radial residual.
    #[arg(long = "tol-radial-first")]
    radial_first: Option<f64>,
    /// Closed form vs the Runge-Kutta oracle.
    #[arg(long = "tol-oracle")]
    oracle: Option<f64>,
    /// Full-operator residual, analytic derivative path.
    #[arg(long = "tol-operator-analytic")]
    operator_analytic: Option<f64>,
    /// Full-operator residual, finite-difference path.
    #[arg(long = "tol-operator-fd")]
    operator_fd: Option<f64>,
    /// Row-0 divergence constraint of the operator.
    #[arg(long = "tol-constraint")]
    constraint: Option<f64>,
    /// Detuned modes must exceed this residual floor.
    #[arg(long = "tol-detune-floor")]
    detune_floor: Option<f64>,
    /// Endpoint growth ceiling for quantized modes.
    #[arg(long = "tol-endpoint-regular")]
    endpoint_regular: Option<f64>,
    /// Endpoint growth floor for detuned modes.
    #[arg(long = "tol-endpoint-growth")]
    endpoint_growth: Option<f64>,
    /// Matrix-vs-classical regrouping equivalence.
    #[arg(long = "tol-equivalence")]
    equivalence: Option<f64>,
    /// Flat residuals with analytic gradients.
    #[arg(long = "tol-flat-analytic")]
    flat_analytic: Option<f64>,
    /// Flat residuals with finite-difference gradients.
    #[arg(long = "tol-flat-fd")]
    flat_fd: Option<f64>,
    /// Physical-fields round trip.
    #[arg(long = "tol-unitarity")]
    unitarity: Option<f64>,
}

macro_rules! apply_overrides {
    ($args:expr, $tols:expr; $($field:ident),+ $(,)?) => {
        $(if let Some(v) = $args.$field { $tols.$field = v; })+
    };
}

impl TolArgs {
    fn resolve(&self) -> Tolerances {
        let mut t = Tolerances::default();
        apply_overrides!(self, t;
            algebra, geometry, exact_route, recurrence, wigner_fd, orthogonality,
            radial_second, radial_first, oracle, operator_analytic, operator_fd,
            constraint, detune_floor, endpoint_regular, endpoint_growth,
            equivalence, flat_analytic, flat_fd, unitarity,
        );
        t
    }
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long, value_enum, default_value_t = Model::S3)]
    model: Model,
    #[arg(long, default_value_t = 4)]
    j_max: u32,
    #[arg(long, default_value_t = 3)]
    n_max: u32,
    /// Curvature radius.
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ModeArgs {
    #[arg(long, value_enum, default_value_t = Model::S3)]
    model: Model,
    /// Total angular momentum (at least 1).
    #[arg(long)]
    j: u32,
    /// Azimuthal index, |m| <= j.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    m: i32,
    /// Radial overtone; closed model only.
    #[arg(long, conflicts_with = "omega")]
    n: Option<u32>,
    /// Frequency in curvature units; open model only.
    #[arg(long)]
    omega: Option<f64>,
    /// Grid side; the table has grid^3 rows.
    #[arg(long, default_value_t = 8)]
    grid: usize,
    /// Time slice.
    #[arg(long, default_value_t = 0.0)]
    time: f64,
    /// Upper chi bound (default: pi - 0.1 closed, 1.5 open).
    #[arg(long)]
    chi_max: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct FlatcheckArgs {
    #[command(flatten)]
    tols: TolArgs,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the table to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// One serializable table row; `HEADER` doubles as the CSV schema.
trait TableRow: Serialize {
    const HEADER: &'static str;
    fn csv_line(&self) -> String;
}

/// Fixed-width scientific float: 17 significant digits, byte stable.
fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize)]
struct SpectrumRowOut {
    j: u32,
    n: u32,
    omega: f64,
    degeneracy: u32,
}

impl TableRow for SpectrumRowOut {
    const HEADER: &'static str = "j,n,omega,degeneracy";
    fn csv_line(&self) -> String {
        format!("{},{},{},{}", self.j, self.n, sci(self.omega), self.degeneracy)
    }
}

#[derive(Serialize)]
struct ModeRowOut {
    t: f64,
    chi: f64,
    theta: f64,
    phi: f64,
    psi1_re: f64,
    psi2_re: f64,
    psi3_re: f64,
    psi1_im: f64,
    psi2_im: f64,
    psi3_im: f64,
    e1: f64,
    e2: f64,
    e3: f64,
    cb1: f64,
    cb2: f64,
    cb3: f64,
    residual: f64,
}

impl TableRow for ModeRowOut {
    const HEADER: &'static str = "t,chi,theta,phi,psi1_re,psi2_re,psi3_re,psi1_im,psi2_im,psi3_im,e1,e2,e3,cb1,cb2,cb3,residual";
    fn csv_line(&self) -> String {
        let cols = [
            self.t, self.chi, self.theta, self.phi, self.psi1_re, self.psi2_re, self.psi3_re,
            self.psi1_im, self.psi2_im, self.psi3_im, self.e1, self.e2, self.e3, self.cb1,
            self.cb2, self.cb3, self.residual,
        ];
        cols.iter().map(|&x| sci(x)).collect::<Vec<_>>().join(",")
    }
}

fn render<T: TableRow>(format: Format, rows: &[T]) -> String {
    match format {
        Format::Csv => {
            let mut s = String::with_capacity(64 * (rows.len() + 1));
            s.push_str(T::HEADER);
            s.push('\n');
            for r in rows {
                s.push_str(&r.csv_line());
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rows).expect("rows are plain data");
            s.push('\n');
            s
        }
    }
}

fn emit<T: TableRow>(out: &OutputArgs, rows: &[T]) -> std::io::Result<()> {
    let text = render(out.format, rows);
    match &out.output {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_reports(reports: &[SuiteReport]) -> ExitCode {
    let mut failed = 0usize;
    let mut total = 0usize;
    for rep in reports {
        for c in &rep.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            let rel = match c.sense {
                Sense::AtMost => "<=",
                Sense::AtLeast => ">=",
            };
            println!(
                "[{verdict}] {}: observed {:.3e} (want {rel} {:.3e})",
                c.name, c.observed, c.threshold
            );
            total += 1;
            if !c.passed {
                failed += 1;
            }
        }
        let ok = rep.checks.iter().filter(|c| c.passed).count();
        println!(
            "-- suite {}: {ok}/{} passed in {:.2} s",
            rep.name,
            rep.checks.len(),
            rep.elapsed.as_secs_f64()
        );
    }
    if failed == 0 {
        println!("all {total} checks passed");
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {total} checks FAILED");
        ExitCode::FAILURE
    }
}

fn run_verify(a: &VerifyArgs) -> ExitCode {
    let tol = a.tols.resolve();
    let sel = ModeSelection {
        kind: a.model.map(Into::into),
        j: a.j,
        m: a.m,
        n: a.n,
        omega: a.omega,
    };
    let sizes = GridSizes {
        showcase: a.grid,
        sweep: a.sweep_grid,
    };
    let reports = match a.scope {
        Scope::Algebra => vec![algebra_suite(&tol)],
        Scope::Geometry => vec![geometry_suite(a.seed, a.points, &tol)],
        Scope::Wigner => vec![wigner_suite(&tol)],
        Scope::Radial => vec![radial_suite(&sel, &tol)],
        Scope::Modes => vec![modes_suite(&sel, &sizes, &tol)],
        Scope::Flat => vec![flat_suite(&tol)],
        Scope::All => vec![
            algebra_suite(&tol),
            geometry_suite(a.seed, a.points, &tol),
            wigner_suite(&tol),
            radial_suite(&sel, &tol),
            modes_suite(&sel, &sizes, &tol),
            flat_suite(&tol),
        ],
    };
    print_reports(&reports)
}

fn run_spectrum(a: &SpectrumArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    if a.model == Model::H3 {
        // Conclusion of the open-model analysis; the table is left empty on
        // purpose rather than erroring, so pipelines can branch on content.
        eprintln!("no discrete spectrum for frequencies of electromagnetic modes arises");
        emit::<SpectrumRowOut>(&a.out, &[])?;
        return Ok(ExitCode::SUCCESS);
    }
    let table = spectrum(a.j_max, a.n_max, a.rho)?;
    let rows: Vec<SpectrumRowOut> = table
        .rows
        .iter()
        .map(|r| SpectrumRowOut {
            j: r.j,
            n: r.n,
            omega: r.omega,
            degeneracy: r.degeneracy,
        })
        .collect();
    emit(&a.out, &rows)?;
    Ok(ExitCode::SUCCESS)
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn run_mode(a: &ModeArgs) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let spec = match a.model {
        Model::S3 => {
            let Some(n) = a.n else {
                return Ok(usage_error(
                    "closed-model modes take --n; --omega selects open-model frequencies",
                ));
            };
            ModeSpec::s3(a.j, a.m, n)?
        }
        Model::H3 => {
            let Some(w) = a.omega else {
                return Ok(usage_error(
                    "open-model modes take --omega; --n selects closed-model overtones",
                ));
            };
            ModeSpec::h3(a.j, a.m, w)?
        }
    };

    let mut grid = ModeGrid::guarded(spec.kind, a.grid, a.chi_max);
    grid.t = a.time;

    let mut eval = ModeEvaluator::new(spec)?;
    eval.precompute(&grid.chi)?;
    let pts = grid.points();

    // Residuals are reported relative to the largest component on the grid.
    let mut psis = Vec::with_capacity(pts.len());
    let mut scale = 0.0f64;
    for x in &pts {
        let psi = eval.psi(x, None)?;
        scale = scale.max(psi.max_abs());
        psis.push(psi);
    }
    if scale == 0.0 {
        return Ok(usage_error("mode vanishes identically on the requested grid"));
    }

    let mut rows = Vec::with_capacity(pts.len());
    for (x, psi) in pts.iter().zip(&psis) {
        let residual = eval.operator_analytic(x, None)?.max_abs() / scale;
        let (e, cb) = to_physical_fields(psi)?;
        let (p1, p2, p3) = (psi.component(1), psi.component(2), psi.component(3));
        rows.push(ModeRowOut {
            t: x.t,
            chi: x.chi,
            theta: x.theta,
            phi: x.phi,
            psi1_re: p1.re,
            psi2_re: p2.re,
            psi3_re: p3.re,
            psi1_im: p1.im,
            psi2_im: p2.im,
            psi3_im: p3.im,
            e1: e[0],
            e2: e[1],
            e3: e[2],
            cb1: cb[0],
            cb2: cb[1],
            cb3: cb[2],
            residual,
        });
    }
    emit(&a.out, &rows)?;
    Ok(ExitCode::SUCCESS)
}

fn init_threads(flag: Option<usize>) {
    let n = flag.or_else(|| {
        std::env::var("CURVED_MAXWELL_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    });
    if let Some(n) = n.filter(|&n| n > 0) {
        // A second build_global (e.g. in-process tests) is harmless; the
        // first pool wins.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads(cli.threads);
    let outcome = match &cli.command {
        Command::Verify(a) => Ok(run_verify(a)),
        Command::Spectrum(a) => run_spectrum(a),
        Command::Mode(a) => run_mode(a),
        Command::Flatcheck(a) => Ok(print_reports(&[flat_suite(&a.tols.resolve())])),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

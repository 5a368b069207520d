//! Command-line front end.
//!
//! Four subcommands cover the toolkit's workflows:
//!
//! * `oracle-eigs` — analytic eigenfrequencies of the circle (closed-form
//!   determinants + winding-number root finder) → `eigs_oracle.csv`;
//! * `ssm-eigs` — contour-integral eigenvalues of the discretized boundary
//!   systems → `eigs_bm.csv` / `eigs_mixed.csv`, plus `pairing.csv` matching
//!   the two formulations when both are requested;
//! * `scatter` — plane-wave forward solve with both formulations on a field
//!   grid → `field.csv`;
//! * `selftest` — fast internal consistency suite, including a negative
//!   control that verifies the checks can actually detect corruption.
//!
//! Every run also writes `summary.json`. All outputs are deterministic byte
//! for byte given the same configuration (pass `--no-timestamp` to keep
//! `summary.json` free of wall-clock data).
//!
//! Exit codes: 0 success; 1 invalid input (arguments, configuration,
//! unsupported domain); 2 numerical failure on admissible input; 3 I/O
//! failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::circle_oracle::{self, OracleConfig};
use crate::geometry::{Boundary, Circle, Curve, Star, Vec2};
use crate::pairing::{pair_eigenvalues, Pairing};
use crate::specfun::{cyl, cyl_deriv, CylKind};
use crate::ssm::{self, ContourSpec, NepEig, TiledSpec};
use crate::systems::{
    self, classify_target, solve_scattering, Formulation, Materials, PlaneWave, Region,
};
use crate::window::Window;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Configuration file
// ---------------------------------------------------------------------------

/// Complete run configuration (TOML). Every section and field is optional;
/// the defaults describe the reference problem: unit circle, ε = (1, 4),
/// μ = (1, 1), frequency window [0.5, 3] × [−1, 0].
#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub geometry: GeometryConfig,
    pub materials: MaterialsConfig,
    pub window: WindowConfig,
    pub oracle: OracleSection,
    pub ssm: SsmConfig,
    pub scatter: ScatterConfig,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct GeometryConfig {
    /// "circle" or "star".
    pub kind: String,
    pub radius: f64,
    /// Star only: relative arm amplitude in [0, 1).
    pub amplitude: f64,
    /// Star only: number of arms.
    pub arms: u32,
    /// Boundary nodes (even, ≥ 8).
    pub nodes: usize,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        GeometryConfig {
            kind: "circle".into(),
            radius: 1.0,
            amplitude: 0.3,
            arms: 5,
            nodes: 256,
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct MaterialsConfig {
    pub eps: [f64; 2],
    pub mu: [f64; 2],
}

impl Default for MaterialsConfig {
    fn default() -> Self {
        let m = Materials::default();
        MaterialsConfig { eps: m.eps, mu: m.mu }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct WindowConfig {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Default for WindowConfig {
    fn default() -> Self {
        WindowConfig { re_min: 0.5, re_max: 3.0, im_min: -1.0, im_max: 0.0 }
    }
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleSection {
    /// Highest Fourier mode to scan; derived from the window when absent.
    pub max_mode: Option<u32>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct SsmConfig {
    pub nodes_per_side: usize,
    pub moments: usize,
    pub probe_cols: usize,
    pub svd_rel_tol: f64,
    pub residual_tol: f64,
    pub seed: u64,
    pub max_retries: usize,
    pub tiles_re: usize,
    pub tiles_im: usize,
    pub overlap: f64,
    pub dedup_tol: f64,
    pub window_margin: f64,
    /// Distance cutoff when pairing the two formulations' eigenvalues.
    pub pairing_tol: f64,
}

impl Default for SsmConfig {
    fn default() -> Self {
        let c = ContourSpec::default();
        let t = TiledSpec::default();
        SsmConfig {
            nodes_per_side: c.nodes_per_side,
            moments: c.moments,
            probe_cols: c.probe_cols,
            svd_rel_tol: c.svd_rel_tol,
            residual_tol: c.residual_tol,
            seed: c.seed,
            max_retries: c.max_retries,
            tiles_re: t.tiles_re,
            tiles_im: t.tiles_im,
            overlap: t.overlap,
            dedup_tol: t.dedup_tol,
            window_margin: t.window_margin,
            pairing_tol: 1e-6,
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScatterConfig {
    /// Real frequency of the incident wave.
    pub omega: f64,
    /// Incidence angle in radians.
    pub theta: f64,
    /// Field-grid resolution.
    pub grid_nx: usize,
    pub grid_ny: usize,
    /// Spatial extent of the field grid.
    pub x_range: [f64; 2],
    pub y_range: [f64; 2],
}

impl Default for ScatterConfig {
    fn default() -> Self {
        ScatterConfig {
            omega: 2.0,
            theta: 0.3,
            grid_nx: 40,
            grid_ny: 40,
            x_range: [-2.5, 2.5],
            y_range: [-2.5, 2.5],
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| {
            Error::InvalidConfig(format!("could not parse {}: {e}", path.display()))
        })
    }

    /// Reject a malformed configuration up front, whatever the subcommand:
    /// a config file is validated as a whole document.
    pub fn validate(&self) -> Result<()> {
        self.boundary()?;
        self.materials()?;
        self.window()?;
        let s = &self.ssm;
        if s.tiles_re == 0 || s.tiles_im == 0 {
            return Err(Error::InvalidConfig("tile counts must be positive".into()));
        }
        if !(s.overlap >= 0.0) || !(s.dedup_tol >= 0.0) || !(s.window_margin >= 0.0) {
            return Err(Error::InvalidConfig(
                "overlap, dedup_tol and window_margin must be non-negative".into(),
            ));
        }
        if !(s.pairing_tol > 0.0) {
            return Err(Error::InvalidConfig("pairing_tol must be positive".into()));
        }
        let sc = &self.scatter;
        if !(sc.omega > 0.0) || !sc.omega.is_finite() || !sc.theta.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "scatter omega must be positive and finite (got {}) and theta finite (got {})",
                sc.omega, sc.theta
            )));
        }
        if sc.grid_nx < 2 || sc.grid_ny < 2 {
            return Err(Error::InvalidConfig("scatter grid must be at least 2x2".into()));
        }
        if !(sc.x_range[0] < sc.x_range[1]) || !(sc.y_range[0] < sc.y_range[1]) {
            return Err(Error::InvalidConfig(
                "scatter grid ranges must be increasing".into(),
            ));
        }
        Ok(())
    }

    pub fn boundary(&self) -> Result<Boundary> {
        let g = &self.geometry;
        let curve: Box<dyn Curve> = match g.kind.as_str() {
            "circle" => Box::new(Circle::new(g.radius)?),
            "star" => Box::new(Star::new(g.radius, g.amplitude, g.arms)?),
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown geometry kind {other:?} (expected \"circle\" or \"star\")"
                )))
            }
        };
        Boundary::discretize(curve.as_ref(), g.nodes)
    }

    pub fn materials(&self) -> Result<Materials> {
        let m = Materials { eps: self.materials.eps, mu: self.materials.mu };
        m.validate()?;
        Ok(m)
    }

    pub fn window(&self) -> Result<Window> {
        let w = &self.window;
        Window::new(w.re_min, w.re_max, w.im_min, w.im_max)
    }

    pub fn contour_spec(&self) -> ContourSpec {
        let s = &self.ssm;
        ContourSpec {
            nodes_per_side: s.nodes_per_side,
            moments: s.moments,
            probe_cols: s.probe_cols,
            svd_rel_tol: s.svd_rel_tol,
            residual_tol: s.residual_tol,
            seed: s.seed,
            max_retries: s.max_retries,
        }
    }

    pub fn tiled_spec(&self) -> TiledSpec {
        let s = &self.ssm;
        TiledSpec {
            contour: self.contour_spec(),
            tiles_re: s.tiles_re,
            tiles_im: s.tiles_im,
            overlap: s.overlap,
            dedup_tol: s.dedup_tol,
            window_margin: s.window_margin,
        }
    }
}

// ---------------------------------------------------------------------------
// Argument parsing
// ---------------------------------------------------------------------------

#[derive(Parser, Debug)]
#[command(
    name = "helm2d",
    version,
    about = "Boundary-integral eigenfrequencies and scattering for the 2D Helmholtz \
             transmission problem"
)]
struct CliArgs {
    /// TOML configuration file; built-in defaults are used when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Directory for output files (created if missing).
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,

    /// Omit the wall-clock timestamp from summary.json so reruns are
    /// byte-identical.
    #[arg(long, global = true)]
    no_timestamp: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Analytic circle eigenfrequencies in the window → eigs_oracle.csv.
    OracleEigs,
    /// Contour-integral eigenvalues of the discretized systems →
    /// eigs_<formulation>.csv (+ pairing.csv with --formulation both).
    SsmEigs {
        #[arg(long, value_enum, default_value_t = FormulationArg::Both)]
        formulation: FormulationArg,
    },
    /// Plane-wave forward solve with both formulations → field.csv.
    Scatter,
    /// Fast internal consistency checks (with a negative control).
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormulationArg {
    Bm,
    Mixed,
    Both,
}

impl FormulationArg {
    fn formulations(self) -> Vec<Formulation> {
        match self {
            FormulationArg::Bm => vec![Formulation::BurtonMiller],
            FormulationArg::Mixed => vec![Formulation::Mixed],
            FormulationArg::Both => vec![Formulation::BurtonMiller, Formulation::Mixed],
        }
    }
}

/// Map an error to the documented process exit code.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::SingularArgument(_) | Error::InvalidConfig(_) => 1,
        Error::Overflow(_)
        | Error::SingularSystem(_)
        | Error::ContourHit { .. }
        | Error::NonConvergence(_)
        | Error::NearBoundaryTarget { .. } => 2,
        Error::Io(_) => 3,
    }
}

/// Entry point: parse arguments, run the subcommand, return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match CliArgs::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // --help/--version are successful outcomes; everything else is
            // an input-validation failure.
            use clap::error::ErrorKind;
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if ok { 0 } else { 1 };
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn dispatch(cli: &CliArgs) -> Result<()> {
    let cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    cfg.validate()?;
    fs::create_dir_all(&cli.out_dir)?;
    let ctx = OutputContext {
        out_dir: cli.out_dir.clone(),
        with_timestamp: !cli.no_timestamp,
        cfg: cfg.clone(),
    };
    match &cli.cmd {
        Cmd::OracleEigs => cmd_oracle_eigs(&cfg, &ctx),
        Cmd::SsmEigs { formulation } => cmd_ssm_eigs(&cfg, &ctx, *formulation),
        Cmd::Scatter => cmd_scatter(&cfg, &ctx),
        Cmd::Selftest => cmd_selftest(&cfg, &ctx),
    }
}

// ---------------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------------

struct OutputContext {
    out_dir: PathBuf,
    with_timestamp: bool,
    cfg: RunConfig,
}

impl OutputContext {
    fn write(&self, name: &str, contents: &str) -> Result<PathBuf> {
        let path = self.out_dir.join(name);
        fs::write(&path, contents)?;
        Ok(path)
    }

    fn write_summary(&self, command: &str, results: serde_json::Value) -> Result<PathBuf> {
        #[derive(Serialize)]
        struct Summary<'a> {
            command: &'a str,
            version: &'a str,
            #[serde(skip_serializing_if = "Option::is_none")]
            generated_at: Option<String>,
            config: &'a RunConfig,
            results: serde_json::Value,
        }
        let s = Summary {
            command,
            version: env!("CARGO_PKG_VERSION"),
            generated_at: self
                .with_timestamp
                .then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)),
            config: &self.cfg,
            results,
        };
        let mut text = serde_json::to_string_pretty(&s)
            .map_err(|e| Error::InvalidConfig(format!("summary serialization failed: {e}")))?;
        text.push('\n');
        self.write("summary.json", &text)
    }
}

/// Shortest round-trip decimal formatting keeps the CSVs exact and
/// deterministic.
fn push_f64(out: &mut String, v: f64) {
    let _ = write!(out, "{v}");
}

fn oracle_csv(eigs: &[circle_oracle::OracleEig]) -> String {
    let mut out = String::from("re_omega,im_omega,mode,multiplicity,kind\n");
    for e in eigs {
        push_f64(&mut out, e.omega.re);
        out.push(',');
        push_f64(&mut out, e.omega.im);
        let _ = writeln!(out, ",{},{},{}", e.mode, e.multiplicity, e.kind.label());
    }
    out
}

fn nep_csv(eigs: &[NepEig]) -> String {
    let mut out = String::from("re_omega,im_omega,residual\n");
    for e in eigs {
        push_f64(&mut out, e.lambda.re);
        out.push(',');
        push_f64(&mut out, e.lambda.im);
        out.push(',');
        push_f64(&mut out, e.residual);
        out.push('\n');
    }
    out
}

fn pairing_csv(left: &[NepEig], right: &[NepEig], p: &Pairing) -> String {
    let mut out = String::from("re_bm,im_bm,re_mixed,im_mixed,distance\n");
    for pair in &p.pairs {
        let (a, b) = (left[pair.left].lambda, right[pair.right].lambda);
        push_f64(&mut out, a.re);
        out.push(',');
        push_f64(&mut out, a.im);
        out.push(',');
        push_f64(&mut out, b.re);
        out.push(',');
        push_f64(&mut out, b.im);
        out.push(',');
        push_f64(&mut out, pair.distance);
        out.push('\n');
    }
    for &i in &p.unmatched_left {
        let a = left[i].lambda;
        push_f64(&mut out, a.re);
        out.push(',');
        push_f64(&mut out, a.im);
        out.push_str(",,,\n");
    }
    for &j in &p.unmatched_right {
        let b = right[j].lambda;
        out.push_str(",,");
        push_f64(&mut out, b.re);
        out.push(',');
        push_f64(&mut out, b.im);
        out.push_str(",\n");
    }
    out
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn cmd_oracle_eigs(cfg: &RunConfig, ctx: &OutputContext) -> Result<()> {
    if cfg.geometry.kind != "circle" {
        return Err(Error::InvalidConfig(format!(
            "the analytic oracle exists only for circle geometry, got {:?}",
            cfg.geometry.kind
        )));
    }
    let mut ocfg = OracleConfig::new(cfg.geometry.radius, cfg.materials()?, cfg.window()?);
    ocfg.max_mode = cfg.oracle.max_mode;
    let max_mode = ocfg.resolved_max_mode()?;
    let eigs = circle_oracle::find_eigenvalues(&ocfg)?;

    let path = ctx.write("eigs_oracle.csv", &oracle_csv(&eigs))?;
    println!("wrote {} ({} eigenvalues)", path.display(), eigs.len());

    let resonances = eigs
        .iter()
        .filter(|e| e.kind == circle_oracle::EigKind::Resonance)
        .count();
    let summary = ctx.write_summary(
        "oracle-eigs",
        json!({
            "count": eigs.len(),
            "resonances": resonances,
            "fictitious": eigs.len() - resonances,
            "modes_scanned": max_mode + 1,
        }),
    )?;
    println!("wrote {}", summary.display());
    Ok(())
}

fn cmd_ssm_eigs(cfg: &RunConfig, ctx: &OutputContext, which: FormulationArg) -> Result<()> {
    let b = cfg.boundary()?;
    let m = cfg.materials()?;
    let w = cfg.window()?;
    let spec = cfg.tiled_spec();
    let forms = which.formulations();

    let mut fam = systems::formulation_family(&b, &m, &forms);
    let lists = ssm::tiled_eigs(&mut fam, &w, &spec)?;

    let mut counts = serde_json::Map::new();
    let mut worst_residual = 0.0f64;
    for (f, list) in forms.iter().zip(&lists) {
        let path = ctx.write(&format!("eigs_{}.csv", f.label()), &nep_csv(list))?;
        println!("wrote {} ({} eigenvalues)", path.display(), list.len());
        counts.insert(f.label().to_string(), json!(list.len()));
        worst_residual = list
            .iter()
            .map(|e| e.residual)
            .fold(worst_residual, f64::max);
    }

    let mut results = json!({
        "counts": counts,
        "max_residual": worst_residual,
    });
    if which == FormulationArg::Both {
        let left: Vec<Complex64> = lists[0].iter().map(|e| e.lambda).collect();
        let right: Vec<Complex64> = lists[1].iter().map(|e| e.lambda).collect();
        let p = pair_eigenvalues(&left, &right, cfg.ssm.pairing_tol);
        let path = ctx.write("pairing.csv", &pairing_csv(&lists[0], &lists[1], &p))?;
        println!(
            "wrote {} ({} pairs, {} + {} unmatched, max distance {:.3e})",
            path.display(),
            p.pairs.len(),
            p.unmatched_left.len(),
            p.unmatched_right.len(),
            p.max_distance()
        );
        results["pairing"] = json!({
            "pairs": p.pairs.len(),
            "unmatched_bm": p.unmatched_left.len(),
            "unmatched_mixed": p.unmatched_right.len(),
            "max_distance": p.max_distance(),
            "bijective": p.is_bijection(),
        });
    }
    let summary = ctx.write_summary("ssm-eigs", results)?;
    println!("wrote {}", summary.display());
    Ok(())
}

fn cmd_scatter(cfg: &RunConfig, ctx: &OutputContext) -> Result<()> {
    let b = cfg.boundary()?;
    let m = cfg.materials()?;
    let sc = &cfg.scatter;
    let wave = PlaneWave::from_angle(sc.theta);

    let sol_bm = solve_scattering(&b, &m, Formulation::BurtonMiller, sc.omega, &wave)?;
    let sol_mx = solve_scattering(&b, &m, Formulation::Mixed, sc.omega, &wave)?;

    // Grid targets, row-major from the lower-left corner; near-boundary
    // points are kept in the CSV with empty field values.
    let mut targets = Vec::with_capacity(sc.grid_nx * sc.grid_ny);
    for iy in 0..sc.grid_ny {
        let y = sc.y_range[0]
            + (sc.y_range[1] - sc.y_range[0]) * iy as f64 / (sc.grid_ny - 1) as f64;
        for ix in 0..sc.grid_nx {
            let x = sc.x_range[0]
                + (sc.x_range[1] - sc.x_range[0]) * ix as f64 / (sc.grid_nx - 1) as f64;
            targets.push(Vec2::new(x, y));
        }
    }
    let regions: Vec<Region> = targets.iter().map(|&p| classify_target(&b, p)).collect();
    let eval_pts: Vec<Vec2> = targets
        .iter()
        .zip(&regions)
        .filter(|(_, &r)| r != Region::NearBoundary)
        .map(|(&p, _)| p)
        .collect();

    let u_bm = systems::eval_field(&b, &m, &sol_bm, &wave, &eval_pts)?;
    let u_mx = systems::eval_field(&b, &m, &sol_mx, &wave, &eval_pts)?;

    let mut out = String::from("x,y,region,re_u_bm,im_u_bm,re_u_mixed,im_u_mixed,abs_diff\n");
    let mut slot = 0;
    let mut max_diff = 0.0f64;
    for (p, r) in targets.iter().zip(&regions) {
        push_f64(&mut out, p.x);
        out.push(',');
        push_f64(&mut out, p.y);
        match r {
            Region::NearBoundary => out.push_str(",near,,,,,\n"),
            _ => {
                out.push(',');
                out.push_str(if *r == Region::Outside { "outside" } else { "inside" });
                let (a, c) = (u_bm[slot], u_mx[slot]);
                slot += 1;
                let d = (a - c).norm();
                max_diff = max_diff.max(d);
                for v in [a.re, a.im, c.re, c.im] {
                    out.push(',');
                    push_f64(&mut out, v);
                }
                out.push(',');
                push_f64(&mut out, d);
                out.push('\n');
            }
        }
    }
    let path = ctx.write("field.csv", &out)?;
    println!(
        "wrote {} ({} targets, {} evaluated, max |u_bm - u_mixed| = {:.3e})",
        path.display(),
        targets.len(),
        eval_pts.len(),
        max_diff
    );

    // Boundary-trace agreement between the formulations, as a scalar health
    // figure of the run.
    let trace_diff = sol_bm
        .u
        .iter()
        .zip(&sol_mx.u)
        .chain(sol_bm.q.iter().zip(&sol_mx.q))
        .map(|(a, c)| (a - c).norm())
        .fold(0.0f64, f64::max);

    let summary = ctx.write_summary(
        "scatter",
        json!({
            "omega": sc.omega,
            "theta": sc.theta,
            "targets": {
                "total": targets.len(),
                "evaluated": eval_pts.len(),
                "near_boundary": targets.len() - eval_pts.len(),
            },
            "max_field_mismatch": max_diff,
            "max_trace_mismatch": trace_diff,
        }),
    )?;
    println!("wrote {}", summary.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// Self test
// ---------------------------------------------------------------------------

struct Check {
    name: &'static str,
    metric: f64,
    threshold: f64,
    /// Pass when metric ≤ threshold unless inverted (negative control).
    invert: bool,
}

impl Check {
    fn passed(&self) -> bool {
        if self.invert {
            self.metric > self.threshold
        } else {
            self.metric <= self.threshold
        }
    }
}

fn cmd_selftest(cfg: &RunConfig, ctx: &OutputContext) -> Result<()> {
    let mut checks = Vec::new();

    // 1. Cylinder-function cross-product identity J_n(z) Y'_n(z) − J'_n(z)
    //    Y_n(z) = 2/(πz) at scattered arguments.
    {
        let mut worst = 0.0f64;
        for (n, z) in [
            (0, Complex64::new(1.7, 0.0)),
            (3, Complex64::new(6.3, -2.1)),
            (11, Complex64::new(14.0, 4.0)),
            (25, Complex64::new(31.0, -0.5)),
        ] {
            let j = cyl(CylKind::J, n, z)?;
            let dj = cyl_deriv(CylKind::J, n, z)?;
            let y = cyl(CylKind::Y, n, z)?;
            let dy = cyl_deriv(CylKind::Y, n, z)?;
            let want = 2.0 / (std::f64::consts::PI * z);
            worst = worst.max(((j * dy - dj * y) - want).norm() / want.norm());
        }
        checks.push(Check {
            name: "cylinder-function-cross-product",
            metric: worst,
            threshold: 1e-11,
            invert: false,
        });
    }

    // 2. Determinant factorization identity at seeded random parameters.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let radius = rng.gen_range(0.7..1.5);
            let m = Materials {
                eps: [1.0, rng.gen_range(2.0..6.0)],
                mu: [1.0, 1.0],
            };
            let n = rng.gen_range(0..=12u32);
            let omega = Complex64::new(rng.gen_range(0.5..3.0), rng.gen_range(-1.0..0.0));
            worst = worst.max(
                circle_oracle::factorization_defects(radius, &m, n, omega)?.max(),
            );
        }
        checks.push(Check {
            name: "determinant-factorization",
            metric: worst,
            threshold: 1e-12,
            invert: false,
        });
    }

    // 3. Contour quadrature reproduces a Cauchy integral.
    {
        let w = Window::new(-1.0, 1.0, -1.0, 1.0)?;
        let (nodes, weights) = ssm::rectangle_rule(&w, 24);
        let pole = Complex64::new(0.25, -0.3);
        let total: Complex64 = nodes
            .iter()
            .zip(&weights)
            .map(|(&z, &wt)| wt / (z - pole))
            .sum();
        checks.push(Check {
            name: "contour-quadrature-cauchy",
            metric: (total - 1.0).norm(),
            threshold: 1e-10,
            invert: false,
        });
    }

    // 4. Forward solve against the separation-of-variables series on a
    //    coarse circle, plus 5. a negative control: the same comparison must
    //    flag a deliberately corrupted solution.
    {
        let b = Boundary::discretize(&Circle::new(1.0)?, 64)?;
        let m = cfg.materials().unwrap_or_default();
        let wave = PlaneWave::from_angle(0.3);
        let mie = circle_oracle::mie_solve(1.0, &m, 2.0, 0.3)?;
        let (u_ref, _) = mie.boundary_traces(&b)?;
        let scale = u_ref.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
        let sol = solve_scattering(&b, &m, Formulation::BurtonMiller, 2.0, &wave)?;
        let diff = |u: &[Complex64]| {
            u.iter()
                .zip(&u_ref)
                .map(|(a, c)| (a - c).norm())
                .fold(0.0f64, f64::max)
                / scale
        };
        checks.push(Check {
            name: "forward-solve-vs-series",
            metric: diff(&sol.u),
            threshold: 1e-8,
            invert: false,
        });

        let mut corrupted = sol.u.clone();
        corrupted[0] += Complex64::new(0.01, 0.0);
        checks.push(Check {
            name: "negative-control-detects-corruption",
            metric: diff(&corrupted),
            threshold: 1e-4,
            invert: true,
        });
    }

    let all_passed = checks.iter().all(Check::passed);
    for c in &checks {
        println!(
            "{} {} (metric {:.3e}, threshold {}{:.1e})",
            if c.passed() { "PASS" } else { "FAIL" },
            c.name,
            c.metric,
            if c.invert { ">" } else { "<=" },
            c.threshold
        );
    }
    let summary = ctx.write_summary(
        "selftest",
        json!({
            "all_passed": all_passed,
            "checks": checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed(),
                "metric": c.metric,
                "threshold": c.threshold,
                "pass_when": if c.invert { "above" } else { "below" },
            })).collect::<Vec<_>>(),
        }),
    )?;
    println!("wrote {}", summary.display());
    if all_passed {
        Ok(())
    } else {
        Err(Error::NonConvergence("selftest checks failed".into()))
    }
}

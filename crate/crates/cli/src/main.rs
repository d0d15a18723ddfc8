//! `cornerfield` — reproducible command-line front end.
//!
//! Subcommands map onto the library modules: `spectrum` (corner/cone
//! singular exponents), `cauchy-null` (certified polynomial Cauchy null
//! spaces), `scatter` (single solve with far-field output), `sweep`
//! (wavenumber sweeps with non-scattering flagging), and `expand` (exact
//! Helmholtz series from trace seeds).
//!
//! Conventions shared by every subcommand:
//! * all relative paths resolve against `--workdir` (default `.`);
//! * angles are radians unless `--degrees` is given (converted at parse);
//! * `--json` prints a machine-readable summary (schema `cornerfield-cli/1`)
//!   to stdout;
//! * a run manifest (`<subcommand>-manifest.json`, schema
//!   `cornerfield-manifest/1`) is written next to the outputs on success,
//!   recording parameters, input hashes, outputs, and timing. Outputs are
//!   byte-identical across reruns and thread counts; the manifest's
//!   `elapsed_ms` field is the only non-reproducible value.
//!
//! Exit codes: 0 success, 2 invalid input (bad flags, bad geometry, scene
//! parse failures), 3 certification or root-finding failure, 4 numerical
//! failure, 5 resolution guard tripped without `--force`.

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use cornerfield::scatter::{
    far_field, min_grid_for, solve, solve_unchecked, sweep, FarFieldPattern, ScatterError,
    SolveOptions, SweepTable,
};
use cornerfield::scene::{write_far_csv, write_field_bin, write_sweep_csv, ExpandJob, Scene};
use cornerfield_core::cauchy::{
    cauchy_nullspace, cauchy_nullspace_with_precision, CauchyError, CauchyNullspace,
    NullspaceCertificate,
};
use cornerfield_core::geometry::{BoundaryCondition, ConeGeometry, SectorGeometry};
use cornerfield_core::poly::CRat;
use cornerfield_core::series::{expand_2d, helmholtz_residual_2d};
use cornerfield_core::spectrum::{cone_exponents, sector_exponents, Geometry, SpectrumError};

// ---------------------------------------------------------------------------
// Argument surface
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "cornerfield",
    version,
    about = "Planar transmission-scattering toolkit: corner spectra, certified null spaces, and a volume-potential solver"
)]
struct Cli {
    /// Directory against which every relative path is resolved.
    #[arg(long, global = true, default_value = ".")]
    workdir: PathBuf,

    /// Print a machine-readable JSON summary to stdout.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Singular-exponent table for a plane sector or a circular cone.
    Spectrum(SpectrumArgs),
    /// Certified null spaces of the polynomial Cauchy problem, per degree.
    CauchyNull(CauchyNullArgs),
    /// Solve one scattering scene and write its far-field pattern.
    Scatter(SceneArgs),
    /// Sweep the far-field norm over a wavenumber grid, flagging dips.
    Sweep(SceneArgs),
    /// Expand trace seeds into an exact Helmholtz series with diagnostics.
    Expand(ExpandArgs),
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum GeometryKind {
    Sector,
    Cone,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum BcKind {
    Dirichlet,
    Neumann,
}

#[derive(Parser)]
struct SpectrumArgs {
    /// Corner model: plane sector or rotationally symmetric cone.
    #[arg(long, value_enum)]
    geometry: GeometryKind,

    /// Opening angle (sector) or half-angle (cone).
    #[arg(long)]
    omega: f64,

    /// Interpret --omega in degrees instead of radians.
    #[arg(long)]
    degrees: bool,

    /// Boundary condition on the corner faces.
    #[arg(long, value_enum)]
    bc: BcKind,

    /// Report exponents in the window (-lambda_max, lambda_max].
    #[arg(long, default_value_t = 6.5)]
    lambda_max: f64,

    /// Output CSV path.
    #[arg(long, default_value = "spectrum.csv")]
    out: String,
}

#[derive(Parser)]
struct CauchyNullArgs {
    /// Corner model: plane sector or rotationally symmetric cone.
    #[arg(long, value_enum)]
    geometry: GeometryKind,

    /// Opening angle (sector) or half-angle (cone).
    #[arg(long)]
    omega: f64,

    /// Interpret --omega in degrees instead of radians.
    #[arg(long)]
    degrees: bool,

    /// Highest polynomial degree to certify (each degree 2..=max reported).
    #[arg(long)]
    max_degree: u32,

    /// Force the interval path at this precision instead of the default
    /// (exact field arithmetic at recognized angles, 200 bits otherwise).
    #[arg(long)]
    precision_bits: Option<u32>,

    /// Output JSON report path.
    #[arg(long, default_value = "cauchy-null.json")]
    out: String,
}

#[derive(Parser)]
struct SceneArgs {
    /// Scene description (TOML).
    #[arg(long)]
    scene: String,

    /// Bypass the wavelength-resolution guard (>= 10 cells per wavelength).
    #[arg(long)]
    force: bool,
}

#[derive(Parser)]
struct ExpandArgs {
    /// Expansion job description (JSON: wavenumber, truncation, seeds).
    #[arg(long)]
    seeds: String,

    /// Output JSON report path.
    #[arg(long, default_value = "expand.json")]
    out: String,
}

// ---------------------------------------------------------------------------
// Failure plumbing
// ---------------------------------------------------------------------------

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

impl From<ScatterError> for Failure {
    fn from(e: ScatterError) -> Self {
        let code = match &e {
            ScatterError::Resolution { .. } => 5,
            ScatterError::InvalidInput(_)
            | ScatterError::NegativeAbsorption { .. }
            | ScatterError::PointSourceOnTarget { .. } => 2,
            ScatterError::SolverFailure { .. }
            | ScatterError::OracleNearSingular { .. }
            | ScatterError::Special(_) => 4,
        };
        let mut message = e.to_string();
        if code == 5 {
            message.push_str(" (pass --force to bypass the guard)");
        }
        fail(code, message)
    }
}

impl From<SpectrumError> for Failure {
    fn from(e: SpectrumError) -> Self {
        let code = match &e {
            SpectrumError::InvalidInput(_) => 2,
            SpectrumError::RootFinding { .. } => 3,
            SpectrumError::Special(_) => 4,
        };
        fail(code, e.to_string())
    }
}

impl From<CauchyError> for Failure {
    fn from(e: CauchyError) -> Self {
        let code = match &e {
            CauchyError::InvalidInput(_) => 2,
            CauchyError::Numerical(_) => 4,
        };
        fail(code, e.to_string())
    }
}

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

/// Resolves a possibly relative path against the working directory.
fn resolve(workdir: &Path, path: &str) -> PathBuf {
    let p = PathBuf::from(path);
    if p.is_absolute() {
        p
    } else {
        workdir.join(p)
    }
}

/// Round-trip decimal form (shortest string that parses back exactly).
fn csv_f(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:?}")
    }
}

fn sha256_hex(path: &Path) -> Result<String, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))?;
    let digest = Sha256::digest(&bytes);
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

struct RunContext {
    workdir: PathBuf,
    json: bool,
    started: Instant,
}

impl RunContext {
    /// Writes the run manifest and prints the final summary (JSON or plain).
    fn finish(
        &self,
        subcommand: &str,
        parameters: serde_json::Value,
        inputs: &[PathBuf],
        outputs: &[PathBuf],
        summary: serde_json::Value,
        plain: &str,
    ) -> Result<(), Failure> {
        let mut input_entries = Vec::new();
        for path in inputs {
            input_entries.push(json!({
                "path": path.display().to_string(),
                "sha256": sha256_hex(path)?,
            }));
        }
        let output_names: Vec<String> =
            outputs.iter().map(|p| p.display().to_string()).collect();
        let manifest = json!({
            "schema": "cornerfield-manifest/1",
            "subcommand": subcommand,
            "parameters": parameters,
            "inputs": input_entries,
            "outputs": output_names,
            "version": env!("CARGO_PKG_VERSION"),
            "elapsed_ms": self.started.elapsed().as_millis() as u64,
        });
        let manifest_path = self.workdir.join(format!("{subcommand}-manifest.json"));
        let text = serde_json::to_string_pretty(&manifest)
            .map_err(|e| fail(4, format!("manifest serialization failed: {e}")))?;
        std::fs::write(&manifest_path, text + "\n")
            .map_err(|e| fail(2, format!("cannot write {}: {e}", manifest_path.display())))?;

        if self.json {
            let mut doc = json!({
                "schema": "cornerfield-cli/1",
                "subcommand": subcommand,
                "status": "ok",
                "outputs": output_names,
                "manifest": manifest_path.display().to_string(),
            });
            if let (Some(obj), Some(extra)) = (doc.as_object_mut(), summary.as_object()) {
                for (k, v) in extra {
                    obj.insert(k.clone(), v.clone());
                }
            }
            println!("{doc}");
        } else {
            println!("{plain}");
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

fn angle_in_radians(omega: f64, degrees: bool) -> f64 {
    if degrees {
        omega.to_radians()
    } else {
        omega
    }
}

fn run_spectrum(ctx: &RunContext, args: &SpectrumArgs) -> Result<(), Failure> {
    let omega = angle_in_radians(args.omega, args.degrees);
    let bc = match args.bc {
        BcKind::Dirichlet => BoundaryCondition::Dirichlet,
        BcKind::Neumann => BoundaryCondition::Neumann,
    };
    let (kind, exponents) = match args.geometry {
        GeometryKind::Sector => {
            let geom = SectorGeometry::new(omega)
                .map_err(|e| fail(2, format!("invalid geometry: {e}")))?;
            if geom.is_excluded() {
                return Err(fail(
                    2,
                    format!(
                        "invalid geometry: sector opening {omega} is the excluded straight angle \
                         pi; admissible openings are (0, 2*pi) with pi removed"
                    ),
                ));
            }
            ("sector", sector_exponents(geom, bc, args.lambda_max)?)
        }
        GeometryKind::Cone => {
            let geom = ConeGeometry::new(omega)
                .map_err(|e| fail(2, format!("invalid geometry: {e}")))?;
            ("cone", cone_exponents(geom, bc, args.lambda_max)?)
        }
    };

    let mut csv =
        String::from("value,boundary_condition,angular_index,multiplicity,orders,residual,bracket_lo,bracket_hi\n");
    for e in &exponents {
        let orders = e
            .orders
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join("|");
        let (lo, hi) = match e.bracket {
            Some((lo, hi)) => (csv_f(lo), csv_f(hi)),
            None => (String::new(), String::new()),
        };
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            csv_f(e.value),
            e.boundary_condition,
            e.angular_index,
            e.multiplicity,
            orders,
            csv_f(e.residual),
            lo,
            hi
        ));
    }
    let out = resolve(&ctx.workdir, &args.out);
    std::fs::write(&out, csv).map_err(|e| fail(2, format!("cannot write {}: {e}", out.display())))?;

    let params = json!({
        "geometry": kind,
        "omega": omega,
        "bc": bc.to_string(),
        "lambda_max": args.lambda_max,
        "out": args.out,
    });
    let values: Vec<f64> = exponents.iter().map(|e| e.value).collect();
    ctx.finish(
        "spectrum",
        params,
        &[],
        &[out.clone()],
        json!({ "count": exponents.len(), "values": values }),
        &format!("wrote {} exponents to {}", exponents.len(), out.display()),
    )
}

// ---------------------------------------------------------------------------
// cauchy-null
// ---------------------------------------------------------------------------

fn run_cauchy_null(ctx: &RunContext, args: &CauchyNullArgs) -> Result<(), Failure> {
    let omega = angle_in_radians(args.omega, args.degrees);
    let (kind, geom) = match args.geometry {
        GeometryKind::Sector => (
            "sector",
            Geometry::Sector(
                SectorGeometry::new(omega).map_err(|e| fail(2, format!("invalid geometry: {e}")))?,
            ),
        ),
        GeometryKind::Cone => (
            "cone",
            Geometry::Cone(
                ConeGeometry::new(omega).map_err(|e| fail(2, format!("invalid geometry: {e}")))?,
            ),
        ),
    };
    if args.max_degree < 2 {
        return Err(fail(2, format!("--max-degree must be at least 2, got {}", args.max_degree)));
    }

    let mut reports: Vec<CauchyNullspace> = Vec::new();
    for degree in 2..=args.max_degree {
        let res = match args.precision_bits {
            Some(bits) => cauchy_nullspace_with_precision(geom, degree, bits)?,
            None => cauchy_nullspace(geom, degree)?,
        };
        reports.push(res);
    }

    let inconclusive: Vec<u32> = reports
        .iter()
        .filter(|r| matches!(r.certificate, NullspaceCertificate::Inconclusive { .. }))
        .map(|r| r.degree)
        .collect();

    let degree_docs: Vec<serde_json::Value> = reports
        .iter()
        .map(|r| serde_json::from_str(&r.to_json()).expect("nullspace report is valid JSON"))
        .collect();
    let report = json!({
        "schema": "cauchy-null-report/1",
        "geometry": { "kind": kind, "opening": omega },
        "max_degree": args.max_degree,
        "degrees": degree_docs,
        "all_certified": inconclusive.is_empty(),
    });
    let out = resolve(&ctx.workdir, &args.out);
    let text = serde_json::to_string_pretty(&report)
        .map_err(|e| fail(4, format!("report serialization failed: {e}")))?;
    std::fs::write(&out, text + "\n")
        .map_err(|e| fail(2, format!("cannot write {}: {e}", out.display())))?;

    if !inconclusive.is_empty() {
        let list = inconclusive
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        return Err(fail(
            3,
            format!(
                "certification inconclusive at degree(s) {list}; report with partial results \
                 written to {}",
                out.display()
            ),
        ));
    }

    let params = json!({
        "geometry": kind,
        "omega": omega,
        "max_degree": args.max_degree,
        "precision_bits": args.precision_bits,
        "out": args.out,
    });
    let dims: Vec<serde_json::Value> = reports
        .iter()
        .map(|r| match r.dimension {
            Some(d) => json!(d),
            None => serde_json::Value::Null,
        })
        .collect();
    let plain = format!(
        "certified degrees 2..={}; dimensions {:?}; report at {}",
        args.max_degree,
        reports.iter().map(|r| r.dimension.unwrap_or(usize::MAX)).collect::<Vec<_>>(),
        out.display()
    );
    ctx.finish(
        "cauchy-null",
        params,
        &[],
        &[out.clone()],
        json!({ "dimensions": dims }),
        &plain,
    )
}

// ---------------------------------------------------------------------------
// scatter
// ---------------------------------------------------------------------------

fn load_scene(ctx: &RunContext, scene_arg: &str) -> Result<(PathBuf, Scene), Failure> {
    let path = resolve(&ctx.workdir, scene_arg);
    let scene = Scene::load(&path).map_err(|e| fail(2, e.to_string()))?;
    Ok((path, scene))
}

fn run_scatter(ctx: &RunContext, args: &SceneArgs) -> Result<(), Failure> {
    let (scene_path, scene) = load_scene(ctx, &args.scene)?;
    let runtime = scene.build().map_err(|e| fail(2, e.to_string()))?;
    if runtime.bodies.len() != 1 {
        return Err(fail(
            2,
            "scatter runs need a single body; multi-body scenes are for `sweep` comparisons",
        ));
    }
    let k = runtime.wavenumber.single().map_err(|e| fail(2, e.to_string()))?;
    let (_, field) = &runtime.bodies[0];

    let total = if args.force {
        solve_unchecked(field, k, &runtime.incident, SolveOptions::default())?
    } else {
        solve(field, k, &runtime.incident)?
    };
    let m_angles = runtime.output.angles.unwrap_or(256);
    let far: FarFieldPattern = far_field(field, k, &total, m_angles)?;

    let far_path = resolve(&ctx.workdir, runtime.output.far_field.as_deref().unwrap_or("far.csv"));
    write_far_csv(&far_path, &far).map_err(|e| fail(2, e.to_string()))?;
    let mut outputs = vec![far_path.clone()];
    if let Some(field_out) = &runtime.output.field {
        let field_path = resolve(&ctx.workdir, field_out);
        write_field_bin(&field_path, &total).map_err(|e| fail(2, e.to_string()))?;
        outputs.push(field_path);
    }

    let params = json!({
        "scene": args.scene,
        "force": args.force,
        "k": k,
        "grid": field.n(),
        "angles": m_angles,
    });
    let norm = far.l2_norm();
    let plain = format!(
        "k = {k}: solved {0}x{0} grid in {1} iterations (residual {2:.2e}); far-field L2 norm \
         {norm:.6e}; wrote {3}",
        field.n(),
        total.iterations,
        total.residual,
        far_path.display()
    );
    ctx.finish(
        "scatter",
        params,
        &[scene_path],
        &outputs,
        json!({
            "k": k,
            "far_norm": norm,
            "iterations": total.iterations,
            "solver_residual": total.residual,
        }),
        &plain,
    )
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

fn run_sweep(ctx: &RunContext, args: &SceneArgs) -> Result<(), Failure> {
    let (scene_path, scene) = load_scene(ctx, &args.scene)?;
    let runtime = scene.build().map_err(|e| fail(2, e.to_string()))?;
    let ks = runtime.wavenumber.grid().map_err(|e| fail(2, e.to_string()))?;
    let k_max = ks.iter().cloned().fold(f64::NAN, f64::max);
    let n = runtime.bodies[0].1.n();
    let half_extent = runtime.bodies[0].1.half_extent();
    let needed = min_grid_for(k_max, half_extent);
    if n < needed && !args.force {
        return Err(ScatterError::Resolution { n, needed }.into());
    }

    let m_angles = runtime.output.angles.unwrap_or(256);
    let mut names = Vec::new();
    let mut tables: Vec<SweepTable> = Vec::new();
    for (name, field) in &runtime.bodies {
        let table = sweep(field, &runtime.incident, &ks, m_angles)?;
        names.push(name.clone());
        tables.push(table);
    }

    let sweep_path =
        resolve(&ctx.workdir, runtime.output.sweep.as_deref().unwrap_or("sweep.csv"));
    let table_refs: Vec<&SweepTable> = tables.iter().collect();
    write_sweep_csv(&sweep_path, &names, &table_refs).map_err(|e| fail(2, e.to_string()))?;

    let params = json!({
        "scene": args.scene,
        "force": args.force,
        "k_min": ks.first(),
        "k_max": ks.last(),
        "steps": ks.len(),
        "grid": n,
        "angles": m_angles,
    });
    let flagged: Vec<serde_json::Value> = names
        .iter()
        .zip(&tables)
        .map(|(name, t)| {
            json!({
                "body": name,
                "flagged": t.rows.iter().filter(|r| r.flagged).count(),
                "failed": t.rows.iter().filter(|r| r.failed).count(),
            })
        })
        .collect();
    let plain_counts = names
        .iter()
        .zip(&tables)
        .map(|(name, t)| {
            format!("{name}: {} flagged", t.rows.iter().filter(|r| r.flagged).count())
        })
        .collect::<Vec<_>>()
        .join(", ");
    let plain = format!(
        "swept {} wavenumbers ({} bodies; threshold {:.3e}); {plain_counts}; wrote {}",
        ks.len(),
        names.len(),
        tables[0].threshold,
        sweep_path.display()
    );
    ctx.finish(
        "sweep",
        params,
        &[scene_path],
        &[sweep_path.clone()],
        json!({ "threshold": tables[0].threshold, "bodies": flagged }),
        &plain,
    )
}

// ---------------------------------------------------------------------------
// expand
// ---------------------------------------------------------------------------

/// Exact rational image of a finite f64.
fn rational_of(x: f64, what: &str) -> Result<BigRational, Failure> {
    BigRational::from_float(x).ok_or_else(|| fail(2, format!("{what} must be finite, got {x}")))
}

fn run_expand(ctx: &RunContext, args: &ExpandArgs) -> Result<(), Failure> {
    let job_path = resolve(&ctx.workdir, &args.seeds);
    let job = ExpandJob::load(&job_path).map_err(|e| fail(2, e.to_string()))?;

    let mut seeds: Vec<(u32, CRat, CRat)> = Vec::new();
    for s in &job.seeds {
        let cos = CRat::new(
            rational_of(s.cos[0], "seed coefficient")?,
            rational_of(s.cos[1], "seed coefficient")?,
        );
        let sin = CRat::new(
            rational_of(s.sin[0], "seed coefficient")?,
            rational_of(s.sin[1], "seed coefficient")?,
        );
        seeds.push((s.n, cos, sin));
    }
    let expansion = expand_2d(&seeds, job.k, job.max_degree)
        .map_err(|e| fail(2, format!("expansion failed: {e}")))?;

    let radii = job.radii.clone().unwrap_or_else(|| vec![0.3, 0.15]);
    if radii.iter().any(|&r| !(r > 0.0)) {
        return Err(fail(2, "sampling radii must be positive".to_string()));
    }
    let samples = job.samples_per_radius.unwrap_or(12).max(4);

    // Laplacian check on the lowest two nonvanishing Taylor terms (the
    // homogeneous parts are exact polynomials, so this is exact arithmetic).
    let taylor: Vec<serde_json::Value> = expansion
        .lowest_taylor_terms(2)
        .iter()
        .map(|p| {
            json!({
                "degree": p.degree(),
                "laplacian_zero": p.laplacian().is_zero(),
            })
        })
        .collect();

    // Max |Δu + k²u| over circles of the given radii (angular offset dodges
    // the coordinate axes), plus the log-log decay slope across the radii.
    let mut residuals = Vec::new();
    for &r in &radii {
        let pts: Vec<[f64; 2]> = (0..samples)
            .map(|j| {
                let theta = 0.05 + 2.0 * std::f64::consts::PI * j as f64 / samples as f64;
                [r * theta.cos(), r * theta.sin()]
            })
            .collect();
        residuals.push(helmholtz_residual_2d(&expansion, &pts, job.k));
    }
    let slope = if radii.len() >= 2 && residuals.iter().all(|&v| v > 0.0) {
        let (r_hi, r_lo) = (radii[0], radii[radii.len() - 1]);
        let (v_hi, v_lo) = (residuals[0], residuals[residuals.len() - 1]);
        if (r_hi / r_lo - 1.0).abs() > 1e-12 {
            Some((v_hi / v_lo).ln() / (r_hi / r_lo).ln())
        } else {
            None
        }
    } else {
        None
    };

    let expansion_doc: serde_json::Value =
        serde_json::from_str(&expansion.to_json()).expect("expansion JSON is valid");
    let residual_docs: Vec<serde_json::Value> = radii
        .iter()
        .zip(&residuals)
        .map(|(r, v)| json!({ "radius": r, "max_residual": v }))
        .collect();
    let report = json!({
        "schema": "expand-report/1",
        "expansion": expansion_doc,
        "recurrence_ok": expansion.satisfies_recurrence(),
        "taylor": taylor,
        "residuals": residual_docs,
        "decay_slope": slope,
    });
    let out = resolve(&ctx.workdir, &args.out);
    let text = serde_json::to_string_pretty(&report)
        .map_err(|e| fail(4, format!("report serialization failed: {e}")))?;
    std::fs::write(&out, text + "\n")
        .map_err(|e| fail(2, format!("cannot write {}: {e}", out.display())))?;

    let params = json!({
        "seeds": args.seeds,
        "k": job.k,
        "max_degree": job.max_degree,
        "out": args.out,
    });
    let slope_text = match slope {
        Some(s) => format!("{s:.3}"),
        None => "n/a".to_string(),
    };
    let plain = format!(
        "expanded {} seeds to degree {} (k = {}); worst residual {:.3e}; decay slope {slope_text}; \
         wrote {}",
        job.seeds.len(),
        job.max_degree,
        job.k,
        residuals.iter().cloned().fold(0.0, f64::max),
        out.display()
    );
    ctx.finish(
        "expand",
        params,
        &[job_path],
        &[out.clone()],
        json!({ "residuals": residuals, "decay_slope": slope }),
        &plain,
    )
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

fn run(ctx: &RunContext, command: &Command) -> Result<(), Failure> {
    match command {
        Command::Spectrum(args) => run_spectrum(ctx, args),
        Command::CauchyNull(args) => run_cauchy_null(ctx, args),
        Command::Scatter(args) => run_scatter(ctx, args),
        Command::Sweep(args) => run_sweep(ctx, args),
        Command::Expand(args) => run_expand(ctx, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = RunContext { workdir: cli.workdir.clone(), json: cli.json, started: Instant::now() };
    match run(&ctx, &cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if ctx.json {
                let doc = json!({
                    "schema": "cornerfield-cli/1",
                    "status": "error",
                    "exit": f.code,
                    "message": f.message,
                });
                println!("{doc}");
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

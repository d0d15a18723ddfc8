//! File formats: TOML scene descriptions, CSV/binary outputs, and the JSON
//! job description for series expansions.
//!
//! # Scene files
//!
//! A scene is a TOML document with `[grid]`, `[incident]`, `[wavenumber]`,
//! optional `[output]`, and either a single `[shape]` + `[contrast]` pair or
//! a list of named `[[body]]` tables (each with inline `shape`/`contrast`),
//! used for side-by-side comparison sweeps. See `scenes/` for examples.
//!
//! # Far-field CSV
//!
//! Header `angle,re,im`; one row per uniform angle sample.
//!
//! # Sweep CSV
//!
//! Two comment lines `# floor = …` and `# threshold = …`, then a header and
//! one row per wavenumber. Single-body sweeps use
//! `k,norm,min,max,residual,flagged,failed`; multi-body sweeps use
//! `k` followed by `<name>_norm,<name>_residual,<name>_flagged,<name>_failed`
//! per body.
//!
//! # Field snapshot (binary, little-endian)
//!
//! | offset | size  | content                                     |
//! |--------|-------|---------------------------------------------|
//! | 0      | 4     | magic `b"CFLD"`                             |
//! | 4      | 4     | `u32` version = 1                           |
//! | 8      | 4     | `u32` grid size `n`                         |
//! | 12     | 8     | `f64` half-extent `L`                       |
//! | 20     | 8     | `f64` wavenumber `k`                        |
//! | 28     | 16n²  | row-major cells, per cell `f64` Re, `f64` Im |

use crate::scatter::{
    ContrastField, FarFieldPattern, IncidentField, Profile, ScatterError, Shape, SweepTable,
    TotalField,
};
use num_complex::Complex64;
use serde::Deserialize;
use std::io::{Read, Write};
use std::path::Path;

/// Scene-related failure (parse or validation); maps to CLI exit 2.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneError(pub String);

impl core::fmt::Display for SceneError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SceneError {}

impl From<ScatterError> for SceneError {
    fn from(e: ScatterError) -> Self {
        SceneError(e.to_string())
    }
}

fn err(msg: impl Into<String>) -> SceneError {
    SceneError(msg.into())
}

/// Real or complex scalar written as `x` or `[re, im]`.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Real(f64),
    Complex([f64; 2]),
}

impl ScalarSpec {
    pub fn to_complex(self) -> Complex64 {
        match self {
            ScalarSpec::Real(x) => Complex64::new(x, 0.0),
            ScalarSpec::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub n: usize,
    pub half_extent: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeSpec {
    pub kind: String,
    pub radius: Option<f64>,
    pub center: Option<[f64; 2]>,
    pub side: Option<f64>,
    pub vertices: Option<Vec<[f64; 2]>>,
    pub omega: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExprTermSpec {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
    pub px: u32,
    pub py: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContrastSpec {
    pub q0: Option<ScalarSpec>,
    pub profile: Option<String>,
    pub coeffs: Option<Vec<f64>>,
    pub terms: Option<Vec<ExprTermSpec>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodySpec {
    pub name: String,
    pub shape: ShapeSpec,
    pub contrast: ContrastSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IncidentSpec {
    pub kind: String,
    pub direction: Option<[f64; 2]>,
    pub angle: Option<f64>,
    pub source: Option<[f64; 2]>,
    pub value: Option<ScalarSpec>,
    pub samples: Option<Vec<[f64; 2]>>,
    pub directions: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WavenumberSpec {
    pub k: Option<f64>,
    pub k_min: Option<f64>,
    pub k_max: Option<f64>,
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub far_field: Option<String>,
    pub field: Option<String>,
    pub sweep: Option<String>,
    pub angles: Option<usize>,
}

/// Parsed (but not yet validated) scene document.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub grid: GridSpec,
    pub shape: Option<ShapeSpec>,
    pub contrast: Option<ContrastSpec>,
    #[serde(default)]
    pub body: Vec<BodySpec>,
    pub incident: IncidentSpec,
    pub wavenumber: WavenumberSpec,
    #[serde(default)]
    pub output: OutputSpec,
}

impl Scene {
    pub fn parse(text: &str) -> Result<Scene, SceneError> {
        toml::from_str(text).map_err(|e| err(format!("scene parse error: {e}")))
    }

    pub fn load(path: &Path) -> Result<Scene, SceneError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| err(format!("cannot read scene {}: {e}", path.display())))?;
        Scene::parse(&text)
    }
}

fn build_shape(spec: &ShapeSpec) -> Result<Shape, SceneError> {
    match spec.kind.as_str() {
        "disk" => Ok(Shape::Disk {
            center: spec.center.unwrap_or([0.0, 0.0]),
            radius: spec.radius.ok_or_else(|| err("disk shape needs `radius`"))?,
        }),
        "square" => {
            let s = spec.side.ok_or_else(|| err("square shape needs `side`"))?;
            let c = spec.center.unwrap_or([0.0, 0.0]);
            let h = 0.5 * s;
            Ok(Shape::Polygon {
                vertices: vec![
                    [c[0] - h, c[1] - h],
                    [c[0] + h, c[1] - h],
                    [c[0] + h, c[1] + h],
                    [c[0] - h, c[1] + h],
                ],
            })
        }
        "triangle" => {
            let v = spec
                .vertices
                .clone()
                .ok_or_else(|| err("triangle shape needs `vertices`"))?;
            if v.len() != 3 {
                return Err(err("triangle needs exactly 3 vertices"));
            }
            Ok(Shape::Polygon { vertices: v })
        }
        "polygon" => {
            let v = spec
                .vertices
                .clone()
                .ok_or_else(|| err("polygon shape needs `vertices`"))?;
            Ok(Shape::Polygon { vertices: v })
        }
        "sector" => Ok(Shape::Sector {
            omega: spec.omega.ok_or_else(|| err("sector shape needs `omega`"))?,
            radius: spec.radius.ok_or_else(|| err("sector shape needs `radius`"))?,
        }),
        other => Err(err(format!(
            "unknown shape kind `{other}` (expected disk|square|triangle|polygon|sector)"
        ))),
    }
}

fn build_profile(spec: &ContrastSpec) -> Result<Profile, SceneError> {
    match spec.profile.as_deref().unwrap_or("constant") {
        "constant" => {
            let q0 = spec
                .q0
                .ok_or_else(|| err("constant contrast needs `q0`"))?
                .to_complex();
            Ok(Profile::Constant { q0 })
        }
        "radial" => {
            let coeffs = spec
                .coeffs
                .clone()
                .ok_or_else(|| err("radial contrast needs `coeffs`"))?;
            Ok(Profile::Radial { coeffs })
        }
        "expression" => {
            let terms = spec
                .terms
                .clone()
                .ok_or_else(|| err("expression contrast needs `terms`"))?;
            Ok(Profile::Expression {
                terms: terms
                    .into_iter()
                    .map(|t| (Complex64::new(t.re, t.im), t.px, t.py))
                    .collect(),
            })
        }
        other => Err(err(format!(
            "unknown contrast profile `{other}` (expected constant|radial|expression)"
        ))),
    }
}

fn build_incident(spec: &IncidentSpec) -> Result<IncidentField, SceneError> {
    match spec.kind.as_str() {
        "plane" => {
            if let Some(d) = spec.direction {
                Ok(IncidentField::Plane { direction: d })
            } else if let Some(a) = spec.angle {
                Ok(IncidentField::plane_from_angle(a))
            } else {
                Err(err("plane incident field needs `direction` or `angle`"))
            }
        }
        "point" => Ok(IncidentField::Point {
            source: spec.source.ok_or_else(|| err("point incident field needs `source`"))?,
        }),
        "herglotz" => {
            if let Some(samples) = &spec.samples {
                if samples.is_empty() {
                    return Err(err("herglotz `samples` must be non-empty"));
                }
                Ok(IncidentField::Herglotz {
                    density: samples.iter().map(|s| Complex64::new(s[0], s[1])).collect(),
                })
            } else if let Some(v) = spec.value {
                let m = spec.directions.unwrap_or(64);
                if m == 0 {
                    return Err(err("herglotz `directions` must be positive"));
                }
                Ok(IncidentField::Herglotz { density: vec![v.to_complex(); m] })
            } else {
                Err(err("herglotz incident field needs `value` or `samples`"))
            }
        }
        other => Err(err(format!(
            "unknown incident kind `{other}` (expected plane|point|herglotz)"
        ))),
    }
}

/// Scene compiled to solver inputs.
pub struct SceneRuntime {
    /// Named contrast bodies (one per `[[body]]`, or a single `"scene"` body).
    pub bodies: Vec<(String, ContrastField)>,
    pub incident: IncidentField,
    pub wavenumber: WavenumberSpec,
    pub output: OutputSpec,
}

impl Scene {
    /// Validates the document and builds the solver inputs.
    pub fn build(&self) -> Result<SceneRuntime, SceneError> {
        let mut specs: Vec<(String, &ShapeSpec, &ContrastSpec)> = Vec::new();
        match (&self.shape, &self.contrast, self.body.is_empty()) {
            (Some(s), Some(c), true) => specs.push(("scene".to_string(), s, c)),
            (None, None, false) => {
                for b in &self.body {
                    specs.push((b.name.clone(), &b.shape, &b.contrast));
                }
            }
            (None, None, true) => {
                return Err(err("scene needs either [shape]+[contrast] or [[body]] entries"))
            }
            _ => {
                return Err(err(
                    "scene must use either [shape]+[contrast] or [[body]] entries, not both",
                ))
            }
        }
        let mut bodies = Vec::new();
        for (name, shape_spec, contrast_spec) in specs {
            let shape = build_shape(shape_spec)?;
            let profile = build_profile(contrast_spec)?;
            let field = ContrastField::new(shape, profile, self.grid.n, self.grid.half_extent)
                .map_err(|e| err(format!("body `{name}`: {e}")))?;
            bodies.push((name, field));
        }
        let incident = build_incident(&self.incident)?;
        Ok(SceneRuntime {
            bodies,
            incident,
            wavenumber: self.wavenumber.clone(),
            output: self.output.clone(),
        })
    }
}

impl WavenumberSpec {
    /// Single wavenumber for a scatter run.
    pub fn single(&self) -> Result<f64, SceneError> {
        match (self.k, self.k_min, self.k_max, self.steps) {
            (Some(k), None, None, None) if k > 0.0 => Ok(k),
            (Some(k), _, _, _) if k <= 0.0 => Err(err(format!("wavenumber must be positive, got {k}"))),
            _ => Err(err("scatter runs need `[wavenumber] k = …` (not a range)")),
        }
    }

    /// Wavenumber grid for a sweep run.
    pub fn grid(&self) -> Result<Vec<f64>, SceneError> {
        match (self.k, self.k_min, self.k_max, self.steps) {
            (None, Some(lo), Some(hi), Some(steps)) => {
                crate::scatter::k_grid(lo, hi, steps).map_err(SceneError::from)
            }
            (Some(k), None, None, None) => {
                crate::scatter::k_grid(k, k, 1).map_err(SceneError::from)
            }
            _ => Err(err("sweep runs need `[wavenumber] k_min/k_max/steps`")),
        }
    }
}

fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:?}")
    }
}

/// Writes a far-field pattern as `angle,re,im` CSV.
pub fn write_far_csv(path: &Path, far: &FarFieldPattern) -> Result<(), SceneError> {
    let mut out = String::from("angle,re,im\n");
    for (theta, v) in far.angles().iter().zip(&far.values) {
        out.push_str(&format!("{},{},{}\n", fmt_f64(*theta), fmt_f64(v.re), fmt_f64(v.im)));
    }
    std::fs::write(path, out).map_err(|e| err(format!("cannot write {}: {e}", path.display())))
}

/// Writes one or more co-registered sweep tables as CSV (see module docs).
pub fn write_sweep_csv(
    path: &Path,
    names: &[String],
    tables: &[&SweepTable],
) -> Result<(), SceneError> {
    if names.len() != tables.len() || tables.is_empty() {
        return Err(err("sweep CSV needs one name per table"));
    }
    let mut out = String::new();
    out.push_str(&format!("# floor = {}\n", fmt_f64(tables[0].floor)));
    out.push_str(&format!("# threshold = {}\n", fmt_f64(tables[0].threshold)));
    if tables.len() == 1 {
        out.push_str("k,norm,min,max,residual,flagged,failed\n");
        for row in &tables[0].rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                fmt_f64(row.k),
                fmt_f64(row.norm),
                fmt_f64(row.min_abs),
                fmt_f64(row.max_abs),
                fmt_f64(row.residual),
                row.flagged,
                row.failed
            ));
        }
    } else {
        let n_rows = tables[0].rows.len();
        if tables.iter().any(|t| t.rows.len() != n_rows) {
            return Err(err("sweep tables must share the wavenumber grid"));
        }
        out.push('k');
        for name in names {
            out.push_str(&format!(
                ",{name}_norm,{name}_residual,{name}_flagged,{name}_failed"
            ));
        }
        out.push('\n');
        for i in 0..n_rows {
            out.push_str(&fmt_f64(tables[0].rows[i].k));
            for t in tables {
                let row = &t.rows[i];
                out.push_str(&format!(
                    ",{},{},{},{}",
                    fmt_f64(row.norm),
                    fmt_f64(row.residual),
                    row.flagged,
                    row.failed
                ));
            }
            out.push('\n');
        }
    }
    std::fs::write(path, out).map_err(|e| err(format!("cannot write {}: {e}", path.display())))
}

const FIELD_MAGIC: &[u8; 4] = b"CFLD";

/// Writes a total-field snapshot in the documented binary layout.
pub fn write_field_bin(path: &Path, total: &TotalField) -> Result<(), SceneError> {
    let mut buf = Vec::with_capacity(28 + 16 * total.values.len());
    buf.extend_from_slice(FIELD_MAGIC);
    buf.extend_from_slice(&1u32.to_le_bytes());
    buf.extend_from_slice(&(total.n as u32).to_le_bytes());
    buf.extend_from_slice(&total.half_extent.to_le_bytes());
    buf.extend_from_slice(&total.k.to_le_bytes());
    for v in &total.values {
        buf.extend_from_slice(&v.re.to_le_bytes());
        buf.extend_from_slice(&v.im.to_le_bytes());
    }
    let mut f = std::fs::File::create(path)
        .map_err(|e| err(format!("cannot create {}: {e}", path.display())))?;
    f.write_all(&buf).map_err(|e| err(format!("cannot write {}: {e}", path.display())))
}

/// Reads back a binary field snapshot (`(n, half_extent, k, values)`).
pub fn read_field_bin(path: &Path) -> Result<(usize, f64, f64, Vec<Complex64>), SceneError> {
    let mut buf = Vec::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut buf))
        .map_err(|e| err(format!("cannot read {}: {e}", path.display())))?;
    if buf.len() < 28 || &buf[0..4] != FIELD_MAGIC {
        return Err(err("not a field snapshot (bad magic)"));
    }
    let version = u32::from_le_bytes(buf[4..8].try_into().unwrap());
    if version != 1 {
        return Err(err(format!("unsupported snapshot version {version}")));
    }
    let n = u32::from_le_bytes(buf[8..12].try_into().unwrap()) as usize;
    let half_extent = f64::from_le_bytes(buf[12..20].try_into().unwrap());
    let k = f64::from_le_bytes(buf[20..28].try_into().unwrap());
    if buf.len() != 28 + 16 * n * n {
        return Err(err("snapshot payload size mismatch"));
    }
    let mut values = Vec::with_capacity(n * n);
    for cell in buf[28..].chunks_exact(16) {
        values.push(Complex64::new(
            f64::from_le_bytes(cell[0..8].try_into().unwrap()),
            f64::from_le_bytes(cell[8..16].try_into().unwrap()),
        ));
    }
    Ok((n, half_extent, k, values))
}

/// JSON job description for a series expansion run.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpandJob {
    pub k: f64,
    pub max_degree: u32,
    pub seeds: Vec<ExpandSeed>,
    /// Sampling radii for the residual decay diagnostic (default `[0.3, 0.15]`).
    pub radii: Option<Vec<f64>>,
    /// Angular samples per radius (default 12).
    pub samples_per_radius: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpandSeed {
    pub n: u32,
    /// Cosine-trace coefficient `[re, im]`.
    pub cos: [f64; 2],
    /// Sine-trace coefficient `[re, im]` (ignored for n = 0).
    #[serde(default)]
    pub sin: [f64; 2],
}

impl ExpandJob {
    pub fn parse(text: &str) -> Result<ExpandJob, SceneError> {
        serde_json::from_str(text).map_err(|e| err(format!("expand job parse error: {e}")))
    }

    pub fn load(path: &Path) -> Result<ExpandJob, SceneError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| err(format!("cannot read job {}: {e}", path.display())))?;
        ExpandJob::parse(&text)
    }
}

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use qgt_core::analysis::{find_all_triangulations, gqt_report, relation_census, GQTReport, ReportOptions};
use qgt_core::field::WithField;
use qgt_core::homological::{resolution, ResolutionTrace};
use qgt_core::quiver::{export_dot, QuiverFile};
use qgt_core::surface::{quiver_of_surface, surface_from_quiver, surface_of_quiver, SurfaceFile};
use qgt_core::{build_algebra, BuildOptions, Error, Field, Presentation, VertexIdx};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{FamilyArgs, Output, SourceArgs, SurfaceAction};
use crate::input::{self, Document};
use crate::{CliError, Settings};

/// Text and JSON renderings of one result.
pub struct Rendered {
    pub json: Value,
    pub text: String,
}

impl Rendered {
    pub fn pick(&self, output: Output) -> String {
        match output {
            Output::Json => serde_json::to_string_pretty(&self.json).expect("serializable") + "\n",
            Output::Text => self.text.clone(),
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Per-file verdicts; the error carries the worst exit status.
pub fn validate(paths: &[PathBuf]) -> (Rendered, Option<CliError>) {
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut worst: Option<CliError> = None;
    for path in paths {
        let outcome = input::load(path).and_then(|doc| describe(&doc).map(|d| (doc.kind(), d)));
        match outcome {
            Ok((kind, detail)) => {
                let _ = writeln!(text, "{}: valid {kind} ({detail})", path.display());
                rows.push(json!({"path": path.display().to_string(), "valid": true, "kind": kind, "detail": detail}));
            }
            Err(e) => {
                let _ = writeln!(text, "{}: invalid: {e}", path.display());
                rows.push(json!({"path": path.display().to_string(), "valid": false, "error": e.to_string()}));
                if worst.as_ref().is_none_or(|w| e.exit_code() < w.exit_code()) {
                    worst = Some(e);
                }
            }
        }
    }
    (
        Rendered {
            json: Value::Array(rows),
            text,
        },
        worst,
    )
}

fn describe(doc: &Document) -> Result<String, CliError> {
    Ok(match doc {
        Document::Quiver(file) => {
            let q = file.to_quiver().map_err(Error::from)?;
            let mut d = format!("{} vertices, {} arrows", q.vertex_count(), q.arrow_count());
            if file.f.is_some() {
                let tq = file.to_triangulation().map_err(Error::from)?;
                let _ = write!(d, ", triangulation with {} g-orbits", tq.orbits().len());
            }
            d
        }
        Document::Surface(file) => {
            let s = file.to_surface().map_err(Error::from)?;
            let r = s.cell_complex();
            format!(
                "{} edges, {} triangles, euler characteristic {}",
                s.edges().len(),
                s.triangles().len(),
                r.euler_characteristic
            )
        }
        Document::Presentation(file) => {
            let p = file.to_presentation()?;
            format!(
                "{} vertices, {} arrows, {} relations over {}",
                p.quiver().vertex_count(),
                p.quiver().arrow_count(),
                p.relations().len(),
                p.field()
            )
        }
    })
}

pub fn generate(
    settings: &Settings,
    family: &FamilyArgs,
    out: Option<&Path>,
    dsl: Option<&Path>,
) -> Result<Rendered, CliError> {
    let p = input::generate(family, settings.field)?;
    let json = to_json(&p.to_file());
    if let Some(path) = out {
        write_file(
            path,
            &(serde_json::to_string_pretty(&json).expect("serializable") + "\n"),
        )?;
    }
    if let Some(path) = dsl {
        write_file(path, &p.to_dsl())?;
    }
    Ok(Rendered { json, text: p.to_dsl() })
}

struct AnalyzeJob<'a> {
    p: &'a Presentation,
    opts: ReportOptions,
    all: bool,
}

impl WithField for AnalyzeJob<'_> {
    type Output = Result<(GQTReport, Option<Vec<Vec<Vec<String>>>>), Error>;

    fn run<F: Field>(self, field: F) -> Self::Output {
        let a = build_algebra(self.p, field, &BuildOptions::default())?;
        let report = gqt_report(&a, &self.opts);
        let all = if self.all {
            relation_census(&a)
                .ok()
                .and_then(|c| find_all_triangulations(&a, &c))
                .map(|ts| ts.iter().map(|tq| tq.f_perm().cycles_as_ids(tq.quiver())).collect())
        } else {
            None
        };
        Ok((report, all))
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cycles_text(cycles: &[Vec<String>]) -> String {
    cycles
        .iter()
        .map(|c| format!("({})", c.join(" ")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn report_text(r: &GQTReport) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "field {}, dimension {}", r.field, r.dimension);
    let _ = writeln!(t, "2-regular: {}, connected: {}", yes(r.two_regular), yes(r.connected));
    let _ = writeln!(t, "symmetric: {}", r.symmetric.detail);
    let periods: Vec<String> = r
        .simple_periods
        .iter()
        .map(|s| format!("{}:{}", s.vertex, s.period.map_or("-".to_string(), |p| p.to_string())))
        .collect();
    let _ = writeln!(t, "periods of simples: {}", periods.join(" "));
    let _ = writeln!(t, "cartan determinant: {}", r.cartan_determinant);
    let _ = writeln!(t, "J^2/J^3 dimensions equal 2: {}", yes(r.census.layers.pass));
    let _ = writeln!(
        t,
        "two independent minimal relations at every vertex: {}",
        yes(r.census.two_relations)
    );
    if let Some(p) = &r.census.propagation {
        match &p.skipped {
            Some(why) => {
                let _ = writeln!(t, "relation propagation: skipped ({why})");
            }
            None => {
                let _ = writeln!(
                    t,
                    "relation propagation: {} inconsistencies over {} vertices",
                    p.inconsistencies.len(),
                    p.checked
                );
            }
        }
    }
    match &r.triangulation {
        Some(c) => {
            let _ = writeln!(t, "triangulation: {}", cycles_text(c));
        }
        None => {
            let _ = writeln!(t, "triangulation: none");
        }
    }
    let family = to_json(&r.family);
    let _ = write!(t, "family: {}", family.as_str().unwrap_or("unknown"));
    if let Some(w) = &r.weights {
        let _ = write!(t, " {}", w.summary());
    }
    t.push('\n');
    if r.verdict.consistent {
        t.push_str("verdict: consistent with generalized quaternion type\n");
    } else {
        t.push_str("verdict: violates\n");
        for v in &r.verdict.violations {
            let _ = writeln!(t, "  - {v}");
        }
    }
    t
}

pub fn analyze(
    settings: &Settings,
    src: &SourceArgs,
    report: Option<&Path>,
    all: bool,
    trials: usize,
) -> Result<Rendered, CliError> {
    let p = input::presentation(src, settings.field)?;
    let opts = ReportOptions {
        bound: settings.bound,
        trials,
        seed: settings.seed,
    };
    let (r, triangulations) = p
        .field()
        .dispatch(AnalyzeJob { p: &p, opts, all })
        .map_err(Error::from)??;
    let mut json = to_json(&r);
    if let Some(path) = report {
        write_file(
            path,
            &(serde_json::to_string_pretty(&json).expect("serializable") + "\n"),
        )?;
    }
    let mut text = report_text(&r);
    if let Some(ts) = triangulations {
        let _ = writeln!(text, "compatible triangulations: {}", ts.len());
        for c in &ts {
            let _ = writeln!(text, "  {}", cycles_text(c));
        }
        json["all_triangulations"] = to_json(&ts);
    } else if all {
        text.push_str("compatible triangulations: not enumerated (more than 16 arrows)\n");
    }
    Ok(Rendered { json, text })
}

struct ResolveJob<'a> {
    p: &'a Presentation,
    vertices: Vec<VertexIdx>,
    bound: usize,
}

impl WithField for ResolveJob<'_> {
    type Output = Result<Vec<ResolutionTrace>, Error>;

    fn run<F: Field>(self, field: F) -> Self::Output {
        let a = build_algebra(self.p, field, &BuildOptions::default())?;
        self.vertices
            .par_iter()
            .map(|&v| resolution(&a, v, self.bound).map_err(Error::from))
            .collect()
    }
}

fn cover_text(ids: &[String], cover: &[usize]) -> String {
    let parts: Vec<String> = cover
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| {
            if k == 1 {
                format!("P_{}", ids[v])
            } else {
                format!("P_{}^{k}", ids[v])
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn resolve(settings: &Settings, src: &SourceArgs, vertex: Option<&str>) -> Result<Rendered, CliError> {
    let p = input::presentation(src, settings.field)?;
    let q = p.quiver();
    let vertices = match vertex {
        Some(id) => vec![q.require_vertex(id).map_err(Error::from)?],
        None => q.vertices().collect(),
    };
    let traces = p
        .field()
        .dispatch(ResolveJob {
            p: &p,
            vertices,
            bound: settings.bound,
        })
        .map_err(Error::from)??;
    let ids = q.vertex_ids();
    let mut text = String::new();
    let mut rows = Vec::new();
    for t in &traces {
        let id = &ids[t.vertex];
        let _ = writeln!(text, "S_{id} over {}", p.field());
        for (k, s) in t.steps.iter().enumerate() {
            let dim: usize = s.dims.iter().sum();
            let _ = writeln!(
                text,
                "  Omega^{k}: dim {dim} {:?}  cover {}",
                s.dims,
                cover_text(ids, &s.cover)
            );
        }
        match t.period {
            Some(n) => {
                let _ = writeln!(text, "  period {n}");
            }
            None => {
                let _ = writeln!(text, "  no period within {}", settings.bound);
            }
        }
        let mut row = to_json(t);
        row["vertex"] = json!(id);
        rows.push(row);
    }
    Ok(Rendered {
        json: json!({"field": p.field().to_string(), "bound": settings.bound, "resolutions": rows}),
        text,
    })
}

pub fn surface(action: &SurfaceAction) -> Result<Rendered, CliError> {
    match action {
        SurfaceAction::ToQuiver { path } => {
            let s = match input::load(path)? {
                Document::Surface(file) => file.to_surface().map_err(Error::from)?,
                other => {
                    return Err(CliError::Usage(format!(
                        "{}: expected a surface, found a {}",
                        path.display(),
                        other.kind()
                    )))
                }
            };
            let tq = quiver_of_surface(&s).map_err(Error::from)?;
            let file = QuiverFile::from_triangulation(&tq);
            let q = tq.quiver();
            let text = format!(
                "{} vertices, {} arrows\nf: {}\n",
                q.vertex_count(),
                q.arrow_count(),
                cycles_text(&tq.f_perm().cycles_as_ids(q))
            );
            Ok(Rendered {
                json: to_json(&file),
                text,
            })
        }
        SurfaceAction::FromQuiver { path } => {
            let tq = input::load_triangulation(path)?;
            let s = surface_from_quiver(&tq);
            let report = surface_of_quiver(&tq);
            let text = format!(
                "euler characteristic {}, {}, {} boundary components\n{} vertices, {} edges, {} faces\n",
                report.euler_characteristic,
                if report.orientable {
                    "orientable"
                } else {
                    "non-orientable"
                },
                report.boundary_components,
                report.vertex_count,
                report.edge_count,
                report.face_count
            );
            Ok(Rendered {
                json: json!({"surface": to_json(&SurfaceFile::from_surface(&s)), "topology": to_json(&report)}),
                text,
            })
        }
    }
}

pub fn export(path: &Path, out: Option<&Path>) -> Result<Rendered, CliError> {
    let dot = match input::load(path)? {
        Document::Quiver(file) => {
            let q = file.to_quiver().map_err(Error::from)?;
            match file.f {
                Some(_) => {
                    let tq = file.to_triangulation().map_err(Error::from)?;
                    export_dot(tq.quiver(), Some(tq.f_perm()))
                }
                None => export_dot(&q, None),
            }
        }
        Document::Presentation(file) => {
            let p = file.to_presentation()?;
            export_dot(p.quiver(), p.triangulation_perm())
        }
        Document::Surface(file) => {
            let tq = quiver_of_surface(&file.to_surface().map_err(Error::from)?).map_err(Error::from)?;
            export_dot(tq.quiver(), Some(tq.f_perm()))
        }
    };
    if let Some(path) = out {
        write_file(path, &dot)?;
    }
    Ok(Rendered {
        json: json!({"dot": dot}),
        text: dot,
    })
}

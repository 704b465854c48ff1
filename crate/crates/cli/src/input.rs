use std::fs;
use std::path::Path;

use qgt_core::field::{parse_scalar, scalar_from_i64};
use qgt_core::instances;
use qgt_core::presentation::{deformed_relations, tetrahedral_presentation, weighted_relations, PresentationFile};
use qgt_core::quiver::QuiverFile;
use qgt_core::surface::SurfaceFile;
use qgt_core::{Error, FieldDescriptor, Presentation, Scalar, TriangulationQuiver, WeightData};

use crate::args::{FamilyArgs, FamilyName, SourceArgs};
use crate::CliError;

/// A JSON input, classified by its top-level keys.
pub enum Document {
    Presentation(PresentationFile),
    Quiver(QuiverFile),
    Surface(SurfaceFile),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Presentation(_) => "presentation",
            Document::Quiver(_) => "quiver",
            Document::Surface(_) => "surface",
        }
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn load(path: &Path) -> Result<Document, CliError> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(Error::from)?;
    let has = |k: &str| value.get(k).is_some();
    let doc = if has("relations") {
        Document::Presentation(serde_json::from_value(value).map_err(Error::from)?)
    } else if has("triangles") {
        Document::Surface(serde_json::from_value(value).map_err(Error::from)?)
    } else if has("arrows") {
        Document::Quiver(serde_json::from_value(value).map_err(Error::from)?)
    } else {
        return Err(CliError::Usage(format!(
            "{}: expected a quiver, surface or presentation document",
            path.display()
        )));
    };
    Ok(doc)
}

/// A triangulation quiver from a quiver, presentation or surface document.
pub fn load_triangulation(path: &Path) -> Result<TriangulationQuiver, CliError> {
    match load(path)? {
        Document::Quiver(q) => Ok(q.to_triangulation().map_err(Error::from)?),
        Document::Presentation(p) => p
            .to_presentation()?
            .triangulation()
            .ok_or_else(|| CliError::Usage(format!("{}: presentation carries no valid f", path.display()))),
        Document::Surface(s) => {
            let surface = s.to_surface().map_err(Error::from)?;
            Ok(qgt_core::surface::quiver_of_surface(&surface).map_err(Error::from)?)
        }
    }
}

fn scalar(s: &str) -> Result<Scalar, CliError> {
    Ok(parse_scalar(s).map_err(Error::from)?)
}

fn weights(args: &FamilyArgs, tq: &TriangulationQuiver) -> Result<WeightData, CliError> {
    let mut w = match &args.weights {
        Some(path) => serde_json::from_str(&read(path)?).map_err(Error::from)?,
        None => WeightData::uniform(tq, args.m, scalar(&args.c)?),
    };
    if !args.b.is_empty() {
        let q = tq.quiver();
        let border: Vec<String> = tq.border().vertices().map(|v| q.vertex_id(v).to_string()).collect();
        let values = match args.b.len() {
            1 => vec![args.b[0].clone(); border.len()],
            n if n == border.len() => args.b.clone(),
            n => {
                return Err(CliError::Usage(format!(
                    "--b has {n} values but the quiver has {} border vertices",
                    border.len()
                )))
            }
        };
        for (v, s) in border.into_iter().zip(values) {
            w.b.insert(v, scalar(&s)?);
        }
    }
    Ok(w)
}

pub fn generate(args: &FamilyArgs, field: Option<FieldDescriptor>) -> Result<Presentation, CliError> {
    let family = args
        .family
        .ok_or_else(|| CliError::Usage("either --input or --family is required".into()))?;
    let quiver = || match &args.quiver {
        Some(path) => load_triangulation(path),
        None => Err(CliError::Usage(format!("--family {family} needs --quiver"))),
    };
    let p = match family {
        FamilyName::Markov => {
            let tq = instances::markov_quiver();
            weighted_relations(&tq, &weights(args, &tq)?).map_err(Error::from)?
        }
        FamilyName::Weighted => {
            let tq = quiver()?;
            let mut w = weights(args, &tq)?;
            w.b.retain(|_, s| *s != scalar_from_i64(0));
            weighted_relations(&tq, &w).map_err(Error::from)?
        }
        FamilyName::Deformed => {
            let tq = quiver()?;
            deformed_relations(&tq, &weights(args, &tq)?).map_err(Error::from)?
        }
        FamilyName::Tetrahedral => tetrahedral_presentation(args.m, scalar(&args.lambda)?).map_err(Error::from)?,
    };
    let field = field.unwrap_or(FieldDescriptor::Rationals);
    Ok(p.with_field(field).map_err(Error::from)?)
}

/// The presentation named by `--input` or the family flags.
pub fn presentation(src: &SourceArgs, field: Option<FieldDescriptor>) -> Result<Presentation, CliError> {
    match &src.input {
        Some(path) => match load(path)? {
            Document::Presentation(file) => {
                let p = file.to_presentation()?;
                Ok(match field {
                    Some(f) => p.with_field(f).map_err(Error::from)?,
                    None => p,
                })
            }
            other => Err(CliError::Usage(format!(
                "{}: expected a presentation, found a {}",
                path.display(),
                other.kind()
            ))),
        },
        None => generate(&src.family, field),
    }
}

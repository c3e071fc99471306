use std::path::{Path, PathBuf};
use tauberian_lab::asymptotics::SingularPart;
use tauberian_lab::gallery::{Gallery, GalleryEntry};
use tauberian_lab::signal::{SampledFunction, StieltjesFunction};
use tauberian_lab::Error;

/// Failure of a command, with the structured kind used in error reports.
#[derive(Debug)]
pub struct CliError {
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            kind: "Usage".into(),
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            kind: "Io".into(),
            message: message.into(),
        }
    }

    /// Library error raised while handling `path`.
    pub fn at(path: &Path, e: Error) -> Self {
        Self {
            kind: e.kind().into(),
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self {
            kind: e.kind().into(),
            message: e.to_string(),
        }
    }
}

impl From<String> for CliError {
    fn from(message: String) -> Self {
        Self::io(message)
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

pub fn load_gallery(path: Option<&Path>) -> CliResult<Gallery> {
    match path {
        None => Ok(Gallery::builtin()),
        Some(p) => Gallery::from_json(&read(p)?).map_err(|e| CliError::at(p, e)),
    }
}

/// Singular part JSON. serde reports the line and column of a syntax or
/// schema error.
pub fn load_singular_part(path: &Path) -> CliResult<SingularPart> {
    let text = read(path)?;
    let sp: SingularPart =
        serde_json::from_str(&text).map_err(|e| CliError::at(path, Error::from(e)))?;
    sp.validate().map_err(|e| CliError::at(path, e))?;
    Ok(sp)
}

pub fn load_stieltjes(path: &Path) -> CliResult<StieltjesFunction> {
    let text = read(path)?;
    StieltjesFunction::read_csv(text.as_bytes()).map_err(|e| CliError::at(path, e))
}

/// A sampled fixture: either an `x,re,im` CSV file or a gallery entry.
pub struct Fixture {
    pub name: String,
    pub entry: Option<GalleryEntry>,
    pub f: SampledFunction,
}

pub fn load_fixture(
    source: &str,
    gallery: Option<&Path>,
    dx: Option<f64>,
    xmax: Option<f64>,
) -> CliResult<Fixture> {
    let path = PathBuf::from(source);
    if source.ends_with(".csv") || path.is_file() {
        let text = read(&path)?;
        let f = SampledFunction::read_csv(text.as_bytes()).map_err(|e| CliError::at(&path, e))?;
        if dx.is_some() || xmax.is_some() {
            return Err(CliError::usage(
                "--dx and --xmax apply to gallery fixtures only; CSV data keeps its own grid",
            ));
        }
        return Ok(Fixture {
            name: source.to_string(),
            entry: None,
            f,
        });
    }
    let g = load_gallery(gallery)?;
    let entry = g.get(source).map_err(|_| {
        CliError::usage(format!(
            "{source:?} is neither a CSV file nor a gallery entry (known: {})",
            g.names().join(", ")
        ))
    })?;
    let f = entry.sample_on(dx.unwrap_or(entry.grid.dx), xmax.unwrap_or(entry.grid.xmax))?;
    Ok(Fixture {
        name: entry.name.clone(),
        entry: Some(entry.clone()),
        f,
    })
}

use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};
use tempfile::NamedTempFile;

use crate::svg::{plot_csv, Plot};

/// Where reports go: files under `dir`, plus stdout in text or JSON form.
pub struct Output {
    pub dir: PathBuf,
    pub json: bool,
}

impl Output {
    /// Write through a temporary file in the target directory, then rename.
    pub fn write(&self, name: &str, bytes: &[u8]) -> Result<PathBuf, String> {
        std::fs::create_dir_all(&self.dir)
            .map_err(|e| format!("cannot create {}: {e}", self.dir.display()))?;
        let path = self.dir.join(name);
        write_atomic(&path, bytes)?;
        Ok(path)
    }

    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> Result<PathBuf, String> {
        let mut s = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
        s.push('\n');
        self.write(name, s.as_bytes())
    }

    /// Write the CSV, then render the plot from the written text.
    pub fn write_csv_and_plot(
        &self,
        stem: &str,
        csv_text: &str,
        plot: &Plot,
    ) -> Result<(), String> {
        self.write(&format!("{stem}.csv"), csv_text.as_bytes())?;
        let svg = plot_csv(csv_text, plot)?;
        self.write(&format!("{stem}.svg"), svg.as_bytes())?;
        Ok(())
    }

    /// Print either the JSON value or the text summary.
    pub fn report<T: Serialize>(&self, value: &T, text: &str) -> Result<(), String> {
        if self.json {
            let s = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
            println!("{s}");
        } else {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
        }
        Ok(())
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), String> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut tmp =
        NamedTempFile::new_in(dir).map_err(|e| format!("cannot create temp file: {e}"))?;
    tmp.write_all(bytes)
        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    tmp.persist(path)
        .map_err(|e| format!("cannot rename into {}: {e}", path.display()))?;
    Ok(())
}

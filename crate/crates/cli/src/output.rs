use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use serde::Serialize;

/// Where results go: stdout, or files inside a directory.
pub struct Sink {
    dir: Option<PathBuf>,
}

impl Sink {
    pub fn new(dir: Option<PathBuf>) -> anyhow::Result<Sink> {
        if let Some(d) = &dir {
            std::fs::create_dir_all(d)
                .with_context(|| format!("creating output directory {}", d.display()))?;
        }
        Ok(Sink { dir })
    }

    fn file(&self, name: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(name))
    }

    pub fn csv(&self, name: &str, header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<()> {
        let out: Box<dyn Write> = match self.file(name) {
            Some(p) => Box::new(
                std::fs::File::create(&p).with_context(|| format!("writing {}", p.display()))?,
            ),
            None => Box::new(std::io::stdout().lock()),
        };
        let mut w = csv::Writer::from_writer(out);
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
        if let Some(p) = self.file(name) {
            log::info!("wrote {}", p.display());
        }
        Ok(())
    }

    /// Pretty JSON on stdout, and in the directory when there is one.
    pub fn json<T: Serialize>(&self, name: &str, value: &T) -> anyhow::Result<()> {
        let text = serde_json::to_string_pretty(value)?;
        writeln!(std::io::stdout().lock(), "{text}")?;
        self.write_text(name, &text)
    }

    /// JSON written only when an output directory is set.
    pub fn json_file_only<T: Serialize>(&self, name: &str, value: &T) -> anyhow::Result<()> {
        if self.dir.is_some() {
            self.write_text(name, &serde_json::to_string_pretty(value)?)?;
        }
        Ok(())
    }

    fn write_text(&self, name: &str, text: &str) -> anyhow::Result<()> {
        if let Some(p) = self.file(name) {
            std::fs::write(&p, format!("{text}\n"))
                .with_context(|| format!("writing {}", p.display()))?;
            log::info!("wrote {}", p.display());
        }
        Ok(())
    }
}

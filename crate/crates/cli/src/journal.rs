//! Append-only certificate journal: one JSON object per line, duplicates
//! detected by (object hash, degree bound, primes).

use anyhow::{Context, Result};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use webode::invariants::Certificate;

/// A serialized sink for certificates. Writers go through one lock, so
/// concurrent witnesses append exactly once each.
pub struct Journal {
    path: PathBuf,
    lock: Mutex<()>,
}

/// Outcome of an append attempt.
#[derive(Debug, PartialEq, Eq)]
pub enum Appended {
    Written,
    /// The same (object, degree bound, primes) was already certified.
    Duplicate,
}

impl Journal {
    pub fn at(path: &Path) -> Journal {
        Journal { path: path.to_path_buf(), lock: Mutex::new(()) }
    }

    /// Reads every record currently in the journal.
    pub fn read_all(&self) -> Result<Vec<Certificate>> {
        if !self.path.exists() {
            return Ok(Vec::new());
        }
        let text = std::fs::read_to_string(&self.path)
            .with_context(|| format!("reading {}", self.path.display()))?;
        let mut out = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let cert: Certificate = serde_json::from_str(line)
                .with_context(|| format!("{}:{}: bad record", self.path.display(), lineno + 1))?;
            out.push(cert);
        }
        Ok(out)
    }

    /// Appends the certificate unless an identical key is already present.
    pub fn append(&self, cert: &Certificate) -> Result<Appended> {
        let _guard = self.lock.lock().expect("journal lock");
        let existing = self.read_all()?;
        if existing.iter().any(|c| c.dedup_key() == cert.dedup_key()) {
            return Ok(Appended::Duplicate);
        }
        if let Some(parent) = self.path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)
                    .with_context(|| format!("creating {}", parent.display()))?;
            }
        }
        let mut file = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .with_context(|| format!("opening {}", self.path.display()))?;
        let line = serde_json::to_string(cert).context("serializing certificate")?;
        writeln!(file, "{line}").context("appending record")?;
        Ok(Appended::Written)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use webode::algebra::Field;
    use webode::contact::SecondOrderODE;
    use webode::invariants::{screen_finite_field, ScreenConfig, ScreenObject};

    fn sample_certificate() -> Certificate {
        let l = SecondOrderODE::lines_equation(Field::Rational);
        let config = ScreenConfig { degree_bound: 1, primes: vec![3], budget: 10_000 };
        screen_finite_field(ScreenObject::Ode(&l), &config).unwrap()
    }

    #[test]
    fn append_and_dedup() {
        let dir = std::env::temp_dir().join(format!("webode-journal-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let journal = Journal::at(&dir.join("certs.jsonl"));
        let cert = sample_certificate();
        assert_eq!(journal.append(&cert).unwrap(), Appended::Written);
        assert_eq!(journal.append(&cert).unwrap(), Appended::Duplicate);
        assert_eq!(journal.read_all().unwrap().len(), 1);
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn concurrent_appends_land_exactly_once_each() {
        let dir = std::env::temp_dir().join(format!("webode-journal-c-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let journal = std::sync::Arc::new(Journal::at(&dir.join("certs.jsonl")));
        let base = sample_certificate();
        let mut handles = Vec::new();
        for i in 0..8u32 {
            let journal = journal.clone();
            let mut cert = base.clone();
            cert.degree_bound = i + 1; // distinct keys
            handles.push(std::thread::spawn(move || journal.append(&cert).unwrap()));
        }
        for h in handles {
            assert_eq!(h.join().unwrap(), Appended::Written);
        }
        assert_eq!(journal.read_all().unwrap().len(), 8);
        let _ = std::fs::remove_dir_all(&dir);
    }
}

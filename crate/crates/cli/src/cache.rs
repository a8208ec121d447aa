//! On-disk cache of constructed complexes.
//!
//! Each entry is one file named after the SHA-256 of its key. The file
//! holds the hex digest of the payload on the first line and the payload
//! JSON after it. Anything that fails to parse, has the wrong digest or
//! key, or does not rebuild into a valid complex is treated as missing.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use f2linalg::{Bigrading, ChainComplex};
use hochschild::{DoubledComplex, HochschildComplex};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tate::TateComplex;

const FORMAT: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Entry {
    format: u32,
    key: String,
    grading: Vec<(i32, i32)>,
    images: Vec<Vec<u32>>,
    labels: Vec<String>,
    tau: Option<Vec<u32>>,
}

impl Entry {
    fn new(key: &str, complex: &ChainComplex, labels: &[String], tau: Option<&[u32]>) -> Self {
        Self {
            format: FORMAT,
            key: key.to_string(),
            grading: complex.grading().iter().map(|b| (b.h, b.q)).collect(),
            images: (0..complex.len()).map(|g| complex.image(g).to_vec()).collect(),
            labels: labels.to_vec(),
            tau: tau.map(<[u32]>::to_vec),
        }
    }

    fn complex(&self) -> Result<ChainComplex> {
        anyhow::ensure!(
            self.images.len() == self.grading.len(),
            "image and grading counts differ"
        );
        anyhow::ensure!(
            self.labels.len() == self.grading.len(),
            "label and grading counts differ"
        );
        let n = self.grading.len() as u32;
        anyhow::ensure!(self.images.iter().flatten().all(|&t| t < n), "image index out of range");
        anyhow::ensure!(
            self.images.iter().all(|im| im.windows(2).all(|p| p[0] < p[1])),
            "images are not sorted"
        );
        let grading = self.grading.iter().map(|&(h, q)| Bigrading::new(h, q)).collect();
        let c = ChainComplex::from_images(grading, self.images.clone());
        c.validate()?;
        Ok(c)
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Messages about entries that had to be recomputed.
pub type Warnings = Vec<String>;

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Path of the entry for `key`.
    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", sha256_hex(key.as_bytes())))
    }

    fn read(&self, key: &str, warnings: &mut Warnings) -> Option<Entry> {
        let path = self.path(key);
        let text = fs::read_to_string(&path).ok()?;
        let parsed = (|| -> Result<Entry> {
            let (digest, payload) = text.split_once('\n').context("missing digest line")?;
            anyhow::ensure!(sha256_hex(payload.as_bytes()) == digest, "digest mismatch");
            let entry: Entry = serde_json::from_str(payload)?;
            anyhow::ensure!(entry.format == FORMAT, "unknown format {}", entry.format);
            anyhow::ensure!(entry.key == key, "entry belongs to a different key");
            Ok(entry)
        })();
        match parsed {
            Ok(e) => Some(e),
            Err(err) => {
                warnings.push(format!(
                    "cache entry {} is corrupt ({err}); recomputing",
                    path.display()
                ));
                None
            }
        }
    }

    fn write(&self, entry: &Entry) -> Result<()> {
        let payload = serde_json::to_string(entry)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        writeln!(tmp, "{}", sha256_hex(payload.as_bytes()))?;
        tmp.write_all(payload.as_bytes())?;
        tmp.persist(self.path(&entry.key))?;
        Ok(())
    }

    fn rebuilt<T>(&self, key: &str, warnings: &mut Warnings, rebuild: impl FnOnce(&Entry) -> Result<T>) -> Option<T> {
        let entry = self.read(key, warnings)?;
        match rebuild(&entry) {
            Ok(v) => Some(v),
            Err(err) => {
                warnings.push(format!(
                    "cache entry {} is corrupt ({err}); recomputing",
                    self.path(key).display()
                ));
                None
            }
        }
    }

    /// Loads the Hochschild complex stored under `key`, or builds it with
    /// `make` and stores it.
    pub fn hochschild<E>(
        &self,
        key: &str,
        warnings: &mut Warnings,
        make: impl FnOnce() -> Result<HochschildComplex, E>,
    ) -> Result<HochschildComplex>
    where
        E: std::error::Error + Send + Sync + 'static,
    {
        let hit = self.rebuilt(key, warnings, |e| {
            anyhow::ensure!(e.tau.is_none(), "expected a single complex");
            Ok(HochschildComplex {
                complex: e.complex()?,
                labels: e.labels.clone(),
            })
        });
        if let Some(hc) = hit {
            return Ok(hc);
        }
        let hc = make()?;
        self.write(&Entry::new(key, &hc.complex, &hc.labels, None))?;
        Ok(hc)
    }

    /// Loads the Tate complex stored under `key`, or builds it with `make`
    /// and stores it.
    pub fn tate<E>(
        &self,
        key: &str,
        warnings: &mut Warnings,
        make: impl FnOnce() -> Result<TateComplex, E>,
    ) -> Result<TateComplex>
    where
        E: std::error::Error + Send + Sync + 'static,
    {
        let hit = self.rebuilt(key, warnings, |e| {
            let tau = e.tau.clone().context("missing involution")?;
            anyhow::ensure!(tau.len() == e.labels.len(), "involution has the wrong length");
            anyhow::ensure!(
                tau.iter().all(|&t| (t as usize) < tau.len()),
                "involution index out of range"
            );
            let doubled = DoubledComplex {
                complex: e.complex()?,
                labels: e.labels.clone(),
                tau,
            };
            Ok(TateComplex::new(doubled)?)
        });
        if let Some(t) = hit {
            return Ok(t);
        }
        let t = make()?;
        let d = t.doubled();
        self.write(&Entry::new(key, &d.complex, &d.labels, Some(&d.tau)))?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_hex_sha256() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}

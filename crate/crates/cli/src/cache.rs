//! On-disk JSON cache for enumeration results, one file per `(kind, n)`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;
pub const GENERATOR: &str = concat!("orbitcat-cli ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    MaximalRigid,
    LoopFree,
    HomConfig,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::MaximalRigid => "maximal_rigid",
            Kind::LoopFree => "loop_free",
            Kind::HomConfig => "hom_config",
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    schema: u32,
    generator: String,
    kind: String,
    n: usize,
    objects: Vec<String>,
}

pub struct ResultCache {
    root: PathBuf,
}

impl ResultCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        ResultCache { root: root.into() }
    }

    /// `$XDG_CACHE_HOME/orbitcat`, else `$HOME/.cache/orbitcat`.
    pub fn default_root() -> Option<PathBuf> {
        if let Some(x) = std::env::var_os("XDG_CACHE_HOME").filter(|x| !x.is_empty()) {
            return Some(Path::new(&x).join("orbitcat"));
        }
        std::env::var_os("HOME")
            .filter(|h| !h.is_empty())
            .map(|h| Path::new(&h).join(".cache").join("orbitcat"))
    }

    fn path(&self, kind: Kind, n: usize) -> PathBuf {
        self.root.join(format!("{}-{n}.json", kind.as_str()))
    }

    /// Cached objects, or `None` when missing, unreadable or stale.
    pub fn load(&self, kind: Kind, n: usize) -> Option<Vec<String>> {
        let text = fs::read_to_string(self.path(kind, n)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.schema == SCHEMA_VERSION
            && entry.generator == GENERATOR
            && entry.kind == kind.as_str()
            && entry.n == n)
            .then_some(entry.objects)
    }

    /// Best effort: a cache that cannot be written is skipped.
    pub fn store(&self, kind: Kind, n: usize, objects: &[String]) {
        let entry = Entry {
            schema: SCHEMA_VERSION,
            generator: GENERATOR.to_string(),
            kind: kind.as_str().to_string(),
            n,
            objects: objects.to_vec(),
        };
        let Ok(value) = serde_json::to_value(&entry) else {
            return;
        };
        let path = self.path(kind, n);
        let tmp = path.with_extension("json.tmp");
        let written = fs::create_dir_all(&self.root)
            .and_then(|_| fs::write(&tmp, value.to_string()))
            .and_then(|_| fs::rename(&tmp, &path));
        if written.is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }
}

//! Library knowledge that lives outside the scanned corpus: extends-edges of
//! library classes, closable resource types and non-mutating method names.
//!
//! Seed file format (JSON, every key optional, a missing key keeps the default):
//!
//! ```json
//! { "extends": [["Stack", "Vector"]],
//!   "resource_types": ["FileOutputStream"],
//!   "pure_accessors": ["get*", "size"] }
//! ```

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_EXTENDS: &[(&str, &str)] = &[("Stack", "Vector")];

pub const DEFAULT_RESOURCE_TYPES: &[&str] = &[
    "FileOutputStream",
    "FileInputStream",
    "DataOutputStream",
    "DataInputStream",
    "FileReader",
    "FileWriter",
    "BufferedReader",
    "BufferedWriter",
    "ObjectOutputStream",
    "ObjectInputStream",
    "PrintWriter",
    "RandomAccessFile",
];

pub const DEFAULT_PURE_ACCESSORS: &[&str] =
    &["get*", "size", "isEmpty", "length", "contains", "elementAt", "peek", "toString", "hashCode", "equals"];

#[derive(Debug, Error)]
pub enum SeedError {
    #[error("cannot read seed file {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid seed file {path}: {source}")]
    Format { path: String, source: serde_json::Error },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalHierarchySeed {
    /// `(subclass, superclass)` pairs.
    pub extends: Vec<(String, String)>,
    pub resource_types: BTreeSet<String>,
    /// Exact names or `*` wildcard patterns.
    pub pure_accessor_names: Vec<String>,
}

impl Default for ExternalHierarchySeed {
    fn default() -> Self {
        ExternalHierarchySeed {
            extends: DEFAULT_EXTENDS.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            resource_types: DEFAULT_RESOURCE_TYPES.iter().map(|s| s.to_string()).collect(),
            pure_accessor_names: DEFAULT_PURE_ACCESSORS.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeedFile {
    extends: Option<Vec<(String, String)>>,
    resource_types: Option<Vec<String>>,
    pure_accessors: Option<Vec<String>>,
}

impl ExternalHierarchySeed {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let file: SeedFile = serde_json::from_str(text)?;
        let mut seed = ExternalHierarchySeed::default();
        if let Some(extends) = file.extends {
            seed.extends = extends;
        }
        if let Some(types) = file.resource_types {
            seed.resource_types = types.into_iter().collect();
        }
        if let Some(pure) = file.pure_accessors {
            seed.pure_accessor_names = pure;
        }
        Ok(seed)
    }

    pub fn load(path: &Path) -> Result<Self, SeedError> {
        let display = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| SeedError::Io { path: display.clone(), source })?;
        Self::from_json(&text).map_err(|source| SeedError::Format { path: display, source })
    }

    pub fn is_resource_type(&self, ty: &str) -> bool {
        self.resource_types.contains(crate::model::simple_type_name(ty))
    }

    pub fn is_pure_accessor(&self, method_name: &str) -> bool {
        self.pure_accessor_names.iter().any(|p| glob_match(p, method_name))
    }
}

/// `*` matches any run of characters, everything else matches literally.
fn glob_match(pattern: &str, text: &str) -> bool {
    let Some(star) = pattern.find('*') else {
        return pattern == text;
    };
    let (prefix, rest) = (&pattern[..star], &pattern[star + 1..]);
    let Some(tail) = text.strip_prefix(prefix) else {
        return false;
    };
    if rest.is_empty() {
        return true;
    }
    (0..=tail.len()).filter(|&i| tail.is_char_boundary(i)).any(|i| glob_match(rest, &tail[i..]))
}

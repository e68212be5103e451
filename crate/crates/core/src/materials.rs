//! Dielectric media and their relative permittivities.
//!
//! A [`MaterialRegistry`] always starts from the six built-in media (air,
//! brick, rockwool, concrete, glass, water). Extra media can be registered in
//! code or loaded from a JSON array of `{"name": ..., "eps_r": ...}` objects.
//! Registration returns a new registry; an existing registry never changes.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A named dielectric medium.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Material {
    pub name: String,
    /// Relative permittivity (dimensionless).
    pub eps_r: f64,
}

impl Material {
    pub fn new(name: impl Into<String>, eps_r: f64) -> Result<Self> {
        let name = name.into();
        validate_name(&name)?;
        if !(eps_r.is_finite() && eps_r > 0.0) {
            return Err(Error::InvalidPermittivity(eps_r));
        }
        Ok(Self { name, eps_r })
    }
}

/// Built-in media, in the order they are listed.
pub const BUILTIN: [(&str, f64); 6] = [
    ("air", 1.0058986),
    ("brick", 3.3),
    ("rockwool", 4.7),
    ("concrete", 4.96),
    ("glass", 7.6),
    ("water", 80.103),
];

fn validate_name(name: &str) -> Result<()> {
    let ok = !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidName(name.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaterialRegistry {
    entries: Vec<Material>,
}

impl Default for MaterialRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl MaterialRegistry {
    pub fn builtin() -> Self {
        let entries =
            BUILTIN.iter().map(|&(name, eps_r)| Material { name: name.to_string(), eps_r }).collect();
        Self { entries }
    }

    pub fn entries(&self) -> &[Material] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|m| m.name.clone()).collect()
    }

    /// Case-insensitive lookup.
    pub fn lookup(&self, name: &str) -> Result<&Material> {
        self.entries
            .iter()
            .find(|m| m.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::UnknownMaterial { name: name.to_string(), available: self.names() })
    }

    /// Returns a registry that also contains `material`.
    pub fn register(&self, material: Material) -> Result<Self> {
        validate_name(&material.name)?;
        if !(material.eps_r.is_finite() && material.eps_r > 0.0) {
            return Err(Error::InvalidPermittivity(material.eps_r));
        }
        if self.lookup(&material.name).is_ok() {
            return Err(Error::DuplicateName(material.name));
        }
        let mut entries = self.entries.clone();
        entries.push(material);
        Ok(Self { entries })
    }

    /// Registers every medium listed in a JSON materials file.
    pub fn with_file(&self, path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        self.with_json(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn with_json(&self, json: &str) -> Result<Self> {
        let extra: Vec<Material> =
            serde_json::from_str(json).map_err(|e| Error::Config(format!("materials file: {e}")))?;
        extra.into_iter().try_fold(self.clone(), |reg, m| reg.register(m))
    }
}

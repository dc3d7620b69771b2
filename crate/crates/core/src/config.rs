//! Per-category configuration plumbing shared by the filter, association and
//! lifecycle settings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::baseversion::Category;

/// A value with a global default and optional per-category overrides.
///
/// Serialized as `{ "default": ..., "overrides": { "pedestrian": ... } }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerCategory<T> {
    pub default: T,
    #[serde(default = "BTreeMap::new", skip_serializing_if = "BTreeMap::is_empty")]
    pub overrides: BTreeMap<Category, T>,
}

impl<T> PerCategory<T> {
    pub fn uniform(value: T) -> Self {
        PerCategory { default: value, overrides: BTreeMap::new() }
    }

    pub fn with_override(mut self, category: Category, value: T) -> Self {
        self.overrides.insert(category, value);
        self
    }

    pub fn get(&self, category: Category) -> &T {
        self.overrides.get(&category).unwrap_or(&self.default)
    }
}

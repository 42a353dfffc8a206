//! Diagram files: named finite sets and maps in JSON.
//!
//! ```json
//! {
//!   "sets": { "A": ["a1", "a2"], "B": ["b1", "b2", "b3"] },
//!   "maps": { "f": { "dom": "B", "cod": "A", "table": { "b1": "a1", "b2": "a1", "b3": "a2" } } },
//!   "fault": "unit"
//! }
//! ```
//!
//! `fault` is optional and only read by `adjoint-check`.

use std::path::Path;

use indexmap::IndexMap;
use lccc::adjunction::Fault;
use lccc::{FinMap, FinSet};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    dom: String,
    cod: String,
    table: IndexMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiagram {
    sets: IndexMap<String, Vec<String>>,
    #[serde(default)]
    maps: IndexMap<String, RawMap>,
    #[serde(default)]
    fault: Option<String>,
}

/// A validated diagram, in file order.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub sets: IndexMap<String, FinSet>,
    pub maps: IndexMap<String, FinMap>,
    pub fault: Option<Fault>,
}

impl Diagram {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Diagram::parse(&text).map_err(|e| match e {
            CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawDiagram = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        let mut sets = IndexMap::new();
        for (name, labels) in &raw.sets {
            let set =
                FinSet::from_labels(name.clone(), labels).map_err(|e| CliError::Input(format!("sets.{name}: {e}")))?;
            sets.insert(name.clone(), set);
        }
        let mut maps = IndexMap::new();
        for (name, m) in &raw.maps {
            if sets.contains_key(name) {
                return Err(CliError::Input(format!("maps.{name}: name already used by a set")));
            }
            let lookup = |field: &str, set: &str| {
                sets.get(set)
                    .cloned()
                    .ok_or_else(|| CliError::Input(format!("maps.{name}.{field}: no set named {set:?}")))
            };
            let (dom, cod) = (lookup("dom", &m.dom)?, lookup("cod", &m.cod)?);
            let pairs: Vec<(&str, &str)> = m.table.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
            let map = FinMap::from_pairs(dom, cod, &pairs)
                .map_err(|e| CliError::Input(format!("maps.{name}.table: {e}")))?
                .with_name(name);
            maps.insert(name.clone(), map);
        }
        let fault = raw
            .fault
            .map(|f| f.parse::<Fault>().map_err(|e| CliError::Input(format!("fault: {e}"))))
            .transpose()?;
        Ok(Diagram { sets, maps, fault })
    }

    pub fn set(&self, name: &str) -> Result<&FinSet, CliError> {
        self.sets
            .get(name)
            .ok_or_else(|| CliError::Input(format!("no set named {name:?}")))
    }

    pub fn map(&self, name: &str) -> Result<&FinMap, CliError> {
        self.maps
            .get(name)
            .ok_or_else(|| CliError::Input(format!("no map named {name:?}")))
    }
}

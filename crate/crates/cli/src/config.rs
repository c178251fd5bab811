use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use gwkit_core::action::GraphAction;
use gwkit_core::group::Group;
use gwkit_core::lengths::DEFAULT_BUDGET;
use gwkit_core::{Graph, GraphProduct, Vertex, WreathProduct};
use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

/// Environment variable capping every search budget.
pub const BUDGET_ENV: &str = "GWKIT_BUDGET";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("config: {0}")]
    Syntax(String),
    #[error("config field `{location}`: {message}")]
    Invalid { location: String, message: String },
}

impl ConfigError {
    pub fn invalid(location: impl Into<String>, message: impl ToString) -> Self {
        ConfigError::Invalid {
            location: location.into(),
            message: message.to_string(),
        }
    }
}

/// The JSON run description.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub graph: Option<Value>,
    /// The vertex group `H`, shared by every vertex.
    pub vertex_group: Option<Value>,
    /// Per-vertex groups, keyed by vertex id. Excludes `vertex_group`.
    pub vertex_groups: Option<BTreeMap<String, Value>>,
    pub action: Option<Value>,
    #[serde(default)]
    pub suites: Vec<String>,
    pub samples: Option<usize>,
    pub radius: Option<usize>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    pub budget: Option<usize>,
    pub out: Option<PathBuf>,
    /// Command-specific inputs.
    #[serde(default)]
    pub inputs: Value,
}

fn default_seed() -> u64 {
    1
}

/// A validated config with its group, graph and action objects built.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub raw: RunConfig,
    pub graph: Option<Graph>,
    pub vertex_group: Option<Group>,
    pub vertex_groups: Option<BTreeMap<Vertex, Group>>,
    pub action: Option<GraphAction>,
}

impl RunConfig {
    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))
    }

    /// Builds and cross-checks every referenced object.
    pub fn load(self) -> Result<Loaded, ConfigError> {
        let action = match &self.action {
            Some(spec) => Some(GraphAction::from_spec(spec).map_err(|e| ConfigError::invalid("action", e))?),
            None => None,
        };
        let mut graph = match &self.graph {
            Some(spec) => Some(Graph::from_spec(spec).map_err(|e| ConfigError::invalid("graph", e))?),
            None => None,
        };
        if let Some(a) = &action {
            match &graph {
                Some(g) if g != a.graph() => {
                    return Err(ConfigError::invalid(
                        "action.graph",
                        "differs from the top-level graph",
                    ))
                }
                Some(_) => {}
                None => graph = Some(a.graph().clone()),
            }
        }
        let vertex_group = match &self.vertex_group {
            Some(spec) => Some(Group::from_spec(spec).map_err(|e| ConfigError::invalid("vertex_group", e))?),
            None => None,
        };
        let vertex_groups = match &self.vertex_groups {
            Some(_) if vertex_group.is_some() => {
                return Err(ConfigError::invalid(
                    "vertex_groups",
                    "give either vertex_group or vertex_groups",
                ))
            }
            Some(map) => {
                let mut out = BTreeMap::new();
                for (key, spec) in map {
                    let location = format!("vertex_groups.{key}");
                    let v: Vertex = key
                        .parse()
                        .map_err(|_| ConfigError::invalid(&location, "keys must be vertex ids"))?;
                    out.insert(v, Group::from_spec(spec).map_err(|e| ConfigError::invalid(&location, e))?);
                }
                Some(out)
            }
            None => None,
        };
        Ok(Loaded {
            raw: self,
            graph,
            vertex_group,
            vertex_groups,
            action,
        })
    }
}

impl Loaded {
    pub fn seed(&self) -> u64 {
        self.raw.seed
    }

    /// The configured budget, capped by `GWKIT_BUDGET`.
    pub fn budget(&self) -> usize {
        capped_budget(self.raw.budget.unwrap_or(DEFAULT_BUDGET))
    }

    pub fn graph(&self) -> Result<&Graph, ConfigError> {
        self.graph
            .as_ref()
            .ok_or_else(|| ConfigError::invalid("graph", "missing (give graph or action)"))
    }

    pub fn action(&self) -> Result<&GraphAction, ConfigError> {
        self.action.as_ref().ok_or_else(|| ConfigError::invalid("action", "missing"))
    }

    pub fn product(&self) -> Result<GraphProduct, ConfigError> {
        let graph = self.graph()?.clone();
        match (&self.vertex_group, &self.vertex_groups) {
            (Some(h), _) => Ok(GraphProduct::uniform(graph, h.clone())),
            (None, Some(map)) => {
                GraphProduct::per_vertex(graph, map.clone()).map_err(|e| ConfigError::invalid("vertex_groups", e))
            }
            (None, None) => Err(ConfigError::invalid("vertex_group", "missing")),
        }
    }

    pub fn wreath(&self) -> Result<WreathProduct, ConfigError> {
        let h = self
            .vertex_group
            .clone()
            .ok_or_else(|| ConfigError::invalid("vertex_group", "missing"))?;
        Ok(WreathProduct::new(self.action()?.clone(), h))
    }

    /// A field of `inputs`.
    pub fn input(&self, field: &str) -> Result<&Value, ConfigError> {
        self.raw
            .inputs
            .get(field)
            .ok_or_else(|| ConfigError::invalid(format!("inputs.{field}"), "missing"))
    }

    pub fn input_str(&self, field: &str) -> Result<&str, ConfigError> {
        self.input(field)?
            .as_str()
            .ok_or_else(|| ConfigError::invalid(format!("inputs.{field}"), "expected a string"))
    }
}

/// `min(budget, GWKIT_BUDGET)` when the variable holds a number.
pub fn capped_budget(budget: usize) -> usize {
    match std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        Some(cap) => budget.min(cap),
        None => budget,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn malformed_graph_names_the_field() {
        let err = RunConfig::from_json(r#"{"graph": {"type": "cycle"}}"#).unwrap().load().unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("graph") && msg.contains("`n`"), "{msg}");
    }

    #[test]
    fn unknown_top_level_field() {
        let err = RunConfig::from_json(r#"{"seeds": 3}"#).unwrap_err();
        assert!(err.to_string().contains("seeds"));
    }

    #[test]
    fn action_graph_fills_in_the_graph() {
        let cfg = RunConfig::from_json(r#"{"action": {"family": "shift"}, "vertex_group": {"type": "integers"}}"#)
            .unwrap()
            .load()
            .unwrap();
        assert_eq!(cfg.graph().unwrap().kind(), "line");
        assert!(cfg.wreath().is_ok());
        let clash = RunConfig::from_json(r#"{"action": {"family": "shift"}, "graph": {"type": "cycle", "n": 4}}"#)
            .unwrap()
            .load()
            .unwrap_err();
        assert!(clash.to_string().contains("action.graph"));
    }
}

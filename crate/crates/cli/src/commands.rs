//! Thin command wrappers over the core operations.

use std::collections::{BTreeMap, BTreeSet};

use gwkit_core::action::GraphAction;
use gwkit_core::graph::{multigraph_iso, GraphError, IsoOutcome, Multigraph};
use gwkit_core::group::GroupElement;
use gwkit_core::lengths::LengthSystem;
use gwkit_core::{Graph, Vertex};
use serde_json::{json, Value};
use thiserror::Error;

use crate::config::{ConfigError, Loaded};
use crate::exit;

/// Radius used by the ball-restricted predicates on lazy graphs.
pub const DEFAULT_PREDICATE_RADIUS: usize = 4;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Operation(String),
}

fn op(e: impl ToString) -> CommandError {
    CommandError::Operation(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Normalize,
    Multiply,
    Mmap,
    InA,
    Quotient,
    Iso,
    Predicates,
}

/// Printed lines and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub lines: Vec<String>,
    pub code: i32,
}

impl CommandOutput {
    fn ok(line: impl Into<String>) -> Self {
        Self {
            lines: vec![line.into()],
            code: exit::PASS,
        }
    }

    fn decision(line: impl Into<String>, holds: bool) -> Self {
        Self {
            lines: vec![line.into()],
            code: if holds { exit::PASS } else { exit::VIOLATION },
        }
    }
}

pub fn execute(command: Command, cfg: &Loaded, radius: Option<usize>) -> Result<CommandOutput, CommandError> {
    match command {
        Command::Normalize => normalize(cfg),
        Command::Multiply => multiply(cfg),
        Command::Mmap => mmap(cfg),
        Command::InA => in_a(cfg),
        Command::Quotient => quotient(cfg),
        Command::Iso => iso(cfg),
        Command::Predicates => predicates(cfg.graph()?, radius.unwrap_or(DEFAULT_PREDICATE_RADIUS), cfg.budget()),
    }
}

fn normalize(cfg: &Loaded) -> Result<CommandOutput, CommandError> {
    let gp = cfg.product()?;
    let word = gp.parse_word(cfg.input_str("word")?).map_err(op)?;
    let nf = gp.normalize(&word).map_err(op)?;
    Ok(CommandOutput::ok(gp.format(&nf)))
}

fn multiply(cfg: &Loaded) -> Result<CommandOutput, CommandError> {
    let (a, b) = (cfg.input_str("a")?, cfg.input_str("b")?);
    if cfg.action.is_some() {
        let w = cfg.wreath()?;
        let product = w.multiply(&w.parse(a).map_err(op)?, &w.parse(b).map_err(op)?).map_err(op)?;
        return Ok(CommandOutput::ok(w.format(&product)));
    }
    let gp = cfg.product()?;
    let product = gp.multiply(&gp.parse(a).map_err(op)?, &gp.parse(b).map_err(op)?).map_err(op)?;
    Ok(CommandOutput::ok(gp.format(&product)))
}

fn length_system(cfg: &Loaded) -> Result<LengthSystem, CommandError> {
    LengthSystem::with_budget(cfg.wreath()?, cfg.budget()).map_err(op)
}

fn mmap(cfg: &Loaded) -> Result<CommandOutput, CommandError> {
    let l = length_system(cfg)?;
    let z = l.wreath().parse(cfg.input_str("z")?).map_err(op)?;
    let m = l.m_map(&z).map_err(op)?;
    let pairs: Vec<(Vertex, u64)> = m.entries().iter().map(|(&v, &c)| (v, c)).collect();
    let row = json!({
        "z": l.wreath().format(&z),
        "f_length": m.l1(),
        "m": pairs,
    });
    Ok(CommandOutput::ok(row.to_string()))
}

/// `inputs.e`: a list of H literals or a radius `C` for `{|x|_H ≤ C}`.
fn h_set(l: &LengthSystem, value: &Value) -> Result<BTreeSet<GroupElement>, CommandError> {
    let h = l.wreath().vertex_group();
    match value {
        Value::Number(c) => {
            let c = c.as_u64().ok_or_else(|| ConfigError::invalid("inputs.e", "expected a nonnegative radius"))?;
            Ok(h.ball(c))
        }
        Value::Array(items) => items
            .iter()
            .map(|item| {
                let text = match item {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                h.parse(&text).map_err(|e| ConfigError::invalid("inputs.e", e).into())
            })
            .collect(),
        _ => Err(ConfigError::invalid("inputs.e", "expected a list of elements or a radius").into()),
    }
}

/// `inputs.f`: a list of vertices or a radius `C` for `{|v|_Γ ≤ C}`.
fn vertex_set(l: &LengthSystem, value: &Value) -> Result<BTreeSet<Vertex>, CommandError> {
    match value {
        Value::Number(c) => {
            let c = c.as_u64().ok_or_else(|| ConfigError::invalid("inputs.f", "expected a nonnegative radius"))?;
            l.graph_ball(c).map_err(op)
        }
        other => serde_json::from_value(other.clone()).map_err(|e| ConfigError::invalid("inputs.f", e).into()),
    }
}

fn in_a(cfg: &Loaded) -> Result<CommandOutput, CommandError> {
    let l = length_system(cfg)?;
    let z = l.wreath().parse(cfg.input_str("z")?).map_err(op)?;
    let e = h_set(&l, cfg.input("e")?)?;
    let f = vertex_set(&l, cfg.input("f")?)?;
    let n = cfg
        .input("n")?
        .as_u64()
        .ok_or_else(|| ConfigError::invalid("inputs.n", "expected a nonnegative integer"))?;
    let holds = l.in_a(&e, &f, n as usize, &z).map_err(op)?;
    Ok(CommandOutput::decision(holds.to_string(), holds))
}

fn render(q: &Multigraph) -> String {
    let edges: Vec<String> = q.edges().iter().map(|((u, w), k)| format!("{u}-{w}x{k}")).collect();
    format!(
        "vertices={:?} edges=[{}]",
        q.vertices().iter().collect::<Vec<_>>(),
        edges.join(", ")
    )
}

fn quotient(cfg: &Loaded) -> Result<CommandOutput, CommandError> {
    let q = cfg.action()?.quotient_graph().map_err(op)?;
    Ok(CommandOutput::ok(render(&q)))
}

fn iso(cfg: &Loaded) -> Result<CommandOutput, CommandError> {
    let other = GraphAction::from_spec(cfg.input("other")?).map_err(|e| ConfigError::invalid("inputs.other", e))?;
    let a = cfg.action()?.quotient_graph().map_err(op)?;
    let b = other.quotient_graph().map_err(op)?;
    Ok(match multigraph_iso(&a, &b).map_err(op)? {
        IsoOutcome::Isomorphic(map) => CommandOutput::decision(format!("isomorphic {map:?}"), true),
        IsoOutcome::NotIsomorphic(reason) => CommandOutput::decision(format!("not isomorphic ({reason})"), false),
    })
}

/// Exact predicates on finite graphs. On lazy graphs they are read off the
/// ball of `radius` around the base vertex and labelled as such.
pub fn predicates(graph: &Graph, radius: usize, budget: usize) -> Result<CommandOutput, CommandError> {
    if graph.is_finite() {
        let girth = graph.girth().map_err(op)?;
        let untransvectable = graph.is_untransvectable().map_err(op)?.holds();
        let rigid = match graph.is_rigid() {
            Ok(v) => v.holds().to_string(),
            Err(GraphError::IsolatedVertex(v)) => format!("undefined (vertex {v} is isolated)"),
            Err(e) => return Err(op(e)),
        };
        return Ok(CommandOutput::ok(format!(
            "girth={girth} untransvectable={untransvectable} rigid={rigid}"
        )));
    }
    let ball = graph.ball(graph.base_vertex(), radius, budget).map_err(op)?;
    let inner: Vec<Vertex> = ball.iter().filter(|(_, &d)| d + 2 <= radius).map(|(&v, _)| v).collect();
    let set: BTreeSet<Vertex> = ball.keys().copied().collect();
    let sub = graph.induced_subgraph(&set).map_err(op)?;
    let girth = match circuit_through(&sub, graph.base_vertex()) {
        Some(l) => format!("<={l}"),
        None => format!(">{}", 2 * radius + 1),
    };
    let links: BTreeMap<Vertex, BTreeSet<Vertex>> = set
        .iter()
        .map(|&v| (v, graph.neighbors(v).unwrap_or_default().intersection(&set).copied().collect()))
        .collect();
    let untransvectable = inner.iter().all(|&v| {
        set.iter().filter(|&&w| w != v).all(|&w| {
            links[&v].iter().any(|&x| x != w && !graph.adjacent(w, x))
        })
    });
    let rigid = inner.iter().all(|&v| {
        let link = &graph.neighbors(v).unwrap_or_default();
        !link.is_empty()
            && set
                .iter()
                .filter(|&&y| link.iter().all(|&x| graph.adjacent(x, y)))
                .eq(std::iter::once(&v))
    });
    Ok(CommandOutput::ok(format!(
        "girth{girth} untransvectable={untransvectable} rigid={rigid} (lazy graph: ball of radius {radius}, \
         link conditions checked within radius {})",
        radius.saturating_sub(2)
    )))
}

/// Length of a shortest circuit through `v` in a finite graph.
fn circuit_through(g: &Graph, v: Vertex) -> Option<usize> {
    let neighbors = g.neighbors(v).ok()?;
    let mut best: Option<usize> = None;
    for &a in &neighbors {
        let mut dist = BTreeMap::from([(a, 0usize)]);
        let mut queue = std::collections::VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u).unwrap_or_default() {
                if w == v || dist.contains_key(&w) {
                    continue;
                }
                dist.insert(w, dist[&u] + 1);
                queue.push_back(w);
            }
        }
        for &b in &neighbors {
            if b != a {
                if let Some(&d) = dist.get(&b) {
                    best = Some(best.map_or(d + 2, |x| x.min(d + 2)));
                }
            }
        }
    }
    best
}

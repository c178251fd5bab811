use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde_json::{json, Value};

use crate::graph::{CayleyTree, Graph, Vertex};
use crate::group::{free, Group, GroupElement};

use super::ActionError;

/// One way of letting a group act on a graph by automorphisms.
///
/// `act` may assume `g` belongs to the group and `v` to the graph.
pub trait ActionFamily: fmt::Debug + Send + Sync {
    fn kind(&self) -> &'static str;

    /// Family-specific fields of the JSON description.
    fn spec(&self) -> Value;

    fn act(&self, g: &GroupElement, v: Vertex) -> Vertex;

    /// The complete set `{g : g·u = w}` when the family can compute it in
    /// closed form. Finite groups are handled generically by the caller.
    fn transporter(&self, _u: Vertex, _w: Vertex) -> Option<Vec<GroupElement>> {
        None
    }

    /// Orbit representatives for infinite graphs.
    fn default_representatives(&self) -> Option<Vec<Vertex>> {
        None
    }
}

/// Each listed generator acts by a permutation of a finite vertex set.
///
/// `images[i][k]` is the image of the k-th vertex (in sorted order) under
/// the i-th listed generator.
#[derive(Debug, Clone)]
pub struct PermutationAction {
    group: Group,
    vertices: Vec<Vertex>,
    position: BTreeMap<Vertex, usize>,
    images: Vec<Vec<usize>>,
    inverse_images: Vec<Vec<usize>>,
    /// Full element-to-permutation table for finite groups.
    table: Option<HashMap<GroupElement, Vec<usize>>>,
}

impl PermutationAction {
    pub fn new(group: &Group, graph: &Graph, images: Vec<Vec<Vertex>>) -> Result<Self, ActionError> {
        let vertices = graph
            .vertices()
            .ok_or_else(|| {
                ActionError::Invalid("generator images require a finite graph".into())
            })?
            .to_vec();
        let position: BTreeMap<Vertex, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let gens = group.primary_generators();
        if images.len() != gens.len() {
            return Err(ActionError::Invalid(format!(
                "{} generator images given for {} listed generators",
                images.len(),
                gens.len()
            )));
        }
        let mut perms = Vec::with_capacity(images.len());
        for (i, img) in images.iter().enumerate() {
            if img.len() != vertices.len() {
                return Err(ActionError::Invalid(format!(
                    "image of generator {i} has {} entries for {} vertices",
                    img.len(),
                    vertices.len()
                )));
            }
            let perm: Vec<usize> = img
                .iter()
                .map(|w| {
                    position.get(w).copied().ok_or_else(|| {
                        ActionError::Invalid(format!("generator {i} maps to unknown vertex {w}"))
                    })
                })
                .collect::<Result<_, _>>()?;
            if !crate::group::perm_is_bijection(&perm) {
                return Err(ActionError::Invalid(format!("image of generator {i} is not a bijection")));
            }
            for (a, &u) in vertices.iter().enumerate() {
                for (b, &w) in vertices.iter().enumerate() {
                    if graph.adjacent(u, w) != graph.adjacent(vertices[perm[a]], vertices[perm[b]]) {
                        return Err(ActionError::Invalid(format!(
                            "generator {i} does not preserve adjacency of ({u}, {w})"
                        )));
                    }
                }
            }
            perms.push(perm);
        }
        let inverse_images = perms.iter().map(|p| crate::group::perm_inverse(p)).collect();
        let mut action = Self {
            group: group.clone(),
            vertices,
            position,
            images: perms,
            inverse_images,
            table: None,
        };
        if let Some(elements) = group.elements() {
            let table: HashMap<GroupElement, Vec<usize>> = elements
                .iter()
                .map(|g| (g.clone(), action.perm_by_word(g)))
                .collect();
            for g in &elements {
                for (i, s) in gens.iter().enumerate() {
                    let gs = group.product(g, s)?;
                    let composed: Vec<usize> =
                        action.images[i].iter().map(|&k| table[g][k]).collect();
                    if table[&gs] != composed {
                        return Err(ActionError::Invalid(format!(
                            "generator images do not respect the relations of the group \
                             (element {} times generator {i})",
                            group.format(g)
                        )));
                    }
                }
            }
            action.table = Some(table);
        }
        Ok(action)
    }

    fn perm_by_word(&self, g: &GroupElement) -> Vec<usize> {
        let word = self.group.backend().primary_word(g);
        (0..self.vertices.len())
            .map(|mut k| {
                for letter in word.iter().rev() {
                    k = if letter.inverse {
                        self.inverse_images[letter.index][k]
                    } else {
                        self.images[letter.index][k]
                    };
                }
                k
            })
            .collect()
    }
}

impl ActionFamily for PermutationAction {
    fn kind(&self) -> &'static str {
        "permutation"
    }

    fn spec(&self) -> Value {
        let images: Vec<Vec<Vertex>> = self
            .images
            .iter()
            .map(|p| p.iter().map(|&k| self.vertices[k]).collect())
            .collect();
        json!({"generator_images": images})
    }

    fn act(&self, g: &GroupElement, v: Vertex) -> Vertex {
        let k = self.position[&v];
        match &self.table {
            Some(t) => self.vertices[t[g][k]],
            None => self.vertices[self.perm_by_word(g)[k]],
        }
    }
}

/// The integers translating the line.
#[derive(Debug, Clone, Copy, Default)]
pub struct Shift;

impl ActionFamily for Shift {
    fn kind(&self) -> &'static str {
        "shift"
    }

    fn spec(&self) -> Value {
        json!({"family": "shift"})
    }

    fn act(&self, g: &GroupElement, v: Vertex) -> Vertex {
        match g {
            GroupElement::Int(n) => v + n,
            _ => unreachable!("shift acts by integers"),
        }
    }

    fn transporter(&self, u: Vertex, w: Vertex) -> Option<Vec<GroupElement>> {
        Some(vec![GroupElement::Int(w - u)])
    }

    fn default_representatives(&self) -> Option<Vec<Vertex>> {
        Some(vec![0])
    }
}

/// A free group acting on its Cayley tree by left multiplication.
#[derive(Debug, Clone, Copy)]
pub struct LeftMultiplication {
    tree: CayleyTree,
}

impl LeftMultiplication {
    pub fn new(rank: usize) -> Result<Self, ActionError> {
        Ok(Self {
            tree: CayleyTree::new(rank)?,
        })
    }
}

impl ActionFamily for LeftMultiplication {
    fn kind(&self) -> &'static str {
        "left_mult"
    }

    fn spec(&self) -> Value {
        json!({"family": "left_mult"})
    }

    fn act(&self, g: &GroupElement, v: Vertex) -> Vertex {
        let GroupElement::Word(g) = g else {
            unreachable!("left multiplication acts by free words")
        };
        let mut w = g.clone();
        free::append_reduced(&mut w, self.tree.word(v));
        self.tree.vertex(&w)
    }

    fn transporter(&self, u: Vertex, w: Vertex) -> Option<Vec<GroupElement>> {
        let mut g = self.tree.word(w);
        free::append_reduced(&mut g, free::invert_word(&self.tree.word(u)));
        Some(vec![GroupElement::Word(g)])
    }

    fn default_representatives(&self) -> Option<Vec<Vertex>> {
        Some(vec![0])
    }
}

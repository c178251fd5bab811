use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::graph::{Multigraph, Vertex};

use super::{ActionError, GraphAction};

type Edge = (Vertex, Vertex);

fn unordered(u: Vertex, w: Vertex) -> Edge {
    if u <= w {
        (u, w)
    } else {
        (w, u)
    }
}

impl GraphAction {
    /// The quotient multigraph `Γ/G`: one vertex per vertex orbit and one
    /// edge per edge orbit, joining the orbits of its endpoints. An edge
    /// orbit whose endpoints share a vertex orbit becomes a loop.
    pub fn quotient_graph(&self) -> Result<Multigraph, ActionError> {
        let orbits = self.orbits()?;
        match &orbits.classes {
            Some(classes) => {
                let rep_of: BTreeMap<Vertex, Vertex> = classes
                    .iter()
                    .flat_map(|c| {
                        let r = *c.first().unwrap();
                        c.iter().map(move |&v| (v, r))
                    })
                    .collect();
                let gens = self.group().generators();
                let mut seen: BTreeSet<Edge> = BTreeSet::new();
                let mut quotient = Multigraph::new(orbits.representatives.iter().copied(), [])?;
                for (u, w) in self.graph().edges()? {
                    let e = unordered(u, w);
                    if seen.contains(&e) {
                        continue;
                    }
                    seen.insert(e);
                    let mut queue = VecDeque::from([e]);
                    while let Some((a, b)) = queue.pop_front() {
                        for s in &gens {
                            let image = unordered(self.act_unchecked(s, a), self.act_unchecked(s, b));
                            if seen.insert(image) {
                                queue.push_back(image);
                            }
                        }
                    }
                    quotient.add_edge(rep_of[&u], rep_of[&w], 1)?;
                }
                Ok(quotient)
            }
            None => self.lazy_quotient(&orbits.representatives),
        }
    }

    /// Edge orbits are enumerated from the edges at each representative.
    /// A directed edge `(u, w)` is keyed by moving `u` onto its representative
    /// `r` and taking the least image of the far end under `Stab(r)`.
    fn lazy_quotient(&self, reps: &[Vertex]) -> Result<Multigraph, ActionError> {
        let inconclusive = || {
            ActionError::Inconclusive("quotient of an infinite graph needs exact transporters".into())
        };
        let mut stabilizers = BTreeMap::new();
        for &r in reps {
            stabilizers.insert(r, self.transporter(r, r).ok_or_else(inconclusive)?);
        }
        let key = |u: Vertex, w: Vertex| -> Result<Edge, ActionError> {
            let r = self.representative_of(u, reps)?;
            let t = self.transporter(u, r).ok_or_else(inconclusive)?;
            let far = self.act_unchecked(&t[0], w);
            let m = stabilizers[&r]
                .iter()
                .map(|g| self.act_unchecked(g, far))
                .min()
                .unwrap_or(far);
            Ok((r, m))
        };
        let mut quotient = Multigraph::new(reps.iter().copied(), [])?;
        let mut seen: BTreeSet<Edge> = BTreeSet::new();
        for &r in reps {
            for w in self.graph().neighbors(r)? {
                let forward = key(r, w)?;
                let backward = key(w, r)?;
                if seen.insert(forward.min(backward)) {
                    quotient.add_edge(r, backward.0, 1)?;
                }
            }
        }
        Ok(quotient)
    }
}

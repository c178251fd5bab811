//! Exact symbolic arithmetic for graph products and graph-wreath products of
//! groups.
//!
//! The crate is organized bottom-up:
//!
//! * [`graph`]: finite and lazily generated simple graphs, links and stars,
//!   girth and the rigidity predicates, plus quotient multigraphs.
//! * [`group`]: exact group backends (integers, cyclic, free, multiplication
//!   table, permutation) behind the [`group::GroupBackend`] trait.
//! * [`product`]: graph-product elements in canonical normal form.
//! * [`action`]: group actions on graphs, orbits, isotropy, quotients and the
//!   graph-wreath product.
//! * [`lengths`]: length functions, the m-map and the sets `A(E, F, n)`.
//! * [`commutator`]: commutator coefficients on the group basis and translate
//!   covers.
//!
//! Every family of interchangeable implementations (graph families, group
//! backends, action families) is registered by name in a [`registry::Registry`]
//! and selected at runtime from a JSON description.

pub mod action;
pub mod commutator;
pub mod graph;
pub mod group;
pub mod lengths;
pub mod product;
pub mod registry;
pub mod verdict;

pub use action::{GraphAction, WreathElement, WreathProduct};
pub use graph::{Graph, Multigraph, Vertex};
pub use group::{Group, GroupElement};
pub use product::{GpElement, GraphProduct, Syllable};
pub use verdict::Verdict;

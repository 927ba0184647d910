//! Counting and enumeration of plane weighted bipartite trees (w-trees).
//!
//! A w-tree is a plane tree whose vertices are colored white and black so
//! that adjacent vertices differ, with positive weights on vertices and edges
//! such that every vertex weight equals the sum of its incident edge weights.
//! Its *type* is the pair of white and black weight multisets.
//!
//! - [`types`], [`tree`], [`canonical`]: types, trees, isotopy classes.
//! - [`enumerate`]: exhaustive generation, used as the reference oracle.
//! - [`partition`]: closed-form cardinality by inclusion-exclusion over
//!   matched-sum partitions, with the symmetry correction for repeated weights.
//! - [`poly`], [`system`]: power-sum polynomials and the polynomial system
//!   whose solutions place the vertices, with a multistart Newton solver.
//! - [`sweep`]: formula-versus-enumeration verification over all small types.

pub mod canonical;
pub mod enumerate;
pub mod error;
pub mod partition;
pub mod poly;
pub mod sweep;
pub mod system;
pub mod tree;
pub mod types;
pub mod weight;

pub use canonical::{are_isotopic, automorphism_order, canonical_code, canonical_form, CanonicalCode};
pub use error::{Error, Result};
pub use tree::{derive_edge_weights, PlaneTree, Topology};
pub use types::{validate_type, Color, LabeledType, WeightedType};
pub use weight::Weight;

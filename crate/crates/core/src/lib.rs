//! Degree-diameter problems for Abelian Cayley graphs, studied through lattice
//! coverings of Z^d.
//!
//! A Cayley graph of Z^d / L with the images of e_1, ..., e_d as generators has
//! diameter at most k exactly when S_k + L = Z^d, where S_k is the discrete
//! octahedron (undirected) or tetrahedron (directed) of radius k.

mod bfs;
pub mod constructions;
pub mod coverings;
pub mod error;
pub mod exec;
pub mod groups;
pub mod lattices;
pub mod rational;
pub mod render;
pub mod search;
pub mod shapes;
pub mod tables;

pub use constructions::{build, BuildOptions, Construction, Family};
pub use coverings::{covers, CoverReport};
pub use error::{Error, Result};
pub use exec::Execution;
pub use groups::{AbelianGroup, DiameterResult, GeneratorSet, GroupElement, Mode};
pub use lattices::{Lattice, QuotientStructure, RationalLattice};
pub use search::{best_graph, Budget, GroupClass, SearchResult, SearchSpec, Witness};
pub use shapes::{Shape, ShapeKind};
pub use tables::{table, Table, TableOptions};

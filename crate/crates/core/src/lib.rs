//! Combinatorial engine for the graphical categories of (wheeled) properads.
//!
//! The library implements connected directed graphs with legs and wheels,
//! graphical maps between them, graph substitution, exhaustive catalogs of
//! small graphs up to isomorphism, generalized Reedy and Eilenberg-Zilber
//! structure checks, truncated graphical sets (presheaves) with Segal cores,
//! and nerves of finite properads.
//!
//! Everything is desk-scale and exact: catalogs are bounded, hom-sets are
//! enumerated by exhaustive search, and every structural theorem the engine
//! claims is re-verified by brute force rather than trusted.

pub mod catalog;
pub mod graph;
pub mod morphism;
pub mod presheaf;
pub mod properad;
pub mod reedy;
pub mod segal;
pub mod subgraph;
pub mod substitution;

pub use catalog::{Bounds, CanonKey, Catalog, CatalogCtx};
pub use graph::{EdgeId, Flavor, Graph, GraphError, Profile, VertexId};
pub use morphism::{GraphMorphism, MorphismClass, MorphismInvalid};
pub use subgraph::Subgraph;
pub use substitution::{Insertion, Substituted};

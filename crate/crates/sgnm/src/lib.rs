//! Toolkit for labeled graphs of bounded orientable genus: exact small-n
//! censuses of the class S^g(n,m) (graphs on {1..n} with m edges and genus
//! at most g), rotation-system embeddings and minimum genus, structural
//! statistics (pendant objects, appearances, triangulated appearances,
//! addable non-edges), genus-controlled surgeries, and exact or MCMC
//! sampling with census-backed validation.

pub mod census;
pub mod embedding;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod sampling;
pub mod stats;
pub mod surgery;
pub mod verify;

pub use graph::{ComponentClass, ComponentKind, GraphError, LabeledGraph};

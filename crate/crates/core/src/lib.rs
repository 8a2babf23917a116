//! Graphs of cylinders and structure invariants for right-angled Coxeter
//! groups, computed directly from the defining graph.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and
//! environment handling live in the companion `racg` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod canon;
pub mod cliques;
pub mod compare;
pub mod cuts;
pub mod error;
pub mod graph;
pub mod invariant;
pub mod jsj;
pub mod k4;
pub mod named;
pub mod tangle;
pub mod validate;
pub mod vertex_set;

pub use compare::{compare, CommensurabilityFinding, Reason, Verdict, VerdictKind};
pub use cuts::{CutAnalysis, CutCollection, CylinderClass, CylinderData};
pub use error::{Error, Result};
pub use graph::{DefiningGraph, GraphBuilder, GraphId};
pub use invariant::{Decoration, DensityVector, Multiplicity, Ornament, StructureInvariant};
pub use jsj::{build_graph_of_cylinders, BuildOptions, EdgeKind, GraphOfCylinders, NodeKind};
pub use validate::{validate, AssumptionReport, CheckId};
pub use vertex_set::{VertexSet, MAX_VERTICES};

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::validate::AssumptionReport;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the library.
///
/// Failed assumption checks are not errors by themselves: [`crate::validate`]
/// reports them. They only become [`Error::AssumptionsFailed`] when an
/// operation needs a valid graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    SelfLoop(String),
    DuplicateVertex(String),
    UnknownVertex(String),
    TooManyVertices(usize),
    MixedGraph,
    AssumptionsFailed(Box<AssumptionReport>),
    NonTwoEndedEdge {
        cylinder: usize,
        other: usize,
        edge_gens: Vec<String>,
    },
    TwoEndedAnomaly(Vec<String>),
    CapExceeded {
        essential: usize,
        cap: usize,
    },
    NotStable,
    Domain(&'static str),
    InvalidGraphOfCylinders(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::SelfLoop(_) => "SELF_LOOP",
            Error::DuplicateVertex(_) => "DUPLICATE_VERTEX",
            Error::UnknownVertex(_) => "UNKNOWN_VERTEX",
            Error::TooManyVertices(_) => "TOO_MANY_VERTICES",
            Error::MixedGraph => "MIXED_GRAPH",
            Error::AssumptionsFailed(_) => "ASSUMPTIONS_FAILED",
            Error::NonTwoEndedEdge { .. } => "NON_TWO_ENDED_EDGE",
            Error::TwoEndedAnomaly(_) => "TWO_ENDED_ANOMALY",
            Error::CapExceeded { .. } => "CAP_EXCEEDED",
            Error::NotStable => "NOT_STABLE",
            Error::Domain(_) => "DOMAIN",
            Error::InvalidGraphOfCylinders(_) => "INVALID_GOC",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SelfLoop(v) => write!(f, "self-loop at vertex `{v}`"),
            Error::DuplicateVertex(v) => write!(f, "vertex `{v}` declared twice"),
            Error::UnknownVertex(v) => write!(f, "edge references undeclared vertex `{v}`"),
            Error::TooManyVertices(n) => write!(
                f,
                "graph has {n} vertices, at most {} are supported",
                crate::MAX_VERTICES
            ),
            Error::MixedGraph => f.write_str("cut collections come from different graphs"),
            Error::AssumptionsFailed(report) => {
                write!(f, "standing assumptions (level {}) failed:", report.level)?;
                for check in report.checks.iter().filter(|c| !c.passed) {
                    write!(f, " ({}) {}", check.id.number(), check.id.name())?;
                }
                Ok(())
            }
            Error::NonTwoEndedEdge {
                cylinder,
                other,
                edge_gens,
            } => write!(
                f,
                "edge between nodes {cylinder} and {other} has {} generators {:?}",
                edge_gens.len(),
                edge_gens
            ),
            Error::TwoEndedAnomaly(gens) => write!(
                f,
                "maximal pairwise-separating set {gens:?} generates a two-ended group \
                 but lies in no cylinder"
            ),
            Error::CapExceeded { essential, cap } => write!(
                f,
                "{essential} essential vertices exceed the rigid enumeration cap of {cap}"
            ),
            Error::NotStable => f.write_str("decoration is not a refinement fixpoint"),
            Error::Domain(msg) => write!(f, "argument out of domain: {msg}"),
            Error::InvalidGraphOfCylinders(msg) => {
                write!(f, "invalid graph of cylinders: {msg}")
            }
        }
    }
}

impl core::error::Error for Error {}

use thiserror::Error;

use crate::rootsys::Family;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown family in system spec {0:?} (expected one of A, B, C, D, E, F, G)")]
    UnknownFamily(String),

    #[error("unparsable system spec {0:?} (expected family letter followed by rank, e.g. \"B3\")")]
    InvalidSpec(String),

    #[error("unsupported rank {rank} for family {family}")]
    UnsupportedRank { family: Family, rank: usize },

    #[error("root closure for {system} produced {found} positive roots, expected {expected}")]
    InternalClosureError { system: String, found: usize, expected: usize },

    #[error("invariant table for {system} is inconsistent: {detail}")]
    InconsistentTable { system: String, detail: String },

    #[error("point outside the alcove: pairing {pairing} with a positive root is not in (0, pi)")]
    DomainError { pairing: f64 },

    #[error("minimizer did not converge after {iterations} iterations (gradient norm {grad_norm:e})")]
    NoConvergence { iterations: usize, grad_norm: f64 },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("singular input: {0}")]
    SingularInput(&'static str),

    #[error("invalid coupling: {0}")]
    InvalidCoupling(String),

    #[error("invalid options: {0}")]
    InvalidOptions(String),
}

pub type Result<T> = std::result::Result<T, Error>;

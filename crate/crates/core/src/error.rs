//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong while parsing the edge-list format.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("missing or invalid vertex-count header")]
    InvalidHeader,
    #[error("malformed line (expected `u v [w] s`)")]
    MalformedLine,
    #[error("vertex id {0} out of range [0, {1})")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("non-positive weight {0}")]
    NonPositiveWeight(f64),
    #[error("sign `{0}` not in {{+1, -1}}")]
    BadSign(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error("graph has {found} vertices where at least {required} are required")]
    TooSmall { required: usize, found: usize },

    #[error("{0} subgraph is disconnected")]
    Disconnected(&'static str),

    #[error("signed graph is not positive-connected")]
    NotPositiveConnected,

    #[error("edge list is not a spanning tree of the graph: {0}")]
    NotSpanningTree(&'static str),

    #[error("graph is not balanced")]
    NotBalanced,

    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix entry ({i}, {j}) breaks symmetry by {diff:e}")]
    NotSymmetric { i: usize, j: usize, diff: f64 },

    #[error("matrix has a non-finite entry at ({i}, {j})")]
    NotFinite { i: usize, j: usize },

    #[error("eigensolver failed to converge: off-diagonal residual {residual:e}")]
    EigenNonConvergence { residual: f64 },

    #[error("matrix null space is not spanned by the all-ones vector")]
    NullSpaceNotOnes,

    #[error("pseudoinverse routes disagree by {diff:e} (tolerance {tol:e})")]
    PinvRouteDisagreement { diff: f64, tol: f64 },

    #[error("matrix is numerically singular")]
    SingularMatrix,

    #[error("epsilon {epsilon} is at or beyond the consensus index (lambda2 = {lambda2:e})")]
    EpsilonBeyondConsensus { epsilon: f64, lambda2: f64 },

    #[error("negative edges ({0}, {1}) and ({2}, {3}) share a cycle")]
    NegativeCyclePair(usize, usize, usize, usize),

    #[error("edge ({0}, {1}) is not in the graph")]
    NoSuchEdge(usize, usize),

    #[error("curvature routes disagree by {diff:e} (tolerance {tol:e})")]
    RouteDisagreement { diff: f64, tol: f64 },

    #[error("marginals are not matching probability distributions: {0}")]
    MarginalMismatch(&'static str),

    #[error("transport simplex exceeded the pivot cap")]
    PivotCapExceeded,

    #[error("lazy-walk curvature did not stabilize by alpha = {alpha_min:e}: kappa({a1:e}) = {k1}, kappa({a2:e}) = {k2}")]
    NoStabilization {
        alpha_min: f64,
        a1: f64,
        k1: f64,
        a2: f64,
        k2: f64,
    },

    #[error("parameter out of range: {0}")]
    BadParameter(&'static str),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

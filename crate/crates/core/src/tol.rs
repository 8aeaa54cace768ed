//! Centralized numerical tolerances.
//!
//! Every fixed threshold used by the library and its verification suites is
//! defined here, so the acceptance gates are pinned in one place.

/// Maximum per-entry asymmetry accepted when constructing a [`crate::spectral::SymMatrix`].
pub const SYMMETRY: f64 = 1e-12;

/// Eigen reconstruction: `max|M - U L U^T| <= RECONSTRUCT * (1 + max|M|)`.
pub const RECONSTRUCT: f64 = 1e-9;

/// Eigenvector orthonormality: `max|U^T U - I|`.
pub const ORTHONORMAL: f64 = 1e-10;

/// Relative scale for rank decisions: `ztol = RANK_ZERO * max(1, |lambda_max|)`.
pub const RANK_ZERO: f64 = 1e-9;

/// Moore-Penrose identities and the two pseudoinverse routes, relative to the
/// magnitude of the pseudoinverse.
pub const PINV: f64 = 1e-8;

/// Agreement between the quadratic-form and rank-one-expansion routes for the
/// repelling cost matrix.
pub const OMEGA_ROUTES: f64 = 1e-10;

/// Laplacians annihilate the constant vector: `max|M 1| <= ONES_KERNEL * max(1, max|M|)`.
pub const ONES_KERNEL: f64 = 1e-10;

/// Bisection width for the consensus index.
pub const CONSENSUS_BISECT: f64 = 1e-8;

/// Safety margin on lambda2 when validating `eps < eps0` for an analysis.
pub const LAMBDA2_MARGIN: f64 = 1e-12;

/// Trace identity `sum (w+ - eps w-) Omega = 2(n-1)`.
pub const TRACE_IDENTITY: f64 = 1e-8;

/// Trace proposition with an arbitrary symmetric matrix.
pub const TRACE_PROPOSITION: f64 = 1e-7;

/// Circumsphere block identity residual.
pub const BLOCK_IDENTITY: f64 = 1e-7;

/// Relative error allowed between `W` and `|V| * sum 1/lambda_k`.
pub const RESISTANCE_IDENTITY: f64 = 1e-8;

/// Node-curvature route agreement (linear solve vs. closed form).
pub const TAU_ROUTES: f64 = 1e-8;

/// Slack for the square-root cost triangle inequality.
pub const SQRT_METRIC: f64 = 1e-10;

/// Slack for cost monotonicity in epsilon.
pub const MONOTONE: f64 = 1e-9;

/// Slack for spectral bound checks (degree, diameter, Lichnerowicz, mixing).
pub const BOUND_SLACK: f64 = 1e-9;

/// Slack when comparing edge curvature against the lazy-walk curvature.
pub const LLY_SLACK: f64 = 1e-7;

/// Dual feasibility slack for transport potentials.
pub const DUAL_FEASIBLE: f64 = 1e-10;

/// Maximum accepted duality gap for exact transport.
pub const DUALITY_GAP: f64 = 1e-8;

/// Marginals of a transport plan must reproduce the inputs this tightly.
pub const MARGINALS: f64 = 1e-10;

/// Distributions passed to the transport solver must sum to one this tightly.
pub const DISTRIBUTION_SUM: f64 = 1e-12;

/// Two-point agreement that detects the terminal linear piece of the
/// lazy-walk curvature.
pub const LLY_STABILIZE: f64 = 1e-9;

/// Smallest laziness parameter tried before giving up on stabilization.
pub const LLY_ALPHA_MIN: f64 = 1e-6;

/// Disagreement-decay rate fit for the repelling dynamics demonstration.
pub const DYNAMICS_RATE: f64 = 1e-6;

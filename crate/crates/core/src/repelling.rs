//! Everything at a fixed repelling strength `eps`: the repelling Laplacian
//! `L_eps = L+ - eps L-`, the consensus index `eps0`, the repelling cost
//! matrix `Omega`, the simplex embedding with its circumsphere, the graph
//! resistance `W_eps`, and the cost-monotonicity verifier.

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};
use crate::spectral::{
    self, eigen_sym, lambda2, laplacian, pseudoinverse_laplacian, LaplacianKind,
    SpectralDecomposition, SymMatrix,
};
use crate::tol;
use ndarray::{Array1, Array2};

/// `L+ - eps L-`. Row sums are zero for every real `eps`; `eps = -1` recovers
/// the Laplacian of the underlying graph.
pub fn repelling_laplacian(g: &SignedGraph, eps: f64) -> SymMatrix {
    let lp = laplacian(g, LaplacianKind::Positive);
    let lm = laplacian(g, LaplacianKind::Negative);
    SymMatrix::new(lp.array() - &(lm.array() * eps)).expect("difference of symmetric matrices")
}

/// Consensus index value: the threshold is infinite iff the graph has no
/// negative edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConsensusValue {
    Finite(f64),
    Infinite,
}

impl ConsensusValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            ConsensusValue::Finite(x) => Some(x),
            ConsensusValue::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ConsensusValue::Finite(_))
    }
}

/// Result of bisecting the spectral-gap sign change of `eps -> lambda2(L_eps)`.
#[derive(Debug, Clone)]
pub struct ConsensusIndex {
    pub value: ConsensusValue,
    /// Final bisection interval, absent for the infinite case.
    pub bracket: Option<(f64, f64)>,
    /// Every `(eps, lambda2)` evaluation made along the way, ascending in eps.
    pub lambda2_samples: Vec<(f64, f64)>,
    /// True when the doubling search never saw a sign change (reported as
    /// infinite with this warning flag set).
    pub doubling_capped: bool,
}

/// Bisects the consensus index `eps0 = sup { eps > 0 : L_eps is PSD with rank
/// n-1 }` to interval width `tol`.
///
/// The predicate is evaluated as `lambda2 > 0` with `lambda2` taken on the
/// complement of the constants, which is exactly the PSD-rank-(n-1) condition
/// and stays monotone past the threshold (the sorted second-smallest
/// eigenvalue saturates at the trivial zero there and cannot be bisected).
/// The initial bracket seed is the Weyl ratio `lambda2(L+) / lambda_max(L-)`,
/// below which the gap is guaranteed positive.
pub fn consensus_index(g: &SignedGraph, tol: f64) -> Result<ConsensusIndex> {
    if !g.is_positive_connected() {
        return Err(Error::NotPositiveConnected);
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::BadParameter("bisection tolerance must be positive"));
    }
    if !g.has_negative_edges() {
        return Ok(ConsensusIndex {
            value: ConsensusValue::Infinite,
            bracket: None,
            lambda2_samples: Vec::new(),
            doubling_capped: false,
        });
    }

    let lp = laplacian(g, LaplacianKind::Positive);
    let lm = laplacian(g, LaplacianKind::Negative);
    let mut samples: Vec<(f64, f64)> = Vec::new();
    let mut gap_at = |eps: f64| -> Result<f64> {
        let m = SymMatrix::new(lp.array() - &(lm.array() * eps))?;
        let l2 = lambda2(&m)?;
        samples.push((eps, l2));
        Ok(l2)
    };

    let lambda2_plus = eigen_sym(&lp)?.eigenvalues[1];
    let lambda_max_minus = *eigen_sym(&lm)?.eigenvalues.last().unwrap();
    let ratio = lambda2_plus / lambda_max_minus;

    let (mut lo, mut hi);
    if gap_at(ratio)? > 0.0 {
        lo = ratio;
        hi = ratio;
        let mut crossed = false;
        for _ in 0..60 {
            hi *= 2.0;
            if gap_at(hi)? <= 0.0 {
                crossed = true;
                break;
            }
            lo = hi;
        }
        if !crossed {
            samples.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            return Ok(ConsensusIndex {
                value: ConsensusValue::Infinite,
                bracket: None,
                lambda2_samples: samples,
                doubling_capped: true,
            });
        }
    } else {
        lo = 0.0;
        hi = ratio;
    }

    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if gap_at(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    samples.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok(ConsensusIndex {
        value: ConsensusValue::Finite(0.5 * (lo + hi)),
        bracket: Some((lo, hi)),
        lambda2_samples: samples,
        doubling_capped: false,
    })
}

/// Certified upper bound `1/(w_ij r_ij)` on the consensus index, one per
/// negative edge.
#[derive(Debug, Clone)]
pub struct UpperBoundReport {
    /// `(u, v, bound)` per negative edge, in edge order.
    pub per_edge: Vec<(usize, usize, f64)>,
    /// The certified upper bound, `None` when there are no negative edges.
    pub min_bound: Option<f64>,
}

/// Upper-bounds the consensus index by `1/(w_ij r_ij)` over negative edges,
/// with `r_ij` the effective resistance in the positive subgraph.
///
/// Requires that no two distinct negative edges share a cycle; two edges
/// share a cycle iff they lie in the same block, so the check is one block
/// decomposition.
pub fn consensus_upper_bound(g: &SignedGraph) -> Result<UpperBoundReport> {
    if !g.is_positive_connected() {
        return Err(Error::NotPositiveConnected);
    }
    let negatives: Vec<usize> = (0..g.edge_count())
        .filter(|&i| g.edges()[i].sign == Sign::Negative)
        .collect();
    for block in g.blocks() {
        let in_block: Vec<usize> = block
            .iter()
            .copied()
            .filter(|i| negatives.contains(i))
            .collect();
        if in_block.len() >= 2 {
            let a = &g.edges()[in_block[0]];
            let b = &g.edges()[in_block[1]];
            return Err(Error::NegativeCyclePair(a.u, a.v, b.u, b.v));
        }
    }
    if negatives.is_empty() {
        return Ok(UpperBoundReport {
            per_edge: Vec::new(),
            min_bound: None,
        });
    }
    let lp = laplacian(g, LaplacianKind::Positive);
    let pinv = pseudoinverse_laplacian(&lp)?;
    let mut per_edge = Vec::with_capacity(negatives.len());
    let mut min_bound = f64::INFINITY;
    for idx in negatives {
        let e = &g.edges()[idx];
        let r = pinv.get(e.u, e.u) + pinv.get(e.v, e.v) - 2.0 * pinv.get(e.u, e.v);
        let bound = 1.0 / (e.weight * r);
        min_bound = min_bound.min(bound);
        per_edge.push((e.u, e.v, bound));
    }
    Ok(UpperBoundReport {
        per_edge,
        min_bound: Some(min_bound),
    })
}

/// Witness that a balanced signed graph with negative edges has an indefinite
/// repelling Laplacian.
#[derive(Debug, Clone)]
pub struct BalancedWitness {
    /// The step function: 1 on the bipartition side, `a` off it.
    pub f: Array1<f64>,
    /// `f^T L_eps f`, strictly negative.
    pub quad_form: f64,
}

/// Builds the step-function witness `f = 1 on A, a on A^C` with
/// `f^T L_eps f = -eps (1-a)^2 sum w- < 0` on a balanced graph.
///
/// Returns `None` when the graph has no negative edges: the statement is
/// vacuous there, and for a balanced graph whose positive subgraph spans and
/// is connected the Harary bipartition forces exactly that.
pub fn balanced_not_psd_witness(
    g: &SignedGraph,
    eps: f64,
    a: f64,
) -> Result<Option<BalancedWitness>> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::BadParameter("eps must be positive"));
    }
    if !(a.is_finite() && a != 1.0) {
        return Err(Error::BadParameter("step value a must differ from 1"));
    }
    let verdict = g.balance_check()?;
    if !verdict.balanced {
        return Err(Error::NotBalanced);
    }
    if !g.has_negative_edges() {
        return Ok(None);
    }
    let side = verdict
        .bipartition
        .expect("balanced verdicts carry a bipartition");
    let mut f = Array1::from_elem(g.n(), a);
    for v in side {
        f[v] = 1.0;
    }
    let quad_form = repelling_laplacian(g, eps).quad_form(&f);
    if quad_form >= 0.0 {
        return Err(Error::Internal(format!(
            "balanced witness produced a nonnegative quadratic form {quad_form}"
        )));
    }
    Ok(Some(BalancedWitness { f, quad_form }))
}

/// Simplex of the repelling Laplacian: vertex coordinates, circumsphere, and
/// altitudes.
#[derive(Debug, Clone)]
pub struct SimplexData {
    /// `n x (n-1)`; row `i` is the simplex vertex for graph vertex `i`, with
    /// the centroid at the origin. `S S^T` equals the pseudoinverse of
    /// `L_eps`, so coordinates are unique only up to orthogonal transforms.
    pub vertex_matrix: Array2<f64>,
    pub circumradius: f64,
    /// Barycentric coordinate of the circumcenter; sums to one.
    pub barycentric_circumcenter: Array1<f64>,
    /// `l_i = 1 / sqrt(L_eps(i, i))`.
    pub altitudes: Vec<f64>,
}

/// Everything derived from one graph at one repelling strength.
#[derive(Debug, Clone)]
pub struct RepellingAnalysis {
    pub graph: SignedGraph,
    pub epsilon: f64,
    pub l_eps: SymMatrix,
    pub l_eps_pinv: SymMatrix,
    /// Repelling cost matrix: `Omega(i,j) = (e_i - e_j)^T L_eps^+ (e_i - e_j)`.
    pub omega: SymMatrix,
    pub spectrum: SpectralDecomposition,
    /// Graph resistance `W_eps = sum_{i<j} Omega(i, j)`.
    pub w_eps: f64,
    pub simplex: Option<SimplexData>,
}

impl RepellingAnalysis {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Smallest nonzero eigenvalue of `L_eps` (positive on the valid domain).
    pub fn lambda2(&self) -> f64 {
        let ztol = self.rank_ztol();
        self.spectrum
            .eigenvalues
            .iter()
            .copied()
            .find(|l| l.abs() > ztol)
            .unwrap_or(f64::INFINITY)
    }

    fn rank_ztol(&self) -> f64 {
        let scale = self
            .spectrum
            .eigenvalues
            .iter()
            .fold(0.0f64, |a, &l| a.max(l.abs()));
        tol::RANK_ZERO * scale.max(1.0)
    }

    /// Attaches the simplex embedding.
    pub fn with_simplex(mut self) -> Result<Self> {
        self.simplex = Some(simplex_embedding(&self)?);
        Ok(self)
    }
}

/// Builds the full analysis at `eps`: validates `eps` against the consensus
/// threshold via the spectral gap, computes the pseudoinverse, and assembles
/// `Omega` twice (entrywise quadratic forms and the rank-one expansion
/// `zeta 1^T + 1 zeta^T - 2 L_eps^+`), cross-checking the routes.
pub fn repelling_cost_matrix(g: &SignedGraph, eps: f64) -> Result<RepellingAnalysis> {
    analysis_at(g, eps, false)
}

/// Diagnostic variant that skips the spectral-gap validation, for inspecting
/// the apparatus past the consensus threshold. The rank-one kernel is still
/// required; derived quantities lose their guarantees (the cost matrix can
/// go negative).
pub fn repelling_cost_matrix_forced(g: &SignedGraph, eps: f64) -> Result<RepellingAnalysis> {
    analysis_at(g, eps, true)
}

fn analysis_at(g: &SignedGraph, eps: f64, force: bool) -> Result<RepellingAnalysis> {
    if !g.is_positive_connected() {
        return Err(Error::NotPositiveConnected);
    }
    if !eps.is_finite() {
        return Err(Error::BadParameter("eps must be finite"));
    }
    let l_eps = repelling_laplacian(g, eps);
    if !force {
        let gap = lambda2(&l_eps)?;
        if gap <= tol::LAMBDA2_MARGIN {
            return Err(Error::EpsilonBeyondConsensus {
                epsilon: eps,
                lambda2: gap,
            });
        }
    }
    let l_eps_pinv = pseudoinverse_laplacian(&l_eps)?;
    let spectrum = eigen_sym(&l_eps)?;

    let n = g.n();
    // route 1: quadratic forms
    let mut quad = Array2::zeros((n, n));
    for i in 0..n {
        for j in (i + 1)..n {
            let mut d = Array1::zeros(n);
            d[i] = 1.0;
            d[j] = -1.0;
            let v = l_eps_pinv.quad_form(&d);
            quad[(i, j)] = v;
            quad[(j, i)] = v;
        }
    }
    // route 2: rank-one expansion from the pseudoinverse diagonal
    let mut expansion = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            expansion[(i, j)] =
                l_eps_pinv.get(i, i) + l_eps_pinv.get(j, j) - 2.0 * l_eps_pinv.get(i, j);
        }
    }
    let scale = expansion.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let route_tol = tol::OMEGA_ROUTES.max(1e-14 * scale);
    for (a, b) in quad.iter().zip(expansion.iter()) {
        let diff = (a - b).abs();
        if diff > route_tol {
            return Err(Error::RouteDisagreement {
                diff,
                tol: route_tol,
            });
        }
    }
    for i in 0..n {
        expansion[(i, i)] = 0.0;
    }
    let omega = SymMatrix::new(expansion)?;
    let mut w_eps = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            w_eps += omega.get(i, j);
        }
    }
    Ok(RepellingAnalysis {
        graph: g.clone(),
        epsilon: eps,
        l_eps,
        l_eps_pinv,
        omega,
        spectrum,
        w_eps,
        simplex: None,
    })
}

/// Recovers the simplex whose vertex Gram matrix is the pseudoinverse of
/// `L_eps`: coordinates from the nonzero eigenpairs, circumsphere from
/// `Omega r = 2 R^2 1` with `1^T r = 1`, altitudes from the diagonal of
/// `L_eps`. Verifies the circumsphere block identity before returning.
pub fn simplex_embedding(analysis: &RepellingAnalysis) -> Result<SimplexData> {
    let n = analysis.n();
    if n < 2 {
        return Err(Error::TooSmall {
            required: 2,
            found: n,
        });
    }
    let ztol = analysis.rank_ztol();
    let mut vertex_matrix = Array2::zeros((n, n - 1));
    let mut col = 0;
    for (k, &lam) in analysis.spectrum.eigenvalues.iter().enumerate() {
        if lam.abs() <= ztol {
            continue;
        }
        if lam < 0.0 || col == n - 1 {
            return Err(Error::Internal("spectrum is not PSD with rank n-1".into()));
        }
        let scale = 1.0 / lam.sqrt();
        for r in 0..n {
            vertex_matrix[(r, col)] = analysis.spectrum.eigenvectors[(r, k)] * scale;
        }
        col += 1;
    }
    if col != n - 1 {
        return Err(Error::Internal("spectrum is not PSD with rank n-1".into()));
    }

    // bordered system for the circumcenter: Omega r - g 1 = 0, 1^T r = 1
    let mut bordered = Array2::zeros((n + 1, n + 1));
    for i in 0..n {
        for j in 0..n {
            bordered[(i, j)] = analysis.omega.get(i, j);
        }
        bordered[(i, n)] = -1.0;
        bordered[(n, i)] = 1.0;
    }
    let mut rhs = Array1::zeros(n + 1);
    rhs[n] = 1.0;
    let sol = spectral::solve_vec(&bordered, &rhs).map_err(|e| match e {
        Error::SingularMatrix => Error::Internal("cost matrix is singular".into()),
        other => other,
    })?;
    let barycentric: Array1<f64> = sol.slice(ndarray::s![..n]).to_owned();
    let two_r2 = sol[n];
    if two_r2 <= 0.0 {
        return Err(Error::Internal(format!(
            "nonpositive squared circumradius {two_r2}"
        )));
    }
    let circumradius = (0.5 * two_r2).sqrt();

    let mut altitudes = Vec::with_capacity(n);
    for i in 0..n {
        let d = analysis.l_eps.get(i, i);
        if d <= 0.0 {
            return Err(Error::Internal(format!(
                "nonpositive Gram diagonal at vertex {i}"
            )));
        }
        altitudes.push(1.0 / d.sqrt());
    }

    // block identity: -1/2 [[0, 1^T], [1, Omega]] is inverse to
    // [[4R^2, -2r^T], [-2r, L_eps]]
    let m = n + 1;
    let mut left = Array2::zeros((m, m));
    let mut right = Array2::zeros((m, m));
    for i in 0..n {
        left[(0, i + 1)] = -0.5;
        left[(i + 1, 0)] = -0.5;
        for j in 0..n {
            left[(i + 1, j + 1)] = -0.5 * analysis.omega.get(i, j);
        }
    }
    right[(0, 0)] = 2.0 * two_r2;
    for i in 0..n {
        right[(0, i + 1)] = -2.0 * barycentric[i];
        right[(i + 1, 0)] = -2.0 * barycentric[i];
        for j in 0..n {
            right[(i + 1, j + 1)] = analysis.l_eps.get(i, j);
        }
    }
    let product = left.dot(&right);
    let mut worst = 0.0f64;
    for ((i, j), &x) in product.indexed_iter() {
        let want = if i == j { 1.0 } else { 0.0 };
        worst = worst.max((x - want).abs());
    }
    if worst > tol::BLOCK_IDENTITY {
        return Err(Error::Internal(format!(
            "circumsphere block identity residual {worst:e}"
        )));
    }

    Ok(SimplexData {
        vertex_matrix,
        circumradius,
        barycentric_circumcenter: barycentric,
        altitudes,
    })
}

/// Graph resistance `W_eps` with its spectral identity and bracket verified:
/// `W = |V| sum_k 1/lambda_k` over nonzero eigenvalues, and for `n >= 3`
/// strictly `|V|/lambda2 < W <= |V|(|V|-1)/lambda2` (`n = 2` degenerates to
/// equality on the left).
pub fn graph_resistance(analysis: &RepellingAnalysis) -> Result<f64> {
    let n = analysis.n();
    let w = analysis.w_eps;
    if n == 1 {
        return Ok(0.0);
    }
    let ztol = analysis.rank_ztol();
    let spectral_sum: f64 = analysis
        .spectrum
        .eigenvalues
        .iter()
        .filter(|l| l.abs() > ztol)
        .map(|l| 1.0 / l)
        .sum::<f64>()
        * n as f64;
    if (w - spectral_sum).abs() > tol::RESISTANCE_IDENTITY * w.abs().max(1.0) {
        return Err(Error::Internal(format!(
            "resistance identity violated: W = {w}, |V| tr = {spectral_sum}"
        )));
    }
    let lam2 = analysis.lambda2();
    let lower = n as f64 / lam2;
    let upper = (n * (n - 1)) as f64 / lam2;
    let slack = 1e-12 * w.abs().max(1.0);
    let bracket_ok = if n >= 3 {
        lower < w + slack && w <= upper + slack
    } else {
        (w - lower).abs() <= slack.max(tol::RESISTANCE_IDENTITY)
    };
    if !bracket_ok {
        return Err(Error::Internal(format!(
            "resistance bracket violated: {lower} vs W = {w} vs {upper}"
        )));
    }
    Ok(w)
}

/// Triangle triple that breaks an inequality, with its slack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub slack: f64,
}

/// Metric check for the square root of the repelling cost.
#[derive(Debug, Clone)]
pub struct MetricCheck {
    /// Violations of `sqrt(Omega(i,j)) <= sqrt(Omega(i,k)) + sqrt(Omega(k,j))`;
    /// empty when the square-root cost is a metric.
    pub sqrt_violations: Vec<TriangleViolation>,
    /// Informational: triples where `Omega` itself breaks the triangle
    /// inequality (it is allowed to).
    pub omega_violations: Vec<TriangleViolation>,
}

/// Checks the triangle inequality for `sqrt(Omega)` over all triples, and
/// reports (informationally) where `Omega` itself fails it.
pub fn sqrt_cost_metric_check(omega: &SymMatrix) -> MetricCheck {
    let n = omega.dim();
    let mut sqrt_violations = Vec::new();
    let mut omega_violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let s = omega.get(i, k).max(0.0).sqrt() + omega.get(k, j).max(0.0).sqrt()
                    - omega.get(i, j).max(0.0).sqrt();
                if s < -tol::SQRT_METRIC {
                    sqrt_violations.push(TriangleViolation { i, j, k, slack: s });
                }
                let s_raw = omega.get(i, k) + omega.get(k, j) - omega.get(i, j);
                if s_raw < -tol::SQRT_METRIC {
                    omega_violations.push(TriangleViolation {
                        i,
                        j,
                        k,
                        slack: s_raw,
                    });
                }
            }
        }
    }
    MetricCheck {
        sqrt_violations,
        omega_violations,
    }
}

/// One monotonicity violation between consecutive grid points.
#[derive(Debug, Clone, Copy)]
pub struct MonotonicityViolation {
    pub eps_lo: f64,
    pub eps_hi: f64,
    pub i: usize,
    pub j: usize,
    /// `Omega_lo - Omega_hi`, positive past the slack.
    pub excess: f64,
}

/// Report of the per-pair cost monotonicity check over an ascending grid.
#[derive(Debug, Clone)]
pub struct MonotonicityReport {
    pub grid: Vec<f64>,
    pub violations: Vec<MonotonicityViolation>,
}

impl MonotonicityReport {
    pub fn nondecreasing(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies that every entry of `Omega` is nondecreasing along an ascending
/// epsilon grid (all grid points must stay below the consensus index; the
/// grid may extend to negative values, where `eps = -1` is the classical
/// resistance).
pub fn monotonicity_check(g: &SignedGraph, grid: &[f64]) -> Result<MonotonicityReport> {
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadParameter("grid must be strictly ascending"));
    }
    let analyses: Vec<RepellingAnalysis> =
        crate::batch::map_ordered(grid, |&eps| repelling_cost_matrix(g, eps))
            .into_iter()
            .collect::<Result<_>>()?;
    let n = g.n();
    let mut violations = Vec::new();
    for pair in analyses.windows(2) {
        for i in 0..n {
            for j in (i + 1)..n {
                let lo = pair[0].omega.get(i, j);
                let hi = pair[1].omega.get(i, j);
                if lo > hi + tol::MONOTONE {
                    violations.push(MonotonicityViolation {
                        eps_lo: pair[0].epsilon,
                        eps_hi: pair[1].epsilon,
                        i,
                        j,
                        excess: lo - hi,
                    });
                }
            }
        }
    }
    Ok(MonotonicityReport {
        grid: grid.to_vec(),
        violations,
    })
}

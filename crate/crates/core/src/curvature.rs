//! Node and edge curvature built on the repelling cost matrix, the
//! heat-semigroup limit estimator, and the lazy-random-walk curvature via
//! exact transport.
//!
//! Two edge quantities live side by side. [`edge_curvature`] is
//! `2(tau_i + tau_j)/Omega(i,j) + (1+eps) Lambda(i,j)` with `tau` the
//! equilibrium solution of `Omega tau = |V| 1`. [`edge_curvature_heat`]
//! replaces `tau` by the barycentric circumcenter weights `tau/phi`; that
//! variant is the exact `t -> 0` rate of expected-cost contraction under
//! `exp(-Qt)` and the quantity the lazy-walk curvature dominates. The two
//! coincide only when `phi = 1`, and only the heat-normalized form satisfies
//! the comparison and Lichnerowicz-type statements; reports carry both.

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};
use crate::repelling::RepellingAnalysis;
use crate::spectral::{self, eigen_sym, laplacian, LaplacianKind};
use crate::tol;
use crate::transport;
use ndarray::Array1;
use serde::{Deserialize, Serialize};

/// Equilibrium node curvature: the solution of `Omega tau = |V| 1` together
/// with `phi = sum tau = |V| 1^T Omega^{-1} 1`.
#[derive(Debug, Clone)]
pub struct NodeCurvature {
    pub tau: Array1<f64>,
    pub phi: f64,
}

/// Solves `Omega tau = |V| 1` and cross-checks against the closed form
/// `tau(i) = phi (1 - 1/2 sum_{j ~ i} (w+ - eps w-) Omega(i,j))`.
pub fn node_curvature(analysis: &RepellingAnalysis) -> Result<NodeCurvature> {
    let n = analysis.n();
    if n < 2 {
        return Err(Error::TooSmall {
            required: 2,
            found: n,
        });
    }
    let rhs = Array1::from_elem(n, n as f64);
    let tau = spectral::solve_vec(analysis.omega.array(), &rhs)?;
    let phi: f64 = tau.sum();

    let scale = tau.iter().fold(0.0f64, |a, &t| a.max(t.abs()));
    let route_tol = tol::TAU_ROUTES * (1.0 + scale);
    for i in 0..n {
        let mut half_sum = 0.0;
        for &(j, idx) in analysis.graph.neighbors(i) {
            let e = &analysis.graph.edges()[idx];
            let signed_weight = match e.sign {
                Sign::Positive => e.weight,
                Sign::Negative => -analysis.epsilon * e.weight,
            };
            half_sum += signed_weight * analysis.omega.get(i, j);
        }
        let closed_form = phi * (1.0 - 0.5 * half_sum);
        let diff = (closed_form - tau[i]).abs();
        if diff > route_tol {
            return Err(Error::RouteDisagreement {
                diff,
                tol: route_tol,
            });
        }
    }
    Ok(NodeCurvature { tau, phi })
}

/// Negative-edge correction term, in the expanded form
/// `(d_i^- + d_j^-) - [sum_k Omega(j,k) w-_ik + sum_k Omega(i,k) w-_jk] / Omega(i,j)`,
/// which needs no division by vanishing negative degrees.
pub fn edge_lambda(analysis: &RepellingAnalysis, i: usize, j: usize) -> Result<f64> {
    let g = &analysis.graph;
    if g.find_edge(i, j).is_none() {
        return Err(Error::NoSuchEdge(i, j));
    }
    let omega_ij = analysis.omega.get(i, j);
    if omega_ij == 0.0 {
        return Err(Error::Internal(format!("zero cost on edge ({i}, {j})")));
    }
    let (_, dm) = g.degrees();
    let mut cross = 0.0;
    for &(k, idx) in g.neighbors(i) {
        let e = &g.edges()[idx];
        if e.sign == Sign::Negative {
            cross += analysis.omega.get(j, k) * e.weight;
        }
    }
    for &(k, idx) in g.neighbors(j) {
        let e = &g.edges()[idx];
        if e.sign == Sign::Negative {
            cross += analysis.omega.get(i, k) * e.weight;
        }
    }
    Ok(dm[i] + dm[j] - cross / omega_ij)
}

/// Edge curvature `2(tau_i + tau_j)/Omega(i,j) + (1+eps) Lambda(i,j)`.
pub fn edge_curvature(
    analysis: &RepellingAnalysis,
    node: &NodeCurvature,
    i: usize,
    j: usize,
) -> Result<f64> {
    let lambda = edge_lambda(analysis, i, j)?;
    let omega_ij = analysis.omega.get(i, j);
    Ok(2.0 * (node.tau[i] + node.tau[j]) / omega_ij + (1.0 + analysis.epsilon) * lambda)
}

/// Heat-normalized edge curvature: `tau` replaced by the circumcenter weights
/// `tau/phi`, giving the exact `t -> 0` contraction rate of
/// `E[Omega(N_t, M_t)]` under the semigroup `exp(-Qt)`.
pub fn edge_curvature_heat(
    analysis: &RepellingAnalysis,
    node: &NodeCurvature,
    i: usize,
    j: usize,
) -> Result<f64> {
    if node.phi == 0.0 {
        return Err(Error::Internal(
            "phi vanishes; circumcenter weights undefined".into(),
        ));
    }
    let lambda = edge_lambda(analysis, i, j)?;
    let omega_ij = analysis.omega.get(i, j);
    Ok(2.0 * (node.tau[i] + node.tau[j]) / (node.phi * omega_ij)
        + (1.0 + analysis.epsilon) * lambda)
}

/// Finite-`t` contraction rates with their extrapolated limit.
#[derive(Debug, Clone)]
pub struct HeatEstimate {
    /// `(t, q(t))` rows in the given order.
    pub table: Vec<(f64, f64)>,
    /// Neville extrapolation of the table to `t = 0`.
    pub extrapolated: f64,
}

/// Evaluates `q(t) = (1/t)(1 - E[Omega(N_t, M_t)] / Omega(i,j))` with
/// `E[Omega(N_t, M_t)] = e_i^T exp(-Qt) Omega exp(-Qt) e_j` on a descending
/// sequence of times and extrapolates polynomially to `t = 0`.
pub fn heat_limit_estimate(
    analysis: &RepellingAnalysis,
    i: usize,
    j: usize,
    t_seq: &[f64],
) -> Result<HeatEstimate> {
    if analysis.graph.find_edge(i, j).is_none() {
        return Err(Error::NoSuchEdge(i, j));
    }
    if t_seq.is_empty()
        || t_seq
            .iter()
            .any(|&t| !(t.is_finite() && t > 0.0 && t <= 1.0))
        || t_seq.windows(2).any(|w| w[0] <= w[1])
    {
        return Err(Error::BadParameter(
            "t sequence must be descending within (0, 1]",
        ));
    }
    let q = laplacian(&analysis.graph, LaplacianKind::Underlying);
    let eig = eigen_sym(&q)?;
    let omega_ij = analysis.omega.get(i, j);
    let n = analysis.n();
    let mut table = Vec::with_capacity(t_seq.len());
    for &t in t_seq {
        let heat = eig.map_eigenvalues(|l| (-l * t).exp());
        let wi = heat.column(i).to_owned();
        let wj = heat.column(j).to_owned();
        let mut expected = 0.0;
        for a in 0..n {
            for b in 0..n {
                expected += wi[a] * analysis.omega.get(a, b) * wj[b];
            }
        }
        table.push((t, (1.0 / t) * (1.0 - expected / omega_ij)));
    }
    // Neville to t = 0
    let ts: Vec<f64> = table.iter().map(|&(t, _)| t).collect();
    let mut p: Vec<f64> = table.iter().map(|&(_, v)| v).collect();
    let m = p.len();
    for level in 1..m {
        for k in 0..m - level {
            p[k] = (ts[k + level] * p[k] - ts[k] * p[k + 1]) / (ts[k + level] - ts[k]);
        }
    }
    Ok(HeatEstimate {
        table,
        extrapolated: p[0],
    })
}

/// Lazy-random-walk marginal `m_i^alpha = (I - alpha Q) e_i`.
pub fn lazy_walk_marginal(g: &SignedGraph, i: usize, alpha: f64) -> Result<Vec<f64>> {
    let q = laplacian(g, LaplacianKind::Underlying);
    let n = g.n();
    let mut m = vec![0.0; n];
    for k in 0..n {
        m[k] = if k == i { 1.0 } else { 0.0 } - alpha * q.get(k, i);
        if m[k] < 0.0 {
            if m[k] < -1e-15 {
                return Err(Error::BadParameter(
                    "alpha too large for a lazy-walk distribution",
                ));
            }
            m[k] = 0.0;
        }
    }
    Ok(m)
}

/// One lazy-walk contraction evaluation
/// `kappa(alpha) = (1/alpha)(1 - W1(m_i, m_j)/Omega(i,j))` at a fixed alpha.
pub fn lazy_walk_kappa(
    analysis: &RepellingAnalysis,
    i: usize,
    j: usize,
    alpha: f64,
) -> Result<f64> {
    let mi = lazy_walk_marginal(&analysis.graph, i, alpha)?;
    let mj = lazy_walk_marginal(&analysis.graph, j, alpha)?;
    let plan = transport::w1_exact(&analysis.omega, &mi, &mj)?;
    Ok((1.0 / alpha) * (1.0 - plan.value / analysis.omega.get(i, j)))
}

/// Stabilized lazy-walk curvature.
#[derive(Debug, Clone)]
pub struct LlyCurvature {
    pub value: f64,
    /// The laziness at which the value stabilized.
    pub alpha: f64,
    /// `(alpha, kappa(alpha))` evaluations, largest alpha first.
    pub evaluations: Vec<(f64, f64)>,
}

/// The `alpha -> 0` lazy-walk curvature with the repelling cost as ground
/// cost.
///
/// The transport value is piecewise linear in `alpha` with `kappa` constant
/// on the terminal piece, so the limit is detected by two-point agreement at
/// `alpha` and `alpha/2` (within [`tol::LLY_STABILIZE`]), halving from
/// `alpha0` down to [`tol::LLY_ALPHA_MIN`].
pub fn lly_curvature(
    analysis: &RepellingAnalysis,
    i: usize,
    j: usize,
    alpha0: f64,
) -> Result<LlyCurvature> {
    if analysis.graph.find_edge(i, j).is_none() {
        return Err(Error::NoSuchEdge(i, j));
    }
    if !(alpha0.is_finite() && alpha0 > 0.0) {
        return Err(Error::BadParameter("alpha0 must be positive"));
    }
    let mut alpha = alpha0;
    let mut evaluations = Vec::new();
    let mut k1 = lazy_walk_kappa(analysis, i, j, alpha)?;
    evaluations.push((alpha, k1));
    loop {
        let half = alpha / 2.0;
        let k2 = lazy_walk_kappa(analysis, i, j, half)?;
        evaluations.push((half, k2));
        if (k1 - k2).abs() <= tol::LLY_STABILIZE {
            return Ok(LlyCurvature {
                value: k2,
                alpha: half,
                evaluations,
            });
        }
        if half < tol::LLY_ALPHA_MIN {
            return Err(Error::NoStabilization {
                alpha_min: tol::LLY_ALPHA_MIN,
                a1: alpha,
                k1,
                a2: half,
                k2,
            });
        }
        alpha = half;
        k1 = k2;
    }
}

/// Extremal repelling costs with the equilibrium-measure bounds.
///
/// The bound checks are reported separately: `X <= 2|V|/phi` and
/// `N <= |V|/phi` are independent claims under the `tau >= 0` hypothesis,
/// and the `N` bound fails on real instances (it is not protected by a
/// triangle inequality, which the cost matrix does not satisfy), so callers
/// get the verdicts rather than an assertion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtremalCosts {
    /// `max_{i != j} Omega(i, j)`.
    pub x_eps: f64,
    /// `min_{i != j} Omega(i, j)`.
    pub n_eps: f64,
    /// `Some(X <= 2|V|/phi)` when `tau >= 0` entrywise, else `None`.
    pub x_bound_ok: Option<bool>,
    /// `Some(N <= |V|/phi)` when `tau >= 0` entrywise, else `None`.
    pub n_bound_ok: Option<bool>,
}

impl ExtremalCosts {
    pub fn applicable(&self) -> bool {
        self.x_bound_ok.is_some()
    }
}

/// Extremal costs and, when `tau` is nonnegative, the `2|V|/phi` and
/// `|V|/phi` bound verdicts.
pub fn extremal_costs(analysis: &RepellingAnalysis, node: &NodeCurvature) -> ExtremalCosts {
    let n = analysis.n();
    let mut x_eps = f64::NEG_INFINITY;
    let mut n_eps = f64::INFINITY;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                x_eps = x_eps.max(analysis.omega.get(i, j));
                n_eps = n_eps.min(analysis.omega.get(i, j));
            }
        }
    }
    let applicable = node.tau.iter().all(|&t| t >= -1e-12);
    let x_bound_ok = applicable.then(|| x_eps <= 2.0 * n as f64 / node.phi + tol::BOUND_SLACK);
    let n_bound_ok = applicable.then(|| n_eps <= n as f64 / node.phi + tol::BOUND_SLACK);
    ExtremalCosts {
        x_eps,
        n_eps,
        x_bound_ok,
        n_bound_ok,
    }
}

/// Per-edge scalar, keyed by the edge endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeValue {
    pub u: usize,
    pub v: usize,
    pub value: f64,
}

/// Per-edge comparison of the curvature notions against the lazy-walk
/// curvature.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EdgeComparison {
    pub u: usize,
    pub v: usize,
    /// `theta <= kappa + slack`?
    pub lly_dominates_theta: bool,
    /// `theta_heat <= kappa + slack`?
    pub lly_dominates_theta_heat: bool,
}

/// Full per-graph curvature report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub tau: Vec<f64>,
    pub phi: f64,
    /// Negative-edge correction per edge.
    pub lambda: Vec<EdgeValue>,
    pub theta: Vec<EdgeValue>,
    pub theta_heat: Vec<EdgeValue>,
    pub kappa_lly: Vec<EdgeValue>,
    pub x_eps: f64,
    pub n_eps: f64,
    pub x_bound_ok: Option<bool>,
    pub n_bound_ok: Option<bool>,
    pub comparisons: Vec<EdgeComparison>,
}

/// Default starting laziness for the stabilization loop.
pub fn default_lly_alpha0(g: &SignedGraph) -> f64 {
    let d_max = g.total_degrees().into_iter().fold(0.0f64, f64::max);
    if d_max == 0.0 {
        1e-3
    } else {
        (0.5 / d_max).min(1e-3)
    }
}

/// Assembles the whole report; per-edge quantities are evaluated
/// independently (in parallel under the `parallel` feature) and collected in
/// edge order.
pub fn curvature_report(analysis: &RepellingAnalysis) -> Result<CurvatureReport> {
    let node = node_curvature(analysis)?;
    let alpha0 = default_lly_alpha0(&analysis.graph);
    let edges: Vec<(usize, usize)> = analysis.graph.edges().iter().map(|e| (e.u, e.v)).collect();
    let rows: Vec<Result<(f64, f64, f64, f64)>> = crate::batch::map_ordered(&edges, |&(u, v)| {
        let lam = edge_lambda(analysis, u, v)?;
        let th = edge_curvature(analysis, &node, u, v)?;
        let th_heat = edge_curvature_heat(analysis, &node, u, v)?;
        let kappa = lly_curvature(analysis, u, v, alpha0)?.value;
        Ok((lam, th, th_heat, kappa))
    });
    let mut lambda = Vec::with_capacity(edges.len());
    let mut theta = Vec::with_capacity(edges.len());
    let mut theta_heat = Vec::with_capacity(edges.len());
    let mut kappa_lly = Vec::with_capacity(edges.len());
    let mut comparisons = Vec::with_capacity(edges.len());
    for (&(u, v), row) in edges.iter().zip(rows) {
        let (lam, th, th_h, kap) = row?;
        lambda.push(EdgeValue { u, v, value: lam });
        theta.push(EdgeValue { u, v, value: th });
        theta_heat.push(EdgeValue { u, v, value: th_h });
        kappa_lly.push(EdgeValue { u, v, value: kap });
        comparisons.push(EdgeComparison {
            u,
            v,
            lly_dominates_theta: th <= kap + tol::LLY_SLACK,
            lly_dominates_theta_heat: th_h <= kap + tol::LLY_SLACK,
        });
    }
    let extremal = extremal_costs(analysis, &node);
    Ok(CurvatureReport {
        tau: node.tau.to_vec(),
        phi: node.phi,
        lambda,
        theta,
        theta_heat,
        kappa_lly,
        x_eps: extremal.x_eps,
        n_eps: extremal.n_eps,
        x_bound_ok: extremal.x_bound_ok,
        n_bound_ok: extremal.n_bound_ok,
        comparisons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repelling::repelling_cost_matrix;

    fn c3() -> SignedGraph {
        SignedGraph::from_list(3, &[(0, 1, 1.0, 1), (1, 2, 1.0, 1), (0, 2, 1.0, -1)]).unwrap()
    }

    fn c4() -> SignedGraph {
        SignedGraph::from_list(
            4,
            &[
                (0, 1, 1.0, 1),
                (1, 2, 1.0, 1),
                (2, 3, 1.0, 1),
                (0, 3, 1.0, -1),
            ],
        )
        .unwrap()
    }

    fn k4_with_negatives(negs: &[(usize, usize)]) -> SignedGraph {
        let mut list = Vec::new();
        for u in 0..4 {
            for v in (u + 1)..4 {
                let s = if negs.contains(&(u, v)) { -1 } else { 1 };
                list.push((u, v, 1.0, s));
            }
        }
        SignedGraph::from_list(4, &list).unwrap()
    }

    fn close(got: f64, want: f64, tol: f64) -> bool {
        (got - want).abs() <= tol
    }

    #[test]
    fn c3_node_curvature_table_row() {
        let analysis = repelling_cost_matrix(&c3(), 0.2).unwrap();
        let node = node_curvature(&analysis).unwrap();
        assert!(close(node.tau[1], -0.5625, 2e-3));
        assert!(close(node.tau[0], 1.125, 2e-3));
        assert!(close(node.tau[2], 1.125, 2e-3));
        assert!(close(node.phi, node.tau.sum(), 1e-12));
    }

    #[test]
    fn c4_node_curvature_table_row() {
        let analysis = repelling_cost_matrix(&c4(), 0.1).unwrap();
        let node = node_curvature(&analysis).unwrap();
        assert!(close(node.tau[1], -0.2569, 2e-3));
        assert!(close(node.tau[2], -0.2569, 2e-3));
        assert!(close(node.tau[0], 1.156, 2e-3));
        assert!(close(node.tau[3], 1.156, 2e-3));
    }

    #[test]
    fn k4_opposite_pair_is_vertex_transitive() {
        let g = k4_with_negatives(&[(0, 2), (1, 3)]);
        let analysis = repelling_cost_matrix(&g, 0.5).unwrap();
        let node = node_curvature(&analysis).unwrap();
        for &t in node.tau.iter() {
            assert!(close(t, 0.8889, 2e-3));
        }
        let spread = node.tau.iter().fold(f64::NEG_INFINITY, |m, &t| m.max(t))
            - node.tau.iter().fold(f64::INFINITY, |m, &t| m.min(t));
        assert!(spread <= 1e-8);
    }

    #[test]
    fn all_positive_cycle_is_vertex_transitive() {
        let g = SignedGraph::from_list(
            5,
            &[
                (0, 1, 1.0, 1),
                (1, 2, 1.0, 1),
                (2, 3, 1.0, 1),
                (3, 4, 1.0, 1),
                (0, 4, 1.0, 1),
            ],
        )
        .unwrap();
        let analysis = repelling_cost_matrix(&g, 0.4).unwrap();
        let node = node_curvature(&analysis).unwrap();
        let spread = node.tau.iter().fold(f64::NEG_INFINITY, |m, &t| m.max(t))
            - node.tau.iter().fold(f64::INFINITY, |m, &t| m.min(t));
        assert!(spread <= 1e-8);
    }

    #[test]
    fn c3_lambda_values() {
        let analysis = repelling_cost_matrix(&c3(), 0.2).unwrap();
        assert!(close(edge_lambda(&analysis, 0, 1).unwrap(), 0.0, 1e-10));
        assert!(close(edge_lambda(&analysis, 1, 2).unwrap(), 0.0, 1e-10));
        assert!(close(edge_lambda(&analysis, 0, 2).unwrap(), 2.0, 1e-10));
    }

    #[test]
    fn c4_lambda_values() {
        let analysis = repelling_cost_matrix(&c4(), 0.1).unwrap();
        assert!(close(edge_lambda(&analysis, 1, 2).unwrap(), 0.0, 1e-10));
        assert!(close(edge_lambda(&analysis, 0, 3).unwrap(), 2.0, 1e-10));
    }

    #[test]
    fn k4_negative_star_lambda_values() {
        // positive star at vertex 0, negative triangle on {1, 2, 3}
        let g = k4_with_negatives(&[(1, 2), (1, 3), (2, 3)]);
        let analysis = repelling_cost_matrix(&g, 0.1).unwrap();
        for v in 1..4 {
            assert!(close(edge_lambda(&analysis, 0, v).unwrap(), 0.0, 1e-10));
        }
        for &(u, v) in &[(1, 2), (1, 3), (2, 3)] {
            assert!(close(edge_lambda(&analysis, u, v).unwrap(), 2.0, 1e-10));
        }
    }

    #[test]
    fn c3_edge_curvature_table_rows() {
        let analysis = repelling_cost_matrix(&c3(), 0.3).unwrap();
        let node = node_curvature(&analysis).unwrap();
        assert!(close(
            edge_curvature(&analysis, &node, 0, 1).unwrap(),
            0.1399,
            2e-3
        ));
        assert!(close(
            edge_curvature(&analysis, &node, 1, 2).unwrap(),
            0.1399,
            2e-3
        ));
        assert!(close(
            edge_curvature(&analysis, &node, 0, 2).unwrap(),
            3.2857,
            2e-3
        ));
    }

    #[test]
    fn k4_one_negative_edge_curvatures() {
        let g = k4_with_negatives(&[(0, 3)]);
        let analysis = repelling_cost_matrix(&g, 0.5).unwrap();
        let node = node_curvature(&analysis).unwrap();
        assert!(close(node.tau[0], 2.4242, 2e-3));
        assert!(close(node.tau[1], -0.4848, 2e-3));
        assert!(close(
            edge_curvature(&analysis, &node, 0, 1).unwrap(),
            4.4329,
            2e-3
        ));
        assert!(close(
            edge_curvature(&analysis, &node, 1, 2).unwrap(),
            -3.8784,
            2e-3
        ));
        assert!(close(
            edge_curvature(&analysis, &node, 0, 3).unwrap(),
            7.8484,
            2e-3
        ));
    }

    #[test]
    fn k4_negative_star_edge_curvatures() {
        let g = k4_with_negatives(&[(1, 2), (1, 3), (2, 3)]);
        let analysis = repelling_cost_matrix(&g, 0.1).unwrap();
        let node = node_curvature(&analysis).unwrap();
        assert!(close(node.tau[0], -1.4979, 2e-3));
        assert!(close(node.tau[1], 1.037, 2e-3));
        for v in 1..4 {
            assert!(close(
                edge_curvature(&analysis, &node, 0, v).unwrap(),
                -0.717,
                2e-3
            ));
        }
        for &(u, v) in &[(1, 2), (1, 3), (2, 3)] {
            assert!(close(
                edge_curvature(&analysis, &node, u, v).unwrap(),
                3.6518,
                2e-3
            ));
        }
    }

    #[test]
    fn heat_limit_converges_to_the_normalized_curvature() {
        let analysis = repelling_cost_matrix(&c3(), 0.2).unwrap();
        let node = node_curvature(&analysis).unwrap();
        let theta_heat = edge_curvature_heat(&analysis, &node, 0, 2).unwrap();
        // exact value 3.2 on this instance; the unnormalized curvature is 3.75
        assert!(close(theta_heat, 3.2, 1e-10));
        let est =
            heat_limit_estimate(&analysis, 0, 2, &[0.02, 0.01, 0.005, 0.0025, 0.00125]).unwrap();
        assert!(
            close(est.extrapolated, theta_heat, 1e-6),
            "extrapolated {} vs {}",
            est.extrapolated,
            theta_heat
        );
        // first-order decay: halving t roughly halves the error
        let errs: Vec<f64> = est
            .table
            .iter()
            .take(3)
            .map(|&(_, q)| (q - theta_heat).abs())
            .collect();
        for pair in errs.windows(2) {
            let ratio = pair[0] / pair[1];
            assert!((1.5..=2.5).contains(&ratio), "ratio {ratio}");
        }
    }

    #[test]
    fn heat_limit_on_all_positive_graph_has_no_correction() {
        // E- empty: Lambda vanishes and the estimate equals
        // 2 (tau_i + tau_j) / (phi Omega(i, j))
        let g =
            SignedGraph::from_list(3, &[(0, 1, 1.0, 1), (0, 2, 1.0, 1), (1, 2, 1.0, 1)]).unwrap();
        let analysis = repelling_cost_matrix(&g, 0.7).unwrap();
        let node = node_curvature(&analysis).unwrap();
        let expect = 2.0 * (node.tau[0] + node.tau[1]) / (node.phi * analysis.omega.get(0, 1));
        assert!(close(expect, 2.0, 1e-10)); // hand value for the unit triangle
        let est = heat_limit_estimate(&analysis, 0, 1, &[0.01, 0.005, 0.0025, 0.00125]).unwrap();
        assert!(close(est.extrapolated, expect, 1e-6));
        assert!(close(edge_lambda(&analysis, 0, 1).unwrap(), 0.0, 1e-12));
    }

    #[test]
    fn heat_limit_validates_inputs() {
        let analysis = repelling_cost_matrix(&c3(), 0.2).unwrap();
        assert!(matches!(
            heat_limit_estimate(&analysis, 0, 1, &[0.01, 0.02]),
            Err(Error::BadParameter(_))
        ));
        assert!(matches!(
            heat_limit_estimate(&analysis, 1, 1, &[0.01]),
            Err(Error::NoSuchEdge(1, 1))
        ));
    }

    #[test]
    fn lazy_walk_curvature_stabilizes_and_dominates_heat_curvature() {
        let analysis = repelling_cost_matrix(&c3(), 0.2).unwrap();
        let node = node_curvature(&analysis).unwrap();
        for e in c3().edges() {
            let kappa = lly_curvature(&analysis, e.u, e.v, 1e-3).unwrap();
            let th_heat = edge_curvature_heat(&analysis, &node, e.u, e.v).unwrap();
            assert!(
                th_heat <= kappa.value + tol::LLY_SLACK,
                "edge ({}, {}): {} vs {}",
                e.u,
                e.v,
                th_heat,
                kappa.value
            );
        }
        // the negative edge attains equality: kappa = theta_heat = 3.2
        let kappa = lly_curvature(&analysis, 0, 2, 1e-3).unwrap();
        assert!(close(kappa.value, 3.2, 1e-9));
    }

    #[test]
    fn lazy_walk_two_point_agreement_is_tight() {
        let analysis = repelling_cost_matrix(&c3(), 0.2).unwrap();
        let k1 = lazy_walk_kappa(&analysis, 0, 1, 1e-4).unwrap();
        let k2 = lazy_walk_kappa(&analysis, 0, 1, 5e-5).unwrap();
        assert!((k1 - k2).abs() <= 1e-9, "{k1} vs {k2}");
    }

    #[test]
    fn extremal_costs_applicability() {
        // tau = 8/9 >= 0 on the opposite-pair K4: X = 2 <= 2|V|/phi = 2.25
        // holds, but N = 1.25 > |V|/phi = 1.125 fails: the N bound is not a
        // theorem (the cost matrix has no triangle inequality backing it)
        let g = k4_with_negatives(&[(0, 2), (1, 3)]);
        let analysis = repelling_cost_matrix(&g, 0.5).unwrap();
        let node = node_curvature(&analysis).unwrap();
        let ext = extremal_costs(&analysis, &node);
        assert!(close(ext.x_eps, 2.0, 1e-10));
        assert!(close(ext.n_eps, 1.25, 1e-10));
        assert_eq!(ext.x_bound_ok, Some(true));
        assert_eq!(ext.n_bound_ok, Some(false));

        // all-positive triangle: X = N = 2/3, phi = 27/4; again only X holds
        let g =
            SignedGraph::from_list(3, &[(0, 1, 1.0, 1), (0, 2, 1.0, 1), (1, 2, 1.0, 1)]).unwrap();
        let analysis = repelling_cost_matrix(&g, 0.0).unwrap();
        let node = node_curvature(&analysis).unwrap();
        let ext = extremal_costs(&analysis, &node);
        assert_eq!(ext.x_bound_ok, Some(true));
        assert_eq!(ext.n_bound_ok, Some(false));

        // C3 at eps = 0.2 has tau(2) < 0: hypothesis unmet
        let analysis = repelling_cost_matrix(&c3(), 0.2).unwrap();
        let node = node_curvature(&analysis).unwrap();
        let ext = extremal_costs(&analysis, &node);
        assert!(!ext.applicable());
        assert_eq!(ext.x_bound_ok, None);
    }

    #[test]
    fn report_assembles_in_edge_order() {
        let analysis = repelling_cost_matrix(&c3(), 0.2).unwrap();
        let report = curvature_report(&analysis).unwrap();
        assert_eq!(report.theta.len(), 3);
        assert_eq!((report.theta[0].u, report.theta[0].v), (0, 1));
        // every edge verdict for the heat-normalized comparison holds
        assert!(report
            .comparisons
            .iter()
            .all(|c| c.lly_dominates_theta_heat));
        // and the unnormalized curvature genuinely exceeds kappa on the negative edge
        let neg = report
            .comparisons
            .iter()
            .find(|c| (c.u, c.v) == (0, 2))
            .unwrap();
        assert!(!neg.lly_dominates_theta);
    }
}

//! Exact Wasserstein-1 transport on tiny supports.
//!
//! The solver is a textbook transportation simplex: northwest-corner start,
//! Bland's rule for entering and leaving variables (anti-cycling), tree-based
//! dual updates. Optimality is certified by feasible dual potentials with a
//! zero duality gap, extended from the support to the whole vertex set by a
//! cost transform.

use crate::error::{Error, Result};
use crate::spectral::SymMatrix;
use crate::tol;
use ndarray::Array2;

/// Coupling matrix with marginals and objective value.
#[derive(Debug, Clone)]
pub struct TransportPlan {
    /// Full-size plan; rows are the source marginal, columns the target.
    pub plan: Array2<f64>,
    /// Objective `sum plan(k, l) cost(k, l)`.
    pub value: f64,
    /// Feasible dual potentials `(phi, psi)` certifying optimality:
    /// `phi(x) + psi(y) <= cost(x, y)` everywhere and
    /// `sum phi mu + sum psi nu = value`.
    pub dual_potentials: Option<(Vec<f64>, Vec<f64>)>,
}

const PIVOT_CAP: usize = 100_000;

struct Simplex<'a> {
    cost: &'a [Vec<f64>],
    a: Vec<f64>,
    b: Vec<f64>,
    flow: Vec<Vec<f64>>,
    basis: Vec<Vec<bool>>,
}

impl<'a> Simplex<'a> {
    fn new(cost: &'a [Vec<f64>], a: Vec<f64>, b: Vec<f64>) -> Self {
        let m = a.len();
        let n = b.len();
        let mut s = Simplex {
            cost,
            a,
            b,
            flow: vec![vec![0.0; n]; m],
            basis: vec![vec![false; n]; m],
        };
        s.northwest_corner();
        s
    }

    fn northwest_corner(&mut self) {
        let m = self.a.len();
        let n = self.b.len();
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        let (mut i, mut j) = (0, 0);
        loop {
            let x = a[i].min(b[j]);
            self.flow[i][j] = x;
            self.basis[i][j] = true;
            a[i] -= x;
            b[j] -= x;
            if i == m - 1 && j == n - 1 {
                break;
            }
            if j == n - 1 || (a[i] <= b[j] && i < m - 1) {
                i += 1;
            } else {
                j += 1;
            }
        }
    }

    /// Dual potentials from the basis tree, root row 0 at zero.
    fn potentials(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        let m = self.a.len();
        let n = self.b.len();
        let mut u = vec![f64::NAN; m];
        let mut v = vec![f64::NAN; n];
        u[0] = 0.0;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(0usize); // node ids: rows 0..m, cols m..m+n
        while let Some(node) = queue.pop_front() {
            if node < m {
                let i = node;
                for j in 0..n {
                    if self.basis[i][j] && v[j].is_nan() {
                        v[j] = self.cost[i][j] - u[i];
                        queue.push_back(m + j);
                    }
                }
            } else {
                let j = node - m;
                for i in 0..m {
                    if self.basis[i][j] && u[i].is_nan() {
                        u[i] = self.cost[i][j] - v[j];
                        queue.push_back(i);
                    }
                }
            }
        }
        if u.iter().any(|x| x.is_nan()) || v.iter().any(|x| x.is_nan()) {
            return Err(Error::Internal(
                "transport basis is not a spanning tree".into(),
            ));
        }
        Ok((u, v))
    }

    /// Tree path from column node `j` to row node `i` as a list of basis cells.
    fn tree_path(&self, i: usize, j: usize) -> Result<Vec<(usize, usize)>> {
        let m = self.a.len();
        let n = self.b.len();
        let total = m + n;
        let mut parent: Vec<Option<(usize, (usize, usize))>> = vec![None; total];
        let mut seen = vec![false; total];
        let start = m + j;
        let goal = i;
        seen[start] = true;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(start);
        while let Some(node) = queue.pop_front() {
            if node == goal {
                break;
            }
            if node < m {
                let r = node;
                for c in 0..n {
                    if self.basis[r][c] && !seen[m + c] {
                        seen[m + c] = true;
                        parent[m + c] = Some((node, (r, c)));
                        queue.push_back(m + c);
                    }
                }
            } else {
                let c = node - m;
                for r in 0..m {
                    if self.basis[r][c] && !seen[r] {
                        seen[r] = true;
                        parent[r] = Some((node, (r, c)));
                        queue.push_back(r);
                    }
                }
            }
        }
        if !seen[goal] {
            return Err(Error::Internal("transport basis is disconnected".into()));
        }
        let mut path = Vec::new();
        let mut node = goal;
        while node != start {
            let (prev, cell) = parent[node].expect("walked node has a parent");
            path.push(cell);
            node = prev;
        }
        path.reverse(); // now ordered from the column of the entering cell
        Ok(path)
    }

    fn solve(&mut self) -> Result<(Vec<f64>, Vec<f64>)> {
        let m = self.a.len();
        let n = self.b.len();
        let scale = self
            .cost
            .iter()
            .flat_map(|r| r.iter())
            .fold(0.0f64, |acc, &c| acc.max(c.abs()));
        let enter_tol = 1e-12 * (1.0 + scale);
        for _pivot in 0..PIVOT_CAP {
            let (u, v) = self.potentials()?;
            // Bland: first improving cell in lexicographic order
            let mut entering = None;
            'scan: for i in 0..m {
                for j in 0..n {
                    if !self.basis[i][j] && self.cost[i][j] - u[i] - v[j] < -enter_tol {
                        entering = Some((i, j));
                        break 'scan;
                    }
                }
            }
            let Some((ei, ej)) = entering else {
                return Ok((u, v));
            };
            let path = self.tree_path(ei, ej)?;
            // signs along the cycle: entering +, then alternating - / + down the path
            let mut minus_cells = Vec::new();
            for (pos, &cell) in path.iter().enumerate() {
                if pos % 2 == 0 {
                    minus_cells.push(cell);
                }
            }
            // Bland again: the first minus-cell attaining the minimum leaves
            let theta = minus_cells
                .iter()
                .map(|&(r, c)| self.flow[r][c])
                .fold(f64::INFINITY, f64::min);
            let leaving = *minus_cells
                .iter()
                .find(|&&(r, c)| self.flow[r][c] <= theta)
                .expect("some cell attains the minimum");
            self.flow[ei][ej] += theta;
            for (pos, &(r, c)) in path.iter().enumerate() {
                if pos % 2 == 0 {
                    self.flow[r][c] -= theta;
                } else {
                    self.flow[r][c] += theta;
                }
            }
            self.basis[ei][ej] = true;
            self.basis[leaving.0][leaving.1] = false;
            self.flow[leaving.0][leaving.1] = 0.0;
        }
        Err(Error::PivotCapExceeded)
    }
}

/// Exact optimum of the transportation problem with ground cost `cost`.
///
/// `mu` and `nu` must be probability vectors over the cost's index set.
/// Optimality is certified: the returned duals are feasible everywhere and
/// close the gap to within [`tol::DUALITY_GAP`].
pub fn w1_exact(cost: &SymMatrix, mu: &[f64], nu: &[f64]) -> Result<TransportPlan> {
    let size = cost.dim();
    if mu.len() != size || nu.len() != size {
        return Err(Error::MarginalMismatch(
            "marginal length differs from cost dimension",
        ));
    }
    for x in mu.iter().chain(nu.iter()) {
        if !x.is_finite() || *x < -1e-15 {
            return Err(Error::MarginalMismatch("negative or non-finite mass"));
        }
    }
    let sum_mu: f64 = mu.iter().sum();
    let sum_nu: f64 = nu.iter().sum();
    if (sum_mu - 1.0).abs() > tol::DISTRIBUTION_SUM || (sum_nu - 1.0).abs() > tol::DISTRIBUTION_SUM
    {
        return Err(Error::MarginalMismatch("marginals must sum to one"));
    }

    let srcs: Vec<usize> = (0..size).filter(|&i| mu[i] > 0.0).collect();
    let tgts: Vec<usize> = (0..size).filter(|&j| nu[j] > 0.0).collect();
    let local_cost: Vec<Vec<f64>> = srcs
        .iter()
        .map(|&i| tgts.iter().map(|&j| cost.get(i, j)).collect())
        .collect();
    let a: Vec<f64> = srcs.iter().map(|&i| mu[i]).collect();
    let b: Vec<f64> = tgts.iter().map(|&j| nu[j]).collect();

    let mut simplex = Simplex::new(&local_cost, a, b);
    let (u, v) = simplex.solve()?;

    let mut plan = Array2::zeros((size, size));
    let mut value = 0.0;
    for (li, &i) in srcs.iter().enumerate() {
        for (lj, &j) in tgts.iter().enumerate() {
            let f = simplex.flow[li][lj];
            if f != 0.0 {
                plan[(i, j)] = f;
                value += f * cost.get(i, j);
            }
        }
    }

    // extend duals from the support to every vertex
    let mut psi = vec![0.0; size];
    for j in 0..size {
        psi[j] = match tgts.iter().position(|&t| t == j) {
            Some(lj) => v[lj],
            None => srcs
                .iter()
                .enumerate()
                .map(|(li, &i)| cost.get(i, j) - u[li])
                .fold(f64::INFINITY, f64::min),
        };
    }
    let mut phi = vec![0.0; size];
    for i in 0..size {
        phi[i] = (0..size)
            .map(|j| cost.get(i, j) - psi[j])
            .fold(f64::INFINITY, f64::min);
    }

    // certify feasibility and the duality gap
    for i in 0..size {
        for j in 0..size {
            if phi[i] + psi[j] > cost.get(i, j) + tol::DUAL_FEASIBLE {
                return Err(Error::Internal(format!(
                    "infeasible dual at ({i}, {j}): {} > {}",
                    phi[i] + psi[j],
                    cost.get(i, j)
                )));
            }
        }
    }
    let dual_value: f64 = (0..size).map(|i| phi[i] * mu[i]).sum::<f64>()
        + (0..size).map(|j| psi[j] * nu[j]).sum::<f64>();
    if (value - dual_value).abs() > tol::DUALITY_GAP {
        return Err(Error::Internal(format!(
            "duality gap {} exceeds tolerance",
            value - dual_value
        )));
    }

    // marginal feasibility of the plan
    for i in 0..size {
        let row: f64 = (0..size).map(|j| plan[(i, j)]).sum();
        if (row - mu[i]).abs() > tol::MARGINALS {
            return Err(Error::Internal(format!("plan row {i} misses its marginal")));
        }
    }
    for j in 0..size {
        let col: f64 = (0..size).map(|i| plan[(i, j)]).sum();
        if (col - nu[j]).abs() > tol::MARGINALS {
            return Err(Error::Internal(format!(
                "plan column {j} misses its marginal"
            )));
        }
    }

    Ok(TransportPlan {
        plan,
        value,
        dual_potentials: Some((phi, psi)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SignedGraph;
    use crate::repelling::repelling_cost_matrix;

    fn example_omega() -> SymMatrix {
        let g =
            SignedGraph::from_list(3, &[(0, 1, 1.0, 1), (0, 2, 1.0, 1), (1, 2, 1.0, -1)]).unwrap();
        repelling_cost_matrix(&g, 0.25).unwrap().omega
    }

    #[test]
    fn identical_marginals_move_nothing() {
        let omega = example_omega();
        let mu = [0.2, 0.5, 0.3];
        let plan = w1_exact(&omega, &mu, &mu).unwrap();
        assert!(plan.value.abs() < 1e-15);
        for i in 0..3 {
            assert!((plan.plan[(i, i)] - mu[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn point_masses_pay_the_cost_entry() {
        let omega = example_omega();
        let mu = [1.0, 0.0, 0.0];
        let nu = [0.0, 0.0, 1.0];
        let plan = w1_exact(&omega, &mu, &nu).unwrap();
        assert!((plan.value - omega.get(0, 2)).abs() < 1e-12);
        assert!((plan.plan[(0, 2)] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_by_two_matches_the_better_extreme_plan() {
        // mu = (1/2, 1/2, 0), nu = (0, 1/2, 1/2) on the worked-example costs:
        // the polytope has two vertices, keep-the-middle or swap
        let omega = example_omega();
        let mu = [0.5, 0.5, 0.0];
        let nu = [0.0, 0.5, 0.5];
        let keep = 0.5 * omega.get(0, 1) + 0.5 * omega.get(1, 2);
        let swap = 0.5 * omega.get(0, 2) + 0.5 * omega.get(1, 1);
        let best = keep.min(swap);
        let plan = w1_exact(&omega, &mu, &nu).unwrap();
        assert!(
            (plan.value - best).abs() < 1e-12,
            "{} vs {}",
            plan.value,
            best
        );
    }

    #[test]
    fn rejects_marginal_mismatch() {
        let omega = example_omega();
        assert!(matches!(
            w1_exact(&omega, &[0.5, 0.5, 0.1], &[1.0, 0.0, 0.0]),
            Err(Error::MarginalMismatch(_))
        ));
        assert!(matches!(
            w1_exact(&omega, &[0.5, 0.5], &[1.0, 0.0, 0.0]),
            Err(Error::MarginalMismatch(_))
        ));
    }

    #[test]
    fn duals_certify_optimality() {
        let omega = example_omega();
        let mu = [0.7, 0.1, 0.2];
        let nu = [0.1, 0.6, 0.3];
        let plan = w1_exact(&omega, &mu, &nu).unwrap();
        let (phi, psi) = plan.dual_potentials.as_ref().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(phi[i] + psi[j] <= omega.get(i, j) + tol::DUAL_FEASIBLE);
            }
        }
        let dual: f64 = (0..3).map(|i| phi[i] * mu[i] + psi[i] * nu[i]).sum();
        assert!((plan.value - dual).abs() <= tol::DUALITY_GAP);
    }

    #[test]
    fn lazy_walk_marginals_beat_the_product_plan() {
        // the product coupling is feasible, so the optimum can only be cheaper
        let g =
            SignedGraph::from_list(3, &[(0, 1, 1.0, 1), (1, 2, 1.0, 1), (0, 2, 1.0, -1)]).unwrap();
        let analysis = repelling_cost_matrix(&g, 0.2).unwrap();
        let q = crate::spectral::laplacian(&g, crate::spectral::LaplacianKind::Underlying);
        let alpha = 0.05;
        let mut mu = vec![0.0; 3];
        let mut nu = vec![0.0; 3];
        for k in 0..3 {
            mu[k] = if k == 0 { 1.0 } else { 0.0 } - alpha * q.get(k, 0);
            nu[k] = if k == 2 { 1.0 } else { 0.0 } - alpha * q.get(k, 2);
        }
        let mut product_cost = 0.0;
        for k in 0..3 {
            for l in 0..3 {
                product_cost += mu[k] * nu[l] * analysis.omega.get(k, l);
            }
        }
        let plan = w1_exact(&analysis.omega, &mu, &nu).unwrap();
        assert!(plan.value <= product_cost + 1e-12);
    }
}

//! Independent oracles for the verification suites.
//!
//! Everything here deliberately avoids the library's main computational
//! paths: transport by brute-force enumeration of basic solutions, effective
//! resistance by weighted spanning-tree/2-forest sums, hop distances by
//! Floyd-Warshall, the heat kernel by its truncated power series.

use crate::graph::{Sign, SignedGraph};
use ndarray::Array2;

/// Exact transportation optimum by enumerating every basic feasible solution
/// (spanning trees of the support bipartite graph). Exponential; intended for
/// supports of size <= 4.
pub fn w1_brute_force(cost: &Array2<f64>, mu: &[f64], nu: &[f64]) -> Option<f64> {
    let srcs: Vec<usize> = (0..mu.len()).filter(|&i| mu[i] > 0.0).collect();
    let tgts: Vec<usize> = (0..nu.len()).filter(|&j| nu[j] > 0.0).collect();
    let m = srcs.len();
    let n = tgts.len();
    if m == 0 || n == 0 {
        return Some(0.0);
    }
    let cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let basis_size = m + n - 1;
    let mut best: Option<f64> = None;
    let mut chosen = vec![0usize; basis_size];

    fn rec(
        cells: &[(usize, usize)],
        start: usize,
        depth: usize,
        chosen: &mut Vec<usize>,
        ctx: &mut dyn FnMut(&[usize]),
        basis_size: usize,
    ) {
        if depth == basis_size {
            ctx(chosen);
            return;
        }
        for idx in start..cells.len() {
            chosen[depth] = idx;
            rec(cells, idx + 1, depth + 1, chosen, ctx, basis_size);
        }
    }

    let a: Vec<f64> = srcs.iter().map(|&i| mu[i]).collect();
    let b: Vec<f64> = tgts.iter().map(|&j| nu[j]).collect();
    let mut eval = |subset: &[usize]| {
        // the subset must form a spanning tree of the bipartite node set
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m + n]; // (node, cell)
        for &ci in subset {
            let (i, j) = cells[ci];
            adj[i].push((m + j, ci));
            adj[m + j].push((i, ci));
        }
        let mut seen = vec![false; m + n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(x) = stack.pop() {
            for &(y, _) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    stack.push(y);
                }
            }
        }
        if reached != m + n {
            return;
        }
        // leaf elimination solves the tree flows uniquely
        let mut flow = vec![0.0f64; subset.len()];
        let mut supply: Vec<f64> = a.iter().copied().chain(b.iter().map(|x| -x)).collect();
        let mut degree: Vec<usize> = adj.iter().map(|l| l.len()).collect();
        let mut removed_cell = vec![false; subset.len()];
        let mut removed_node = vec![false; m + n];
        for _ in 0..subset.len() {
            let leaf = (0..m + n)
                .find(|&x| !removed_node[x] && degree[x] == 1)
                .expect("a tree always has a leaf");
            let &(other, ci_global) = adj[leaf]
                .iter()
                .find(|&&(_, ci)| !removed_cell[subset.iter().position(|&s| s == ci).unwrap()])
                .expect("leaf has one live edge");
            let local = subset.iter().position(|&s| s == ci_global).unwrap();
            // remaining supply at the leaf must ride its only edge,
            // oriented source -> target
            flow[local] = if leaf < m {
                supply[leaf]
            } else {
                -supply[leaf]
            };
            supply[other] += supply[leaf];
            supply[leaf] = 0.0;
            removed_cell[local] = true;
            removed_node[leaf] = true;
            degree[leaf] = 0;
            degree[other] -= 1;
        }
        if flow.iter().any(|&f| f < -1e-12) {
            return;
        }
        let value: f64 = subset
            .iter()
            .zip(&flow)
            .map(|(&ci, &f)| {
                let (i, j) = cells[ci];
                f * cost[(srcs[i], tgts[j])]
            })
            .sum();
        best = Some(match best {
            None => value,
            Some(v) => v.min(value),
        });
    };
    rec(&cells, 0, 0, &mut chosen, &mut eval, basis_size);
    best
}

/// Weighted effective resistance by exhaustive spanning-tree and spanning-
/// 2-forest enumeration: `r(i, j) = F_ij / T` with `T` the weighted tree sum
/// and `F_ij` the weighted sum of 2-forests separating `i` from `j`.
/// Exponential in the edge count; intended for small test graphs.
pub fn resistance_by_tree_enumeration(
    g: &SignedGraph,
    filter_positive_only: bool,
    i: usize,
    j: usize,
) -> Option<f64> {
    let edges: Vec<(usize, usize, f64)> = g
        .edges()
        .iter()
        .filter(|e| !filter_positive_only || e.sign == Sign::Positive)
        .map(|e| (e.u, e.v, e.weight))
        .collect();
    let n = g.n();
    let m = edges.len();
    if m > 22 {
        return None; // enumeration would be unreasonable
    }
    let mut tree_sum = 0.0;
    let mut forest_sum = 0.0;
    for mask in 0u32..(1 << m) {
        let count = mask.count_ones() as usize;
        if count != n - 1 && count != n - 2 {
            continue;
        }
        // union-find over the selected edges
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut acyclic = true;
        let mut weight = 1.0;
        for (k, &(u, v, w)) in edges.iter().enumerate() {
            if mask >> k & 1 == 1 {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru == rv {
                    acyclic = false;
                    break;
                }
                parent[ru] = rv;
                weight *= w;
            }
        }
        if !acyclic {
            continue;
        }
        let components: std::collections::HashSet<usize> =
            (0..n).map(|x| find(&mut parent, x)).collect();
        if count == n - 1 && components.len() == 1 {
            tree_sum += weight;
        } else if count == n - 2 && components.len() == 2 {
            // 2-forest separating i from j
            if find(&mut parent, i) != find(&mut parent, j) {
                forest_sum += weight;
            }
        }
    }
    if tree_sum == 0.0 {
        None
    } else {
        Some(forest_sum / tree_sum)
    }
}

/// All-pairs hop distances by Floyd-Warshall; `None` when disconnected.
pub fn hop_diameter_floyd_warshall(g: &SignedGraph) -> Option<usize> {
    let n = g.n();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for v in 0..n {
        d[v][v] = 0;
    }
    for e in g.edges() {
        d[e.u][e.v] = 1;
        d[e.v][e.u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    let mut best = 0;
    for i in 0..n {
        for j in 0..n {
            if d[i][j] >= inf {
                return None;
            }
            best = best.max(d[i][j]);
        }
    }
    Some(best)
}

/// Truncated power series for `exp(-Mt)`.
pub fn exp_series(m: &Array2<f64>, t: f64, terms: usize) -> Array2<f64> {
    let n = m.nrows();
    let mut sum: Array2<f64> = Array2::eye(n);
    let mut term: Array2<f64> = Array2::eye(n);
    let mt = m * t;
    for k in 1..=terms {
        term = term.dot(&mt).map(|x| -x / k as f64);
        sum += &term;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SignedGraph;

    #[test]
    fn brute_force_matches_hand_cases() {
        let mut cost = Array2::zeros((3, 3));
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    cost[(i, j)] = 1.0 + (i as f64 - j as f64).abs();
                }
            }
        }
        // point masses
        let v = w1_brute_force(&cost, &[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0]).unwrap();
        assert!((v - cost[(0, 2)]).abs() < 1e-12);
        // identical marginals
        let v = w1_brute_force(&cost, &[0.3, 0.3, 0.4], &[0.3, 0.3, 0.4]).unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn tree_enumeration_matches_series_resistance() {
        // positive path 0-1-2: r(0, 2) = 2
        let g = SignedGraph::from_list(3, &[(0, 1, 1.0, 1), (1, 2, 1.0, 1)]).unwrap();
        let r = resistance_by_tree_enumeration(&g, true, 0, 2).unwrap();
        assert!((r - 2.0).abs() < 1e-12);
        // unit triangle: r = 2/3
        let g =
            SignedGraph::from_list(3, &[(0, 1, 1.0, 1), (0, 2, 1.0, 1), (1, 2, 1.0, 1)]).unwrap();
        let r = resistance_by_tree_enumeration(&g, true, 0, 1).unwrap();
        assert!((r - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn floyd_warshall_on_cycle() {
        let g = SignedGraph::from_list(
            4,
            &[
                (0, 1, 1.0, 1),
                (1, 2, 1.0, 1),
                (2, 3, 1.0, 1),
                (0, 3, 1.0, 1),
            ],
        )
        .unwrap();
        assert_eq!(hop_diameter_floyd_warshall(&g), Some(2));
        let disconnected = SignedGraph::from_list(3, &[(0, 1, 1.0, 1)]).unwrap();
        assert_eq!(hop_diameter_floyd_warshall(&disconnected), None);
    }
}

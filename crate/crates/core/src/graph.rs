//! Signed-graph data model: parsing, predicates, switching, and the
//! combinatorial scaffolding (spanning trees, blocks, hop distances).

use crate::error::{Error, ParseErrorKind, Result};
use serde::{Deserialize, Serialize};

/// Edge sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Positive => 1.0,
            Sign::Negative => -1.0,
        }
    }

    pub fn product(self, other: Sign) -> Sign {
        if self == other {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }
}

/// Undirected weighted signed edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    pub sign: Sign,
}

/// Which edges of the signed graph to look at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubgraphFilter {
    Underlying,
    Positive,
    Negative,
}

impl SubgraphFilter {
    fn keeps(self, sign: Sign) -> bool {
        match self {
            SubgraphFilter::Underlying => true,
            SubgraphFilter::Positive => sign == Sign::Positive,
            SubgraphFilter::Negative => sign == Sign::Negative,
        }
    }

    fn name(self) -> &'static str {
        match self {
            SubgraphFilter::Underlying => "underlying",
            SubgraphFilter::Positive => "positive",
            SubgraphFilter::Negative => "negative",
        }
    }
}

/// Simple undirected weighted graph with +/-1 edge signs.
///
/// Single source of truth for the sign-split weights and degrees. Immutable
/// after construction; edges are kept sorted by `(u, v)` and the adjacency is
/// kept in ascending neighbor order so every traversal is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, usize)>>, // (neighbor, edge index), ascending neighbor
}

/// Result of switching a signature to be positive on a spanning tree.
#[derive(Debug, Clone)]
pub struct SwitchingResult {
    pub graph: SignedGraph,
    /// Per-vertex switching sign: product of signs along the tree path from
    /// the root.
    pub switch_fn: Vec<Sign>,
    pub tree_edges: Vec<(usize, usize)>,
}

/// Outcome of the balance test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BalanceVerdict {
    pub balanced: bool,
    /// One side of the Harary bipartition, present iff balanced.
    pub bipartition: Option<Vec<usize>>,
    /// A cycle with negative sign product, present iff unbalanced.
    pub witness_cycle: Option<Vec<(usize, usize)>>,
}

impl SignedGraph {
    /// Builds a validated graph. Edge endpoints are normalized to `u < v` and
    /// the edge list is sorted lexicographically.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooSmall {
                required: 1,
                found: 0,
            });
        }
        let mut norm: Vec<Edge> = Vec::with_capacity(edges.len());
        for e in edges {
            let (u, v) = if e.u < e.v { (e.u, e.v) } else { (e.v, e.u) };
            if u == v {
                return Err(Error::Parse {
                    line: 0,
                    kind: ParseErrorKind::SelfLoop(u),
                });
            }
            if v >= n {
                return Err(Error::Parse {
                    line: 0,
                    kind: ParseErrorKind::VertexOutOfRange(v, n),
                });
            }
            if !(e.weight.is_finite() && e.weight > 0.0) {
                return Err(Error::Parse {
                    line: 0,
                    kind: ParseErrorKind::NonPositiveWeight(e.weight),
                });
            }
            norm.push(Edge { u, v, ..e });
        }
        norm.sort_by_key(|e| (e.u, e.v));
        for w in norm.windows(2) {
            if w[0].u == w[1].u && w[0].v == w[1].v {
                return Err(Error::Parse {
                    line: 0,
                    kind: ParseErrorKind::DuplicateEdge(w[0].u, w[0].v),
                });
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (idx, e) in norm.iter().enumerate() {
            adj[e.u].push((e.v, idx));
            adj[e.v].push((e.u, idx));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(SignedGraph {
            n,
            edges: norm,
            adj,
        })
    }

    /// Convenience constructor from `(u, v, weight, sign)` tuples with
    /// `sign in {+1, -1}`.
    pub fn from_list(n: usize, list: &[(usize, usize, f64, i8)]) -> Result<Self> {
        let edges = list
            .iter()
            .map(|&(u, v, w, s)| {
                Ok(Edge {
                    u,
                    v,
                    weight: w,
                    sign: match s {
                        1 => Sign::Positive,
                        -1 => Sign::Negative,
                        _ => {
                            return Err(Error::Parse {
                                line: 0,
                                kind: ParseErrorKind::BadSign(s.to_string()),
                            })
                        }
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SignedGraph::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(neighbor, edge index)` pairs of `v` in ascending neighbor order.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn find_edge(&self, u: usize, v: usize) -> Option<&Edge> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search_by_key(&(a, b), |e| (e.u, e.v))
            .ok()
            .map(|i| &self.edges[i])
    }

    pub fn has_negative_edges(&self) -> bool {
        self.edges.iter().any(|e| e.sign == Sign::Negative)
    }

    /// Positive and negative weighted degree vectors.
    pub fn degrees(&self) -> (Vec<f64>, Vec<f64>) {
        let mut dp = vec![0.0; self.n];
        let mut dm = vec![0.0; self.n];
        for e in &self.edges {
            let d = if e.sign.is_positive() {
                &mut dp
            } else {
                &mut dm
            };
            d[e.u] += e.weight;
            d[e.v] += e.weight;
        }
        (dp, dm)
    }

    /// Total weighted degree (positive plus negative) per vertex.
    pub fn total_degrees(&self) -> Vec<f64> {
        let (dp, dm) = self.degrees();
        dp.iter().zip(&dm).map(|(a, b)| a + b).collect()
    }

    /// Sign-filtered weight lookup, zero off-edges.
    pub fn weight(&self, u: usize, v: usize, filter: SubgraphFilter) -> f64 {
        match self.find_edge(u, v) {
            Some(e) if filter.keeps(e.sign) => e.weight,
            _ => 0.0,
        }
    }

    fn reach_from_zero(&self, filter: SubgraphFilter) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut queue = std::collections::VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        while let Some(x) = queue.pop_front() {
            for &(y, idx) in &self.adj[x] {
                if !seen[y] && filter.keeps(self.edges[idx].sign) {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self, filter: SubgraphFilter) -> bool {
        self.reach_from_zero(filter).iter().all(|&s| s)
    }

    /// True iff the positive subgraph spans all vertices and is connected.
    pub fn is_positive_connected(&self) -> bool {
        self.is_connected(SubgraphFilter::Positive)
    }

    pub fn is_negative_connected(&self) -> bool {
        self.is_connected(SubgraphFilter::Negative)
    }

    /// Deterministic spanning tree of the filtered subgraph: BFS from vertex 0
    /// with ascending neighbor order.
    pub fn spanning_tree(&self, filter: SubgraphFilter) -> Result<Vec<(usize, usize)>> {
        let mut seen = vec![false; self.n];
        let mut tree = Vec::with_capacity(self.n.saturating_sub(1));
        let mut queue = std::collections::VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        while let Some(x) = queue.pop_front() {
            for &(y, idx) in &self.adj[x] {
                if !seen[y] && filter.keeps(self.edges[idx].sign) {
                    seen[y] = true;
                    let e = &self.edges[idx];
                    tree.push((e.u, e.v));
                    queue.push_back(y);
                }
            }
        }
        if tree.len() + 1 != self.n {
            return Err(Error::Disconnected(filter.name()));
        }
        Ok(tree)
    }

    /// Switches the signature so that every edge of `tree` becomes positive.
    ///
    /// The switching function at `i` is the sign product along the unique tree
    /// path from `root` to `i`; cycle sign products are preserved.
    pub fn switch_to_tree_positive(
        &self,
        tree: &[(usize, usize)],
        root: usize,
    ) -> Result<SwitchingResult> {
        if root >= self.n {
            return Err(Error::BadParameter("root out of range"));
        }
        if tree.len() + 1 != self.n {
            return Err(Error::NotSpanningTree("wrong edge count"));
        }
        let mut tree_adj = vec![Vec::new(); self.n];
        for &(u, v) in tree {
            let e = self
                .find_edge(u, v)
                .ok_or(Error::NotSpanningTree("edge not in graph"))?;
            tree_adj[u].push((v, e.sign));
            tree_adj[v].push((u, e.sign));
        }
        let mut switch = vec![None; self.n];
        switch[root] = Some(Sign::Positive);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            let fx = switch[x].unwrap();
            for &(y, s) in &tree_adj[x] {
                if switch[y].is_none() {
                    switch[y] = Some(fx.product(s));
                    queue.push_back(y);
                }
            }
        }
        if switch.iter().any(|s| s.is_none()) {
            return Err(Error::NotSpanningTree("not spanning or not acyclic"));
        }
        let switch_fn: Vec<Sign> = switch.into_iter().map(|s| s.unwrap()).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                sign: switch_fn[e.u].product(e.sign).product(switch_fn[e.v]),
                ..*e
            })
            .collect();
        Ok(SwitchingResult {
            graph: SignedGraph::new(self.n, edges)?,
            switch_fn,
            tree_edges: tree.to_vec(),
        })
    }

    /// Harary balance test by BFS 2-coloring (a negative edge flips color).
    ///
    /// On conflict the returned witness cycle consists of tree paths to the
    /// conflicting edge's endpoints plus that edge; its sign product is -1.
    pub fn balance_check(&self) -> Result<BalanceVerdict> {
        if !self.is_connected(SubgraphFilter::Underlying) {
            return Err(Error::Disconnected("underlying"));
        }
        // color[v] in {0, 1}; parent edge remembered to extract a witness cycle
        let mut color = vec![None; self.n];
        let mut parent: Vec<Option<usize>> = vec![None; self.n];
        color[0] = Some(0u8);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(0);
        while let Some(x) = queue.pop_front() {
            let cx = color[x].unwrap();
            for &(y, idx) in &self.adj[x] {
                let flip = !self.edges[idx].sign.is_positive();
                let want = if flip { 1 - cx } else { cx };
                match color[y] {
                    None => {
                        color[y] = Some(want);
                        parent[y] = Some(x);
                        queue.push_back(y);
                    }
                    Some(cy) if cy != want => {
                        // conflict: walk both endpoints up to the root to close a cycle
                        let path_to_root = |mut v: usize| {
                            let mut p = vec![v];
                            while let Some(q) = parent[v] {
                                p.push(q);
                                v = q;
                            }
                            p
                        };
                        let px = path_to_root(x);
                        let py = path_to_root(y);
                        let in_py: std::collections::HashSet<usize> = py.iter().copied().collect();
                        let lca = *px.iter().find(|v| in_py.contains(v)).unwrap();
                        let mut cycle = vec![(x, y)];
                        for w in px.windows(2) {
                            cycle.push((w[0], w[1]));
                            if w[1] == lca {
                                break;
                            }
                        }
                        for w in py.windows(2) {
                            cycle.push((w[0], w[1]));
                            if w[1] == lca {
                                break;
                            }
                        }
                        return Ok(BalanceVerdict {
                            balanced: false,
                            bipartition: None,
                            witness_cycle: Some(cycle),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
        let side: Vec<usize> = (0..self.n).filter(|&v| color[v] == Some(0)).collect();
        Ok(BalanceVerdict {
            balanced: true,
            bipartition: Some(side),
            witness_cycle: None,
        })
    }

    fn bfs_hops(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(src);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dist[x].unwrap() + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Maximum unweighted shortest-path hop count over all vertex pairs.
    pub fn hop_diameter(&self) -> Result<usize> {
        let mut best = 0;
        for src in 0..self.n {
            for d in self.bfs_hops(src) {
                match d {
                    None => return Err(Error::Disconnected("underlying")),
                    Some(h) => best = best.max(h),
                }
            }
        }
        Ok(best)
    }

    /// Biconnected components of the underlying graph as lists of edge
    /// indices. Two distinct edges lie on a common cycle iff they share a
    /// block.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0usize;
        let mut stack: Vec<usize> = Vec::new(); // edge indices
        let mut blocks = Vec::new();

        // iterative DFS: (vertex, parent edge idx, adjacency cursor)
        for start in 0..n {
            if disc[start] != usize::MAX {
                continue;
            }
            let mut call: Vec<(usize, Option<usize>, usize)> = vec![(start, None, 0)];
            disc[start] = timer;
            low[start] = timer;
            timer += 1;
            while let Some(&mut (x, pe, ref mut cursor)) = call.last_mut() {
                if *cursor < self.adj[x].len() {
                    let (y, idx) = self.adj[x][*cursor];
                    *cursor += 1;
                    if Some(idx) == pe {
                        continue;
                    }
                    if disc[y] == usize::MAX {
                        stack.push(idx);
                        disc[y] = timer;
                        low[y] = timer;
                        timer += 1;
                        call.push((y, Some(idx), 0));
                    } else if disc[y] < disc[x] {
                        stack.push(idx);
                        low[x] = low[x].min(disc[y]);
                    }
                } else {
                    call.pop();
                    if let Some(&mut (p, _, _)) = call.last_mut() {
                        low[p] = low[p].min(low[x]);
                        if low[x] >= disc[p] {
                            // pop one block: all stacked edges discovered below p-x
                            let mut block = Vec::new();
                            while let Some(&idx) = stack.last() {
                                let e = &self.edges[idx];
                                let top = disc[e.u].max(disc[e.v]);
                                if top >= disc[x] {
                                    block.push(stack.pop().unwrap());
                                } else {
                                    break;
                                }
                            }
                            if !block.is_empty() {
                                block.sort_unstable();
                                blocks.push(block);
                            }
                        }
                    }
                }
            }
        }
        blocks.sort();
        blocks
    }
}

/// Parses the edge-list text format.
///
/// First non-comment line is the vertex count; each following non-comment
/// line is `u v [w] s` with `s` in `{+1, -1}` and weight defaulting to 1.
/// `#` begins a comment.
pub fn parse_edge_list(text: &str) -> Result<SignedGraph> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(Edge, usize)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if n.is_none() {
            let count: usize = content.parse().map_err(|_| Error::Parse {
                line,
                kind: ParseErrorKind::InvalidHeader,
            })?;
            if count == 0 {
                return Err(Error::Parse {
                    line,
                    kind: ParseErrorKind::InvalidHeader,
                });
            }
            n = Some(count);
            continue;
        }
        let n = n.unwrap();
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let (u_tok, v_tok, w_tok, s_tok) = match tokens.len() {
            3 => (tokens[0], tokens[1], None, tokens[2]),
            4 => (tokens[0], tokens[1], Some(tokens[2]), tokens[3]),
            _ => {
                return Err(Error::Parse {
                    line,
                    kind: ParseErrorKind::MalformedLine,
                })
            }
        };
        let parse_id = |tok: &str| -> Result<usize> {
            tok.parse().map_err(|_| Error::Parse {
                line,
                kind: ParseErrorKind::MalformedLine,
            })
        };
        let u = parse_id(u_tok)?;
        let v = parse_id(v_tok)?;
        if u == v {
            return Err(Error::Parse {
                line,
                kind: ParseErrorKind::SelfLoop(u),
            });
        }
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                kind: ParseErrorKind::VertexOutOfRange(u.max(v), n),
            });
        }
        let weight = match w_tok {
            None => 1.0,
            Some(t) => t.parse::<f64>().map_err(|_| Error::Parse {
                line,
                kind: ParseErrorKind::MalformedLine,
            })?,
        };
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::Parse {
                line,
                kind: ParseErrorKind::NonPositiveWeight(weight),
            });
        }
        let sign = match s_tok {
            "+1" => Sign::Positive,
            "-1" => Sign::Negative,
            other => {
                return Err(Error::Parse {
                    line,
                    kind: ParseErrorKind::BadSign(other.to_string()),
                })
            }
        };
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if edges.iter().any(|(e, _)| e.u == a && e.v == b) {
            return Err(Error::Parse {
                line,
                kind: ParseErrorKind::DuplicateEdge(a, b),
            });
        }
        edges.push((
            Edge {
                u: a,
                v: b,
                weight,
                sign,
            },
            line,
        ));
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        kind: ParseErrorKind::InvalidHeader,
    })?;
    SignedGraph::new(n, edges.into_iter().map(|(e, _)| e).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_example() -> SignedGraph {
        // positive edges (0,1), (0,2); negative edge (1,2)
        SignedGraph::from_list(3, &[(0, 1, 1.0, 1), (0, 2, 1.0, 1), (1, 2, 1.0, -1)]).unwrap()
    }

    #[test]
    fn parse_triangle_with_one_negative_edge() {
        let g = parse_edge_list("3\n0 1 1 +1\n1 2 1 -1\n0 2 1 +1").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.find_edge(1, 2).unwrap().sign, Sign::Negative);
        assert_eq!(g.find_edge(2, 0).unwrap().sign, Sign::Positive);
    }

    #[test]
    fn parse_single_vertex() {
        let g = parse_edge_list("1\n").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
        assert!(g.is_positive_connected());
    }

    #[test]
    fn parse_self_loop_reports_line() {
        let err = parse_edge_list("2\n0 0 1 +1").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                kind: ParseErrorKind::SelfLoop(0)
            }
        );
    }

    #[test]
    fn parse_rejects_bad_sign_weight_dup_and_range() {
        assert!(matches!(
            parse_edge_list("2\n0 1 1 +2"),
            Err(Error::Parse {
                line: 2,
                kind: ParseErrorKind::BadSign(_)
            })
        ));
        assert!(matches!(
            parse_edge_list("2\n0 1 -1 +1"),
            Err(Error::Parse {
                line: 2,
                kind: ParseErrorKind::NonPositiveWeight(_)
            })
        ));
        assert!(matches!(
            parse_edge_list("2\n0 1 1 +1\n1 0 1 -1"),
            Err(Error::Parse {
                line: 3,
                kind: ParseErrorKind::DuplicateEdge(0, 1)
            })
        ));
        assert!(matches!(
            parse_edge_list("2\n0 5 1 +1"),
            Err(Error::Parse {
                line: 2,
                kind: ParseErrorKind::VertexOutOfRange(5, 2)
            })
        ));
    }

    #[test]
    fn parse_default_weight_and_comments() {
        let g = parse_edge_list("# header comment\n3\n0 1 +1 # inline\n\n1 2 -1\n").unwrap();
        assert_eq!(g.find_edge(0, 1).unwrap().weight, 1.0);
        assert_eq!(g.find_edge(1, 2).unwrap().sign, Sign::Negative);
    }

    #[test]
    fn degrees_of_paper_triangle() {
        let (dp, dm) = triangle_example().degrees();
        assert_eq!(dp, vec![2.0, 1.0, 1.0]);
        assert_eq!(dm, vec![0.0, 1.0, 1.0]);
    }

    #[test]
    fn degrees_edge_cases() {
        let empty = SignedGraph::from_list(3, &[]).unwrap();
        assert_eq!(empty.degrees(), (vec![0.0; 3], vec![0.0; 3]));

        let mut k4 = Vec::new();
        for u in 0..4 {
            for v in (u + 1)..4 {
                k4.push((u, v, 1.0, 1));
            }
        }
        let g = SignedGraph::from_list(4, &k4).unwrap();
        let (dp, dm) = g.degrees();
        assert_eq!(dp, vec![3.0; 4]);
        assert_eq!(dm, vec![0.0; 4]);
    }

    #[test]
    fn degree_sums_match_edge_weights() {
        let g = triangle_example();
        let (dp, dm) = g.degrees();
        let wp: f64 = g
            .edges()
            .iter()
            .filter(|e| e.sign.is_positive())
            .map(|e| e.weight)
            .sum();
        let wm: f64 = g
            .edges()
            .iter()
            .filter(|e| !e.sign.is_positive())
            .map(|e| e.weight)
            .sum();
        assert_eq!(dp.iter().sum::<f64>(), 2.0 * wp);
        assert_eq!(dm.iter().sum::<f64>(), 2.0 * wm);
    }

    #[test]
    fn connectivity_of_paper_triangle() {
        let g = triangle_example();
        assert!(g.is_positive_connected());
        assert!(!g.is_negative_connected()); // vertex 0 isolated in the negative subgraph
    }

    #[test]
    fn k5_cycle_plus_pentagram_is_connected_in_both_signs() {
        // positive 5-cycle, negative pentagram
        let mut list = Vec::new();
        for i in 0..5 {
            list.push((i, (i + 1) % 5, 1.0, 1));
            list.push((i, (i + 2) % 5, 1.0, -1));
        }
        let g = SignedGraph::from_list(5, &list).unwrap();
        assert!(g.is_positive_connected());
        assert!(g.is_negative_connected());
    }

    #[test]
    fn spanning_tree_is_deterministic_bfs() {
        let g = triangle_example();
        assert_eq!(
            g.spanning_tree(SubgraphFilter::Underlying).unwrap(),
            vec![(0, 1), (0, 2)]
        );

        let path = SignedGraph::from_list(3, &[(0, 1, 1.0, 1), (1, 2, 1.0, 1)]).unwrap();
        assert_eq!(
            path.spanning_tree(SubgraphFilter::Underlying).unwrap(),
            vec![(0, 1), (1, 2)]
        );
    }

    #[test]
    fn spanning_tree_errors_on_disconnected_filter() {
        let g = triangle_example();
        assert_eq!(
            g.spanning_tree(SubgraphFilter::Negative).unwrap_err(),
            Error::Disconnected("negative")
        );
    }

    #[test]
    fn switching_keeps_tree_already_positive() {
        // paper triangle with tree on the two positive edges
        let g = triangle_example();
        let res = g.switch_to_tree_positive(&[(0, 1), (0, 2)], 0).unwrap();
        assert_eq!(res.switch_fn, vec![Sign::Positive; 3]);
        assert_eq!(res.graph, g);
    }

    #[test]
    fn switching_all_negative_path() {
        let g = SignedGraph::from_list(3, &[(0, 1, 1.0, -1), (1, 2, 1.0, -1)]).unwrap();
        let res = g.switch_to_tree_positive(&[(0, 1), (1, 2)], 0).unwrap();
        assert_eq!(
            res.switch_fn,
            vec![Sign::Positive, Sign::Negative, Sign::Positive]
        );
        assert!(res.graph.edges().iter().all(|e| e.sign.is_positive()));
    }

    #[test]
    fn switching_all_negative_triangle_preserves_cycle_sign() {
        let g = SignedGraph::from_list(3, &[(0, 1, 1.0, -1), (0, 2, 1.0, -1), (1, 2, 1.0, -1)])
            .unwrap();
        let res = g.switch_to_tree_positive(&[(0, 1), (0, 2)], 0).unwrap();
        for &(u, v) in &[(0usize, 1usize), (0, 2)] {
            assert!(res.graph.find_edge(u, v).unwrap().sign.is_positive());
        }
        // cycle sign product was -1 and must stay -1, so the non-tree edge stays negative
        assert_eq!(res.graph.find_edge(1, 2).unwrap().sign, Sign::Negative);
    }

    #[test]
    fn switching_rejects_bad_trees() {
        let g = triangle_example();
        assert!(g.switch_to_tree_positive(&[(0, 1)], 0).is_err());
        let sq = SignedGraph::from_list(
            4,
            &[
                (0, 1, 1.0, 1),
                (1, 2, 1.0, 1),
                (2, 3, 1.0, 1),
                (0, 3, 1.0, 1),
            ],
        )
        .unwrap();
        // 4 vertices need 3 tree edges; passing a triangle plus isolated vertex must fail
        assert!(sq
            .switch_to_tree_positive(&[(0, 1), (1, 2), (0, 2)], 0)
            .is_err());
    }

    #[test]
    fn balance_of_triangle_with_one_negative_edge() {
        let verdict = triangle_example().balance_check().unwrap();
        assert!(!verdict.balanced);
        let cycle = verdict.witness_cycle.unwrap();
        let g = triangle_example();
        let product: f64 = cycle
            .iter()
            .map(|&(u, v)| g.find_edge(u, v).unwrap().sign.value())
            .product();
        assert_eq!(product, -1.0);
    }

    #[test]
    fn balance_of_all_positive_graph() {
        let g = SignedGraph::from_list(3, &[(0, 1, 1.0, 1), (1, 2, 1.0, 1)]).unwrap();
        let verdict = g.balance_check().unwrap();
        assert!(verdict.balanced);
        assert_eq!(verdict.bipartition.unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn balance_of_four_cycle_with_two_negative_edges() {
        let g = SignedGraph::from_list(
            4,
            &[
                (0, 1, 1.0, 1),
                (1, 2, 1.0, -1),
                (2, 3, 1.0, 1),
                (0, 3, 1.0, -1),
            ],
        )
        .unwrap();
        let verdict = g.balance_check().unwrap();
        assert!(verdict.balanced);
        let side = verdict.bipartition.unwrap();
        // every edge inside a side is positive, every crossing edge negative
        for e in g.edges() {
            let same = side.contains(&e.u) == side.contains(&e.v);
            assert_eq!(same, e.sign.is_positive());
        }
    }

    #[test]
    fn balance_requires_connected_graph() {
        let g = SignedGraph::from_list(3, &[(0, 1, 1.0, 1)]).unwrap();
        assert_eq!(
            g.balance_check().unwrap_err(),
            Error::Disconnected("underlying")
        );
    }

    #[test]
    fn hop_diameter_examples() {
        let c4 = SignedGraph::from_list(
            4,
            &[
                (0, 1, 1.0, 1),
                (1, 2, 1.0, 1),
                (2, 3, 1.0, 1),
                (0, 3, 1.0, 1),
            ],
        )
        .unwrap();
        assert_eq!(c4.hop_diameter().unwrap(), 2);

        let mut k4 = Vec::new();
        for u in 0..4 {
            for v in (u + 1)..4 {
                k4.push((u, v, 1.0, 1));
            }
        }
        assert_eq!(
            SignedGraph::from_list(4, &k4)
                .unwrap()
                .hop_diameter()
                .unwrap(),
            1
        );
    }

    #[test]
    fn blocks_separate_triangles_joined_at_a_cut_vertex() {
        // two triangles sharing vertex 0
        let g = SignedGraph::from_list(
            5,
            &[
                (0, 1, 1.0, 1),
                (0, 2, 1.0, 1),
                (1, 2, 1.0, -1),
                (0, 3, 1.0, 1),
                (0, 4, 1.0, 1),
                (3, 4, 1.0, -1),
            ],
        )
        .unwrap();
        let blocks = g.blocks();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.len() == 3));
    }

    #[test]
    fn blocks_mark_bridges_as_singletons() {
        // triangle 0-1-2 with a pendant path 2-3-4
        let g = SignedGraph::from_list(
            5,
            &[
                (0, 1, 1.0, 1),
                (0, 2, 1.0, 1),
                (1, 2, 1.0, 1),
                (2, 3, 1.0, 1),
                (3, 4, 1.0, 1),
            ],
        )
        .unwrap();
        let blocks = g.blocks();
        let sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
        assert_eq!(blocks.len(), 3);
        assert!(sizes.contains(&3) && sizes.iter().filter(|&&s| s == 1).count() == 2);
    }
}

//! Seeded random signed-graph corpora for the identity and inequality
//! suites.

use crate::graph::{Edge, Sign, SignedGraph};
use crate::repelling::{consensus_index, repelling_laplacian, ConsensusValue};
use crate::spectral::lambda2;
use crate::tol;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default seed of the randomized suites (overridable through the CLI).
pub const DEFAULT_SEED: u64 = 7;

/// One corpus instance: a positive-connected signed graph, a valid repelling
/// strength strictly below the consensus index, and the bisected index.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: SignedGraph,
    pub eps: f64,
    pub eps0: ConsensusValue,
}

fn random_connected_signed_graph(rng: &mut ChaCha8Rng) -> SignedGraph {
    let n = rng.random_range(3..=12usize);
    // random spanning tree plus sparse extras keeps degrees moderate
    let extra_p = (2.5 / n as f64).min(0.15);
    loop {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for v in 1..n {
            let u = rng.random_range(0..v);
            pairs.push((u, v));
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if !pairs.contains(&(u, v)) && rng.random::<f64>() < extra_p {
                    pairs.push((u, v));
                }
            }
        }
        let edges: Vec<Edge> = pairs
            .into_iter()
            .map(|(u, v)| Edge {
                u,
                v,
                weight: rng.random_range(0.5..2.0),
                sign: if rng.random::<f64>() < 0.3 {
                    Sign::Negative
                } else {
                    Sign::Positive
                },
            })
            .collect();
        let g = SignedGraph::new(n, edges).expect("generated edges are valid");
        if g.is_positive_connected() {
            return g;
        }
    }
}

/// Generates `count` positive-connected instances with weights in [0.5, 2),
/// random signatures, and `eps` drawn uniformly in `(0, 0.9 eps0)` (uniform
/// in `(0, 1)` when the signature has no negative edges). Every draw is
/// re-validated against the spectral gap before being emitted.
pub fn corpus(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let graph = random_connected_signed_graph(&mut rng);
        let index = consensus_index(&graph, tol::CONSENSUS_BISECT).expect("positive-connected");
        let mut eps = match index.value {
            ConsensusValue::Finite(e0) => rng.random_range(0.05..0.9) * e0,
            ConsensusValue::Infinite => rng.random_range(0.05..1.0),
        };
        // safety: the analysis domain requires a solidly positive gap
        let mut ok = false;
        for _ in 0..8 {
            if lambda2(&repelling_laplacian(&graph, eps)).expect("lambda2") > 1e-8 {
                ok = true;
                break;
            }
            eps *= 0.5;
        }
        if !ok {
            continue;
        }
        out.push(Instance {
            graph,
            eps,
            eps0: index.value,
        });
    }
    out
}

/// Generates instances satisfying the no-shared-cycle condition on negative
/// edges: a random positive-connected base, then negative chords admitted
/// only while no block holds two of them.
pub fn no_negative_cycle_corpus(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(3..=10usize);
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for v in 1..n {
            let u = rng.random_range(0..v);
            pairs.push((u, v));
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if !pairs.contains(&(u, v)) && rng.random::<f64>() < 0.1 {
                    pairs.push((u, v));
                }
            }
        }
        let mut edges: Vec<Edge> = pairs
            .into_iter()
            .map(|(u, v)| Edge {
                u,
                v,
                weight: rng.random_range(0.5..2.0),
                sign: Sign::Positive,
            })
            .collect();
        // candidate negative chords in random order
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if !edges.iter().any(|e| (e.u, e.v) == (u, v)) {
                    candidates.push((u, v));
                }
            }
        }
        for i in (1..candidates.len()).rev() {
            let j = rng.random_range(0..=i);
            candidates.swap(i, j);
        }
        let want = rng.random_range(1..=3usize);
        let mut placed = 0;
        for (u, v) in candidates {
            if placed == want {
                break;
            }
            let mut trial = edges.clone();
            trial.push(Edge {
                u,
                v,
                weight: rng.random_range(0.5..2.0),
                sign: Sign::Negative,
            });
            let g = SignedGraph::new(n, trial.clone()).expect("valid edges");
            let negatives: Vec<usize> = (0..g.edge_count())
                .filter(|&i| g.edges()[i].sign == Sign::Negative)
                .collect();
            let shares_cycle = g
                .blocks()
                .iter()
                .any(|b| b.iter().filter(|i| negatives.contains(i)).count() >= 2);
            if !shares_cycle {
                edges = trial;
                placed += 1;
            }
        }
        if placed == 0 {
            continue;
        }
        let graph = SignedGraph::new(n, edges).expect("valid edges");
        debug_assert!(graph.is_positive_connected());
        let index = consensus_index(&graph, tol::CONSENSUS_BISECT).expect("positive-connected");
        let ConsensusValue::Finite(e0) = index.value else {
            continue;
        };
        out.push(Instance {
            graph,
            eps: 0.5 * e0,
            eps0: index.value,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_valid() {
        let a = corpus(11, 20);
        let b = corpus(11, 20);
        assert_eq!(a.len(), 20);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.graph, y.graph);
            assert_eq!(x.eps, y.eps);
        }
        for inst in &a {
            assert!(inst.graph.is_positive_connected());
            assert!(inst.graph.n() >= 3 && inst.graph.n() <= 12);
            assert!(lambda2(&repelling_laplacian(&inst.graph, inst.eps)).unwrap() > 1e-8);
            for e in inst.graph.edges() {
                assert!((0.5..2.0).contains(&e.weight));
            }
        }
    }

    #[test]
    fn no_negative_cycle_corpus_satisfies_the_block_condition() {
        for inst in no_negative_cycle_corpus(3, 15) {
            let g = &inst.graph;
            assert!(g.has_negative_edges());
            let negatives: std::collections::HashSet<usize> = (0..g.edge_count())
                .filter(|&i| g.edges()[i].sign == Sign::Negative)
                .collect();
            for block in g.blocks() {
                assert!(block.iter().filter(|i| negatives.contains(i)).count() <= 1);
            }
        }
    }
}

//! Data-parallel evaluation helpers and batch entry points.
//!
//! Sweeps over an epsilon grid, per-edge curvature assembly, and corpus runs
//! are embarrassingly parallel: every item is a pure function of immutable
//! inputs. With the default `parallel` feature these fan out on rayon; the
//! `*_seq` variants always run sequentially and are what the feature falls
//! back to. Outputs are collected in input order either way, so results are
//! identical across both paths.

use crate::curvature::{self, CurvatureReport};
use crate::error::Result;
use crate::graph::SignedGraph;
use crate::repelling::{self, RepellingAnalysis};
use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order. Parallel when the `parallel`
/// feature is enabled.
pub fn map_ordered<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sequential twin of [`map_ordered`], always single-threaded.
pub fn map_ordered_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// One row of an epsilon sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub epsilon: f64,
    pub lambda2: f64,
    pub w_resistance: f64,
    pub tau_min: f64,
    pub tau_max: f64,
    pub theta_min: f64,
    pub theta_max: f64,
}

fn sweep_point(g: &SignedGraph, eps: f64) -> Result<SweepRow> {
    let analysis = repelling::repelling_cost_matrix(g, eps)?;
    let lambda2 = crate::spectral::lambda2(&analysis.l_eps)?;
    let node = curvature::node_curvature(&analysis)?;
    let mut theta_min = f64::INFINITY;
    let mut theta_max = f64::NEG_INFINITY;
    for e in g.edges() {
        let th = curvature::edge_curvature(&analysis, &node, e.u, e.v)?;
        theta_min = theta_min.min(th);
        theta_max = theta_max.max(th);
    }
    let (tau_min, tau_max) = node
        .tau
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &t| {
            (lo.min(t), hi.max(t))
        });
    Ok(SweepRow {
        epsilon: eps,
        lambda2,
        w_resistance: analysis.w_eps,
        tau_min,
        tau_max,
        theta_min,
        theta_max,
    })
}

/// Evaluates the sweep rows for an ascending epsilon grid, one analysis per
/// grid point, in grid order.
pub fn sweep(g: &SignedGraph, grid: &[f64]) -> Result<Vec<SweepRow>> {
    map_ordered(grid, |&eps| sweep_point(g, eps))
        .into_iter()
        .collect()
}

/// Sequential twin of [`sweep`].
pub fn sweep_seq(g: &SignedGraph, grid: &[f64]) -> Result<Vec<SweepRow>> {
    map_ordered_seq(grid, |&eps| sweep_point(g, eps))
        .into_iter()
        .collect()
}

/// Analyses for a batch of `(graph, epsilon)` instances, in input order.
pub fn analyze_batch(instances: &[(SignedGraph, f64)]) -> Vec<Result<RepellingAnalysis>> {
    map_ordered(instances, |(g, eps)| {
        repelling::repelling_cost_matrix(g, *eps)
    })
}

/// Sequential twin of [`analyze_batch`].
pub fn analyze_batch_seq(instances: &[(SignedGraph, f64)]) -> Vec<Result<RepellingAnalysis>> {
    map_ordered_seq(instances, |(g, eps)| {
        repelling::repelling_cost_matrix(g, *eps)
    })
}

/// Full curvature reports for a batch of instances, in input order.
pub fn curvature_batch(instances: &[(SignedGraph, f64)]) -> Vec<Result<CurvatureReport>> {
    map_ordered(instances, |(g, eps)| {
        let analysis = repelling::repelling_cost_matrix(g, *eps)?;
        curvature::curvature_report(&analysis)
    })
}

/// Sequential twin of [`curvature_batch`].
pub fn curvature_batch_seq(instances: &[(SignedGraph, f64)]) -> Vec<Result<CurvatureReport>> {
    map_ordered_seq(instances, |(g, eps)| {
        let analysis = repelling::repelling_cost_matrix(g, *eps)?;
        curvature::curvature_report(&analysis)
    })
}

//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Three criteria are implemented exactly as published and are expected to
//! fail on any correct implementation; each failing assertion points at the
//! heat-normalized companion criterion that passes and at the README's
//! "Known discrepancies" section. Everything else must pass.
//!
//! Run with `cargo test -p sgcurv --test acceptance -- --nocapture` to see
//! every line; the seed comes from `SGCURV_SEED` (default 7).

use sgcurv::verify::{self, CriterionReport, Prepared};
use std::sync::OnceLock;

fn seed() -> u64 {
    std::env::var("SGCURV_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(verify::corpus::DEFAULT_SEED)
}

static CORPUS: OnceLock<Vec<Prepared>> = OnceLock::new();

fn corpus() -> &'static [Prepared] {
    CORPUS.get_or_init(|| verify::prepare_corpus(seed(), 500))
}

fn report(r: &CriterionReport) -> bool {
    let verdict = if r.passed() { "PASS" } else { "FAIL" };
    println!(
        "[acceptance] {verdict} {} — {} ({} ms)",
        r.id, r.label, r.millis
    );
    for line in r.lines.iter().filter(|l| l.gating && !l.pass) {
        println!(
            "[acceptance]   failed: {} (expected {}, computed {})",
            line.name, line.expected, line.computed
        );
    }
    r.passed()
}

#[test]
fn criterion_1_worked_example() {
    assert!(report(&verify::criterion_1_example().unwrap()));
}

#[test]
fn criterion_2_three_cycle_table() {
    assert!(report(&verify::criterion_2_c3().unwrap()));
}

#[test]
fn criterion_3_four_cycle_table() {
    assert!(report(&verify::criterion_3_c4().unwrap()));
}

#[test]
fn criterion_4_k4_signature_suite() {
    assert!(report(&verify::criterion_4_k4().unwrap()));
}

#[test]
fn criterion_5_identity_suite() {
    assert!(report(&verify::criterion_5_identities(corpus())));
}

#[test]
fn criterion_6a_cost_monotonicity() {
    assert!(report(&verify::criterion_6a_monotonicity(corpus())));
}

#[test]
fn criterion_6b_sqrt_cost_metric() {
    assert!(report(&verify::criterion_6b_sqrt_metric(corpus())));
}

#[test]
fn criterion_6c_lazy_walk_dominates_theta_as_stated() {
    let r = verify::criterion_6c_transport_comparison_as_stated(corpus());
    let passed = report(&r);
    assert!(
        passed,
        "implemented as published and it fails: the lazy-walk curvature does not dominate the \
         unnormalized edge curvature (counterexample above). The heat-normalized companion \
         criterion passes; see README 'Known discrepancies'."
    );
}

#[test]
fn criterion_6c_lazy_walk_dominates_theta_heat_normalized() {
    assert!(report(&verify::criterion_6c_transport_comparison_heat(
        corpus()
    )));
}

#[test]
fn criterion_6d_spectral_gap_bounds() {
    assert!(report(&verify::criterion_6d_spectral_bounds(corpus())));
}

#[test]
fn criterion_6e_edge_lichnerowicz_as_stated() {
    let r = verify::criterion_6e_edge_lichnerowicz_as_stated(corpus());
    let passed = report(&r);
    assert!(
        passed,
        "implemented as published and it fails: positive unnormalized edge curvature does not \
         lower-bound the underlying spectral gap (counterexample above). The heat-normalized \
         companion criterion passes; see README 'Known discrepancies'."
    );
}

#[test]
fn criterion_6e_edge_lichnerowicz_heat_normalized() {
    assert!(report(&verify::criterion_6e_edge_lichnerowicz_heat(
        corpus()
    )));
}

#[test]
fn criterion_6f_lazy_walk_mixing() {
    assert!(report(&verify::criterion_6f_mixing(corpus(), seed())));
}

#[test]
fn criterion_7_heat_limit_as_stated() {
    let r = verify::criterion_7_heat_as_stated(corpus(), seed());
    let passed = report(&r);
    assert!(
        passed,
        "implemented as published and it fails: the heat-semigroup contraction rate converges \
         to the heat-normalized curvature, not to theta (counterexample above). The \
         heat-normalized companion criterion passes; see README 'Known discrepancies'."
    );
}

#[test]
fn criterion_7_heat_limit_heat_normalized() {
    assert!(report(&verify::criterion_7_heat_normalized(
        corpus(),
        seed()
    )));
}

#[test]
fn criterion_8_transport_exactness() {
    assert!(report(&verify::criterion_8_ot_exactness(corpus(), seed())));
}

#[test]
fn criterion_9_consensus_upper_bound() {
    assert!(report(&verify::criterion_9_consensus_bound(seed())));
}

#[test]
fn k4_three_negative_path_case_reproduces_except_one_printed_entry() {
    // informational fixture: gated lines must pass, the discrepant entry is
    // reported without gating
    assert!(report(&verify::k4_path_informational().unwrap()));
}

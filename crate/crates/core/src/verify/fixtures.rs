//! Reference graphs and their published values, used by the reproduction
//! suite and the CLI `verify-paper` command.
//!
//! Vertex ids are 0-based in code; the published tables use 1-based labels,
//! so every fixture carries the label map `id -> id + 1` implicitly and the
//! expected values below are already translated.

use crate::graph::SignedGraph;

/// Expected per-vertex values keyed by 0-based id.
pub type VertexExpect = &'static [(usize, f64)];
/// Expected per-edge values keyed by 0-based endpoints.
pub type EdgeExpect = &'static [(usize, usize, f64)];

/// One epsilon row of a published table.
pub struct CurvatureRow {
    pub eps: f64,
    pub tau: VertexExpect,
    pub theta: EdgeExpect,
    /// Tolerance for `theta` entries printed as "approximately zero".
    pub near_zero_theta: &'static [(usize, usize)],
}

/// A fixture graph with its published threshold and table rows.
pub struct Fixture {
    pub tag: &'static str,
    pub label: &'static str,
    pub graph: fn() -> SignedGraph,
    pub eps0: f64,
    pub rows: &'static [CurvatureRow],
    pub lambda: EdgeExpect,
    pub lambda_eps: f64,
}

/// Triangle of the worked pseudoinverse example: positive edges (1,2), (1,3),
/// negative edge (2,3), `eps = 1/4`.
pub fn example_triangle() -> SignedGraph {
    SignedGraph::from_list(3, &[(0, 1, 1.0, 1), (0, 2, 1.0, 1), (1, 2, 1.0, -1)]).unwrap()
}

/// Printed pseudoinverse of the quarter-repelling Laplacian (3 decimals).
pub const EXAMPLE_PINV: [[f64; 3]; 3] = [
    [0.222, -0.111, -0.111],
    [-0.111, 1.055, -0.944],
    [-0.111, -0.944, 1.055],
];

/// Signed 3-cycle: negative edge (1,3).
pub fn c3() -> SignedGraph {
    SignedGraph::from_list(3, &[(0, 1, 1.0, 1), (1, 2, 1.0, 1), (0, 2, 1.0, -1)]).unwrap()
}

/// Signed 4-cycle: negative edge (1,4).
pub fn c4() -> SignedGraph {
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

fn k4(negs: &[(usize, usize)]) -> SignedGraph {
    let mut list = Vec::new();
    for u in 0..4 {
        for v in (u + 1)..4 {
            let s = if negs.contains(&(u, v)) { -1 } else { 1 };
            list.push((u, v, 1.0, s));
        }
    }
    SignedGraph::from_list(4, &list).unwrap()
}

/// K4 with the single negative edge (1,4).
pub fn k4_one_negative() -> SignedGraph {
    k4(&[(0, 3)])
}

/// K4 with the opposite negative pair (1,3), (2,4).
pub fn k4_opposite_pair() -> SignedGraph {
    k4(&[(0, 2), (1, 3)])
}

/// K4 with the adjacent negative pair (1,3), (1,4).
pub fn k4_adjacent_pair() -> SignedGraph {
    k4(&[(0, 2), (0, 3)])
}

/// K4 "three negative edges at a vertex" case. The published values only
/// reproduce with the positive star at vertex 1 and the negative triangle on
/// {2,3,4}, so that is the fixture.
pub fn k4_negative_triangle() -> SignedGraph {
    k4(&[(1, 2), (1, 3), (2, 3)])
}

/// K4 three-negative "path" case, published with sign labels that only
/// reproduce under the complement signature (negative edges (1,3), (1,4),
/// (2,3)). One printed entry on edge (1,3) does not reproduce at all; this
/// fixture is reported informationally and excluded from the gate.
pub fn k4_negative_path() -> SignedGraph {
    k4(&[(0, 2), (0, 3), (1, 2)])
}

pub const C3_FIXTURE: Fixture = Fixture {
    tag: "c3",
    label: "signed 3-cycle, negative edge (1,3)",
    graph: c3,
    eps0: 0.5,
    rows: &[
        CurvatureRow {
            eps: 0.2,
            tau: &[(1, -0.5625), (0, 1.125), (2, 1.125)],
            theta: &[(0, 1, 0.844), (1, 2, 0.844), (0, 2, 3.7501)],
            near_zero_theta: &[],
        },
        CurvatureRow {
            eps: 0.3,
            tau: &[(1, -0.7347), (0, 0.8571), (2, 0.8571)],
            theta: &[(0, 1, 0.1399), (1, 2, 0.1399), (0, 2, 3.2857)],
            near_zero_theta: &[],
        },
        CurvatureRow {
            eps: 0.4999,
            tau: &[(1, -0.0012), (0, 0.0006), (2, 0.0006)],
            theta: &[(0, 2, 2.9998)],
            near_zero_theta: &[(0, 1), (1, 2)],
        },
    ],
    lambda: &[(0, 1, 0.0), (1, 2, 0.0), (0, 2, 2.0)],
    lambda_eps: 0.2,
};

pub const C4_FIXTURE: Fixture = Fixture {
    tag: "c4",
    label: "signed 4-cycle, negative edge (1,4)",
    graph: c4,
    eps0: 0.33329,
    rows: &[
        CurvatureRow {
            eps: 0.1,
            tau: &[(1, -0.2569), (2, -0.2569), (0, 1.156), (3, 1.156)],
            theta: &[
                (0, 1, 0.1985),
                (2, 3, 0.1985),
                (1, 2, -0.8991),
                (0, 3, 3.2789),
            ],
            near_zero_theta: &[],
        },
        CurvatureRow {
            eps: 0.2,
            tau: &[(1, -0.4211), (2, -0.4211), (0, 0.8421), (3, 0.8421)],
            theta: &[
                (0, 1, -1.4387),
                (2, 3, -1.4387),
                (1, 2, -1.1229),
                (0, 3, 2.8491),
            ],
            near_zero_theta: &[],
        },
        CurvatureRow {
            eps: 0.3332,
            tau: &[(1, -0.0012), (2, -0.0012), (0, 0.0012), (3, 0.0012)],
            theta: &[(0, 1, -3.9964), (2, 3, -3.9964), (0, 3, 2.6664)],
            near_zero_theta: &[(1, 2)],
        },
    ],
    lambda: &[(1, 2, 0.0), (0, 3, 2.0)],
    lambda_eps: 0.1,
};

pub const K4_ONE_NEGATIVE_FIXTURE: Fixture = Fixture {
    tag: "k4-1neg",
    label: "K4, one negative edge (1,4)",
    graph: k4_one_negative,
    eps0: 0.9999,
    rows: &[CurvatureRow {
        eps: 0.5,
        tau: &[(0, 2.4242), (3, 2.4242), (1, -0.4848), (2, -0.4848)],
        theta: &[
            (0, 1, 4.4329),
            (2, 3, 4.4329),
            (1, 3, 4.4329),
            (0, 2, 4.4329),
            (1, 2, -3.8784),
            (0, 3, 7.8484),
        ],
        near_zero_theta: &[],
    }],
    lambda: &[
        (0, 3, 2.0),
        (0, 1, 0.0),
        (0, 2, 0.0),
        (1, 2, 0.0),
        (1, 3, 0.0),
        (2, 3, 0.0),
    ],
    lambda_eps: 0.5,
};

pub const K4_OPPOSITE_FIXTURE: Fixture = Fixture {
    tag: "k4-2neg-opposite",
    label: "K4, opposite negative edges (1,3), (2,4)",
    graph: k4_opposite_pair,
    eps0: 1.0,
    rows: &[CurvatureRow {
        eps: 0.5,
        tau: &[(0, 0.8889), (1, 0.8889), (2, 0.8889), (3, 0.8889)],
        theta: &[
            (0, 1, 2.8445),
            (1, 2, 2.8445),
            (2, 3, 2.8445),
            (0, 3, 2.8445),
            (0, 2, 4.7778),
            (1, 3, 4.7778),
        ],
        near_zero_theta: &[],
    }],
    lambda: &[
        (0, 2, 2.0),
        (1, 3, 2.0),
        (0, 1, 0.0),
        (1, 2, 0.0),
        (2, 3, 0.0),
        (0, 3, 0.0),
    ],
    lambda_eps: 0.5,
};

pub const K4_ADJACENT_FIXTURE: Fixture = Fixture {
    tag: "k4-2neg-adjacent",
    label: "K4, adjacent negative edges (1,3), (1,4)",
    graph: k4_adjacent_pair,
    eps0: 0.333,
    rows: &[CurvatureRow {
        eps: 0.1,
        tau: &[(0, 1.7436), (1, -1.1454), (2, 1.1819), (3, 1.1819)],
        theta: &[
            (0, 2, 5.4994),
            (0, 3, 5.4994),
            (1, 2, -0.7033),
            (1, 3, -0.7033),
            (0, 1, 1.8578),
            (2, 3, 1.6693),
        ],
        near_zero_theta: &[],
    }],
    lambda: &[
        (0, 2, 2.7021),
        (0, 3, 2.7021),
        (1, 2, -0.7286),
        (1, 3, -0.7286),
        (0, 1, 0.843),
        (2, 3, -4.7139),
    ],
    lambda_eps: 0.1,
};

pub const K4_TRIANGLE_FIXTURE: Fixture = Fixture {
    tag: "k4-3neg-star",
    label: "K4, three negative edges off vertex 1 (negative triangle on {2,3,4})",
    graph: k4_negative_triangle,
    eps0: 0.3333,
    rows: &[CurvatureRow {
        eps: 0.1,
        tau: &[(0, -1.4979), (1, 1.037), (2, 1.037), (3, 1.037)],
        theta: &[
            (0, 1, -0.717),
            (0, 2, -0.717),
            (0, 3, -0.717),
            (1, 2, 3.6518),
            (1, 3, 3.6518),
            (2, 3, 3.6518),
        ],
        near_zero_theta: &[],
    }],
    lambda: &[
        (0, 1, 0.0),
        (0, 2, 0.0),
        (0, 3, 0.0),
        (1, 2, 2.0),
        (1, 3, 2.0),
        (2, 3, 2.0),
    ],
    lambda_eps: 0.1,
};

/// The gated reproduction set: the cycle tables and the four fully
/// reproducible K4 signature cases.
pub const GATED_FIXTURES: [&Fixture; 6] = [
    &C3_FIXTURE,
    &C4_FIXTURE,
    &K4_ONE_NEGATIVE_FIXTURE,
    &K4_OPPOSITE_FIXTURE,
    &K4_ADJACENT_FIXTURE,
    &K4_TRIANGLE_FIXTURE,
];

/// Published values of the three-negative "path" case that do reproduce
/// (everything except edge (1,3), whose printed Lambda/theta disagree with
/// the defining formula under every signature).
pub const K4_PATH_FIXTURE: Fixture = Fixture {
    tag: "k4-3neg-path",
    label: "K4, three negative edges (1,3), (1,4), (2,3) [informational]",
    graph: k4_negative_path,
    eps0: 0.1715,
    rows: &[CurvatureRow {
        eps: 0.1,
        tau: &[(0, 0.8344), (2, 0.8344), (1, -0.3457), (3, -0.3457)],
        theta: &[
            (0, 1, -6.0546),
            (2, 3, -6.0546),
            (0, 3, 3.16),
            (1, 2, 3.16),
            (1, 3, -0.4258),
        ],
        near_zero_theta: &[],
    }],
    lambda: &[
        (0, 1, -6.1347),
        (2, 3, -6.1347),
        (0, 3, 2.6556),
        (1, 2, 2.6556),
        (1, 3, 0.3492),
    ],
    lambda_eps: 0.1,
};

/// Printed value on the irreproducible edge of the path case, kept for the
/// informational report: `theta(1,3) = 4.8712` vs the formula's `4.4335`.
pub const K4_PATH_DISCREPANT_EDGE: (usize, usize, f64) = (0, 2, 4.8712);

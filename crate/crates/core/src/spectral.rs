//! Dense real symmetric linear algebra.
//!
//! Everything here is sized for the dense, desk-scale matrices this library
//! works with: a cyclic Jacobi eigensolver, LU solves with partial pivoting,
//! a two-route Moore-Penrose pseudoinverse for matrices whose null space is
//! the constants, and the eigendecomposition-based matrix exponential.

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};
use crate::tol;
use ndarray::{Array1, Array2};

/// Dense real symmetric matrix.
///
/// Construction validates squareness, finiteness, and per-entry symmetry to
/// within [`tol::SYMMETRY`].
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    data: Array2<f64>,
}

impl SymMatrix {
    pub fn new(data: Array2<f64>) -> Result<Self> {
        let (rows, cols) = data.dim();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        for ((i, j), &x) in data.indexed_iter() {
            if !x.is_finite() {
                return Err(Error::NotFinite { i, j });
            }
            if j > i {
                let diff = (x - data[(j, i)]).abs();
                if diff > tol::SYMMETRY {
                    return Err(Error::NotSymmetric { i, j, diff });
                }
            }
        }
        Ok(SymMatrix { data })
    }

    /// Wraps `(a + a^T) / 2`; for products that are symmetric up to rounding.
    pub fn symmetrized(a: Array2<f64>) -> Result<Self> {
        let s = (&a + &a.t()) * 0.5;
        SymMatrix::new(s)
    }

    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            data: Array2::zeros((n, n)),
        }
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix {
            data: Array2::eye(n),
        }
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let mut data = Array2::zeros((n, n));
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                data[(i, j)] = x;
            }
        }
        SymMatrix::new(data)
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[(i, j)]
    }

    pub fn array(&self) -> &Array2<f64> {
        &self.data
    }

    pub fn into_array(self) -> Array2<f64> {
        self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &x| m.max(x.abs()))
    }

    pub fn mul_vec(&self, v: &Array1<f64>) -> Array1<f64> {
        self.data.dot(v)
    }

    pub fn quad_form(&self, v: &Array1<f64>) -> f64 {
        v.dot(&self.data.dot(v))
    }

    /// `max_i |(M 1)_i|`, the residual of the constants as a null vector.
    pub fn ones_residual(&self) -> f64 {
        let ones = Array1::from_elem(self.dim(), 1.0);
        self.mul_vec(&ones)
            .iter()
            .fold(0.0, |m: f64, &x| m.max(x.abs()))
    }
}

impl std::ops::Index<(usize, usize)> for SymMatrix {
    type Output = f64;
    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.data[idx]
    }
}

/// Which Laplacian of a signed graph to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplacianKind {
    Positive,
    Negative,
    Underlying,
}

/// Sign-filtered graph Laplacian: diagonal holds the filtered degree, the
/// off-diagonal is `-w_ij` on matching edges. Row sums are zero.
pub fn laplacian(g: &SignedGraph, kind: LaplacianKind) -> SymMatrix {
    let n = g.n();
    let mut data = Array2::zeros((n, n));
    for e in g.edges() {
        let keep = match kind {
            LaplacianKind::Positive => e.sign == Sign::Positive,
            LaplacianKind::Negative => e.sign == Sign::Negative,
            LaplacianKind::Underlying => true,
        };
        if keep {
            data[(e.u, e.u)] += e.weight;
            data[(e.v, e.v)] += e.weight;
            data[(e.u, e.v)] -= e.weight;
            data[(e.v, e.u)] -= e.weight;
        }
    }
    SymMatrix { data }
}

/// Eigendecomposition of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal columns, `eigenvectors.column(k)` pairs with `eigenvalues[k]`.
    pub eigenvectors: Array2<f64>,
    /// `max_k ||M v_k - lambda_k v_k||_inf` achieved by the returned pairs.
    pub residual: f64,
}

impl SpectralDecomposition {
    /// `U diag(f(lambda)) U^T`.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> Array2<f64> {
        let n = self.eigenvalues.len();
        let mut out = Array2::zeros((n, n));
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let fk = f(lam);
            if fk == 0.0 {
                continue;
            }
            let col = self.eigenvectors.column(k);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += fk * col[i] * col[j];
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> Array2<f64> {
        self.map_eigenvalues(|x| x)
    }
}

const JACOBI_SWEEP_CAP: usize = 100;

fn offdiag_norm(a: &Array2<f64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += a[(i, j)] * a[(i, j)];
        }
    }
    (2.0 * s).sqrt()
}

/// Cyclic Jacobi eigensolver, iterated to machine-precision off-diagonal norm
/// with a 100-sweep cap.
///
/// Eigenvalues are ascending. The sign of each eigenvector is fixed so that
/// its largest-magnitude component (ties broken by lowest index) is
/// nonnegative.
pub fn eigen_sym(m: &SymMatrix) -> Result<SpectralDecomposition> {
    let n = m.dim();
    let mut a = m.array().clone();
    let mut v: Array2<f64> = Array2::eye(n);
    if n > 1 {
        let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let target = 1e-15 * (1.0 + frob);
        let mut converged = false;
        for _sweep in 0..JACOBI_SWEEP_CAP {
            let off = offdiag_norm(&a);
            if off <= target {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in (p + 1)..n {
                    let apq = a[(p, q)];
                    if apq == 0.0 {
                        continue;
                    }
                    // skip rotations that cannot change anything at this scale
                    if apq.abs() <= f64::EPSILON * 1e-2 * (a[(p, p)].abs() + a[(q, q)].abs()) {
                        a[(p, q)] = 0.0;
                        a[(q, p)] = 0.0;
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                    let t = if theta.abs() > 1e150 {
                        0.5 / theta
                    } else {
                        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                    };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    let tau = s / (1.0 + c);
                    let app = a[(p, p)];
                    let aqq = a[(q, q)];
                    a[(p, p)] = app - t * apq;
                    a[(q, q)] = aqq + t * apq;
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    for r in 0..n {
                        if r != p && r != q {
                            let arp = a[(r, p)];
                            let arq = a[(r, q)];
                            a[(r, p)] = arp - s * (arq + tau * arp);
                            a[(p, r)] = a[(r, p)];
                            a[(r, q)] = arq + s * (arp - tau * arq);
                            a[(q, r)] = a[(r, q)];
                        }
                    }
                    for r in 0..n {
                        let vrp = v[(r, p)];
                        let vrq = v[(r, q)];
                        v[(r, p)] = vrp - s * (vrq + tau * vrp);
                        v[(r, q)] = vrq + s * (vrp - tau * vrq);
                    }
                }
            }
        }
        if !converged && offdiag_norm(&a) > target {
            return Err(Error::EigenNonConvergence {
                residual: offdiag_norm(&a),
            });
        }
    }

    // ascending sort, deterministic sign convention
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).unwrap());
    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Array2::zeros((n, n));
    for (k, &src) in order.iter().enumerate() {
        eigenvalues.push(a[(src, src)]);
        let mut best = 0usize;
        for r in 1..n {
            if v[(r, src)].abs() > v[(best, src)].abs() {
                best = r;
            }
        }
        let flip = if v[(best, src)] < 0.0 { -1.0 } else { 1.0 };
        for r in 0..n {
            eigenvectors[(r, k)] = flip * v[(r, src)];
        }
    }

    let mut residual: f64 = 0.0;
    for k in 0..n {
        let col = eigenvectors.column(k).to_owned();
        let mv = m.array().dot(&col);
        for r in 0..n {
            residual = residual.max((mv[r] - eigenvalues[k] * col[r]).abs());
        }
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        residual,
    })
}

/// Orthonormal basis of the complement of the constants (columns of an
/// `n x (n-1)` matrix).
pub fn ones_complement_basis(n: usize) -> Array2<f64> {
    let mut b = Array2::zeros((n, n - 1));
    for k in 1..n {
        let norm = ((k * (k + 1)) as f64).sqrt();
        for i in 0..k {
            b[(i, k - 1)] = 1.0 / norm;
        }
        b[(k, k - 1)] = -(k as f64) / norm;
    }
    b
}

/// Smallest eigenvalue of `M` restricted to the complement of the constants,
/// `inf { v^T M v : v `⊥` 1, |v| = 1 }`.
///
/// For a Laplacian-like matrix with `M 1 = 0` this is the spectral gap; it
/// stays meaningful past the point where `M` stops being positive
/// semidefinite (where the sorted second-smallest eigenvalue saturates at the
/// zero of the constants).
pub fn lambda2(m: &SymMatrix) -> Result<f64> {
    let n = m.dim();
    if n <= 1 {
        return Ok(f64::INFINITY);
    }
    let b = ones_complement_basis(n);
    let restricted = b.t().dot(m.array()).dot(&b);
    let restricted = SymMatrix::symmetrized(restricted)?;
    Ok(eigen_sym(&restricted)?.eigenvalues[0])
}

/// PSD test and numerical rank.
///
/// `is_psd` iff the smallest eigenvalue is `>= -ztol`; the rank counts
/// eigenvalues above `ztol`. The default tolerance is
/// `RANK_ZERO * max(1, |lambda_max|)`.
pub fn psd_rank(m: &SymMatrix, zero_tol: Option<f64>) -> Result<(bool, usize)> {
    let eig = eigen_sym(m)?;
    if eig.eigenvalues.is_empty() {
        return Ok((true, 0));
    }
    let scale = eig.eigenvalues.last().unwrap().abs();
    let ztol = zero_tol.unwrap_or(tol::RANK_ZERO * scale.max(1.0));
    let is_psd = eig.eigenvalues[0] >= -ztol;
    let rank = eig.eigenvalues.iter().filter(|&&l| l.abs() > ztol).count();
    Ok((is_psd, rank))
}

/// LU solve with partial pivoting for multiple right-hand sides.
pub fn solve_lu(a: &Array2<f64>, b: &Array2<f64>) -> Result<Array2<f64>> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::NotSquare {
            rows: n,
            cols: a.ncols(),
        });
    }
    if b.nrows() != n {
        return Err(Error::NotSquare {
            rows: b.nrows(),
            cols: n,
        });
    }
    let mut lu = a.clone();
    let mut x = b.clone();
    let scale = a.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    let pivot_floor = 1e-14 * (1.0 + scale);
    let m = x.ncols();
    for col in 0..n {
        let mut piv = col;
        for r in (col + 1)..n {
            if lu[(r, col)].abs() > lu[(piv, col)].abs() {
                piv = r;
            }
        }
        if lu[(piv, col)].abs() <= pivot_floor {
            return Err(Error::SingularMatrix);
        }
        if piv != col {
            for c in 0..n {
                lu.swap((col, c), (piv, c));
            }
            for c in 0..m {
                x.swap((col, c), (piv, c));
            }
        }
        let d = lu[(col, col)];
        for r in (col + 1)..n {
            let f = lu[(r, col)] / d;
            if f == 0.0 {
                continue;
            }
            for c in (col + 1)..n {
                lu[(r, c)] -= f * lu[(col, c)];
            }
            for c in 0..m {
                let t = f * x[(col, c)];
                x[(r, c)] -= t;
            }
        }
    }
    for col in (0..n).rev() {
        for c in 0..m {
            let mut s = x[(col, c)];
            for k in (col + 1)..n {
                s -= lu[(col, k)] * x[(k, c)];
            }
            x[(col, c)] = s / lu[(col, col)];
        }
    }
    Ok(x)
}

/// LU solve for a single right-hand side.
pub fn solve_vec(a: &Array2<f64>, b: &Array1<f64>) -> Result<Array1<f64>> {
    let n = b.len();
    let rhs = b
        .clone()
        .into_shape_with_order((n, 1))
        .expect("vector reshape");
    let x = solve_lu(a, &rhs)?;
    Ok(x.column(0).to_owned())
}

/// Moore-Penrose pseudoinverse of a symmetric matrix whose null space is
/// exactly the constants.
///
/// Computed two independent ways and cross-checked: the eigen route
/// `U diag(1/lambda) U^T` over the nonzero pairs, and the rank-one shift
/// route `(M + (1/n) 1 1^T)^{-1} - (1/n) 1 1^T`. `M^+ 1 = 0` by construction.
pub fn pseudoinverse_laplacian(m: &SymMatrix) -> Result<SymMatrix> {
    let n = m.dim();
    let eig = eigen_sym(m)?;
    let scale = eig.eigenvalues.iter().fold(0.0f64, |a, &l| a.max(l.abs()));
    let ztol = tol::RANK_ZERO * scale.max(1.0);
    let zero_count = eig.eigenvalues.iter().filter(|&&l| l.abs() <= ztol).count();
    if zero_count != 1 || m.ones_residual() > tol::ONES_KERNEL * (1.0 + m.max_abs()) {
        return Err(Error::NullSpaceNotOnes);
    }

    let eigen_route = eig.map_eigenvalues(|l| if l.abs() <= ztol { 0.0 } else { 1.0 / l });

    let shift = 1.0 / n as f64;
    let mut shifted = m.array().clone();
    shifted += shift;
    let inv = solve_lu(&shifted, &Array2::eye(n))?;
    let shift_route = &inv - shift;

    let mut diff = 0.0f64;
    let mut mag = 0.0f64;
    for (a, b) in eigen_route.iter().zip(shift_route.iter()) {
        diff = diff.max((a - b).abs());
        mag = mag.max(a.abs());
    }
    let route_tol = tol::PINV * (1.0 + mag);
    if diff > route_tol {
        return Err(Error::PinvRouteDisagreement {
            diff,
            tol: route_tol,
        });
    }
    SymMatrix::symmetrized(eigen_route)
}

/// Heat-semigroup matrix exponential `exp(-M t) = U diag(e^{-lambda t}) U^T`.
pub fn matrix_exp(m: &SymMatrix, t: f64) -> Result<SymMatrix> {
    if !t.is_finite() {
        return Err(Error::BadParameter("t must be finite"));
    }
    let eig = eigen_sym(m)?;
    SymMatrix::symmetrized(eig.map_eigenvalues(|l| (-l * t).exp()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SignedGraph;

    fn paper_triangle() -> SignedGraph {
        SignedGraph::from_list(3, &[(0, 1, 1.0, 1), (0, 2, 1.0, 1), (1, 2, 1.0, -1)]).unwrap()
    }

    #[test]
    fn laplacians_of_paper_triangle() {
        let g = paper_triangle();
        let lp = laplacian(&g, LaplacianKind::Positive);
        let expect =
            SymMatrix::from_rows(&[&[2.0, -1.0, -1.0], &[-1.0, 1.0, 0.0], &[-1.0, 0.0, 1.0]])
                .unwrap();
        assert_eq!(lp, expect);

        let lm = laplacian(&g, LaplacianKind::Negative);
        let expect =
            SymMatrix::from_rows(&[&[0.0, 0.0, 0.0], &[0.0, 1.0, -1.0], &[0.0, -1.0, 1.0]])
                .unwrap();
        assert_eq!(lm, expect);

        let zero = laplacian(
            &SignedGraph::from_list(3, &[]).unwrap(),
            LaplacianKind::Underlying,
        );
        assert_eq!(zero.max_abs(), 0.0);
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let g = paper_triangle();
        for kind in [
            LaplacianKind::Positive,
            LaplacianKind::Negative,
            LaplacianKind::Underlying,
        ] {
            let l = laplacian(&g, kind);
            assert!(l.ones_residual() <= tol::ONES_KERNEL * (1.0 + l.max_abs()));
        }
    }

    #[test]
    fn eigen_of_paper_laplacians() {
        let g = paper_triangle();
        let lp = eigen_sym(&laplacian(&g, LaplacianKind::Positive)).unwrap();
        for (got, want) in lp.eigenvalues.iter().zip([0.0, 1.0, 3.0]) {
            assert!((got - want).abs() < 1e-12, "got {got}, want {want}");
        }
        let lm = eigen_sym(&laplacian(&g, LaplacianKind::Negative)).unwrap();
        for (got, want) in lm.eigenvalues.iter().zip([0.0, 0.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        let id = eigen_sym(&SymMatrix::identity(4)).unwrap();
        assert_eq!(id.eigenvalues, vec![1.0; 4]);
    }

    #[test]
    fn eigen_reconstruction_and_orthonormality() {
        let g = paper_triangle();
        let m = laplacian(&g, LaplacianKind::Underlying);
        let eig = eigen_sym(&m).unwrap();
        let recon = eig.reconstruct();
        for ((i, j), &x) in recon.indexed_iter() {
            assert!((x - m.get(i, j)).abs() <= tol::RECONSTRUCT * (1.0 + m.max_abs()));
        }
        let gram = eig.eigenvectors.t().dot(&eig.eigenvectors);
        for ((i, j), &x) in gram.indexed_iter() {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((x - want).abs() <= tol::ORTHONORMAL);
        }
    }

    #[test]
    fn eigenvector_sign_convention_is_deterministic() {
        let m = SymMatrix::from_rows(&[&[2.0, -1.0], &[-1.0, 2.0]]).unwrap();
        let eig = eigen_sym(&m).unwrap();
        for k in 0..2 {
            let col = eig.eigenvectors.column(k);
            let mut best = 0;
            for r in 1..2 {
                if col[r].abs() > col[best].abs() {
                    best = r;
                }
            }
            assert!(col[best] >= 0.0);
        }
    }

    #[test]
    fn psd_rank_of_paper_matrices() {
        let g = paper_triangle();
        let lp = laplacian(&g, LaplacianKind::Positive);
        assert_eq!(psd_rank(&lp, None).unwrap(), (true, 2));

        // eps = 0.6 lies beyond the consensus index 0.5 of this graph
        let lm = laplacian(&g, LaplacianKind::Negative);
        let l_eps = SymMatrix::new(lp.array() - &(lm.array() * 0.6)).unwrap();
        let (is_psd, _) = psd_rank(&l_eps, None).unwrap();
        assert!(!is_psd);

        assert_eq!(psd_rank(&SymMatrix::zeros(3), None).unwrap(), (true, 0));
    }

    #[test]
    fn lambda2_matches_sorted_second_eigenvalue_on_psd() {
        let g = paper_triangle();
        let lp = laplacian(&g, LaplacianKind::Positive);
        let l2 = lambda2(&lp).unwrap();
        assert!((l2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lambda2_ignores_the_trivial_zero_past_the_knee() {
        // beyond the consensus index the sorted second-smallest eigenvalue is
        // pinned at the zero of the constants; the restricted gap goes negative
        let g = paper_triangle();
        let lp = laplacian(&g, LaplacianKind::Positive);
        let lm = laplacian(&g, LaplacianKind::Negative);
        let l_eps = SymMatrix::new(lp.array() - &(lm.array() * 0.6)).unwrap();
        assert!(lambda2(&l_eps).unwrap() < 0.0);
    }

    #[test]
    fn pseudoinverse_matches_printed_quarter_repelling_example() {
        let g = paper_triangle();
        let lp = laplacian(&g, LaplacianKind::Positive);
        let lm = laplacian(&g, LaplacianKind::Negative);
        let l_eps = SymMatrix::new(lp.array() - &(lm.array() * 0.25)).unwrap();
        let pinv = pseudoinverse_laplacian(&l_eps).unwrap();
        let printed = [
            [0.222, -0.111, -0.111],
            [-0.111, 1.055, -0.944],
            [-0.111, -0.944, 1.055],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert!(
                    (pinv.get(i, j) - printed[i][j]).abs() <= 2e-3,
                    "entry ({i},{j}): {} vs {}",
                    pinv.get(i, j),
                    printed[i][j]
                );
            }
        }
    }

    #[test]
    fn pseudoinverse_of_two_path_is_quarter_laplacian() {
        let g = SignedGraph::from_list(2, &[(0, 1, 1.0, 1)]).unwrap();
        let l = laplacian(&g, LaplacianKind::Positive);
        let pinv = pseudoinverse_laplacian(&l).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((pinv.get(i, j) - l.get(i, j) / 4.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pseudoinverse_satisfies_defining_identity() {
        let g = paper_triangle();
        let m = laplacian(&g, LaplacianKind::Underlying);
        let pinv = pseudoinverse_laplacian(&m).unwrap();
        let mpm = m.array().dot(pinv.array()).dot(m.array());
        for ((i, j), &x) in mpm.indexed_iter() {
            assert!((x - m.get(i, j)).abs() <= tol::PINV * (1.0 + m.max_abs()));
        }
        let ones = Array1::from_elem(3, 1.0);
        assert!(pinv.mul_vec(&ones).iter().all(|x| x.abs() < 1e-10));
    }

    #[test]
    fn pseudoinverse_rejects_wrong_null_space() {
        // disconnected positive subgraph: null space dimension 2
        let g = SignedGraph::from_list(4, &[(0, 1, 1.0, 1), (2, 3, 1.0, 1)]).unwrap();
        let l = laplacian(&g, LaplacianKind::Underlying);
        assert_eq!(
            pseudoinverse_laplacian(&l).unwrap_err(),
            Error::NullSpaceNotOnes
        );
        // identity has no null space at all
        assert_eq!(
            pseudoinverse_laplacian(&SymMatrix::identity(3)).unwrap_err(),
            Error::NullSpaceNotOnes
        );
    }

    #[test]
    fn matrix_exp_basics() {
        let g = paper_triangle();
        let q = laplacian(&g, LaplacianKind::Underlying);
        let e0 = matrix_exp(&q, 0.0).unwrap();
        for ((i, j), &x) in e0.array().indexed_iter() {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((x - want).abs() < 1e-12);
        }

        let d = SymMatrix::from_rows(&[&[0.5, 0.0], &[0.0, 2.0]]).unwrap();
        let e = matrix_exp(&d, 0.7).unwrap();
        assert!((e.get(0, 0) - (-0.35f64).exp()).abs() < 1e-14);
        assert!((e.get(1, 1) - (-1.4f64).exp()).abs() < 1e-14);
        assert_eq!(e.get(0, 1), 0.0);
    }

    #[test]
    fn matrix_exp_matches_truncated_series() {
        let g = paper_triangle();
        let q = laplacian(&g, LaplacianKind::Underlying);
        let e = matrix_exp(&q, 0.1).unwrap();
        // sum (-Qt)^k / k! to 20 terms
        let n = 3;
        let qt = q.array() * 0.1;
        let mut series: Array2<f64> = Array2::eye(n);
        let mut term: Array2<f64> = Array2::eye(n);
        for k in 1..=20 {
            term = term.dot(&qt).map(|x| -x / k as f64);
            series += &term;
        }
        for ((i, j), &x) in series.indexed_iter() {
            assert!((x - e.get(i, j)).abs() < 1e-10);
        }
    }

    #[test]
    fn exp_of_laplacian_is_stochastic() {
        let g = paper_triangle();
        let q = laplacian(&g, LaplacianKind::Underlying);
        for t in [0.0, 0.3, 1.7, 5.0] {
            let e = matrix_exp(&q, t).unwrap();
            for i in 0..3 {
                let row: f64 = (0..3).map(|j| e.get(i, j)).sum();
                assert!((row - 1.0).abs() < 1e-10);
            }
            assert!(e.array().iter().all(|&x| x >= -1e-12));
        }
    }

    #[test]
    fn solve_lu_round_trips() {
        let a = Array2::from_shape_vec((3, 3), vec![4.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0])
            .unwrap();
        let b = Array1::from_vec(vec![1.0, -2.0, 0.5]);
        let x = solve_vec(&a, &b).unwrap();
        let r = a.dot(&x) - &b;
        assert!(r.iter().all(|v| v.abs() < 1e-12));
        assert_eq!(
            solve_vec(&Array2::zeros((2, 2)), &Array1::zeros(2)).unwrap_err(),
            Error::SingularMatrix
        );
    }

    #[test]
    fn symmetry_validation() {
        let mut bad = Array2::eye(2);
        bad[(0, 1)] = 1e-6;
        assert!(matches!(
            SymMatrix::new(bad),
            Err(Error::NotSymmetric { .. })
        ));
        let nan = Array2::from_elem((1, 1), f64::NAN);
        assert!(matches!(SymMatrix::new(nan), Err(Error::NotFinite { .. })));
    }
}

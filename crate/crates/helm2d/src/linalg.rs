//! Thin wrappers over the dense linear-algebra backend (faer).
//!
//! Everything downstream works with square or tall complex matrices of at
//! most a few thousand rows, so the dense direct algorithms here are the
//! right tool. The wrappers exist to (a) map backend failure modes onto this
//! crate's [`Error`] variants, (b) expose a cheap near-singularity proxy used
//! by the contour eigensolver to detect quadrature nodes that landed on an
//! eigenvalue, and (c) keep the rest of the crate free of backend-specific
//! types beyond [`CMat`].

use faer::linalg::solvers::{PartialPivLu, Solve};
use faer::Mat;
use num_complex::Complex64;

use crate::{Error, Result};

/// Dense complex matrix type used throughout the crate.
pub type CMat = Mat<Complex64>;

/// LU factorization (partial pivoting) with a singularity proxy.
pub struct LuFactors {
    plu: PartialPivLu<Complex64>,
    diag_min: f64,
    diag_max: f64,
}

impl LuFactors {
    /// Factor a square matrix.
    pub fn new(a: &CMat) -> LuFactors {
        let plu = a.partial_piv_lu();
        let mut diag_min = f64::INFINITY;
        let mut diag_max: f64 = 0.0;
        let u = plu.U();
        for i in 0..u.nrows().min(u.ncols()) {
            let d = u[(i, i)].norm();
            diag_min = diag_min.min(d);
            diag_max = diag_max.max(d);
        }
        LuFactors { plu, diag_min, diag_max }
    }

    /// min |U_ii| / max |U_ii| of the triangular factor. Not a condition
    /// number, but collapses to ~machine epsilon or below exactly when the
    /// matrix is numerically rank deficient — which is all the callers need.
    pub fn diag_ratio(&self) -> f64 {
        if self.diag_max == 0.0 { 0.0 } else { self.diag_min / self.diag_max }
    }

    /// Solve A X = B for all columns of B.
    pub fn solve_mat(&self, rhs: &CMat) -> CMat {
        self.plu.solve(rhs)
    }

    /// Solve A x = b for a single right-hand side given as a slice.
    pub fn solve_vec(&self, rhs: &[Complex64]) -> Vec<Complex64> {
        let b = Mat::from_fn(rhs.len(), 1, |i, _| rhs[i]);
        let x = self.plu.solve(&b);
        (0..x.nrows()).map(|i| x[(i, 0)]).collect()
    }
}

/// One-shot dense solve with an explicit singularity error.
pub fn solve_dense(a: &CMat, rhs: &CMat) -> Result<CMat> {
    if a.nrows() != a.ncols() || a.nrows() != rhs.nrows() {
        return Err(Error::InvalidConfig(format!(
            "solve_dense shape mismatch: a is {}x{}, rhs has {} rows",
            a.nrows(),
            a.ncols(),
            rhs.nrows()
        )));
    }
    let lu = LuFactors::new(a);
    if !(lu.diag_ratio() > 1e-16) {
        return Err(Error::SingularSystem(format!(
            "pivot ratio {:.3e} in {}x{} system",
            lu.diag_ratio(),
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(lu.solve_mat(rhs))
}

/// Singular values in descending order.
pub fn singular_values(a: &CMat) -> Result<Vec<f64>> {
    let svd = a
        .svd()
        .map_err(|e| Error::NonConvergence(format!("svd failed: {e:?}")))?;
    Ok(svd.S().column_vector().iter().map(|s| s.re).collect())
}

/// Thin SVD: (U, σ, V) with A = U diag(σ) V^H.
pub fn svd_parts(a: &CMat) -> Result<(CMat, Vec<f64>, CMat)> {
    let svd = a
        .svd()
        .map_err(|e| Error::NonConvergence(format!("svd failed: {e:?}")))?;
    let s = svd.S().column_vector().iter().map(|s| s.re).collect();
    Ok((svd.U().to_owned(), s, svd.V().to_owned()))
}

/// Eigendecomposition of a general square complex matrix:
/// returns (λ, V) with A V = V diag(λ), eigenvectors in the columns of V.
pub fn eigen_parts(a: &CMat) -> Result<(Vec<Complex64>, CMat)> {
    let e = a
        .eigen()
        .map_err(|e| Error::NonConvergence(format!("eigendecomposition failed: {e:?}")))?;
    let vals = e.S().column_vector().iter().copied().collect();
    Ok((vals, e.U().to_owned()))
}

/// y = A x for a slice-shaped vector.
pub fn apply(a: &CMat, x: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(a.ncols(), x.len(), "apply: dimension mismatch");
    let xm = Mat::from_fn(x.len(), 1, |i, _| x[i]);
    let y = a * &xm;
    (0..y.nrows()).map(|i| y[(i, 0)]).collect()
}

/// Euclidean norm of a complex slice.
pub fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Frobenius norm of a complex matrix.
pub fn frob_norm(a: &CMat) -> f64 {
    let mut s = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            s += a[(i, j)].norm_sqr();
        }
    }
    s.sqrt()
}

/// Largest entry magnitude of a matrix (max norm).
pub fn max_abs(a: &CMat) -> f64 {
    let mut m: f64 = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            m = m.max(a[(i, j)].norm());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lu_solves_and_flags_singularity() {
        let a = Mat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => c(2.0, 1.0),
            (0, 1) => c(0.0, -1.0),
            (1, 0) => c(1.0, 0.0),
            _ => c(3.0, 2.0),
        });
        let x_true = [c(1.0, -2.0), c(0.5, 0.25)];
        let b = apply(&a, &x_true);
        let lu = LuFactors::new(&a);
        assert!(lu.diag_ratio() > 0.1);
        let x = lu.solve_vec(&b);
        assert!((x[0] - x_true[0]).norm() < 1e-14);
        assert!((x[1] - x_true[1]).norm() < 1e-14);

        // Rank-1 matrix must be reported singular by solve_dense.
        let s = Mat::from_fn(2, 2, |i, j| c((i + 1) as f64 * (j + 1) as f64, 0.0));
        let rhs = Mat::from_fn(2, 1, |_, _| c(1.0, 0.0));
        assert!(matches!(solve_dense(&s, &rhs), Err(Error::SingularSystem(_))));
    }

    #[test]
    fn svd_recovers_known_singular_values() {
        // diag(3, 2i, 0) has singular values 3, 2, 0.
        let a = Mat::from_fn(3, 3, |i, j| match (i, j) {
            (0, 0) => c(3.0, 0.0),
            (1, 1) => c(0.0, 2.0),
            _ => c(0.0, 0.0),
        });
        let s = singular_values(&a).unwrap();
        assert!((s[0] - 3.0).abs() < 1e-14);
        assert!((s[1] - 2.0).abs() < 1e-14);
        assert!(s[2].abs() < 1e-14);

        let (u, sv, v) = svd_parts(&a).unwrap();
        // Reassemble and compare entrywise.
        let mut r = Mat::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = c(0.0, 0.0);
                for k in 0..3 {
                    acc += u[(i, k)] * sv[k] * v[(j, k)].conj();
                }
                r[(i, j)] = acc;
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                assert!((r[(i, j)] - a[(i, j)]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn eigen_satisfies_residual() {
        let a = Mat::from_fn(3, 3, |i, j| c((i * 3 + j) as f64 * 0.3 - 1.0, (i as f64 - j as f64) * 0.7));
        let (vals, vecs) = eigen_parts(&a).unwrap();
        assert_eq!(vals.len(), 3);
        for (k, &lambda) in vals.iter().enumerate() {
            let x: Vec<Complex64> = (0..3).map(|i| vecs[(i, k)]).collect();
            let ax = apply(&a, &x);
            let res: f64 = (0..3).map(|i| (ax[i] - lambda * x[i]).norm_sqr()).sum::<f64>().sqrt();
            assert!(res < 1e-13 * vec_norm(&x), "eigenpair {k} residual {res}");
        }
        // Trace check: Σλ = tr(A).
        let tr: Complex64 = (0..3).map(|i| a[(i, i)]).sum();
        let sum: Complex64 = vals.iter().sum();
        assert!((tr - sum).norm() < 1e-13);
    }
}

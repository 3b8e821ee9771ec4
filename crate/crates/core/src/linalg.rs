//! Thin helpers over the dense `faer` matrix type.

use faer::Mat;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix used for every operator in the crate.
pub type CMatrix = Mat<Complex64>;

pub fn identity(n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `‖M M† − I‖_F`.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let product = m * m.adjoint();
    let id = identity(m.nrows());
    (&product - &id).norm_l2()
}

/// Largest entrywise modulus of `a − b`.
pub fn max_entry_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()));
    let mut worst = 0.0f64;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            worst = worst.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    worst
}

pub fn trace(m: &CMatrix) -> Complex64 {
    (0..m.nrows().min(m.ncols())).map(|i| m[(i, i)]).sum()
}

pub fn mat_vec(m: &CMatrix, v: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(m.ncols(), v.len());
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)] * v[j]).sum())
        .collect()
}

/// `⟨a|b⟩`, conjugate-linear in the first argument.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigenvalues of a general dense complex matrix.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    m.eigenvalues()
        .map_err(|e| Error::Eigensolver(format!("{e:?}")))
}

/// Eigenvalues of a general dense real matrix.
pub fn real_eigenvalues(m: &Mat<f64>) -> Result<Vec<Complex64>> {
    m.eigenvalues()
        .map_err(|e| Error::Eigensolver(format!("{e:?}")))
}

/// Solves the square real system `a x = b` by partial-pivot LU.
pub fn solve_real(a: &Mat<f64>, b: &[f64]) -> Vec<f64> {
    use faer::linalg::solvers::Solve;
    let rhs = Mat::from_fn(b.len(), 1, |i, _| b[i]);
    let x = a.partial_piv_lu().solve(&rhs);
    (0..b.len()).map(|i| x[(i, 0)]).collect()
}

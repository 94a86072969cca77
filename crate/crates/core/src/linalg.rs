//! Small dense complex linear-algebra helpers.
//!
//! Everything here works on `DMatrix<Complex64>`. Matrix functions of
//! Hermitian arguments go through the Hermitian eigendecomposition, with
//! eigenvalues sorted ascending.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

#[inline]
pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn from_real_diagonal(diag: &[f64]) -> CMatrix {
    CMatrix::from_diagonal(&DVector::from_iterator(diag.len(), diag.iter().map(|&x| c(x))))
}

pub fn from_real_rows(rows: &[&[f64]]) -> CMatrix {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    CMatrix::from_fn(nrows, ncols, |i, j| c(rows[i][j]))
}

/// Entrywise complex conjugate (the matrix of `Λ A Λ`).
pub fn conj(a: &CMatrix) -> CMatrix {
    a.map(|z| z.conj())
}

/// Largest absolute entry.
pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().fold(0.0_f64, |m, z| m.max(z.norm()))
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).fold(0.0_f64, |m, (x, y)| m.max((x - y).norm()))
}

/// Deviation from Hermiticity, `max |a_ij − conj(a_ji)|`.
pub fn hermiticity_defect(a: &CMatrix) -> f64 {
    if !a.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(a, &a.adjoint())
}

/// `(A + A*) / 2`.
pub fn hermitian_part(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()) * c(0.5)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// Only the Hermitian part of `a` is used.
pub fn eigh(a: &CMatrix) -> (DVector<f64>, CMatrix) {
    let n = a.nrows();
    if n == 0 {
        return (DVector::zeros(0), CMatrix::zeros(0, 0));
    }
    let eig = SymmetricEigen::new(hermitian_part(a));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let vectors = CMatrix::from_fn(n, n, |r, k| eig.eigenvectors[(r, order[k])]);
    (values, vectors)
}

pub fn eigvalsh(a: &CMatrix) -> DVector<f64> {
    if a.nrows() == 0 {
        return DVector::zeros(0);
    }
    let mut v: Vec<f64> = SymmetricEigen::new(hermitian_part(a)).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    DVector::from_vec(v)
}

/// Smallest eigenvalue of a Hermitian matrix (`+∞` for the empty matrix).
pub fn min_eigenvalue(a: &CMatrix) -> f64 {
    eigvalsh(a).iter().copied().fold(f64::INFINITY, f64::min)
}

pub fn max_eigenvalue(a: &CMatrix) -> f64 {
    eigvalsh(a).iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// `f(A)` for Hermitian `A`, applying `f` to each eigenvalue.
pub fn hermitian_function(a: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let (values, vectors) = eigh(a);
    let mapped: Vec<f64> = values.iter().map(|&x| f(x)).collect();
    from_eigen(&mapped, &vectors)
}

/// `V diag(values) V*`.
pub fn from_eigen(values: &[f64], vectors: &CMatrix) -> CMatrix {
    let mut left = vectors.clone();
    for (j, &x) in values.iter().enumerate() {
        let mut col = left.column_mut(j);
        col *= c(x);
    }
    &left * vectors.adjoint()
}

/// Square root of a Hermitian PSD matrix; tiny negative eigenvalues are clamped to zero.
pub fn sqrt_psd(a: &CMatrix) -> CMatrix {
    hermitian_function(a, |x| x.max(0.0).sqrt())
}

/// Moore–Penrose inverse of a Hermitian PSD matrix.
///
/// Eigenvalues at or below `rel_cut · λ_max` are treated as zero.
pub fn pinv_psd(a: &CMatrix, rel_cut: f64) -> CMatrix {
    let (values, _) = eigh(a);
    let top = values.iter().copied().fold(0.0_f64, |m, x| m.max(x.abs()));
    let cut = rel_cut * top;
    hermitian_function(a, |x| if x > cut { 1.0 / x } else { 0.0 })
}

/// Whether `a` is diagonal up to `tol` in every off-diagonal entry.
pub fn is_diagonal(a: &CMatrix, tol: f64) -> bool {
    (0..a.nrows()).all(|i| (0..a.ncols()).all(|j| i == j || a[(i, j)].norm() <= tol))
}

pub fn is_unitary(u: &CMatrix, tol: f64) -> bool {
    u.is_square() && max_abs_diff(&(u.adjoint() * u), &identity(u.nrows())) <= tol
}

/// Real trace of `A B` for Hermitian arguments (the Frobenius inner product).
pub fn inner(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
}

/// Extends the orthonormal columns of `q` (n × r) to an n × n unitary.
pub fn complete_unitary(q: &CMatrix) -> CMatrix {
    let (n, r) = q.shape();
    if r >= n {
        return q.columns(0, n).into_owned();
    }
    let mut out = CMatrix::zeros(n, n);
    out.columns_mut(0, r).copy_from(q);
    let mut filled = r;
    // Gram–Schmidt against the canonical basis, twice for stability.
    for e in 0..n {
        if filled == n {
            break;
        }
        let mut v = CMatrix::zeros(n, 1);
        v[(e, 0)] = c(1.0);
        for _ in 0..2 {
            for k in 0..filled {
                let col = out.column(k).into_owned();
                let proj = col.adjoint() * &v;
                v -= col * proj[(0, 0)];
            }
        }
        let norm = v.norm();
        if norm > 1e-6 {
            out.set_column(filled, &(v.column(0) / c(norm)));
            filled += 1;
        }
    }
    out
}

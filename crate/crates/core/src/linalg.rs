//! Dense linear-algebra helpers: null spaces, ranks and orthonormal bases
//! with an explicit singular-value cutoff. Decompositions run through faer.

use nalgebra::{DMatrix, DVector};

use crate::Scalar;

/// Singular-value cutoff relative to the largest singular value, floored at
/// `tol` so that an all-zero matrix has rank 0.
pub fn cutoff<T: Scalar>(singular_values: &DVector<T>, tol: T) -> T {
    let smax = singular_values.iter().fold(T::zero(), |m, &s| m.max(s));
    tol * smax.max(T::one())
}

/// Full SVD `a = U diag(s) Vᵀ` computed in double precision by faer.
/// Singular values are sorted in nonincreasing order.
pub struct Svd<T: Scalar> {
    pub u: DMatrix<T>,
    pub singular_values: DVector<T>,
    pub v: DMatrix<T>,
}

fn to_faer<T: Scalar>(a: &DMatrix<T>) -> faer::Mat<f64> {
    faer::Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)].as_f64())
}

pub fn svd<T: Scalar>(a: &DMatrix<T>) -> Svd<T> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Svd {
            u: DMatrix::identity(m, m),
            singular_values: DVector::zeros(0),
            v: DMatrix::identity(n, n),
        };
    }
    let f = to_faer(a);
    let d = f.svd().expect("SVD of a finite matrix");
    let (u, s, v) = (d.U(), d.S().column_vector(), d.V());
    Svd {
        u: DMatrix::from_fn(m, m, |i, j| T::lit(u[(i, j)])),
        singular_values: DVector::from_fn(m.min(n), |i, _| T::lit(s[i])),
        v: DMatrix::from_fn(n, n, |i, j| T::lit(v[(i, j)])),
    }
}

/// Eigenvalues of a general square matrix as `(re, im)` pairs.
pub fn eigenvalues<T: Scalar>(a: &DMatrix<T>) -> Vec<(T, T)> {
    if a.nrows() == 0 {
        return Vec::new();
    }
    to_faer(a)
        .eigenvalues()
        .expect("eigenvalues of a finite matrix")
        .into_iter()
        .map(|z| (T::lit(z.re), T::lit(z.im)))
        .collect()
}

/// Moore–Penrose pseudo-inverse with singular values at or below
/// `tol × max(1, σ_max)` treated as zero.
pub fn pseudo_inverse<T: Scalar>(a: &DMatrix<T>, tol: T) -> DMatrix<T> {
    let (m, n) = a.shape();
    let d = svd(a);
    let cut = cutoff(&d.singular_values, tol);
    let mut out = DMatrix::zeros(n, m);
    for (i, &s) in d.singular_values.iter().enumerate() {
        if s > cut {
            out += d.v.column(i) * d.u.column(i).transpose() / s;
        }
    }
    out
}

/// Orthonormal basis (as columns) of `{x : a x = 0}`.
pub fn null_space<T: Scalar>(a: &DMatrix<T>, tol: T) -> DMatrix<T> {
    let n = a.ncols();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    if a.nrows() == 0 {
        return DMatrix::identity(n, n);
    }
    let d = svd(a);
    let cut = cutoff(&d.singular_values, tol);
    let k = d.singular_values.len();
    let cols: Vec<DVector<T>> = (0..n)
        .filter(|&i| i >= k || d.singular_values[i] <= cut)
        .map(|i| d.v.column(i).into_owned())
        .collect();
    stack_columns(n, &cols)
}

/// Orthonormal basis of the column space of `a`.
pub fn column_space<T: Scalar>(a: &DMatrix<T>, tol: T) -> DMatrix<T> {
    let m = a.nrows();
    if a.ncols() == 0 || m == 0 {
        return DMatrix::zeros(m, 0);
    }
    let d = svd(a);
    let cut = cutoff(&d.singular_values, tol);
    let cols: Vec<DVector<T>> = d
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > cut)
        .map(|(i, _)| d.u.column(i).into_owned())
        .collect();
    stack_columns(m, &cols)
}

pub fn rank<T: Scalar>(a: &DMatrix<T>, tol: T) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let s = svd(a).singular_values;
    let cut = cutoff(&s, tol);
    s.iter().filter(|&&x| x > cut).count()
}

/// Smallest singular value of `a` counted over its columns (zero when `a`
/// has more columns than rows).
pub fn min_singular_value<T: Scalar>(a: &DMatrix<T>) -> T {
    if a.ncols() == 0 {
        return T::zero();
    }
    if a.nrows() < a.ncols() {
        return T::zero();
    }
    let s = svd(a).singular_values;
    s.iter().fold(s[0], |m, &x| m.min(x))
}

pub fn stack_columns<T: Scalar>(rows: usize, cols: &[DVector<T>]) -> DMatrix<T> {
    let mut m = DMatrix::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        m.set_column(j, c);
    }
    m
}

pub fn frobenius<T: Scalar>(a: &DMatrix<T>) -> T {
    a.norm()
}

pub fn max_abs<T: Scalar>(a: &DMatrix<T>) -> T {
    a.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
}

/// Symmetric part `(a + aᵀ) / 2`.
pub fn symmetrize<T: Scalar>(a: &DMatrix<T>) -> DMatrix<T> {
    (a + a.transpose()) * T::lit(0.5)
}

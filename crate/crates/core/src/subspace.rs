use nalgebra::{DMatrix, DVector};

use crate::linalg;
use crate::Scalar;

/// A linear subspace of coordinate space, stored as a matrix whose columns
/// form a Euclidean-orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<T: Scalar> {
    basis: DMatrix<T>,
}

impl<T: Scalar> Subspace<T> {
    pub fn zero(ambient: usize) -> Self {
        Self {
            basis: DMatrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            basis: DMatrix::identity(ambient, ambient),
        }
    }

    /// Span of the columns of `vectors`, orthonormalized with the given
    /// singular-value tolerance.
    pub fn span(vectors: &DMatrix<T>, tol: T) -> Self {
        Self {
            basis: linalg::column_space(vectors, tol),
        }
    }

    pub fn span_of(ambient: usize, vectors: &[DVector<T>], tol: T) -> Self {
        Self::span(&linalg::stack_columns(ambient, vectors), tol)
    }

    /// Wraps a matrix that already has orthonormal columns.
    pub(crate) fn from_orthonormal(basis: DMatrix<T>) -> Self {
        Self { basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn basis(&self) -> &DMatrix<T> {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<DVector<T>> {
        self.basis.column_iter().map(|c| c.into_owned()).collect()
    }

    /// Orthogonal projector onto the subspace.
    pub fn projector(&self) -> DMatrix<T> {
        &self.basis * self.basis.transpose()
    }

    /// Distance of `v` from the subspace.
    pub fn residual(&self, v: &DVector<T>) -> T {
        (v - self.projector() * v).norm()
    }

    pub fn contains(&self, v: &DVector<T>, tol: T) -> bool {
        self.residual(v) <= tol * v.norm().max(T::one())
    }

    pub fn contains_subspace(&self, other: &Subspace<T>, tol: T) -> bool {
        other.vectors().iter().all(|v| self.contains(v, tol))
    }

    /// Equality as subspaces (mutual containment).
    pub fn same_as(&self, other: &Subspace<T>, tol: T) -> bool {
        self.rank() == other.rank() && self.contains_subspace(other, tol)
    }

    pub fn sum(&self, other: &Subspace<T>, tol: T) -> Self {
        let mut all = self.vectors();
        all.extend(other.vectors());
        Self::span_of(self.ambient_dim(), &all, tol)
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, map: &DMatrix<T>, tol: T) -> Self {
        Self::span(&(map * &self.basis), tol)
    }
}

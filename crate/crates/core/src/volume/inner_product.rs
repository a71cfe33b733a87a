use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{OrbitError, Result};
use crate::linalg;
use crate::Scalar;

/// A positive semi-definite symmetric bilinear form given by its Gram
/// matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerProductData<T: Scalar> {
    gram: DMatrix<T>,
    min_eigenvalue: T,
    max_eigenvalue: T,
    definite: bool,
}

impl<T: Scalar> InnerProductData<T> {
    /// Accepts a Gram matrix that is symmetric up to `tol × scale` (then
    /// symmetrized exactly) with eigenvalues `≥ −tol × scale`. It is
    /// definite when the smallest eigenvalue exceeds `tol × max(1, λ_max)`.
    pub fn new(gram: DMatrix<T>, tol: T) -> Result<Self> {
        if !gram.is_square() {
            return Err(OrbitError::InputShape(format!(
                "gram matrix is {}x{}",
                gram.nrows(),
                gram.ncols()
            )));
        }
        if gram.nrows() == 0 {
            return Err(OrbitError::InputShape("gram matrix is empty".into()));
        }
        if gram.iter().any(|x| !x.is_finite()) {
            return Err(OrbitError::Input("gram matrix has non-finite entries".into()));
        }
        let scale = linalg::max_abs(&gram).max(T::one());
        let asym = linalg::max_abs(&(&gram - gram.transpose()));
        if asym > tol * scale {
            return Err(OrbitError::Input(format!("gram matrix is not symmetric (residual {asym})")));
        }
        let gram = linalg::symmetrize(&gram);
        let eig = SymmetricEigen::new(gram.clone()).eigenvalues;
        let min_eigenvalue = eig.iter().fold(eig[0], |m, &x| m.min(x));
        let max_eigenvalue = eig.iter().fold(eig[0], |m, &x| m.max(x));
        if min_eigenvalue < -tol * scale {
            return Err(OrbitError::Input(format!(
                "gram matrix is not positive semi-definite (eigenvalue {min_eigenvalue})"
            )));
        }
        Ok(Self {
            definite: min_eigenvalue > tol * max_eigenvalue.max(T::one()),
            gram,
            min_eigenvalue,
            max_eigenvalue,
        })
    }

    pub fn identity(d: usize) -> Self {
        Self::new(DMatrix::identity(d, d), T::default_tolerance()).expect("identity is definite")
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &DMatrix<T> {
        &self.gram
    }

    pub fn definite(&self) -> bool {
        self.definite
    }

    pub fn min_eigenvalue(&self) -> T {
        self.min_eigenvalue
    }

    pub fn max_eigenvalue(&self) -> T {
        self.max_eigenvalue
    }

    /// Gram matrix of `h(C ·, C ·)`, i.e. `Cᵀ G C`.
    pub fn pullback(&self, c: &DMatrix<T>, tol: T) -> Result<Self> {
        if c.nrows() != self.dim() {
            return Err(OrbitError::InputShape(format!(
                "map has {} rows, form has dim {}",
                c.nrows(),
                self.dim()
            )));
        }
        Self::new(c.transpose() * &self.gram * c, tol)
    }

    pub fn scaled(&self, c: T, tol: T) -> Result<Self> {
        Self::new(&self.gram * c, tol)
    }
}

/// `{"dim": int, "gram": [[number]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InnerProductJson {
    pub dim: usize,
    pub gram: Vec<Vec<f64>>,
}

impl InnerProductJson {
    pub fn into_inner_product<T: Scalar>(self, tol: T) -> Result<InnerProductData<T>> {
        if self.gram.len() != self.dim || self.gram.iter().any(|r| r.len() != self.dim) {
            return Err(OrbitError::Format {
                field: "gram".into(),
                message: format!("expected a {0}x{0} array", self.dim),
            });
        }
        let m = DMatrix::from_fn(self.dim, self.dim, |i, j| T::lit(self.gram[i][j]));
        InnerProductData::new(m, tol)
    }

    pub fn from_inner_product<T: Scalar>(h: &InnerProductData<T>) -> Self {
        let d = h.dim();
        Self {
            dim: d,
            gram: (0..d).map(|i| (0..d).map(|j| h.gram()[(i, j)].as_f64()).collect()).collect(),
        }
    }
}

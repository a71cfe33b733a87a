use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{OrbitError, Result};
use crate::liealg::{LieAlgebraData, LinearMapData};
use crate::linalg;
use crate::subspace::Subspace;
use crate::Scalar;

/// A validated Cartan involution with its eigenspaces `l = k ⊕ p` and the
/// inner product `B_θ(X, Y) = −B(X, θY)`.
#[derive(Debug, Clone)]
pub struct CartanData<T: Scalar> {
    pub algebra: LieAlgebraData<T>,
    pub theta: LinearMapData<T>,
    pub k: Subspace<T>,
    pub p: Subspace<T>,
    pub killing: DMatrix<T>,
    pub b_theta: DMatrix<T>,
}

fn reject<T: Scalar>(invariant: &str, residual: T) -> OrbitError {
    OrbitError::CartanValidation {
        invariant: invariant.into(),
        residual: residual.as_f64(),
    }
}

/// Checks every Cartan-involution invariant and extracts `k`, `p`, `B_θ`.
pub fn validate_cartan<T: Scalar>(l: &LieAlgebraData<T>, theta: &LinearMapData<T>) -> Result<CartanData<T>> {
    let n = l.dim();
    if theta.dim() != n {
        return Err(OrbitError::InputShape(format!(
            "involution is {}x{}, algebra has dim {n}",
            theta.dim(),
            theta.dim()
        )));
    }
    if !l.is_semisimple()? {
        return Err(OrbitError::Precondition(
            "Cartan involutions are only defined here for semisimple algebras".into(),
        ));
    }
    let tol = l.tolerance();
    let t = &theta.matrix;
    let tscale = linalg::max_abs(t).max(T::one());

    let sq = (t * t - DMatrix::identity(n, n)).norm();
    if sq > tol * tscale * tscale {
        return Err(reject("theta^2 = Id", sq));
    }
    let aut = l.automorphism_residual(t);
    if aut > tol * l.scale() * tscale * tscale {
        return Err(reject("theta[X,Y] = [theta X, theta Y]", aut));
    }

    let id = DMatrix::identity(n, n);
    let k = Subspace::from_orthonormal(linalg::null_space(&(t - &id), tol));
    let p = Subspace::from_orthonormal(linalg::null_space(&(t + &id), tol));
    if k.rank() + p.rank() != n {
        return Err(reject(
            "dim k + dim p = dim l",
            T::from_usize(n.abs_diff(k.rank() + p.rank())).expect("usize"),
        ));
    }
    let btol = tol * l.scale();
    for (name, a, b, target) in [
        ("[k,k] in k", &k, &k, &k),
        ("[k,p] in p", &k, &p, &p),
        ("[p,p] in k", &p, &p, &k),
    ] {
        let span = l.bracket_span(a, b);
        let worst = span
            .vectors()
            .iter()
            .fold(T::zero(), |m, v| m.max(target.residual(v)));
        if worst > btol {
            return Err(reject(name, worst));
        }
    }

    let killing = l.killing_form();
    let raw = -(&killing * t);
    let asym = (&raw - raw.transpose()).norm();
    if asym > tol * l.scale() * killing.norm().max(T::one()) {
        return Err(reject("B_theta symmetric", asym));
    }
    let b_theta = linalg::symmetrize(&raw);
    let eig = SymmetricEigen::new(b_theta.clone()).eigenvalues;
    let largest = eig.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
    let smallest = eig.iter().fold(largest, |m, &x| m.min(x));
    if smallest <= tol * largest.max(T::one()) {
        return Err(reject("B_theta positive definite", smallest));
    }

    Ok(CartanData {
        algebra: l.clone(),
        theta: theta.clone(),
        k,
        p,
        killing,
        b_theta,
    })
}

impl<T: Scalar> CartanData<T> {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn tolerance(&self) -> T {
        self.algebra.tolerance()
    }

    /// Simple ideals on which the Killing form is negative definite.
    pub fn compact_ideals(&self) -> Result<Vec<Subspace<T>>> {
        let tol = self.tolerance();
        Ok(self
            .algebra
            .simple_ideals()?
            .into_iter()
            .filter(|ideal| {
                let q = ideal.basis();
                let restricted = q.transpose() * &self.killing * q;
                let eig = SymmetricEigen::new(restricted).eigenvalues;
                let largest = eig.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
                eig.iter().all(|&x| x <= tol * largest.max(T::one()))
            })
            .collect())
    }
}

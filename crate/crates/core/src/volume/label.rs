use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::WeightVector;
use crate::error::{OrbitError, Result};
use crate::liealg::LieAlgebraData;
use crate::linalg;
use crate::Scalar;

/// Stratum label `β` and `β⁺ = β / tr β² + Id`.
#[derive(Debug, Clone, PartialEq)]
pub struct StratumLabel<T: Scalar> {
    pub beta: DMatrix<T>,
    pub beta_plus: DMatrix<T>,
}

pub fn beta_plus_from_beta<T: Scalar>(beta: &DMatrix<T>, tol: T) -> Result<StratumLabel<T>> {
    if !beta.is_square() || beta.nrows() == 0 {
        return Err(OrbitError::InputShape(format!("beta is {}x{}", beta.nrows(), beta.ncols())));
    }
    if beta.iter().any(|x| !x.is_finite()) {
        return Err(OrbitError::Input("beta has non-finite entries".into()));
    }
    let scale = linalg::max_abs(beta).max(T::one());
    if linalg::max_abs(&(beta - beta.transpose())) > tol * scale {
        return Err(OrbitError::Input("beta is not symmetric".into()));
    }
    let beta = linalg::symmetrize(beta);
    let d = beta.nrows();
    let tr2 = (&beta * &beta).trace();
    if tr2 <= tol {
        return Err(OrbitError::Input(format!("trace(beta^2) = {tr2} vanishes")));
    }
    let beta_plus = &beta / tr2 + DMatrix::identity(d, d);
    let eig = SymmetricEigen::new(beta_plus.clone()).eigenvalues;
    let smallest = eig.iter().fold(eig[0], |m, &x| m.min(x));
    if smallest <= tol {
        return Err(OrbitError::Stratum(format!(
            "beta_plus is not positive definite (eigenvalue {smallest})"
        )));
    }
    let label = StratumLabel { beta, beta_plus };
    let consistency = (label.beta_plus.trace() - label.beta.trace() / tr2 - T::from_usize(d).expect("usize")).abs();
    if consistency > tol * scale {
        return Err(OrbitError::Stratum(format!("trace identity fails by {consistency}")));
    }
    Ok(label)
}

impl<T: Scalar> StratumLabel<T> {
    pub fn dim(&self) -> usize {
        self.beta.nrows()
    }

    /// Curated label of the Heisenberg algebra of dimension `2m + 1`:
    /// `β = diag(−1/m, …, −1/m, 1)`, so that `β⁺ ∝ diag(1, …, 1, 2)` and
    /// `tr β = −1`. For `m = 1` this is `diag(−1, −1, 1)`.
    pub fn heisenberg(dim: usize) -> Result<Self> {
        if dim < 3 || dim % 2 == 0 {
            return Err(OrbitError::Input(format!(
                "heisenberg dimension must be odd and >= 3, got {dim}"
            )));
        }
        let m = T::from_usize((dim - 1) / 2).expect("usize");
        let mut diag = vec![-T::one() / m; dim - 1];
        diag.push(T::one());
        beta_plus_from_beta(
            &DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag)),
            T::default_tolerance(),
        )
    }

    /// Weights of `β⁺ + shift·Id` in nondecreasing order with the frame
    /// (columns) in which they are diagonal. A diagonal `β` keeps the
    /// coordinate basis, stably reordered.
    pub fn weight_frame(&self, shift: T, tol: T) -> Result<(WeightVector<T>, DMatrix<T>)> {
        let d = self.dim();
        let off = (0..d)
            .flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |m, (i, j)| m.max(self.beta_plus[(i, j)].abs()));
        let (values, vectors) = if off == T::zero() {
            (
                (0..d).map(|i| self.beta_plus[(i, i)]).collect::<Vec<_>>(),
                DMatrix::identity(d, d),
            )
        } else {
            let e = SymmetricEigen::new(self.beta_plus.clone());
            (e.eigenvalues.iter().cloned().collect(), e.eigenvectors)
        };
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite"));
        let mut frame = DMatrix::zeros(d, d);
        for (k, &i) in order.iter().enumerate() {
            frame.set_column(k, &vectors.column(i));
        }
        let w = WeightVector::new(order.iter().map(|&i| values[i] + shift).collect(), tol)?;
        Ok((w, frame))
    }

    /// `β⁺ ∈ Der(n)` within the algebra's tolerance.
    pub fn beta_plus_is_derivation(&self, algebra: &LieAlgebraData<T>) -> bool {
        algebra.dim() == self.dim() && algebra.is_derivation(&self.beta_plus)
    }
}

/// `{"beta": [[number]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumJson {
    pub beta: Vec<Vec<f64>>,
}

impl StratumJson {
    pub fn into_label<T: Scalar>(self, tol: T) -> Result<StratumLabel<T>> {
        let d = self.beta.len();
        if self.beta.iter().any(|r| r.len() != d) {
            return Err(OrbitError::Format {
                field: "beta".into(),
                message: format!("expected a {d}x{d} array"),
            });
        }
        beta_plus_from_beta(&DMatrix::from_fn(d, d, |i, j| T::lit(self.beta[i][j])), tol)
    }
}

/// `{"weights": [number]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsJson {
    pub weights: Vec<f64>,
}

impl WeightsJson {
    pub fn into_weights<T: Scalar>(self, tol: T) -> Result<WeightVector<T>> {
        WeightVector::new(self.weights.into_iter().map(T::lit).collect(), tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::DVector;

    #[test]
    fn heisenberg_beta_plus() {
        let beta = DMatrix::from_diagonal(&DVector::from_column_slice(&[-1.0, -1.0, 1.0]));
        let l = beta_plus_from_beta(&beta, 1e-12).unwrap();
        let expected = DMatrix::from_diagonal(&DVector::from_column_slice(&[2.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0]));
        assert_relative_eq!(l.beta_plus, expected, epsilon = 1e-15);
        assert_eq!(StratumLabel::<f64>::heisenberg(3).unwrap(), l);
    }

    #[test]
    fn identity_beta() {
        for d in 2..6 {
            let l = beta_plus_from_beta(&DMatrix::<f64>::identity(d, d), 1e-12).unwrap();
            let c = 1.0 / d as f64 + 1.0;
            assert_relative_eq!(l.beta_plus, DMatrix::identity(d, d) * c, epsilon = 1e-15);
        }
    }

    #[test]
    fn zero_beta_is_an_input_error() {
        assert!(matches!(
            beta_plus_from_beta(&DMatrix::<f64>::zeros(3, 3), 1e-12),
            Err(OrbitError::Input(_))
        ));
    }

    #[test]
    fn indefinite_beta_plus_is_a_stratum_error() {
        // β = diag(−1, 0): tr β² = 1, β⁺ = diag(0, 1)
        let beta = DMatrix::from_diagonal(&DVector::from_column_slice(&[-1.0, 0.0]));
        assert!(matches!(beta_plus_from_beta(&beta, 1e-12), Err(OrbitError::Stratum(_))));
    }

    #[test]
    fn higher_heisenberg_labels_are_derivations() {
        for dim in [3, 5, 7] {
            let l = StratumLabel::<f64>::heisenberg(dim).unwrap();
            let alg = crate::semisimple::builtin::heisenberg::<f64>(dim).unwrap().algebra;
            assert!(l.beta_plus_is_derivation(&alg));
            assert_relative_eq!(l.beta.trace(), -1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn frame_sorts_weights() {
        let beta = DMatrix::from_diagonal(&DVector::from_column_slice(&[1.0, -1.0, -1.0]));
        let l = beta_plus_from_beta(&beta, 1e-12).unwrap();
        let (w, frame) = l.weight_frame(0.0, 1e-12).unwrap();
        assert_eq!(w.blocks(), &[0..2, 2..3]);
        assert_eq!(frame.column(2).into_owned(), DVector::from_column_slice(&[1.0, 0.0, 0.0]));
    }
}

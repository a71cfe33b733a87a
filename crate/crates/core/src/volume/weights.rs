use std::ops::Range;

use nalgebra::DMatrix;

use crate::error::{OrbitError, Result};
use crate::Scalar;

/// Diagonal weights `W = diag(w_1, …, w_d)` with the flag of consecutive
/// equal-weight blocks that defines `G_W`, `U_W`, `Q_W` and `K_W`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector<T: Scalar> {
    weights: Vec<T>,
    blocks: Vec<Range<usize>>,
}

impl<T: Scalar> WeightVector<T> {
    /// Weights must be finite and nondecreasing; `|w_i − w_j| ≤ tol` puts
    /// neighbours in one block.
    pub fn new(weights: Vec<T>, tol: T) -> Result<Self> {
        if weights.is_empty() {
            return Err(OrbitError::Input("weight vector is empty".into()));
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(OrbitError::Input("weights must be finite".into()));
        }
        for (i, pair) in weights.windows(2).enumerate() {
            if pair[1] < pair[0] - tol {
                return Err(OrbitError::Input(format!(
                    "weights must be nondecreasing: w[{i}] = {} > w[{}] = {}",
                    pair[0],
                    i + 1,
                    pair[1]
                )));
            }
        }
        let mut blocks = Vec::new();
        let mut start = 0;
        for i in 1..=weights.len() {
            if i == weights.len() || (weights[i] - weights[start]).abs() > tol {
                blocks.push(start..i);
                start = i;
            }
        }
        Ok(Self { weights, blocks })
    }

    /// `W = Id`.
    pub fn ones(d: usize) -> Self {
        Self::new(vec![T::one(); d], T::zero()).expect("constant weights")
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&i)).expect("index in range")
    }

    /// `−W` on the flag of `W`. The weights then decrease; `det_{−W}` is
    /// still taken on `Q_W`.
    pub fn negated(&self) -> Self {
        Self {
            weights: self.weights.iter().map(|&w| -w).collect(),
            blocks: self.blocks.clone(),
        }
    }

    /// `W1 + W2` on the common refinement of both flags.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(OrbitError::InputShape(format!(
                "weight vectors of length {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        let weights: Vec<T> = self.weights.iter().zip(&other.weights).map(|(&a, &b)| a + b).collect();
        let mut blocks = Vec::new();
        let mut start = 0;
        for i in 1..=weights.len() {
            if i == weights.len() || self.block_of(i) != self.block_of(start) || other.block_of(i) != other.block_of(start) {
                blocks.push(start..i);
                start = i;
            }
        }
        Ok(Self { weights, blocks })
    }

    pub fn all_positive(&self) -> bool {
        self.weights.iter().all(|&w| w > T::zero())
    }

    pub fn sum(&self) -> T {
        self.weights.iter().fold(T::zero(), |s, &w| s + w)
    }

    pub fn matrix(&self) -> DMatrix<T> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&self.weights))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_follow_equalities() {
        let w = WeightVector::new(vec![1.0, 1.0, 2.0, 3.0, 3.0], 1e-12).unwrap();
        assert_eq!(w.blocks(), &[0..2, 2..3, 3..5]);
        assert_eq!(WeightVector::<f64>::ones(4).blocks(), &[0..4]);
    }

    #[test]
    fn decreasing_weights_are_rejected() {
        assert!(WeightVector::new(vec![2.0, 1.0], 1e-12).is_err());
    }

    #[test]
    fn sum_refines_flags() {
        let a = WeightVector::new(vec![1.0, 1.0, 2.0], 1e-12).unwrap();
        let b = WeightVector::new(vec![0.0, 1.0, 1.0], 1e-12).unwrap();
        assert_eq!(a.add(&b).unwrap().blocks(), &[0..1, 1..2, 2..3]);
    }
}

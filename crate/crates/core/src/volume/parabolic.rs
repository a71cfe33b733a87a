//! The parabolic group `Q_W = G_W U_W`, its Lie algebra `q_W`, and the
//! weighted trace and determinant.

use nalgebra::DMatrix;

use super::WeightVector;
use crate::error::{OrbitError, Result};
use crate::linalg;
use crate::Scalar;

/// Result of testing `q ∈ Q_W`; when it holds, `q = g·u` with `g ∈ G_W`
/// block diagonal and `u ∈ U_W` block-lower unipotent.
#[derive(Debug, Clone, PartialEq)]
pub struct ParabolicMembership<T: Scalar> {
    pub in_q: bool,
    pub g_part: DMatrix<T>,
    pub u_part: DMatrix<T>,
}

fn check_shape<T: Scalar>(a: &DMatrix<T>, w: &WeightVector<T>) -> Result<()> {
    if !a.is_square() || a.nrows() != w.dim() {
        return Err(OrbitError::InputShape(format!(
            "matrix is {}x{}, weights have length {}",
            a.nrows(),
            a.ncols(),
            w.dim()
        )));
    }
    Ok(())
}

/// Largest entry above the block diagonal of the flag of `w`.
fn upper_block_residual<T: Scalar>(a: &DMatrix<T>, w: &WeightVector<T>) -> T {
    let mut worst = T::zero();
    for (bi, rows) in w.blocks().iter().enumerate() {
        for cols in &w.blocks()[bi + 1..] {
            for i in rows.clone() {
                for j in cols.clone() {
                    worst = worst.max(a[(i, j)].abs());
                }
            }
        }
    }
    worst
}

/// `g = diag(q_11, …, q_ll)` in blocks.
fn block_diagonal<T: Scalar>(a: &DMatrix<T>, w: &WeightVector<T>) -> DMatrix<T> {
    let mut g = DMatrix::zeros(a.nrows(), a.ncols());
    for b in w.blocks() {
        let (s, n) = (b.start, b.len());
        g.view_mut((s, s), (n, n)).copy_from(&a.view((s, s), (n, n)));
    }
    g
}

pub fn in_lie_algebra_q<T: Scalar>(a: &DMatrix<T>, w: &WeightVector<T>, tol: T) -> Result<bool> {
    check_shape(a, w)?;
    Ok(upper_block_residual(a, w) <= tol * linalg::max_abs(a).max(T::one()))
}

pub fn parabolic_membership<T: Scalar>(q: &DMatrix<T>, w: &WeightVector<T>, tol: T) -> Result<ParabolicMembership<T>> {
    check_shape(q, w)?;
    let singular = || OrbitError::Input("matrix is singular".into());
    if linalg::rank(q, tol) < q.nrows() {
        return Err(singular());
    }
    let in_q = upper_block_residual(q, w) <= tol * linalg::max_abs(q).max(T::one());
    let g_part = block_diagonal(q, w);
    let u_part = if in_q {
        let gi = g_part.clone().try_inverse().ok_or_else(singular)?;
        let mut u = gi * q;
        // exact block structure of U_W
        for (bi, rows) in w.blocks().iter().enumerate() {
            for (bj, cols) in w.blocks().iter().enumerate() {
                for i in rows.clone() {
                    for j in cols.clone() {
                        if bj > bi {
                            u[(i, j)] = T::zero();
                        } else if bj == bi {
                            u[(i, j)] = if i == j { T::one() } else { T::zero() };
                        }
                    }
                }
            }
        }
        u
    } else {
        DMatrix::zeros(q.nrows(), q.ncols())
    };
    Ok(ParabolicMembership { in_q, g_part, u_part })
}

/// `tr_W(A) = tr(A W)` on `q_W`.
pub fn tr_weighted<T: Scalar>(a: &DMatrix<T>, w: &WeightVector<T>, tol: T) -> Result<T> {
    if !in_lie_algebra_q(a, w, tol)? {
        return Err(OrbitError::Precondition("matrix is not block-lower-triangular for the weight flag".into()));
    }
    Ok((0..w.dim()).fold(T::zero(), |s, i| s + a[(i, i)] * w.weights()[i]))
}

/// `det_W(q) = Π_blocks |det g_i|^{w_i}` for `q = g·u ∈ Q_W`.
pub fn det_weighted<T: Scalar>(q: &DMatrix<T>, w: &WeightVector<T>, tol: T) -> Result<T> {
    let m = parabolic_membership(q, w, tol)?;
    if !m.in_q {
        return Err(OrbitError::Precondition("matrix is not in the parabolic group Q_W".into()));
    }
    Ok(det_of_blocks(q, w))
}

/// Product formula without the membership test; `q` is assumed to lie in
/// `Q_W`.
pub(crate) fn det_of_blocks<T: Scalar>(q: &DMatrix<T>, w: &WeightVector<T>) -> T {
    // Σ w_b log|det g_b| keeps wide weight ranges away from overflow
    let mut log = T::zero();
    for b in w.blocks() {
        let (s, n) = (b.start, b.len());
        let det = q.view((s, s), (n, n)).into_owned().determinant().abs();
        log += w.weights()[s] * det.ln();
    }
    log.exp()
}

//! Lower-triangular gauge fixing and the weighted volume densities `v_W`,
//! `v_N`, `v_{β⁺}`.

use nalgebra::DMatrix;
use serde::Serialize;

use super::parabolic::det_of_blocks;
use super::{InnerProductData, StratumLabel, WeightVector};
use crate::error::{OrbitError, Result};
use crate::liealg::{LieAlgebraData, LinearMapData};
use crate::Scalar;

/// `q` lower triangular with positive diagonal such that `h = q·h̄`, i.e.
/// `gram(h) = (q qᵀ)⁻¹` in a background-orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularGauge<T: Scalar> {
    q: DMatrix<T>,
}

impl<T: Scalar> TriangularGauge<T> {
    pub fn new(q: DMatrix<T>) -> Result<Self> {
        if !q.is_square() {
            return Err(OrbitError::InputShape(format!("gauge is {}x{}", q.nrows(), q.ncols())));
        }
        for i in 0..q.nrows() {
            if !(q[(i, i)] > T::zero()) {
                return Err(OrbitError::Input(format!("gauge diagonal entry {i} is not positive")));
            }
            for j in (i + 1)..q.ncols() {
                if q[(i, j)] != T::zero() {
                    return Err(OrbitError::Input(format!("gauge entry ({i},{j}) above the diagonal")));
                }
            }
        }
        Ok(Self { q })
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.q
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.q.nrows()).map(|i| self.q[(i, i)]).collect()
    }
}

fn check_order(order: &[usize], d: usize) -> Result<()> {
    let mut seen = vec![false; d];
    if order.len() != d {
        return Err(OrbitError::InputShape(format!("basis order has length {}, expected {d}", order.len())));
    }
    for &i in order {
        if i >= d || seen[i] {
            return Err(OrbitError::Input(format!("basis order {order:?} is not a permutation")));
        }
        seen[i] = true;
    }
    Ok(())
}

/// Gram matrix of `h` in the background-orthonormal basis obtained by
/// Gram–Schmidt (Cholesky) on the reordered basis `e_{order[0]}, …`.
fn normalized_gram<T: Scalar>(
    h: &InnerProductData<T>,
    background: &InnerProductData<T>,
    order: &[usize],
) -> Result<DMatrix<T>> {
    let d = h.dim();
    if background.dim() != d {
        return Err(OrbitError::InputShape(format!(
            "inner product has dim {d}, background has dim {}",
            background.dim()
        )));
    }
    check_order(order, d)?;
    if !background.definite() {
        return Err(OrbitError::Precondition("background inner product is not definite".into()));
    }
    let perm = |g: &DMatrix<T>| DMatrix::from_fn(d, d, |i, j| g[(order[i], order[j])]);
    let g = perm(h.gram());
    let b = perm(background.gram());
    let l = b
        .cholesky()
        .ok_or_else(|| OrbitError::Precondition("background inner product is not definite".into()))?
        .l();
    let li = l
        .solve_lower_triangular(&DMatrix::identity(d, d))
        .ok_or_else(|| OrbitError::AlgorithmFailure("singular background factor".into()))?;
    Ok(crate::linalg::symmetrize(&(&li * g * li.transpose())))
}

fn reverse<T: Scalar>(d: usize) -> DMatrix<T> {
    DMatrix::from_fn(d, d, |i, j| if i + j + 1 == d { T::one() } else { T::zero() })
}

/// Lower-triangular `q` with `G = (q qᵀ)⁻¹`: factor `J G J = L Lᵀ`
/// (`J` the order-reversing permutation), so `G = Rᵀ R` with `R = J Lᵀ J`
/// lower triangular, and `q = R⁻¹`. This is Gram–Schmidt run from the
/// last basis vector backwards.
fn triangular_factor<T: Scalar>(g: &DMatrix<T>) -> Option<DMatrix<T>> {
    let d = g.nrows();
    let j: DMatrix<T> = reverse(d);
    let l = (&j * g * &j).cholesky()?.l();
    let r = &j * l.transpose() * &j;
    let mut q = r.solve_lower_triangular(&DMatrix::identity(d, d))?;
    for i in 0..d {
        for k in (i + 1)..d {
            q[(i, k)] = T::zero();
        }
    }
    Some(q)
}

/// Canonical gauge of a definite `h` relative to `background`, in the basis
/// order `order` (a permutation of `0..d`).
pub fn gauge_lower_triangular<T: Scalar>(
    h: &InnerProductData<T>,
    background: &InnerProductData<T>,
    order: &[usize],
    tol: T,
) -> Result<TriangularGauge<T>> {
    let g = normalized_gram(h, background, order)?;
    let rel = InnerProductData::new(g.clone(), tol)?;
    if !rel.definite() {
        return Err(OrbitError::Degenerate {
            min_eigenvalue: rel.min_eigenvalue().as_f64(),
        });
    }
    let q = triangular_factor(&g).ok_or(OrbitError::Degenerate {
        min_eigenvalue: rel.min_eigenvalue().as_f64(),
    })?;
    let d = g.nrows();
    let residual = (q.transpose() * &g * &q - DMatrix::identity(d, d)).norm();
    let cond = rel.max_eigenvalue() / rel.min_eigenvalue();
    if residual > tol * cond.max(T::one()) {
        return Err(OrbitError::AlgorithmFailure(format!(
            "gauge reconstruction residual {residual} exceeds tolerance"
        )));
    }
    TriangularGauge::new(q)
}

/// `v_W(h)` together with the data a report needs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedVolume {
    pub value: f64,
    /// Diagonal of the gauge; empty on the degenerate branch.
    pub gauge_diag: Vec<f64>,
    pub degenerate: bool,
    /// `h` is classified degenerate although its smallest eigenvalue is
    /// positive (it lies in `(0, tol]` relative to the largest).
    pub near_degenerate: bool,
    /// All weights positive, so that `v_W` is continuous up to the boundary.
    pub positive_weights: bool,
}

pub fn weighted_volume<T: Scalar>(
    h: &InnerProductData<T>,
    background: &InnerProductData<T>,
    w: &WeightVector<T>,
    order: &[usize],
    tol: T,
) -> Result<(T, WeightedVolume)> {
    if w.dim() != h.dim() {
        return Err(OrbitError::InputShape(format!(
            "weights have length {}, inner product has dim {}",
            w.dim(),
            h.dim()
        )));
    }
    let positive_weights = w.all_positive();
    match gauge_lower_triangular(h, background, order, tol) {
        Ok(gauge) => {
            let v = det_of_blocks(gauge.matrix(), &w.negated());
            Ok((
                v,
                WeightedVolume {
                    value: v.as_f64(),
                    gauge_diag: gauge.diagonal().iter().map(|x| x.as_f64()).collect(),
                    degenerate: false,
                    near_degenerate: false,
                    positive_weights,
                },
            ))
        }
        Err(OrbitError::Degenerate { min_eigenvalue }) => Ok((
            T::zero(),
            WeightedVolume {
                value: 0.0,
                gauge_diag: Vec::new(),
                degenerate: true,
                near_degenerate: min_eigenvalue > 0.0,
                positive_weights,
            },
        )),
        Err(e) => Err(e),
    }
}

/// `v_W(h) = det_{−W}(q)` for the canonical gauge `q`, and `0` when `h` is
/// degenerate.
pub fn v_weighted<T: Scalar>(
    h: &InnerProductData<T>,
    background: &InnerProductData<T>,
    w: &WeightVector<T>,
    tol: T,
) -> Result<T> {
    let order: Vec<usize> = (0..h.dim()).collect();
    Ok(weighted_volume(h, background, w, &order, tol)?.0)
}

/// `v_N(h) = sqrt(det gram(h))`.
pub fn orbit_density_vn<T: Scalar>(h: &InnerProductData<T>) -> T {
    h.gram().determinant().max(T::zero()).sqrt()
}

/// `v_{β⁺ + shift·Id}`: the density for the weights of the label in its
/// eigenframe.
pub fn v_label<T: Scalar>(
    h: &InnerProductData<T>,
    background: &InnerProductData<T>,
    label: &StratumLabel<T>,
    shift: T,
    tol: T,
) -> Result<(T, WeightedVolume)> {
    let (w, frame) = label.weight_frame(shift, tol)?;
    let hf = h.pullback(&frame, tol)?;
    let bf = background.pullback(&frame, tol)?;
    let order: Vec<usize> = (0..h.dim()).collect();
    weighted_volume(&hf, &bf, &w, &order, tol)
}

/// `v_{β⁺}(φ·h)` against `|det φ|⁻¹ v_{β⁺}(h)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivarianceCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

pub fn equivariance_check<T: Scalar>(
    h: &InnerProductData<T>,
    phi: &LinearMapData<T>,
    algebra: &LieAlgebraData<T>,
    label: &StratumLabel<T>,
    background: &InnerProductData<T>,
    tol: T,
) -> Result<EquivarianceCheck> {
    let d = algebra.dim();
    if phi.dim() != d || h.dim() != d {
        return Err(OrbitError::InputShape(format!(
            "map has dim {}, inner product {}, algebra {d}",
            phi.dim(),
            h.dim()
        )));
    }
    if !algebra.is_automorphism(&phi.matrix) {
        return Err(OrbitError::Precondition(format!("`{}` is not an automorphism", phi.description)));
    }
    if !h.definite() {
        return Err(OrbitError::Precondition("inner product is not definite".into()));
    }
    let inv = phi
        .matrix
        .clone()
        .try_inverse()
        .ok_or_else(|| OrbitError::Precondition("map is singular".into()))?;
    let h2 = h.pullback(&inv, tol)?;
    let (lhs, _) = v_label(&h2, background, label, T::zero(), tol)?;
    let (v, _) = v_label(h, background, label, T::zero(), tol)?;
    let rhs = v / phi.matrix.determinant().abs();
    let scale = lhs.abs().max(rhs.abs()).max(T::one());
    Ok(EquivarianceCheck {
        lhs: lhs.as_f64(),
        rhs: rhs.as_f64(),
        pass: (lhs - rhs).abs() <= tol * scale,
    })
}

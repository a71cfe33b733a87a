//! Maximal abelian subspaces of `p` and restricted-root decompositions.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::CartanData;
use crate::error::{OrbitError, Result};
use crate::linalg;
use crate::rng::{self, RETRIES};
use crate::subspace::Subspace;
use crate::Scalar;

/// One restricted root: its functional on `a` (in the orthonormal basis of
/// `a`) and its root space.
#[derive(Debug, Clone)]
pub struct RestrictedRoot<T: Scalar> {
    pub functional: DVector<T>,
    pub space: Subspace<T>,
    pub multiplicity: usize,
}

/// Nonzero restricted roots together with the joint kernel `l_0`.
#[derive(Debug, Clone)]
pub struct RootDecomposition<T: Scalar> {
    pub roots: Vec<RestrictedRoot<T>>,
    pub l0: Subspace<T>,
}

/// `a = Z_p(A)` for a random `A ∈ p`, verified abelian and maximal.
pub fn maximal_abelian_subspace<T: Scalar>(c: &CartanData<T>, seed: u64) -> Result<Subspace<T>> {
    let l = &c.algebra;
    let mut rng = rng::seeded(seed);
    for _ in 0..RETRIES {
        let x = rng::element_of(&mut rng, c.p.basis());
        let span = Subspace::span_of(l.dim(), &[x], l.tolerance());
        let a = l.centralizer(&span, &c.p);
        if a.is_zero() {
            continue;
        }
        let abelian = l.bracket_span(&a, &a).is_zero();
        let maximal = l.centralizer(&a, &c.p).same_as(&a, l.tolerance() * l.scale());
        if abelian && maximal {
            return Ok(a);
        }
    }
    Err(OrbitError::AlgorithmFailure(format!(
        "no maximal abelian subspace of p found in {RETRIES} random draws"
    )))
}

/// Simultaneous eigendecomposition of `{ad A : A ∈ a}`.
///
/// Each `ad A` is `B_θ`-symmetric, so after passing to a `B_θ`-orthonormal
/// frame a generic combination is a symmetric matrix whose eigenvectors are
/// joint eigenvectors. Joint eigenvalues are clustered with radius
/// `10 × tolerance` (scaled by the operator norm).
pub fn restricted_roots<T: Scalar>(c: &CartanData<T>, a: &Subspace<T>, seed: u64) -> Result<RootDecomposition<T>> {
    let l = &c.algebra;
    let n = l.dim();
    let tol = l.tolerance();
    let chol = c
        .b_theta
        .clone()
        .cholesky()
        .ok_or_else(|| OrbitError::Precondition("B_theta is not positive definite".into()))?;
    let lower = chol.l();
    let lower_inv_t = lower
        .clone()
        .try_inverse()
        .ok_or_else(|| OrbitError::AlgorithmFailure("singular B_theta factor".into()))?
        .transpose();
    let sym: Vec<DMatrix<T>> = a
        .vectors()
        .iter()
        .map(|v| linalg::symmetrize(&(lower.transpose() * l.ad(v) * &lower_inv_t)))
        .collect();
    let scale = sym.iter().fold(T::one(), |m, s| m.max(s.norm()));
    let radius = T::lit(10.0) * tol * scale;

    let mut rng = rng::seeded(seed);
    let mut last = String::new();
    for _ in 0..RETRIES {
        let coeffs: DVector<T> = rng::vector(&mut rng, sym.len());
        let mut generic = DMatrix::zeros(n, n);
        for (s, &w) in sym.iter().zip(coeffs.iter()) {
            generic += s * w;
        }
        let eig = SymmetricEigen::new(generic);
        let joint: Vec<DVector<T>> = eig
            .eigenvectors
            .column_iter()
            .map(|v| DVector::from_iterator(sym.len(), sym.iter().map(|s| v.dot(&(s * v)))))
            .collect();
        let clusters = match cluster(&joint, radius) {
            Ok(cl) => cl,
            Err(e) => {
                last = e;
                continue;
            }
        };
        let mut roots = Vec::new();
        let mut l0 = Subspace::zero(n);
        let mut ok = true;
        for members in clusters {
            let mut mean = DVector::zeros(sym.len());
            for &m in &members {
                mean += &joint[m];
            }
            mean /= T::from_usize(members.len()).expect("usize");
            let cols: Vec<DVector<T>> = members
                .iter()
                .map(|&m| &lower_inv_t * eig.eigenvectors.column(m))
                .collect();
            let space = Subspace::span_of(n, &cols, tol);
            if space.rank() != members.len() || !joint_eigenspace(l, a, &space, &mean, tol * scale) {
                ok = false;
                last = "cluster is not a joint eigenspace".into();
                break;
            }
            if mean.norm() <= radius {
                l0 = space;
            } else {
                roots.push(RestrictedRoot {
                    functional: mean,
                    multiplicity: members.len(),
                    space,
                });
            }
        }
        if !ok {
            continue;
        }
        roots.sort_by(|x, y| {
            for (p, q) in x.functional.iter().zip(y.functional.iter()) {
                if (*p - *q).abs() > radius {
                    return q.partial_cmp(p).expect("finite");
                }
            }
            std::cmp::Ordering::Equal
        });
        return Ok(RootDecomposition { roots, l0 });
    }
    Err(OrbitError::Clustering(format!(
        "restricted-root clustering failed after {RETRIES} generic combinations: {last}"
    )))
}

fn joint_eigenspace<T: Scalar>(
    l: &crate::liealg::LieAlgebraData<T>,
    a: &Subspace<T>,
    space: &Subspace<T>,
    functional: &DVector<T>,
    tol: T,
) -> bool {
    a.vectors().iter().zip(functional.iter()).all(|(h, &lambda)| {
        let adh = l.ad(h);
        space
            .vectors()
            .iter()
            .all(|v| (&adh * v - v * lambda).norm() <= tol.sqrt())
    })
}

/// Single-linkage clustering; a cross-cluster gap under `100 × radius` is
/// reported as ambiguous.
fn cluster<T: Scalar>(points: &[DVector<T>], radius: T) -> std::result::Result<Vec<Vec<usize>>, String> {
    let n = points.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (&points[i] - &points[j]).norm() <= radius {
                let (ri, rj) = (find(&mut label, i), find(&mut label, j));
                label[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut label, i)).collect();
    let mut smallest_gap: Option<T> = None;
    for i in 0..n {
        for j in (i + 1)..n {
            if roots[i] != roots[j] {
                let d = (&points[i] - &points[j]).norm();
                smallest_gap = Some(smallest_gap.map_or(d, |g: T| g.min(d)));
            }
        }
    }
    if let Some(g) = smallest_gap {
        if g <= radius * T::lit(100.0) {
            return Err(format!(
                "smallest gap between clusters is {:.3e}, clustering radius {:.3e}",
                g.as_f64(),
                radius.as_f64()
            ));
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, r) in roots.into_iter().enumerate() {
        match groups.iter_mut().find(|(k, _)| *k == r) {
            Some((_, g)) => g.push(i),
            None => groups.push((r, vec![i])),
        }
    }
    Ok(groups.into_iter().map(|(_, g)| g).collect())
}

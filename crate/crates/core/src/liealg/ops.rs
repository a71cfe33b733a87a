//! Centralizers, normalizers and the derivation algebra, all computed as null
//! spaces of stacked linear systems.

use nalgebra::DMatrix;

use super::LieAlgebraData;
use crate::linalg;
use crate::subspace::Subspace;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceOperator {
    Centralizer,
    Normalizer,
}

/// The derivation algebra `Der(l)`, a subspace of `gl(l)` (matrices are
/// flattened column-major).
#[derive(Debug, Clone)]
pub struct Derivations<T: Scalar> {
    dim: usize,
    space: Subspace<T>,
}

impl<T: Scalar> Derivations<T> {
    pub fn space(&self) -> &Subspace<T> {
        &self.space
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    /// Basis of `Der(l)` as `dim × dim` matrices.
    pub fn matrices(&self) -> Vec<DMatrix<T>> {
        self.space
            .vectors()
            .into_iter()
            .map(|v| DMatrix::from_column_slice(self.dim, self.dim, v.as_slice()))
            .collect()
    }

    pub fn contains(&self, d: &DMatrix<T>, tol: T) -> bool {
        d.nrows() == self.dim
            && d.ncols() == self.dim
            && self
                .space
                .contains(&nalgebra::DVector::from_column_slice(d.as_slice()), tol)
    }
}

impl<T: Scalar> LieAlgebraData<T> {
    /// `{X ∈ within : [X, S] = 0}` or `{X ∈ within : [X, S] ⊆ S}`.
    pub fn subspace_operator(
        &self,
        kind: SubspaceOperator,
        s: &Subspace<T>,
        within: &Subspace<T>,
    ) -> Subspace<T> {
        let n = self.dim();
        let w = within.basis();
        if within.is_zero() {
            return Subspace::zero(n);
        }
        let complement = match kind {
            SubspaceOperator::Centralizer => DMatrix::identity(n, n),
            SubspaceOperator::Normalizer => DMatrix::identity(n, n) - s.projector(),
        };
        // [X, s] = -ad(s) X, so X = W c must satisfy P ad(s_j) W c = 0 for all j.
        let blocks: Vec<DMatrix<T>> = s
            .vectors()
            .iter()
            .map(|sj| &complement * self.ad(sj) * w)
            .collect();
        if blocks.is_empty() {
            return within.clone();
        }
        let mut stacked = DMatrix::zeros(n * blocks.len(), w.ncols());
        for (b, block) in blocks.iter().enumerate() {
            stacked.view_mut((b * n, 0), (n, w.ncols())).copy_from(block);
        }
        let coeffs = linalg::null_space(&stacked, self.tolerance());
        Subspace::span(&(w * coeffs), self.tolerance())
    }

    pub fn centralizer(&self, s: &Subspace<T>, within: &Subspace<T>) -> Subspace<T> {
        self.subspace_operator(SubspaceOperator::Centralizer, s, within)
    }

    pub fn normalizer(&self, s: &Subspace<T>, within: &Subspace<T>) -> Subspace<T> {
        self.subspace_operator(SubspaceOperator::Normalizer, s, within)
    }

    /// Basis of `{D : D[X,Y] = [DX,Y] + [X,DY]}`.
    pub fn derivations(&self) -> Derivations<T> {
        let n = self.dim();
        let unknowns = n * n;
        // unknown D[r][c] sits at r + c*n (column-major)
        let at = |r: usize, c: usize| r + c * n;
        let pairs = n * (n - 1) / 2;
        let mut sys = DMatrix::zeros(pairs * n, unknowns);
        let mut row = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                for m in 0..n {
                    for k in 0..n {
                        sys[(row, at(m, k))] += self.structure_constant(i, j, k);
                        sys[(row, at(k, i))] -= self.structure_constant(k, j, m);
                        sys[(row, at(k, j))] -= self.structure_constant(i, k, m);
                    }
                    row += 1;
                }
            }
        }
        let basis = if pairs == 0 {
            DMatrix::identity(unknowns, unknowns)
        } else {
            linalg::null_space(&sys, self.tolerance())
        };
        Derivations {
            dim: n,
            space: Subspace::from_orthonormal(basis),
        }
    }
}

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::error::{OrbitError, Result};
use crate::linalg;
use crate::subspace::Subspace;
use crate::Scalar;

/// A finite-dimensional real Lie algebra given by structure constants
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k` over a fixed basis.
///
/// The adjoint matrices are materialized at construction; the value is
/// immutable afterwards.
#[derive(Debug, Clone)]
pub struct LieAlgebraData<T: Scalar> {
    labels: Vec<String>,
    constants: Vec<T>,
    ads: Vec<DMatrix<T>>,
    tolerance: T,
    max_abs: T,
}

/// Summary of the structural predicates of an algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructureInvariants {
    pub semisimple: bool,
    pub unimodular: bool,
    pub nilpotent: bool,
    pub center_dim: usize,
}

/// A linear map on the algebra together with a human-readable description.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMapData<T: Scalar> {
    pub matrix: DMatrix<T>,
    pub description: String,
}

impl<T: Scalar> LinearMapData<T> {
    pub fn new(matrix: DMatrix<T>, description: impl Into<String>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(OrbitError::InputShape(format!(
                "linear map must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.iter().any(|x| !x.is_finite()) {
            return Err(OrbitError::Input("linear map has non-finite entries".into()));
        }
        Ok(Self {
            matrix,
            description: description.into(),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

#[inline]
fn idx(n: usize, i: usize, j: usize, k: usize) -> usize {
    (i * n + j) * n + k
}

impl<T: Scalar> LieAlgebraData<T> {
    /// Builds an algebra from a dense `dim³` array indexed `c[(i*dim + j)*dim + k]`.
    ///
    /// Antisymmetry violations beyond the tolerance are rejected; what is left
    /// is antisymmetrized. The Jacobi identity is checked, never repaired.
    pub fn from_dense(labels: Vec<String>, constants: Vec<T>, tolerance: T) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(OrbitError::Input("dimension must be positive".into()));
        }
        if constants.len() != n * n * n {
            return Err(OrbitError::InputShape(format!(
                "expected {} structure constants, got {}",
                n * n * n,
                constants.len()
            )));
        }
        if !(tolerance > T::zero()) {
            return Err(OrbitError::Input("tolerance must be positive".into()));
        }
        if constants.iter().any(|x| !x.is_finite()) {
            return Err(OrbitError::Input("non-finite structure constant".into()));
        }
        let max_abs = constants.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
        let half = T::lit(0.5);
        let mut c = vec![T::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = constants[idx(n, i, j, k)];
                    let b = constants[idx(n, j, i, k)];
                    if (a + b).abs() > tolerance * max_abs.max(T::one()) {
                        return Err(OrbitError::Format {
                            field: "brackets".into(),
                            message: format!(
                                "antisymmetry violated at ({i}, {j}, {k}): {} vs {}",
                                a, b
                            ),
                        });
                    }
                    c[idx(n, i, j, k)] = (a - b) * half;
                }
            }
        }
        let ads = (0..n)
            .map(|i| DMatrix::from_fn(n, n, |k, j| c[idx(n, i, j, k)]))
            .collect();
        let alg = Self {
            labels,
            constants: c,
            ads,
            tolerance,
            max_abs,
        };
        alg.check_jacobi()?;
        Ok(alg)
    }

    /// Builds an algebra from the nonzero brackets `[e_i, e_j] = Σ c e_k`,
    /// listed once per unordered pair with `i < j`.
    pub fn from_brackets(
        labels: Vec<String>,
        brackets: &[(usize, usize, usize, T)],
        tolerance: T,
    ) -> Result<Self> {
        let n = labels.len();
        let mut c = vec![T::zero(); n * n * n];
        for &(i, j, k, v) in brackets {
            if i >= n || j >= n || k >= n {
                return Err(OrbitError::Format {
                    field: "brackets".into(),
                    message: format!("index out of range in ({i}, {j}, {k}) for dim {n}"),
                });
            }
            if i == j {
                return Err(OrbitError::Format {
                    field: "brackets".into(),
                    message: format!("[e_{i}, e_{i}] must vanish (antisymmetry)"),
                });
            }
            let (a, b, s) = if i < j { (i, j, v) } else { (j, i, -v) };
            c[idx(n, a, b, k)] += s;
            c[idx(n, b, a, k)] -= s;
        }
        Self::from_dense(labels, c, tolerance)
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        let bound = self.tolerance * (T::one() + self.max_abs).powi(2);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let r = self.jacobiator(i, j, k).norm();
                    if r > bound {
                        return Err(OrbitError::Jacobi {
                            i,
                            j,
                            k,
                            residual: r.as_f64(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> DVector<T> {
        let n = self.dim();
        let e = |a: usize| DVector::from_fn(n, |r, _| if r == a { T::one() } else { T::zero() });
        let b = |x: &DVector<T>, y: &DVector<T>| self.bracket_unchecked(x, y);
        b(&b(&e(i), &e(j)), &e(k)) + b(&b(&e(j), &e(k)), &e(i)) + b(&b(&e(k), &e(i)), &e(j))
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn tolerance(&self) -> T {
        self.tolerance
    }

    /// Same algebra with a different tolerance; invariants are re-checked.
    pub fn with_tolerance(&self, tolerance: T) -> Result<Self> {
        Self::from_dense(self.labels.clone(), self.constants.clone(), tolerance)
    }

    /// `1 + max |c|`, the scale against which residuals are compared.
    pub fn scale(&self) -> T {
        T::one() + self.max_abs
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> T {
        self.constants[idx(self.dim(), i, j, k)]
    }

    /// Nonzero brackets with `i < j`, in lexicographic order.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, usize, T)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    let c = self.structure_constant(i, j, k);
                    if c != T::zero() {
                        out.push((i, j, k, c));
                    }
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> DVector<T> {
        let mut v = DVector::zeros(self.dim());
        v[i] = T::one();
        v
    }

    pub fn bracket(&self, x: &DVector<T>, y: &DVector<T>) -> Result<DVector<T>> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(OrbitError::InputShape(format!(
                "bracket arguments have lengths {} and {}, algebra has dim {n}",
                x.len(),
                y.len()
            )));
        }
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &DVector<T>, y: &DVector<T>) -> DVector<T> {
        self.ad(x) * y
    }

    /// Matrix of `ad e_i` (column `j` holds `[e_i, e_j]`).
    pub fn ad_basis(&self, i: usize) -> &DMatrix<T> {
        &self.ads[i]
    }

    pub fn ad(&self, x: &DVector<T>) -> DMatrix<T> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (i, &xi) in x.iter().enumerate() {
            if xi != T::zero() {
                m += &self.ads[i] * xi;
            }
        }
        m
    }

    /// Killing form `B(X, Y) = tr(ad X ∘ ad Y)` as a Gram matrix.
    pub fn killing_form(&self) -> DMatrix<T> {
        let n = self.dim();
        let mut b = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = (&self.ads[i] * &self.ads[j]).trace();
                b[(i, j)] = v;
                b[(j, i)] = v;
            }
        }
        b
    }

    /// `t_i = tr(ad e_i)`.
    pub fn trace_form(&self) -> DVector<T> {
        DVector::from_iterator(self.dim(), self.ads.iter().map(|a| a.trace()))
    }

    pub fn is_unimodular(&self) -> bool {
        self.trace_form().iter().all(|t| t.abs() <= self.tolerance)
    }

    /// Semisimplicity by Cartan's criterion on the eigenvalues of the Killing
    /// form. Ratios of smallest to largest |eigenvalue| in `(tol, sqrt(tol)]`
    /// are reported as indeterminate.
    pub fn is_semisimple(&self) -> Result<bool> {
        let b = self.killing_form();
        let eig = SymmetricEigen::new(b).eigenvalues;
        let largest = eig.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
        if largest <= self.tolerance {
            return Ok(false);
        }
        let smallest = eig.iter().fold(largest, |m, &x| m.min(x.abs()));
        let ratio = smallest / largest;
        if ratio <= self.tolerance {
            Ok(false)
        } else if ratio > self.tolerance.sqrt() {
            Ok(true)
        } else {
            Err(OrbitError::Indeterminate(format!(
                "Killing form eigenvalue ratio {:.3e} lies in the band ({:.1e}, {:.1e}]; \
                 semisimple and non-semisimple are both numerically plausible",
                ratio.as_f64(),
                self.tolerance.as_f64(),
                self.tolerance.sqrt().as_f64()
            )))
        }
    }

    pub fn center(&self) -> Subspace<T> {
        self.centralizer(&Subspace::full(self.dim()), &Subspace::full(self.dim()))
    }

    pub fn structure_invariants(&self) -> Result<StructureInvariants> {
        Ok(StructureInvariants {
            semisimple: self.is_semisimple()?,
            unimodular: self.is_unimodular(),
            nilpotent: self.is_nilpotent(),
            center_dim: self.center().rank(),
        })
    }

    /// `span{[x, y] : x ∈ a, y ∈ b}`.
    pub fn bracket_span(&self, a: &Subspace<T>, b: &Subspace<T>) -> Subspace<T> {
        let n = self.dim();
        let mut cols = Vec::with_capacity(a.rank() * b.rank());
        for x in a.vectors() {
            let adx = self.ad(&x);
            for y in b.vectors() {
                cols.push(&adx * y);
            }
        }
        Subspace::span_of(n, &cols, self.tolerance * self.scale())
    }

    /// Lower central series `s ⊇ [s,s] ⊇ [s,[s,s]] ⊇ …` of a subalgebra,
    /// stopping at zero or at the first repeated dimension.
    pub fn lower_central_series(&self, s: &Subspace<T>) -> Vec<Subspace<T>> {
        let mut series = vec![s.clone()];
        loop {
            let last = series.last().expect("non-empty");
            if last.is_zero() {
                break;
            }
            let next = self.bracket_span(s, last);
            if next.rank() >= last.rank() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn derived_series(&self, s: &Subspace<T>) -> Vec<Subspace<T>> {
        let mut series = vec![s.clone()];
        loop {
            let last = series.last().expect("non-empty");
            if last.is_zero() {
                break;
            }
            let next = self.bracket_span(last, last);
            if next.rank() >= last.rank() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_nilpotent_subalgebra(&self, s: &Subspace<T>) -> bool {
        self.lower_central_series(s)
            .last()
            .is_some_and(|t| t.is_zero())
    }

    pub fn is_solvable_subalgebra(&self, s: &Subspace<T>) -> bool {
        self.derived_series(s).last().is_some_and(|t| t.is_zero())
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_nilpotent_subalgebra(&Subspace::full(self.dim()))
    }

    /// Whether `[s, t] ⊆ t` holds for the whole algebra `s = l`.
    pub fn is_ideal(&self, t: &Subspace<T>) -> bool {
        let full = Subspace::full(self.dim());
        t.contains_subspace(&self.bracket_span(&full, t), self.tolerance * self.scale())
    }

    pub fn is_subalgebra(&self, s: &Subspace<T>) -> bool {
        s.contains_subspace(&self.bracket_span(s, s), self.tolerance * self.scale())
    }

    /// Largest residual of `φ[e_i, e_j] − [φ e_i, φ e_j]` over basis pairs.
    pub fn automorphism_residual(&self, phi: &DMatrix<T>) -> T {
        let n = self.dim();
        let mut worst = T::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = phi * self.ads[i].column(j);
                let rhs = self.bracket_unchecked(&phi.column(i).into_owned(), &phi.column(j).into_owned());
                worst = worst.max((lhs - rhs).norm());
            }
        }
        worst
    }

    pub fn is_automorphism(&self, phi: &DMatrix<T>) -> bool {
        let s = linalg::max_abs(phi).max(T::one());
        phi.nrows() == self.dim()
            && phi.is_square()
            && phi.clone().try_inverse().is_some()
            && self.automorphism_residual(phi) <= self.tolerance * self.scale() * s * s
    }

    /// Largest residual of `D[e_i, e_j] − [D e_i, e_j] − [e_i, D e_j]`.
    pub fn derivation_residual(&self, d: &DMatrix<T>) -> T {
        let n = self.dim();
        let mut worst = T::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = d * self.ads[i].column(j);
                let rhs = &self.ads[j] * d.column(i) * -T::one() + &self.ads[i] * d.column(j);
                worst = worst.max((lhs - rhs).norm());
            }
        }
        worst
    }

    pub fn is_derivation(&self, d: &DMatrix<T>) -> bool {
        let s = linalg::max_abs(d).max(T::one());
        d.nrows() == self.dim() && d.is_square() && self.derivation_residual(d) <= self.tolerance * self.scale() * s
    }

    /// Direct sum `self ⊕ other`, labels prefixed to stay distinct.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let (n1, n2) = (self.dim(), other.dim());
        let n = n1 + n2;
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("a.{l}")).collect();
        labels.extend(other.labels.iter().map(|l| format!("b.{l}")));
        let mut c = vec![T::zero(); n * n * n];
        for i in 0..n1 {
            for j in 0..n1 {
                for k in 0..n1 {
                    c[idx(n, i, j, k)] = self.structure_constant(i, j, k);
                }
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                for k in 0..n2 {
                    c[idx(n, n1 + i, n1 + j, n1 + k)] = other.structure_constant(i, j, k);
                }
            }
        }
        Self::from_dense(labels, c, self.tolerance.max(other.tolerance))
    }
}

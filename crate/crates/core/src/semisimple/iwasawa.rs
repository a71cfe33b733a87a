use nalgebra::DVector;

use super::roots::{maximal_abelian_subspace, restricted_roots, RestrictedRoot, RootDecomposition};
use super::CartanData;
use crate::error::{OrbitError, Result};
use crate::rng::{self, RETRIES};
use crate::subspace::Subspace;
use crate::Scalar;

/// Iwasawa data `l = k ⊕ a ⊕ n` with the minimal parabolic `q = m ⊕ a ⊕ n`.
#[derive(Debug, Clone)]
pub struct IwasawaData<T: Scalar> {
    pub cartan: CartanData<T>,
    pub a: Subspace<T>,
    pub roots: Vec<RestrictedRoot<T>>,
    pub positive_roots: Vec<usize>,
    pub regular: DVector<T>,
    pub l0: Subspace<T>,
    pub n: Subspace<T>,
    pub n_minus: Subspace<T>,
    pub m: Subspace<T>,
    pub q: Subspace<T>,
    pub borel: Subspace<T>,
    pub split: bool,
}

impl<T: Scalar> IwasawaData<T> {
    pub fn dim_k(&self) -> usize {
        self.cartan.k.rank()
    }

    /// Index of the root whose functional is `−λ` for root `i`.
    pub fn opposite_root(&self, i: usize) -> Option<usize> {
        let target = -&self.roots[i].functional;
        let tol = self.cartan.tolerance().sqrt();
        self.roots
            .iter()
            .position(|r| (&r.functional - &target).norm() <= tol * target.norm().max(T::one()))
    }
}

/// Assembles the Iwasawa data for the positive system `{λ : ⟨regular, λ⟩ > 0}`
/// and verifies every structural invariant.
pub fn iwasawa_assemble<T: Scalar>(
    c: &CartanData<T>,
    a: &Subspace<T>,
    decomposition: &RootDecomposition<T>,
    regular: &DVector<T>,
) -> Result<IwasawaData<T>> {
    let l = &c.algebra;
    let dim = l.dim();
    let tol = l.tolerance();
    if regular.len() != a.rank() {
        return Err(OrbitError::InputShape(format!(
            "regular covector has length {}, a has dim {}",
            regular.len(),
            a.rank()
        )));
    }
    let mut positive_roots = Vec::new();
    for (i, r) in decomposition.roots.iter().enumerate() {
        let s = regular.dot(&r.functional);
        if s.abs() <= tol {
            return Err(OrbitError::NotRegular(format!(
                "pairing with root {i} is {:.3e}",
                s.as_f64()
            )));
        }
        if s > T::zero() {
            positive_roots.push(i);
        }
    }
    let mut n = Subspace::zero(dim);
    for &i in &positive_roots {
        n = n.sum(&decomposition.roots[i].space, tol);
    }
    let n_minus = n.image(&c.theta.matrix, tol);
    let m = l.centralizer(a, &c.k);
    let borel = a.sum(&n, tol);
    let q = m.sum(&borel, tol);
    let data = IwasawaData {
        cartan: c.clone(),
        a: a.clone(),
        roots: decomposition.roots.clone(),
        positive_roots,
        regular: regular.clone(),
        l0: decomposition.l0.clone(),
        split: m.is_zero(),
        n,
        n_minus,
        m,
        q,
        borel,
    };
    data.verify()?;
    Ok(data)
}

/// Maximal abelian subspace, roots and a random regular covector, all drawn
/// from one seed; a covector hitting a wall is redrawn.
pub fn iwasawa<T: Scalar>(c: &CartanData<T>, seed: u64) -> Result<IwasawaData<T>> {
    let a = maximal_abelian_subspace(c, seed)?;
    let decomposition = restricted_roots(c, &a, seed)?;
    let mut rng = rng::seeded(seed ^ 0x5eed);
    let mut last = None;
    for _ in 0..RETRIES {
        let regular = rng::vector(&mut rng, a.rank());
        match iwasawa_assemble(c, &a, &decomposition, &regular) {
            Err(e @ OrbitError::NotRegular(_)) => last = Some(e),
            other => return other,
        }
    }
    Err(last.unwrap_or_else(|| OrbitError::AlgorithmFailure("no regular covector".into())))
}

impl<T: Scalar> IwasawaData<T> {
    fn fail(what: &str) -> OrbitError {
        OrbitError::AlgorithmFailure(format!("Iwasawa invariant violated: {what}"))
    }

    fn verify(&self) -> Result<()> {
        let l = &self.cartan.algebra;
        let dim = l.dim();
        let tol = l.tolerance();
        let btol = tol * l.scale();
        if !l.bracket_span(&self.a, &self.a).is_zero() {
            return Err(Self::fail("a is not abelian"));
        }
        if !l.centralizer(&self.a, &self.cartan.p).same_as(&self.a, btol) {
            return Err(Self::fail("a is not maximal abelian in p"));
        }
        let mult: usize = self.roots.iter().map(|r| r.multiplicity).sum();
        if mult + self.l0.rank() != dim {
            return Err(Self::fail("root spaces and l_0 do not fill l"));
        }
        if self.l0.rank() != self.m.rank() + self.a.rank() {
            return Err(Self::fail("l_0 != m + a"));
        }
        if self.dim_k() + self.a.rank() + self.n.rank() != dim {
            return Err(Self::fail("dim k + dim a + dim n != dim l"));
        }
        if !self.n.contains_subspace(&l.bracket_span(&self.l0, &self.n), btol) {
            return Err(Self::fail("l_0 does not normalize n"));
        }
        for i in 0..self.roots.len() {
            let j = self.opposite_root(i).ok_or_else(|| Self::fail("root without opposite"))?;
            let image = self.roots[i].space.image(&self.cartan.theta.matrix, tol);
            if !image.same_as(&self.roots[j].space, tol.sqrt()) {
                return Err(Self::fail("theta(l_lambda) != l_-lambda"));
            }
        }
        if !self.n.sum(&self.n_minus, tol).sum(&self.l0, tol).same_as(&Subspace::full(dim), tol) {
            return Err(Self::fail("n- + l_0 + n != l"));
        }
        if !l.is_nilpotent_subalgebra(&self.n) {
            return Err(Self::fail("n is not nilpotent"));
        }
        if !l.is_solvable_subalgebra(&self.borel) {
            return Err(Self::fail("a + n is not solvable"));
        }
        if !l.is_subalgebra(&self.q) {
            return Err(Self::fail("q is not a subalgebra"));
        }
        Ok(())
    }

    /// `[l_λ, l_μ] ⊆ l_{λ+μ}` (or zero when `λ + μ` is neither a root nor 0).
    pub fn bracket_respects_grading(&self, i: usize, j: usize) -> bool {
        let l = &self.cartan.algebra;
        let tol = l.tolerance();
        let br = l.bracket_span(&self.roots[i].space, &self.roots[j].space);
        if br.is_zero() {
            return true;
        }
        let sum = &self.roots[i].functional + &self.roots[j].functional;
        let close = tol.sqrt() * sum.norm().max(T::one());
        let target = if sum.norm() <= close {
            Some(&self.l0)
        } else {
            self.roots
                .iter()
                .find(|r| (&r.functional - &sum).norm() <= close)
                .map(|r| &r.space)
        };
        target.is_some_and(|t| t.contains_subspace(&br, tol.sqrt()))
    }

    /// Multiset of multiplicities, sorted.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m: Vec<usize> = self.roots.iter().map(|r| r.multiplicity).collect();
        m.sort_unstable();
        m
    }
}

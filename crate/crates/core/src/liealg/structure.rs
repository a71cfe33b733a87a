//! Radical, nilradical and simple-ideal decomposition.

use nalgebra::{Complex, DMatrix, DVector};

use super::LieAlgebraData;
use crate::error::{OrbitError, Result};
use crate::linalg;
use crate::rng::{self, RETRIES};
use crate::subspace::Subspace;
use crate::Scalar;

impl<T: Scalar> LieAlgebraData<T> {
    /// `[l, l]`.
    pub fn derived_algebra(&self) -> Subspace<T> {
        let full = Subspace::full(self.dim());
        self.bracket_span(&full, &full)
    }

    /// Solvable radical, the Killing-orthogonal complement of `[l, l]`.
    pub fn radical(&self) -> Subspace<T> {
        let d = self.derived_algebra();
        if d.is_zero() {
            return Subspace::full(self.dim());
        }
        let b = self.killing_form();
        let sys = d.basis().transpose() * b;
        Subspace::from_orthonormal(linalg::null_space(&sys, self.tolerance()))
    }

    /// Maximal nilpotent ideal, seeded with [`rng::DEFAULT_SEED`].
    pub fn nilradical(&self) -> Result<Subspace<T>> {
        self.nilradical_seeded(rng::DEFAULT_SEED)
    }

    /// Maximal nilpotent ideal.
    ///
    /// Inside the radical `r`, `ad X` is nilpotent iff every weight of `r` on
    /// `l` vanishes at `X`. For a generic `Y ∈ r` the functionals
    /// `X ↦ tr(ad X · (ad Y)^k)`, `k = 0..dim`, span the weights, so their
    /// common kernel in `r` is the nilradical. The result is verified a
    /// posteriori.
    pub fn nilradical_seeded(&self, seed: u64) -> Result<Subspace<T>> {
        let n = self.dim();
        let r = self.radical();
        if r.is_zero() {
            return Ok(r);
        }
        let ads_r: Vec<DMatrix<T>> = r.vectors().iter().map(|v| self.ad(v)).collect();
        let mut rng = rng::seeded(seed);
        let mut last = String::new();
        for _ in 0..RETRIES {
            let y = rng::element_of(&mut rng, r.basis());
            let mut ad_y = self.ad(&y);
            let norm = ad_y.norm();
            if norm > T::zero() {
                ad_y /= norm;
            }
            let mut sys = DMatrix::zeros(n, r.rank());
            let mut power = DMatrix::identity(n, n);
            for k in 0..n {
                let mut row: Vec<T> = ads_r.iter().map(|a| (a * &power).trace()).collect();
                let rn = row.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
                if rn > T::zero() {
                    row.iter_mut().for_each(|x| *x /= rn);
                }
                for (c, x) in row.into_iter().enumerate() {
                    sys[(k, c)] = x;
                }
                power = &power * &ad_y;
            }
            let coeffs = linalg::null_space(&sys, self.tolerance().sqrt());
            let candidate = Subspace::span(&(r.basis() * coeffs), self.tolerance());
            match self.verify_nilradical(&candidate) {
                Ok(()) => return Ok(candidate),
                Err(e) => last = e,
            }
        }
        Err(OrbitError::AlgorithmFailure(format!(
            "nilradical verification failed after {RETRIES} generic draws: {last}"
        )))
    }

    fn verify_nilradical(&self, cand: &Subspace<T>) -> std::result::Result<(), String> {
        if !self.is_ideal(cand) {
            return Err("candidate is not an ideal".into());
        }
        if !self.is_nilpotent_subalgebra(cand) {
            return Err("candidate is not nilpotent".into());
        }
        let n = self.dim() as i32;
        for v in cand.vectors() {
            let a = self.ad(&v);
            let scale = a.norm().max(T::one());
            let p = (a / scale).pow(n as u32);
            if p.norm() > self.tolerance().sqrt() {
                return Err("basis element with non-nilpotent ad".into());
            }
        }
        Ok(())
    }

    pub fn simple_ideals(&self) -> Result<Vec<Subspace<T>>> {
        self.simple_ideals_seeded(rng::DEFAULT_SEED)
    }

    /// Decomposes a semisimple algebra into simple ideals using the
    /// eigenspaces of a generic element of the centroid (operators commuting
    /// with every `ad X`). The centroid is a sum of copies of ℝ or ℂ, one per
    /// simple ideal, so a generic element separates the ideals by eigenvalue.
    pub fn simple_ideals_seeded(&self, seed: u64) -> Result<Vec<Subspace<T>>> {
        match self.is_semisimple() {
            Ok(true) => {}
            Ok(false) => {
                return Err(OrbitError::Precondition(
                    "simple-ideal decomposition needs a semisimple algebra".into(),
                ))
            }
            Err(e) => return Err(e),
        }
        let n = self.dim();
        let mut rng = rng::seeded(seed);
        let mut last = String::new();
        for _ in 0..RETRIES {
            let gens: Vec<DMatrix<T>> = (0..2)
                .map(|_| self.ad(&rng::vector(&mut rng, n)))
                .collect();
            let centroid = commutant(&gens, self.tolerance());
            if centroid
                .iter()
                .any(|t| (0..n).any(|i| !commutes(t, self.ad_basis(i), self.tolerance() * self.scale())))
            {
                last = "two generic elements did not generate the algebra".into();
                continue;
            }
            let coeffs = rng::vector::<T>(&mut rng, centroid.len());
            let mut t = DMatrix::zeros(n, n);
            for (c, m) in coeffs.iter().zip(&centroid) {
                t += m * *c;
            }
            match self.split_by_eigenvalues(&t) {
                Ok(mut ideals) => match self.verify_ideals(&ideals, &mut rng) {
                    Ok(()) => {
                        ideals.sort_by_key(leading_axis);
                        return Ok(ideals);
                    }
                    Err(e) => last = e,
                },
                Err(e) => last = e,
            }
        }
        Err(OrbitError::AlgorithmFailure(format!(
            "simple-ideal decomposition failed after {RETRIES} draws: {last}"
        )))
    }

    fn split_by_eigenvalues(&self, t: &DMatrix<T>) -> std::result::Result<Vec<Subspace<T>>, String> {
        let n = self.dim();
        let eig: Vec<Complex<T>> = linalg::eigenvalues(t).into_iter().map(|(re, im)| Complex::new(re, im)).collect();
        let scale = eig.iter().fold(T::one(), |m, z| m.max(cabs(z)));
        let radius = self.tolerance().sqrt() * scale;
        let mut groups: Vec<Complex<T>> = Vec::new();
        for z in &eig {
            let rep = if z.im.abs() <= radius {
                Complex::new(z.re, T::zero())
            } else {
                Complex::new(z.re, z.im.abs())
            };
            if !groups.iter().any(|g| cabs(&(g - rep)) <= radius) {
                groups.push(rep);
            }
        }
        let mut ideals = Vec::new();
        let id = DMatrix::<T>::identity(n, n);
        for g in groups {
            let shifted = t - &id * g.re;
            let op = if g.im == T::zero() {
                shifted
            } else {
                &shifted * &shifted + &id * (g.im * g.im)
            };
            let kernel = linalg::null_space(&op, self.tolerance().sqrt());
            ideals.push(Subspace::from_orthonormal(kernel));
        }
        let total: usize = ideals.iter().map(|i| i.rank()).sum();
        if total != n {
            return Err(format!("eigenspaces have total dimension {total}, expected {n}"));
        }
        Ok(ideals)
    }

    fn verify_ideals(&self, ideals: &[Subspace<T>], rng: &mut rng::SeededRng) -> std::result::Result<(), String> {
        let n = self.dim();
        let tol = self.tolerance() * self.scale();
        let all: Vec<DVector<T>> = ideals.iter().flat_map(|i| i.vectors()).collect();
        if Subspace::span_of(n, &all, self.tolerance()).rank() != n {
            return Err("ideals do not span the algebra".into());
        }
        for (a, ia) in ideals.iter().enumerate() {
            if !self.is_ideal(ia) {
                return Err(format!("component {a} is not an ideal"));
            }
            for ib in &ideals[a + 1..] {
                if self.bracket_span(ia, ib).rank() != 0 {
                    return Err("distinct components do not commute".into());
                }
            }
            let x = rng::element_of(rng, ia.basis());
            if self.ideal_closure(&x).rank() != ia.rank() {
                return Err(format!("component {a} contains a proper ideal"));
            }
            let q = ia.basis();
            let gens: Vec<DMatrix<T>> = (0..2)
                .map(|_| q.transpose() * self.ad(&rng::element_of(rng, q)) * q)
                .collect();
            let cent = commutant(&gens, self.tolerance());
            let field = match cent.len() {
                1 => true,
                2 => {
                    // ℂ-type centroid: its traceless part squares to a negative scalar.
                    let d = T::from_usize(q.ncols()).expect("usize");
                    let id = DMatrix::<T>::identity(q.ncols(), q.ncols());
                    let j = cent
                        .iter()
                        .map(|c| c - &id * (c.trace() / d))
                        .max_by(|a, b| a.norm().partial_cmp(&b.norm()).expect("finite"))
                        .expect("two elements");
                    let j = &j / j.norm();
                    let sq = &j * &j;
                    let c = sq.trace() / d;
                    c < T::zero() && (sq - id * c).norm() <= tol.sqrt()
                }
                _ => false,
            };
            if !field {
                return Err(format!("component {a} has a non-field centroid of dim {}", cent.len()));
            }
        }
        Ok(())
    }

    /// Smallest ideal containing `x`.
    pub fn ideal_closure(&self, x: &DVector<T>) -> Subspace<T> {
        let n = self.dim();
        let full = Subspace::full(n);
        let mut s = Subspace::span_of(n, std::slice::from_ref(x), self.tolerance());
        loop {
            let next = s.sum(&self.bracket_span(&full, &s), self.tolerance());
            if next.rank() == s.rank() {
                return s;
            }
            s = next;
        }
    }
}

fn cabs<T: Scalar>(z: &Complex<T>) -> T {
    (z.re * z.re + z.im * z.im).sqrt()
}

fn commutes<T: Scalar>(a: &DMatrix<T>, b: &DMatrix<T>, tol: T) -> bool {
    (a * b - b * a).norm() <= tol * a.norm().max(T::one()) * b.norm().max(T::one())
}

/// Basis of `{T : T A = A T for all A in gens}`.
fn commutant<T: Scalar>(gens: &[DMatrix<T>], tol: T) -> Vec<DMatrix<T>> {
    let n = gens[0].nrows();
    let id = DMatrix::<T>::identity(n, n);
    let mut sys = DMatrix::zeros(gens.len() * n * n, n * n);
    for (g, a) in gens.iter().enumerate() {
        // vec(TA) = (Aᵀ ⊗ I) vec(T), vec(AT) = (I ⊗ A) vec(T)
        let block = a.transpose().kronecker(&id) - id.kronecker(a);
        sys.view_mut((g * n * n, 0), (n * n, n * n)).copy_from(&block);
    }
    let ns = linalg::null_space(&sys, tol);
    ns.column_iter()
        .map(|c| DMatrix::from_column_slice(n, n, c.as_slice()))
        .collect()
}

fn leading_axis<T: Scalar>(s: &Subspace<T>) -> usize {
    let p = s.projector();
    (0..p.nrows())
        .find(|&i| p[(i, i)] > T::lit(1e-3))
        .unwrap_or(p.nrows())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(labels: &[&str], br: &[(usize, usize, usize, f64)]) -> LieAlgebraData<f64> {
        LieAlgebraData::from_brackets(labels.iter().map(|s| s.to_string()).collect(), br, 1e-9).unwrap()
    }

    fn sl2() -> LieAlgebraData<f64> {
        alg(&["H", "E", "F"], &[(0, 1, 1, 2.0), (0, 2, 2, -2.0), (1, 2, 0, 1.0)])
    }

    #[test]
    fn nilradical_examples() {
        let heis = alg(&["e1", "e2", "e3"], &[(0, 1, 2, 1.0)]);
        assert_eq!(heis.nilradical().unwrap().rank(), 3);
        assert_eq!(sl2().nilradical().unwrap().rank(), 0);
        let borel = alg(&["A", "E"], &[(0, 1, 1, 1.0)]);
        let n = borel.nilradical().unwrap();
        assert!(n.same_as(&Subspace::span_of(2, &[DVector::from_column_slice(&[0., 1.])], 1e-12), 1e-9));
    }

    /// Rotation acting on a plane plus an irrational dilation: the Killing
    /// form vanishes on the acting element, yet it is not ad-nilpotent.
    #[test]
    fn nilradical_is_not_fooled_by_degenerate_killing_form() {
        let s = 2f64.sqrt();
        // [A, x] = s x, [A, y] = z, [A, z] = -y
        let l = alg(&["A", "x", "y", "z"], &[(0, 1, 1, s), (0, 2, 3, 1.0), (0, 3, 2, -1.0)]);
        assert!(l.killing_form()[(0, 0)].abs() < 1e-12);
        let n = l.nilradical().unwrap();
        assert_eq!(n.rank(), 3);
        assert!(!n.contains(&DVector::from_column_slice(&[1., 0., 0., 0.]), 1e-6));
    }

    #[test]
    fn simple_ideals_of_sum() {
        let s = sl2();
        assert_eq!(s.simple_ideals().unwrap().len(), 1);
        let ss = s.direct_sum(&s).unwrap();
        let ideals = ss.simple_ideals().unwrap();
        assert_eq!(ideals.iter().map(|i| i.rank()).collect::<Vec<_>>(), vec![3, 3]);
        assert_eq!(ss.bracket_span(&ideals[0], &ideals[1]).rank(), 0);
    }

    #[test]
    fn simple_ideals_rejects_non_semisimple() {
        let heis = alg(&["e1", "e2", "e3"], &[(0, 1, 2, 1.0)]);
        assert!(matches!(heis.simple_ideals(), Err(OrbitError::Precondition(_))));
    }
}

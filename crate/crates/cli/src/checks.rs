//! Seeded volume property batch run by `verify`: multiplicativity of
//! `det_W`, independence of the gauge from `K_W`, decay of `v_W` towards the
//! degenerate boundary and Heisenberg automorphism equivariance.

use nalgebra::DMatrix;
use orbitlab_core::liealg::LinearMapData;
use orbitlab_core::rng::{self, SeededRng};
use orbitlab_core::semisimple::builtin;
use orbitlab_core::volume::{det_weighted, equivariance_check, gauge_lower_triangular, weighted_volume};
use orbitlab_core::{InnerProduct, Label, OrbitError, Result, Weights};
use rand::Rng;
use serde::Serialize;

pub const MULTIPLICATIVITY_TOL: f64 = 1e-8;
pub const GAUGE_TOL: f64 = 1e-8;
pub const DECAY_FLOOR: f64 = 1e-6;

/// Trials per `--samples` unit.
const TRIALS_PER_SAMPLE: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyCheck {
    pub trials: usize,
    pub max_error: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityCheck {
    pub families: usize,
    /// Over all families, the largest of the smallest `v_W` reached while
    /// `h_t` is still definite.
    pub min_definite_value: f64,
    pub monotone_tail: bool,
    /// Counter-test: with a negative weight `v_W` grows without bound.
    pub negative_weight_diverges: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VolumeBatch {
    pub multiplicativity: PropertyCheck,
    pub gauge_invariance: PropertyCheck,
    pub continuity: ContinuityCheck,
    pub equivariance: PropertyCheck,
}

impl VolumeBatch {
    pub fn all_pass(&self) -> bool {
        self.multiplicativity.pass && self.gauge_invariance.pass && self.continuity.pass && self.equivariance.pass
    }
}

/// Nondecreasing weights on a coarse grid so that blocks of size > 1 occur.
fn random_weights(rng: &mut SeededRng, d: usize, positive: bool) -> Result<Weights> {
    let mut w: Vec<f64> = (0..d)
        .map(|_| {
            let k = rng.random_range(0..5) as f64;
            if positive {
                2.0 + 0.5 * k
            } else {
                -1.0 + 0.75 * k
            }
        })
        .collect();
    w.sort_by(|a, b| a.total_cmp(b));
    Weights::new(w, 1e-12)
}

fn random_parabolic(rng: &mut SeededRng, w: &Weights) -> DMatrix<f64> {
    let d = w.dim();
    let mut q = rng::matrix::<f64>(rng, d, d);
    for b in w.blocks() {
        for i in b.clone() {
            q[(i, i)] += 2.0 * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            for j in b.end..d {
                q[(i, j)] = 0.0;
            }
        }
    }
    q
}

/// Block-diagonal orthogonal matrix for the flag of `w`.
fn random_block_orthogonal(rng: &mut SeededRng, w: &Weights) -> DMatrix<f64> {
    let d = w.dim();
    let mut k = DMatrix::zeros(d, d);
    for b in w.blocks() {
        let n = b.len();
        let qr = rng::matrix::<f64>(rng, n, n).qr();
        k.view_mut((b.start, b.start), (n, n)).copy_from(&qr.q());
    }
    k
}

pub fn random_definite(rng: &mut SeededRng, d: usize, tol: f64) -> Result<InnerProduct> {
    let a = rng::matrix::<f64>(rng, d, d);
    InnerProduct::new(&a * a.transpose() + DMatrix::identity(d, d) * 0.5, tol)
}

/// `[[A, 0], [vᵀ, det A]]` on the Heisenberg algebra of dimension 3.
pub fn random_heisenberg_automorphism(rng: &mut SeededRng) -> DMatrix<f64> {
    loop {
        let a = rng::matrix::<f64>(rng, 2, 2);
        let det = a.determinant();
        if det.abs() < 0.1 {
            continue;
        }
        let v = rng::vector::<f64>(rng, 2);
        let mut phi = DMatrix::zeros(3, 3);
        phi.view_mut((0, 0), (2, 2)).copy_from(&a);
        phi[(2, 0)] = v[0];
        phi[(2, 1)] = v[1];
        phi[(2, 2)] = det;
        return phi;
    }
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn multiplicativity(rng: &mut SeededRng, trials: usize) -> Result<PropertyCheck> {
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let d = rng.random_range(2..=8);
        let w = random_weights(rng, d, false)?;
        let (p, q) = (random_parabolic(rng, &w), random_parabolic(rng, &w));
        let lhs = det_weighted(&(&p * &q), &w, 1e-10)?;
        let rhs = det_weighted(&p, &w, 1e-10)? * det_weighted(&q, &w, 1e-10)?;
        worst = worst.max(relative(lhs, rhs));
    }
    Ok(PropertyCheck {
        trials,
        max_error: worst,
        pass: worst <= MULTIPLICATIVITY_TOL,
    })
}

fn gauge_invariance(rng: &mut SeededRng, trials: usize, tol: f64) -> Result<PropertyCheck> {
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let d = rng.random_range(2..=6);
        let w = random_weights(rng, d, false)?;
        let h = random_definite(rng, d, tol)?;
        let order: Vec<usize> = (0..d).collect();
        let q = gauge_lower_triangular(&h, &InnerProduct::identity(d), &order, tol)?;
        let k = random_block_orthogonal(rng, &w);
        let qk = q.matrix() * k;
        let neg = w.negated();
        let a = det_weighted(q.matrix(), &neg, 1e-10)?;
        let b = det_weighted(&qk, &neg, 1e-10)?;
        // q·k represents the same inner product
        let same = (&qk * qk.transpose() - q.matrix() * q.matrix().transpose()).norm() / (q.matrix().norm().powi(2));
        worst = worst.max(relative(a, b)).max(same);
    }
    Ok(PropertyCheck {
        trials,
        max_error: worst,
        pass: worst <= GAUGE_TOL,
    })
}

/// `(v_W, degenerate)` along `h_t = A diag(t, 1, …, 1) Aᵀ`, `t = 10⁻ᵏᐟ²`.
fn family_values(a: &DMatrix<f64>, w: &Weights, steps: usize, tol: f64) -> Result<Vec<(f64, bool)>> {
    let d = a.nrows();
    let order: Vec<usize> = (0..d).collect();
    (1..=steps)
        .map(|k| {
            let mut diag = DMatrix::identity(d, d);
            diag[(0, 0)] = 10f64.powf(-(k as f64) / 2.0);
            let h = InnerProduct::new(a * diag * a.transpose(), tol)?;
            let (_, v) = weighted_volume(&h, &InnerProduct::identity(d), w, &order, tol)?;
            Ok((v.value, v.degenerate))
        })
        .collect()
}

fn continuity(rng: &mut SeededRng, families: usize, tol: f64) -> Result<ContinuityCheck> {
    let mut worst_min: f64 = 0.0;
    let mut monotone = true;
    for _ in 0..families {
        let d = rng.random_range(2..=5);
        let w = random_weights(rng, d, true)?;
        let a = rng::matrix::<f64>(rng, d, d) + DMatrix::identity(d, d) * 2.0;
        let a = &a / a.determinant().abs().powf(1.0 / d as f64);
        let values = family_values(&a, &w, 24, tol)?;
        // smallest value reached while h is still definite
        let live = values.iter().filter(|(_, deg)| !deg).map(|(v, _)| *v).fold(f64::INFINITY, f64::min);
        worst_min = worst_min.max(live);
        let tail = &values[values.len() / 2..];
        monotone &= tail.windows(2).all(|p| p[1].0 <= p[0].0);
    }
    // weight −2 on the degenerating direction: v ~ t⁻¹
    let w = Weights::new(vec![-2.0, 1.0], 1e-12)?;
    let values: Vec<f64> = family_values(&DMatrix::identity(2, 2), &w, 16, tol)?.iter().map(|p| p.0).collect();
    let diverges = values.windows(2).all(|p| p[1] > p[0]) && *values.last().expect("nonempty") > 1e6;
    Ok(ContinuityCheck {
        families,
        min_definite_value: worst_min,
        monotone_tail: monotone,
        negative_weight_diverges: diverges,
        pass: worst_min < DECAY_FLOOR && monotone && diverges,
    })
}

fn equivariance(rng: &mut SeededRng, trials: usize, tol: f64) -> Result<PropertyCheck> {
    let h3 = builtin::heisenberg::<f64>(3)?.algebra.with_tolerance(tol)?;
    let label = Label::heisenberg(3)?;
    let bg = InnerProduct::identity(3);
    let mut worst: f64 = 0.0;
    let mut pass = true;
    for _ in 0..trials {
        let phi = LinearMapData::new(random_heisenberg_automorphism(rng), "heisenberg automorphism")?;
        let h = random_definite(rng, 3, tol)?;
        let c = equivariance_check(&h, &phi, &h3, &label, &bg, tol)?;
        worst = worst.max(relative(c.lhs, c.rhs));
        pass &= c.pass;
    }
    Ok(PropertyCheck {
        trials,
        max_error: worst,
        pass,
    })
}

pub fn volume_batch(seed: u64, samples: usize, tol: f64) -> Result<VolumeBatch> {
    if samples == 0 {
        return Err(OrbitError::Input("samples must be at least 1".into()));
    }
    let mut rng = rng::seeded(seed);
    let trials = TRIALS_PER_SAMPLE * samples;
    Ok(VolumeBatch {
        multiplicativity: multiplicativity(&mut rng, trials)?,
        gauge_invariance: gauge_invariance(&mut rng, trials, tol)?,
        continuity: continuity(&mut rng, samples, tol)?,
        equivariance: equivariance(&mut rng, samples, tol)?,
    })
}

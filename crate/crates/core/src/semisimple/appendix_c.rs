//! Numerical checks of the structural facts about Borel nilradicals of a
//! semisimple algebra without compact factors:
//!
//! * conjugates `Ad(exp X) n` span `l`;
//! * `m ⊕ a ⊆ [n, θn]`;
//! * `Z_m(n) = Z_a(n) = 0`;
//! * `N_l(k) = k` (the infinitesimal form of `N_L(K) = K`).

use nalgebra::DMatrix;
use serde::Serialize;

use super::IwasawaData;
use crate::error::{OrbitError, Result};
use crate::linalg;
use crate::rng;
use crate::subspace::Subspace;
use crate::Scalar;

/// Margin required of the smallest singular value of `X ↦ [X, n]` on `m`
/// and on `a`.
pub const CENTRALIZER_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpanCheck {
    pub pass: bool,
    /// Number of random conjugations used before the span was full.
    pub samples_used: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BracketCheck {
    pub pass: bool,
    pub rank_n_theta_n: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralizerCheck {
    pub pass: bool,
    pub dim_z_m: usize,
    pub dim_z_a: usize,
    /// Smallest singular value of `X ↦ [X, n]` on `m` (absent when `m = 0`).
    pub margin_m: Option<f64>,
    pub margin_a: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalizerCheck {
    pub pass: bool,
    pub dim_normalizer: usize,
    pub dim_k: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppendixCReport {
    pub span: SpanCheck,
    pub bracket_contains_ma: BracketCheck,
    pub centralizers_trivial: CentralizerCheck,
    /// Infinitesimal statement `N_l(k) = k`; the group-level normalizer is
    /// not computed.
    pub normalizer_k: NormalizerCheck,
}

impl AppendixCReport {
    pub fn all_pass(&self) -> bool {
        self.span.pass
            && self.bracket_contains_ma.pass
            && self.centralizers_trivial.pass
            && self.normalizer_k.pass
    }
}

/// Runs the four checks. `samples` bounds the number of random conjugations
/// tried for the span check.
pub fn verify_appendix_c<T: Scalar>(iw: &IwasawaData<T>, samples: usize, seed: u64) -> Result<AppendixCReport> {
    let c = &iw.cartan;
    let l = &c.algebra;
    let dim = l.dim();
    let tol = l.tolerance();
    if samples == 0 {
        return Err(OrbitError::Input("samples must be at least 1".into()));
    }
    let compact = c.compact_ideals()?;
    if !compact.is_empty() {
        return Err(OrbitError::Precondition(format!(
            "algebra has {} compact simple ideal(s) (dims {:?}); the Killing form is negative definite there",
            compact.len(),
            compact.iter().map(|s| s.rank()).collect::<Vec<_>>()
        )));
    }

    // (a) span of conjugated Borel nilradicals
    let mut rng = rng::seeded(seed);
    let mut span = iw.n.clone();
    let mut used = 0;
    while span.rank() < dim && used < samples {
        used += 1;
        let x = rng::vector::<T>(&mut rng, dim);
        let adx = l.ad(&x);
        let g = (adx.clone() / adx.norm().max(T::one())).exp();
        span = span.sum(&iw.n.image(&g, tol), tol);
    }
    let span_check = SpanCheck {
        pass: span.rank() == dim,
        samples_used: used,
        rank: span.rank(),
    };

    // (b) m ⊕ a ⊆ [n, θn]
    let bracket = l.bracket_span(&iw.n, &iw.n_minus);
    let ma = iw.m.sum(&iw.a, tol);
    let residual = ma.vectors().iter().fold(T::zero(), |m, v| m.max(bracket.residual(v)));
    let bracket_check = BracketCheck {
        pass: bracket.contains_subspace(&ma, tol * l.scale()),
        rank_n_theta_n: bracket.rank(),
        residual: residual.as_f64(),
    };

    // (c) Z_m(n) = Z_a(n) = 0
    let margin = |s: &Subspace<T>| -> Option<T> {
        if s.is_zero() {
            return None;
        }
        let blocks: Vec<DMatrix<T>> = iw.n.vectors().iter().map(|v| l.ad(v) * s.basis()).collect();
        let mut stacked = DMatrix::zeros(dim * blocks.len(), s.rank());
        for (b, blk) in blocks.iter().enumerate() {
            stacked.view_mut((b * dim, 0), (dim, s.rank())).copy_from(blk);
        }
        Some(linalg::min_singular_value(&stacked))
    };
    let z_m = l.centralizer(&iw.n, &iw.m);
    let z_a = l.centralizer(&iw.n, &iw.a);
    let (margin_m, margin_a) = (margin(&iw.m), margin(&iw.a));
    let floor = T::lit(CENTRALIZER_MARGIN);
    let centralizer_check = CentralizerCheck {
        pass: z_m.is_zero()
            && z_a.is_zero()
            && margin_m.is_none_or(|x| x >= floor)
            && margin_a.is_none_or(|x| x >= floor),
        dim_z_m: z_m.rank(),
        dim_z_a: z_a.rank(),
        margin_m: margin_m.map(|x| x.as_f64()),
        margin_a: margin_a.map(|x| x.as_f64()),
    };

    // (d) N_l(k) = k
    let nk = l.normalizer(&c.k, &Subspace::full(dim));
    let normalizer_check = NormalizerCheck {
        pass: nk.same_as(&c.k, tol * l.scale()),
        dim_normalizer: nk.rank(),
        dim_k: c.k.rank(),
    };

    Ok(AppendixCReport {
        span: span_check,
        bracket_contains_ma: bracket_check,
        centralizers_trivial: centralizer_check,
        normalizer_k: normalizer_check,
    })
}

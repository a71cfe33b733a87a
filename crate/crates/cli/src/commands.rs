use nalgebra::DMatrix;
use orbitlab_core::geometry::{nilsoliton_certificate, ricci_left_invariant};
use orbitlab_core::semisimple::{iwasawa, validate_cartan, verify_appendix_c, AppendixCReport, DecompositionReport};
use orbitlab_core::volume::{orbit_density_vn, v_label, weighted_volume};
use orbitlab_core::{InnerProduct, Iwasawa, Label, LieAlgebra, LinearMap, Metric, OrbitError};
use serde::Serialize;
use serde_json::{json, Value};

use crate::canonical::to_value;
use crate::checks::{volume_batch, VolumeBatch};
use crate::config::{Command, RunConfig};
use crate::error::{CliError, EXIT_OK, EXIT_VERIFICATION};
use crate::inputs::Inputs;

/// Report plus exit code. A failed verification still yields a report.
pub struct Outcome {
    pub report: Value,
    pub code: i32,
}

impl Outcome {
    fn new(report: Value, pass: bool) -> Self {
        Self {
            report,
            code: if pass { EXIT_OK } else { EXIT_VERIFICATION },
        }
    }
}

/// Error together with whatever was computed before it.
pub struct Failure {
    pub error: CliError,
    pub partial: Option<Value>,
}

impl<E: Into<CliError>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            error: e.into(),
            partial: None,
        }
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let inputs = Inputs::load(&cfg.builtins, &cfg.input_paths, cfg.tolerance)?;
    match cfg.command {
        Command::Decompose => decompose(cfg, &inputs),
        Command::Volume => volume(cfg, &inputs),
        Command::Certify => certify(cfg, &inputs),
        Command::Verify => verify(cfg, &inputs),
        Command::Report => report(cfg, &inputs),
    }
}

fn require_semisimple(name: &str, l: &LieAlgebra) -> Result<(), CliError> {
    if !l.is_semisimple()? {
        return Err(OrbitError::Precondition(format!("`{name}` is not semisimple (Killing form is degenerate)")).into());
    }
    Ok(())
}

fn require_theta(name: &str, theta: Option<LinearMap>) -> Result<LinearMap, CliError> {
    theta.ok_or_else(|| {
        OrbitError::Precondition(format!("no Cartan involution for `{name}`; supply one with a theta input")).into()
    })
}

fn decomposition(cfg: &RunConfig, l: &LieAlgebra, theta: &LinearMap) -> Result<Iwasawa, CliError> {
    let c = validate_cartan(l, theta)?;
    Ok(iwasawa(&c, cfg.seed)?)
}

/// Appendix C checks, skipped (`None`) when the algebra has compact factors.
fn appendix_c_if_applicable(cfg: &RunConfig, iw: &Iwasawa) -> Result<Option<AppendixCReport>, CliError> {
    if !iw.cartan.compact_ideals()?.is_empty() {
        return Ok(None);
    }
    Ok(Some(verify_appendix_c(iw, cfg.samples, cfg.seed)?))
}

fn decompose(cfg: &RunConfig, inputs: &Inputs) -> Result<Outcome, Failure> {
    let (name, l, theta) = inputs.algebra()?;
    require_semisimple(&name, &l)?;
    let theta = require_theta(&name, theta)?;
    let iw = decomposition(cfg, &l, &theta)?;
    let appendix = appendix_c_if_applicable(cfg, &iw)?;
    let mut report = DecompositionReport::new(&name, &iw, appendix.as_ref(), cfg.seed);
    report.tolerance = cfg.tolerance;
    let pass = appendix.as_ref().is_none_or(|a| a.all_pass());
    Ok(Outcome::new(to_value(&report), pass))
}

fn curated_label(inputs: &Inputs) -> Result<Option<Label>, CliError> {
    if let Some(s) = inputs.strata.first() {
        return Ok(Some(s.clone()));
    }
    match inputs.algebras.first() {
        Some((name, l, _)) if name.starts_with("heisenberg") && inputs.algebras.len() == 1 => {
            Ok(Some(Label::heisenberg(l.dim())?))
        }
        _ => Ok(None),
    }
}

#[derive(Serialize)]
struct VolumeReport {
    #[serde(rename = "v_W")]
    v_w: f64,
    #[serde(rename = "v_N")]
    v_n: f64,
    gauge_diag: Vec<f64>,
    degenerate: bool,
    near_degenerate: bool,
    positive_weights: bool,
    weights: Vec<f64>,
    source: &'static str,
}

fn volume(cfg: &RunConfig, inputs: &Inputs) -> Result<Outcome, Failure> {
    let tol = cfg.tolerance;
    let h = inputs
        .inner_products
        .first()
        .ok_or_else(|| CliError::usage("volume needs an inner product input"))?;
    let d = h.dim();
    let background = inputs.inner_products.get(1).cloned().unwrap_or_else(|| InnerProduct::identity(d));
    if background.dim() != d {
        return Err(OrbitError::InputShape(format!("background has dim {}, inner product {d}", background.dim())).into());
    }
    if !background.definite() {
        return Err(OrbitError::Precondition("background inner product is degenerate".into()).into());
    }
    let (v, weights, source) = if let Some(w) = inputs.weights.first() {
        let order: Vec<usize> = (0..d).collect();
        let (_, v) = weighted_volume(h, &background, w, &order, tol)?;
        (v, w.weights().to_vec(), "weights")
    } else if let Some(label) = curated_label(inputs)? {
        let (w, _) = label.weight_frame(0.0, tol)?;
        let (_, v) = v_label(h, &background, &label, 0.0, tol)?;
        (v, w.weights().to_vec(), "beta_plus")
    } else {
        return Err(CliError::usage("volume needs weights, a stratum label, or a heisenberg builtin").into());
    };
    // v_N relative to the background
    let v_n = orbit_density_vn(h) / orbit_density_vn(&background);
    let report = VolumeReport {
        v_w: v.value,
        v_n,
        gauge_diag: v.gauge_diag,
        degenerate: v.degenerate,
        near_degenerate: v.near_degenerate,
        positive_weights: v.positive_weights,
        weights,
        source,
    };
    Ok(Outcome::new(to_value(&report), true))
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

fn certify(cfg: &RunConfig, inputs: &Inputs) -> Result<Outcome, Failure> {
    let (name, l, _) = inputs.algebra()?;
    let metric = match inputs.inner_products.first() {
        Some(h) => Metric::new(h.gram().clone(), cfg.tolerance)?,
        None => Metric::identity(l.dim()),
    };
    let (curvature, pass) = if l.is_nilpotent() {
        let label = curated_label(inputs)?;
        let r = nilsoliton_certificate(&l, &metric, label.as_ref())?;
        let pass = r.soliton.as_ref().is_some_and(|s| s.pass);
        (r, pass)
    } else {
        (ricci_left_invariant(&l, &metric)?, true)
    };
    let report = json!({
        "algebra": name,
        "soliton": to_value(&curvature.soliton),
        "einstein_residual": curvature.einstein_residual,
        "scalar": curvature.scalar,
        "ricci": rows(&curvature.ricci_endomorphism),
        "pass": pass,
        "tolerance": cfg.tolerance,
    });
    Ok(Outcome::new(report, pass))
}

fn verify(cfg: &RunConfig, inputs: &Inputs) -> Result<Outcome, Failure> {
    let (name, l, theta) = inputs.algebra()?;
    let batch = volume_batch(cfg.seed, cfg.samples, cfg.tolerance);
    let partial = |batch: &Result<VolumeBatch, OrbitError>| -> Value {
        json!({
            "algebra": name,
            "volume": batch.as_ref().ok().map(to_value),
            "seed": cfg.seed,
            "samples": cfg.samples,
            "tolerance": cfg.tolerance,
        })
    };
    let structural = || -> Result<AppendixCReport, CliError> {
        require_semisimple(&name, &l)?;
        let theta = require_theta(&name, theta.clone())?;
        let iw = decomposition(cfg, &l, &theta)?;
        Ok(verify_appendix_c(&iw, cfg.samples, cfg.seed)?)
    };
    let appendix = match structural() {
        Ok(a) => a,
        Err(error) => {
            return Err(Failure {
                error,
                partial: Some(partial(&batch)),
            })
        }
    };
    let batch = match batch {
        Ok(b) => b,
        Err(e) => {
            let mut p = partial(&Err(e.clone()));
            p["appendix_c"] = to_value(&appendix);
            return Err(Failure {
                error: e.into(),
                partial: Some(p),
            });
        }
    };
    let pass = appendix.all_pass() && batch.all_pass();
    let mut report = partial(&Ok(batch));
    report["appendix_c"] = to_value(&appendix);
    report["pass"] = json!(pass);
    Ok(Outcome::new(report, pass))
}

fn report(cfg: &RunConfig, inputs: &Inputs) -> Result<Outcome, Failure> {
    let (name, l, theta) = inputs.algebra()?;
    let inv = l.structure_invariants()?;
    let nilradical = l.nilradical()?;
    let simple = if inv.semisimple {
        Some(l.simple_ideals()?.iter().map(|s| s.rank()).collect::<Vec<_>>())
    } else {
        None
    };
    let (decomposition, pass) = match (inv.semisimple, theta) {
        (true, Some(theta)) => {
            let iw = decomposition(cfg, &l, &theta)?;
            let appendix = appendix_c_if_applicable(cfg, &iw)?;
            let mut r = DecompositionReport::new(&name, &iw, appendix.as_ref(), cfg.seed);
            r.tolerance = cfg.tolerance;
            (to_value(&r), appendix.as_ref().is_none_or(|a| a.all_pass()))
        }
        _ => (Value::Null, true),
    };
    let report = json!({
        "algebra": name,
        "dim": l.dim(),
        "basis": l.labels(),
        "invariants": to_value(&inv),
        "derived_dim": l.derived_algebra().rank(),
        "radical_dim": l.radical().rank(),
        "nilradical_dim": nilradical.rank(),
        "simple_ideal_dims": simple,
        "decomposition": decomposition,
        "seed": cfg.seed,
        "tolerance": cfg.tolerance,
    });
    Ok(Outcome::new(report, pass))
}

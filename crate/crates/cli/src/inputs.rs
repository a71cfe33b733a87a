//! Input files. The document type is recognised by its keys: `brackets` for
//! an algebra, `gram` for an inner product, `weights`, `beta` for a stratum
//! label and `theta` for a Cartan involution `{"theta": [[number]]}`.

use std::path::Path;

use nalgebra::DMatrix;
use orbitlab_core::liealg::{LieAlgebraJson, LinearMapData};
use orbitlab_core::semisimple::parse_builtin;
use orbitlab_core::volume::{InnerProductJson, StratumJson, WeightsJson};
use orbitlab_core::{InnerProduct, Label, LieAlgebra, LinearMap, OrbitError, Weights};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone)]
pub enum Input {
    Algebra { name: String, algebra: LieAlgebra },
    InnerProduct(InnerProduct),
    Weights(Weights),
    Stratum(Label),
    Involution(LinearMap),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InvolutionJson {
    theta: Vec<Vec<f64>>,
}

fn format_error(field: &str, e: serde_json::Error) -> OrbitError {
    OrbitError::Format {
        field: field.into(),
        message: format!("{e} (line {}, column {})", e.line(), e.column()),
    }
}

fn typed<D: DeserializeOwned>(text: &str, field: &str) -> Result<D, OrbitError> {
    serde_json::from_str(text).map_err(|e| format_error(field, e))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "input".into())
}

/// Algebra files without a tolerance field inherit `tolerance`.
fn algebra_from_text(text: &str, tolerance: f64) -> Result<LieAlgebra, OrbitError> {
    let mut doc = LieAlgebraJson::parse(text)?;
    if doc.tolerance.is_none() {
        doc.tolerance = Some(tolerance);
    }
    doc.into_algebra()
}

pub fn load_algebra(path: &Path) -> Result<LieAlgebra, CliError> {
    Ok(LieAlgebraJson::parse(&read(path)?)?.into_algebra()?)
}

pub fn parse_input(text: &str, name: String, tolerance: f64) -> Result<Input, OrbitError> {
    let value: Value = typed(text, "document")?;
    let Value::Object(map) = &value else {
        return Err(OrbitError::Format {
            field: "document".into(),
            message: "expected a JSON object".into(),
        });
    };
    let has = |k: &str| map.contains_key(k);
    if has("brackets") || has("basis") {
        Ok(Input::Algebra {
            name,
            algebra: algebra_from_text(text, tolerance)?,
        })
    } else if has("gram") {
        Ok(Input::InnerProduct(typed::<InnerProductJson>(text, "gram")?.into_inner_product(tolerance)?))
    } else if has("weights") {
        Ok(Input::Weights(typed::<WeightsJson>(text, "weights")?.into_weights(tolerance)?))
    } else if has("beta") {
        Ok(Input::Stratum(typed::<StratumJson>(text, "beta")?.into_label(tolerance)?))
    } else if has("theta") {
        let doc: InvolutionJson = typed(text, "theta")?;
        let d = doc.theta.len();
        if doc.theta.iter().any(|r| r.len() != d) {
            return Err(OrbitError::Format {
                field: "theta".into(),
                message: format!("expected a {d}x{d} array"),
            });
        }
        let m = DMatrix::from_fn(d, d, |i, j| doc.theta[i][j]);
        Ok(Input::Involution(LinearMapData::new(m, "supplied involution")?))
    } else {
        Err(OrbitError::Format {
            field: "document".into(),
            message: "unrecognised input: expected one of brackets, gram, weights, beta, theta".into(),
        })
    }
}

/// Everything named on the command line, in order.
#[derive(Debug, Clone, Default)]
pub struct Inputs {
    pub algebras: Vec<(String, LieAlgebra, Option<LinearMap>)>,
    pub inner_products: Vec<InnerProduct>,
    pub weights: Vec<Weights>,
    pub strata: Vec<Label>,
    pub involutions: Vec<LinearMap>,
}

impl Inputs {
    pub fn load(builtins: &[String], paths: &[std::path::PathBuf], tolerance: f64) -> Result<Self, CliError> {
        let mut out = Inputs::default();
        for spec in builtins {
            let b = parse_builtin::<f64>(spec)?;
            let algebra = b.algebra.with_tolerance(tolerance)?;
            out.algebras.push((b.name, algebra, b.theta));
        }
        for p in paths {
            match parse_input(&read(p)?, stem(p), tolerance)? {
                Input::Algebra { name, algebra } => out.algebras.push((name, algebra, None)),
                Input::InnerProduct(h) => out.inner_products.push(h),
                Input::Weights(w) => out.weights.push(w),
                Input::Stratum(s) => out.strata.push(s),
                Input::Involution(t) => out.involutions.push(t),
            }
        }
        Ok(out)
    }

    /// The single algebra of the run, with its involution: a supplied
    /// `theta` file overrides the builtin one.
    pub fn algebra(&self) -> Result<(String, LieAlgebra, Option<LinearMap>), CliError> {
        match self.algebras.as_slice() {
            [(name, a, theta)] => {
                let theta = self.involutions.first().cloned().or_else(|| theta.clone());
                Ok((name.clone(), a.clone(), theta))
            }
            [] => Err(CliError::usage("no algebra given (use --builtin or an algebra --input)")),
            _ => Err(CliError::usage("more than one algebra given")),
        }
    }
}

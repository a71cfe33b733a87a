//! Lie algebra JSON format:
//! `{"dim": int, "basis": [string], "brackets": [{"i","j","k","c"}], "tolerance": number?}`
//! with 0-based indices and only `i < j` entries listed.

use serde::{Deserialize, Serialize};

use super::LieAlgebraData;
use crate::error::{OrbitError, Result};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraJson {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

fn format_err(field: &str, message: impl Into<String>) -> OrbitError {
    OrbitError::Format {
        field: field.into(),
        message: message.into(),
    }
}

impl LieAlgebraJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            format_err(
                "document",
                format!("{e} (line {}, column {})", e.line(), e.column()),
            )
        })
    }

    pub fn into_algebra<T: Scalar>(self) -> Result<LieAlgebraData<T>> {
        if self.dim == 0 {
            return Err(format_err("dim", "must be positive"));
        }
        if self.basis.len() != self.dim {
            return Err(format_err(
                "basis",
                format!("has {} labels, dim is {}", self.basis.len(), self.dim),
            ));
        }
        let tol = match self.tolerance {
            Some(t) if t > 0.0 && t.is_finite() => T::lit(t),
            Some(t) => return Err(format_err("tolerance", format!("must be positive, got {t}"))),
            None => T::default_tolerance(),
        };
        let mut entries = Vec::with_capacity(self.brackets.len());
        for (pos, b) in self.brackets.iter().enumerate() {
            let field = format!("brackets[{pos}]");
            if b.i >= self.dim || b.j >= self.dim || b.k >= self.dim {
                return Err(format_err(&field, "index out of range"));
            }
            if b.i == b.j {
                return Err(format_err(&field, "bracket of a basis element with itself must vanish (antisymmetry)"));
            }
            if b.i > b.j {
                return Err(format_err(&field, "only entries with i < j may be listed"));
            }
            if !b.c.is_finite() {
                return Err(format_err(&field, "coefficient is not finite"));
            }
            entries.push((b.i, b.j, b.k, T::lit(b.c)));
        }
        LieAlgebraData::from_brackets(self.basis, &entries, tol)
    }

    pub fn from_algebra<T: Scalar>(alg: &LieAlgebraData<T>) -> Self {
        Self {
            dim: alg.dim(),
            basis: alg.labels().to_vec(),
            brackets: alg
                .nonzero_brackets()
                .into_iter()
                .map(|(i, j, k, c)| BracketEntry { i, j, k, c: c.as_f64() })
                .collect(),
            tolerance: Some(alg.tolerance().as_f64()),
        }
    }
}

impl<T: Scalar> LieAlgebraData<T> {
    pub fn from_json(text: &str) -> Result<Self> {
        LieAlgebraJson::parse(text)?.into_algebra()
    }

    pub fn to_json(&self) -> LieAlgebraJson {
        LieAlgebraJson::from_algebra(self)
    }
}

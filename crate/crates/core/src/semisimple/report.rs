use serde::Serialize;

use super::{AppendixCReport, IwasawaData};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionDims {
    pub k: usize,
    pub a: usize,
    pub n: usize,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootSummary {
    pub lambda: Vec<f64>,
    pub mult: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppendixCFlags {
    pub span: bool,
    pub bracket_contains_ma: bool,
    pub centralizers_trivial: bool,
    pub normalizer_k: bool,
}

/// Machine-readable summary of an Iwasawa decomposition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub algebra: String,
    pub dims: DecompositionDims,
    pub split: bool,
    pub roots: Vec<RootSummary>,
    pub appendix_c: Option<AppendixCFlags>,
    pub seed: u64,
    pub tolerance: f64,
}

impl DecompositionReport {
    pub fn new<T: Scalar>(name: &str, iw: &IwasawaData<T>, appendix: Option<&AppendixCReport>, seed: u64) -> Self {
        DecompositionReport {
            algebra: name.to_string(),
            dims: DecompositionDims {
                k: iw.dim_k(),
                a: iw.a.rank(),
                n: iw.n.rank(),
                m: iw.m.rank(),
            },
            split: iw.split,
            roots: iw
                .roots
                .iter()
                .map(|r| RootSummary {
                    lambda: r.functional.iter().map(|x| x.as_f64()).collect(),
                    mult: r.multiplicity,
                })
                .collect(),
            appendix_c: appendix.map(|r| AppendixCFlags {
                span: r.span.pass,
                bracket_contains_ma: r.bracket_contains_ma.pass,
                centralizers_trivial: r.centralizers_trivial.pass,
                normalizer_k: r.normalizer_k.pass,
            }),
            seed,
            tolerance: iw.cartan.tolerance().as_f64(),
        }
    }
}

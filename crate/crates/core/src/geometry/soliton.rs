use nalgebra::{DMatrix, DVector};

use super::ricci::{ricci_left_invariant, CurvatureReport, LabelChecks, MetricData, SolitonFit};
use crate::error::{OrbitError, Result};
use crate::liealg::LieAlgebraData;
use crate::linalg;
use crate::volume::StratumLabel;
use crate::Scalar;

fn rows<T: Scalar>(m: &DMatrix<T>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)].as_f64()).collect()).collect()
}

/// Best fit `Ric = c·Id + D` with `D ∈ Der(l)`, by minimal-norm least
/// squares in an orthonormal frame. With a label, also checks
/// `D/tr D = β⁺/tr β⁺`, `scal/c = dim − tr β⁺` and `c < 0`; these are the
/// scale-invariant forms of the soliton identities.
pub fn nilsoliton_certificate<T: Scalar>(
    l: &LieAlgebraData<T>,
    m: &MetricData<T>,
    label: Option<&StratumLabel<T>>,
) -> Result<CurvatureReport<T>> {
    if !l.is_nilpotent() {
        return Err(OrbitError::Precondition("nilsoliton certificates need a nilpotent algebra".into()));
    }
    let mut report = ricci_left_invariant(l, m)?;
    let n = l.dim();
    let tol = l.tolerance();
    let e = m.orthonormal_frame();
    let e_inv = e.clone().try_inverse().expect("frame is invertible");
    let ders: Vec<DMatrix<T>> = l.derivations().matrices().iter().map(|d| &e_inv * d * &e).collect();

    // columns: vec(Id), vec(D_1), …
    let mut a = DMatrix::zeros(n * n, ders.len() + 1);
    a.set_column(0, &DVector::from_column_slice(DMatrix::<T>::identity(n, n).as_slice()));
    for (j, d) in ders.iter().enumerate() {
        a.set_column(j + 1, &DVector::from_column_slice(d.as_slice()));
    }
    let ric = &report.ricci_orthonormal;
    let x = linalg::pseudo_inverse(&a, tol) * DVector::from_column_slice(ric.as_slice());
    let c = x[0];
    let mut d = DMatrix::zeros(n, n);
    for (j, dj) in ders.iter().enumerate() {
        d += dj * x[j + 1];
    }
    let residual = (ric - DMatrix::identity(n, n) * c - &d).norm();
    let ric_norm = ric.norm();
    let pass = residual <= tol * ric_norm;

    let label_checks = match label {
        None => None,
        Some(lab) => {
            if lab.dim() != n {
                return Err(OrbitError::InputShape(format!("label has dim {}, algebra {n}", lab.dim())));
            }
            let bp = &e_inv * &lab.beta_plus * &e;
            let tr_d = d.trace();
            let tr_b = bp.trace();
            let proportionality = if tr_d.abs() > tol {
                (&d / tr_d - &bp / tr_b).norm()
            } else {
                T::lit(f64::INFINITY)
            };
            let dim = T::from_usize(n).expect("usize");
            let scalar_residual = if c.abs() > tol {
                (report.scalar / c - (dim - tr_b)).abs()
            } else {
                T::lit(f64::INFINITY)
            };
            let c_negative = c < T::zero();
            let ok = proportionality <= tol && scalar_residual <= tol && c_negative;
            Some(LabelChecks {
                proportionality_residual: proportionality.as_f64(),
                scalar_residual: scalar_residual.as_f64(),
                c_negative,
                pass: ok,
            })
        }
    };
    report.soliton = Some(SolitonFit {
        c: c.as_f64(),
        derivation: rows(&(&e * &d * &e_inv)),
        residual: residual.as_f64(),
        pass: pass && label_checks.as_ref().is_none_or(|x| x.pass),
        label: label_checks,
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semisimple::builtin;
    use approx::assert_relative_eq;

    #[test]
    fn heisenberg_soliton() {
        let l = builtin::heisenberg::<f64>(3).unwrap().algebra;
        let label = StratumLabel::heisenberg(3).unwrap();
        let r = nilsoliton_certificate(&l, &MetricData::identity(3), Some(&label)).unwrap();
        let s = r.soliton.unwrap();
        assert_relative_eq!(s.c, -1.5, epsilon = 1e-12);
        let d = DMatrix::from_fn(3, 3, |i, j| s.derivation[i][j]);
        assert_relative_eq!(d, DMatrix::from_diagonal(&DVector::from_column_slice(&[1.0, 1.0, 2.0])), epsilon = 1e-12);
        assert!(s.residual <= 1e-10);
        assert!(s.pass, "{s:?}");
    }

    #[test]
    fn abelian_is_trivially_a_soliton() {
        let l = builtin::abelian::<f64>(3).unwrap().algebra;
        let s = nilsoliton_certificate(&l, &MetricData::identity(3), None).unwrap().soliton.unwrap();
        assert_eq!(s.c, 0.0);
        assert!(s.derivation.iter().flatten().all(|&x| x == 0.0));
        assert!(s.pass);
    }

    #[test]
    fn non_nilpotent_is_refused() {
        let l = builtin::borel_sl2::<f64>().unwrap().algebra;
        assert!(matches!(
            nilsoliton_certificate(&l, &MetricData::identity(2), None),
            Err(OrbitError::Precondition(_))
        ));
    }

    #[test]
    fn generic_heisenberg5_metric_is_not_a_soliton() {
        let l = builtin::heisenberg::<f64>(5).unwrap().algebra;
        let g = DMatrix::from_fn(5, 5, |i, j| if i == j { [1.0, 2.0, 5.0, 3.0, 1.5][i] } else { 0.2 / (1.0 + (i + j) as f64) });
        let s = nilsoliton_certificate(&l, &MetricData::new(g, 1e-9).unwrap(), None).unwrap().soliton.unwrap();
        assert!(s.residual >= 1e-3, "{}", s.residual);
        assert!(!s.pass);
    }
}

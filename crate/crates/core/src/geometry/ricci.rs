use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::error::{OrbitError, Result};
use crate::liealg::LieAlgebraData;
use crate::linalg;
use crate::Scalar;

/// Largest condition number of a Gram matrix accepted by the curvature code.
pub const MAX_CONDITION: f64 = 1e12;

/// A left-invariant metric: a positive-definite Gram matrix on the
/// algebra's basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricData<T: Scalar> {
    gram: DMatrix<T>,
    condition: T,
}

impl<T: Scalar> MetricData<T> {
    pub fn new(gram: DMatrix<T>, tol: T) -> Result<Self> {
        if !gram.is_square() || gram.nrows() == 0 {
            return Err(OrbitError::InputShape(format!("gram is {}x{}", gram.nrows(), gram.ncols())));
        }
        if gram.iter().any(|x| !x.is_finite()) {
            return Err(OrbitError::Input("gram has non-finite entries".into()));
        }
        let scale = linalg::max_abs(&gram).max(T::one());
        if linalg::max_abs(&(&gram - gram.transpose())) > tol * scale {
            return Err(OrbitError::Input("gram is not symmetric".into()));
        }
        let gram = linalg::symmetrize(&gram);
        let eig = SymmetricEigen::new(gram.clone()).eigenvalues;
        let lo = eig.iter().fold(eig[0], |m, &x| m.min(x));
        let hi = eig.iter().fold(eig[0], |m, &x| m.max(x));
        if lo <= tol {
            return Err(OrbitError::Input(format!("gram is not positive definite (eigenvalue {lo})")));
        }
        Ok(Self { gram, condition: hi / lo })
    }

    pub fn identity(d: usize) -> Self {
        Self::new(DMatrix::identity(d, d), T::default_tolerance()).expect("identity")
    }

    pub fn gram(&self) -> &DMatrix<T> {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn condition_number(&self) -> T {
        self.condition
    }

    /// Columns form a `gram`-orthonormal basis: `Eᵀ G E = Id`.
    pub fn orthonormal_frame(&self) -> DMatrix<T> {
        let l = self.gram.clone().cholesky().expect("definite").l();
        l.transpose()
            .solve_upper_triangular(&DMatrix::identity(self.dim(), self.dim()))
            .expect("invertible")
    }

    /// `h(φ⁻¹·, φ⁻¹·)`.
    pub fn pushforward(&self, phi: &DMatrix<T>, tol: T) -> Result<Self> {
        let inv = phi
            .clone()
            .try_inverse()
            .ok_or_else(|| OrbitError::Input("map is singular".into()))?;
        Self::new(inv.transpose() * &self.gram * inv, tol)
    }
}

fn check_dims<T: Scalar>(l: &LieAlgebraData<T>, m: &MetricData<T>) -> Result<()> {
    if l.dim() != m.dim() {
        return Err(OrbitError::InputShape(format!(
            "metric has dim {}, algebra has dim {}",
            m.dim(),
            l.dim()
        )));
    }
    Ok(())
}

/// `H` with `⟨H, X⟩ = tr ad X`.
pub fn mean_curvature_element<T: Scalar>(l: &LieAlgebraData<T>, m: &MetricData<T>) -> Result<DVector<T>> {
    check_dims(l, m)?;
    let t = DVector::from_iterator(l.dim(), (0..l.dim()).map(|i| l.ad_basis(i).trace()));
    m.gram
        .clone()
        .cholesky()
        .map(|c| c.solve(&t))
        .ok_or_else(|| OrbitError::Input("gram is not positive definite".into()))
}

/// Soliton part of a curvature report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolitonFit {
    pub c: f64,
    #[serde(rename = "D")]
    pub derivation: Vec<Vec<f64>>,
    pub residual: f64,
    pub pass: bool,
    /// Present when a stratum label was supplied.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<LabelChecks>,
}

/// Scale-invariant identities relating the soliton to `β⁺`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabelChecks {
    /// `‖D/tr D − β⁺/tr β⁺‖`.
    pub proportionality_residual: f64,
    /// `|scal/c − (dim − tr β⁺)|`.
    pub scalar_residual: f64,
    pub c_negative: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureReport<T: Scalar> {
    /// Ricci endomorphism `G⁻¹ ric` in the algebra's basis.
    pub ricci_endomorphism: DMatrix<T>,
    /// The same endomorphism in the orthonormal frame of
    /// [`MetricData::orthonormal_frame`]; symmetric.
    pub ricci_orthonormal: DMatrix<T>,
    pub scalar: T,
    pub mean_curvature_element: DVector<T>,
    /// `‖Ric − (scal/dim)·Id‖` in the orthonormal frame.
    pub einstein_residual: T,
    pub soliton: Option<SolitonFit>,
}

/// Ricci curvature of the left-invariant metric `m`, from
/// `ric(X,Y) = −½ Σ⟨[X,e_i],[Y,e_i]⟩ − ½ B(X,Y) + ¼ Σ⟨[e_i,e_j],X⟩⟨[e_i,e_j],Y⟩
///            − ½ (⟨[H,X],Y⟩ + ⟨[H,Y],X⟩)`
/// over an orthonormal frame `e_i`, `H` the mean-curvature element.
pub fn ricci_left_invariant<T: Scalar>(l: &LieAlgebraData<T>, m: &MetricData<T>) -> Result<CurvatureReport<T>> {
    check_dims(l, m)?;
    if m.condition_number() > T::lit(MAX_CONDITION) {
        return Err(OrbitError::Conditioning(m.condition_number().as_f64()));
    }
    let n = l.dim();
    let e = m.orthonormal_frame();
    let e_inv = e.clone().try_inverse().expect("frame is invertible");
    // ad of the frame vectors, written in the frame
    let ads: Vec<DMatrix<T>> = (0..n).map(|a| &e_inv * l.ad(&e.column(a).into_owned()) * &e).collect();
    let h: DVector<T> = DVector::from_iterator(n, ads.iter().map(|a| a.trace()));
    let mut ad_h = DMatrix::zeros(n, n);
    for (a, ad) in ads.iter().enumerate() {
        ad_h += ad * h[a];
    }
    let half = T::lit(0.5);
    let quarter = T::lit(0.25);
    let mut ric = DMatrix::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let t1 = -(ads[a].transpose() * &ads[b]).trace() * half;
            let t2 = -(&ads[a] * &ads[b]).trace() * half;
            let mut t3 = T::zero();
            for ad_i in &ads {
                // ⟨[e_i, e_j], e_a⟩ = (ad e_i)_{a j}
                t3 += ad_i.row(a).dot(&ad_i.row(b));
            }
            let t4 = -(ad_h[(b, a)] + ad_h[(a, b)]) * half;
            let v = t1 + t2 + t3 * quarter + t4;
            ric[(a, b)] = v;
            ric[(b, a)] = v;
        }
    }
    let scalar = ric.trace();
    let mean = scalar / T::from_usize(n).expect("usize");
    let einstein_residual = (&ric - DMatrix::identity(n, n) * mean).norm();
    Ok(CurvatureReport {
        ricci_endomorphism: &e * &ric * &e_inv,
        ricci_orthonormal: ric,
        scalar,
        mean_curvature_element: &e * h,
        einstein_residual,
        soliton: None,
    })
}

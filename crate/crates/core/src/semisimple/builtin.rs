//! Builtin algebras in canonical matrix bases.
//!
//! Matrix families are built from explicit basis matrices; structure
//! constants and the Cartan involution are read off by least squares in the
//! span of the basis.

use nalgebra::{DMatrix, DVector};

use crate::error::{OrbitError, Result};
use crate::liealg::{LieAlgebraData, LinearMapData};
use crate::Scalar;

/// A builtin algebra and its Cartan involution (absent for non-semisimple
/// families).
#[derive(Debug, Clone)]
pub struct Builtin<T: Scalar> {
    pub name: String,
    pub algebra: LieAlgebraData<T>,
    pub theta: Option<LinearMapData<T>>,
}

fn unit<T: Scalar>(n: usize, i: usize, j: usize) -> DMatrix<T> {
    let mut m = DMatrix::zeros(n, n);
    m[(i, j)] = T::one();
    m
}

/// Structure constants and involution of a matrix Lie algebra given by an
/// explicit basis. `involution` acts on matrices.
fn from_matrix_basis<T: Scalar>(
    labels: Vec<String>,
    basis: &[DMatrix<T>],
    involution: Option<&dyn Fn(&DMatrix<T>) -> DMatrix<T>>,
    description: &str,
) -> Result<(LieAlgebraData<T>, Option<LinearMapData<T>>)> {
    let d = basis.len();
    let n2 = basis[0].len();
    let mut phi = DMatrix::zeros(n2, d);
    for (j, b) in basis.iter().enumerate() {
        phi.set_column(j, &DVector::from_column_slice(b.as_slice()));
    }
    let pinv = crate::linalg::pseudo_inverse(&phi, T::lit(1e-12));
    let coords = |m: &DMatrix<T>| -> Result<DVector<T>> {
        let v = DVector::from_column_slice(m.as_slice());
        let c = &pinv * &v;
        if (&phi * &c - v).norm() > T::lit(1e-6) {
            return Err(OrbitError::AlgorithmFailure(format!(
                "{description}: matrix basis is not closed"
            )));
        }
        Ok(c)
    };
    let mut consts = vec![T::zero(); d * d * d];
    for i in 0..d {
        for j in 0..d {
            let br = &basis[i] * &basis[j] - &basis[j] * &basis[i];
            let c = coords(&br)?;
            for k in 0..d {
                // exact small integers in every family built here
                consts[(i * d + j) * d + k] = c[k].round_to_grid();
            }
        }
    }
    let alg = LieAlgebraData::from_dense(labels, consts, T::default_tolerance())?;
    let theta = match involution {
        Some(f) => {
            let mut m = DMatrix::zeros(d, d);
            for (j, b) in basis.iter().enumerate() {
                let c = coords(&f(b))?;
                m.set_column(j, &c.map(|x| x.round_to_grid()));
            }
            Some(LinearMapData::new(m, description)?)
        }
        None => None,
    };
    Ok((alg, theta))
}

trait RoundToGrid {
    fn round_to_grid(self) -> Self;
}

impl<T: Scalar> RoundToGrid for T {
    /// Snaps values within 1e-12 of a multiple of 1/2 onto it.
    fn round_to_grid(self) -> Self {
        let two = T::lit(2.0);
        let r = (self * two).round() / two;
        if (r - self).abs() < T::lit(1e-12) {
            r
        } else {
            self
        }
    }
}

/// `sl(n, ℝ)` with basis `H_i = E_ii − E_{i+1,i+1}`, then `E_ij` (i < j),
/// then `E_ji`; `θ(X) = −Xᵀ`.
pub fn sl<T: Scalar>(n: usize) -> Result<Builtin<T>> {
    if n < 2 {
        return Err(OrbitError::Input(format!("sl(n) needs n >= 2, got {n}")));
    }
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    let short = n == 2;
    for i in 0..n - 1 {
        labels.push(if short { "H".into() } else { format!("H{}", i + 1) });
        basis.push(unit::<T>(n, i, i) - unit::<T>(n, i + 1, i + 1));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            labels.push(if short { "E".into() } else { format!("E{}{}", i + 1, j + 1) });
            basis.push(unit(n, i, j));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            labels.push(if short { "F".into() } else { format!("F{}{}", j + 1, i + 1) });
            basis.push(unit(n, j, i));
        }
    }
    let theta = |x: &DMatrix<T>| -x.transpose();
    let (algebra, theta) = from_matrix_basis(labels, &basis, Some(&theta), "theta(X) = -X^T")?;
    Ok(Builtin {
        name: format!("sl:{n}"),
        algebra,
        theta,
    })
}

/// `so(p, q)`: matrices with `XᵀJ + JX = 0`, `J = diag(I_p, −I_q)`. Basis
/// `E_ab − E_ba` inside a sign block, `E_ab + E_ba` across blocks;
/// `θ(X) = −Xᵀ`.
pub fn so_pq<T: Scalar>(p: usize, q: usize) -> Result<Builtin<T>> {
    let n = p + q;
    if n < 2 {
        return Err(OrbitError::Input(format!("so(p,q) needs p + q >= 2, got ({p},{q})")));
    }
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let same = (a < p) == (b < p);
            if same {
                labels.push(format!("K{}{}", a + 1, b + 1));
                basis.push(unit::<T>(n, a, b) - unit::<T>(n, b, a));
            } else {
                labels.push(format!("P{}{}", a + 1, b + 1));
                basis.push(unit::<T>(n, a, b) + unit::<T>(n, b, a));
            }
        }
    }
    let theta = |x: &DMatrix<T>| -x.transpose();
    let (algebra, theta) = from_matrix_basis(labels, &basis, Some(&theta), "theta(X) = -X^T")?;
    Ok(Builtin {
        name: format!("so:{p},{q}"),
        algebra,
        theta,
    })
}

/// Heisenberg algebra of dimension `2m + 1`: `[e_i, e_{m+i}] = e_{2m+1}`.
pub fn heisenberg<T: Scalar>(dim: usize) -> Result<Builtin<T>> {
    if dim < 3 || dim % 2 == 0 {
        return Err(OrbitError::Input(format!(
            "heisenberg dimension must be odd and >= 3, got {dim}"
        )));
    }
    let m = (dim - 1) / 2;
    let labels = (1..=dim).map(|i| format!("e{i}")).collect();
    let brackets: Vec<_> = (0..m).map(|i| (i, m + i, dim - 1, T::one())).collect();
    Ok(Builtin {
        name: format!("heisenberg:{dim}"),
        algebra: LieAlgebraData::from_brackets(labels, &brackets, T::default_tolerance())?,
        theta: None,
    })
}

pub fn abelian<T: Scalar>(dim: usize) -> Result<Builtin<T>> {
    if dim == 0 {
        return Err(OrbitError::Input("abelian dimension must be positive".into()));
    }
    let labels = (1..=dim).map(|i| format!("e{i}")).collect();
    Ok(Builtin {
        name: format!("abelian:{dim}"),
        algebra: LieAlgebraData::from_brackets(labels, &[], T::default_tolerance())?,
        theta: None,
    })
}

/// Borel subalgebra of `sl(2, ℝ)`: `[A, E] = E`.
pub fn borel_sl2<T: Scalar>() -> Result<Builtin<T>> {
    Ok(Builtin {
        name: "borel_sl2".into(),
        algebra: LieAlgebraData::from_brackets(
            vec!["A".into(), "E".into()],
            &[(0, 1, 1, T::one())],
            T::default_tolerance(),
        )?,
        theta: None,
    })
}

/// Looks up a family by name.
pub fn builtin_algebra<T: Scalar>(name: &str, params: &[usize]) -> Result<Builtin<T>> {
    let bad = || OrbitError::Input(format!("bad parameters {params:?} for builtin `{name}`"));
    match name {
        "sl" => match params {
            [n] => sl(*n),
            _ => Err(bad()),
        },
        "so_pq" | "so" => match params {
            [p, q] => so_pq(*p, *q),
            _ => Err(bad()),
        },
        "heisenberg" => match params {
            [d] => heisenberg(*d),
            [] => heisenberg(3),
            _ => Err(bad()),
        },
        "abelian" => match params {
            [d] => abelian(*d),
            _ => Err(bad()),
        },
        "borel_sl2" | "borel" => match params {
            [] => borel_sl2(),
            _ => Err(bad()),
        },
        _ => Err(OrbitError::Input(format!("unknown builtin algebra `{name}`"))),
    }
}

/// Parses `name:p1,p2` and `+`-separated direct sums such as
/// `sl:2+so:3,0`. The involution of a sum is block diagonal and present only
/// when every summand has one.
pub fn parse_builtin<T: Scalar>(spec: &str) -> Result<Builtin<T>> {
    let mut parts = spec.split('+').map(str::trim);
    let first = parse_single(parts.next().unwrap_or_default())?;
    parts.try_fold(first, |acc, p| {
        let next = parse_single::<T>(p)?;
        let algebra = acc.algebra.direct_sum(&next.algebra)?;
        let theta = match (&acc.theta, &next.theta) {
            (Some(a), Some(b)) => {
                let (n1, n2) = (a.dim(), b.dim());
                let mut m = DMatrix::zeros(n1 + n2, n1 + n2);
                m.view_mut((0, 0), (n1, n1)).copy_from(&a.matrix);
                m.view_mut((n1, n1), (n2, n2)).copy_from(&b.matrix);
                Some(LinearMapData::new(m, "block-diagonal involution")?)
            }
            _ => None,
        };
        Ok(Builtin {
            name: format!("{}+{}", acc.name, next.name),
            algebra,
            theta,
        })
    })
}

fn parse_single<T: Scalar>(spec: &str) -> Result<Builtin<T>> {
    let (name, args) = match spec.split_once(':') {
        Some((n, a)) => (n, a),
        None => (spec, ""),
    };
    let params = args
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| OrbitError::Input(format!("bad builtin parameter `{s}` in `{spec}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    builtin_algebra(name.trim(), &params)
}

//! Iwasawa data of so(p, q) and sl(n) against the classical dimension
//! counts, and independence of the choices made along the way.

use orbitlab_core::liealg::LieAlgebraData;
use orbitlab_core::semisimple::{iwasawa, parse_builtin, validate_cartan, verify_appendix_c, IwasawaData};

fn decompose(spec: &str, seed: u64) -> IwasawaData<f64> {
    let b = parse_builtin::<f64>(spec).unwrap();
    let c = validate_cartan(&b.algebra, b.theta.as_ref().unwrap()).unwrap();
    iwasawa(&c, seed).unwrap()
}

/// so(p, q), p ≤ q: k = so(p) ⊕ so(q), a of dim p, m = so(q − p).
fn so_counts(p: usize, q: usize) -> (usize, usize, usize, usize) {
    let so = |n: usize| n * n.saturating_sub(1) / 2;
    let dim = so(p + q);
    let (k, a, m) = (so(p) + so(q), p, so(q - p));
    (k, a, (dim - m - a) / 2, m)
}

#[test]
fn so_pq_dimensions() {
    for (p, q) in [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4)] {
        let iw = decompose(&format!("so:{p},{q}"), 42);
        let got = (iw.dim_k(), iw.a.rank(), iw.n.rank(), iw.m.rank());
        assert_eq!(got, so_counts(p, q), "so({p},{q})");
        assert_eq!(iw.split, so_counts(p, q).3 == 0);
    }
}

#[test]
fn dimension_identity_and_multiplicities() {
    for spec in ["sl:2", "sl:3", "sl:4", "so:2,3", "so:1,4", "sl:2+sl:2"] {
        let iw = decompose(spec, 42);
        let dim = iw.cartan.algebra.dim();
        assert_eq!(dim, iw.m.rank() + iw.a.rank() + 2 * iw.n.rank(), "{spec}");
        assert_eq!(dim, iw.dim_k() + iw.a.rank() + iw.n.rank(), "{spec}");
        let positive: usize = iw.positive_roots.iter().map(|&i| iw.roots[i].multiplicity).sum();
        assert_eq!(positive, iw.n.rank());
        for i in 0..iw.roots.len() {
            let j = iw.opposite_root(i).expect("roots come in ± pairs");
            assert_eq!(iw.roots[i].multiplicity, iw.roots[j].multiplicity);
        }
    }
}

#[test]
fn choice_of_positive_system_does_not_matter() {
    for spec in ["sl:3", "so:2,3", "so:1,4"] {
        let dims: Vec<_> = [1u64, 7, 42, 1234]
            .iter()
            .map(|&s| {
                let iw = decompose(spec, s);
                let mut mult: Vec<usize> = iw.roots.iter().map(|r| r.multiplicity).collect();
                mult.sort();
                (iw.dim_k(), iw.a.rank(), iw.n.rank(), iw.m.rank(), mult)
            })
            .collect();
        assert!(dims.windows(2).all(|w| w[0] == w[1]), "{spec}: {dims:?}");
    }
}

#[test]
fn nilradical_is_theta_swapped_and_nilpotent() {
    let iw = decompose("sl:4", 3);
    let l = &iw.cartan.algebra;
    let tol = 1e-8;
    assert!(l.is_nilpotent_subalgebra(&iw.n));
    assert!(iw.n.image(&iw.cartan.theta.matrix, tol).same_as(&iw.n_minus, tol));
    assert!(l.is_subalgebra(&iw.borel));
    assert!(l.is_solvable_subalgebra(&iw.borel));
}

#[test]
fn borel_nilradical_checks_pass_on_noncompact_algebras() {
    for spec in ["sl:2", "sl:3", "so:2,3", "so:1,3"] {
        let r = verify_appendix_c(&decompose(spec, 42), 8, 42).unwrap();
        assert!(r.all_pass(), "{spec}: {r:?}");
    }
}

#[test]
fn structure_of_solvable_examples() {
    let borel = parse_builtin::<f64>("borel").unwrap().algebra;
    assert_eq!(borel.radical().rank(), 2);
    assert_eq!(borel.nilradical().unwrap().rank(), 1);
    assert_eq!(borel.derived_algebra().rank(), 1);
    assert!(!borel.is_unimodular());

    let h5 = parse_builtin::<f64>("heisenberg:5").unwrap().algebra;
    // Der(h_{2m+1}) = sp(2m) ⋉ ... of dim 2m² + m + 2m + 1 (m = 2: 15)
    assert_eq!(h5.derivations().rank(), 15);
    let h3 = parse_builtin::<f64>("heisenberg:3").unwrap().algebra;
    assert_eq!(h3.derivations().rank(), 6);

    let sl3 = parse_builtin::<f64>("sl:3").unwrap().algebra;
    // every derivation of a semisimple algebra is inner
    assert_eq!(sl3.derivations().rank(), 8);
    assert_eq!(sl3.simple_ideals().unwrap().len(), 1);
    let sum = parse_builtin::<f64>("sl:2+so:3,0").unwrap().algebra;
    let mut dims: Vec<usize> = sum.simple_ideals().unwrap().iter().map(|s| s.rank()).collect();
    dims.sort();
    assert_eq!(dims, vec![3, 3]);
    // so(1,3) ≅ sl(2,ℂ) is simple with centroid ℂ
    let lorentz = parse_builtin::<f64>("so:1,3").unwrap().algebra;
    assert_eq!(lorentz.simple_ideals().unwrap().len(), 1);
}

#[test]
fn json_round_trip_preserves_structure_constants() {
    let sl3 = parse_builtin::<f64>("sl:3").unwrap().algebra;
    let text = serde_json::to_string(&sl3.to_json()).unwrap();
    let back = LieAlgebraData::<f64>::from_json(&text).unwrap();
    assert_eq!(back.dim(), 8);
    for (i, j, k, c) in sl3.nonzero_brackets() {
        assert_eq!(back.structure_constant(i, j, k), c);
    }
}

#[test]
fn jacobi_failure_is_reported() {
    // [e0,e1] = e2, [e1,e2] = e0, [e0,e2] = e0 violates Jacobi
    let text = r#"{"dim": 3, "basis": ["a","b","c"], "brackets": [
        {"i":0,"j":1,"k":2,"c":1.0}, {"i":1,"j":2,"k":0,"c":1.0}, {"i":0,"j":2,"k":0,"c":1.0}]}"#;
    let err = LieAlgebraData::<f64>::from_json(text).unwrap_err();
    assert!(matches!(err, orbitlab_core::OrbitError::Jacobi { .. }), "{err}");
}

#[test]
fn single_precision_decomposition() {
    let b = parse_builtin::<f32>("sl:3").unwrap();
    let c = validate_cartan(&b.algebra, b.theta.as_ref().unwrap()).unwrap();
    let iw = iwasawa(&c, 42).unwrap();
    assert_eq!((iw.dim_k(), iw.a.rank(), iw.n.rank(), iw.m.rank()), (3, 2, 3, 0));
}

mod common;

use common::{all_degenerate, catalog, entry, int, invariant_closed_forms};
use ksym_core::analysis::analyze_pair;
use ksym_core::automorphism::fitting_decomposition;
use ksym_core::catalog::{
    inner_automorphism_from_torus, permutation_automorphism, standard_pairs, TorusWeights,
};
use ksym_core::symplectic::{
    build_symplectic_form, center_of_h, check_complex_structure, check_invariance,
    cocycle_violation, extend_by_zero, find_injective_element, root_plane_complex_structure,
    symplectic_verdict, SearchMethod,
};
use ksym_core::{Error, Exact, Field, Matrix, Scalar};

fn su3_torus() -> ksym_core::automorphism::FiniteOrderAutomorphism<Exact> {
    inner_automorphism_from_torus(&entry("su3"), &TorusWeights::new(&[0, 1, 2], 3)).unwrap()
}

#[test]
fn su3_full_torus_is_symplectic() {
    let a = analyze_pair(&su3_torus()).unwrap();
    assert_eq!(a.dims(), (2, 6));
    assert!(a.effective && a.prime);
    assert!(a.verdict.is_symplectic);
    assert!(a.verdict.checks.all());
    assert_eq!(a.verdict.search.method, SearchMethod::GenericSample);
    assert_eq!(a.verdict.search.kernel_dim_on_m, 0);
    assert_eq!(a.field, Field::RationalSqrt3);
    // Z(h) is the whole Cartan
    let d = fitting_decomposition(&su3_torus()).unwrap();
    assert_eq!(center_of_h(&d).dim(), 2);
}

#[test]
fn permutation_fixtures_are_not_symplectic() {
    let su2 = entry("su2");
    for copies in [2, 3] {
        let (_, nu) = permutation_automorphism(&su2, copies).unwrap();
        let v = symplectic_verdict(&nu).unwrap();
        assert!(!v.is_symplectic);
        assert!(v.z.is_none() && v.omega.is_none());
        assert!(!v.checks.nondegenerate);
        let d = fitting_decomposition(&nu).unwrap();
        // Z(h) = 0: the diagonal su(2) has no center
        assert_eq!(center_of_h(&d).dim(), 0);
    }
}

#[test]
fn reverse_oracle_agrees_on_small_pairs() {
    let su2 = entry("su2");
    let mut fixtures: Vec<_> = [2, 3]
        .iter()
        .map(|&c| permutation_automorphism(&su2, c).unwrap().1)
        .collect();
    for e in catalog() {
        for (_, nu) in standard_pairs(e).unwrap() {
            let d = fitting_decomposition(&nu).unwrap();
            if d.m().dim() <= 8 && center_of_h(&d).dim() <= 2 {
                fixtures.push(nu);
            }
        }
    }
    assert!(fixtures.len() > 10);
    for nu in fixtures {
        let d = fitting_decomposition(&nu).unwrap();
        let v = symplectic_verdict(&nu).unwrap();
        let forms = invariant_closed_forms(&d);
        let k = d.m().dim();
        let degenerate = all_degenerate(&forms, k, 200_000).expect("grid within limit");
        assert_eq!(
            degenerate,
            !v.is_symplectic,
            "{} forms, dim m {}",
            forms.len(),
            k
        );
        if let Some(omega) = &v.omega {
            // the constructed form lies in the oracle's solution space
            let span = ksym_core::Subspace::span(
                k * k,
                &forms
                    .iter()
                    .map(|f| f.to_rows().concat())
                    .collect::<Vec<_>>(),
                0.0,
            )
            .unwrap();
            assert!(span.contains(&omega.matrix().to_rows().concat()));
        }
    }
}

#[test]
fn two_formulas_for_omega_agree() {
    let nu = su3_torus();
    let d = fitting_decomposition(&nu).unwrap();
    let z = find_injective_element(&d).unwrap().found.unwrap();
    let omega = build_symplectic_form(&d, &z).unwrap();
    let alg = d.algebra();
    let b = alg.killing_form();
    for (i, x) in d.m().basis().iter().enumerate() {
        for (j, y) in d.m().basis().iter().enumerate() {
            let first = b.eval(&z, &alg.bracket(x, y).unwrap()).unwrap();
            let second = b.eval(&alg.bracket(&z, x).unwrap(), y).unwrap();
            assert_eq!(first, second);
            assert_eq!(omega.matrix()[(i, j)], first);
        }
    }
}

#[test]
fn zero_extension_annihilates_h() {
    let nu = su3_torus();
    let d = fitting_decomposition(&nu).unwrap();
    let z = find_injective_element(&d).unwrap().found.unwrap();
    let omega = build_symplectic_form(&d, &z).unwrap();
    let w = extend_by_zero(&d, &omega).unwrap();
    for t in d.h().basis() {
        assert!(w.mul_vec(t).unwrap().iter().all(Scalar::is_zero));
    }
    assert_eq!(cocycle_violation(&d, &omega).unwrap(), None);
}

#[test]
fn scaling_z_scales_omega() {
    let nu = inner_automorphism_from_torus(&entry("sp2"), &TorusWeights::new(&[0, 1], 3)).unwrap();
    let d = fitting_decomposition(&nu).unwrap();
    let z = find_injective_element(&d).unwrap().found.unwrap();
    let omega = build_symplectic_form(&d, &z).unwrap();
    for c in [int(-3), Exact::from_ratio(2, 7)] {
        let cz: Vec<Exact> = z.iter().map(|x| x.clone() * &c).collect();
        let scaled = build_symplectic_form(&d, &cz).unwrap();
        assert_eq!(scaled.matrix(), &omega.matrix().scale(&c));
        assert!(scaled.is_nondegenerate(0.0));
        let inv = check_invariance(&d, &nu, &scaled, &cz).unwrap();
        assert!(inv.ad_h_invariant && inv.nu_invariant && inv.nu_fixes_z);
    }
}

#[test]
fn non_central_element_is_rejected() {
    let nu =
        inner_automorphism_from_torus(&entry("su3"), &TorusWeights::new(&[0, 0, 1], 3)).unwrap();
    let d = fitting_decomposition(&nu).unwrap();
    // h = u(2); an element of its su(2) part is not central
    let zc = center_of_h(&d);
    assert_eq!(zc.dim(), 1);
    let not_central = d.h().basis().iter().find(|t| !zc.contains(t)).unwrap();
    assert_eq!(
        build_symplectic_form(&d, not_central).unwrap_err(),
        Error::NotCentral
    );
}

#[test]
fn non_semisimple_input_is_rejected() {
    let a = std::sync::Arc::new(ksym_core::LieAlgebra::<Exact>::abelian(2));
    let rot = Matrix::from_rows(&[vec![int(0), int(-1)], vec![int(1), int(-1)]]);
    let nu = ksym_core::automorphism::make_automorphism(a, rot, 3).unwrap();
    assert_eq!(symplectic_verdict(&nu).unwrap_err(), Error::NotSemisimple);
    assert_eq!(analyze_pair(&nu).unwrap_err(), Error::NotSemisimple);
}

#[test]
fn kahler_structure_on_torus_pairs() {
    for (name, w) in [
        ("su3", vec![0, 1, 2]),
        ("su3", vec![0, 0, 1]),
        ("so5", vec![0, 1]),
        ("sp2", vec![1, 1]),
    ] {
        let nu = inner_automorphism_from_torus(&entry(name), &TorusWeights::new(&w, 3)).unwrap();
        let d = fitting_decomposition(&nu).unwrap();
        let v = symplectic_verdict(&nu).unwrap();
        let z = v.z.unwrap();
        let j = root_plane_complex_structure(&d, &z).unwrap();
        let c = check_complex_structure(&d, &j, v.omega.as_ref().unwrap()).unwrap();
        assert!(
            c.all(),
            "{} {:?}: {:?}",
            name,
            w,
            (
                c.squares_to_minus_id,
                c.commutes_with_ad_h,
                c.kahler_metric_positive
            )
        );
    }
}

#[test]
fn complex_structure_dimension_errors() {
    let nu = su3_torus();
    let d = fitting_decomposition(&nu).unwrap();
    let v = symplectic_verdict(&nu).unwrap();
    let bad = Matrix::identity(4);
    assert!(matches!(
        check_complex_structure(&d, &bad, v.omega.as_ref().unwrap()),
        Err(Error::Dimension { .. })
    ));
    // J = id does not square to −id
    let id = Matrix::identity(6);
    let c = check_complex_structure(&d, &id, v.omega.as_ref().unwrap()).unwrap();
    assert!(!c.squares_to_minus_id);
}

#[test]
fn float_path_matches_exact_verdicts() {
    let exact = entry("so6");
    let float = ksym_core::catalog::build_so::<f64>(6).unwrap();
    let pe = standard_pairs(&exact).unwrap();
    let pf = standard_pairs(&float).unwrap();
    assert_eq!(pe.len(), pf.len());
    for ((le, ne), (lf, nf)) in pe.iter().zip(&pf) {
        assert_eq!(le, lf);
        let a = analyze_pair(ne).unwrap();
        let b = analyze_pair(nf).unwrap();
        assert_eq!(a.verdict.is_symplectic, b.verdict.is_symplectic, "{}", le);
        assert_eq!(a.dims(), b.dims());
        assert_eq!(b.field, Field::RealFloat);
        assert_eq!(a.verdict.checks, b.verdict.checks);
    }
}

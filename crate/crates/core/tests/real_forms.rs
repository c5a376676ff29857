mod common;

use std::sync::Arc;

use common::{catalog, entry};
use ksym_core::automorphism::fitting_decomposition;
use ksym_core::catalog::{inner_automorphism_from_torus, TorusWeights};
use ksym_core::real_forms::{
    complexify, complexify_automorphism, complexify_vector, dual_real_form, is_compact_form,
    is_injective_element, killing_signature, make_involution_split, transfer_injective_element,
    Component,
};
use ksym_core::symplectic::{center_of_h, find_injective_element, symplectic_verdict};
use ksym_core::{Error, Exact, Scalar};

#[test]
fn unitary_signature_duals() {
    for n in 2..=4usize {
        let e = entry(&format!("su{}", n));
        for q in 1..=n / 2 {
            let p = n - q;
            let eps: Vec<i64> = (0..n).map(|i| if i < p { 1 } else { -1 }).collect();
            let split =
                make_involution_split(e.algebra.clone(), None, e.sign_involution(&eps).unwrap())
                    .unwrap();
            let rc = dual_real_form(&split).unwrap();
            let sig = killing_signature(&rc.dual);
            // su(p,q): noncompact part has dimension 2pq
            assert_eq!(
                (sig.positive, sig.negative),
                (2 * p * q, n * n - 1 - 2 * p * q)
            );
        }
    }
}

#[test]
fn split_and_quaternionic_signatures() {
    let su4 = entry("su4");
    let conj =
        make_involution_split(su4.algebra.clone(), None, su4.conjugation().unwrap()).unwrap();
    let sl4 = dual_real_form(&conj).unwrap();
    // sl(4,R): symmetric traceless (9) against so(4) (6)
    assert_eq!(killing_signature(&sl4.dual).positive, 9);
    let quat = make_involution_split(
        su4.algebra.clone(),
        None,
        su4.quaternionic_conjugation().unwrap(),
    )
    .unwrap();
    let su_star = dual_real_form(&quat).unwrap();
    // su*(4) has maximal compact sp(2)
    assert_eq!(killing_signature(&su_star.dual).negative, 10);
}

#[test]
fn signature_bookkeeping_for_compact_sources() {
    for e in catalog()
        .iter()
        .filter(|e| is_compact_form(&e.algebra).unwrap())
    {
        for inv in e.standard_involutions().unwrap() {
            let split = make_involution_split(e.algebra.clone(), None, inv.matrix).unwrap();
            let rc = dual_real_form(&split).unwrap();
            let sig = killing_signature(&rc.dual);
            assert_eq!(
                (sig.positive, sig.negative),
                (split.minus.dim(), split.plus.dim()),
                "{} {}",
                e.name,
                inv.name
            );
        }
    }
}

#[test]
fn dual_twice_restores_structure_constants() {
    for e in catalog() {
        for inv in e.standard_involutions().unwrap() {
            let split = make_involution_split(e.algebra.clone(), None, inv.matrix).unwrap();
            let rc = dual_real_form(&split).unwrap();
            let back = dual_real_form(&rc.dual_split().unwrap()).unwrap();
            assert_eq!(
                back.dual.structure_constants(),
                rc.source_adapted.structure_constants(),
                "{}",
                e.name
            );
            assert_eq!(back.dual.labels(), rc.source_adapted.labels());
        }
    }
}

#[test]
fn commuting_involution_preserves_h_and_m_and_orthogonality_transfers() {
    let sp2 = entry("sp2");
    let nu = inner_automorphism_from_torus(&sp2, &TorusWeights::new(&[1, 0], 3)).unwrap();
    for sigma in [
        sp2.sign_involution(&[1, -1]).unwrap(),
        sp2.imaginary_sign_involution(&[1, 1]).unwrap(),
    ] {
        let split = make_involution_split(sp2.algebra.clone(), Some(&nu), sigma).unwrap();
        assert!(split.commutes_with_nu);
        let refined = split.refined.as_ref().unwrap();
        let (h1, h2, m1, m2) = refined.dims();
        assert_eq!(h1 + h2, 4);
        assert_eq!(m1 + m2, 6);
        let rc = dual_real_form(&split).unwrap();
        let dd = rc.dual_decomposition().unwrap().unwrap();
        let checks = dd.checks();
        assert!(checks.all(), "{:?}", checks);
        assert_eq!(dd.dims(), (4, 6));
        assert!(
            symplectic_verdict(rc.dual_nu.as_ref().unwrap())
                .unwrap()
                .is_symplectic
        );
    }
}

#[test]
fn non_commuting_involution_has_no_refinement() {
    let su3 = entry("su3");
    let nu = inner_automorphism_from_torus(&su3, &TorusWeights::new(&[0, 1, 2], 3)).unwrap();
    // conjugation maps ζ to ζ̄ on the diagonal torus element
    let split =
        make_involution_split(su3.algebra.clone(), Some(&nu), su3.conjugation().unwrap()).unwrap();
    assert!(!split.commutes_with_nu);
    assert!(split.refined.is_none());
    let rc = dual_real_form(&split).unwrap();
    assert!(rc.dual_nu.is_none());
    let d = fitting_decomposition(&nu).unwrap();
    let z = find_injective_element(&d).unwrap().found.unwrap();
    assert!(matches!(
        transfer_injective_element(&rc, &d, &z),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn transfer_on_sp2_with_one_dimensional_center() {
    let sp2 = entry("sp2");
    let nu = inner_automorphism_from_torus(&sp2, &TorusWeights::new(&[1, 0], 3)).unwrap();
    let d = fitting_decomposition(&nu).unwrap();
    assert_eq!(center_of_h(&d).dim(), 1);
    let z = find_injective_element(&d).unwrap().found.unwrap();
    for (sigma, expect) in [
        (sp2.sign_involution(&[1, -1]).unwrap(), Component::Fixed),
        (
            sp2.imaginary_sign_involution(&[1, 1]).unwrap(),
            Component::Fixed,
        ),
    ] {
        let split = make_involution_split(sp2.algebra.clone(), Some(&nu), sigma).unwrap();
        let rc = dual_real_form(&split).unwrap();
        let report = transfer_injective_element(&rc, &d, &z).unwrap();
        assert!(report.lemma_applies);
        let (component, image) = report.transferred.unwrap();
        assert_eq!(component, expect);
        let dd = rc.dual_decomposition().unwrap().unwrap();
        assert!(is_injective_element(&dd, &image).unwrap());
    }
}

#[test]
fn transfer_rejects_non_injective_input() {
    let sp2 = entry("sp2");
    let nu = inner_automorphism_from_torus(&sp2, &TorusWeights::new(&[1, 0], 3)).unwrap();
    let d = fitting_decomposition(&nu).unwrap();
    let split = make_involution_split(
        sp2.algebra.clone(),
        Some(&nu),
        sp2.sign_involution(&[1, -1]).unwrap(),
    )
    .unwrap();
    let rc = dual_real_form(&split).unwrap();
    let zero = vec![Exact::from_i64(0); sp2.dim()];
    assert!(matches!(
        transfer_injective_element(&rc, &d, &zero),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn complexification_keeps_injective_elements() {
    for (name, w) in [
        ("su2", vec![0, 1]),
        ("su3", vec![0, 1, 2]),
        ("su3", vec![0, 0, 1]),
    ] {
        let e = entry(name);
        let nu = inner_automorphism_from_torus(&e, &TorusWeights::new(&w, 3)).unwrap();
        let d = fitting_decomposition(&nu).unwrap();
        let z = find_injective_element(&d).unwrap().found.unwrap();
        let gc = Arc::new(complexify(&e.algebra));
        assert!(gc.check_jacobi().is_ok());
        let sig = killing_signature(&gc);
        assert_eq!((sig.positive, sig.negative), (e.dim(), e.dim()));
        let nuc = complexify_automorphism(gc, &nu).unwrap();
        let dc = fitting_decomposition(&nuc).unwrap();
        assert_eq!(dc.dims(), (2 * d.h().dim(), 2 * d.m().dim()));
        assert!(is_injective_element(&dc, &complexify_vector(&z)).unwrap());
    }
}

#[test]
fn complexification_matches_swap_dual() {
    let su3 = entry("su3");
    let sum = Arc::new(ksym_core::LieAlgebra::direct_sum(&[
        su3.algebra.as_ref(),
        su3.algebra.as_ref(),
    ]));
    let d = su3.dim();
    let swap = ksym_core::Matrix::from_fn(2 * d, 2 * d, |r, c| {
        if (r + d) % (2 * d) == c {
            Exact::from_i64(1)
        } else {
            Exact::from_i64(0)
        }
    });
    let rc = dual_real_form(&make_involution_split(sum, None, swap).unwrap()).unwrap();
    let a = killing_signature(&rc.dual);
    let b = killing_signature(&complexify(&su3.algebra));
    assert_eq!(a, b);
    assert!(rc.dual.is_simple().unwrap());
}

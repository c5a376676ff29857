mod common;

use common::{catalog, entry, int, trace_form_killing, unit};
use ksym_core::algebra::restriction_of_form;
use ksym_core::catalog::{build_so, build_su, Series};
use ksym_core::real_forms::is_compact_form;
use ksym_core::{Exact, LieAlgebra, Matrix, Scalar, Subspace};

#[test]
fn catalog_dimensions() {
    for e in catalog() {
        let n = e.n;
        let expected = match e.series {
            Series::Su | Series::SlReal => n * n - 1,
            Series::So => n * (n - 1) / 2,
            Series::Sp => n * (2 * n + 1),
        };
        assert_eq!(e.dim(), expected, "{}", e.name);
    }
}

#[test]
fn brackets_are_lie_exactly() {
    for e in catalog() {
        assert!(e.algebra.check_antisymmetry().is_ok(), "{}", e.name);
        assert!(e.algebra.check_jacobi().is_ok(), "{}", e.name);
        assert!(e.algebra.check_killing_invariance().is_ok(), "{}", e.name);
    }
}

#[test]
fn killing_form_matches_trace_form() {
    for e in catalog() {
        assert_eq!(
            e.algebra.killing_matrix(),
            &trace_form_killing(e),
            "{}",
            e.name
        );
    }
}

#[test]
fn su2_killing_is_four_times_trace() {
    // x = −(i/2)σ_x etc.: tr(x x) = −1/2, so B(x, x) = −2
    let su2 = entry("su2");
    assert_eq!(
        su2.algebra.killing_matrix(),
        &Matrix::identity(3).scale(&int(-2))
    );
}

#[test]
fn compact_series_are_negative_definite_and_split_forms_are_not() {
    for e in catalog() {
        let compact = is_compact_form(&e.algebra).unwrap();
        assert_eq!(compact, e.series != Series::SlReal, "{}", e.name);
    }
}

#[test]
fn semisimple_algebras_have_trivial_center() {
    for e in catalog() {
        assert!(e.algebra.is_semisimple());
        assert!(e.algebra.center().is_zero(), "{}", e.name);
    }
    let a = LieAlgebra::<Exact>::abelian(2);
    assert!(!a.is_semisimple());
    assert_eq!(a.center().dim(), 2);
}

#[test]
fn simplicity_flags() {
    for e in catalog() {
        assert!(e.simple, "{}", e.name);
    }
    assert!(!build_so::<Exact>(4).unwrap().simple);
    let su2 = build_su::<Exact>(2).unwrap();
    let sum = LieAlgebra::direct_sum(&[su2.algebra.as_ref(), su2.algebra.as_ref()]);
    assert!(!sum.is_simple().unwrap());
}

#[test]
fn direct_sum_killing_is_block_diagonal() {
    let su2 = entry("su2");
    let su3 = entry("su3");
    let sum = LieAlgebra::direct_sum(&[su2.algebra.as_ref(), su3.algebra.as_ref()]);
    let expected =
        Matrix::block_diag(&[su2.algebra.killing_matrix(), su3.algebra.killing_matrix()]);
    assert_eq!(sum.killing_matrix(), &expected);
    assert_eq!(sum.labels()[0], "x12[1]");
}

#[test]
fn restriction_equals_change_of_basis_gram() {
    let e = entry("sp2");
    let n = e.dim();
    let vecs: Vec<Vec<Exact>> = vec![
        (0..n).map(|i| int(i as i64 % 3 - 1)).collect(),
        unit(n, 4),
        (0..n)
            .map(|i| if i % 2 == 0 { int(2) } else { Exact::zero() })
            .collect(),
    ];
    let sub = Subspace::span(n, &vecs, 0.0).unwrap();
    let restricted = restriction_of_form(&e.algebra.killing_form(), &sub).unwrap();
    let b = e.algebra.killing_matrix();
    let gram = Matrix::from_fn(sub.dim(), sub.dim(), |i, j| {
        let bj = b.mul_vec(&sub.basis()[j]).unwrap();
        sub.basis()[i]
            .iter()
            .zip(&bj)
            .fold(Exact::zero(), |acc, (x, y)| acc + &(x.clone() * y))
    });
    assert_eq!(restricted.matrix(), &gram);
}

#[test]
fn float_build_agrees_with_exact() {
    let exact = entry("so5");
    let float = build_so::<f64>(5).unwrap();
    assert!(float.algebra.check_jacobi().is_ok());
    let d = exact.dim();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let a = exact.algebra.structure_constant(i, j, k).to_f64();
                let b = float.algebra.structure_constant(i, j, k);
                assert!((a - b).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn subalgebra_and_ideals() {
    let su3 = entry("su3");
    let n = su3.dim();
    // the Cartan h1, h2 spans an abelian subalgebra which is not an ideal
    let cartan = Subspace::span(n, &[unit(n, 6), unit(n, 7)], 0.0).unwrap();
    let sub = su3.algebra.subalgebra(&cartan).unwrap();
    assert_eq!(sub.dim(), 2);
    assert!(!su3.algebra.is_ideal(&cartan));
    let broken = Subspace::span(n, &[unit(n, 0), unit(n, 1)], 0.0).unwrap();
    assert!(su3.algebra.subalgebra(&broken).is_err());
}

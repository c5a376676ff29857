//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{all_degenerate, catalog, entry, invariant_closed_forms};
use ksym_core::automorphism::{
    fitting_decomposition, CanonicalDecomposition, FiniteOrderAutomorphism,
};
use ksym_core::catalog::{
    build, generate_table_rows, inner_automorphism_from_torus, permutation_automorphism,
    standard_pairs, DualKind, TorusWeights, LISTED,
};
use ksym_core::linalg::dot;
use ksym_core::real_forms::{
    complexify, complexify_automorphism, complexify_vector, dual_real_form, is_injective_element,
    killing_signature, make_involution_split, transfer_injective_element,
};
use ksym_core::symplectic::{
    build_symplectic_form, center_of_h, check_complex_structure, find_injective_element,
    root_plane_complex_structure, symplectic_verdict,
};
use ksym_core::{Exact, Matrix, Scalar};

const FLOAT_TOL: f64 = 1e-8;
const KAHLER_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;

/// Number, name, time limit in seconds, check.
type Criterion = (u8, &'static str, Option<u64>, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{:?}", e)
}

fn c1_structure() -> Outcome {
    for e in catalog() {
        let a = &e.algebra;
        a.check_antisymmetry()
            .map_err(|x| format!("{}: {}", e.name, x))?;
        a.check_jacobi().map_err(|x| format!("{}: {}", e.name, x))?;
        a.check_killing_invariance()
            .map_err(|x| format!("{}: {}", e.name, x))?;
    }
    Ok(format!("{} algebras exact", catalog().len()))
}

fn c2_decomposition() -> Outcome {
    let mut count = 0;
    for e in catalog() {
        for (label, nu) in standard_pairs(e).map_err(err)? {
            let d = fitting_decomposition(&nu).map_err(err)?;
            let c = d.checks();
            ensure(
                c.killing_preserved
                    && c.orthogonal
                    && c.kernel_stable
                    && c.h_subalgebra
                    && c.h_preserves_m,
                || format!("{} {}: {:?}", e.name, label, c),
            )?;
            count += 1;
        }
    }
    Ok(format!("{} pairs", count))
}

/// Residual checks with an explicit tolerance, for floating-point pairs.
fn float_forward(nu: &FiniteOrderAutomorphism<f64>) -> Result<bool, String> {
    let d = fitting_decomposition(nu).map_err(err)?;
    let Some(z) = find_injective_element(&d).map_err(err)?.found else {
        return Ok(false);
    };
    let omega = build_symplectic_form(&d, &z).map_err(err)?;
    let om = omega.matrix();
    let scale = om.max_magnitude().max(1.0);
    let small = |m: &Matrix<f64>| m.max_magnitude() <= FLOAT_TOL * scale;
    ensure(omega.is_nondegenerate(FLOAT_TOL), || "degenerate".into())?;
    ensure(
        om.add(&om.transpose()).map(|s| small(&s)).unwrap_or(false),
        || "not antisymmetric".into(),
    )?;
    // δW over all basis triples of g for the zero extension W
    let alg = d.algebra();
    let n = alg.dim();
    let coords = Matrix::from_fn(d.m().dim(), n, |r, col| {
        d.m_coordinates(&unit(n, col)).unwrap()[r]
    });
    let w = coords
        .transpose()
        .mul(om)
        .and_then(|x| x.mul(&coords))
        .map_err(err)?;
    let wb = |x: &[f64], y: &[f64]| dot(x, &w.mul_vec(y).unwrap());
    let br = |i: usize, j: usize| alg.bracket(&unit(n, i), &unit(n, j)).unwrap();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let v = -wb(&br(i, j), &unit(n, k)) + wb(&br(i, k), &unit(n, j))
                    - wb(&br(j, k), &unit(n, i));
                ensure(v.abs() <= FLOAT_TOL * scale, || {
                    format!("δΩ({},{},{}) = {}", i, j, k, v)
                })?;
            }
        }
    }
    for t in d.h().basis() {
        let a = d.ad_on_m(t).map_err(err)?;
        let s = a
            .transpose()
            .mul(om)
            .and_then(|x| x.add(&om.mul(&a)?))
            .map_err(err)?;
        ensure(small(&s), || "not ad_h-invariant".into())?;
    }
    let nm = d.nu_on_m().map_err(err)?;
    let s = nm
        .transpose()
        .mul(om)
        .and_then(|x| x.mul(&nm))
        .and_then(|x| x.sub(om))
        .map_err(err)?;
    ensure(small(&s), || "not ν-invariant".into())?;
    let nz = nu.apply(&z).map_err(err)?;
    ensure(
        nz.iter().zip(&z).all(|(a, b)| (a - b).abs() <= FLOAT_TOL),
        || "νZ ≠ Z".into(),
    )?;
    Ok(true)
}

fn unit<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    (0..n)
        .map(|j| if j == i { S::one() } else { S::zero() })
        .collect()
}

fn c3_forward() -> Outcome {
    let mut exact = 0;
    for e in catalog() {
        for (label, nu) in standard_pairs(e).map_err(err)? {
            let v = symplectic_verdict(&nu).map_err(|x| format!("{} {}: {}", e.name, label, x))?;
            if v.z.is_some() {
                ensure(v.checks.all(), || {
                    format!("{} {}: {:?}", e.name, label, v.checks)
                })?;
                exact += 1;
            }
        }
    }
    let mut float = 0;
    for name in ["su3", "so5", "so6", "sp2"] {
        let (series, n) = ksym_core::catalog::parse_name(name).unwrap();
        let e = build::<f64>(series, n).map_err(err)?;
        let mut pairs = standard_pairs(&e).map_err(err)?;
        if name == "sp2" {
            let nu =
                inner_automorphism_from_torus(&e, &TorusWeights::new(&[0, 1], 5)).map_err(err)?;
            pairs.push(("order 5".into(), nu));
        }
        for (label, nu) in pairs {
            if float_forward(&nu).map_err(|x| format!("{} {} (float): {}", name, label, x))? {
                float += 1;
            }
        }
    }
    Ok(format!(
        "{} exact and {} float pairs verified",
        exact, float
    ))
}

fn c4_reverse() -> Outcome {
    let su2 = entry("su2");
    for copies in [2, 3] {
        let (_, nu) = permutation_automorphism(&su2, copies).map_err(err)?;
        let d = fitting_decomposition(&nu).map_err(err)?;
        let v = symplectic_verdict(&nu).map_err(err)?;
        ensure(!v.is_symplectic, || {
            format!("{} copies reported symplectic", copies)
        })?;
        let forms = invariant_closed_forms(&d);
        let degenerate = all_degenerate(&forms, d.m().dim(), 1_000_000).ok_or("grid too large")?;
        ensure(degenerate, || {
            format!("{} copies: oracle found a nondegenerate form", copies)
        })?;
    }
    Ok("oracle and verdict agree on 2 and 3 copies".into())
}

fn c5_prime() -> Outcome {
    let mut count = 0;
    for e in catalog() {
        for (label, nu) in standard_pairs(e).map_err(err)? {
            let d = fitting_decomposition(&nu).map_err(err)?;
            ensure(d.is_prime().map_err(err)?, || {
                format!("{} {} not prime", e.name, label)
            })?;
            count += 1;
        }
    }
    Ok(format!("{} simple pairs prime", count))
}

fn c6_table1() -> Outcome {
    let rows = generate_table_rows::<Exact>(1, 2).map_err(err)?;
    let want = [
        ("su(3)", "S{U(1)×U(1)×U(1)}/Z_3"),
        ("su(3)", "S{U(1)×U(2)}/Z_3"),
        ("sp(2)", "{U(1)×Sp(1)}/Z_2"),
        ("sp(2)", "{U(2)}/Z_2"),
        ("so(5)", "U(1)×SO(3)"),
        ("so(5)", "U(2)"),
    ];
    for (src, iso) in want {
        let row = rows
            .iter()
            .find(|r| r.source == src && r.isotropy == iso)
            .ok_or(format!("missing {} {}", src, iso))?;
        let v = symplectic_verdict(&row.nu).map_err(err)?;
        ensure(v.is_symplectic && row.expected_symplectic, || {
            format!("{} {} not symplectic", src, iso)
        })?;
    }
    Ok(format!(
        "{} rows, {} required present and symplectic",
        rows.len(),
        want.len()
    ))
}

fn c7_table2() -> Outcome {
    let rows = generate_table_rows::<Exact>(2, 2).map_err(err)?;
    let mut hits = [0usize; 3];
    for r in &rows {
        let slot = if r.group.starts_with("SU(2,1)") {
            0
        } else if r.source == "su(3)" && r.kind == DualKind::Outer {
            1
        } else if r.group.starts_with("Sp(") {
            2
        } else {
            continue;
        };
        let v = symplectic_verdict(&r.nu).map_err(err)?;
        ensure(v.is_symplectic && v.checks.all(), || {
            format!("{} {} not symplectic", r.group, r.isotropy)
        })?;
        if slot == 0 {
            ensure(r.killing_signature == (4, 4), || {
                format!("su(2,1) signature {:?}", r.killing_signature)
            })?;
        }
        hits[slot] += 1;
    }
    ensure(hits.iter().all(|&h| h > 0), || {
        format!("missing row families: {:?}", hits)
    })?;
    Ok(format!(
        "su(2,1): {}, sl(3,R): {}, sp: {}; signature (4,4)",
        hits[0], hits[1], hits[2]
    ))
}

fn c8_transfer() -> Outcome {
    let sp2 = entry("sp2");
    let nu = inner_automorphism_from_torus(&sp2, &TorusWeights::new(&[1, 0], 3)).map_err(err)?;
    let d = fitting_decomposition(&nu).map_err(err)?;
    ensure(center_of_h(&d).dim() == 1, || "dim Z(h) ≠ 1".into())?;
    let z = find_injective_element(&d)
        .map_err(err)?
        .found
        .ok_or("no injective element")?;
    let sigma = sp2.sign_involution(&[1, -1]).map_err(err)?;
    let split = make_involution_split(sp2.algebra.clone(), Some(&nu), sigma).map_err(err)?;
    let rc = dual_real_form(&split).map_err(err)?;
    let report = transfer_injective_element(&rc, &d, &z).map_err(err)?;
    let (component, image) = report.transferred.ok_or("no transferred element")?;
    let dd = rc
        .dual_decomposition()
        .map_err(err)?
        .ok_or("no dual pair")?;
    ensure(is_injective_element(&dd, &image).map_err(err)?, || {
        "image not injective".into()
    })?;
    Ok(format!("{:?} component injective in the dual", component))
}

fn c9_complexification() -> Outcome {
    let mut count = 0;
    for name in ["su2", "su3"] {
        let e = entry(name);
        let gc = Arc::new(complexify(&e.algebra));
        for (label, nu) in standard_pairs(&e).map_err(err)? {
            let d = fitting_decomposition(&nu).map_err(err)?;
            let Some(z) = find_injective_element(&d).map_err(err)?.found else {
                continue;
            };
            let nuc = complexify_automorphism(gc.clone(), &nu).map_err(err)?;
            let dc = fitting_decomposition(&nuc).map_err(err)?;
            ensure(
                is_injective_element(&dc, &complexify_vector(&z)).map_err(err)?,
                || format!("{} {}: not injective after complexification", name, label),
            )?;
            count += 1;
        }
    }
    ensure(count > 0, || "no pairs".into())?;
    Ok(format!("{} pairs", count))
}

fn c10_involution() -> Outcome {
    let mut count = 0;
    for e in catalog() {
        for inv in e.standard_involutions().map_err(err)? {
            let split = make_involution_split(e.algebra.clone(), None, inv.matrix).map_err(err)?;
            let rc = dual_real_form(&split).map_err(err)?;
            let back = dual_real_form(&rc.dual_split().map_err(err)?).map_err(err)?;
            ensure(
                back.dual.structure_constants() == rc.source_adapted.structure_constants(),
                || format!("{} {}", e.name, inv.name),
            )?;
            ensure(
                killing_signature(&back.dual) == killing_signature(&rc.source_adapted),
                || format!("{} {}: signature", e.name, inv.name),
            )?;
            count += 1;
        }
    }
    Ok(format!("{} (algebra, involution) pairs", count))
}

fn kahler<S: Scalar>(d: &CanonicalDecomposition<S>) -> Result<(), String> {
    let v = ksym_core::symplectic::verdict_for(d).map_err(err)?;
    let z = v.z.ok_or("no injective element")?;
    let j = root_plane_complex_structure(d, &z).map_err(err)?;
    let c = check_complex_structure(d, &j, v.omega.as_ref().unwrap()).map_err(err)?;
    ensure(c.all(), || {
        format!(
            "J²=−id {}, commutes {}, positive {}",
            c.squares_to_minus_id, c.commutes_with_ad_h, c.kahler_metric_positive
        )
    })
}

fn c11_kahler() -> Outcome {
    let tw = TorusWeights::new(&[0, 1, 2], 3);
    let nu = inner_automorphism_from_torus(&entry("su3"), &tw).map_err(err)?;
    kahler(&fitting_decomposition(&nu).map_err(err)?)?;
    let e = ksym_core::catalog::build_su::<f64>(3).map_err(err)?;
    let alg = Arc::new(ksym_core::LieAlgebra::clone(&e.algebra).with_tolerance(KAHLER_TOL));
    let nu = inner_automorphism_from_torus(&e, &tw).map_err(err)?;
    let nu =
        ksym_core::automorphism::make_automorphism(alg, nu.matrix().clone(), 3).map_err(err)?;
    kahler(&fitting_decomposition(&nu).map_err(err)?)?;
    Ok("exact and float (tol 1e-9)".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "structural suite", Some(10), c1_structure),
        (2, "decomposition suite", Some(30), c2_decomposition),
        (3, "forward construction", None, c3_forward),
        (4, "reverse oracle", Some(5), c4_reverse),
        (5, "simple implies prime", None, c5_prime),
        (6, "table 1 at rank 2", Some(60), c6_table1),
        (7, "table 2 at rank 2", Some(60), c7_table2),
        (
            8,
            "transfer along a commuting involution",
            None,
            c8_transfer,
        ),
        (9, "complexification", None, c9_complexification),
        (10, "dual of dual", None, c10_involution),
        (11, "Kähler checks", None, c11_kahler),
    ];
    // the shared catalog is built once, outside any timed criterion
    let _ = catalog();
    assert_eq!(catalog().len(), LISTED.len());
    let mut failed = 0;
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(msg), Some(s)) if elapsed > Duration::from_secs(s) => {
                Err(format!("{} but took {:.2?} > {} s", msg, elapsed, s))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {}: {} ({}) [{:.2?}]", n, name, msg, elapsed),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {} ({}) [{:.2?}]", n, name, msg, elapsed);
            }
        }
    }
    if failed > 0 {
        eprintln!("{} criteria failed", failed);
        std::process::exit(1);
    }
}

//! Injective elements and the invariant 2-form `Ω(X, Y) = B(Z, [X, Y])`.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{BilinearForm, Symmetry};
use crate::automorphism::{fitting_decomposition, CanonicalDecomposition, FiniteOrderAutomorphism};
use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vec, vec_magnitude, Matrix, Subspace};
use crate::scalar::{negligible, Scalar};

/// Coefficient bound of the fallback grid search.
pub const GRID_BOUND: i64 = 5;
/// Largest `dim Z(h)` searched exhaustively.
pub const GRID_MAX_DIM: usize = 4;

const PRIMES: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMethod {
    GenericSample,
    ExhaustiveGrid,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InjectiveElementReport<S> {
    pub candidates_tested: usize,
    /// `Z` in coordinates of `g`.
    pub found: Option<Vec<S>>,
    /// `dim ker(ad_Z|m)` for the found element, or the last one tried.
    pub kernel_dim_on_m: usize,
    pub method: SearchMethod,
}

/// Flags for every property required of the symplectic form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SymplecticChecks {
    pub nondegenerate: bool,
    pub closed: bool,
    pub ad_h_invariant: bool,
    pub nu_invariant: bool,
    pub nu_fixes_z: bool,
}

impl SymplecticChecks {
    pub fn all(&self) -> bool {
        self.nondegenerate
            && self.closed
            && self.ad_h_invariant
            && self.nu_invariant
            && self.nu_fixes_z
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvarianceFlags {
    pub ad_h_invariant: bool,
    pub nu_invariant: bool,
    pub nu_fixes_z: bool,
}

#[derive(Clone, Debug)]
pub struct SymplecticVerdict<S> {
    pub is_symplectic: bool,
    pub z: Option<Vec<S>>,
    /// Ω on the basis of `m`; present iff `z` is.
    pub omega: Option<BilinearForm<S>>,
    /// All false when no injective element was found.
    pub checks: SymplecticChecks,
    pub search: InjectiveElementReport<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexStructureCheck<S> {
    pub j: Matrix<S>,
    pub squares_to_minus_id: bool,
    pub commutes_with_ad_h: bool,
    /// `(x, y) := Ω(x, Jy)` is symmetric and positive definite.
    pub kahler_metric_positive: bool,
}

impl<S> ComplexStructureCheck<S> {
    pub fn all(&self) -> bool {
        self.squares_to_minus_id && self.commutes_with_ad_h && self.kahler_metric_positive
    }
}

/// `Z(h)` in coordinates of `g`.
pub fn center_of_h<S: Scalar>(d: &CanonicalDecomposition<S>) -> Subspace<S> {
    let alg = d.algebra();
    let n = alg.dim();
    let h = d.h();
    if h.dim() <= 1 {
        return h.clone();
    }
    let cols: Vec<Vec<S>> = h
        .basis()
        .iter()
        .map(|u| {
            h.basis()
                .iter()
                .flat_map(|t| alg.bracket_unchecked(u, t))
                .collect()
        })
        .collect();
    let system = Matrix::from_columns(n * h.dim(), &cols);
    let vecs: Vec<Vec<S>> = system
        .kernel(alg.tol())
        .iter()
        .map(|c| h.combine(c))
        .collect();
    Subspace::span(n, &vecs, alg.tol()).expect("vectors of length dim")
}

fn kernel_dim<S: Scalar>(k: &Matrix<S>, tol: f64) -> usize {
    k.cols() - k.rank(tol)
}

fn combination<S: Scalar>(coeffs: &[i64], mats: &[Matrix<S>]) -> Matrix<S> {
    let mut acc = Matrix::zeros(mats[0].rows(), mats[0].cols());
    for (c, m) in coeffs.iter().zip(mats) {
        if *c != 0 {
            acc = acc.add(&m.scale(&S::from_i64(*c))).expect("same shape");
        }
    }
    acc
}

/// Searches `Z(h)` for `Z` with `ker(ad_Z|m) = 0`: first `Σ p_i z_i` with
/// `p_i` the i-th prime, then every integer combination with coefficients
/// in `[-5, 5]` (when `dim Z(h) ≤ 4`).
pub fn find_injective_element<S: Scalar>(
    d: &CanonicalDecomposition<S>,
) -> Result<InjectiveElementReport<S>> {
    let alg = d.algebra();
    if !alg.is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    let tol = alg.tol();
    let z = center_of_h(d);
    let dm = d.m().dim();
    if z.is_zero() {
        return Ok(InjectiveElementReport {
            candidates_tested: 0,
            found: None,
            kernel_dim_on_m: dm,
            method: SearchMethod::GenericSample,
        });
    }
    let ads: Vec<Matrix<S>> = z
        .basis()
        .iter()
        .map(|v| d.ad_on_m(v))
        .collect::<Result<_>>()?;
    let to_vector = |coeffs: &[i64]| {
        let c: Vec<S> = coeffs.iter().map(|&x| S::from_i64(x)).collect();
        z.combine(&c)
    };

    let primes: Vec<i64> = (0..z.dim())
        .map(|i| PRIMES[i % PRIMES.len()] + 60 * (i / PRIMES.len()) as i64)
        .collect();
    let kd = kernel_dim(&combination(&primes, &ads), tol);
    if kd == 0 {
        return Ok(InjectiveElementReport {
            candidates_tested: 1,
            found: Some(to_vector(&primes)),
            kernel_dim_on_m: 0,
            method: SearchMethod::GenericSample,
        });
    }
    let mut report = InjectiveElementReport {
        candidates_tested: 1,
        found: None,
        kernel_dim_on_m: kd,
        method: SearchMethod::ExhaustiveGrid,
    };
    if z.dim() > GRID_MAX_DIM {
        report.method = SearchMethod::GenericSample;
        return Ok(report);
    }
    let mut coeffs = vec![-GRID_BOUND; z.dim()];
    loop {
        if coeffs.iter().any(|&c| c != 0) {
            report.candidates_tested += 1;
            let kd = kernel_dim(&combination(&coeffs, &ads), tol);
            report.kernel_dim_on_m = kd;
            if kd == 0 {
                report.found = Some(to_vector(&coeffs));
                return Ok(report);
            }
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                return Ok(report);
            }
            if coeffs[i] < GRID_BOUND {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = -GRID_BOUND;
            i += 1;
        }
    }
}

fn is_central_in_h<S: Scalar>(d: &CanonicalDecomposition<S>, z: &[S]) -> bool {
    z.len() == d.algebra().dim()
        && d.h().contains(z)
        && d.algebra().brackets_vanish(z, d.h().basis())
}

/// Ω on the basis of `m`, computed as `B(Z, [m_i, m_j])` and cross-checked
/// against `B([Z, m_i], m_j)`.
pub fn build_symplectic_form<S: Scalar>(
    d: &CanonicalDecomposition<S>,
    z: &[S],
) -> Result<BilinearForm<S>> {
    if !is_central_in_h(d, z) {
        return Err(Error::NotCentral);
    }
    let alg = d.algebra();
    let b = alg.killing_matrix();
    let basis = d.m().basis();
    let k = basis.len();
    let bz = b.mul_vec(z)?;
    let bm: Vec<Vec<S>> = basis.iter().map(|v| b.mul_vec(v)).collect::<Result<_>>()?;
    let zm: Vec<Vec<S>> = basis.iter().map(|v| alg.bracket_unchecked(z, v)).collect();
    let mut omega = Matrix::zeros(k, k);
    let scale = b.max_magnitude().max(1.0) * vec_magnitude(z).max(1.0) * alg.scale();
    for i in 0..k {
        for j in 0..k {
            let first = if i == j {
                S::zero()
            } else {
                dot(&bz, &alg.bracket_unchecked(&basis[i], &basis[j]))
            };
            let second = dot(&zm[i], &bm[j]);
            if !negligible(&(first.clone() - &second), scale, alg.tol()) {
                return Err(Error::invariant("B(Z, [X, Y]) differs from B([Z, X], Y)"));
            }
            omega[(i, j)] = first;
        }
    }
    BilinearForm::new(omega, Symmetry::Antisymmetric, alg.tol())
}

/// Zero extension of a form on `m` to `g`: `W = Cᵀ Ω C` where `C` maps a
/// vector to the `m`-coordinates of its `m`-component.
pub fn extend_by_zero<S: Scalar>(
    d: &CanonicalDecomposition<S>,
    omega: &BilinearForm<S>,
) -> Result<Matrix<S>> {
    let n = d.algebra().dim();
    let k = d.m().dim();
    if omega.dim() != k {
        return Err(Error::Dimension {
            expected: k,
            found: omega.dim(),
        });
    }
    let cols: Vec<Vec<S>> = (0..n).map(|j| d.proj_m().column(j)).collect();
    let c = Matrix::from_columns(
        k,
        &cols
            .iter()
            .map(|v| d.m().coordinates_unchecked(v))
            .collect::<Vec<_>>(),
    );
    c.transpose().mul(omega.matrix())?.mul(&c)
}

/// First basis triple `i < j < l` with `δΩ(e_i, e_j, e_l) ≠ 0`, where
/// `δΩ(x,y,z) = −Ω([x,y],z) + Ω([x,z],y) − Ω([y,z],x)` and Ω is extended by
/// zero on `h`.
pub fn cocycle_violation<S: Scalar>(
    d: &CanonicalDecomposition<S>,
    omega: &BilinearForm<S>,
) -> Result<Option<(usize, usize, usize)>> {
    let alg = d.algebra();
    let n = alg.dim();
    let w = extend_by_zero(d, omega)?;
    let scale = w.max_magnitude().max(1.0) * alg.scale();
    let wb = |i: usize, j: usize, l: usize| {
        let mut acc = S::zero();
        for (k, c) in alg.basis_bracket(i, j) {
            acc = acc + &(c.clone() * &w[(*k, l)]);
        }
        acc
    };
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                let v = wb(i, l, j) - &wb(i, j, l) - &wb(j, l, i);
                if !negligible(&v, scale, alg.tol()) {
                    return Ok(Some((i, j, l)));
                }
            }
        }
    }
    Ok(None)
}

/// Chevalley closedness of the zero-extended Ω.
pub fn check_cocycle<S: Scalar>(
    d: &CanonicalDecomposition<S>,
    omega: &BilinearForm<S>,
) -> Result<bool> {
    Ok(cocycle_violation(d, omega)?.is_none())
}

fn preserves<S: Scalar>(t: &Matrix<S>, omega: &Matrix<S>, tol: f64) -> Result<bool> {
    let lhs = t.transpose().mul(omega)?.mul(t)?;
    Ok(lhs.approx_eq(omega, tol))
}

/// `ad_h`-invariance, `ν`-invariance and `νZ = Z`.
pub fn check_invariance<S: Scalar>(
    d: &CanonicalDecomposition<S>,
    nu: &FiniteOrderAutomorphism<S>,
    omega: &BilinearForm<S>,
    z: &[S],
) -> Result<InvarianceFlags> {
    let alg = d.algebra();
    let tol = alg.tol();
    let om = omega.matrix();
    let scale = om.max_magnitude().max(1.0) * alg.scale();
    let mut ad_h_invariant = true;
    for t in d.h().basis() {
        let a = d.ad_on_m(t)?;
        let s = a.transpose().mul(om)?.add(&om.mul(&a)?)?;
        if !s.is_zero_within(scale, tol) {
            ad_h_invariant = false;
            break;
        }
    }
    let nu_m = d.m().restrict(nu.matrix())?;
    let nu_invariant = preserves(&nu_m, om, tol)?;
    let nz = nu.apply(z)?;
    let diff: Vec<S> = nz.iter().zip(z).map(|(a, b)| a.clone() - b).collect();
    let nu_fixes_z = is_zero_vec(&diff, vec_magnitude(z).max(1.0), tol);
    Ok(InvarianceFlags {
        ad_h_invariant,
        nu_invariant,
        nu_fixes_z,
    })
}

/// Runs the full criterion on a decomposition.
pub fn verdict_for<S: Scalar>(d: &CanonicalDecomposition<S>) -> Result<SymplecticVerdict<S>> {
    let search = find_injective_element(d)?;
    let Some(z) = search.found.clone() else {
        return Ok(SymplecticVerdict {
            is_symplectic: false,
            z: None,
            omega: None,
            checks: SymplecticChecks::default(),
            search,
        });
    };
    let tol = d.algebra().tol();
    let omega = build_symplectic_form(d, &z)?;
    let inv = check_invariance(d, d.automorphism(), &omega, &z)?;
    let checks = SymplecticChecks {
        nondegenerate: omega.is_nondegenerate(tol),
        closed: check_cocycle(d, &omega)?,
        ad_h_invariant: inv.ad_h_invariant,
        nu_invariant: inv.nu_invariant,
        nu_fixes_z: inv.nu_fixes_z,
    };
    if !checks.all() {
        return Err(Error::invariant(alloc::format!(
            "injective element found but checks failed: {:?}",
            checks
        )));
    }
    Ok(SymplecticVerdict {
        is_symplectic: true,
        z: Some(z),
        omega: Some(omega),
        checks,
        search,
    })
}

/// Decides whether `(g, ν)` is symplectic and verifies the constructed form.
pub fn symplectic_verdict<S: Scalar>(
    nu: &FiniteOrderAutomorphism<S>,
) -> Result<SymplecticVerdict<S>> {
    if !nu.algebra().is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    verdict_for(&fitting_decomposition(nu)?)
}

/// Checks `J² = −id`, `[ad_t|m, J] = 0` for `t` in `h`, and that
/// `(x, y) := Ω(x, Jy)` is a positive-definite symmetric form.
pub fn check_complex_structure<S: Scalar>(
    d: &CanonicalDecomposition<S>,
    j: &Matrix<S>,
    omega: &BilinearForm<S>,
) -> Result<ComplexStructureCheck<S>> {
    let k = d.m().dim();
    if k % 2 == 1 {
        return Err(Error::Dimension {
            expected: k + 1,
            found: k,
        });
    }
    if j.rows() != k || j.cols() != k {
        return Err(Error::Dimension {
            expected: k,
            found: j.rows(),
        });
    }
    if omega.dim() != k {
        return Err(Error::Dimension {
            expected: k,
            found: omega.dim(),
        });
    }
    let tol = d.algebra().tol();
    let squares_to_minus_id = j.mul(j)?.approx_eq(&Matrix::identity(k).neg(), tol);
    let mut commutes_with_ad_h = true;
    for t in d.h().basis() {
        let a = d.ad_on_m(t)?;
        if !a.mul(j)?.approx_eq(&j.mul(&a)?, tol) {
            commutes_with_ad_h = false;
            break;
        }
    }
    let metric = omega.matrix().mul(j)?;
    let kahler_metric_positive =
        metric.is_symmetric(tol) && metric.inertia(tol).is_positive_definite();
    Ok(ComplexStructureCheck {
        j: j.clone(),
        squares_to_minus_id,
        commutes_with_ad_h,
        kahler_metric_positive,
    })
}

/// `J = −ad_Z|m / c` on each plane `span{x, ad_Z x}` where `(ad_Z)² x = −c² x`.
///
/// Walks the basis of `m` and requires every basis vector not yet covered
/// to be such an eigenvector, which holds when `m` is spanned by root planes
/// in its canonical basis (torus pairs of the catalog).
pub fn root_plane_complex_structure<S: Scalar>(
    d: &CanonicalDecomposition<S>,
    z: &[S],
) -> Result<Matrix<S>> {
    let k = d.m().dim();
    let tol = d.algebra().tol();
    let ad = d.ad_on_m(z)?;
    let ad2 = ad.mul(&ad)?;
    let mut cols: Vec<Vec<S>> = Vec::with_capacity(k);
    for a in 0..k {
        let mut x = vec![S::zero(); k];
        x[a] = S::one();
        if !cols.is_empty() && Subspace::span(k, &cols, tol)?.contains(&x) {
            continue;
        }
        let x2 = ad2.mul_vec(&x)?;
        let lambda = x2[a].clone();
        let resid: Vec<S> = x2
            .iter()
            .zip(&x)
            .map(|(p, q)| p.clone() - &(lambda.clone() * q))
            .collect();
        if !is_zero_vec(&resid, ad2.max_magnitude().max(1.0), tol)
            || lambda.sign() != core::cmp::Ordering::Less
        {
            return Err(Error::Precondition(alloc::format!(
                "basis vector {} of m is not in a root plane of Z",
                a
            )));
        }
        let c = (-lambda).sqrt().ok_or_else(|| Error::Inexact {
            what: alloc::string::String::from("root value of Z"),
        })?;
        let y: Vec<S> = ad.mul_vec(&x)?.into_iter().map(|v| v / &c).collect();
        cols.push(x);
        cols.push(y);
    }
    if cols.len() != k {
        return Err(Error::Precondition("root planes do not span m".into()));
    }
    // in the plane basis (x, y): Jx = −y, Jy = x
    let p = Matrix::from_columns(k, &cols);
    let block = Matrix::from_fn(k, k, |r, c| {
        if r / 2 != c / 2 {
            S::zero()
        } else if r % 2 == 1 && c % 2 == 0 {
            -S::one()
        } else if r % 2 == 0 && c % 2 == 1 {
            S::one()
        } else {
            S::zero()
        }
    });
    p.mul(&block)?.mul(&p.inverse(tol)?)
}

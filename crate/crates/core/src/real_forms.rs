//! Involutions, the dual real form `g* = g^σ + √−1·m`, and complexification.
//!
//! `√−1` never appears as a number. The dual algebra lives on the basis
//! (basis of `g^σ`, basis of `m`) and the bracket of two `m` vectors changes
//! sign, which is exactly what substituting `m → i·m` does.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::LieAlgebra;
use crate::automorphism::{
    fitting_decomposition, make_automorphism, CanonicalDecomposition, FiniteOrderAutomorphism,
};
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, vec_magnitude, Inertia, Matrix, Subspace};
use crate::scalar::Scalar;
use crate::symplectic::center_of_h;

/// Prefix marking basis vectors multiplied by `√−1`.
pub const I_PREFIX: &str = "i·";

/// Killing form is negative definite.
pub fn is_compact_form<S: Scalar>(alg: &LieAlgebra<S>) -> Result<bool> {
    if !alg.is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    Ok(killing_signature(alg).is_negative_definite())
}

pub fn killing_signature<S: Scalar>(alg: &LieAlgebra<S>) -> Inertia {
    alg.killing_matrix().inertia(alg.tol())
}

/// `h = h₁ ⊕ h₂`, `m = m₁ ⊕ m₂` into `σ = +1` and `σ = −1` parts.
#[derive(Clone, Debug)]
pub struct RefinedSplit<S> {
    pub decomposition: CanonicalDecomposition<S>,
    pub h1: Subspace<S>,
    pub h2: Subspace<S>,
    pub m1: Subspace<S>,
    pub m2: Subspace<S>,
}

impl<S: Scalar> RefinedSplit<S> {
    pub fn dims(&self) -> (usize, usize, usize, usize) {
        (self.h1.dim(), self.h2.dim(), self.m1.dim(), self.m2.dim())
    }
}

#[derive(Clone, Debug)]
pub struct InvolutionSplit<S> {
    pub sigma: FiniteOrderAutomorphism<S>,
    /// `g^σ`
    pub plus: Subspace<S>,
    /// The `−1` eigenspace.
    pub minus: Subspace<S>,
    pub commutes_with_nu: bool,
    pub nu: Option<FiniteOrderAutomorphism<S>>,
    /// Present iff `σ` commutes with `ν`.
    pub refined: Option<RefinedSplit<S>>,
}

/// Eigenspaces of an order-2 automorphism, refined against `ν` when the two
/// commute.
pub fn make_involution_split<S: Scalar>(
    alg: Arc<LieAlgebra<S>>,
    nu: Option<&FiniteOrderAutomorphism<S>>,
    sigma: Matrix<S>,
) -> Result<InvolutionSplit<S>> {
    if let Some(nu) = nu {
        if nu.algebra().dim() != alg.dim() {
            return Err(Error::Dimension {
                expected: alg.dim(),
                found: nu.algebra().dim(),
            });
        }
    }
    let n = alg.dim();
    let tol = alg.tol();
    let sigma = make_automorphism(alg, sigma, 2)?;
    let id = Matrix::identity(n);
    let plus = Subspace::kernel_of(&sigma.matrix().sub(&id)?, tol);
    let minus = Subspace::kernel_of(&sigma.matrix().add(&id)?, tol);
    if plus.dim() + minus.dim() != n {
        return Err(Error::invariant(
            "eigenspaces of an involution do not span g",
        ));
    }
    let commutes_with_nu = nu.is_some_and(|nu| nu.commutes_with(sigma.matrix()));
    let refined = match nu {
        Some(nu) if commutes_with_nu => Some(refine(nu, &sigma, &plus, &minus)?),
        _ => None,
    };
    Ok(InvolutionSplit {
        sigma,
        plus,
        minus,
        commutes_with_nu,
        nu: nu.cloned(),
        refined,
    })
}

fn refine<S: Scalar>(
    nu: &FiniteOrderAutomorphism<S>,
    sigma: &FiniteOrderAutomorphism<S>,
    plus: &Subspace<S>,
    minus: &Subspace<S>,
) -> Result<RefinedSplit<S>> {
    let d = fitting_decomposition(nu)?;
    for (name, s) in [("h", d.h()), ("m", d.m())] {
        if !s.map(sigma.matrix())?.same_as(s) {
            return Err(Error::invariant(format!(
                "sigma does not preserve {}",
                name
            )));
        }
    }
    let h1 = d.h().intersection(plus)?;
    let h2 = d.h().intersection(minus)?;
    let m1 = d.m().intersection(plus)?;
    let m2 = d.m().intersection(minus)?;
    if h1.dim() + h2.dim() != d.h().dim() || m1.dim() + m2.dim() != d.m().dim() {
        return Err(Error::invariant("refined split does not add up"));
    }
    Ok(RefinedSplit {
        decomposition: d,
        h1,
        h2,
        m1,
        m2,
    })
}

/// `g*` together with the data that produced it.
#[derive(Clone, Debug)]
pub struct RealFormConstruction<S> {
    pub source: Arc<LieAlgebra<S>>,
    pub split: InvolutionSplit<S>,
    /// `g` in the adapted basis (basis of `g^σ`, then basis of `m`).
    pub source_adapted: Arc<LieAlgebra<S>>,
    pub dual: Arc<LieAlgebra<S>>,
    /// `ν` in the adapted basis, as an automorphism of `g*`.
    pub dual_nu: Option<FiniteOrderAutomorphism<S>>,
    /// `diag(1, …, 1, −1, …, −1)`, the involution of `g*` whose dual is `g`.
    pub dual_sigma: FiniteOrderAutomorphism<S>,
    /// Columns are the adapted basis in source coordinates.
    pub embedding: Matrix<S>,
    embedding_inv: Matrix<S>,
}

fn twist_label(label: &str) -> String {
    match label.strip_prefix(I_PREFIX) {
        Some(rest) => String::from(rest),
        None => format!("{}{}", I_PREFIX, label),
    }
}

/// Builds `g*` by the sign rule `[p, p]* = −[p, p]` on the adapted basis.
pub fn dual_real_form<S: Scalar>(split: &InvolutionSplit<S>) -> Result<RealFormConstruction<S>> {
    let source = split.sigma.algebra().clone();
    let n = source.dim();
    let tol = source.tol();
    let np = split.plus.dim();
    let mut cols: Vec<Vec<S>> = split.plus.basis().to_vec();
    cols.extend(split.minus.basis().iter().cloned());
    let p = Matrix::from_columns(n, &cols);
    let p_inv = p
        .inverse(tol)
        .map_err(|_| Error::invariant("eigenspaces are not complementary"))?;

    let adapted: Vec<Vec<Vec<S>>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    p_inv
                        .mul_vec(&source.bracket_unchecked(&cols[a], &cols[b]))
                        .expect("length dim")
                })
                .collect()
        })
        .collect();
    let base_labels: Vec<String> = split
        .plus
        .pivots()
        .iter()
        .chain(split.minus.pivots())
        .map(|&i| source.labels()[i].clone())
        .collect();
    let relabel = |twist: bool| -> Vec<String> {
        base_labels
            .iter()
            .enumerate()
            .map(|(a, l)| {
                if twist && a >= np {
                    twist_label(l)
                } else {
                    l.clone()
                }
            })
            .collect()
    };
    let as_invariant = |e: Error| {
        Error::invariant(format!(
            "dual structure constants are not a Lie algebra: {}",
            e
        ))
    };
    let source_adapted =
        LieAlgebra::from_bracket_fn(relabel(false), tol, |a, b| adapted[a][b].clone())
            .map_err(as_invariant)?;
    let dual = LieAlgebra::from_bracket_fn(relabel(true), tol, |a, b| {
        let v = adapted[a][b].clone();
        if a >= np && b >= np {
            v.into_iter().map(|x| -x).collect()
        } else {
            v
        }
    })
    .map_err(as_invariant)?;
    let dual = Arc::new(dual);

    let sig = Matrix::from_fn(n, n, |r, c| match (r == c, r < np) {
        (false, _) => S::zero(),
        (true, true) => S::one(),
        (true, false) => -S::one(),
    });
    let dual_sigma = make_automorphism(dual.clone(), sig, 2)?;
    let dual_nu = match &split.nu {
        Some(nu) if split.commutes_with_nu => {
            let m = p_inv.mul(nu.matrix())?.mul(&p)?;
            Some(make_automorphism(dual.clone(), m, nu.order())?)
        }
        _ => None,
    };
    Ok(RealFormConstruction {
        source,
        split: split.clone(),
        source_adapted: Arc::new(source_adapted),
        dual,
        dual_nu,
        dual_sigma,
        embedding: p,
        embedding_inv: p_inv,
    })
}

impl<S: Scalar> RealFormConstruction<S> {
    /// The involution split of `g*` whose dual recovers `g`.
    pub fn dual_split(&self) -> Result<InvolutionSplit<S>> {
        make_involution_split(
            self.dual.clone(),
            self.dual_nu.as_ref(),
            self.dual_sigma.matrix().clone(),
        )
    }

    /// Image in `g*` of `X ∈ g^σ` (same coordinates) or of `i·X` for
    /// `X ∈ m` (the coordinates of `X` placed on the `i·m` basis).
    pub fn to_dual(&self, v: &[S]) -> Result<Vec<S>> {
        self.embedding_inv.mul_vec(v)
    }

    pub fn dual_decomposition(&self) -> Result<Option<CanonicalDecomposition<S>>> {
        self.dual_nu.as_ref().map(fitting_decomposition).transpose()
    }
}

/// Realified complexification: basis `e_1..e_n, i·e_1..i·e_n`, with the
/// multiplication-by-i operator stored on the result.
pub fn complexify<S: Scalar>(alg: &LieAlgebra<S>) -> LieAlgebra<S> {
    let n = alg.dim();
    let mut labels: Vec<String> = alg.labels().to_vec();
    labels.extend(alg.labels().iter().map(|l| format!("{}{}", I_PREFIX, l)));
    let mut table = vec![Vec::new(); 4 * n * n];
    for i in 0..n {
        for j in 0..n {
            let c = alg.basis_bracket(i, j);
            // [x, y] = c, [x, iy] = [ix, y] = i·c, [ix, iy] = −c
            table[i * 2 * n + j] = c.to_vec();
            table[i * 2 * n + n + j] = c.iter().map(|(k, v)| (n + k, v.clone())).collect();
            table[(n + i) * 2 * n + j] = c.iter().map(|(k, v)| (n + k, v.clone())).collect();
            table[(n + i) * 2 * n + n + j] = c.iter().map(|(k, v)| (*k, -v.clone())).collect();
        }
    }
    let mut out = LieAlgebra::from_sparse_unchecked(labels, table, alg.tol());
    out.set_complex_structure(complex_unit(n));
    out
}

/// `[[0, −I], [I, 0]]`.
fn complex_unit<S: Scalar>(n: usize) -> Matrix<S> {
    Matrix::from_fn(2 * n, 2 * n, |r, c| {
        if r == c + n {
            S::one()
        } else if c == r + n {
            -S::one()
        } else {
            S::zero()
        }
    })
}

/// `ν ⊕ ν` on the complexification.
pub fn complexify_automorphism<S: Scalar>(
    complexified: Arc<LieAlgebra<S>>,
    nu: &FiniteOrderAutomorphism<S>,
) -> Result<FiniteOrderAutomorphism<S>> {
    let m = nu.matrix();
    make_automorphism(complexified, Matrix::block_diag(&[m, m]), nu.order())
}

/// `v ↦ v + i·0`.
pub fn complexify_vector<S: Scalar>(v: &[S]) -> Vec<S> {
    let mut out = v.to_vec();
    out.extend(core::iter::repeat_n(S::zero(), v.len()));
    out
}

/// Whether `z` is central in `h` and `ad_z` is injective on `m`.
pub fn is_injective_element<S: Scalar>(d: &CanonicalDecomposition<S>, z: &[S]) -> Result<bool> {
    let alg = d.algebra();
    if z.len() != alg.dim() {
        return Err(Error::Dimension {
            expected: alg.dim(),
            found: z.len(),
        });
    }
    if !d.h().contains(z) || !alg.brackets_vanish(z, d.h().basis()) {
        return Ok(false);
    }
    let k = d.ad_on_m(z)?;
    Ok(k.rank(alg.tol()) == d.m().dim())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    /// `h' = (Z + σZ)/2`, carried over unchanged.
    Fixed,
    /// `h'' = (Z − σZ)/2`, carried over as `i·h''`.
    Negated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransferReport<S> {
    pub h_prime: Vec<S>,
    pub h_double_prime: Vec<S>,
    /// `dim Z(h) = 1`; otherwise the result is reported without the lemma.
    pub lemma_applies: bool,
    /// First component whose image is injective in `g*`, in `g*` coordinates.
    pub transferred: Option<(Component, Vec<S>)>,
}

/// Carries an injective element of the source pair into the dual pair.
pub fn transfer_injective_element<S: Scalar>(
    rc: &RealFormConstruction<S>,
    d_source: &CanonicalDecomposition<S>,
    z: &[S],
) -> Result<TransferReport<S>> {
    if !is_injective_element(d_source, z)? {
        return Err(Error::Precondition(
            "Z is not an injective element of the source pair".into(),
        ));
    }
    let d_dual = rc
        .dual_decomposition()?
        .ok_or_else(|| Error::Precondition("sigma does not commute with nu".into()))?;
    let lemma_applies = center_of_h(d_source).dim() == 1;
    let sz = rc.split.sigma.apply(z)?;
    let half = S::from_ratio(1, 2);
    let h_prime: Vec<S> = z
        .iter()
        .zip(&sz)
        .map(|(a, b)| (a.clone() + b) * &half)
        .collect();
    let h_double_prime: Vec<S> = z
        .iter()
        .zip(&sz)
        .map(|(a, b)| (a.clone() - b) * &half)
        .collect();
    let scale = vec_magnitude(z).max(1.0);
    let tol = rc.source.tol();
    let mut transferred = None;
    for (component, v) in [
        (Component::Fixed, &h_prime),
        (Component::Negated, &h_double_prime),
    ] {
        if is_zero_vec(v, scale, tol) {
            continue;
        }
        let image = rc.to_dual(v)?;
        if is_injective_element(&d_dual, &image)? {
            transferred = Some((component, image));
            break;
        }
    }
    Ok(TransferReport {
        h_prime,
        h_double_prime,
        lemma_applies,
        transferred,
    })
}

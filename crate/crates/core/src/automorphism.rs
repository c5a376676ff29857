//! Finite-order automorphisms and the canonical decomposition `g = h ⊕ m`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, vec_magnitude, Matrix, Subspace};
use crate::scalar::Scalar;

/// Largest order accepted by [`make_automorphism`].
pub const MAX_ORDER: u32 = 48;

/// Tolerance for `ν^k = id` on float paths.
pub const ORDER_TOL: f64 = 1e-8;

/// An automorphism `ν` of `g` with `ν^k = id` and `k` minimal, `k ≥ 2`.
#[derive(Clone, Debug)]
pub struct FiniteOrderAutomorphism<S> {
    algebra: Arc<LieAlgebra<S>>,
    matrix: Matrix<S>,
    order: u32,
}

impl<S: Scalar> FiniteOrderAutomorphism<S> {
    pub fn algebra(&self) -> &Arc<LieAlgebra<S>> {
        &self.algebra
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn apply(&self, x: &[S]) -> Result<Vec<S>> {
        self.matrix.mul_vec(x)
    }

    /// `B(νe_i, νe_j) = B(e_i, e_j)`, i.e. `νᵀ B ν = B`.
    pub fn preserves_killing(&self) -> bool {
        let b = self.algebra.killing_matrix();
        let lhs = self
            .matrix
            .transpose()
            .mul(b)
            .and_then(|x| x.mul(&self.matrix));
        lhs.is_ok_and(|l| l.approx_eq(b, self.algebra.tol()))
    }

    pub fn commutes_with(&self, other: &Matrix<S>) -> bool {
        match (self.matrix.mul(other), other.mul(&self.matrix)) {
            (Ok(a), Ok(b)) => a.approx_eq(&b, self.algebra.tol()),
            _ => false,
        }
    }
}

/// Smallest `j ≤ bound` with `m^j = id`.
pub fn minimal_order<S: Scalar>(m: &Matrix<S>, bound: u32) -> Option<u32> {
    if !m.is_square() {
        return None;
    }
    let id = Matrix::identity(m.rows());
    let mut p = m.clone();
    for j in 1..=bound {
        if p.approx_eq(&id, ORDER_TOL) {
            return Some(j);
        }
        p = p.mul(m).ok()?;
    }
    None
}

/// `ν[e_i, e_j] = [νe_i, νe_j]` on all basis pairs, else the first failing pair.
pub fn check_bracket_compatibility<S: Scalar>(
    alg: &LieAlgebra<S>,
    m: &Matrix<S>,
) -> Option<(usize, usize)> {
    let n = alg.dim();
    let images: Vec<Vec<S>> = (0..n).map(|j| m.column(j)).collect();
    let scale = m.max_magnitude().max(1.0);
    for i in 0..n {
        for j in i + 1..n {
            let mut lhs = alloc::vec![S::zero(); n];
            for (k, c) in alg.basis_bracket(i, j) {
                crate::linalg::axpy(&mut lhs, c, &images[*k]);
            }
            let rhs = alg.bracket_unchecked(&images[i], &images[j]);
            let diff: Vec<S> = lhs.into_iter().zip(rhs).map(|(a, b)| a - &b).collect();
            if !is_zero_vec(&diff, scale * scale * alg.scale(), alg.tol()) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Validates `m` as an automorphism of `alg` of exact order `claimed_order`.
pub fn make_automorphism<S: Scalar>(
    alg: Arc<LieAlgebra<S>>,
    m: Matrix<S>,
    claimed_order: u32,
) -> Result<FiniteOrderAutomorphism<S>> {
    let n = alg.dim();
    if m.rows() != n || m.cols() != n {
        return Err(Error::Dimension {
            expected: n,
            found: if m.rows() != n { m.rows() } else { m.cols() },
        });
    }
    if claimed_order > MAX_ORDER {
        return Err(Error::OutOfRange {
            what: "order",
            value: claimed_order as i64,
        });
    }
    if claimed_order < 2 {
        return Err(Error::WrongOrder {
            claimed: claimed_order,
            actual: minimal_order(&m, claimed_order.max(1)),
        });
    }
    if m.rank(alg.tol()) != n {
        return Err(Error::NotAutomorphism {
            reason: "matrix is singular",
            left: 0,
            right: 0,
        });
    }
    if let Some((i, j)) = check_bracket_compatibility(&alg, &m) {
        return Err(Error::NotAutomorphism {
            reason: "bracket is not preserved",
            left: i,
            right: j,
        });
    }
    match minimal_order(&m, claimed_order) {
        Some(k) if k == claimed_order => Ok(FiniteOrderAutomorphism {
            algebra: alg,
            matrix: m,
            order: k,
        }),
        actual => Err(Error::WrongOrder {
            claimed: claimed_order,
            actual,
        }),
    }
}

/// `g = h ⊕ m` with `h = ker(id − ν)` and `m = im(id − ν)`.
#[derive(Clone, Debug)]
pub struct CanonicalDecomposition<S> {
    nu: FiniteOrderAutomorphism<S>,
    h: Subspace<S>,
    m: Subspace<S>,
    proj_h: Matrix<S>,
    proj_m: Matrix<S>,
}

/// Outcome of the structural checks on a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecompositionChecks {
    pub killing_preserved: bool,
    pub orthogonal: bool,
    pub kernel_stable: bool,
    pub h_subalgebra: bool,
    pub h_preserves_m: bool,
    pub nu_preserves_h: bool,
    pub nu_preserves_m: bool,
}

impl DecompositionChecks {
    pub fn all(&self) -> bool {
        self.killing_preserved
            && self.orthogonal
            && self.kernel_stable
            && self.h_subalgebra
            && self.h_preserves_m
            && self.nu_preserves_h
            && self.nu_preserves_m
    }
}

/// Computes `h`, `m` and the projections, and verifies `[h,h] ⊆ h`,
/// `[h,m] ⊆ m` and `ker A = ker A²` for `A = id − ν`.
pub fn fitting_decomposition<S: Scalar>(
    nu: &FiniteOrderAutomorphism<S>,
) -> Result<CanonicalDecomposition<S>> {
    let alg = nu.algebra();
    let n = alg.dim();
    let tol = alg.tol();
    let a = Matrix::identity(n).sub(nu.matrix())?;
    let h = Subspace::kernel_of(&a, tol);
    let m = Subspace::image_of(&a, tol);
    if h.dim() + m.dim() != n {
        return Err(Error::invariant(format!(
            "dim h + dim m = {} + {} != {}",
            h.dim(),
            m.dim(),
            n
        )));
    }
    let a2 = a.mul(&a)?;
    if !Subspace::kernel_of(&a2, tol).same_as(&h) {
        return Err(Error::invariant(
            "ker(id - nu) differs from ker((id - nu)^2)",
        ));
    }
    // columns: basis of h then basis of m
    let mut cols: Vec<Vec<S>> = h.basis().to_vec();
    cols.extend(m.basis().iter().cloned());
    let p = Matrix::from_columns(n, &cols);
    let p_inv = p
        .inverse(tol)
        .map_err(|_| Error::invariant("h and m do not span g"))?;
    let select = |lo: usize, hi: usize| {
        let d = Matrix::from_fn(n, n, |r, c| {
            if r == c && r >= lo && r < hi {
                S::one()
            } else {
                S::zero()
            }
        });
        p.mul(&d).and_then(|x| x.mul(&p_inv))
    };
    let proj_h = select(0, h.dim())?;
    let proj_m = select(h.dim(), n)?;
    let d = CanonicalDecomposition {
        nu: nu.clone(),
        h,
        m,
        proj_h,
        proj_m,
    };
    if !d.h_is_subalgebra() {
        return Err(Error::invariant("[h, h] is not contained in h"));
    }
    if !d.h_preserves_m() {
        return Err(Error::invariant("[h, m] is not contained in m"));
    }
    Ok(d)
}

impl<S: Scalar> CanonicalDecomposition<S> {
    pub fn algebra(&self) -> &Arc<LieAlgebra<S>> {
        self.nu.algebra()
    }

    pub fn automorphism(&self) -> &FiniteOrderAutomorphism<S> {
        &self.nu
    }

    pub fn order(&self) -> u32 {
        self.nu.order()
    }

    pub fn h(&self) -> &Subspace<S> {
        &self.h
    }

    pub fn m(&self) -> &Subspace<S> {
        &self.m
    }

    pub fn proj_h(&self) -> &Matrix<S> {
        &self.proj_h
    }

    pub fn proj_m(&self) -> &Matrix<S> {
        &self.proj_m
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.h.dim(), self.m.dim())
    }

    fn tol(&self) -> f64 {
        self.algebra().tol()
    }

    /// Coordinates in the `m` basis of the `m`-component of `v`.
    pub fn m_coordinates(&self, v: &[S]) -> Result<Vec<S>> {
        let pm = self.proj_m.mul_vec(v)?;
        Ok(self.m.coordinates_unchecked(&pm))
    }

    /// Coordinates in the `h` basis of the `h`-component of `v`.
    pub fn h_coordinates(&self, v: &[S]) -> Result<Vec<S>> {
        let ph = self.proj_h.mul_vec(v)?;
        Ok(self.h.coordinates_unchecked(&ph))
    }

    /// Matrix of `ad x` restricted to `m` (requires `[x, m] ⊆ m`).
    pub fn ad_on_m(&self, x: &[S]) -> Result<Matrix<S>> {
        let alg = self.algebra();
        let cols: Result<Vec<Vec<S>>> = self
            .m
            .basis()
            .iter()
            .map(|v| {
                let w = alg.bracket(x, v)?;
                self.m.coordinates(&w).ok_or(Error::NotInSpan)
            })
            .collect();
        Ok(Matrix::from_columns(self.m.dim(), &cols?))
    }

    /// Matrix of `ν` restricted to `m`.
    pub fn nu_on_m(&self) -> Result<Matrix<S>> {
        self.m.restrict(self.nu.matrix())
    }

    fn h_is_subalgebra(&self) -> bool {
        let alg = self.algebra();
        let b = self.h.basis();
        (0..b.len()).all(|i| {
            (i + 1..b.len()).all(|j| self.h.contains(&alg.bracket_unchecked(&b[i], &b[j])))
        })
    }

    fn h_preserves_m(&self) -> bool {
        let alg = self.algebra();
        self.h.basis().iter().all(|t| {
            self.m
                .basis()
                .iter()
                .all(|x| self.m.contains(&alg.bracket_unchecked(t, x)))
        })
    }

    fn killing_orthogonal(&self) -> bool {
        let b = self.algebra().killing_matrix();
        let hm = self.h.basis_matrix();
        let mm = self.m.basis_matrix();
        let gram = hm.transpose().mul(b).and_then(|x| x.mul(&mm));
        gram.is_ok_and(|g| g.is_zero_within(b.max_magnitude().max(1.0), self.tol()))
    }

    /// Recomputes every structural property of the pair.
    pub fn checks(&self) -> DecompositionChecks {
        let n = self.algebra().dim();
        let tol = self.tol();
        let a = Matrix::identity(n).sub(self.nu.matrix()).expect("square");
        let kernel_stable = a
            .mul(&a)
            .map(|a2| Subspace::kernel_of(&a2, tol).same_as(&self.h))
            .unwrap_or(false);
        let mapped = |s: &Subspace<S>| {
            s.map(self.nu.matrix())
                .map(|t| t.same_as(s))
                .unwrap_or(false)
        };
        DecompositionChecks {
            killing_preserved: self.nu.preserves_killing(),
            orthogonal: self.killing_orthogonal(),
            kernel_stable,
            h_subalgebra: self.h_is_subalgebra(),
            h_preserves_m: self.h_preserves_m(),
            nu_preserves_h: mapped(&self.h),
            nu_preserves_m: mapped(&self.m),
        }
    }

    /// Largest ideal of `g` inside `h`, by iterated shrinking
    /// `n_{i+1} = {x ∈ n_i : [x, g] ⊆ n_i}`.
    pub fn maximal_ideal_in_h(&self) -> Subspace<S> {
        let alg = self.algebra();
        let n = alg.dim();
        let tol = self.tol();
        let mut cur = self.h.clone();
        loop {
            if cur.is_zero() {
                return cur;
            }
            // column l: residuals of [u_l, e_i] modulo cur, stacked over i
            let cols: Vec<Vec<S>> = cur
                .basis()
                .iter()
                .map(|u| {
                    (0..n)
                        .flat_map(|i| cur.residual(&alg.bracket_basis_left(i, u)))
                        .collect()
                })
                .collect();
            let system = Matrix::from_columns(n * n, &cols);
            let combos = system.kernel(tol);
            let next: Vec<Vec<S>> = combos.iter().map(|c| cur.combine(c)).collect();
            let next = Subspace::span(n, &next, tol).expect("vectors of length dim");
            if next.dim() == cur.dim() {
                return next;
            }
            cur = next;
        }
    }

    /// `{U ∈ h : [U, m] = 0}`.
    pub fn ad_m_kernel_in_h(&self) -> Subspace<S> {
        let alg = self.algebra();
        let n = alg.dim();
        let cols: Vec<Vec<S>> = self
            .h
            .basis()
            .iter()
            .map(|u| {
                self.m
                    .basis()
                    .iter()
                    .flat_map(|x| alg.bracket_unchecked(u, x))
                    .collect()
            })
            .collect();
        if self.m.is_zero() {
            return self.h.clone();
        }
        let system = Matrix::from_columns(n * self.m.dim(), &cols);
        let vecs: Vec<Vec<S>> = system
            .kernel(self.tol())
            .iter()
            .map(|c| self.h.combine(c))
            .collect();
        Subspace::span(n, &vecs, self.tol()).expect("vectors of length dim")
    }

    /// `h` contains no nonzero ideal of `g`. Both characterizations are
    /// computed and must agree.
    pub fn is_effective(&self) -> Result<bool> {
        let a = self.maximal_ideal_in_h();
        let b = self.ad_m_kernel_in_h();
        if !a.same_as(&b) {
            return Err(Error::invariant(format!(
                "maximal ideal in h has dim {} but the kernel of ad|m on h has dim {}",
                a.dim(),
                b.dim()
            )));
        }
        Ok(a.is_zero())
    }

    /// Span of the `h`-components of `[m_i, m_j]`.
    pub fn mm_projection_to_h(&self) -> Subspace<S> {
        let alg = self.algebra();
        let b = self.m.basis();
        let mut vecs = Vec::new();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let w = alg.bracket_unchecked(&b[i], &b[j]);
                let ph = self.proj_h.mul_vec(&w).expect("length dim");
                if !is_zero_vec(&ph, vec_magnitude(&w).max(1.0), self.tol()) {
                    vecs.push(ph);
                }
            }
        }
        Subspace::span(alg.dim(), &vecs, self.tol()).expect("vectors of length dim")
    }

    /// Effective and `[m, m]_h = h`.
    pub fn is_prime(&self) -> Result<bool> {
        Ok(self.is_effective()? && self.mm_projection_to_h().same_as(&self.h))
    }
}

/// For simple `g`, recomputes primality of `(g, ν)`; `false` would contradict
/// the fact that such pairs are always prime.
pub fn check_simple_implies_prime<S: Scalar>(nu: &FiniteOrderAutomorphism<S>) -> Result<bool> {
    if !nu.algebra().is_simple()? {
        return Err(Error::NotSimple);
    }
    fitting_decomposition(nu)?.is_prime()
}

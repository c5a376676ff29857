//! The classical compact algebras su(n), so(n), sp(n) and the split forms
//! sl(n, ℝ), realized by matrices, with their standard automorphisms.

mod realization;
mod tables;

pub use realization::{CMatrix, CoordinateSolver, MatrixRealization};
pub use tables::{generate_table_rows, DualKind, TableRow};

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::LieAlgebra;
use crate::automorphism::{make_automorphism, minimal_order, FiniteOrderAutomorphism, MAX_ORDER};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    Su,
    So,
    Sp,
    SlReal,
}

impl Series {
    /// Accepted values of `n`.
    pub fn bounds(self) -> (usize, usize) {
        match self {
            Series::Su => (2, 6),
            Series::So => (3, 8),
            Series::Sp => (1, 3),
            Series::SlReal => (2, 4),
        }
    }

    /// Number of torus weights expected for `n`.
    pub fn weight_count(self, n: usize) -> usize {
        match self {
            Series::Su | Series::Sp => n,
            Series::So | Series::SlReal => n / 2,
        }
    }

    fn what(self) -> &'static str {
        match self {
            Series::Su => "su(n): n",
            Series::So => "so(n): n",
            Series::Sp => "sp(n): n",
            Series::SlReal => "sl(n,R): n",
        }
    }
}

/// An order-2 automorphism with a display name.
#[derive(Clone, Debug)]
pub struct NamedInvolution<S> {
    pub name: String,
    pub matrix: Matrix<S>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry<S> {
    pub name: String,
    pub series: Series,
    pub n: usize,
    pub realization: MatrixRealization<S>,
    pub algebra: Arc<LieAlgebra<S>>,
    pub simple: bool,
}

fn e<S: Scalar>(n: usize, r: usize, c: usize) -> CMatrix<S> {
    let mut m = CMatrix::zeros(n);
    m.set(r, c, S::one(), S::zero());
    m
}

fn half<S: Scalar>() -> S {
    S::from_ratio(1, 2)
}

/// `x_ij = −(i/2)(E_ij + E_ji)`, `y_ij = (1/2)(E_ji − E_ij)` for `i < j`.
fn offdiagonal_unitary<S: Scalar>(n: usize) -> (Vec<String>, Vec<CMatrix<S>>) {
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let sym = e::<S>(n, i, j).add(&e(n, j, i));
            labels.push(format!("x{}{}", i + 1, j + 1));
            basis.push(sym.times_i().scale(&-half::<S>()));
            labels.push(format!("y{}{}", i + 1, j + 1));
            basis.push(e::<S>(n, j, i).sub(&e(n, i, j)).scale(&half()));
        }
    }
    (labels, basis)
}

fn check_bounds(series: Series, n: usize) -> Result<()> {
    let (lo, hi) = series.bounds();
    if n < lo || n > hi {
        return Err(Error::OutOfRange {
            what: series.what(),
            value: n as i64,
        });
    }
    Ok(())
}

fn finish<S: Scalar>(
    series: Series,
    n: usize,
    name: String,
    labels: Vec<String>,
    basis: Vec<CMatrix<S>>,
) -> Result<CatalogEntry<S>> {
    let realization = MatrixRealization::new(labels, basis)?;
    let algebra = realization.algebra()?;
    let simple = algebra.is_simple()?;
    Ok(CatalogEntry {
        name,
        series,
        n,
        realization,
        algebra: Arc::new(algebra),
        simple,
    })
}

/// su(n): `x_ij`, `y_ij`, then `h_k = −(i/2)(E_kk − E_{k+1,k+1})`.
pub fn build_su<S: Scalar>(n: usize) -> Result<CatalogEntry<S>> {
    check_bounds(Series::Su, n)?;
    let (mut labels, mut basis) = offdiagonal_unitary::<S>(n);
    for k in 0..n - 1 {
        labels.push(format!("h{}", k + 1));
        basis.push(
            e::<S>(n, k, k)
                .sub(&e(n, k + 1, k + 1))
                .times_i()
                .scale(&-half::<S>()),
        );
    }
    finish(Series::Su, n, format!("su({})", n), labels, basis)
}

/// so(n): `l_ij = E_ij − E_ji`.
pub fn build_so<S: Scalar>(n: usize) -> Result<CatalogEntry<S>> {
    check_bounds(Series::So, n)?;
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            labels.push(format!("l{}{}", i + 1, j + 1));
            basis.push(e::<S>(n, i, j).sub(&e(n, j, i)));
        }
    }
    finish(Series::So, n, format!("so({})", n), labels, basis)
}

/// sp(n) ⊂ u(2n): `[[A, B], [−B̄, Ā]]` with `A ∈ u(n)` and `B` complex
/// symmetric.
pub fn build_sp<S: Scalar>(n: usize) -> Result<CatalogEntry<S>> {
    check_bounds(Series::Sp, n)?;
    let m = 2 * n;
    let embed_a = |a: &CMatrix<S>| {
        let mut out = CMatrix::zeros(m);
        let ab = a.conj();
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, a.re[(r, c)].clone(), a.im[(r, c)].clone());
                out.set(n + r, n + c, ab.re[(r, c)].clone(), ab.im[(r, c)].clone());
            }
        }
        out
    };
    let embed_b = |b: &CMatrix<S>| {
        let mut out = CMatrix::zeros(m);
        let nb = b.conj().scale(&-S::one());
        for r in 0..n {
            for c in 0..n {
                out.set(r, n + c, b.re[(r, c)].clone(), b.im[(r, c)].clone());
                out.set(n + r, c, nb.re[(r, c)].clone(), nb.im[(r, c)].clone());
            }
        }
        out
    };
    let (mut labels, unitary) = offdiagonal_unitary::<S>(n);
    let mut basis: Vec<CMatrix<S>> = unitary.iter().map(embed_a).collect();
    for k in 0..n {
        labels.push(format!("d{}", k + 1));
        basis.push(embed_a(&e::<S>(n, k, k).times_i().scale(&-half::<S>())));
    }
    for (prefix, imaginary) in [("r", false), ("s", true)] {
        for i in 0..n {
            for j in i..n {
                let sym = if i == j {
                    e::<S>(n, i, i)
                } else {
                    e::<S>(n, i, j).add(&e(n, j, i))
                };
                let sym = sym.scale(&half());
                let b = if imaginary { sym.times_i() } else { sym };
                labels.push(format!("{}{}{}", prefix, i + 1, j + 1));
                basis.push(embed_b(&b));
            }
        }
    }
    finish(Series::Sp, n, format!("sp({})", n), labels, basis)
}

/// sl(n, ℝ): `e_ij` for `i ≠ j`, then `h_k = E_kk − E_{k+1,k+1}`.
pub fn build_sl_real<S: Scalar>(n: usize) -> Result<CatalogEntry<S>> {
    check_bounds(Series::SlReal, n)?;
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                labels.push(format!("e{}{}", i + 1, j + 1));
                basis.push(e::<S>(n, i, j));
            }
        }
    }
    for k in 0..n - 1 {
        labels.push(format!("h{}", k + 1));
        basis.push(e::<S>(n, k, k).sub(&e(n, k + 1, k + 1)));
    }
    finish(Series::SlReal, n, format!("sl({},R)", n), labels, basis)
}

pub fn build<S: Scalar>(series: Series, n: usize) -> Result<CatalogEntry<S>> {
    match series {
        Series::Su => build_su(n),
        Series::So => build_so(n),
        Series::Sp => build_sp(n),
        Series::SlReal => build_sl_real(n),
    }
}

/// Parses short names such as `su3`, `so5`, `sp2`, `sl3r`.
pub fn parse_name(name: &str) -> Option<(Series, usize)> {
    let (series, rest) = if let Some(r) = name.strip_prefix("su") {
        (Series::Su, r)
    } else if let Some(r) = name.strip_prefix("so") {
        (Series::So, r)
    } else if let Some(r) = name.strip_prefix("sp") {
        (Series::Sp, r)
    } else {
        let r = name.strip_prefix("sl")?;
        (Series::SlReal, r.strip_suffix('r')?)
    };
    let n: usize = rest.parse().ok()?;
    Some((series, n))
}

pub fn lookup<S: Scalar>(name: &str) -> Result<CatalogEntry<S>> {
    let (series, n) = parse_name(name)
        .ok_or_else(|| Error::Precondition(format!("unknown algebra '{}'", name)))?;
    build(series, n)
}

/// Short names listed by the catalog.
pub const LISTED: [&str; 12] = [
    "su2", "su3", "su4", "so5", "so6", "so7", "so8", "sp2", "sp3", "sl2r", "sl3r", "sl4r",
];

pub fn short_name(series: Series, n: usize) -> String {
    match series {
        Series::Su => format!("su{}", n),
        Series::So => format!("so{}", n),
        Series::Sp => format!("sp{}", n),
        Series::SlReal => format!("sl{}r", n),
    }
}

fn signs<S: Scalar>(eps: &[i64]) -> CMatrix<S> {
    let n = eps.len();
    CMatrix::real(Matrix::from_fn(n, n, |r, c| {
        if r == c {
            S::from_i64(eps[r])
        } else {
            S::zero()
        }
    }))
}

fn sign_pattern(p: usize, q: usize) -> Vec<i64> {
    let mut v = vec![1; p];
    v.extend(core::iter::repeat_n(-1, q));
    v
}

/// `J = [[0, −I], [I, 0]]`.
fn quaternionic_unit<S: Scalar>(n: usize) -> CMatrix<S> {
    let h = n / 2;
    CMatrix::real(Matrix::from_fn(n, n, |r, c| {
        if r >= h && c + h == r {
            S::one()
        } else if r < h && c == r + h {
            -S::one()
        } else {
            S::zero()
        }
    }))
}

/// `diag(s_1 J₂, s_2 J₂, …)` with `J₂ = [[0, −1], [1, 0]]`.
fn block_units<S: Scalar>(n: usize, signs: &[i64]) -> CMatrix<S> {
    let mut g = Matrix::zeros(n, n);
    for (j, &s) in signs.iter().enumerate() {
        g[(2 * j + 1, 2 * j)] = S::from_i64(s);
        g[(2 * j, 2 * j + 1)] = S::from_i64(-s);
    }
    CMatrix::real(g)
}

impl<S: Scalar> CatalogEntry<S> {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn short_name(&self) -> String {
        short_name(self.series, self.n)
    }

    pub fn matrix_size(&self) -> usize {
        match self.series {
            Series::Sp => 2 * self.n,
            _ => self.n,
        }
    }

    /// `Ad(g)` for `g` in the compact group (so `g⁻¹ = g*`).
    pub fn unitary_adjoint(&self, g: &CMatrix<S>) -> Result<Matrix<S>> {
        self.realization.adjoint_action(g, &g.adjoint())
    }

    /// `X ↦ X̄`.
    pub fn conjugation(&self) -> Result<Matrix<S>> {
        self.realization.induced_matrix(CMatrix::conj)
    }

    /// `X ↦ J X̄ J⁻¹` with `J = [[0, −I], [I, 0]]` (n even).
    pub fn quaternionic_conjugation(&self) -> Result<Matrix<S>> {
        let n = self.matrix_size();
        if n % 2 == 1 {
            return Err(Error::Precondition(
                "quaternionic conjugation needs even size".into(),
            ));
        }
        let j = quaternionic_unit::<S>(n);
        let j_inv = j.adjoint();
        self.realization
            .induced_matrix(|x| j.mul(&x.conj()).mul(&j_inv))
    }

    /// `Ad(diag(ε))` on the defining matrices (for sp(n), `diag(ε, ε)`).
    pub fn sign_involution(&self, eps: &[i64]) -> Result<Matrix<S>> {
        let full: Vec<i64> = match self.series {
            Series::Sp => eps.iter().chain(eps).copied().collect(),
            _ => eps.to_vec(),
        };
        if full.len() != self.matrix_size() {
            return Err(Error::Dimension {
                expected: self.matrix_size(),
                found: full.len(),
            });
        }
        self.unitary_adjoint(&signs(&full))
    }

    /// sp(n): `Ad(diag(iε, −iε))`.
    pub fn imaginary_sign_involution(&self, eps: &[i64]) -> Result<Matrix<S>> {
        if self.series != Series::Sp || eps.len() != self.n {
            return Err(Error::Precondition(
                "imaginary sign involution is defined on sp(n)".into(),
            ));
        }
        let full: Vec<i64> = eps.iter().copied().chain(eps.iter().map(|x| -x)).collect();
        self.unitary_adjoint(&signs::<S>(&full).times_i())
    }

    /// so(2m): `Ad(diag(s_j J₂))`.
    pub fn block_unit_involution(&self, block_signs: &[i64]) -> Result<Matrix<S>> {
        if self.series != Series::So || self.n % 2 == 1 || block_signs.len() != self.n / 2 {
            return Err(Error::Precondition(
                "block complex structure needs so(2m) and m signs".into(),
            ));
        }
        self.unitary_adjoint(&block_units(self.n, block_signs))
    }

    /// `X ↦ −Xᵀ`.
    pub fn negative_transpose(&self) -> Result<Matrix<S>> {
        self.realization
            .induced_matrix(|x| x.transpose().scale(&-S::one()))
    }

    /// Named order-2 automorphisms: the diagonal sign involutions, plus the
    /// series-specific ones.
    pub fn standard_involutions(&self) -> Result<Vec<NamedInvolution<S>>> {
        let mut out = Vec::new();
        let size = self.n;
        for q in 1..=size / 2 {
            let eps = sign_pattern(size - q, q);
            let name = match self.series {
                Series::Sp => format!("Ad(diag(1^{0},(-1)^{1},1^{0},(-1)^{1}))", size - q, q),
                _ => format!("Ad(diag(1^{},(-1)^{}))", size - q, q),
            };
            out.push(NamedInvolution {
                name,
                matrix: self.sign_involution(&eps)?,
            });
        }
        match self.series {
            Series::Su => out.push(NamedInvolution {
                name: "conj".into(),
                matrix: self.conjugation()?,
            }),
            Series::Sp => out.push(NamedInvolution {
                name: "Ad(diag(iI,-iI))".into(),
                matrix: self.imaginary_sign_involution(&vec![1; self.n])?,
            }),
            Series::So if self.n.is_multiple_of(2) => out.push(NamedInvolution {
                name: "Ad(J)".into(),
                matrix: self.block_unit_involution(&vec![1; self.n / 2])?,
            }),
            Series::SlReal => out.push(NamedInvolution {
                name: "-transpose".into(),
                matrix: self.negative_transpose()?,
            }),
            Series::So => {}
        }
        Ok(out)
    }

    /// The group element whose adjoint action is the torus automorphism.
    pub fn torus_element(&self, w: &TorusWeights) -> Result<CMatrix<S>> {
        let expected = self.series.weight_count(self.n);
        if w.weights.len() != expected {
            return Err(Error::Dimension {
                expected,
                found: w.weights.len(),
            });
        }
        let k = w.order as i64;
        let g = match self.series {
            Series::Su => CMatrix::diagonal_phases(&w.weights, k),
            Series::Sp => {
                let full: Vec<i64> = w
                    .weights
                    .iter()
                    .copied()
                    .chain(w.weights.iter().map(|x| -x))
                    .collect();
                CMatrix::diagonal_phases(&full, k)
            }
            Series::So | Series::SlReal => CMatrix::block_rotations(self.n, &w.weights, k),
        };
        g.ok_or_else(|| Error::Inexact {
            what: format!("e^(2*pi*i*w/{})", k),
        })
    }
}

/// Weights `w_i` of the torus element `diag(ζ^{w_1}, …)`, `ζ = e^{2πi/k}`.
/// For so(n) and sl(n, ℝ) there is one weight per 2×2 rotation block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusWeights {
    pub weights: Vec<i64>,
    pub order: u32,
}

impl TorusWeights {
    /// Reduces weights modulo `order` and sorts them ascending.
    pub fn new(weights: &[i64], order: u32) -> Self {
        let mut w: Vec<i64> = weights
            .iter()
            .map(|x| x.rem_euclid(order.max(1) as i64))
            .collect();
        w.sort_unstable();
        TorusWeights { weights: w, order }
    }

    /// As given, without canonicalization.
    pub fn raw(weights: &[i64], order: u32) -> Self {
        TorusWeights {
            weights: weights.to_vec(),
            order,
        }
    }
}

impl fmt::Display for TorusWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "({}) mod {}", parts.join(","), self.order)
    }
}

/// `Ad` of the torus element, with its true order (which divides `w.order`).
pub fn inner_automorphism_from_torus<S: Scalar>(
    entry: &CatalogEntry<S>,
    w: &TorusWeights,
) -> Result<FiniteOrderAutomorphism<S>> {
    if w.order > MAX_ORDER {
        return Err(Error::OutOfRange {
            what: "order",
            value: w.order as i64,
        });
    }
    if w.order < 2 {
        return Err(Error::WrongOrder {
            claimed: w.order,
            actual: Some(1),
        });
    }
    let g = entry.torus_element(w)?;
    let m = entry.unitary_adjoint(&g)?;
    match minimal_order(&m, w.order) {
        Some(d) if d >= 2 => make_automorphism(entry.algebra.clone(), m, d),
        actual => Err(Error::WrongOrder {
            claimed: w.order,
            actual,
        }),
    }
}

/// `copies` copies of the entry's algebra with the cyclic shift
/// `e_i^{(r)} ↦ e_i^{(r+1)}`.
pub fn permutation_automorphism<S: Scalar>(
    entry: &CatalogEntry<S>,
    copies: usize,
) -> Result<(Arc<LieAlgebra<S>>, FiniteOrderAutomorphism<S>)> {
    if copies < 2 || copies > MAX_ORDER as usize {
        return Err(Error::OutOfRange {
            what: "copies",
            value: copies as i64,
        });
    }
    let parts: Vec<&LieAlgebra<S>> = vec![entry.algebra.as_ref(); copies];
    let sum = Arc::new(LieAlgebra::direct_sum(&parts));
    let d = entry.dim();
    let n = d * copies;
    let m = Matrix::from_fn(n, n, |r, c| {
        let (rc, ri) = (r / d, r % d);
        let (cc, ci) = (c / d, c % d);
        if ri == ci && rc == (cc + 1) % copies {
            S::one()
        } else {
            S::zero()
        }
    });
    let nu = make_automorphism(sum.clone(), m, copies as u32)?;
    Ok((sum, nu))
}

/// Weight multisets in `0..order` of the given length, ascending.
fn weight_multisets(len: usize, order: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut w = vec![0i64; len];
    loop {
        out.push(w.clone());
        let Some(i) = (0..len).rev().find(|&i| w[i] < order - 1) else {
            return out;
        };
        let v = w[i] + 1;
        for x in &mut w[i..] {
            *x = v;
        }
    }
}

/// Every order-3 torus automorphism (one per weight multiset, starting at 0
/// for su(n)) and every standard involution, with a label.
pub fn standard_pairs<S: Scalar>(
    entry: &CatalogEntry<S>,
) -> Result<Vec<(String, FiniteOrderAutomorphism<S>)>> {
    let mut out = Vec::new();
    for w in weight_multisets(entry.series.weight_count(entry.n), 3) {
        if entry.series == Series::Su && w[0] != 0 {
            continue;
        }
        let tw = TorusWeights::raw(&w, 3);
        match inner_automorphism_from_torus(entry, &tw) {
            Ok(nu) if nu.order() == 3 => out.push((format!("Ad(torus {})", tw), nu)),
            Ok(_) | Err(Error::WrongOrder { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    for inv in entry.standard_involutions()? {
        out.push((
            inv.name,
            make_automorphism(entry.algebra.clone(), inv.matrix, 2)?,
        ));
    }
    Ok(out)
}

/// Listing data for one catalog algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogSummary {
    pub name: String,
    pub short_name: String,
    pub dim: usize,
    pub simple: bool,
    pub involutions: Vec<String>,
}

pub fn summary<S: Scalar>(entry: &CatalogEntry<S>) -> Result<CatalogSummary> {
    Ok(CatalogSummary {
        name: entry.name.clone(),
        short_name: entry.short_name(),
        dim: entry.dim(),
        simple: entry.simple,
        involutions: entry
            .standard_involutions()?
            .into_iter()
            .map(|i| i.name)
            .collect(),
    })
}

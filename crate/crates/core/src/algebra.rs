//! Finite-dimensional Lie algebras given by structure constants.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{
    axpy, is_zero_vec, vec_magnitude, Matrix, SparseEchelon, Subspace, DEFAULT_TOL,
};
use crate::scalar::{negligible, Field, Scalar};

/// Declared symmetry of a [`BilinearForm`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

/// A bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm<S> {
    matrix: Matrix<S>,
    symmetry: Symmetry,
}

impl<S: Scalar> BilinearForm<S> {
    /// Checks the declared symmetry exactly (exact scalars) or within `tol`.
    pub fn new(matrix: Matrix<S>, symmetry: Symmetry, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        let ok = match symmetry {
            Symmetry::Symmetric => matrix.is_symmetric(tol),
            Symmetry::Antisymmetric => matrix.is_antisymmetric(tol),
        };
        if !ok {
            return Err(Error::invariant(format!("matrix is not {:?}", symmetry)));
        }
        Ok(BilinearForm { matrix, symmetry })
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn eval(&self, x: &[S], y: &[S]) -> Result<S> {
        let my = self.matrix.mul_vec(y)?;
        if x.len() != my.len() {
            return Err(Error::Dimension {
                expected: my.len(),
                found: x.len(),
            });
        }
        Ok(crate::linalg::dot(x, &my))
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.matrix.rank(tol)
    }

    pub fn is_nondegenerate(&self, tol: f64) -> bool {
        self.rank(tol) == self.dim()
    }
}

/// Gram matrix of `form` on the basis of `sub`.
pub fn restriction_of_form<S: Scalar>(
    form: &BilinearForm<S>,
    sub: &Subspace<S>,
) -> Result<BilinearForm<S>> {
    if sub.parent_dim() != form.dim() {
        return Err(Error::Dimension {
            expected: form.dim(),
            found: sub.parent_dim(),
        });
    }
    let b = sub.basis_matrix();
    let gram = b.transpose().mul(form.matrix())?.mul(&b)?;
    BilinearForm::new(gram, form.symmetry, sub.tol())
}

type SparseVec<S> = Vec<(usize, S)>;

/// A Lie algebra `g` with basis `e_1..e_n`; `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
///
/// Construction validates antisymmetry and the Jacobi identity, and computes
/// the Killing form once.
#[derive(Clone, Debug)]
pub struct LieAlgebra<S> {
    dim: usize,
    labels: Vec<String>,
    // sparse bracket table indexed by i * dim + j
    table: Vec<SparseVec<S>>,
    killing: Matrix<S>,
    tol: f64,
    complex_structure: Option<Matrix<S>>,
}

impl<S: Scalar> LieAlgebra<S> {
    /// Builds from a dense tensor `c[i][j][k]`.
    pub fn new(labels: Vec<String>, c: &[Vec<Vec<S>>]) -> Result<Self> {
        let n = labels.len();
        if c.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: c.len(),
            });
        }
        for row in c {
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: row.len(),
                });
            }
            if let Some(v) = row.iter().find(|v| v.len() != n) {
                return Err(Error::Dimension {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        Self::from_bracket_fn(labels, DEFAULT_TOL, |i, j| c[i][j].clone())
    }

    /// Builds from a function returning `[e_i, e_j]` as a dense vector. The
    /// function is evaluated for every ordered pair so antisymmetry is
    /// checked, not assumed.
    pub fn from_bracket_fn(
        labels: Vec<String>,
        tol: f64,
        mut bracket: impl FnMut(usize, usize) -> Vec<S>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = bracket(i, j);
                if v.len() != n {
                    return Err(Error::Dimension {
                        expected: n,
                        found: v.len(),
                    });
                }
                table.push(
                    v.into_iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .collect(),
                );
            }
        }
        let alg = Self::from_table(labels, table, tol);
        alg.check_antisymmetry()?;
        alg.check_jacobi()?;
        Ok(alg)
    }

    fn from_table(labels: Vec<String>, table: Vec<SparseVec<S>>, tol: f64) -> Self {
        let dim = labels.len();
        let mut alg = LieAlgebra {
            dim,
            labels,
            table,
            killing: Matrix::zeros(0, 0),
            tol,
            complex_structure: None,
        };
        alg.killing = alg.compute_killing();
        alg
    }

    /// Abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Self {
        let labels = (1..=dim).map(|i| format!("t{}", i)).collect();
        Self::from_table(labels, vec![Vec::new(); dim * dim], DEFAULT_TOL)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Multiplication-by-i operator, present on realified complex algebras.
    pub fn complex_structure(&self) -> Option<&Matrix<S>> {
        self.complex_structure.as_ref()
    }

    pub(crate) fn set_complex_structure(&mut self, j: Matrix<S>) {
        self.complex_structure = Some(j);
    }

    /// Smallest field containing every structure constant.
    pub fn field(&self) -> Field {
        self.table
            .iter()
            .flat_map(|v| v.iter().map(|(_, x)| x.field()))
            .fold(
                if S::EXACT {
                    Field::Rational
                } else {
                    Field::RealFloat
                },
                Field::join,
            )
    }

    /// `[e_i, e_j]` as sparse (index, coefficient) pairs.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.table[i * self.dim + j]
    }

    /// Coefficient `c[i][j][k]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> S {
        self.basis_bracket(i, j)
            .iter()
            .find(|(idx, _)| *idx == k)
            .map_or_else(S::zero, |(_, v)| v.clone())
    }

    pub fn structure_constants(&self) -> Vec<Vec<Vec<S>>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        (0..self.dim)
                            .map(|k| self.structure_constant(i, j, k))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    fn check_len(&self, v: &[S]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `[x, y] = Σ x_i y_j [e_i, e_j]`.
    pub fn bracket(&self, x: &[S], y: &[S]) -> Result<Vec<S>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let f = xi.clone() * yj;
                for (k, c) in self.basis_bracket(i, j) {
                    out[*k] = core::mem::replace(&mut out[*k], S::zero()) + &(f.clone() * c);
                }
            }
        }
        out
    }

    /// `[e_i, y]`.
    pub(crate) fn bracket_basis_left(&self, i: usize, y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (k, c) in self.basis_bracket(i, j) {
                out[*k] = core::mem::replace(&mut out[*k], S::zero()) + &(yj.clone() * c);
            }
        }
        out
    }

    /// Matrix of `ad x`; column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &[S]) -> Result<Matrix<S>> {
        self.check_len(x)?;
        let mut m: Matrix<S> = Matrix::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for j in 0..self.dim {
                for (k, c) in self.basis_bracket(i, j) {
                    m[(*k, j)] = m[(*k, j)].clone() + &(xi.clone() * c);
                }
            }
        }
        Ok(m)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix<S> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for (k, c) in self.basis_bracket(i, j) {
                m[(*k, j)] = c.clone();
            }
        }
        m
    }

    /// Scale for float comparisons: the largest structure constant.
    pub(crate) fn scale(&self) -> f64 {
        self.table
            .iter()
            .flat_map(|v| v.iter().map(|(_, x)| x.magnitude()))
            .fold(1.0, f64::max)
    }

    pub fn check_antisymmetry(&self) -> Result<()> {
        let scale = self.scale();
        for i in 0..self.dim {
            for j in i..self.dim {
                let mut sum = vec![S::zero(); self.dim];
                for (k, c) in self
                    .basis_bracket(i, j)
                    .iter()
                    .chain(self.basis_bracket(j, i))
                {
                    sum[*k] = sum[*k].clone() + c;
                }
                if let Some(k) = sum.iter().position(|x| !negligible(x, scale, self.tol)) {
                    return Err(Error::NotLieAlgebra {
                        reason: "antisymmetry",
                        indices: [i, j, k, k],
                    });
                }
            }
        }
        Ok(())
    }

    /// `[[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j] = 0` for `i<j<l`
    /// (enough, given antisymmetry).
    pub fn check_jacobi(&self) -> Result<()> {
        let scale = self.scale();
        let scale = scale * scale;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for l in j + 1..self.dim {
                    let mut acc = vec![S::zero(); self.dim];
                    for (a, b, c) in [(i, j, l), (j, l, i), (l, i, j)] {
                        for (m, coeff) in self.basis_bracket(a, b) {
                            for (k, c2) in self.basis_bracket(*m, c) {
                                acc[*k] = acc[*k].clone() + &(coeff.clone() * c2);
                            }
                        }
                    }
                    if let Some(k) = acc.iter().position(|x| !negligible(x, scale, self.tol)) {
                        return Err(Error::NotLieAlgebra {
                            reason: "Jacobi identity",
                            indices: [i, j, l, k],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_killing(&self) -> Matrix<S> {
        let n = self.dim;
        let mut b = Matrix::zeros(n, n);
        // B_ij = Σ_{k,l} c[i][k][l] c[j][l][k]
        for i in 0..n {
            for j in i..n {
                let mut acc = S::zero();
                for k in 0..n {
                    for (l, c1) in self.basis_bracket(i, k) {
                        for (kk, c2) in self.basis_bracket(j, *l) {
                            if *kk == k {
                                acc = acc + &(c1.clone() * c2);
                            }
                        }
                    }
                }
                b[(i, j)] = acc.clone();
                b[(j, i)] = acc;
            }
        }
        b
    }

    /// `B(x, y) = tr(ad x ∘ ad y)` on the basis.
    pub fn killing_form(&self) -> BilinearForm<S> {
        BilinearForm {
            matrix: self.killing.clone(),
            symmetry: Symmetry::Symmetric,
        }
    }

    pub fn killing_matrix(&self) -> &Matrix<S> {
        &self.killing
    }

    /// `B([e_i, e_j], e_k) = B(e_i, [e_j, e_k])` on all basis triples.
    pub fn check_killing_invariance(&self) -> Result<()> {
        let n = self.dim;
        let scale = self.killing.max_magnitude().max(1.0) * self.scale();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut lhs = S::zero();
                    for (m, c) in self.basis_bracket(i, j) {
                        lhs = lhs + &(c.clone() * &self.killing[(*m, k)]);
                    }
                    let mut rhs = S::zero();
                    for (m, c) in self.basis_bracket(j, k) {
                        rhs = rhs + &(c.clone() * &self.killing[(i, *m)]);
                    }
                    if !negligible(&(lhs - &rhs), scale, self.tol) {
                        return Err(Error::invariant(format!(
                            "Killing form not ad-invariant at ({}, {}, {})",
                            i, j, k
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `{x : [x, y] = 0 for all y}`: kernel of the stacked operator
    /// `x ↦ ([x, e_1], …, [x, e_n])`.
    pub fn center(&self) -> Subspace<S> {
        let n = self.dim;
        let mut se = SparseEchelon::new(n, self.tol, self.scale());
        // row (j, k): Σ_i x_i c[i][j][k] = 0
        'outer: for j in 0..n {
            let mut rows: Vec<Vec<(usize, S)>> = vec![Vec::new(); n];
            for i in 0..n {
                for (k, c) in self.basis_bracket(i, j) {
                    rows[*k].push((i, c.clone()));
                }
            }
            for r in rows.into_iter().filter(|r| !r.is_empty()) {
                se.insert(r);
                if se.rank() == n {
                    break 'outer;
                }
            }
        }
        Subspace::span(n, &se.kernel(), self.tol).expect("kernel vectors have length dim")
    }

    /// Structure constants of `g` restricted to `sub`, in `sub`'s RREF basis.
    pub fn subalgebra(&self, sub: &Subspace<S>) -> Result<LieAlgebra<S>> {
        if sub.parent_dim() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: sub.parent_dim(),
            });
        }
        let d = sub.dim();
        let basis = sub.basis();
        let mut table = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                let v = self.bracket_unchecked(&basis[a], &basis[b]);
                let coords = sub
                    .coordinates(&v)
                    .ok_or(Error::NotClosed { left: a, right: b })?;
                table.push(
                    coords
                        .into_iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .collect(),
                );
            }
        }
        let labels = sub
            .pivots()
            .iter()
            .map(|&p| self.labels[p].clone())
            .collect();
        Ok(Self::from_table(labels, table, self.tol))
    }

    pub fn is_semisimple(&self) -> bool {
        self.killing.rank(self.tol) == self.dim
    }

    /// `[g, sub] ⊆ sub`.
    pub fn is_ideal(&self, sub: &Subspace<S>) -> bool {
        if sub.parent_dim() != self.dim {
            return false;
        }
        sub.basis()
            .iter()
            .all(|v| (0..self.dim).all(|i| sub.contains(&self.bracket_basis_left(i, v))))
    }

    /// Simple: semisimple and the centroid (the commutant of `ad g`) is a
    /// field, i.e. ℝ or ℂ. A semisimple algebra with `r` simple ideals has a
    /// centroid that is a product of `r` fields, so anything else splits.
    pub fn is_simple(&self) -> Result<bool> {
        if self.dim == 0 || !self.is_semisimple() {
            return Ok(false);
        }
        let n = self.dim;
        let unknowns = n * n;
        let mut se = SparseEchelon::new(unknowns, self.tol, self.scale());
        // T·ad_j − ad_j·T = 0 for each basis e_j; T is vectorized row-major
        'outer: for j in 0..n {
            let ad = self.ad_basis(j);
            for a in 0..n {
                for b in 0..n {
                    let mut eq = Vec::new();
                    for c in 0..n {
                        if !ad[(c, b)].is_zero() {
                            eq.push((a * n + c, ad[(c, b)].clone()));
                        }
                        if !ad[(a, c)].is_zero() {
                            eq.push((c * n + b, -ad[(a, c)].clone()));
                        }
                    }
                    if eq.is_empty() {
                        continue;
                    }
                    se.insert(eq);
                    if se.rank() + 1 == unknowns {
                        break 'outer;
                    }
                }
            }
        }
        let kernel = se.kernel();
        match kernel.len() {
            1 => Ok(true),
            2 => centroid_is_field(n, &kernel, self.tol),
            _ => Ok(false),
        }
    }

    /// Direct sum; labels get a `[r]` suffix for the r-th summand.
    pub fn direct_sum(parts: &[&LieAlgebra<S>]) -> LieAlgebra<S> {
        let dim: usize = parts.iter().map(|p| p.dim).sum();
        let mut labels = Vec::with_capacity(dim);
        let mut offsets = Vec::with_capacity(parts.len());
        let mut off = 0;
        for (r, p) in parts.iter().enumerate() {
            offsets.push(off);
            labels.extend(p.labels.iter().map(|l| format!("{}[{}]", l, r + 1)));
            off += p.dim;
        }
        let mut table = vec![Vec::new(); dim * dim];
        for (p, &o) in parts.iter().zip(&offsets) {
            for i in 0..p.dim {
                for j in 0..p.dim {
                    table[(o + i) * dim + o + j] = p
                        .basis_bracket(i, j)
                        .iter()
                        .map(|(k, c)| (o + k, c.clone()))
                        .collect();
                }
            }
        }
        let tol = parts.iter().map(|p| p.tol).fold(DEFAULT_TOL, f64::max);
        Self::from_table(labels, table, tol)
    }

    /// Builds an algebra from a sparse bracket table without re-running the
    /// Jacobi check; callers must validate.
    pub(crate) fn from_sparse_unchecked(
        labels: Vec<String>,
        table: Vec<SparseVec<S>>,
        tol: f64,
    ) -> Self {
        Self::from_table(labels, table, tol)
    }

    /// Whether the vectors in `x` all commute with each other and `y`.
    pub(crate) fn brackets_vanish(&self, x: &[S], ys: &[Vec<S>]) -> bool {
        let scale = vec_magnitude(x).max(1.0) * self.scale();
        ys.iter()
            .all(|y| is_zero_vec(&self.bracket_unchecked(x, y), scale, self.tol))
    }
}

/// For a two-dimensional centroid spanned by `I` and `T`: field iff the
/// minimal polynomial `t² − βt − α` of `T` has no real root.
fn centroid_is_field<S: Scalar>(n: usize, kernel: &[Vec<S>], tol: f64) -> Result<bool> {
    let as_matrix = |v: &Vec<S>| Matrix::from_fn(n, n, |r, c| v[r * n + c].clone());
    let id = Matrix::<S>::identity(n);
    let candidates: Vec<Matrix<S>> = kernel.iter().map(as_matrix).collect();
    // T' = K − K[0][0]·I has a vanishing (0,0) entry; pick a non-scalar one
    let t = candidates
        .iter()
        .map(|k| k.sub(&id.scale(&k[(0, 0)])).expect("square"))
        .find(|t| !t.is_zero_within(t.max_magnitude().max(1.0), tol))
        .ok_or_else(|| Error::invariant("centroid basis is degenerate"))?;
    let t2 = t.mul(&t)?;
    let alpha = t2[(0, 0)].clone();
    let scale = t.max_magnitude().max(1.0);
    let (r, c) = (0..n * n)
        .map(|idx| (idx / n, idx % n))
        .max_by(|a, b| {
            t[*a]
                .magnitude()
                .partial_cmp(&t[*b].magnitude())
                .unwrap_or(core::cmp::Ordering::Equal)
        })
        .filter(|p| !negligible(&t[*p], scale, tol))
        .ok_or_else(|| Error::invariant("centroid element vanishes"))?;
    let delta = if r == c { alpha.clone() } else { S::zero() };
    let beta = (t2[(r, c)].clone() - &delta) / &t[(r, c)];
    let reconstructed = id.scale(&alpha).add(&t.scale(&beta))?;
    if !t2.approx_eq(&reconstructed, tol.max(1e-12)) {
        return Err(Error::invariant(
            "centroid is not closed under multiplication",
        ));
    }
    let disc = beta.clone() * &beta + &(S::from_i64(4) * &alpha);
    Ok(disc.sign() == core::cmp::Ordering::Less && !negligible(&disc, scale * scale, tol))
}

/// `Σ_i coeffs_i · vectors_i`.
pub fn linear_combination<S: Scalar>(dim: usize, coeffs: &[S], vectors: &[Vec<S>]) -> Vec<S> {
    let mut v = vec![S::zero(); dim];
    for (c, x) in coeffs.iter().zip(vectors) {
        axpy(&mut v, c, x);
    }
    v
}

pub fn unit_vector<S: Scalar>(dim: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); dim];
    v[i] = S::one();
    v
}

//! Dense matrices, rank-revealing elimination and subspaces.
//!
//! Exact scalars are eliminated without tolerances. Floats use column-pivoted
//! elimination where an entry counts as zero below `tol` times the largest
//! entry of the input.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::{negligible, Scalar};

/// Default relative tolerance for floating-point paths.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.data[r * self.cols + c]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        &mut self.data[r * self.cols + c]
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.clone() * b;
                    let slot = &mut out[(r, c)];
                    *slot = core::mem::replace(slot, S::zero()) + &prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>> {
        if self.cols != v.len() {
            return Err(Error::Dimension {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = S::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + &(a.clone() * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        })
    }

    pub fn scale(&self, s: &S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * s).collect(),
        }
    }

    pub fn neg(&self) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }

    fn check_same_shape(&self, other: &Matrix<S>) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::Dimension {
                expected: self.rows,
                found: other.rows,
            });
        }
        if self.cols != other.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                found: other.cols,
            });
        }
        Ok(())
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(|x| x.magnitude()).fold(0.0, f64::max)
    }

    /// Every entry negligible relative to `scale`.
    pub fn is_zero_within(&self, scale: f64, tol: f64) -> bool {
        self.data.iter().all(|x| negligible(x, scale, tol))
    }

    /// Entrywise comparison: exact for exact scalars, otherwise within
    /// `tol` relative to the larger operand (absolute when both are tiny).
    pub fn approx_eq(&self, other: &Matrix<S>, tol: f64) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        if S::EXACT {
            return self == other;
        }
        let scale = self.max_magnitude().max(other.max_magnitude()).max(1.0);
        self.data
            .iter()
            .zip(&other.data)
            .all(|(a, b)| negligible(&(a.clone() - b), scale, tol))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.is_square() && self.approx_eq(&self.transpose(), tol)
    }

    pub fn is_antisymmetric(&self, tol: f64) -> bool {
        self.is_square() && self.approx_eq(&self.transpose().neg(), tol)
    }

    pub fn trace(&self) -> S {
        let mut acc = S::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc + &self[(i, i)];
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Result<Matrix<S>> {
        if !self.is_square() {
            return Err(Error::Dimension {
                expected: self.rows,
                found: self.cols,
            });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn block_diag(blocks: &[&Matrix<S>]) -> Matrix<S> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out[(r0 + r, c0 + c)] = b[(r, c)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Reduced row-echelon form with pivot columns.
    pub fn rref(&self, tol: f64) -> Rref<S> {
        let scale = self.max_magnitude();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = pick_pivot(&m, row, col, scale, tol) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = S::one() / &m[(row, col)];
            for c in col..m.cols {
                let v = core::mem::replace(&mut m[(row, c)], S::zero());
                m[(row, c)] = v * &inv;
            }
            m[(row, col)] = S::one();
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(row, c)].is_zero() {
                        continue;
                    }
                    let d = f.clone() * &m[(row, c)];
                    let v = core::mem::replace(&mut m[(r, c)], S::zero());
                    m[(r, c)] = v - &d;
                }
                m[(r, col)] = S::zero();
            }
            pivots.push(col);
            row += 1;
        }
        if !S::EXACT {
            // flush the residue of eliminated entries
            for x in m.data.iter_mut() {
                if negligible(x, 1.0, tol) {
                    *x = S::zero();
                }
            }
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Rank. Exact scalars use fraction-free (Bareiss) elimination; floats use
    /// column-pivoted elimination with threshold `tol · max|entry|`.
    pub fn rank(&self, tol: f64) -> usize {
        if S::EXACT {
            self.rank_bareiss()
        } else {
            self.rref(tol).pivots.len()
        }
    }

    fn rank_bareiss(&self) -> usize {
        let mut m = self.clone();
        let mut prev = S::one();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let pivot = m[(rank, col)].clone();
            for r in rank + 1..m.rows {
                let lead = m[(r, col)].clone();
                for c in col + 1..m.cols {
                    let v = pivot.clone() * &m[(r, c)] - &(lead.clone() * &m[(rank, c)]);
                    m[(r, c)] = v / &prev;
                }
                m[(r, col)] = S::zero();
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    /// Basis of the null space `{x : Mx = 0}`.
    pub fn kernel(&self, tol: f64) -> Vec<Vec<S>> {
        let Rref { matrix, pivots } = self.rref(tol);
        let mut is_pivot = vec![None; self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -matrix[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self, tol: f64) -> Result<Matrix<S>> {
        if !self.is_square() {
            return Err(Error::Dimension {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                S::one()
            } else {
                S::zero()
            }
        });
        let Rref { matrix, pivots } = aug.rref(tol);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::NotInSpan);
        }
        Ok(Self::from_fn(n, n, |r, c| matrix[(r, n + c)].clone()))
    }

    /// Inertia of a symmetric matrix via symmetric congruence elimination.
    pub fn inertia(&self, tol: f64) -> Inertia {
        assert!(self.is_square(), "inertia of a non-square matrix");
        let n = self.rows;
        let scale = self.max_magnitude();
        let mut a = self.clone();
        let mut out = Inertia::default();
        let mut k = 0;
        while k < n {
            let diag = pick_diagonal(&a, k, scale, tol);
            let p = match diag {
                Some(p) => p,
                None => {
                    // all remaining diagonal entries vanish: use an off-diagonal
                    // entry (i, j) and replace row/column i by i + j
                    let mut found = None;
                    'search: for i in k..n {
                        for j in i + 1..n {
                            if !negligible(&a[(i, j)], scale, tol) {
                                found = Some((i, j));
                                break 'search;
                            }
                        }
                    }
                    let Some((i, j)) = found else {
                        out.zero += n - k;
                        break;
                    };
                    for c in 0..n {
                        let v = a[(j, c)].clone();
                        a[(i, c)] = a[(i, c)].clone() + &v;
                    }
                    for r in 0..n {
                        let v = a[(r, j)].clone();
                        a[(r, i)] = a[(r, i)].clone() + &v;
                    }
                    i
                }
            };
            a.swap_rows(k, p);
            a.swap_cols(k, p);
            let pivot = a[(k, k)].clone();
            match pivot.sign() {
                Ordering::Greater => out.positive += 1,
                Ordering::Less => out.negative += 1,
                Ordering::Equal => unreachable!("zero pivot after selection"),
            }
            for r in k + 1..n {
                if a[(r, k)].is_zero() {
                    continue;
                }
                let f = a[(r, k)].clone() / &pivot;
                for c in k..n {
                    let d = f.clone() * &a[(k, c)];
                    a[(r, c)] = a[(r, c)].clone() - &d;
                }
                for rr in k..n {
                    let d = f.clone() * &a[(rr, k)];
                    a[(rr, r)] = a[(rr, r)].clone() - &d;
                }
            }
            k += 1;
        }
        out
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }
}

fn pick_pivot<S: Scalar>(
    m: &Matrix<S>,
    from: usize,
    col: usize,
    scale: f64,
    tol: f64,
) -> Option<usize> {
    if S::EXACT {
        (from..m.rows).find(|&r| !m[(r, col)].is_zero())
    } else {
        let (best, mag) = (from..m.rows)
            .map(|r| (r, m[(r, col)].magnitude()))
            .fold((from, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        (mag > tol * scale.max(f64::MIN_POSITIVE)).then_some(best)
    }
}

fn pick_diagonal<S: Scalar>(a: &Matrix<S>, from: usize, scale: f64, tol: f64) -> Option<usize> {
    if S::EXACT {
        (from..a.rows).find(|&i| !a[(i, i)].is_zero())
    } else {
        let (best, mag) = (from..a.rows)
            .map(|i| (i, a[(i, i)].magnitude()))
            .fold((from, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        (mag > tol * scale.max(f64::MIN_POSITIVE)).then_some(best)
    }
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref<S> {
    pub matrix: Matrix<S>,
    pub pivots: Vec<usize>,
}

/// Signature counts of a symmetric matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn is_negative_definite(&self) -> bool {
        self.positive == 0 && self.zero == 0
    }

    pub fn is_positive_definite(&self) -> bool {
        self.negative == 0 && self.zero == 0
    }
}

pub fn dot<S: Scalar>(x: &[S], y: &[S]) -> S {
    let mut acc = S::zero();
    for (a, b) in x.iter().zip(y) {
        if !a.is_zero() && !b.is_zero() {
            acc = acc + &(a.clone() * b);
        }
    }
    acc
}

pub fn axpy<S: Scalar>(acc: &mut [S], a: &S, x: &[S]) {
    if a.is_zero() {
        return;
    }
    for (slot, xi) in acc.iter_mut().zip(x) {
        if !xi.is_zero() {
            *slot = core::mem::replace(slot, S::zero()) + &(a.clone() * xi);
        }
    }
}

pub fn is_zero_vec<S: Scalar>(v: &[S], scale: f64, tol: f64) -> bool {
    v.iter().all(|x| negligible(x, scale, tol))
}

pub fn vec_magnitude<S: Scalar>(v: &[S]) -> f64 {
    v.iter().map(|x| x.magnitude()).fold(0.0, f64::max)
}

/// A linear subspace of `S^n`, stored as a reduced row-echelon basis so that
/// equal subspaces have identical bases.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<S> {
    parent_dim: usize,
    basis: Vec<Vec<S>>,
    pivots: Vec<usize>,
    tol: f64,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(parent_dim: usize) -> Self {
        Subspace {
            parent_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
            tol: DEFAULT_TOL,
        }
    }

    pub fn full(parent_dim: usize) -> Self {
        let id = Matrix::<S>::identity(parent_dim);
        Subspace {
            parent_dim,
            basis: id.to_rows(),
            pivots: (0..parent_dim).collect(),
            tol: DEFAULT_TOL,
        }
    }

    /// Span of `vectors`, canonicalized to RREF. Fails if a vector has the
    /// wrong length.
    pub fn span(parent_dim: usize, vectors: &[Vec<S>], tol: f64) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != parent_dim) {
            return Err(Error::Dimension {
                expected: parent_dim,
                found: v.len(),
            });
        }
        if vectors.is_empty() {
            return Ok(Subspace {
                tol,
                ..Self::zero(parent_dim)
            });
        }
        let Rref { matrix, pivots } = Matrix::from_rows(vectors).rref(tol);
        let basis = (0..pivots.len()).map(|r| matrix.row(r).to_vec()).collect();
        Ok(Subspace {
            parent_dim,
            basis,
            pivots,
            tol,
        })
    }

    /// Span of vectors already known to be independent; still canonicalized.
    pub fn from_basis(parent_dim: usize, vectors: &[Vec<S>], tol: f64) -> Result<Self> {
        let s = Self::span(parent_dim, vectors, tol)?;
        if s.dim() != vectors.len() {
            return Err(Error::Precondition(
                "basis vectors are linearly dependent".into(),
            ));
        }
        Ok(s)
    }

    /// Null space of `m` as a subspace of `S^{m.cols}`.
    pub fn kernel_of(m: &Matrix<S>, tol: f64) -> Self {
        let k = m.kernel(tol);
        Self::span(m.cols(), &k, tol).expect("kernel vectors have matching length")
    }

    /// Column space of `m` as a subspace of `S^{m.rows}`.
    pub fn image_of(m: &Matrix<S>, tol: f64) -> Self {
        let cols: Vec<Vec<S>> = (0..m.cols()).map(|c| m.column(c)).collect();
        Self::span(m.rows(), &cols, tol).expect("columns have matching length")
    }

    pub fn parent_dim(&self) -> usize {
        self.parent_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Component of `v` left after eliminating the pivot coordinates; zero
    /// iff `v` lies in the subspace. Linear in `v`.
    pub fn residual(&self, v: &[S]) -> Vec<S> {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if c.is_zero() {
                continue;
            }
            axpy(&mut r, &-c, row);
        }
        r
    }

    pub fn contains(&self, v: &[S]) -> bool {
        if v.len() != self.parent_dim {
            return false;
        }
        let scale = vec_magnitude(v).max(1.0);
        is_zero_vec(&self.residual(v), scale, self.tol)
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        self.contains(v).then(|| self.coordinates_unchecked(v))
    }

    /// Coordinates assuming membership: the entries at the pivot columns.
    pub fn coordinates_unchecked(&self, v: &[S]) -> Vec<S> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// The vector with the given coordinates.
    pub fn combine(&self, coords: &[S]) -> Vec<S> {
        let mut v = vec![S::zero(); self.parent_dim];
        for (c, row) in coords.iter().zip(&self.basis) {
            axpy(&mut v, c, row);
        }
        v
    }

    pub fn contains_subspace(&self, other: &Subspace<S>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, other: &Subspace<S>) -> bool {
        self.parent_dim == other.parent_dim
            && self.dim() == other.dim()
            && self.contains_subspace(other)
    }

    pub fn sum(&self, other: &Subspace<S>) -> Result<Subspace<S>> {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::span(self.parent_dim, &all, self.tol)
    }

    pub fn intersection(&self, other: &Subspace<S>) -> Result<Subspace<S>> {
        if self.parent_dim != other.parent_dim {
            return Err(Error::Dimension {
                expected: self.parent_dim,
                found: other.parent_dim,
            });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace {
                tol: self.tol,
                ..Self::zero(self.parent_dim)
            });
        }
        // x = Σ a_i u_i lies in `other` iff Σ a_i residual(u_i) = 0
        let residuals: Vec<Vec<S>> = self.basis.iter().map(|u| other.residual(u)).collect();
        let system = Matrix::from_columns(self.parent_dim, &residuals);
        let combos = system.kernel(self.tol);
        let vecs: Vec<Vec<S>> = combos.iter().map(|a| self.combine(a)).collect();
        Self::span(self.parent_dim, &vecs, self.tol)
    }

    /// Image of the subspace under `m`.
    pub fn map(&self, m: &Matrix<S>) -> Result<Subspace<S>> {
        let imgs: Result<Vec<Vec<S>>> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Self::span(m.rows(), &imgs?, self.tol)
    }

    /// Basis vectors as the columns of a `parent_dim × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix<S> {
        Matrix::from_columns(self.parent_dim, &self.basis)
    }

    /// Matrix of the endomorphism `t` restricted to this (assumed invariant)
    /// subspace, in RREF-basis coordinates.
    pub fn restrict(&self, t: &Matrix<S>) -> Result<Matrix<S>> {
        let cols: Result<Vec<Vec<S>>> = self
            .basis
            .iter()
            .map(|v| {
                let w = t.mul_vec(v)?;
                self.coordinates(&w).ok_or(Error::NotInSpan)
            })
            .collect();
        Ok(Matrix::from_columns(self.dim(), &cols?))
    }
}

/// Incremental sparse row-echelon form, for large sparse homogeneous systems.
pub(crate) struct SparseEchelon<S> {
    ncols: usize,
    rows: BTreeMap<usize, Vec<(usize, S)>>,
    tol: f64,
    scale: f64,
}

impl<S: Scalar> SparseEchelon<S> {
    pub(crate) fn new(ncols: usize, tol: f64, scale: f64) -> Self {
        SparseEchelon {
            ncols,
            rows: BTreeMap::new(),
            tol,
            scale,
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds an equation given as (column, coefficient) pairs. Returns whether
    /// the rank grew.
    pub(crate) fn insert(&mut self, entries: Vec<(usize, S)>) -> bool {
        let mut row: BTreeMap<usize, S> = BTreeMap::new();
        for (c, v) in entries {
            let slot = row.entry(c).or_insert_with(S::zero);
            *slot = core::mem::replace(slot, S::zero()) + &v;
        }
        loop {
            row.retain(|_, v| !negligible(v, self.scale, self.tol));
            let Some((&lead, _)) = row.iter().next() else {
                return false;
            };
            match self.rows.get(&lead) {
                Some(pivot_row) => {
                    let f = row[&lead].clone();
                    for (c, v) in pivot_row {
                        let slot = row.entry(*c).or_insert_with(S::zero);
                        *slot = core::mem::replace(slot, S::zero()) - &(f.clone() * v);
                    }
                    row.remove(&lead);
                }
                None => {
                    let inv = S::one() / &row[&lead];
                    let normalized: Vec<(usize, S)> =
                        row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
                    self.rows.insert(lead, normalized);
                    return true;
                }
            }
        }
    }

    /// Null-space basis by back substitution.
    pub(crate) fn kernel(&self) -> Vec<Vec<S>> {
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|c| !self.rows.contains_key(c)) {
            let mut x = vec![S::zero(); self.ncols];
            x[free] = S::one();
            for (&p, row) in self.rows.iter().rev() {
                let mut acc = S::zero();
                for (c, v) in row.iter().filter(|(c, _)| *c != p) {
                    if !x[*c].is_zero() {
                        acc = acc + &(v.clone() * &x[*c]);
                    }
                }
                x[p] = -acc;
            }
            basis.push(x);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    fn q(n: i64) -> Exact {
        Exact::from_i64(n)
    }

    fn m(rows: &[&[i64]]) -> Matrix<Exact> {
        Matrix::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rank_of_singular_matrix() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(a.rank(0.0), 2);
        assert_eq!(a.rref(0.0).pivots, vec![0, 1]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = a.kernel(0.0);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse(0.0).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse(0.0).is_err());
    }

    #[test]
    fn inertia_handles_zero_diagonal() {
        // hyperbolic plane ⊕ (−3)
        let a = m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -3]]);
        assert_eq!(
            a.inertia(0.0),
            Inertia {
                positive: 1,
                negative: 2,
                zero: 0
            }
        );
        let d = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(
            d.inertia(0.0),
            Inertia {
                positive: 1,
                negative: 0,
                zero: 1
            }
        );
    }

    #[test]
    fn subspace_intersection_and_sum() {
        let u = Subspace::span(3, &[vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]], 0.0).unwrap();
        let w = Subspace::span(3, &[vec![q(1), q(1), q(1)], vec![q(0), q(1), q(0)]], 0.0).unwrap();
        let i = u.intersection(&w).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[q(0), q(5), q(0)]));
        assert_eq!(u.sum(&w).unwrap().dim(), 3);
    }

    #[test]
    fn float_rank_respects_tolerance() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![1.0, 2.0 + 1e-13]]);
        assert_eq!(a.rank(1e-9), 1);
        assert_eq!(a.rank(1e-15), 2);
    }

    #[test]
    fn sparse_echelon_matches_dense_kernel() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let mut se = SparseEchelon::new(4, 0.0, 1.0);
        for r in 0..a.rows() {
            se.insert(a.row(r).iter().cloned().enumerate().collect());
        }
        assert_eq!(se.rank(), 2);
        let k = se.kernel();
        let dense = Subspace::span(4, &a.kernel(0.0), 0.0).unwrap();
        let sparse = Subspace::span(4, &k, 0.0).unwrap();
        assert_eq!(dense, sparse);
    }
}

//! Matrix Lie algebras with entries in `S + iS`, and the real structure
//! constants they induce.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, vec_magnitude, Matrix, DEFAULT_TOL};
use crate::scalar::Scalar;

/// Square complex matrix stored as real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<S> {
    pub re: Matrix<S>,
    pub im: Matrix<S>,
}

impl<S: Scalar> CMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            re: Matrix::zeros(n, n),
            im: Matrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        CMatrix {
            re: Matrix::identity(n),
            im: Matrix::zeros(n, n),
        }
    }

    pub fn real(re: Matrix<S>) -> Self {
        let n = re.rows();
        CMatrix {
            re,
            im: Matrix::zeros(n, n),
        }
    }

    pub fn size(&self) -> usize {
        self.re.rows()
    }

    pub fn set(&mut self, r: usize, c: usize, re: S, im: S) {
        self.re[(r, c)] = re;
        self.im[(r, c)] = im;
    }

    pub fn add(&self, o: &Self) -> Self {
        CMatrix {
            re: self.re.add(&o.re).expect("same size"),
            im: self.im.add(&o.im).expect("same size"),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        CMatrix {
            re: self.re.sub(&o.re).expect("same size"),
            im: self.im.sub(&o.im).expect("same size"),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let rr = self.re.mul(&o.re).expect("same size");
        let ii = self.im.mul(&o.im).expect("same size");
        let ri = self.re.mul(&o.im).expect("same size");
        let ir = self.im.mul(&o.re).expect("same size");
        CMatrix {
            re: rr.sub(&ii).expect("same size"),
            im: ri.add(&ir).expect("same size"),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        CMatrix {
            re: self.re.scale(s),
            im: self.im.scale(s),
        }
    }

    /// Multiplication by `i`.
    pub fn times_i(&self) -> Self {
        CMatrix {
            re: self.im.neg(),
            im: self.re.clone(),
        }
    }

    pub fn conj(&self) -> Self {
        CMatrix {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn transpose(&self) -> Self {
        CMatrix {
            re: self.re.transpose(),
            im: self.im.transpose(),
        }
    }

    pub fn adjoint(&self) -> Self {
        self.conj().transpose()
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// `(re entries, im entries)` flattened row-major.
    pub fn flatten(&self) -> Vec<S> {
        let n = self.size();
        let mut v = Vec::with_capacity(2 * n * n);
        for r in 0..n {
            v.extend_from_slice(self.re.row(r));
        }
        for r in 0..n {
            v.extend_from_slice(self.im.row(r));
        }
        v
    }

    /// `diag(e^{2πi w_1/k}, …)`; `None` if some entry is outside the field.
    pub fn diagonal_phases(weights: &[i64], k: i64) -> Option<Self> {
        let n = weights.len();
        let mut g = CMatrix::zeros(n);
        for (i, &w) in weights.iter().enumerate() {
            let (c, s) = S::cos_sin_turn(w, k)?;
            g.set(i, i, c, s);
        }
        Some(g)
    }

    /// Block-diagonal rotations by `2π w_j/k` on coordinate pairs `(2j, 2j+1)`,
    /// identity on a trailing odd coordinate.
    pub fn block_rotations(n: usize, weights: &[i64], k: i64) -> Option<Self> {
        let mut g = Matrix::identity(n);
        for (j, &w) in weights.iter().enumerate() {
            let (c, s) = S::cos_sin_turn(w, k)?;
            let (a, b) = (2 * j, 2 * j + 1);
            g[(a, a)] = c.clone();
            g[(b, b)] = c;
            g[(a, b)] = -s.clone();
            g[(b, a)] = s;
        }
        Some(CMatrix::real(g))
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        let n = self.size();
        self.re.approx_eq(&Matrix::identity(n), tol) && self.im.is_zero_within(1.0, tol)
    }
}

/// Solves `v = Σ c_i b_i` for a fixed independent family `b_i` of flattened
/// matrices: picks `d` pivot coordinates, inverts the `d × d` block once, and
/// checks the residual on every solve.
#[derive(Clone, Debug)]
pub struct CoordinateSolver<S> {
    basis: Vec<Vec<S>>,
    pivots: Vec<usize>,
    inverse: Matrix<S>,
    tol: f64,
}

impl<S: Scalar> CoordinateSolver<S> {
    pub fn new(basis: Vec<Vec<S>>, tol: f64) -> Result<Self> {
        let d = basis.len();
        let rref = Matrix::from_rows(&basis).rref(tol);
        if rref.pivots.len() != d {
            return Err(Error::Precondition(
                "matrix basis is linearly dependent".into(),
            ));
        }
        let pivots = rref.pivots;
        let block = Matrix::from_fn(d, d, |r, c| basis[c][pivots[r]].clone());
        let inverse = block.inverse(tol)?;
        Ok(CoordinateSolver {
            basis,
            pivots,
            inverse,
            tol,
        })
    }

    pub fn solve(&self, v: &[S]) -> Result<Vec<S>> {
        let rhs: Vec<S> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let coords = self.inverse.mul_vec(&rhs)?;
        let mut resid = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            for (r, x) in resid.iter_mut().zip(b) {
                *r = core::mem::replace(r, S::zero()) - &(c.clone() * x);
            }
        }
        if !is_zero_vec(&resid, vec_magnitude(v).max(1.0), self.tol) {
            return Err(Error::NotInSpan);
        }
        Ok(coords)
    }
}

/// A real Lie algebra given as a span of complex matrices closed under the
/// commutator.
#[derive(Clone, Debug)]
pub struct MatrixRealization<S> {
    basis: Vec<CMatrix<S>>,
    labels: Vec<String>,
    solver: CoordinateSolver<S>,
}

impl<S: Scalar> MatrixRealization<S> {
    pub fn new(labels: Vec<String>, basis: Vec<CMatrix<S>>) -> Result<Self> {
        if labels.len() != basis.len() {
            return Err(Error::Dimension {
                expected: basis.len(),
                found: labels.len(),
            });
        }
        let tol = if S::EXACT { 0.0 } else { DEFAULT_TOL };
        let solver = CoordinateSolver::new(basis.iter().map(CMatrix::flatten).collect(), tol)?;
        Ok(MatrixRealization {
            basis,
            labels,
            solver,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix_size(&self) -> usize {
        self.basis.first().map_or(0, CMatrix::size)
    }

    pub fn basis(&self) -> &[CMatrix<S>] {
        &self.basis
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn coordinates(&self, x: &CMatrix<S>) -> Result<Vec<S>> {
        self.solver.solve(&x.flatten())
    }

    pub fn element(&self, coords: &[S]) -> CMatrix<S> {
        let mut acc = CMatrix::zeros(self.matrix_size());
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    /// Structure constants from commutators; fails with `NotClosed` if a
    /// commutator leaves the span.
    pub fn algebra(&self) -> Result<LieAlgebra<S>> {
        let d = self.dim();
        let mut table: Vec<Vec<Vec<S>>> = vec![vec![Vec::new(); d]; d];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let c = self.basis[i].commutator(&self.basis[j]);
                *slot = self
                    .coordinates(&c)
                    .map_err(|_| Error::NotClosed { left: i, right: j })?;
            }
        }
        let tol = if S::EXACT { 0.0 } else { DEFAULT_TOL };
        LieAlgebra::from_bracket_fn(self.labels.clone(), tol, |i, j| table[i][j].clone())
    }

    /// Matrix of the linear map `X ↦ f(X)` in this basis.
    pub fn induced_matrix(&self, f: impl Fn(&CMatrix<S>) -> CMatrix<S>) -> Result<Matrix<S>> {
        let cols: Vec<Vec<S>> = self
            .basis
            .iter()
            .map(|b| self.coordinates(&f(b)))
            .collect::<Result<_>>()?;
        Ok(Matrix::from_columns(self.dim(), &cols))
    }

    /// Matrix of `Ad(g): X ↦ g X g⁻¹`.
    pub fn adjoint_action(&self, g: &CMatrix<S>, g_inv: &CMatrix<S>) -> Result<Matrix<S>> {
        let tol = if S::EXACT { 0.0 } else { DEFAULT_TOL };
        if !g.mul(g_inv).is_identity(tol) {
            return Err(Error::Precondition("g and g_inv are not inverse".into()));
        }
        self.induced_matrix(|x| g.mul(x).mul(g_inv))
    }
}

//! Exact dense linear algebra over a [`FieldContext`].
//!
//! Exports:
//! - [`ScalarMat`]: row-major matrix of [`Scalar`] entries with Gauss-Jordan
//!   reduction, kernel and row-space bases, exact solving, and matrix
//!   minimal polynomials.
//! - [`subspace_sum`] / [`subspace_intersection`] / [`subspace_contains`]:
//!   row-space lattice operations on canonical (RREF) bases.
//!
//! Matrices act on coordinate *columns*: the matrix of an operator has the
//! image of the j-th basis vector in column j.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::poly::Poly;
use crate::scalar::{FieldContext, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarMat {
    ctx: FieldContext,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Eq for ScalarMat {}

impl ScalarMat {
    pub fn zeros(ctx: &FieldContext, rows: usize, cols: usize) -> ScalarMat {
        ScalarMat {
            ctx: ctx.clone(),
            rows,
            cols,
            data: vec![Scalar::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: &FieldContext, n: usize) -> ScalarMat {
        let mut m = ScalarMat::zeros(ctx, n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one(ctx);
        }
        m
    }

    pub fn from_rows(ctx: &FieldContext, rows: Vec<Vec<Scalar>>) -> ScalarMat {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            for c in r {
                assert!(c.context() == ctx, "entry context mismatch");
                data.push(c.clone());
            }
        }
        ScalarMat { ctx: ctx.clone(), rows: rows.len(), cols: ncols, data }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Scalar>(
        ctx: &FieldContext,
        rows: usize,
        cols: usize,
        mut f: F,
    ) -> ScalarMat {
        let mut m = ScalarMat::zeros(ctx, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn context(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> ScalarMat {
        ScalarMat::from_fn(&self.ctx, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Scalar) -> ScalarMat {
        ScalarMat::from_fn(&self.ctx, self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    /// Row-major clone of all entries, for treating a matrix as a vector.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    /// Apply to a coordinate column: returns `self * v`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(&self.ctx);
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = &acc + &(&self[(i, j)] * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u64) -> ScalarMat {
        assert!(self.is_square());
        let mut acc = ScalarMat::identity(&self.ctx, self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate a polynomial at this (square) matrix by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> ScalarMat {
        assert!(self.is_square());
        assert!(p.context() == &self.ctx, "polynomial context mismatch");
        let n = self.rows;
        let mut acc = ScalarMat::zeros(&self.ctx, n, n);
        for c in p.coeffs().iter().rev() {
            acc = &acc * self;
            for i in 0..n {
                acc[(i, i)] = &acc[(i, i)] + c;
            }
        }
        acc
    }

    /// Reduced row echelon form and the pivot column list.
    pub fn rref(&self) -> (ScalarMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].inv().expect("pivot nonzero");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    for j in c..m.cols {
                        let t = &factor * &m[(r, j)];
                        m[(i, j)] = &m[(i, j)] - &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the row space: RREF rows without the zero rows.
    /// Two matrices have the same row space iff their `row_basis` outputs
    /// are identical.
    pub fn row_basis(&self) -> ScalarMat {
        let (r, pivots) = self.rref();
        if pivots.is_empty() {
            // Preserve the ambient width for the zero space.
            return ScalarMat::zeros(&self.ctx, 0, self.cols);
        }
        let rows: Vec<Vec<Scalar>> =
            (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        ScalarMat::from_rows(&self.ctx, rows)
    }

    /// Canonical basis (as rows) of the right kernel {v : self * v = 0}.
    pub fn kernel_basis(&self) -> ScalarMat {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (row_idx, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = Some(row_idx);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(&self.ctx); self.cols];
            v[free] = Scalar::one(&self.ctx);
            for (c, p) in pivot_of_col.iter().enumerate() {
                if let Some(row_idx) = p {
                    v[c] = -&r[(*row_idx, free)];
                }
            }
            basis.push(v);
        }
        ScalarMat::from_rows(&self.ctx, basis)
    }

    /// One exact solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let mut aug = ScalarMat::zeros(&self.ctx, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(&self.ctx); self.cols];
        for (row_idx, &c) in pivots.iter().enumerate() {
            x[c] = r[(row_idx, self.cols)].clone();
        }
        Some(x)
    }

    /// True when `v` lies in the row space.
    pub fn row_space_contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut stacked = self.clone();
        stacked.push_row(v.to_vec());
        stacked.rank() == self.rank()
    }

    /// Monic minimal polynomial of a square matrix.
    pub fn minimal_polynomial(&self) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Poly::one(&self.ctx);
        }
        let mut powers = vec![ScalarMat::identity(&self.ctx, n)];
        loop {
            let k = powers.len();
            let next = &powers[k - 1] * self;
            // Columns are the flattened lower powers.
            let m = ScalarMat::from_fn(&self.ctx, n * n, k, |i, j| {
                powers[j].data[i].clone()
            });
            if let Some(c) = m.solve(&next.flatten()) {
                let mut coeffs: Vec<Scalar> = c.iter().map(|s| -s).collect();
                coeffs.push(Scalar::one(&self.ctx));
                return Poly::from_coeffs(&self.ctx, coeffs);
            }
            assert!(k <= n, "minimal polynomial must appear by degree n");
            powers.push(next);
        }
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        for c in &row {
            assert!(c.context() == &self.ctx);
        }
        self.data.extend(row);
        self.rows += 1;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn assert_same_shape(&self, rhs: &ScalarMat) {
        assert!(self.ctx == rhs.ctx, "matrix context mismatch");
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix shape mismatch"
        );
    }
}

impl Index<(usize, usize)> for ScalarMat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ScalarMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ScalarMat {
    type Output = ScalarMat;
    fn add(self, rhs: &ScalarMat) -> ScalarMat {
        self.assert_same_shape(rhs);
        ScalarMat::from_fn(&self.ctx, self.rows, self.cols, |i, j| {
            &self[(i, j)] + &rhs[(i, j)]
        })
    }
}

impl Sub for &ScalarMat {
    type Output = ScalarMat;
    fn sub(self, rhs: &ScalarMat) -> ScalarMat {
        self.assert_same_shape(rhs);
        ScalarMat::from_fn(&self.ctx, self.rows, self.cols, |i, j| {
            &self[(i, j)] - &rhs[(i, j)]
        })
    }
}

impl Neg for &ScalarMat {
    type Output = ScalarMat;
    fn neg(self) -> ScalarMat {
        ScalarMat::from_fn(&self.ctx, self.rows, self.cols, |i, j| -&self[(i, j)])
    }
}

impl Mul for &ScalarMat {
    type Output = ScalarMat;
    fn mul(self, rhs: &ScalarMat) -> ScalarMat {
        assert!(self.ctx == rhs.ctx, "matrix context mismatch");
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = ScalarMat::zeros(&self.ctx, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    if rhs[(k, j)].is_zero() {
                        continue;
                    }
                    let t = &self[(i, k)] * &rhs[(k, j)];
                    out[(i, j)] = &out[(i, j)] + &t;
                }
            }
        }
        out
    }
}

impl fmt::Display for ScalarMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Canonical basis of the sum of two row spaces.
pub fn subspace_sum(a: &ScalarMat, b: &ScalarMat) -> ScalarMat {
    assert!(a.context() == b.context() && a.ncols() == b.ncols());
    let mut stacked = a.clone();
    for i in 0..b.nrows() {
        stacked.push_row(b.row(i).to_vec());
    }
    stacked.row_basis()
}

/// Canonical basis of the intersection of two row spaces (Zassenhaus).
pub fn subspace_intersection(a: &ScalarMat, b: &ScalarMat) -> ScalarMat {
    assert!(a.context() == b.context() && a.ncols() == b.ncols());
    let ctx = a.context();
    let n = a.ncols();
    let mut block = ScalarMat::zeros(ctx, a.nrows() + b.nrows(), 2 * n);
    for i in 0..a.nrows() {
        for j in 0..n {
            block[(i, j)] = a[(i, j)].clone();
            block[(i, n + j)] = a[(i, j)].clone();
        }
    }
    for i in 0..b.nrows() {
        for j in 0..n {
            block[(a.nrows() + i, j)] = b[(i, j)].clone();
        }
    }
    let (r, pivots) = block.rref();
    let mut rows = Vec::new();
    for (row_idx, &p) in pivots.iter().enumerate() {
        if p >= n {
            rows.push(r.row(row_idx)[n..].to_vec());
        }
    }
    if rows.is_empty() {
        // Keep the ambient width even when the intersection is zero.
        return ScalarMat::zeros(ctx, 0, n);
    }
    let inter = ScalarMat::from_rows(ctx, rows);
    inter.row_basis()
}

/// True when the row space of `b` is contained in the row space of `a`.
pub fn subspace_contains(a: &ScalarMat, b: &ScalarMat) -> bool {
    (0..b.nrows()).all(|i| a.row_space_contains(b.row(i)))
}

/// Odometer over all coordinate vectors of a fixed length over a finite
/// field, in a deterministic order. Starts at the zero vector.
pub(crate) struct VectorIter {
    elems: Vec<Scalar>,
    idx: Vec<usize>,
    done: bool,
}

impl VectorIter {
    pub(crate) fn new(ctx: &FieldContext, len: usize) -> VectorIter {
        VectorIter {
            elems: ctx.elements().expect("finite field required"),
            idx: vec![0; len],
            done: false,
        }
    }

    pub(crate) fn next_vec(&mut self) -> Option<Vec<Scalar>> {
        if self.done {
            return None;
        }
        let v: Vec<Scalar> = self.idx.iter().map(|&i| self.elems[i].clone()).collect();
        let mut pos = 0;
        loop {
            if pos == self.idx.len() {
                self.done = true;
                break;
            }
            self.idx[pos] += 1;
            if self.idx[pos] < self.elems.len() {
                break;
            }
            self.idx[pos] = 0;
            pos += 1;
        }
        Some(v)
    }
}

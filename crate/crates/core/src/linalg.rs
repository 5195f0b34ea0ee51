//! Dense exact linear algebra over a prime field `F_p`.
//!
//! Every routine pivots on the leftmost nonzero entry, so kernels, solutions and
//! chosen lifts are reproducible bit for bit.

use std::fmt;

use crate::error::{Error, Result};

/// The prime field `F_p`. Residues are stored as `u32` in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=65_521).contains(&p) || !(2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        // Fermat
        self.pow(a, self.p - 2)
    }

    pub fn pow(self, mut a: u32, mut e: u32) -> u32 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Reduces an arbitrary integer into `[0, p)`.
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }
}

/// `v += c * w`, in place.
#[inline]
pub(crate) fn axpy(f: Fp, v: &mut [u32], c: u32, w: &[u32]) {
    if c == 0 {
        return;
    }
    for (x, &y) in v.iter_mut().zip(w) {
        if y != 0 {
            *x = f.add(*x, f.mul(c, y));
        }
    }
}

/// A dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p;
        }
        m
    }

    pub fn from_fn(field: Fp, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % field.p);
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_rows(field: Fp, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Ok(Self::from_fn(field, r, c, |i, j| field.reduce(rows[i][j])))
    }

    pub fn from_columns(field: Fp, nrows: usize, columns: &[Vec<u32>]) -> Self {
        Self::from_fn(field, nrows, columns.len(), |i, j| columns[j][i])
    }

    pub fn from_row_vecs(field: Fp, ncols: usize, rows: &[Vec<u32>]) -> Self {
        Self::from_fn(field, rows.len(), ncols, |i, j| rows[i][j])
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.field, self.rows)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let (lo, hi) = (i * other.cols, (i + 1) * other.cols);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a != 0 {
                    axpy(f, &mut out.data[lo..hi], a, other.row(k));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (a, b) in self.row(i).iter().zip(v) {
                    acc += *a as u64 * *b as u64;
                }
                (acc % f.p as u64) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.field.neg(1))
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    /// `[self; other]`
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r + i) * self.cols + c + j] = block.get(i, j);
            }
        }
    }

    pub fn block(&self, r: usize, c: usize, nr: usize, nc: usize) -> Matrix {
        Self::from_fn(self.field, nr, nc, |i, j| self.get(r + i, c + j))
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Self::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let all: Vec<usize> = (0..self.cols).collect();
        self.select(rows, &all)
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let all: Vec<usize> = (0..self.rows).collect();
        self.select(&all, cols)
    }

    /// Reduced row echelon form with leftmost-nonzero pivoting.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                let v = m.get(r, j);
                m.data[r * m.cols + j] = f.mul(v, inv);
            }
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                if i != r {
                    let c_i = m.get(i, c);
                    if c_i != 0 {
                        let cols = m.cols;
                        axpy(f, &mut m.data[i * cols..(i + 1) * cols], f.neg(c_i), &pivot_row);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : A x = 0}` with one vector per free column, the free
    /// variable set to 1 and the other free variables to 0.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let Rref { matrix, pivots } = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(matrix.get(r, free));
                }
                v
            })
            .collect()
    }

    /// Kernel basis as the columns of a matrix.
    pub fn kernel_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.cols, &self.kernel_basis())
    }

    /// Some `x` with `A x = b`, free variables set to zero; `None` when `b` is
    /// outside the column space.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_columns(self.field, self.rows, &[b.to_vec()]));
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(r, self.cols);
        }
        Some(x)
    }

    /// Solves `A X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(b.rows, self.rows);
        let aug = self.hstack(b);
        let Rref { matrix, pivots } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, matrix.get(r, self.cols + j));
            }
        }
        Some(x)
    }

    /// The pivot columns of `self`, which form a basis of the column space.
    pub fn column_space(&self) -> Matrix {
        let pivots = self.rref().pivots;
        self.select_cols(&pivots)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        self.solve_matrix(&Matrix::identity(self.field, self.rows))
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    /// A left inverse of a matrix with independent columns.
    pub fn left_inverse(&self) -> Option<Matrix> {
        // rows of A that are independent: pivots of A^T
        let piv = self.transpose().rref().pivots;
        if piv.len() != self.cols {
            return None;
        }
        let square = self.select_rows(&piv);
        let inv = square.inverse()?;
        let mut sel = Matrix::zeros(self.field, self.cols, self.rows);
        for (k, &r) in piv.iter().enumerate() {
            sel.set(k, r, 1);
        }
        Some(inv.mul(&sel))
    }

    /// A right inverse of a matrix with independent rows.
    pub fn right_inverse(&self) -> Option<Matrix> {
        Some(self.transpose().left_inverse()?.transpose())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[F{}; {}x{}]", self.field.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "\n  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// A subspace given by a spanning set, kept in reduced row echelon form.
///
/// Vectors are added one at a time, which keeps large homogeneous systems
/// (many constraints, few unknowns) cheap: a row that reduces to zero costs
/// only the reduction.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: Fp,
    width: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(field: Fp, width: usize) -> Self {
        RowSpace { field, width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Reduces `v` against the current basis in place.
    pub fn reduce(&self, v: &mut [u32]) {
        let f = self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                axpy(f, v, f.neg(c), row);
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(v[pc]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                axpy(f, row, f.neg(c), &v);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, v);
        true
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis of the orthogonal complement `{x : r·x = 0 for every row r}`.
    pub fn null_space(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let mut is_pivot = vec![false; self.width];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.width)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.width];
                v[free] = 1;
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    v[pc] = f.neg(row[free]);
                }
                v
            })
            .collect()
    }
}

/// Coordinates with respect to a fixed basis of a subspace of `F_p^n`.
#[derive(Clone, Debug)]
pub struct Coordinates {
    basis: Matrix,
    left_inverse: Matrix,
}

impl Coordinates {
    /// `basis` must have independent columns.
    pub fn new(basis: Matrix) -> Self {
        let left_inverse = basis.left_inverse().expect("basis columns must be independent");
        Coordinates { basis, left_inverse }
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of `v`, or `None` when `v` lies outside the span.
    pub fn of(&self, v: &[u32]) -> Option<Vec<u32>> {
        let c = self.left_inverse.mul_vec(v);
        (self.basis.mul_vec(&c) == v).then_some(c)
    }

    /// Coordinates of every column of `m`; panics when a column leaves the span.
    pub fn of_columns(&self, m: &Matrix) -> Matrix {
        let c = self.left_inverse.mul(m);
        debug_assert_eq!(self.basis.mul(&c), *m, "column outside the subspace");
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fp {
        Fp::new(2).unwrap()
    }

    fn m(f: Fp, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(f, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn primes_only() {
        assert!(Fp::new(4).is_err());
        assert!(Fp::new(1).is_err());
        assert!(Fp::new(97).is_ok());
        let f = Fp::new(7).unwrap();
        assert_eq!(f.mul(3, f.inv(3)), 1);
        assert_eq!(f.reduce(-1), 6);
    }

    #[test]
    fn rref_examples() {
        let f = f2();
        let id = Matrix::identity(f, 2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1]);

        let z = Matrix::zeros(f, 3, 3);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert!(r.pivots.is_empty());

        let r = m(f, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r.matrix, m(f, &[&[1, 1], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn solve_examples() {
        let f = f2();
        let b = vec![1, 0];
        assert_eq!(Matrix::identity(f, 2).solve(&b), Some(b.clone()));
        assert_eq!(Matrix::zeros(f, 2, 2).solve(&[1, 0]), None);
        assert_eq!(m(f, &[&[1, 1], &[0, 0]]).solve(&[1, 0]), Some(vec![1, 0]));
    }

    #[test]
    fn kernel_examples() {
        let f = f2();
        assert!(Matrix::identity(f, 3).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(f, 2, 2).kernel_basis().len(), 2);
        assert_eq!(m(f, &[&[1, 1]]).kernel_basis(), vec![vec![1, 1]]);
    }

    #[test]
    fn left_inverse_and_coordinates() {
        let f = Fp::new(5).unwrap();
        let b = m(f, &[&[1, 0], &[2, 1], &[3, 4]]);
        let l = b.left_inverse().unwrap();
        assert!(l.mul(&b).is_identity());
        let c = Coordinates::new(b.clone());
        let v = b.mul_vec(&[3, 2]);
        assert_eq!(c.of(&v), Some(vec![3, 2]));
        assert_eq!(c.of(&[0, 0, 1]), None);
    }

    #[test]
    fn row_space_matches_rank() {
        let f = Fp::new(3).unwrap();
        let a = m(f, &[&[1, 2, 0, 1], &[2, 1, 0, 2], &[0, 0, 1, 1]]);
        let mut rs = RowSpace::new(f, 4);
        for i in 0..a.rows() {
            rs.insert(a.row(i).to_vec());
        }
        assert_eq!(rs.dim(), a.rank());
        let ns = rs.null_space();
        assert_eq!(ns.len(), 4 - a.rank());
        for v in ns {
            assert!(a.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }
}

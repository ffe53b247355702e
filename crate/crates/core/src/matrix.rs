//! Dense matrices over a [`Field`] and the Gaussian elimination routines
//! everything else is built on.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Matrix { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn map<T: Clone>(&self, f: impl FnMut(&E) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.rows, cols: cols.len(), data }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.cols * rows.len());
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix { rows: rows.len(), cols: self.cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<E>], zero: E) -> Self {
        let mut m = Matrix::filled(rows, columns.len(), zero);
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Matrix { rows: self.rows, cols, data }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block `[r0..r1) x [c0..c1)`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut data = Vec::with_capacity((r1 - r0) * (c1 - c0));
        for r in r0..r1 {
            data.extend_from_slice(&self.row(r)[c0..c1]);
        }
        Matrix { rows: r1 - r0, cols: c1 - c0, data }
    }
}

pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, f.zero())
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    scalar(f, n, f.one())
}

pub fn scalar<F: Field>(f: &F, n: usize, c: F::Elem) -> Matrix<F::Elem> {
    let mut m = zeros(f, n, n);
    for i in 0..n {
        m.set(i, i, c.clone());
    }
    m
}

pub fn is_zero<F: Field>(f: &F, m: &Matrix<F::Elem>) -> bool {
    m.data.iter().all(|x| f.is_zero(x))
}

pub fn mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "matrix product shape mismatch");
    let mut out = zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if f.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let v = f.add(out.get(i, j), &f.mul(aik, b.get(k, j)));
                out.set(i, j, v);
            }
        }
    }
    out
}

pub fn add<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    let data = a.data.iter().zip(&b.data).map(|(x, y)| f.add(x, y)).collect();
    Matrix { rows: a.rows, cols: a.cols, data }
}

pub fn sub<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    let data = a.data.iter().zip(&b.data).map(|(x, y)| f.sub(x, y)).collect();
    Matrix { rows: a.rows, cols: a.cols, data }
}

pub fn scale<F: Field>(f: &F, c: &F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    a.map(|x| f.mul(c, x))
}

pub fn mul_vec<F: Field>(f: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|r| {
            let mut acc = f.zero();
            for (x, y) in a.row(r).iter().zip(v) {
                if !f.is_zero(x) && !f.is_zero(y) {
                    acc = f.add(&acc, &f.mul(x, y));
                }
            }
            acc
        })
        .collect()
}

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref_in_place<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
        for j in c..cols {
            let v = f.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for j in c..cols {
                let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rref<F: Field>(f: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut m = m.clone();
    let p = rref_in_place(f, &mut m);
    (m, p)
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    rref(f, m).1.len()
}

/// Basis of the right null space, as the columns of the returned matrix.
pub fn nullspace<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let (r, pivots) = rref(f, m);
    let cols = m.cols;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = zeros(f, cols, free.len());
    for (k, &fc) in free.iter().enumerate() {
        out.set(fc, k, f.one());
        for (row, &pc) in pivots.iter().enumerate() {
            out.set(pc, k, f.neg(r.get(row, fc)));
        }
    }
    out
}

/// Solve `a * x = b` (b may have several columns). Returns the solution with
/// free variables set to zero, or `None` if inconsistent.
pub fn solve<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert_eq!(a.rows, b.rows);
    let aug = a.hstack(b);
    let (r, pivots) = rref(f, &aug);
    let n = a.cols;
    if pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = zeros(f, n, b.cols);
    for (row, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(pc, j, r.get(row, n + j).clone());
        }
    }
    Some(x)
}

pub fn inverse<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if a.rows != a.cols {
        return None;
    }
    let n = a.rows;
    let aug = a.hstack(&identity(f, n));
    let (r, pivots) = rref(f, &aug);
    if pivots.len() < n || pivots.iter().take(n).any(|&p| p >= n) {
        return None;
    }
    Some(r.block(0, n, n, 2 * n))
}

pub fn is_invertible<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    a.rows == a.cols && rank(f, a) == a.rows
}

pub fn is_nilpotent<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    let n = a.rows;
    if n == 0 {
        return true;
    }
    let mut p = a.clone();
    let mut k = 1;
    while k < n {
        p = mul(f, &p, &p);
        k *= 2;
        if is_zero(f, &p) {
            return true;
        }
    }
    is_zero(f, &p)
}

/// A basis (as columns) of the column space of `a`, taken from pivot columns.
pub fn column_space<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let pivots = rref(f, a).1;
    a.select_columns(&pivots)
}

/// Extend the independent columns of `basis` (n x k) by standard vectors to
/// an invertible n x n matrix `[basis | complement]`; returns the complement.
pub fn complement<F: Field>(f: &F, basis: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let n = basis.rows;
    let aug = basis.hstack(&identity(f, n));
    let pivots = rref(f, &aug).1;
    let extra: Vec<usize> = pivots.iter().filter(|&&p| p >= basis.cols).map(|&p| p - basis.cols).collect();
    identity(f, n).select_columns(&extra)
}

/// Columns spanning the intersection of the column spaces of `a` and `b`.
pub fn intersect<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let n = a.rows;
    if a.cols == 0 || b.cols == 0 {
        return zeros(f, n, 0);
    }
    let negb = b.map(|x| f.neg(x));
    let ns = nullspace(f, &a.hstack(&negb));
    let coeffs = ns.block(0, a.cols, 0, ns.cols);
    column_space(f, &mul(f, a, &coeffs))
}

/// Whether every column of `v` lies in the column space of `a`.
pub fn in_span<F: Field>(f: &F, a: &Matrix<F::Elem>, v: &Matrix<F::Elem>) -> bool {
    rank(f, &a.hstack(v)) == rank(f, a)
}

//! Dense matrices over a [`Ring`], plus exact elimination over a [`Field`].
//!
//! Action matrices follow the column convention: column `j` holds the image
//! of basis vector `j`.

use std::ops::{Index, IndexMut};

use crate::field::{Field, FieldElem};
use crate::poly::Poly;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// `None` for ragged input. An empty row list gives the 0x0 matrix.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Option<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return None;
        }
        Some(Matrix {
            rows: n,
            cols: if n == 0 { 0 } else { m },
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<T>]) -> Self {
        Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: PartialEq + Clone> Matrix<T> {
    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

pub fn zeros<R: Ring>(ring: &R, rows: usize, cols: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(rows, cols, |_, _| ring.zero())
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
}

pub fn scalar<R: Ring>(ring: &R, n: usize, c: &R::Elem) -> Matrix<R::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { c.clone() } else { ring.zero() })
}

pub fn mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!(a.cols, b.rows, "inner dimensions differ");
    let mut out = zeros(ring, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = &a[(i, k)];
            if ring.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let t = ring.mul(aik, &b[(k, j)]);
                out[(i, j)] = ring.add(&out[(i, j)], &t);
            }
        }
    }
    out
}

pub fn add<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix::from_fn(a.rows, a.cols, |i, j| ring.add(&a[(i, j)], &b[(i, j)]))
}

pub fn sub<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix::from_fn(a.rows, a.cols, |i, j| ring.sub(&a[(i, j)], &b[(i, j)]))
}

pub fn scale<R: Ring>(ring: &R, c: &R::Elem, m: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    m.map(|x| ring.mul(c, x))
}

pub fn is_zero_matrix<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> bool {
    m.entries().all(|x| ring.is_zero(x))
}

/// `Pᵀ · G · P`.
pub fn congruence<R: Ring>(ring: &R, p: &Matrix<R::Elem>, g: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    mul(ring, &mul(ring, &p.transpose(), g), p)
}

pub fn block_diag<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let (n, m) = (a.rows + b.rows, a.cols + b.cols);
    Matrix::from_fn(n, m, |i, j| match (i < a.rows, j < a.cols) {
        (true, true) => a[(i, j)].clone(),
        (false, false) => b[(i - a.rows, j - a.cols)].clone(),
        _ => ring.zero(),
    })
}

/// Assembles an `(nb·bs) x (nb·bs)` matrix from `nb x nb` blocks of size `bs`.
pub fn from_blocks<T: Clone>(nb: usize, bs: usize, block: impl Fn(usize, usize) -> Matrix<T>) -> Matrix<T> {
    let blocks: Vec<Vec<Matrix<T>>> = (0..nb)
        .map(|i| (0..nb).map(|j| block(i, j)).collect())
        .collect();
    Matrix::from_fn(nb * bs, nb * bs, |i, j| {
        blocks[i / bs][j / bs][(i % bs, j % bs)].clone()
    })
}

/// Evaluates a polynomial with coefficients in `k` at a square matrix over a k-algebra.
pub fn eval_poly<R: Ring>(ring: &R, p: &Poly, m: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let n = m.rows;
    p.coeffs().iter().rev().fold(zeros(ring, n, n), |acc, c| {
        let mut next = mul(ring, &acc, m);
        let c = ring.embed(c);
        for i in 0..n {
            next[(i, i)] = ring.add(&next[(i, i)], &c);
        }
        next
    })
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Matrix<FieldElem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = m[(r, c)].inv().expect("nonzero pivot");
        for j in c..m.cols {
            m[(r, j)] = &m[(r, j)] * &inv;
        }
        for i in 0..m.rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let factor = m[(i, c)].clone();
            for j in c..m.cols {
                let t = &factor * &m[(r, j)];
                m[(i, j)] = &m[(i, j)] - &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix<FieldElem>) -> usize {
    rref(&mut m.clone()).len()
}

/// Basis of `{x : m·x = 0}`.
pub fn nullspace(field: Field, m: &Matrix<FieldElem>) -> Vec<Vec<FieldElem>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); m.cols];
            v[f] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[(r, f)];
            }
            v
        })
        .collect()
}

pub fn inverse(field: Field, m: &Matrix<FieldElem>) -> Option<Matrix<FieldElem>> {
    assert!(m.is_square());
    let n = m.rows;
    let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            field.one()
        } else {
            field.zero()
        }
    });
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
}

pub fn det(field: Field, m: &Matrix<FieldElem>) -> FieldElem {
    assert!(m.is_square());
    let n = m.rows;
    let mut a = m.clone();
    let mut d = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return field.zero();
        };
        if p != c {
            a.swap_rows(p, c);
            d = -d;
        }
        let piv = a[(c, c)].clone();
        d = &d * &piv;
        let inv = piv.inv().expect("nonzero");
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let factor = &a[(i, c)] * &inv;
            for j in c..n {
                let t = &factor * &a[(c, j)];
                a[(i, j)] = &a[(i, j)] - &t;
            }
        }
    }
    d
}

pub fn mat_vec(field: Field, m: &Matrix<FieldElem>, v: &[FieldElem]) -> Vec<FieldElem> {
    (0..m.rows)
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .fold(field.zero(), |acc, (a, b)| &acc + &(a * b))
        })
        .collect()
}

/// `xᵀ · G · y`.
pub fn bilinear(field: Field, g: &Matrix<FieldElem>, x: &[FieldElem], y: &[FieldElem]) -> FieldElem {
    let gy = mat_vec(field, g, y);
    x.iter().zip(&gy).fold(field.zero(), |acc, (a, b)| &acc + &(a * b))
}

/// Whether the column spans of two vector families coincide.
pub fn same_span(dim: usize, a: &[Vec<FieldElem>], b: &[Vec<FieldElem>]) -> bool {
    let ra = rank(&Matrix::from_columns(dim, a));
    let rb = rank(&Matrix::from_columns(dim, b));
    let both: Vec<Vec<FieldElem>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank(&Matrix::from_columns(dim, &both)) == ra
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> Matrix<FieldElem> {
        let f = Field::Rationals;
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn inverse_and_det() {
        let f = Field::Rationals;
        let m = qm(&[&[2, 1], &[1, 1]]);
        let inv = inverse(f, &m).unwrap();
        assert_eq!(mul(&f, &m, &inv), identity(&f, 2));
        assert_eq!(det(f, &m), f.from_i64(1));
        assert!(inverse(f, &qm(&[&[1, 2], &[2, 4]])).is_none());
        assert_eq!(det(f, &qm(&[&[0, 1], &[1, 0]])), f.from_i64(-1));
        assert_eq!(det(f, &Matrix::from_rows(vec![]).unwrap()), f.one());
    }

    #[test]
    fn kernel() {
        let f = Field::Rationals;
        let m = qm(&[&[1, 2, 3], &[2, 4, 6]]);
        let ker = nullspace(f, &m);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(mat_vec(f, &m, v).iter().all(FieldElem::is_zero));
        }
    }

    #[test]
    fn poly_at_matrix() {
        let f = Field::Rationals;
        // companion matrix of t^2 + 1 is annihilated by it
        let c = qm(&[&[0, -1], &[1, 0]]);
        let p = Poly::from_i64s(f, &[1, 0, 1]);
        assert!(is_zero_matrix(&f, &eval_poly(&f, &p, &c)));
    }
}

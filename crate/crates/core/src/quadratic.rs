//! Nondegenerate symmetric bilinear spaces over a field and their diagonalization.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::matrix::{self, Matrix};
use crate::ring::Ring;

/// A quadratic space: symmetric, invertible Gram matrix over `field`.
/// Rank 0 is allowed and is the unit for [`QuadSpace::orthogonal_sum`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSpace {
    field: Field,
    gram: Matrix<FieldElem>,
}

/// `Pᵀ · G · P = diag(entries)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagForm {
    pub entries: Vec<FieldElem>,
    pub basis_change: Matrix<FieldElem>,
}

impl QuadSpace {
    pub fn new(field: Field, gram: Matrix<FieldElem>) -> Result<QuadSpace> {
        if !gram.is_square() {
            return Err(Error::Shape {
                rows: gram.rows(),
                cols: gram.cols(),
                expected: "square".into(),
            });
        }
        for e in gram.entries() {
            field.check(e)?;
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if matrix::rank(&gram) != gram.rows() {
            return Err(Error::Degenerate);
        }
        Ok(QuadSpace { field, gram })
    }

    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Result<QuadSpace> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        let gram = Matrix::from_rows(rows).ok_or(Error::Shape {
            rows: 0,
            cols: 0,
            expected: "rectangular rows".into(),
        })?;
        QuadSpace::new(field, gram)
    }

    /// `⟨d_1, ..., d_n⟩`.
    pub fn diagonal(field: Field, entries: &[FieldElem]) -> Result<QuadSpace> {
        let n = entries.len();
        QuadSpace::new(
            field,
            Matrix::from_fn(n, n, |i, j| {
                if i == j {
                    entries[i].clone()
                } else {
                    field.zero()
                }
            }),
        )
    }

    pub fn empty(field: Field) -> QuadSpace {
        QuadSpace {
            field,
            gram: Matrix::from_rows(vec![]).expect("empty"),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn gram(&self) -> &Matrix<FieldElem> {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn determinant(&self) -> FieldElem {
        matrix::det(self.field, &self.gram)
    }

    /// `c · q` for a nonzero scalar `c`.
    pub fn scaled(&self, c: &FieldElem) -> Result<QuadSpace> {
        self.field.check(c)?;
        if c.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(QuadSpace {
            field: self.field,
            gram: self.gram.map(|x| x * c),
        })
    }

    /// `(-1) · q`.
    pub fn negated(&self) -> QuadSpace {
        QuadSpace {
            field: self.field,
            gram: self.gram.map(|x| -x),
        }
    }

    pub fn orthogonal_sum(&self, other: &QuadSpace) -> Result<QuadSpace> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        Ok(QuadSpace {
            field: self.field,
            gram: matrix::block_diag(&self.field, &self.gram, &other.gram),
        })
    }

    /// Whether `Pᵀ · self · P` equals `other` entrywise.
    pub fn maps_onto(&self, p: &Matrix<FieldElem>, other: &QuadSpace) -> bool {
        p.rows() == self.rank()
            && p.cols() == other.rank()
            && matrix::congruence(&self.field, p, &self.gram) == other.gram
    }

    /// Symmetric Gaussian reduction. Pivot rule: the first nonzero remaining
    /// diagonal entry; when all remaining diagonal entries vanish, replace
    /// `e_i` by `e_i + e_j` for the lexicographically first `i < j` with
    /// `G[i][j] != 0`.
    pub fn diagonalize(&self) -> Result<DiagForm> {
        let f = self.field;
        let n = self.rank();
        let mut g = self.gram.clone();
        let mut p = matrix::identity(&f, n);
        for k in 0..n {
            let pivot = match (k..n).find(|&i| !g[(i, i)].is_zero()) {
                Some(i) => i,
                None => {
                    let (i, j) = (k..n)
                        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                        .find(|&(i, j)| !g[(i, j)].is_zero())
                        .ok_or(Error::Degenerate)?;
                    add_column(&mut g, &mut p, i, j);
                    i
                }
            };
            if pivot != k {
                g.swap_rows(pivot, k);
                g.swap_columns(pivot, k);
                p.swap_columns(pivot, k);
            }
            let inv = g[(k, k)].inv().expect("nonzero pivot");
            for j in k + 1..n {
                if g[(k, j)].is_zero() {
                    continue;
                }
                let c = &g[(k, j)] * &inv;
                // e_j <- e_j - c e_k
                for r in 0..n {
                    let t = &c * &p[(r, k)];
                    p[(r, j)] = &p[(r, j)] - &t;
                }
                for r in 0..n {
                    let t = &c * &g[(r, k)];
                    g[(r, j)] = &g[(r, j)] - &t;
                }
                for col in 0..n {
                    let t = &c * &g[(k, col)];
                    g[(j, col)] = &g[(j, col)] - &t;
                }
            }
        }
        let entries = (0..n).map(|i| g[(i, i)].clone()).collect();
        Ok(DiagForm {
            entries,
            basis_change: p,
        })
    }
}

/// `e_i <- e_i + e_j`, applied as a congruence.
fn add_column(g: &mut Matrix<FieldElem>, p: &mut Matrix<FieldElem>, i: usize, j: usize) {
    let n = g.rows();
    for r in 0..n {
        p[(r, i)] = &p[(r, i)] + &p[(r, j)];
    }
    for r in 0..n {
        g[(r, i)] = &g[(r, i)] + &g[(r, j)];
    }
    for c in 0..n {
        g[(i, c)] = &g[(i, c)] + &g[(j, c)];
    }
}

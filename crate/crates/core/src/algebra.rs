//! Finite k-algebras `E = k[t]/(f)` with `f` monic: the objects of the desk model.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::matrix::{self, Matrix};
use crate::poly::Poly;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    modulus: Poly,
}

impl FiniteAlgebra {
    pub fn new(modulus: Poly) -> Result<FiniteAlgebra> {
        match modulus.degree() {
            None | Some(0) => Err(Error::ConstantModulus),
            Some(_) if !modulus.is_monic() => Err(Error::NotMonic(modulus.to_string())),
            Some(_) => Ok(FiniteAlgebra { modulus }),
        }
    }

    /// The point `pt = k[t]/(t)`.
    pub fn point(field: Field) -> FiniteAlgebra {
        FiniteAlgebra {
            modulus: Poly::t(field),
        }
    }

    pub fn field(&self) -> Field {
        self.modulus.field()
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Dimension over k.
    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("nonconstant modulus")
    }

    /// Degree-one algebras are canonically `k`; elements are constants.
    pub fn is_point(&self) -> bool {
        self.degree() == 1
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        a.rem(&self.modulus).expect("nonzero modulus over the same field")
    }

    /// Checks the field and reduces.
    pub fn element(&self, a: &Poly) -> Result<Poly> {
        if a.field() != self.field() {
            return Err(Error::FieldMismatch(
                self.field().to_string(),
                a.field().to_string(),
            ));
        }
        Ok(self.reduce(a))
    }

    /// Class of `t`.
    pub fn generator(&self) -> Poly {
        self.reduce(&Poly::t(self.field()))
    }

    pub fn is_unit(&self, a: &Poly) -> bool {
        !a.is_zero() && a.gcd(&self.modulus).is_ok_and(|g| g.degree() == Some(0))
    }

    pub fn inverse(&self, a: &Poly) -> Option<Poly> {
        let (g, u, _) = a.ext_gcd(&self.modulus).ok()?;
        (g.degree() == Some(0)).then(|| self.reduce(&u))
    }

    /// Coordinates in the monomial basis `1, t, ..., t^(d-1)`.
    pub fn coords(&self, a: &Poly) -> Vec<FieldElem> {
        let r = self.reduce(a);
        (0..self.degree()).map(|i| r.coeff(i)).collect()
    }

    pub fn from_coords(&self, c: &[FieldElem]) -> Poly {
        Poly::new(self.field(), c.to_vec()).expect("coordinates in the field")
    }

    /// Matrix of multiplication by `a` in the monomial basis (column convention).
    pub fn mul_matrix(&self, a: &Poly) -> Matrix<FieldElem> {
        let d = self.degree();
        let cols: Vec<Vec<FieldElem>> = (0..d)
            .map(|j| self.coords(&(a * &Poly::power_of_t(self.field(), j))))
            .collect();
        Matrix::from_columns(d, &cols)
    }

    /// k-trace of `a`: trace of its multiplication operator.
    pub fn trace(&self, a: &Poly) -> FieldElem {
        let m = self.mul_matrix(a);
        (0..self.degree()).fold(self.field().zero(), |acc, i| &acc + &m[(i, i)])
    }

    /// Restriction of scalars of an `E`-matrix: the k-matrix of the same map on `E^r`
    /// with block `(a, b)` the multiplication matrix of entry `(a, b)`.
    pub fn restrict_scalars(&self, m: &Matrix<Poly>) -> Matrix<FieldElem> {
        let d = self.degree();
        let blocks: Vec<Vec<Matrix<FieldElem>>> = m
            .to_rows()
            .iter()
            .map(|row| row.iter().map(|e| self.mul_matrix(e)).collect())
            .collect();
        Matrix::from_fn(m.rows() * d, m.cols() * d, |i, j| {
            blocks[i / d][j / d][(i % d, j % d)].clone()
        })
    }

    /// Whether a square `E`-matrix is invertible, i.e. its determinant is a
    /// unit. Decided through the norm: `det_k(restriction) = N(det_E)`.
    pub fn is_invertible(&self, m: &Matrix<Poly>) -> bool {
        m.is_square() && matrix::rank(&self.restrict_scalars(m)) == m.rows() * self.degree()
    }

    pub fn inverse_matrix(&self, m: &Matrix<Poly>) -> Option<Matrix<Poly>> {
        let d = self.degree();
        let inv = matrix::inverse(self.field(), &self.restrict_scalars(m))?;
        // the inverse is E-linear, so column b*d (image of the b-th unit vector)
        // holds the E-coordinates of column b
        Some(Matrix::from_fn(m.rows(), m.cols(), |a, b| {
            let c: Vec<FieldElem> = (0..d).map(|k| inv[(a * d + k, b * d)].clone()).collect();
            self.from_coords(&c)
        }))
    }
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[t]/({})", self.field(), self.modulus)
    }
}

impl Ring for FiniteAlgebra {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero(self.field())
    }
    fn one(&self) -> Poly {
        Poly::one(self.field())
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a - b
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&(a * b))
    }
    fn neg(&self, a: &Poly) -> Poly {
        -a
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn embed(&self, c: &FieldElem) -> Poly {
        Poly::constant(c.clone())
    }
}

//! Quadratic spaces attached to monic polynomials on the affine line.
//!
//! For monic `f` of degree `n` and `A = k[t]/(f)` there are two presentations
//! of the same form:
//! - the Bezoutian Gram `u·b_ij`, where `(f(x) - f(y))/(x - y) = Σ b_ij x^i y^j`,
//!   which lives on the basis of `Hom(A, k)` dual to the monomials; the
//!   algebra acts there by `M_aᵀ`;
//! - the residue Gram `H_ij = τ(t^(i+j))/u` on the monomials of `A`, where
//!   `τ(a)` is the coefficient of `t^(n-1)` in `a mod f`. For separable `f`
//!   this is the Euler trace form `tr(ab/(u f'))`.
//!
//! The two Grams are mutually inverse.

use crate::algebra::FiniteAlgebra;
use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::matrix::{self, Matrix};
use crate::poly::Poly;
use crate::quadratic::QuadSpace;
use crate::ring::Ring;

fn check_monic(f: &Poly) -> Result<usize> {
    match f.degree() {
        None | Some(0) => Err(Error::ConstantModulus),
        Some(_) if !f.is_monic() => Err(Error::NotMonic(f.to_string())),
        Some(n) => Ok(n),
    }
}

fn check_unit(field: Field, u: &FieldElem) -> Result<()> {
    field.check(u)?;
    if u.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(())
}

/// The Bezoutian form of `f` twisted by `u`.
pub fn bezoutian_form(f: &Poly, u: &FieldElem) -> Result<QuadSpace> {
    let n = check_monic(f)?;
    let field = f.field();
    check_unit(field, u)?;
    // (x^k - y^k)/(x - y) = Σ_{i+j=k-1} x^i y^j
    let gram = Matrix::from_fn(n, n, |i, j| u * &f.coeff(i + j + 1));
    QuadSpace::new(field, gram)
}

/// The residue functional: coefficient of `t^(n-1)` in `a mod f`.
pub fn residue(f: &Poly, a: &Poly) -> Result<FieldElem> {
    let n = check_monic(f)?;
    Ok(a.rem(f)?.coeff(n - 1))
}

/// The form `τ(ab)/u` on the monomial basis of `k[t]/(f)`. Defined for every
/// monic `f`; this is the presentation used for ideals and idempotents.
pub fn residue_form(f: &Poly, u: &FieldElem) -> Result<QuadSpace> {
    let n = check_monic(f)?;
    let field = f.field();
    check_unit(field, u)?;
    let inv = u.inv().expect("nonzero");
    let moments: Vec<FieldElem> = (0..2 * n - 1)
        .map(|k| residue(f, &Poly::power_of_t(field, k)).map(|r| &r * &inv))
        .collect::<Result<_>>()?;
    QuadSpace::new(field, Matrix::from_fn(n, n, |i, j| moments[i + j].clone()))
}

/// Monomial Gram of the Euler trace form `tr(t^i t^j / (u f'))`, computed from
/// traces of multiplication operators.
pub fn trace_gram(f: &Poly, u: &FieldElem) -> Result<Matrix<FieldElem>> {
    check_monic(f)?;
    let field = f.field();
    check_unit(field, u)?;
    let a = FiniteAlgebra::new(f.clone())?;
    let denom = a.reduce(&f.derivative().scale(u));
    let inv = a
        .inverse(&denom)
        .ok_or_else(|| Error::NotSeparable(f.to_string()))?;
    let n = a.degree();
    let traces: Vec<FieldElem> = (0..2 * n - 1)
        .map(|k| a.trace(&a.mul(&Poly::power_of_t(field, k), &inv)))
        .collect();
    Ok(Matrix::from_fn(n, n, |i, j| traces[i + j].clone()))
}

/// The Euler trace form of a separable `f`, presented on the basis dual to
/// the monomials (the inverse of [`trace_gram`]), so that it is directly
/// comparable with [`bezoutian_form`].
pub fn scaled_trace_form(f: &Poly, u: &FieldElem) -> Result<QuadSpace> {
    let h = trace_gram(f, u)?;
    let inv = matrix::inverse(f.field(), &h).ok_or(Error::Degenerate)?;
    QuadSpace::new(f.field(), inv)
}

/// The plain trace form `tr(t^i t^j)` on `k[t]/(f)`.
pub fn plain_trace_form(f: &Poly) -> Result<QuadSpace> {
    check_monic(f)?;
    let a = FiniteAlgebra::new(f.clone())?;
    let n = a.degree();
    let traces: Vec<FieldElem> = (0..2 * n - 1)
        .map(|k| a.trace(&Poly::power_of_t(f.field(), k)))
        .collect();
    QuadSpace::new(f.field(), Matrix::from_fn(n, n, |i, j| traces[i + j].clone()))
}

/// Result of [`split_by_factors`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    /// The Bezoutian form of `f1·f2`.
    pub whole: QuadSpace,
    /// The idempotent of `k[t]/(f)` that is 1 on `Z(f1)` and 0 on `Z(f2)`.
    pub idempotent: Poly,
    pub first: QuadSpace,
    pub second: QuadSpace,
    /// `Pᵀ · whole · P = first ⊕ second`.
    pub basis_change: Matrix<FieldElem>,
}

/// Splits the Bezoutian form of `f = f1·f2` along the coprime factorization.
///
/// The pieces are the restrictions of the residue form to `e·A` and
/// `(1-e)·A` on the bases `{e·t^i}` and `{(1-e)·t^i}`.
pub fn split_by_factors(f: &Poly, u: &FieldElem, f1: &Poly, f2: &Poly) -> Result<Split> {
    check_monic(f)?;
    if f1.is_zero() || f2.is_zero() || &(f1 * f2) != f {
        return Err(Error::BadFactorization);
    }
    let (g, _, v) = f1.ext_gcd(f2)?;
    if !g.is_one() {
        return Err(Error::NotCoprime);
    }
    let field = f.field();
    let a = FiniteAlgebra::new(f.clone())?;
    let e1 = a.mul(&v, f2);
    let e2 = a.sub(&a.one(), &e1);
    let (d1, d2) = (f1.degree().unwrap(), f2.degree().unwrap());
    let mut cols = Vec::with_capacity(d1 + d2);
    for (e, d) in [(&e1, d1), (&e2, d2)] {
        for i in 0..d {
            cols.push(a.coords(&a.mul(e, &Poly::power_of_t(field, i))));
        }
    }
    let v_mat = Matrix::from_columns(a.degree(), &cols);
    let h = residue_form(f, u)?;
    let pulled = matrix::congruence(&field, &v_mat, h.gram());
    let block = |r0: usize, c0: usize, rows: usize, cols: usize| {
        Matrix::from_fn(rows, cols, |i, j| pulled[(r0 + i, c0 + j)].clone())
    };
    if !matrix::is_zero_matrix(&field, &block(0, d1, d1, d2)) {
        return Err(Error::Verification("split pieces are not orthogonal".into()));
    }
    let first = QuadSpace::new(field, block(0, 0, d1, d1))?;
    let second = QuadSpace::new(field, block(d1, d1, d2, d2))?;
    let whole = bezoutian_form(f, u)?;
    let basis_change = matrix::mul(&field, h.gram(), &v_mat);
    if !whole.maps_onto(&basis_change, &first.orthogonal_sum(&second)?) {
        return Err(Error::Verification("CRT basis change is not an isometry".into()));
    }
    Ok(Split {
        whole,
        idempotent: e1,
        first,
        second,
        basis_change,
    })
}

/// Input for the transfer `pt -> E_Y` attached to `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerDatum {
    pub f: Poly,
    pub unit: FieldElem,
    /// `E_Y` together with the image in `k[t]/(f)` of its generator.
    pub target: Option<(FiniteAlgebra, Poly)>,
}

impl EulerDatum {
    pub fn new(f: Poly, unit: FieldElem, target: Option<(FiniteAlgebra, Poly)>) -> Result<EulerDatum> {
        check_monic(&f)?;
        check_unit(f.field(), &unit)?;
        let target = match target {
            None => None,
            Some((ey, g)) => {
                if ey.field() != f.field() || g.field() != f.field() {
                    return Err(Error::FieldMismatch(f.field().to_string(), ey.field().to_string()));
                }
                let g = g.rem(&f)?;
                if !ey.modulus().compose(&g).rem(&f)?.is_zero() {
                    return Err(Error::NotAlgebraMap(g.to_string()));
                }
                Some((ey, g))
            }
        };
        Ok(EulerDatum { f, unit, target })
    }

    /// `E_Y = k[t]/(f)` with `g = t`: the transfer of `f` itself.
    pub fn transfer(f: Poly) -> Result<EulerDatum> {
        let one = f.field().one();
        let ey = FiniteAlgebra::new(f.clone())?;
        let g = Poly::t(f.field());
        EulerDatum::new(f, one, Some((ey, g)))
    }
}

/// The correspondence `pt -> E_Y`: `k[t]/(f)` with the Bezoutian form and
/// `E_Y` acting through `g`.
pub fn euler_correspondence(d: &EulerDatum) -> Result<Correspondence> {
    let (ey, g) = d
        .target
        .as_ref()
        .ok_or_else(|| Error::Unsupported("euler datum has no target".into()))?;
    let a = FiniteAlgebra::new(d.f.clone())?;
    let s = bezoutian_form(&d.f, &d.unit)?;
    let action = a.mul_matrix(g).transpose();
    let field = d.f.field();
    Correspondence::new(
        FiniteAlgebra::point(field),
        ey.clone(),
        action.map(|c| Poly::constant(c.clone())),
        s.gram().map(|c| Poly::constant(c.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::compose;
    use crate::witt::{is_witt_trivial, square_class_rep, witt_equal, witt_invariants};
    use num_bigint::BigInt;

    fn q() -> Field {
        Field::Rationals
    }

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_i64s(q(), coeffs)
    }

    fn rows(f: Field, r: &[&[i64]]) -> Matrix<FieldElem> {
        Matrix::from_rows(r.iter().map(|row| row.iter().map(|&x| f.from_i64(x)).collect()).collect()).unwrap()
    }

    /// Checks `(x - y) · Σ b_ij x^i y^j = f(x) - f(y)` at sample points.
    fn expansion_holds(f: &Poly, b: &Matrix<FieldElem>) -> bool {
        let field = f.field();
        let pts: Vec<FieldElem> = (-3..=3).map(|x| field.from_i64(x)).collect();
        pts.iter().all(|x| {
            pts.iter().all(|y| {
                let mut s = field.zero();
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        s = &s + &(&b[(i, j)] * &(&x.pow(i as u64) * &y.pow(j as u64)));
                    }
                }
                &(x - y) * &s == &f.eval(x) - &f.eval(y)
            })
        })
    }

    #[test]
    fn bezoutian_examples() {
        let one = q().one();
        assert_eq!(bezoutian_form(&p(&[0, 1]), &one).unwrap().gram(), &rows(q(), &[&[1]]));
        assert_eq!(
            bezoutian_form(&p(&[1, 0, 1]), &one).unwrap().gram(),
            &rows(q(), &[&[0, 1], &[1, 0]])
        );
        let f = p(&[0, -1, 0, 1]);
        let b = bezoutian_form(&f, &one).unwrap();
        assert_eq!(b.gram(), &rows(q(), &[&[-1, 0, 1], &[0, 1, 0], &[1, 0, 0]]));
        assert!(expansion_holds(&f, b.gram()));
    }

    #[test]
    fn bezoutian_errors() {
        let one = q().one();
        assert!(matches!(bezoutian_form(&p(&[0, 2]), &one), Err(Error::NotMonic(_))));
        assert_eq!(bezoutian_form(&p(&[0, 1]), &q().zero()), Err(Error::ZeroElement));
        assert_eq!(bezoutian_form(&p(&[1]), &one), Err(Error::ConstantModulus));
    }

    #[test]
    fn expansion_oracle_on_a_quintic() {
        let f = p(&[3, -1, 4, 0, -5, 1]);
        let b = bezoutian_form(&f, &q().one()).unwrap();
        assert!(expansion_holds(&f, b.gram()));
    }

    #[test]
    fn trace_oracle_examples() {
        let one = q().one();
        assert_eq!(scaled_trace_form(&p(&[-7, 1]), &one).unwrap().gram(), &rows(q(), &[&[1]]));
        let f = p(&[0, -1, 0, 1]);
        assert_eq!(scaled_trace_form(&f, &one).unwrap(), bezoutian_form(&f, &one).unwrap());
        assert_eq!(
            trace_gram(&f, &one).unwrap(),
            rows(q(), &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 1]])
        );
        for field in [q(), Field::prime(3).unwrap(), Field::prime(7).unwrap()] {
            let sq = Poly::from_i64s(field, &[0, 0, 1]);
            assert!(matches!(scaled_trace_form(&sq, &field.one()), Err(Error::NotSeparable(_))));
        }
    }

    #[test]
    fn residue_and_bezoutian_are_inverse() {
        for f in [p(&[0, -1, 0, 1]), p(&[0, 0, 0, 1]), p(&[1, -2, 1]), p(&[2, 0, 3, 1])] {
            let u = q().from_i64(-3);
            let b = bezoutian_form(&f, &u).unwrap();
            let h = residue_form(&f, &u).unwrap();
            let n = b.rank();
            assert_eq!(matrix::mul(&q(), b.gram(), h.gram()), matrix::identity(&q(), n));
        }
    }

    #[test]
    fn twist_linearity() {
        let f = p(&[2, 0, 3, 1]);
        let u = q().from_i64(5);
        let b1 = bezoutian_form(&f, &q().one()).unwrap();
        assert_eq!(bezoutian_form(&f, &u).unwrap(), b1.scaled(&u).unwrap());
        let sq = bezoutian_form(&f, &q().from_i64(9)).unwrap();
        assert!(witt_equal(&sq, &b1).unwrap());
        assert_eq!(scaled_trace_form(&f, &u).unwrap(), bezoutian_form(&f, &u).unwrap());
    }

    #[test]
    fn root_diagonalization_of_cubic() {
        let f = p(&[0, -1, 0, 1]);
        let b = bezoutian_form(&f, &q().one()).unwrap();
        let roots = QuadSpace::diagonal(q(), &[q().from_i64(-1), q().from_i64(2), q().from_i64(2)]).unwrap();
        assert!(witt_equal(&b, &roots).unwrap());
        let mut classes: Vec<BigInt> = b
            .diagonalize()
            .unwrap()
            .entries
            .iter()
            .map(|e| square_class_rep(e).unwrap())
            .collect();
        classes.sort();
        // the pivot rule gives <-1,1,1>, isometric to <-1,2,2> since <2,2> = <1,1>
        assert_eq!(classes, vec![BigInt::from(-1), BigInt::from(1), BigInt::from(1)]);
        let inv = witt_invariants(&b).unwrap();
        assert_eq!((inv.rank, inv.signature, inv.disc), (3, Some(1), BigInt::from(-1)));
    }

    #[test]
    fn plain_trace_differs_from_euler_class() {
        let f = p(&[-2, 0, 0, 1]);
        let plain = plain_trace_form(&f).unwrap();
        let euler = bezoutian_form(&f, &q().one()).unwrap();
        let three = QuadSpace::diagonal(q(), &[q().from_i64(3)]).unwrap();
        let one = QuadSpace::diagonal(q(), &[q().one()]).unwrap();
        assert!(witt_equal(&plain, &three).unwrap());
        assert!(witt_equal(&euler, &one).unwrap());
    }

    #[test]
    fn split_two_points() {
        let f = p(&[0, -1, 1]);
        let s = split_by_factors(&f, &q().one(), &p(&[0, 1]), &p(&[-1, 1])).unwrap();
        assert_eq!(s.whole.gram(), &rows(q(), &[&[-1, 1], &[1, 0]]));
        assert_eq!(s.idempotent, p(&[1, -1]));
        assert_eq!(square_class_rep(&s.first.gram()[(0, 0)]).unwrap(), BigInt::from(-1));
        assert_eq!(square_class_rep(&s.second.gram()[(0, 0)]).unwrap(), BigInt::from(1));
    }

    #[test]
    fn split_trivial_factorization() {
        let f = p(&[0, -1, 0, 1]);
        let u = q().one();
        let s = split_by_factors(&f, &u, &f, &p(&[1])).unwrap();
        assert_eq!(s.second.rank(), 0);
        assert_eq!(s.first, residue_form(&f, &u).unwrap());
        assert!(s.whole.maps_onto(&s.basis_change, &s.first));
    }

    #[test]
    fn split_cubic_is_additive() {
        let f = p(&[0, -1, 0, 1]);
        let s = split_by_factors(&f, &q().one(), &p(&[0, 1]), &p(&[-1, 0, 1])).unwrap();
        assert_eq!((s.first.rank(), s.second.rank()), (1, 2));
        assert!(witt_equal(&s.whole, &s.first.orthogonal_sum(&s.second).unwrap()).unwrap());
    }

    #[test]
    fn split_errors() {
        let f = p(&[0, 0, 1]);
        let t = p(&[0, 1]);
        assert_eq!(split_by_factors(&f, &q().one(), &t, &t), Err(Error::NotCoprime));
        assert_eq!(
            split_by_factors(&f, &q().one(), &t, &p(&[1, 1])),
            Err(Error::BadFactorization)
        );
    }

    #[test]
    fn euler_transfer_of_gaussian_integers() {
        let f = p(&[1, 0, 1]);
        let eps = euler_correspondence(&EulerDatum::transfer(f.clone()).unwrap()).unwrap();
        let c = |x: i64| Poly::constant(q().from_i64(x));
        assert_eq!(
            eps.gram(),
            &Matrix::from_rows(vec![vec![c(0), c(1)], vec![c(1), c(0)]]).unwrap()
        );
        let ey = FiniteAlgebra::new(f.clone()).unwrap();
        let annihilated = matrix::eval_poly(&eps.source().clone(), ey.modulus(), eps.action());
        assert!(matrix::is_zero_matrix(eps.source(), &annihilated));
        let form = eps.underlying_form().unwrap();
        assert!(is_witt_trivial(&form).unwrap());
        let back = compose(&Correspondence::to_point(&ey), &eps).unwrap();
        assert_eq!(back.underlying_form().unwrap(), bezoutian_form(&f, &q().one()).unwrap());
    }

    #[test]
    fn euler_of_point_is_identity() {
        let eps = euler_correspondence(&EulerDatum::transfer(p(&[0, 1])).unwrap()).unwrap();
        assert_eq!(eps, Correspondence::identity(&FiniteAlgebra::point(q())));
    }

    #[test]
    fn datum_rejects_non_maps() {
        let f = p(&[1, 0, 1]);
        let ey = FiniteAlgebra::new(p(&[-1, 0, 1])).unwrap();
        assert!(matches!(
            EulerDatum::new(f, q().one(), Some((ey, Poly::t(q())))),
            Err(Error::NotAlgebraMap(_))
        ));
    }
}

//! Dense univariate polynomials over a [`Field`], coefficients in ascending degree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::ring::Ring;

/// `coeffs[i]` is the coefficient of `t^i`. The zero polynomial has no
/// coefficients, so the degree is always `len - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(field: Field, coeffs: Vec<FieldElem>) -> Result<Poly> {
        for c in &coeffs {
            field.check(c)?;
        }
        Ok(Poly::from_coeffs(field, coeffs))
    }

    fn from_coeffs(field: Field, mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: FieldElem) -> Poly {
        Poly::from_coeffs(c.field(), vec![c])
    }

    /// The coordinate `t`.
    pub fn t(field: Field) -> Poly {
        Poly::monomial(field.one(), 1)
    }

    pub fn monomial(c: FieldElem, k: usize) -> Poly {
        let field = c.field();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Poly::from_coeffs(field, coeffs)
    }

    /// `t^n`.
    pub fn power_of_t(field: Field, n: usize) -> Poly {
        Poly::monomial(field.one(), n)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        Poly::from_coeffs(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn eval(&self, x: &FieldElem) -> FieldElem {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Substitutes `g` for `t`.
    pub fn compose(&self, g: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(self.field), |acc, c| &(&acc * g) + &Poly::constant(c.clone()))
    }

    pub fn pow(&self, n: usize) -> Poly {
        (0..n).fold(Poly::one(self.field), |acc, _| &acc * self)
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        Ok(())
    }

    /// Euclidean division: `self = b * q + r` with `deg r < deg b`.
    pub fn div_rem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.check_same(b)?;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = b.leading().and_then(FieldElem::inv).expect("nonzero");
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= db {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); n - db];
        for k in (0..n - db).rev() {
            let c = &rem[k + db] * &lead_inv;
            if !c.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * bj);
                }
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Ok((
            Poly::from_coeffs(self.field, quot),
            Poly::from_coeffs(self.field, rem),
        ))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.div_rem(b)?.1)
    }

    /// Extended Euclid: `(g, u, v)` with `g` the monic gcd and `u*self + v*b = g`.
    pub fn ext_gcd(&self, b: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.check_same(b)?;
        if self.is_zero() && b.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut u0, mut u1) = (Poly::one(f), Poly::zero(f));
        let (mut v0, mut v1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let u2 = &u0 - &(&q * &u1);
            let v2 = &v0 - &(&q * &v1);
            r0 = std::mem::replace(&mut r1, r);
            u0 = std::mem::replace(&mut u1, u2);
            v0 = std::mem::replace(&mut v1, v2);
        }
        let lc_inv = r0.leading().and_then(FieldElem::inv).expect("nonzero gcd");
        Ok((r0.scale(&lc_inv), u0.scale(&lc_inv), v0.scale(&lc_inv)))
    }

    pub fn gcd(&self, b: &Poly) -> Result<Poly> {
        Ok(self.ext_gcd(b)?.0)
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_i64(i as i64))
            .collect();
        Poly::from_coeffs(self.field, coeffs)
    }

    /// Parses the restricted human syntax, e.g. `"t^3-t"`, `"2t^2 + 3*t - 1"`.
    /// Coefficients are integers and the only variable is `t`.
    pub fn parse_human(field: Field, s: &str) -> Result<Poly> {
        let err = |reason: String| Error::Parse {
            what: "polynomial",
            input: s.to_string(),
            reason,
        };
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(err("empty input".into()));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut negative = false;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                negative = bytes[i] == b'-';
                i += 1;
            } else if i > 0 {
                return Err(err(format!("expected '+' or '-' at offset {i}")));
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let digits = &src[start..i];
            let mut exp = 0usize;
            let has_var;
            if i < bytes.len() && bytes[i] == b'*' {
                if digits.is_empty() {
                    return Err(err("'*' without a coefficient".into()));
                }
                i += 1;
                if i >= bytes.len() || bytes[i] != b't' {
                    return Err(err("expected 't' after '*'".into()));
                }
            }
            if i < bytes.len() && bytes[i] == b't' {
                has_var = true;
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let es = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    exp = src[es..i]
                        .parse()
                        .map_err(|_| err("bad exponent".into()))?;
                }
            } else {
                has_var = false;
            }
            if digits.is_empty() && !has_var {
                return Err(err(format!("empty term at offset {start}")));
            }
            let mut c: BigInt = if digits.is_empty() {
                BigInt::from(1)
            } else {
                digits.parse().map_err(|_| err("bad coefficient".into()))?
            };
            if negative {
                c = -c;
            }
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigInt::from(0));
            }
            coeffs[exp] += c;
        }
        Ok(Poly::from_coeffs(
            field,
            coeffs.iter().map(|c| field.from_bigint(c)).collect(),
        ))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mag = if mag.contains('/') && i > 0 {
                format!("({mag})")
            } else {
                mag
            };
            match (i, mag.as_str()) {
                (0, m) => write!(f, "{m}")?,
                (1, "1") => write!(f, "t")?,
                (1, m) => write!(f, "{m}t")?,
                (_, "1") => write!(f, "t^{i}")?,
                (_, m) => write!(f, "{m}t^{i}")?,
            }
        }
        Ok(())
    }
}

fn zip_with(a: &Poly, b: &Poly, op: impl Fn(&FieldElem, &FieldElem) -> FieldElem) -> Poly {
    assert_eq!(a.field, b.field, "polynomials over different fields");
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n).map(|i| op(&a.coeff(i), &b.coeff(i))).collect();
    Poly::from_coeffs(a.field, coeffs)
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "polynomials over different fields");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(self.field, out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Polynomial ring `k[t]`, so polynomials can be matrix entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyRing(pub Field);

impl Ring for PolyRing {
    type Elem = Poly;
    fn zero(&self) -> Poly {
        Poly::zero(self.0)
    }
    fn one(&self) -> Poly {
        Poly::one(self.0)
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a - b
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a * b
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

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> Poly {
        Poly::from_i64s(Field::Rationals, c)
    }

    #[test]
    fn divmod_examples() {
        let (quo, rem) = q(&[0, -1, 0, 1]).div_rem(&q(&[-1, 1])).unwrap();
        assert_eq!(quo, q(&[0, 1, 1]));
        assert!(rem.is_zero());

        let f = q(&[3, 0, -2, 7]);
        let (quo, rem) = f.div_rem(&q(&[1])).unwrap();
        assert_eq!((quo, rem), (f, Poly::zero(Field::Rationals)));

        let f5 = Field::prime(5).unwrap();
        let (quo, rem) = Poly::from_i64s(f5, &[1, 0, 1])
            .div_rem(&Poly::from_i64s(f5, &[2, 1]))
            .unwrap();
        assert_eq!(quo, Poly::from_i64s(f5, &[3, 1]));
        assert!(rem.is_zero());
    }

    #[test]
    fn divmod_errors() {
        assert_eq!(q(&[1, 1]).div_rem(&q(&[])), Err(Error::DivisionByZero));
        let f5 = Field::prime(5).unwrap();
        assert!(matches!(
            q(&[1]).div_rem(&Poly::from_i64s(f5, &[1])),
            Err(Error::FieldMismatch(..))
        ));
    }

    #[test]
    fn ext_gcd_examples() {
        let (g, u, v) = q(&[0, 0, 1]).ext_gcd(&q(&[0, 1])).unwrap();
        assert_eq!((g, u, v), (q(&[0, 1]), q(&[]), q(&[1])));

        let (g, u, v) = q(&[-1, 1]).ext_gcd(&q(&[1, 1])).unwrap();
        let half = Field::Rationals.parse_elem("1/2").unwrap();
        assert_eq!(g, q(&[1]));
        assert_eq!(u, Poly::constant(-&half));
        assert_eq!(v, Poly::constant(half));

        let (g, u, v) = q(&[-1, 0, 1]).ext_gcd(&q(&[0, -1, 0, 1])).unwrap();
        assert_eq!((g, u, v), (q(&[-1, 0, 1]), q(&[1]), q(&[])));

        assert_eq!(q(&[]).ext_gcd(&q(&[])), Err(Error::GcdOfZeros));
        let (g, _, v) = q(&[]).ext_gcd(&q(&[4, 2])).unwrap();
        assert_eq!(g, q(&[2, 1]));
        assert_eq!(v, Poly::constant(Field::Rationals.parse_elem("1/2").unwrap()));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(q(&[0, -1, 0, 1]).derivative(), q(&[-1, 0, 3]));
        assert!(q(&[7]).derivative().is_zero());
        let f3 = Field::prime(3).unwrap();
        assert_eq!(
            Poly::from_i64s(f3, &[0, 1, 0, 1]).derivative(),
            Poly::from_i64s(f3, &[1])
        );
    }

    #[test]
    fn human_syntax() {
        let f = Field::Rationals;
        assert_eq!(Poly::parse_human(f, "t^3-t").unwrap(), q(&[0, -1, 0, 1]));
        assert_eq!(Poly::parse_human(f, " 2t^2 + 3*t - 1 ").unwrap(), q(&[-1, 3, 2]));
        assert_eq!(Poly::parse_human(f, "-t^2+t^2").unwrap(), q(&[]));
        assert_eq!(Poly::parse_human(f, "5").unwrap(), q(&[5]));
        assert_eq!(Poly::parse_human(f, "t").unwrap(), q(&[0, 1]));
        for bad in ["", "t^", "3**t", "t t", "x^2", "1/2t", "+-t"] {
            assert!(Poly::parse_human(f, bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trip() {
        for c in [&[0, -1, 0, 1][..], &[1, 0, 1], &[-5], &[0, 2, -3]] {
            let p = q(c);
            assert_eq!(Poly::parse_human(Field::Rationals, &p.to_string()).unwrap(), p);
        }
    }
}

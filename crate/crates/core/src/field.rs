//! Base fields: the rationals and prime fields of odd characteristic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::Ring;

/// The base field `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// The prime field `F_p`. Characteristic 2 and composite `p` are rejected.
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 {
            return Err(Error::Characteristic2);
        }
        if p < 3 || !num_prime::nt_funcs::is_prime64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        match self {
            Field::Rationals => FieldElem::Rat(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                FieldElem::Mod {
                    v: r.to_u64().expect("residue fits in u64"),
                    p: *p,
                }
            }
        }
    }

    /// Maps a rational number into the field; fails when the denominator
    /// vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElem> {
        match self {
            Field::Rationals => Ok(FieldElem::Rat(q.clone())),
            Field::Prime(_) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                let inv = den
                    .inv()
                    .ok_or_else(|| Error::NotInField(q.to_string()))?;
                Ok(&num * &inv)
            }
        }
    }

    /// Parses "a", "-a" or "a/b".
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let err = |reason: &str| Error::Parse {
            what: "field element",
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n = BigInt::from_str(n).map_err(|_| err("bad numerator"))?;
        let d = BigInt::from_str(d).map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        self.from_rational(&BigRational::new(n, d))
    }

    pub fn contains(&self, a: &FieldElem) -> bool {
        match (self, a) {
            (Field::Rationals, FieldElem::Rat(_)) => true,
            (Field::Prime(p), FieldElem::Mod { p: q, .. }) => p == q,
            _ => false,
        }
    }

    pub fn check(&self, a: &FieldElem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.to_string(), a.field().to_string()))
        }
    }

    /// Smallest positive quadratic nonresidue (prime fields only).
    pub fn smallest_nonresidue(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => (2..*p).find(|&a| pow_mod(a, (p - 1) / 2, *p) == p - 1),
        }
    }

    /// All elements, for prime fields.
    pub fn elements(&self) -> Option<Vec<FieldElem>> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..*p).map(|v| FieldElem::Mod { v, p: *p }).collect()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl Ring for Field {
    type Elem = FieldElem;

    fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }
    fn one(&self) -> FieldElem {
        self.from_i64(1)
    }
    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a + b
    }
    fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a - b
    }
    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a * b
    }
    fn neg(&self, a: &FieldElem) -> FieldElem {
        -a
    }
    fn is_zero(&self, a: &FieldElem) -> bool {
        a.is_zero()
    }
    fn embed(&self, c: &FieldElem) -> FieldElem {
        c.clone()
    }
}

/// An exact scalar: a rational number or a residue modulo an odd prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rat(BigRational),
    Mod { v: u64, p: u64 },
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Tonelli–Shanks; `a` must be a nonzero quadratic residue mod the odd prime `p`.
fn sqrt_mod(a: u64, p: u64) -> u64 {
    if p % 4 == 3 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p)
        .find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)
        .expect("odd prime has a nonresidue");
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rat(_) => Field::Rationals,
            FieldElem::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(q) => q.is_zero(),
            FieldElem::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rat(q) => q.is_one(),
            FieldElem::Mod { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElem::Rat(q) => FieldElem::Rat(q.recip()),
            FieldElem::Mod { v, p } => FieldElem::Mod {
                v: pow_mod(*v, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn pow(&self, mut exp: u64) -> FieldElem {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Square root in the field: `Ok(Some(w))` with `w^2 = self`, `Ok(None)`
    /// for a nonsquare. Over Q the witness is the positive root.
    pub fn sqrt(&self) -> Result<Option<FieldElem>> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(match self {
            FieldElem::Rat(q) => {
                if q.is_negative() {
                    return Ok(None);
                }
                let (n, d) = (q.numer(), q.denom());
                let (rn, rd) = (n.sqrt(), d.sqrt());
                if &(&rn * &rn) == n && &(&rd * &rd) == d {
                    Some(FieldElem::Rat(BigRational::new(rn, rd)))
                } else {
                    None
                }
            }
            FieldElem::Mod { v, p } => {
                if pow_mod(*v, (p - 1) / 2, *p) != 1 {
                    None
                } else {
                    Some(FieldElem::Mod {
                        v: sqrt_mod(*v, *p),
                        p: *p,
                    })
                }
            }
        })
    }

    pub fn is_square(&self) -> Result<bool> {
        Ok(self.sqrt()?.is_some())
    }

    /// Sign over Q (`-1`, `0`, `1`); `None` over a prime field.
    pub fn sign(&self) -> Option<i32> {
        match self {
            FieldElem::Rat(q) => Some(match q.numer().sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            }),
            FieldElem::Mod { .. } => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Rat(q) => Some(q),
            FieldElem::Mod { .. } => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            FieldElem::Rat(_) => None,
            FieldElem::Mod { v, .. } => Some(*v),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElem::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

fn same_prime(p: u64, q: u64) -> u64 {
    assert_eq!(p, q, "arithmetic across different prime fields");
    p
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a + b),
            (FieldElem::Mod { v: a, p }, FieldElem::Mod { v: b, p: q }) => {
                let p = same_prime(*p, *q);
                FieldElem::Mod {
                    v: ((*a as u128 + *b as u128) % p as u128) as u64,
                    p,
                }
            }
            _ => panic!("arithmetic across different fields"),
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a * b),
            (FieldElem::Mod { v: a, p }, FieldElem::Mod { v: b, p: q }) => {
                let p = same_prime(*p, *q);
                FieldElem::Mod {
                    v: mul_mod(*a, *b, p),
                    p,
                }
            }
            _ => panic!("arithmetic across different fields"),
        }
    }
}

impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &FieldElem) -> FieldElem {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rat(a) => FieldElem::Rat(-a),
            FieldElem::Mod { v, p } => FieldElem::Mod {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

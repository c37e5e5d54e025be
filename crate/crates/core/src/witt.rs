//! Witt-class decision over Q (Hasse–Minkowski) and over F_p.
//!
//! Over Q a class is determined by rank parity, signature, discriminant and
//! the Hasse symbols; over F_p by rank parity and discriminant.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::numtheory::{legendre, split_valuation, SquareClass};
use crate::quadratic::QuadSpace;

/// A place of Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Prime(BigUint),
    Infinity,
}

impl Place {
    pub fn prime(p: u64) -> Place {
        Place::Prime(BigUint::from(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Place> {
        if s == "inf" {
            return Ok(Place::Infinity);
        }
        BigUint::from_str(s)
            .ok()
            .filter(|p| *p >= BigUint::from(2u32))
            .map(Place::Prime)
            .ok_or_else(|| Error::Parse {
                what: "place",
                input: s.to_string(),
                reason: "expected \"inf\" or a prime".into(),
            })
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Place, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `ε(u) = (u-1)/2` and `ω(u) = (u²-1)/8` mod 2 for an odd residue `u mod 8`.
fn eps_omega(u_mod8: u32) -> (u32, u32) {
    let eps = ((u_mod8 - 1) / 2) % 2;
    let omega = match u_mod8 {
        1 | 7 => 0,
        _ => 1,
    };
    (eps, omega)
}

/// Residue mod 8 of a 2-adic unit `n/d` (`d⁻¹ ≡ d mod 8` for odd `d`).
fn unit_mod8(n: &BigInt, d: &BigInt) -> u32 {
    let eight = BigInt::from(8);
    let r = ((n * d) % &eight + &eight) % &eight;
    r.try_into().expect("small residue")
}

fn rational_valuation(q: &BigRational, p: &BigUint) -> (i64, BigInt, BigInt) {
    let (vn, n) = split_valuation(q.numer(), p);
    let (vd, d) = split_valuation(q.denom(), p);
    (vn as i64 - vd as i64, n, d)
}

/// Local Hilbert symbol `(a, b)_v` of nonzero rationals.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }
    match place {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(p) if *p == BigUint::from(2u32) => {
            let (alpha, an, ad) = rational_valuation(a, p);
            let (beta, bn, bd) = rational_valuation(b, p);
            let (eu, wu) = eps_omega(unit_mod8(&an, &ad));
            let (ev, wv) = eps_omega(unit_mod8(&bn, &bd));
            let exp = (eu * ev) as i64 + alpha * wv as i64 + beta * wu as i64;
            Ok(if exp.rem_euclid(2) == 0 { 1 } else { -1 })
        }
        Place::Prime(p) => {
            let (alpha, an, ad) = rational_valuation(a, p);
            let (beta, bn, bd) = rational_valuation(b, p);
            let eps_p = {
                let r: BigUint = (p - 1u32) >> 1;
                r.bit(0)
            };
            let mut s: i8 = if eps_p && (alpha * beta).rem_euclid(2) == 1 { -1 } else { 1 };
            if beta.rem_euclid(2) == 1 {
                s *= legendre(&an, p) * legendre(&ad, p);
            }
            if alpha.rem_euclid(2) == 1 {
                s *= legendre(&bn, p) * legendre(&bd, p);
            }
            Ok(s)
        }
    }
}

/// Complete Witt-class decision data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittInvariants {
    pub rank: usize,
    /// Over Q only.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub signature: Option<i64>,
    /// Square-free integer over Q; `1` or the smallest nonresidue over F_p.
    #[serde(with = "bigint_string")]
    pub disc: BigInt,
    /// Over Q only: Hasse symbol at `2` and `inf`, and at the odd primes
    /// where it is `-1`.
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub hasse: BTreeMap<Place, i8>,
}

mod bigint_string {
    use super::*;
    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(v)
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        BigInt::from_str(&s).map_err(serde::de::Error::custom)
    }
}

/// Square-class data of a diagonalized form, shared by the invariants and
/// the triviality test.
struct DiagonalData {
    classes: Vec<SquareClass>,
    entries: Vec<BigRational>,
}

fn rational_diagonal(s: &QuadSpace) -> Result<DiagonalData> {
    let d = s.diagonalize()?;
    let entries: Vec<BigRational> = d
        .entries
        .iter()
        .map(|e| e.as_rational().expect("rational form").clone())
        .collect();
    let classes = entries.iter().map(SquareClass::of).collect();
    Ok(DiagonalData { classes, entries })
}

fn bad_places(data: &DiagonalData) -> BTreeSet<Place> {
    let mut places: BTreeSet<Place> = [Place::prime(2), Place::Infinity].into();
    for c in &data.classes {
        places.extend(c.primes.iter().cloned().map(Place::Prime));
    }
    places
}

fn hasse_at(data: &DiagonalData, v: &Place) -> i8 {
    let n = data.entries.len();
    let mut h = 1;
    for i in 0..n {
        for j in i + 1..n {
            h *= hilbert_symbol(&data.entries[i], &data.entries[j], v).expect("nonzero entries");
        }
    }
    h
}

fn prime_field_disc(s: &QuadSpace, p: u64) -> BigInt {
    let det = s.determinant();
    let nonres = Field::Prime(p).smallest_nonresidue().expect("odd prime");
    if det.is_square().expect("nondegenerate") {
        BigInt::from(1)
    } else {
        BigInt::from(nonres)
    }
}

pub fn witt_invariants(s: &QuadSpace) -> Result<WittInvariants> {
    match s.field() {
        Field::Prime(p) => Ok(WittInvariants {
            rank: s.rank(),
            signature: None,
            disc: prime_field_disc(s, p),
            hasse: BTreeMap::new(),
        }),
        Field::Rationals => {
            let data = rational_diagonal(s)?;
            let signature = data
                .entries
                .iter()
                .map(|e| if e.is_negative() { -1 } else { 1 })
                .sum();
            let disc = data
                .classes
                .iter()
                .fold(SquareClass::one(), |acc, c| acc.mul(c))
                .representative();
            // odd primes outside the bad set, and those with symbol +1, are
            // omitted so that the map is a congruence invariant
            let hasse = bad_places(&data)
                .into_iter()
                .map(|v| {
                    let h = hasse_at(&data, &v);
                    (v, h)
                })
                .filter(|(v, h)| *h == -1 || matches!(v, Place::Infinity) || v == &Place::prime(2))
                .collect();
            Ok(WittInvariants {
                rank: s.rank(),
                signature: Some(signature),
                disc,
                hasse,
            })
        }
    }
}

/// Hasse symbol of the split form `m·⟨1,-1⟩` at `v`.
fn split_hasse(m: usize, v: &Place) -> i8 {
    let pairs = m * m.saturating_sub(1) / 2;
    match v {
        Place::Infinity => {
            if pairs % 2 == 1 {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) if *p == BigUint::from(2u32) => {
            if pairs % 2 == 1 {
                -1
            } else {
                1
            }
        }
        Place::Prime(_) => 1,
    }
}

/// Whether `s` is metabolic, i.e. zero in the Witt group.
pub fn is_witt_trivial(s: &QuadSpace) -> Result<bool> {
    let r = s.rank();
    if r % 2 == 1 {
        return Ok(false);
    }
    let m = r / 2;
    let inv = witt_invariants(s)?;
    let expected_disc = BigInt::from(if m % 2 == 1 { -1 } else { 1 });
    match s.field() {
        Field::Prime(p) => {
            let sign = if m % 2 == 1 { -1 } else { 1 };
            let want = if Field::Prime(p).from_i64(sign).is_square()? {
                BigInt::from(1)
            } else {
                BigInt::from(Field::Prime(p).smallest_nonresidue().unwrap())
            };
            Ok(inv.disc == want)
        }
        Field::Rationals => Ok(inv.signature == Some(0)
            && inv.disc == expected_disc
            && inv.hasse.iter().all(|(v, h)| *h == split_hasse(m, v))),
    }
}

/// Equality in W(k): `a ⊥ (-1)·b` is metabolic.
pub fn witt_equal(a: &QuadSpace, b: &QuadSpace) -> Result<bool> {
    is_witt_trivial(&a.orthogonal_sum(&b.negated())?)
}

/// Whether `s` is Witt-equal to the rank-one form `⟨c⟩`.
pub fn witt_equal_to_rank_one(s: &QuadSpace, c: &FieldElem) -> Result<bool> {
    witt_equal(s, &QuadSpace::diagonal(s.field(), std::slice::from_ref(c))?)
}

/// Square class of the determinant as a field element: `⟨(-1)^m · det⟩`
/// for odd rank `2m + 1` is the only rank-one form the class can equal.
pub fn signed_discriminant(s: &QuadSpace) -> FieldElem {
    let m = s.rank() / 2;
    let det = s.determinant();
    if m % 2 == 1 {
        -det
    } else {
        det
    }
}

/// Canonical representative of the square class of a nonzero element.
pub fn square_class_rep(a: &FieldElem) -> Result<BigInt> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(match a {
        FieldElem::Rat(q) => SquareClass::of(q).representative(),
        FieldElem::Mod { p, .. } => {
            if a.is_square()? {
                BigInt::from(1)
            } else {
                BigInt::from(Field::Prime(*p).smallest_nonresidue().unwrap())
            }
        }
    })
}

//! Integer helpers for square classes of rationals.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Prime factorization of a positive integer.
pub fn factor(n: &BigUint) -> BTreeMap<BigUint, usize> {
    if n.is_zero() || n.is_one() {
        return BTreeMap::new();
    }
    if let Some(small) = n.to_u128() {
        return num_prime::nt_funcs::factorize128(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
    }
    num_prime::nt_funcs::factorize(n.clone())
}

/// Square class of a nonzero rational: its sign and the primes occurring to
/// an odd power. The product of the primes times the sign is the square-free
/// representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    pub negative: bool,
    pub primes: BTreeSet<BigUint>,
}

impl SquareClass {
    pub fn one() -> SquareClass {
        SquareClass {
            negative: false,
            primes: BTreeSet::new(),
        }
    }

    pub fn of(q: &BigRational) -> SquareClass {
        assert!(!q.is_zero(), "square class of zero");
        let mut primes = BTreeSet::new();
        for part in [q.numer(), q.denom()] {
            for (p, e) in factor(part.magnitude()) {
                if e % 2 == 1 {
                    primes.insert(p);
                }
            }
        }
        SquareClass {
            negative: q.numer().sign() == Sign::Minus,
            primes,
        }
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        SquareClass {
            negative: self.negative != other.negative,
            primes: self
                .primes
                .symmetric_difference(&other.primes)
                .cloned()
                .collect(),
        }
    }

    /// The signed square-free integer representing the class.
    pub fn representative(&self) -> BigInt {
        let mag: BigUint = self.primes.iter().product();
        BigInt::from_biguint(if self.negative { Sign::Minus } else { Sign::Plus }, mag)
    }
}

/// `p`-adic valuation and the cofactor.
pub fn split_valuation(n: &BigInt, p: &BigUint) -> (u64, BigInt) {
    assert!(!n.is_zero());
    let p = BigInt::from(p.clone());
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    (v, m)
}

/// Legendre symbol `(a | p)` for an odd prime `p` not dividing `a`.
pub fn legendre(a: &BigInt, p: &BigUint) -> i8 {
    let a = a.mod_floor(&BigInt::from(p.clone())).to_biguint().expect("nonnegative");
    assert!(!a.is_zero(), "legendre symbol of a multiple of p");
    let e = (p - 1u32) >> 1;
    if a.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

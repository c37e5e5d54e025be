//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use witt_core::field::{Field, FieldElem};
use witt_core::matrix::{self, Matrix};
use witt_core::poly::Poly;
use witt_core::ring::Ring;

/// Primes dividing `n > 0`, by trial division.
pub fn trial_primes(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs().to_u64().expect("small test inputs");
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Every monic polynomial of the given degree over `F_p`.
pub fn all_monic(p: u64, degree: usize) -> Vec<Poly> {
    let field = Field::Prime(p);
    let count = (p as usize).pow(degree as u32);
    (0..count)
        .map(|mut k| {
            let mut c = Vec::with_capacity(degree + 1);
            for _ in 0..degree {
                c.push(field.from_i64((k % p as usize) as i64));
                k /= p as usize;
            }
            c.push(field.one());
            Poly::new(field, c).unwrap()
        })
        .collect()
}

/// Irreducibility over `F_p` by trial division by every monic of degree at
/// most half.
pub fn is_irreducible(f: &Poly, p: u64) -> bool {
    let n = f.degree().expect("nonzero");
    if n == 0 {
        return false;
    }
    (1..=n / 2).all(|d| all_monic(p, d).iter().all(|g| !f.rem(g).unwrap().is_zero()))
}

/// Characteristic polynomial `det(xI - M)` by Berkowitz's division-free
/// recursion, independent of the elimination used by the library.
pub fn char_poly(field: Field, m: &Matrix<FieldElem>) -> Poly {
    let n = m.rows();
    // coefficients, highest degree first
    let mut poly = vec![field.one()];
    for k in 0..n {
        // Toeplitz column for the leading (k+1)x(k+1) block
        let r: Vec<FieldElem> = (0..k).map(|j| m[(k, j)].clone()).collect();
        let a = Matrix::from_fn(k, k, |i, j| m[(i, j)].clone());
        let mut col = vec![field.one(), -m[(k, k)].clone()];
        let mut v: Vec<FieldElem> = (0..k).map(|i| m[(i, k)].clone()).collect();
        for _ in 0..k {
            let dot = r.iter().zip(&v).fold(field.zero(), |acc, (x, y)| &acc + &(x * y));
            col.push(-dot);
            v = matrix::mat_vec(field, &a, &v);
        }
        let mut next = vec![field.zero(); k + 2];
        for (i, ci) in col.iter().enumerate() {
            for (j, pj) in poly.iter().enumerate() {
                if i + j < k + 2 {
                    next[i + j] = &next[i + j] + &(ci * pj);
                }
            }
        }
        poly = next;
    }
    poly.reverse();
    Poly::new(field, poly).unwrap()
}

pub fn berkowitz_det(field: Field, m: &Matrix<FieldElem>) -> FieldElem {
    let c = char_poly(field, m).coeff(0);
    if m.rows().is_multiple_of(2) {
        c
    } else {
        -c
    }
}

/// `f(x) - f(y)` against `(x - y) * sum b_ij x^i y^j` at the given points.
pub fn bezoutian_expansion_holds(f: &Poly, gram: &Matrix<FieldElem>, points: &[(FieldElem, FieldElem)]) -> bool {
    let field = f.field();
    points.iter().all(|(x, y)| {
        let mut sum = field.zero();
        for i in 0..gram.rows() {
            for j in 0..gram.cols() {
                sum = &sum + &(&gram[(i, j)] * &(&x.pow(i as u64) * &y.pow(j as u64)));
            }
        }
        &(x - y) * &sum == &f.eval(x) - &f.eval(y)
    })
}

/// A rational as a field element.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_rational_square(a: &BigRational) -> bool {
    if a.is_negative() {
        return false;
    }
    if a.is_zero() {
        return true;
    }
    let root = |x: &BigInt| {
        let r = x.sqrt();
        (&r * &r == *x).then_some(r)
    };
    root(a.numer()).is_some() && root(a.denom()).is_some()
}

pub fn wittc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wittc"))
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Golden fixtures: file stem, arguments, expected exit code.
pub fn golden_cases() -> Vec<(&'static str, Vec<&'static str>, i32)> {
    vec![
        ("form_diag_hyperbolic", vec!["form", "diag", "[[0,1],[1,0]]"], 0),
        ("form_invariants_two_two", vec!["form", "invariants", "[[2,0],[0,2]]"], 0),
        ("form_witt_equal", vec!["form", "witt-equal", "[[2,0],[0,2]]", "[[1,0],[0,1]]"], 0),
        ("form_witt_equal_mismatch", vec!["form", "witt-equal", "[[1]]", "[[-1]]"], 1),
        ("form_witt_trivial_f5", vec!["--field", r#"{"Fp":5}"#, "form", "witt-trivial", "[[1,0],[0,1]]"], 0),
        ("euler_cubic", vec!["euler", "--f", r#"{"coeffs":["0","-1","0","1"]}"#], 0),
        (
            "euler_cubic_split",
            vec!["euler", "--f", "t^3-t", "--split", "t", "t^2-1", "--trace-oracle"],
            0,
        ),
        ("euler_char_two", vec!["euler", "--field", r#"{"Fp":2}"#, "--f", "t^2+1"], 2),
        ("euler_inseparable_oracle", vec!["euler", "--f", "t^2", "--trace-oracle"], 1),
        ("transfer_i", vec!["transfer", "--min-poly", "t^2+1"], 0),
        (
            "compose_graphs",
            vec![
                "compose",
                r#"{"source":{"modulus":"t-2"},"target":{"modulus":"t-3"},"action":[["3"]],"gram":[["1"]]}"#,
                r#"{"source":{"modulus":"t"},"target":{"modulus":"t-2"},"action":[["2"]],"gram":[["5"]]}"#,
            ],
            0,
        ),
        ("lemma_sqmet_even", vec!["lemma", "sqmet", "--e", "t", "--n", "4"], 0),
        ("lemma_sqmet_odd_f5", vec!["--field", "5", "lemma", "sqmet", "--e", "t", "--n", "7"], 0),
        ("lemma_square_unit_q4", vec!["lemma", "square-unit", "--q", "4"], 0),
        ("lemma_square_unit_f5", vec!["--field", "5", "lemma", "square-unit", "--q", "2"], 0),
        ("homotopy_cubic", vec!["homotopy", "--f0", "t^3-t", "--f1", "t^3"], 0),
        ("homotopy_quadratic", vec!["homotopy", "--f0", "t^2+1", "--f1", "t^2-1", "--samples", "0,1"], 0),
        ("selfcheck_seed7", vec!["selfcheck", "--seed", "7", "--iters", "2"], 0),
    ]
}

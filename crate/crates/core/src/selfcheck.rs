//! Randomized invariant suites over every module, used by `wittc selfcheck`.

use std::collections::BTreeSet;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::FiniteAlgebra;
use crate::correspondence::{
    compose, double_dual_witness, duality_witness, reassociation_witness, square_twist_witness, Correspondence,
};
use crate::error::Result;
use crate::euler::{
    bezoutian_form, euler_correspondence, residue_form, scaled_trace_form, split_by_factors, EulerDatum,
};
use crate::field::{Field, FieldElem};
use crate::matrix::{self, Matrix};
use crate::numtheory::factor;
use crate::poly::Poly;
use crate::quadratic::QuadSpace;
use crate::random;
use crate::rigidity::{default_samples, pencil_check, sqmet_class, HomotopyPencil, NilpotentSpace, SqMetClass};
use crate::ring::Ring;
use crate::witt::{
    hilbert_symbol, is_witt_trivial, witt_equal, witt_equal_to_rank_one, witt_invariants, Place,
};

pub const DEFAULT_SEED: u64 = 20240601;
pub const DEFAULT_ITERS: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub iters: usize,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

impl Report {
    /// Fixed-width pass/fail table.
    pub fn table(&self) -> String {
        let mut out = format!("{:<16} {:>7} {:>8}  result\n", "suite", "checks", "failed");
        for s in &self.suites {
            out.push_str(&format!(
                "{:<16} {:>7} {:>8}  {}\n",
                s.name,
                s.checks,
                s.failures,
                if s.passed() { "PASS" } else { "FAIL" }
            ));
        }
        out
    }
}

struct Ctx {
    rng: ChaCha8Rng,
    iters: usize,
    fault: bool,
    checks: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Ctx {
    fn check(&mut self, what: impl FnOnce() -> String, outcome: Result<bool>) {
        self.checks += 1;
        let failure = match outcome {
            Ok(true) => None,
            Ok(false) => Some(what()),
            Err(e) => Some(format!("{}: {e}", what())),
        };
        if let Some(msg) = failure {
            self.failures += 1;
            self.first_failure.get_or_insert(msg);
        }
    }

    /// Corrupts one entry of the first matrix handed to it when a fault is
    /// being injected.
    fn maybe_corrupt(&mut self, m: &mut Matrix<FieldElem>) {
        if std::mem::take(&mut self.fault) {
            let one = m[(0, 0)].field().one();
            m[(0, 0)] = &m[(0, 0)] + &one;
        }
    }
}

type Suite = fn(&mut Ctx);

const SUITES: &[(&str, Suite)] = &[
    ("exact-arith", exact_arith),
    ("diagonalize", diagonalize),
    ("hilbert", hilbert),
    ("witt-classes", witt_classes),
    ("euler-oracle", euler_oracle),
    ("splitting", splitting),
    ("rigidity", rigidity),
    ("category", category),
    ("duality", duality),
    ("transfer", transfer),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

/// Runs every suite. With `inject_fault`, the Bezoutian Gram compared in the
/// oracle suite is corrupted, which must be detected.
pub fn run(seed: u64, iters: usize, inject_fault: bool) -> Report {
    let suites: Vec<SuiteResult> = SUITES
        .iter()
        .enumerate()
        .map(|(k, (name, suite))| {
            let mut ctx = Ctx {
                rng: ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64)),
                iters,
                fault: inject_fault && *name == "euler-oracle",
                checks: 0,
                failures: 0,
                first_failure: None,
            };
            suite(&mut ctx);
            SuiteResult {
                name,
                checks: ctx.checks,
                failures: ctx.failures,
                first_failure: ctx.first_failure,
            }
        })
        .collect();
    Report {
        seed,
        iters,
        passed: suites.iter().all(SuiteResult::passed),
        suites,
    }
}

const FIELDS: [Field; 4] = [Field::Rationals, Field::Prime(3), Field::Prime(5), Field::Prime(101)];

fn pick_field(rng: &mut ChaCha8Rng) -> Field {
    FIELDS[rng.gen_range(0..FIELDS.len())]
}

fn exact_arith(ctx: &mut Ctx) {
    for _ in 0..ctx.iters {
        let field = pick_field(&mut ctx.rng);
        let (da, db) = (ctx.rng.gen_range(0..6), ctx.rng.gen_range(0..4));
        let a = random::element(&mut ctx.rng, field, da + 1, 5);
        let b = random::element(&mut ctx.rng, field, db + 1, 5);
        if !b.is_zero() {
            ctx.check(
                || format!("divmod {a} by {b}"),
                a.div_rem(&b).map(|(q, r)| &(&b * &q) + &r == a && r.degree() < b.degree()),
            );
        }
        if !(a.is_zero() && b.is_zero()) {
            ctx.check(
                || format!("bezout for {a}, {b}"),
                a.ext_gcd(&b).map(|(g, u, v)| {
                    &(&u * &a) + &(&v * &b) == g
                        && g.is_monic()
                        && a.rem(&g).is_ok_and(|r| r.is_zero())
                        && b.rem(&g).is_ok_and(|r| r.is_zero())
                }),
            );
        }
        let leibniz = (&a * &b).derivative() == &(&a.derivative() * &b) + &(&a * &b.derivative());
        let additive = (&a + &b).derivative() == &a.derivative() + &b.derivative();
        ctx.check(|| format!("derivative rules for {a}, {b}"), Ok(leibniz && additive));
        let x = random::nonzero(&mut ctx.rng, field, 50);
        ctx.check(
            || format!("square witness for {x}"),
            x.sqrt().and_then(|w| Ok(w.map_or(!x.is_square()?, |w| &w * &w == x))),
        );
    }
}

fn diagonalize(ctx: &mut Ctx) {
    for _ in 0..ctx.iters {
        let field = pick_field(&mut ctx.rng);
        let n = ctx.rng.gen_range(1..=5);
        let s = random::quad_space(&mut ctx.rng, field, n, 4);
        ctx.check(
            || format!("diagonalization of {:?}", s.gram()),
            s.diagonalize().and_then(|d| {
                let diag = QuadSpace::diagonal(field, &d.entries)?;
                Ok(s.maps_onto(&d.basis_change, &diag))
            }),
        );
    }
}

fn places_of(a: &BigRational, b: &BigRational) -> BTreeSet<Place> {
    let mut out: BTreeSet<Place> = [Place::Infinity, Place::prime(2)].into();
    for x in [a.numer(), a.denom(), b.numer(), b.denom()] {
        out.extend(factor(x.magnitude()).into_keys().map(Place::Prime));
    }
    out
}

fn hilbert(ctx: &mut Ctx) {
    for _ in 0..ctx.iters * 5 {
        let a = random::rational(&mut ctx.rng, 200);
        let b = random::rational(&mut ctx.rng, 200);
        let c = random::rational(&mut ctx.rng, 200);
        let (a, b, c) = (
            a.as_rational().unwrap().clone(),
            b.as_rational().unwrap().clone(),
            c.as_rational().unwrap().clone(),
        );
        let places = places_of(&a, &b);
        ctx.check(
            || format!("product formula for ({a}, {b})"),
            places
                .iter()
                .map(|v| hilbert_symbol(&a, &b, v))
                .try_fold(1i8, |acc, s| s.map(|s| acc * s))
                .map(|p| p == 1),
        );
        let mut all = places_of(&a, &c);
        all.extend(places);
        for v in &all {
            let sym = |x: &BigRational, y: &BigRational| hilbert_symbol(x, y, v);
            ctx.check(
                || format!("symmetry and bilinearity of ({a}, {b}, {c}) at {v}"),
                (|| {
                    let ab = sym(&a, &b)?;
                    let bc_prod = sym(&a, &(&b * &c))?;
                    let sq = sym(&(&a * &(&c * &c)), &b)?;
                    Ok(ab == sym(&b, &a)? && bc_prod == ab * sym(&a, &c)? && sq == ab)
                })(),
            );
        }
    }
}

fn witt_classes(ctx: &mut Ctx) {
    for _ in 0..ctx.iters {
        let field = pick_field(&mut ctx.rng);
        let n = ctx.rng.gen_range(1..=4);
        let s = random::quad_space(&mut ctx.rng, field, n, 4);
        let p = random::invertible_matrix(&mut ctx.rng, field, n, 3);
        let moved = QuadSpace::new(field, matrix::congruence(&field, &p, s.gram()));
        ctx.check(
            || format!("congruence invariance for {:?}", s.gram()),
            moved.and_then(|m| Ok(witt_invariants(&m)? == witt_invariants(&s)?)),
        );
        ctx.check(
            || format!("q + (-q) split for {:?}", s.gram()),
            s.orthogonal_sum(&s.negated()).and_then(|x| is_witt_trivial(&x)),
        );
        let t = random::quad_space(&mut ctx.rng, field, n, 4);
        let h = QuadSpace::from_i64_rows(field, &[&[0, 1], &[1, 0]]).expect("hyperbolic plane");
        ctx.check(
            || "witt_equal is stable under adding H".into(),
            (|| {
                let before = witt_equal(&s, &t)?;
                Ok(before == witt_equal(&s.orthogonal_sum(&h)?, &t)? && witt_equal(&s, &s)?)
            })(),
        );
    }
}

fn euler_oracle(ctx: &mut Ctx) {
    let one = |f: Field| f.one();
    for _ in 0..ctx.iters {
        let field = pick_field(&mut ctx.rng);
        let n = ctx.rng.gen_range(1..=6);
        let f = random::separable_monic(&mut ctx.rng, field, n, 5);
        let u = random::nonzero(&mut ctx.rng, field, 5);
        let pair = bezoutian_form(&f, &u).and_then(|b| Ok((b, scaled_trace_form(&f, &u)?)));
        match pair {
            Ok((b, s)) => {
                let mut gram = b.gram().clone();
                ctx.maybe_corrupt(&mut gram);
                ctx.check(|| format!("bezoutian = scaled trace for {f}"), Ok(&gram == s.gram()));
            }
            Err(e) => ctx.check(|| format!("oracle for {f}"), Err(e)),
        }
        // the residue form is tr(ab/(u f')) on random a, b
        let a = FiniteAlgebra::new(f.clone()).expect("monic");
        let x = random::element(&mut ctx.rng, field, n, 5);
        let y = random::element(&mut ctx.rng, field, n, 5);
        ctx.check(
            || format!("residue pairing is the Euler trace for {f}"),
            (|| {
                let h = residue_form(&f, &u)?;
                let lhs = matrix::bilinear(field, h.gram(), &a.coords(&x), &a.coords(&y));
                let denom = a.inverse(&a.reduce(&f.derivative().scale(&u))).expect("separable");
                Ok(lhs == a.trace(&a.mul(&a.mul(&x, &y), &denom)))
            })(),
        );
        ctx.check(
            || format!("twist linearity for {f}"),
            (|| Ok(bezoutian_form(&f, &u)? == bezoutian_form(&f, &one(field))?.scaled(&u)?))(),
        );
        // split f: root diagonalization
        let roots: Vec<FieldElem> = match field.elements() {
            Some(all) if all.len() <= 7 => all.into_iter().take(n.min(3)).collect(),
            _ => (0..n.min(4)).map(|_| random::small(&mut ctx.rng, field, 6)).collect(),
        };
        let mut distinct: Vec<FieldElem> = Vec::new();
        for r in roots {
            if !distinct.contains(&r) {
                distinct.push(r);
            }
        }
        let split = distinct.iter().fold(Poly::one(field), |acc, r| {
            &acc * &Poly::new(field, vec![-r.clone(), field.one()]).expect("same field")
        });
        let deriv = split.derivative();
        ctx.check(
            || format!("root diagonalization for {split}"),
            (|| {
                let diag: Vec<FieldElem> = distinct.iter().map(|r| deriv.eval(r)).collect();
                witt_equal(&bezoutian_form(&split, &one(field))?, &QuadSpace::diagonal(field, &diag)?)
            })(),
        );
    }
}

fn splitting(ctx: &mut Ctx) {
    for _ in 0..ctx.iters {
        let field = pick_field(&mut ctx.rng);
        let (f1, f2) = random::coprime_pair(&mut ctx.rng, field, 3, 4);
        let f = &f1 * &f2;
        let u = random::nonzero(&mut ctx.rng, field, 4);
        ctx.check(
            || format!("split of {f} as ({f1})({f2})"),
            split_by_factors(&f, &u, &f1, &f2).and_then(|s| {
                let sum = s.first.orthogonal_sum(&s.second)?;
                let additive = witt_invariants(&sum)? == witt_invariants(&s.whole)?;
                Ok(s.whole.maps_onto(&s.basis_change, &sum) && additive)
            }),
        );
    }
}

fn rigidity(ctx: &mut Ctx) {
    for _ in 0..ctx.iters {
        let field = pick_field(&mut ctx.rng);
        let de = ctx.rng.gen_range(1..=2);
        let e = random::monic(&mut ctx.rng, field, de, 3);
        let n = ctx.rng.gen_range(1..=6);
        let c = match FiniteAlgebra::new(e.pow(n)) {
            Ok(a) => random::unit(&mut ctx.rng, &a, 3),
            Err(_) => continue,
        };
        ctx.check(
            || format!("orthogonal chain for ({e})^{n}"),
            (|| {
                let s = NilpotentSpace::from_unit(e.clone(), n, &c)?;
                let dim = s.space().rank();
                for i in 0..=n {
                    if !matrix::same_span(dim, &s.ideal_orthogonal(i)?, &s.ideal_basis(n - i)?) {
                        return Ok(false);
                    }
                }
                Ok(match sqmet_class(&s)? {
                    SqMetClass::Metabolic(_) => is_witt_trivial(s.space())?,
                    SqMetClass::Reduced(r) => witt_equal(&r, s.space())?,
                })
            })(),
        );
        let d = ctx.rng.gen_range(1..=7);
        let f = random::monic(&mut ctx.rng, field, d, 5);
        ctx.check(
            || format!("rigidity for {f}"),
            (|| {
                let one = field.one();
                let b = bezoutian_form(&f, &one)?;
                let ok = witt_equal(&b, &bezoutian_form(&Poly::power_of_t(field, d), &one)?)?;
                Ok(ok && (d % 2 == 0 || witt_equal_to_rank_one(&b, &one)?))
            })(),
        );
        ctx.check(
            || format!("pencil from {f} to t^{d}"),
            (|| {
                let p = HomotopyPencil::new(f.clone(), Poly::power_of_t(field, d), field.one())?;
                Ok(pencil_check(&p, &default_samples(field))?.witt_equal)
            })(),
        );
    }
}

fn random_triple(ctx: &mut Ctx, source_is_point: bool) -> Vec<Correspondence> {
    let field = pick_field(&mut ctx.rng);
    let rng = &mut ctx.rng;
    let mut objs = vec![if source_is_point {
        random::Object::point(field)
    } else {
        random::object(rng, field, 3, 2)
    }];
    for _ in 0..3 {
        objs.push(random::object(rng, field, 3, 2));
    }
    (0..3).map(|i| random::correspondence(rng, &objs[i], &objs[i + 1], 3, 2)).collect()
}

fn category(ctx: &mut Ctx) {
    for k in 0..ctx.iters {
        let cs = random_triple(ctx, k % 2 == 0);
        let (f, g, h) = (&cs[0], &cs[1], &cs[2]);
        ctx.check(
            || format!("unit laws for {f}"),
            (|| {
                let left = compose(&Correspondence::identity(f.target()), f)?;
                let right = compose(f, &Correspondence::identity(f.source()))?;
                Ok(&left == f && &right == f)
            })(),
        );
        ctx.check(
            || format!("associativity for {f}, {g}, {h}"),
            reassociation_witness(h, g, f).map(|_| true),
        );
        if f.source().is_point() {
            let w = Correspondence::to_point(h.target());
            ctx.check(
                || "presheaf contravariance".into(),
                (|| {
                    let hg = compose(h, g)?;
                    let a = compose(&compose(&w, &hg)?, f)?.underlying_form()?;
                    let b = compose(&w, &compose(&hg, f)?)?.underlying_form()?;
                    Ok(witt_invariants(&a)? == witt_invariants(&b)? && witt_equal(&a, &b)?)
                })(),
            );
        }
    }
}

fn duality(ctx: &mut Ctx) {
    for _ in 0..ctx.iters {
        let cs = random_triple(ctx, false);
        let (f, g) = (&cs[0], &cs[1]);
        ctx.check(|| format!("duality for {f}, {g}"), duality_witness(g, f).map(|_| true));
        ctx.check(|| format!("double dual of {f}"), double_dual_witness(f).map(|_| true));
    }
}

fn transfer(ctx: &mut Ctx) {
    for _ in 0..ctx.iters {
        let cs = random_triple(ctx, false);
        let f = &cs[0];
        let w = random::unit(&mut ctx.rng, f.target(), 3);
        ctx.check(|| format!("square twist by {w}"), square_twist_witness(f, &w).map(|_| true));

        let field = [Field::Prime(3), Field::Prime(5)][ctx.rng.gen_range(0..2)];
        let n = [1, 3, 5][ctx.rng.gen_range(0..3)];
        let p = random::monic(&mut ctx.rng, field, n, 2);
        ctx.check(
            || format!("point composite of the transfer of {p}"),
            (|| {
                let eps = euler_correspondence(&EulerDatum::transfer(p.clone())?)?;
                let back = compose(&Correspondence::to_point(eps.target()), &eps)?;
                let s = NilpotentSpace::from_bezoutian(Poly::t(field), n, &field.one())?;
                let lambda = sqmet_class(&s)?.lambda().cloned().expect("odd n");
                witt_equal_to_rank_one(&back.underlying_form()?, &lambda)
            })(),
        );
    }
}

/// Primes `p` with `p | n`, by trial division; for tests of [`factor`].
#[cfg(test)]
fn trial_primes(mut n: u64) -> Vec<u64> {
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

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn default_run_passes() {
        let r = run(DEFAULT_SEED, 3, false);
        assert!(r.passed, "{}\n{:?}", r.table(), r.suites);
        assert_eq!(r.suites.len(), suite_names().len());
        assert!(r.suites.iter().all(|s| s.checks > 0));
    }

    #[test]
    fn injected_fault_is_caught() {
        let r = run(DEFAULT_SEED, 2, true);
        assert!(!r.passed);
        let failing: Vec<_> = r.suites.iter().filter(|s| !s.passed()).map(|s| s.name).collect();
        assert_eq!(failing, vec!["euler-oracle"]);
    }

    #[test]
    fn deterministic() {
        assert_eq!(run(5, 2, false), run(5, 2, false));
    }

    #[test]
    fn places_match_trial_division() {
        for n in [1u64, 2, 12, 97, 360, 1001, 199 * 197] {
            let mut expected: Vec<u64> = trial_primes(n);
            expected.sort();
            let got: Vec<u64> = factor(&BigUint::from(n))
                .into_keys()
                .map(|p| u64::try_from(p).unwrap())
                .collect();
            assert_eq!(got, expected);
        }
    }
}

//! Acceptance run: one PASS/FAIL line per criterion, each under its time
//! budget. Set `WITTC_BLESS=1` to rewrite the CLI golden files.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use witt_core::correspondence::{
    compose, duality_witness, reassociation_witness, square_twist_witness, Correspondence,
};
use witt_core::euler::{bezoutian_form, euler_correspondence, scaled_trace_form, split_by_factors, EulerDatum};
use witt_core::field::{Field, FieldElem};
use witt_core::matrix::{self, Matrix};
use witt_core::poly::Poly;
use witt_core::random;
use witt_core::rigidity::{sqmet_class, NilpotentSpace, SqMetClass};
use witt_core::ring::Ring;
use witt_core::witt::{
    hilbert_symbol, is_witt_trivial, witt_equal, witt_equal_to_rank_one, witt_invariants, Place,
};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: impl Fn() -> String) -> Result<T, String> {
    r.map_err(|e| format!("{}: {e}", what()))
}

const ORACLE_FIELDS: [Field; 5] = [
    Field::Rationals,
    Field::Prime(3),
    Field::Prime(5),
    Field::Prime(7),
    Field::Prime(101),
];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn oracle_equivalence() -> Outcome {
    let mut rng = rng(1);
    let mut count = 0;
    for field in ORACLE_FIELDS {
        for _ in 0..200 {
            let n = rng.gen_range(1..=6);
            let f = random::separable_monic(&mut rng, field, n, 5);
            let one = field.one();
            let b = ok(bezoutian_form(&f, &one), || format!("bezoutian of {f}"))?;
            let s = ok(scaled_trace_form(&f, &one), || format!("trace form of {f}"))?;
            ensure!(b.gram() == s.gram(), "forms differ for {f} over {field}");
            count += 1;
        }
    }
    Ok(format!("{count} polynomials"))
}

fn is_square_elem(a: &FieldElem) -> bool {
    match a.as_rational() {
        Some(r) => is_rational_square(r),
        None => a.is_square().unwrap(),
    }
}

fn sqmet() -> Outcome {
    let mut cases = 0;
    for field in [Field::Rationals, Field::Prime(3), Field::Prime(5)] {
        let es = [Poly::t(field), &Poly::t(field) - &Poly::one(field), {
            let t = Poly::t(field);
            &(&t * &t) + &Poly::one(field)
        }];
        for e in es {
            let d = e.degree().unwrap();
            for n in 1..=7 {
                let s = ok(NilpotentSpace::from_bezoutian(e.clone(), n, &field.one()), || {
                    format!("space ({e})^{n}")
                })?;
                let g = s.space().gram();
                if n % 2 == 0 {
                    let lag = ok(s.lagrangian_split(), || format!("lagrangian of ({e})^{n}"))?;
                    ensure!(lag.len() * 2 == n * d, "lagrangian of ({e})^{n} has {} vectors", lag.len());
                    let cols = Matrix::from_columns(n * d, &lag);
                    ensure!(matrix::rank(&cols) == lag.len(), "dependent lagrangian for ({e})^{n}");
                    for x in &lag {
                        for y in &lag {
                            ensure!(matrix::bilinear(field, g, x, y).is_zero(), "lagrangian not isotropic");
                        }
                    }
                    ensure!(is_witt_trivial(s.space()).unwrap(), "({e})^{n} not Witt-trivial");
                    ensure!(
                        matches!(sqmet_class(&s), Ok(SqMetClass::Metabolic(_))),
                        "sqmet class of ({e})^{n}"
                    );
                } else {
                    let r = ok(s.sublagrangian_reduce(), || format!("reduction of ({e})^{n}"))?;
                    ensure!(r.rank() == d, "reduction of ({e})^{n} has rank {}", r.rank());
                    ensure!(witt_equal(&r, s.space()).unwrap(), "reduction of ({e})^{n} changes the class");
                    if d == 1 && e.coeff(0).is_zero() {
                        let class = ok(sqmet_class(&s), || format!("sqmet of t^{n}"))?;
                        let lambda = class.lambda().ok_or("no lambda for odd n")?;
                        ensure!(is_square_elem(lambda), "lambda {lambda} for t^{n} over {field} not a square");
                    }
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} spaces"))
}

fn rigidity() -> Outcome {
    let mut rng = rng(3);
    let mut count = 0;
    for field in [Field::Rationals, Field::Prime(5)] {
        let one = field.one();
        for n in 1..=7 {
            let reference = bezoutian_form(&Poly::power_of_t(field, n), &one).unwrap();
            for _ in 0..100 {
                let f = random::monic(&mut rng, field, n, 5);
                let b = ok(bezoutian_form(&f, &one), || format!("bezoutian of {f}"))?;
                ensure!(witt_equal(&b, &reference).unwrap(), "{f} over {field} not Witt-equal to t^{n}");
                if n % 2 == 1 {
                    ensure!(witt_equal_to_rank_one(&b, &one).unwrap(), "{f} over {field} is not <1>");
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} polynomials"))
}

fn field_for(k: usize) -> Field {
    [Field::Rationals, Field::Prime(3), Field::Prime(5), Field::Prime(7)][k % 4]
}

fn chain(rng: &mut ChaCha8Rng, field: Field, length: usize, from_point: bool) -> Vec<Correspondence> {
    let mut objs = vec![if from_point {
        random::Object::point(field)
    } else {
        random::object(rng, field, 3, 2)
    }];
    for _ in 0..length {
        objs.push(random::object(rng, field, 3, 2));
    }
    (0..length)
        .map(|i| random::correspondence(rng, &objs[i], &objs[i + 1], 3, 2))
        .collect()
}

fn category_laws() -> Outcome {
    let mut rng = rng(4);
    for k in 0..50 {
        let cs = chain(&mut rng, field_for(k), 3, k % 3 == 0);
        let (f, g, h) = (&cs[0], &cs[1], &cs[2]);
        for c in [f, g, h] {
            let left = ok(compose(&Correspondence::identity(c.target()), c), || format!("{c}"))?;
            let right = ok(compose(c, &Correspondence::identity(c.source())), || format!("{c}"))?;
            ensure!(&left == c && &right == c, "unit law fails for {c}");
        }
        let gf = ok(compose(g, f), || "g∘f".into())?;
        let hg = ok(compose(h, g), || "h∘g".into())?;
        let left = ok(compose(&hg, f), || "(h∘g)∘f".into())?;
        let right = ok(compose(h, &gf), || "h∘(g∘f)".into())?;
        for c in [&gf, &hg, &left, &right] {
            ensure!(c.validate().is_ok(), "composite fails validation: {c}");
        }
        ok(reassociation_witness(h, g, f), || format!("reassociation for triple {k}"))?;
    }
    Ok("50 triples".into())
}

fn duality() -> Outcome {
    let mut rng = rng(5);
    for k in 0..50 {
        let cs = chain(&mut rng, field_for(k), 2, false);
        ok(duality_witness(&cs[1], &cs[0]), || format!("duality for pair {k}"))?;
    }
    Ok("50 pairs".into())
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let n = rng.gen_range(1..=200) * if rng.gen() { 1 } else { -1 };
    q(n, rng.gen_range(1..=200))
}

fn relevant_places(xs: &[&BigRational]) -> BTreeSet<Place> {
    let mut out: BTreeSet<Place> = [Place::Infinity, Place::prime(2)].into();
    for x in xs {
        for p in trial_primes(x.numer()).into_iter().chain(trial_primes(x.denom())) {
            out.insert(Place::prime(p));
        }
    }
    out
}

fn hilbert() -> Outcome {
    let mut rng = rng(6);
    for _ in 0..500 {
        let (a, b, c) = (random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng));
        let sym = |x: &BigRational, y: &BigRational, v: &Place| hilbert_symbol(x, y, v).unwrap() as i32;
        let places = relevant_places(&[&a, &b]);
        let product: i32 = places.iter().map(|v| sym(&a, &b, v)).product();
        ensure!(product == 1, "product formula fails for ({a}, {b})");
        for v in &relevant_places(&[&a, &b, &c]) {
            ensure!(sym(&a, &b, v) == sym(&b, &a, v), "({a}, {b}) not symmetric at {v:?}");
            let bc = &b * &c;
            ensure!(
                sym(&a, &bc, v) == sym(&a, &b, v) * sym(&a, &c, v),
                "({a}, {b}·{c}) not multiplicative at {v:?}"
            );
        }
    }
    Ok("500 triples".into())
}

fn splitting() -> Outcome {
    let mut rng = rng(7);
    for k in 0..100 {
        let field = field_for(k);
        let (f1, f2) = random::coprime_pair(&mut rng, field, 3, 5);
        let f = &f1 * &f2;
        let u = random::nonzero(&mut rng, field, 5);
        let s = ok(split_by_factors(&f, &u, &f1, &f2), || format!("split of {f}"))?;
        let sum = s.first.orthogonal_sum(&s.second).unwrap();
        let whole = bezoutian_form(&f, &u).unwrap();
        ensure!(whole.maps_onto(&s.basis_change, &sum), "CRT basis change fails for ({f1})({f2})");
        ensure!(
            witt_invariants(&sum).unwrap() == witt_invariants(&whole).unwrap(),
            "invariants not additive for ({f1})({f2})"
        );
    }
    Ok("100 pairs".into())
}

fn irreducible_odd(rng: &mut ChaCha8Rng, p: u64) -> Vec<Poly> {
    let mut out: Vec<Poly> = [1, 3]
        .iter()
        .flat_map(|&d| all_monic(p, d))
        .filter(|f| is_irreducible(f, p))
        .collect();
    for n in [5, 7] {
        let mut found = 0;
        while found < 5 {
            let f = random::monic(rng, Field::Prime(p), n, p as i64);
            if is_irreducible(&f, p) {
                out.push(f);
                found += 1;
            }
        }
    }
    out
}

fn transfer_twist() -> Outcome {
    let mut rng = rng(8);
    for k in 0..50 {
        let cs = chain(&mut rng, field_for(k), 1, k % 2 == 0);
        let f = &cs[0];
        let w = random::unit(&mut rng, f.target(), 3);
        ok(square_twist_witness(f, &w), || format!("square twist by {w} on {f}"))?;
    }
    let q = Field::Rationals;
    let i = Poly::from_i64s(q, &[1, 0, 1]);
    let eps = euler_correspondence(&EulerDatum::transfer(i).unwrap()).unwrap();
    ensure!(is_witt_trivial(&eps.underlying_form().unwrap()).unwrap(), "ε(t²+1) is not Witt-trivial");
    let mut count = 0;
    for p in [3, 5] {
        let field = Field::Prime(p);
        for poly in irreducible_odd(&mut rng, p) {
            let n = poly.degree().unwrap();
            let eps = ok(euler_correspondence(&EulerDatum::transfer(poly.clone()).unwrap()), || {
                format!("transfer of {poly}")
            })?;
            let back = compose(&Correspondence::to_point(eps.target()), &eps).unwrap();
            let s = NilpotentSpace::from_bezoutian(Poly::t(field), n, &field.one()).unwrap();
            let lambda = sqmet_class(&s).unwrap().lambda().cloned().ok_or("no lambda")?;
            ensure!(
                witt_equal_to_rank_one(&back.underlying_form().unwrap(), &lambda).unwrap(),
                "point composite of ε({poly}) over F_{p} is not <{lambda}>"
            );
            count += 1;
        }
    }
    Ok(format!("50 twists, {count} irreducible transfers"))
}

fn run_cli(args: &[&str]) -> (Vec<u8>, i32) {
    let out = wittc().args(args).env_remove("WITTC_SEED").output().expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn cli() -> Outcome {
    let bless = std::env::var_os("WITTC_BLESS").is_some();
    let dir = golden_dir();
    let cases = golden_cases();
    for (name, args, code) in &cases {
        let (stdout, got) = run_cli(args);
        ensure!(got == *code, "{name}: exit {got}, expected {code}");
        let path = dir.join(format!("{name}.json"));
        if bless {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &stdout).unwrap();
        }
        let golden = std::fs::read(&path).map_err(|e| format!("{name}: {e}"))?;
        ensure!(stdout == golden, "{name}: output differs from golden file");
        let (again, _) = run_cli(args);
        ensure!(again == stdout, "{name}: rerun not byte-identical");
    }
    let (first, code) = run_cli(&["selfcheck"]);
    ensure!(code == 0, "default selfcheck exited {code}");
    let (second, _) = run_cli(&["selfcheck"]);
    ensure!(first == second, "selfcheck rerun not byte-identical");
    let (_, code) = run_cli(&["selfcheck", "--inject-fault"]);
    ensure!(code == 3, "injected fault exited {code}");
    Ok(format!("{} goldens, selfcheck ok", cases.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence", 10, oracle_equivalence),
        ("square-metabolic lemma", 5, sqmet),
        ("rigidity", 30, rigidity),
        ("category laws", 20, category_laws),
        ("duality compatibility", 10, duality),
        ("hilbert product formula", 5, hilbert),
        ("splitting", 10, splitting),
        ("transfer and twist", 10, transfer_twist),
        ("cli", 60, cli),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let within = elapsed < Duration::from_secs(budget);
        let line = match (&outcome, within) {
            (Ok(detail), true) => format!("PASS  {name}: {detail}"),
            (Ok(detail), false) => format!("FAIL  {name}: {detail}, over budget"),
            (Err(why), _) => format!("FAIL  {name}: {why}"),
        };
        println!("{line} [{:.2}s / {budget}s]", elapsed.as_secs_f64());
        if !(outcome.is_ok() && within) {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

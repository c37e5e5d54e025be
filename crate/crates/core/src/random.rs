//! Seeded generators of polynomials, quadratic spaces and correspondences.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::FiniteAlgebra;
use crate::correspondence::Correspondence;
use crate::euler::bezoutian_form;
use crate::field::{Field, FieldElem};
use crate::matrix::{self, Matrix};
use crate::poly::Poly;
use crate::quadratic::QuadSpace;
use crate::ring::Ring;

/// Nonzero rationals `±n/d` with `1 <= n, d <= bound`.
pub fn rational<R: Rng>(rng: &mut R, bound: i64) -> FieldElem {
    let n = rng.gen_range(1..=bound) * if rng.gen() { 1 } else { -1 };
    let d = rng.gen_range(1..=bound);
    Field::Rationals.parse_elem(&format!("{n}/{d}")).expect("valid")
}

/// An integer in `[-bound, bound]` mapped into the field.
pub fn small<R: Rng>(rng: &mut R, field: Field, bound: i64) -> FieldElem {
    field.from_i64(rng.gen_range(-bound..=bound))
}

pub fn nonzero<R: Rng>(rng: &mut R, field: Field, bound: i64) -> FieldElem {
    loop {
        let a = small(rng, field, bound);
        if !a.is_zero() {
            return a;
        }
    }
}

/// Monic of the given degree with lower coefficients in `[-bound, bound]`.
pub fn monic<R: Rng>(rng: &mut R, field: Field, degree: usize, bound: i64) -> Poly {
    let mut c: Vec<FieldElem> = (0..degree).map(|_| small(rng, field, bound)).collect();
    c.push(field.one());
    Poly::new(field, c).expect("same field")
}

pub fn separable_monic<R: Rng>(rng: &mut R, field: Field, degree: usize, bound: i64) -> Poly {
    loop {
        let f = monic(rng, field, degree, bound);
        if degree == 0 || f.gcd(&f.derivative()).is_ok_and(|g| g.is_one()) {
            return f;
        }
    }
}

/// Coprime monic pair with degrees in `1..=max_degree`.
pub fn coprime_pair<R: Rng>(rng: &mut R, field: Field, max_degree: usize, bound: i64) -> (Poly, Poly) {
    loop {
        let (da, db) = (rng.gen_range(1..=max_degree), rng.gen_range(1..=max_degree));
        let a = monic(rng, field, da, bound);
        let b = monic(rng, field, db, bound);
        if a.gcd(&b).is_ok_and(|g| g.is_one()) {
            return (a, b);
        }
    }
}

/// Polynomial of degree below `degree`.
pub fn element<R: Rng>(rng: &mut R, field: Field, degree: usize, bound: i64) -> Poly {
    Poly::new(field, (0..degree).map(|_| small(rng, field, bound)).collect()).expect("same field")
}

pub fn unit<R: Rng>(rng: &mut R, e: &FiniteAlgebra, bound: i64) -> Poly {
    loop {
        let a = element(rng, e.field(), e.degree(), bound);
        if e.is_unit(&a) {
            return a;
        }
    }
}

pub fn invertible_matrix<R: Rng>(rng: &mut R, field: Field, n: usize, bound: i64) -> Matrix<FieldElem> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| small(rng, field, bound));
        if matrix::rank(&m) == n {
            return m;
        }
    }
}

/// A nondegenerate symmetric form of rank `n` with entries in `[-bound, bound]`.
pub fn quad_space<R: Rng>(rng: &mut R, field: Field, n: usize, bound: i64) -> QuadSpace {
    loop {
        let mut g = Matrix::from_fn(n, n, |_, _| field.zero());
        for i in 0..n {
            for j in i..n {
                let x = small(rng, field, bound);
                g[(i, j)] = x.clone();
                g[(j, i)] = x;
            }
        }
        if let Ok(s) = QuadSpace::new(field, g) {
            return s;
        }
    }
}

/// An object of the correspondence category, remembering its roots when it
/// is a product of distinct linear factors.
#[derive(Clone, Debug)]
pub struct Object {
    pub algebra: FiniteAlgebra,
    pub roots: Option<Vec<FieldElem>>,
}

impl Object {
    pub fn point(field: Field) -> Object {
        Object {
            algebra: FiniteAlgebra::point(field),
            roots: Some(vec![field.zero()]),
        }
    }
}

/// With equal odds: a split algebra with distinct roots in `[-bound, bound]`,
/// or an arbitrary monic modulus (possibly inseparable or irreducible).
pub fn object<R: Rng>(rng: &mut R, field: Field, max_degree: usize, bound: i64) -> Object {
    let degree = rng.gen_range(1..=max_degree);
    if rng.gen() {
        let mut pool: Vec<FieldElem> = (-bound..=bound).map(|x| field.from_i64(x)).collect();
        pool.sort_by_key(|x| x.to_string());
        pool.dedup();
        if pool.len() >= degree {
            let roots: Vec<FieldElem> = pool.choose_multiple(rng, degree).cloned().collect();
            let modulus = roots.iter().fold(Poly::one(field), |acc, r| {
                &acc * &Poly::new(field, vec![-r.clone(), field.one()]).expect("same field")
            });
            return Object {
                algebra: FiniteAlgebra::new(modulus).expect("monic"),
                roots: Some(roots),
            };
        }
    }
    Object {
        algebra: FiniteAlgebra::new(monic(rng, field, degree, bound)).expect("monic"),
        roots: None,
    }
}

/// The polynomial of degree below `xs.len()` taking value `ys[i]` at `xs[i]`.
pub fn interpolate(field: Field, xs: &[FieldElem], ys: &[FieldElem]) -> Poly {
    let mut acc = Poly::zero(field);
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = Poly::constant(yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                let lin = Poly::new(field, vec![-xj.clone(), field.one()]).expect("same field");
                let c = (xi - xj).inv().expect("distinct nodes");
                basis = (&basis * &lin).scale(&c);
            }
        }
        acc = &acc + &basis;
    }
    acc
}

/// A correspondence `x -> y` of rank at most `max(max_rank, deg y)`, as an orthogonal sum
/// of twisted graphs (when both ends are split) and base-changed transfers
/// of `y`'s modulus, with Grams scaled by random units and a random
/// unitriangular change of basis.
pub fn correspondence<R: Rng>(rng: &mut R, x: &Object, y: &Object, max_rank: usize, bound: i64) -> Correspondence {
    let ex = &x.algebra;
    let ey = &y.algebra;
    let field = ex.field();
    let constant = |c: &FieldElem| Poly::constant(c.clone());
    let target_rank = rng.gen_range(1..=max_rank);
    let mut pieces: Vec<(Matrix<Poly>, Matrix<Poly>)> = Vec::new();
    let mut rank = 0;
    while rank < target_rank {
        let left = target_rank - rank;
        let graphs_possible = x.roots.is_some() && y.roots.is_some();
        let transfer_fits = ey.degree() <= left;
        let c = unit(rng, ex, bound);
        if graphs_possible && (!transfer_fits || rng.gen()) {
            let xs = x.roots.as_ref().unwrap();
            let ys = y.roots.as_ref().unwrap();
            let images: Vec<FieldElem> = xs.iter().map(|_| ys.choose(rng).unwrap().clone()).collect();
            let phi = ex.reduce(&interpolate(field, xs, &images));
            pieces.push((
                Matrix::from_rows(vec![vec![phi]]).unwrap(),
                Matrix::from_rows(vec![vec![c]]).unwrap(),
            ));
            rank += 1;
        } else if transfer_fits || rank == 0 {
            let s = bezoutian_form(ey.modulus(), &nonzero(rng, field, bound)).expect("monic");
            let t = ey.mul_matrix(&ey.generator()).transpose().map(constant);
            let g = s.gram().map(|e| ex.mul(&constant(e), &c));
            rank += t.rows();
            pieces.push((t, g));
        } else {
            break;
        }
    }
    let (mut t, mut g) = pieces.remove(0);
    for (pt, pg) in pieces {
        t = matrix::block_diag(ex, &t, &pt);
        g = matrix::block_diag(ex, &g, &pg);
    }
    let r = t.rows();
    // P unit upper triangular; P⁻¹ T P and Pᵀ G P keep every invariant
    let mut p = matrix::identity(ex, r);
    for i in 0..r {
        for j in i + 1..r {
            if rng.gen_bool(0.5) {
                p[(i, j)] = element(rng, field, ex.degree(), bound);
            }
        }
    }
    let p_inv = ex.inverse_matrix(&p).expect("unitriangular");
    let t = matrix::mul(ex, &p_inv, &matrix::mul(ex, &t, &p));
    let g = matrix::congruence(ex, &p, &g);
    Correspondence::new(ex.clone(), ey.clone(), t, g).expect("generator produces valid correspondences")
}

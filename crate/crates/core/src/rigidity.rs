//! Metabolic reduction for forms on `k[t]/(e^n)`, the square-unit lemma and
//! the homotopy pencil check.

use crate::algebra::FiniteAlgebra;
use crate::correspondence::{verify_isometry, Correspondence};
use crate::error::{Error, Result};
use crate::euler::{bezoutian_form, residue};
use crate::field::{Field, FieldElem};
use crate::matrix::{self, Matrix};
use crate::poly::Poly;
use crate::quadratic::QuadSpace;
use crate::ring::Ring;
use crate::witt::{is_witt_trivial, witt_equal, witt_invariants, WittInvariants};

/// A quadratic space on the monomial basis of `A = k[t]/(e^n)` for which
/// multiplication by `t` is self-adjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentSpace {
    e: Poly,
    n: usize,
    space: QuadSpace,
}

impl NilpotentSpace {
    pub fn new(e: Poly, n: usize, space: QuadSpace) -> Result<NilpotentSpace> {
        let a = ambient(&e, n)?;
        if space.field() != e.field() {
            return Err(Error::FieldMismatch(e.field().to_string(), space.field().to_string()));
        }
        if space.rank() != a.degree() {
            return Err(Error::Shape {
                rows: space.rank(),
                cols: space.rank(),
                expected: format!("{0}x{0}", a.degree()),
            });
        }
        let field = e.field();
        let mt = a.mul_matrix(&Poly::t(field));
        if matrix::mul(&field, space.gram(), &mt) != matrix::mul(&field, &mt.transpose(), space.gram()) {
            return Err(Error::Verification("multiplication by t is not self-adjoint".into()));
        }
        Ok(NilpotentSpace { e, n, space })
    }

    /// The form `(a, b) -> τ(c·a·b)` for a unit `c` of `A`, where `τ` is the
    /// residue functional of `e^n`. Every balanced form on `A` is of this shape.
    pub fn from_unit(e: Poly, n: usize, c: &Poly) -> Result<NilpotentSpace> {
        let a = ambient(&e, n)?;
        let c = a.element(c)?;
        if !a.is_unit(&c) {
            return Err(Error::NotUnit(c.to_string()));
        }
        let field = e.field();
        let d = a.degree();
        let moments: Vec<FieldElem> = (0..2 * d - 1)
            .map(|k| residue(a.modulus(), &a.mul(&c, &Poly::power_of_t(field, k))))
            .collect::<Result<_>>()?;
        let space = QuadSpace::new(field, Matrix::from_fn(d, d, |i, j| moments[i + j].clone()))?;
        NilpotentSpace::new(e, n, space)
    }

    /// The Bezoutian form of `e^n` twisted by `u`, presented on `A`.
    pub fn from_bezoutian(e: Poly, n: usize, u: &FieldElem) -> Result<NilpotentSpace> {
        e.field().check(u)?;
        let inv = u.inv().ok_or(Error::ZeroElement)?;
        NilpotentSpace::from_unit(e, n, &Poly::constant(inv))
    }

    pub fn e(&self) -> &Poly {
        &self.e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> &QuadSpace {
        &self.space
    }

    fn field(&self) -> Field {
        self.e.field()
    }

    fn algebra(&self) -> FiniteAlgebra {
        ambient(&self.e, self.n).expect("validated")
    }

    /// Basis `{e^i t^j : j < (n - i)·deg e}` of the ideal `(e^i)`.
    pub fn ideal_basis(&self, i: usize) -> Result<Vec<Vec<FieldElem>>> {
        if i > self.n {
            return Err(Error::OutOfRange(format!("ideal power {i} exceeds {}", self.n)));
        }
        let a = self.algebra();
        let ei = self.e.pow(i);
        let dim = (self.n - i) * self.e.degree().unwrap();
        Ok((0..dim)
            .map(|j| a.coords(&(&ei * &Poly::power_of_t(self.field(), j))))
            .collect())
    }

    /// Basis of the orthogonal complement of `(e^i)`.
    pub fn ideal_orthogonal(&self, i: usize) -> Result<Vec<Vec<FieldElem>>> {
        let basis = self.ideal_basis(i)?;
        let field = self.field();
        let d = self.space.rank();
        if basis.is_empty() {
            return Ok((0..d)
                .map(|k| (0..d).map(|j| if j == k { field.one() } else { field.zero() }).collect())
                .collect());
        }
        // x is orthogonal to every column y iff (G Y)ᵀ x = 0
        let y = Matrix::from_columns(d, &basis);
        let gy = matrix::mul(&field, self.space.gram(), &y);
        Ok(matrix::nullspace(field, &gy.transpose()))
    }

    /// For `n = 2l`, the ideal `(e^l)` as a verified lagrangian.
    pub fn lagrangian_split(&self) -> Result<Vec<Vec<FieldElem>>> {
        if self.n % 2 == 1 {
            return Err(Error::Unsupported(format!("n = {} is odd", self.n)));
        }
        let basis = self.ideal_basis(self.n / 2)?;
        if 2 * basis.len() != self.space.rank() || !self.isotropic(&basis) {
            return Err(Error::Verification("(e^l) is not a lagrangian".into()));
        }
        Ok(basis)
    }

    /// For `n = 2l + 1`, the form induced on `(e^l)/(e^(l+1))` in the basis
    /// `{e^l t^j : j < deg e}`.
    pub fn sublagrangian_reduce(&self) -> Result<QuadSpace> {
        if self.n.is_multiple_of(2) {
            return Err(Error::Unsupported(format!("n = {} is even", self.n)));
        }
        let l = self.n / 2;
        let sub = self.ideal_basis(l + 1)?;
        if !self.isotropic(&sub) {
            return Err(Error::Verification("(e^(l+1)) is not isotropic".into()));
        }
        let field = self.field();
        let reps: Vec<Vec<FieldElem>> = self.ideal_basis(l)?[..self.e.degree().unwrap()].to_vec();
        let r = Matrix::from_columns(self.space.rank(), &reps);
        QuadSpace::new(field, matrix::congruence(&field, &r, self.space.gram()))
            .map_err(|_| Error::Verification("induced form is degenerate".into()))
    }

    fn isotropic(&self, basis: &[Vec<FieldElem>]) -> bool {
        let field = self.field();
        basis
            .iter()
            .all(|x| basis.iter().all(|y| matrix::bilinear(field, self.space.gram(), x, y).is_zero()))
    }
}

fn ambient(e: &Poly, n: usize) -> Result<FiniteAlgebra> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    match e.degree() {
        None | Some(0) => return Err(Error::ConstantModulus),
        Some(_) if !e.is_monic() => return Err(Error::NotMonic(e.to_string())),
        _ => {}
    }
    FiniteAlgebra::new(e.pow(n))
}

/// Outcome of the metabolic reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SqMetClass {
    /// `n` even: the lagrangian `(e^l)`.
    Metabolic(Vec<Vec<FieldElem>>),
    /// `n` odd: the reduced form on `(e^l)/(e^(l+1))`.
    Reduced(QuadSpace),
}

impl SqMetClass {
    /// The scalar of a rank-one reduced form.
    pub fn lambda(&self) -> Option<&FieldElem> {
        match self {
            SqMetClass::Reduced(q) if q.rank() == 1 => Some(&q.gram()[(0, 0)]),
            _ => None,
        }
    }
}

/// Reduces `s` and checks the outcome against the Witt invariants of `s`.
pub fn sqmet_class(s: &NilpotentSpace) -> Result<SqMetClass> {
    if s.n().is_multiple_of(2) {
        let lag = s.lagrangian_split()?;
        if !is_witt_trivial(s.space())? {
            return Err(Error::Verification("metabolic space with nontrivial invariants".into()));
        }
        Ok(SqMetClass::Metabolic(lag))
    } else {
        let reduced = s.sublagrangian_reduce()?;
        if !witt_equal(&reduced, s.space())? {
            return Err(Error::Verification("reduction changed the Witt class".into()));
        }
        Ok(SqMetClass::Reduced(reduced))
    }
}

/// For `E = k` and a unit `q`, returns `w` with `w² = q` if one exists,
/// after verifying that multiplication by `w` maps `⟨q⟩` onto `⟨1⟩`.
pub fn square_unit_is_identity(e: &FiniteAlgebra, q: &Poly) -> Result<Option<FieldElem>> {
    if !e.is_point() {
        return Err(Error::Unsupported("square roots of units are decided over fields only".into()));
    }
    let q = e.element(q)?;
    if !e.is_unit(&q) {
        return Err(Error::NotUnit(q.to_string()));
    }
    let Some(w) = q.coeff(0).sqrt()? else {
        return Ok(None);
    };
    let p = Matrix::from_rows(vec![vec![Poly::constant(w.clone())]]).unwrap();
    verify_isometry(&Correspondence::twist(e, &q)?, &Correspondence::identity(e), &p)?;
    Ok(Some(w))
}

/// The family `h_λ = (1 - λ) f0 + λ f1` of monic polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyPencil {
    pub f0: Poly,
    pub f1: Poly,
    pub unit: FieldElem,
}

impl HomotopyPencil {
    pub fn new(f0: Poly, f1: Poly, unit: FieldElem) -> Result<HomotopyPencil> {
        if f0.field() != f1.field() {
            return Err(Error::FieldMismatch(f0.field().to_string(), f1.field().to_string()));
        }
        for f in [&f0, &f1] {
            if f.degree().unwrap_or(0) == 0 {
                return Err(Error::ConstantModulus);
            }
            if !f.is_monic() {
                return Err(Error::NotMonic(f.to_string()));
            }
        }
        if f0.degree() != f1.degree() {
            return Err(Error::DegreeMismatch(f0.degree().unwrap(), f1.degree().unwrap()));
        }
        f0.field().check(&unit)?;
        if unit.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(HomotopyPencil { f0, f1, unit })
    }

    pub fn field(&self) -> Field {
        self.f0.field()
    }

    pub fn at(&self, lambda: &FieldElem) -> Poly {
        let one = self.field().one();
        &self.f0.scale(&(&one - lambda)) + &self.f1.scale(lambda)
    }
}

/// `{0, 1, 2, -1, 1/2}`, or every element of `F_p` for `p <= 13`.
pub fn default_samples(field: Field) -> Vec<FieldElem> {
    match field {
        Field::Prime(p) if p <= 13 => field.elements().expect("finite field"),
        _ => ["0", "1", "2", "-1", "1/2"]
            .iter()
            .map(|s| field.parse_elem(s).expect("valid in odd characteristic"))
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilReport {
    /// Each sampled `λ` with the invariants of its specialization.
    pub specializations: Vec<(FieldElem, WittInvariants)>,
    /// Whether all specializations are pairwise Witt-equal.
    pub witt_equal: bool,
    /// Invariants at `λ = 0`.
    pub class: WittInvariants,
    /// Whether the class at `λ = 0` is that of `⟨1⟩`.
    pub equals_unit_form: bool,
}

/// Specializes the pencil at `0`, `1` and every sample and compares all
/// resulting Bezoutian forms pairwise in W(k).
pub fn pencil_check(p: &HomotopyPencil, samples: &[FieldElem]) -> Result<PencilReport> {
    let field = p.field();
    let mut lambdas = vec![field.zero(), field.one()];
    for s in samples {
        field.check(s)?;
        if !lambdas.contains(s) {
            lambdas.push(s.clone());
        }
    }
    let forms: Vec<QuadSpace> = lambdas
        .iter()
        .map(|l| bezoutian_form(&p.at(l), &p.unit))
        .collect::<Result<_>>()
        .map_err(|e| Error::Verification(format!("degenerate specialization: {e}")))?;
    let mut all_equal = true;
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            all_equal &= witt_equal(&forms[i], &forms[j])?;
        }
    }
    let specializations = lambdas
        .into_iter()
        .zip(&forms)
        .map(|(l, s)| witt_invariants(s).map(|inv| (l, inv)))
        .collect::<Result<Vec<_>>>()?;
    let unit_form = QuadSpace::diagonal(field, &[field.one()])?;
    Ok(PencilReport {
        class: specializations[0].1.clone(),
        equals_unit_form: witt_equal(&forms[0], &unit_form)?,
        specializations,
        witt_equal: all_equal,
    })
}

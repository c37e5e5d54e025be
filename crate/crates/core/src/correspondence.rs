//! Quadratic spaces in `P^Y_X`: the morphisms of the Witt-correspondence
//! category restricted to zero-dimensional objects.
//!
//! A correspondence `X -> Y` is a free `E_X`-module of rank `r` with
//! - an action matrix `T` (r x r over `E_X`, column convention) giving the
//!   action of the generator of `E_Y`, and
//! - a symmetric `E_X`-valued Gram matrix `G` that is invertible and
//!   `E_Y`-balanced: `G·T = Tᵀ·G`.
//!
//! Tensor products `M ⊗_{E_Y} N` use the basis `m_a ⊗ n_i` at index
//! `i·rank(M) + a`, so composite matrices are block matrices indexed by the
//! basis of `N`.

use std::fmt;

use thiserror::Error;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::poly::Poly;
use crate::quadratic::QuadSpace;
use crate::ring::Ring;

/// Which defining condition of a correspondence fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("action and gram must both be {rank}x{rank}")]
    Shape { rank: usize },
    #[error("source and target live over different fields")]
    FieldMismatch,
    #[error("f_Y(T) != 0: the action does not define an E_Y-module")]
    ActionNotAnnihilated,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("det(G) is not a unit of the source algebra")]
    Degenerate,
    #[error("G·T != Tᵀ·G: the form is not E_Y-balanced")]
    Unbalanced,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    source: FiniteAlgebra,
    target: FiniteAlgebra,
    action: Matrix<Poly>,
    gram: Matrix<Poly>,
}

impl Correspondence {
    /// Assembles a correspondence without validating it; entries are reduced
    /// modulo the source modulus. Only shapes and fields are checked.
    pub fn from_parts(
        source: FiniteAlgebra,
        target: FiniteAlgebra,
        action: Matrix<Poly>,
        gram: Matrix<Poly>,
    ) -> Result<Correspondence> {
        if source.field() != target.field() {
            return Err(Violation::FieldMismatch.into());
        }
        let r = action.rows();
        if !action.is_square() || gram.rows() != r || !gram.is_square() {
            return Err(Violation::Shape { rank: r }.into());
        }
        let reduce = |m: &Matrix<Poly>| -> Result<Matrix<Poly>> {
            let rows = m
                .to_rows()
                .iter()
                .map(|row| row.iter().map(|e| source.element(e)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_rows(rows).expect("rectangular"))
        };
        let (action, gram) = (reduce(&action)?, reduce(&gram)?);
        Ok(Correspondence {
            source,
            target,
            action,
            gram,
        })
    }

    /// [`Correspondence::from_parts`] followed by [`Correspondence::validate`].
    pub fn new(
        source: FiniteAlgebra,
        target: FiniteAlgebra,
        action: Matrix<Poly>,
        gram: Matrix<Poly>,
    ) -> Result<Correspondence> {
        let c = Correspondence::from_parts(source, target, action, gram)?;
        c.validate()?;
        Ok(c)
    }

    pub fn source(&self) -> &FiniteAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteAlgebra {
        &self.target
    }

    pub fn rank(&self) -> usize {
        self.action.rows()
    }

    pub fn action(&self) -> &Matrix<Poly> {
        &self.action
    }

    pub fn gram(&self) -> &Matrix<Poly> {
        &self.gram
    }

    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let ex = &self.source;
        let annihilated = matrix::eval_poly(ex, self.target.modulus(), &self.action);
        if !matrix::is_zero_matrix(ex, &annihilated) {
            return Err(Violation::ActionNotAnnihilated);
        }
        if !self.gram.is_symmetric() {
            return Err(Violation::NotSymmetric);
        }
        if !ex.is_invertible(&self.gram) {
            return Err(Violation::Degenerate);
        }
        let gt = matrix::mul(ex, &self.gram, &self.action);
        let tg = matrix::mul(ex, &self.action.transpose(), &self.gram);
        if gt != tg {
            return Err(Violation::Unbalanced);
        }
        Ok(())
    }

    /// Identity of `E`: the diagonal `E` itself, rank 1 with the unit form.
    pub fn identity(e: &FiniteAlgebra) -> Correspondence {
        Correspondence::twist(e, &e.one()).expect("1 is a unit")
    }

    /// Graph of the algebra map `E_Y -> E_X` sending the generator of `E_Y`
    /// to `phi`: rank 1, `T = [phi]`, `G = [1]`.
    pub fn graph(source: &FiniteAlgebra, target: &FiniteAlgebra, phi: &Poly) -> Result<Correspondence> {
        if source.field() != target.field() {
            return Err(Violation::FieldMismatch.into());
        }
        let phi = source.element(phi)?;
        if !source.reduce(&target.modulus().compose(&phi)).is_zero() {
            return Err(Error::NotAlgebraMap(phi.to_string()));
        }
        Ok(Correspondence {
            source: source.clone(),
            target: target.clone(),
            action: Matrix::from_rows(vec![vec![phi]]).unwrap(),
            gram: Matrix::from_rows(vec![vec![source.one()]]).unwrap(),
        })
    }

    /// The correspondence `E -> pt` given by the structure map `k -> E`.
    pub fn to_point(e: &FiniteAlgebra) -> Correspondence {
        Correspondence::graph(e, &FiniteAlgebra::point(e.field()), &e.zero()).expect("0 is the image of t")
    }

    /// `⟨q⟩`: the identity of `E` with its form rescaled by the unit `q`.
    pub fn twist(e: &FiniteAlgebra, q: &Poly) -> Result<Correspondence> {
        let q = e.element(q)?;
        if !e.is_unit(&q) {
            return Err(Error::NotUnit(q.to_string()));
        }
        Ok(Correspondence {
            source: e.clone(),
            target: e.clone(),
            action: Matrix::from_rows(vec![vec![e.generator()]]).unwrap(),
            gram: Matrix::from_rows(vec![vec![q]]).unwrap(),
        })
    }

    /// The space on `D_X(M)` with dual basis: Gram `G⁻¹`, action `Tᵀ`.
    pub fn dual(&self) -> Result<Correspondence> {
        self.validate()?;
        let inv = self
            .source
            .inverse_matrix(&self.gram)
            .ok_or(Violation::Degenerate)?;
        Ok(Correspondence {
            source: self.source.clone(),
            target: self.target.clone(),
            action: self.action.transpose(),
            gram: inv,
        })
    }

    /// Forgets the target action of a correspondence out of the point.
    pub fn underlying_form(&self) -> Result<QuadSpace> {
        if !self.source.is_point() {
            return Err(Error::SourceNotPoint);
        }
        let field = self.source.field();
        QuadSpace::new(field, self.gram.map(|e| e.coeff(0)))
    }
}

/// `g ∘ f` for `f: X -> Y` and `g: Y -> Z`, realized on `M ⊗_{E_Y} N`.
///
/// Block `(i, j)` of the Gram is `G_f · H_ij(T_f)` and of the action is
/// `S_ij(T_f)`, where `H`, `S` are the Gram and action of `g`.
pub fn compose(g: &Correspondence, f: &Correspondence) -> Result<Correspondence> {
    if f.target != g.source {
        return Err(Error::ObjectMismatch(format!(
            "target of the first map is {}, source of the second is {}",
            f.target, g.source
        )));
    }
    let ex = &f.source;
    let (r, s) = (f.rank(), g.rank());
    let at_tf = |m: &Matrix<Poly>| -> Vec<Vec<Matrix<Poly>>> {
        (0..s)
            .map(|i| (0..s).map(|j| matrix::eval_poly(ex, &m[(i, j)], &f.action)).collect())
            .collect()
    };
    let h_at = at_tf(&g.gram);
    let s_at = at_tf(&g.action);
    let gram = matrix::from_blocks(s, r, |i, j| matrix::mul(ex, &f.gram, &h_at[i][j]));
    let action = matrix::from_blocks(s, r, |i, j| s_at[i][j].clone());
    let c = Correspondence {
        source: f.source.clone(),
        target: g.target.clone(),
        action,
        gram,
    };
    c.validate()?;
    Ok(c)
}

/// Checks that `p` (columns: images of the basis of `a` in the coordinates
/// of `b`) is an invertible, action-compatible isometry `a -> b`.
pub fn verify_isometry(a: &Correspondence, b: &Correspondence, p: &Matrix<Poly>) -> Result<()> {
    let ex = &a.source;
    if a.source != b.source || a.target != b.target {
        return Err(Error::ObjectMismatch("isometry between different hom-sets".into()));
    }
    if p.rows() != b.rank() || p.cols() != a.rank() {
        return Err(Error::Verification("witness has the wrong shape".into()));
    }
    if matrix::congruence(ex, p, &b.gram) != a.gram {
        return Err(Error::Verification("pairings are not preserved".into()));
    }
    if matrix::mul(ex, &b.action, p) != matrix::mul(ex, p, &a.action) {
        return Err(Error::Verification("actions are not intertwined".into()));
    }
    if !ex.is_invertible(p) {
        return Err(Error::Verification("witness is not invertible".into()));
    }
    Ok(())
}

/// Tensor reassociation `M ⊗ (N ⊗ K) -> (M ⊗ N) ⊗ K` between
/// `(h∘g)∘f` and `h∘(g∘f)`, verified.
pub fn reassociation_witness(
    h: &Correspondence,
    g: &Correspondence,
    f: &Correspondence,
) -> Result<Matrix<Poly>> {
    let left = compose(&compose(h, g)?, f)?;
    let right = compose(h, &compose(g, f)?)?;
    let ex = &f.source;
    let (r, s, w) = (f.rank(), g.rank(), h.rank());
    let n = r * s * w;
    // m_a ⊗ (n_i ⊗ k_p) sits at (p·s + i)·r + a; (m_a ⊗ n_i) ⊗ k_p at p·(r·s) + (i·r + a)
    let mut p = matrix::zeros(ex, n, n);
    for pk in 0..w {
        for i in 0..s {
            for a in 0..r {
                let from = (pk * s + i) * r + a;
                let to = pk * (r * s) + (i * r + a);
                p[(to, from)] = ex.one();
            }
        }
    }
    verify_isometry(&left, &right, &p)?;
    Ok(p)
}

/// The natural isomorphism `ν: D_X(M) ⊗ D_Y(N) -> D_X(M ⊗ N)` between
/// `compose(dual g, dual f)` and `dual(compose(g, f))`, verified.
///
/// `ν(m_a* ⊗ n_i*)` is the functional `m_b ⊗ n_j ↦ m_a*(n_i*(n_j) · m_b)`.
pub fn duality_witness(g: &Correspondence, f: &Correspondence) -> Result<Matrix<Poly>> {
    let dual_of_composite = compose(g, f)?.dual()?;
    let composite_of_duals = compose(&g.dual()?, &f.dual()?)?;
    let ex = &f.source;
    let ey = &g.source;
    let (r, s) = (f.rank(), g.rank());
    let n = r * s;
    let mut p = matrix::zeros(ex, n, n);
    for i in 0..s {
        for a in 0..r {
            let col = i * r + a;
            for j in 0..s {
                let pairing = if i == j { ey.one() } else { ey.zero() };
                let acting = matrix::eval_poly(ex, &pairing, &f.action);
                for b in 0..r {
                    p[(j * r + b, col)] = acting[(a, b)].clone();
                }
            }
        }
    }
    verify_isometry(&composite_of_duals, &dual_of_composite, &p)?;
    Ok(p)
}

/// Isometry `⟨w²⟩ ∘ f -> f` given by multiplication by `w`, verified.
pub fn square_twist_witness(f: &Correspondence, w: &Poly) -> Result<Matrix<Poly>> {
    let e = &f.target;
    let w = e.element(w)?;
    let twisted = compose(&Correspondence::twist(e, &e.mul(&w, &w))?, f)?;
    let p = matrix::eval_poly(&f.source, &w, &f.action);
    verify_isometry(&twisted, f, &p)?;
    Ok(p)
}

/// Canonical evaluation map `M -> D(D(M))`, verified.
pub fn double_dual_witness(c: &Correspondence) -> Result<Matrix<Poly>> {
    let dd = c.dual()?.dual()?;
    let p = matrix::identity(&c.source, c.rank());
    verify_isometry(c, &dd, &p)?;
    Ok(p)
}

impl fmt::Display for Correspondence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank-{} correspondence {} -> {}",
            self.rank(),
            self.source,
            self.target
        )
    }
}

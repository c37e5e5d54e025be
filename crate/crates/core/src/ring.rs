use std::fmt::Debug;

/// A commutative k-algebra used as the coefficient ring of matrices.
///
/// Elements carry no ring context of their own, so the ring value is passed
/// alongside them (`Field` for scalars, `FiniteAlgebra` for `k[t]/(f)`).
pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Structure map from the base field.
    fn embed(&self, c: &crate::field::FieldElem) -> Self::Elem;
}

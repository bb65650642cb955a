//! Exact coefficient fields, sparse polynomials and dense linear algebra.

mod field;
mod linalg;
mod packed;
mod poly;

use std::fmt::Debug;

pub use field::{FieldSpec, Rational, Scalar};
pub use linalg::ScalarMatrix;
pub use packed::{PackedPoly, VarIndex, MAX_PACKED_EXPONENT, MAX_PACKED_VARS};
pub use poly::{Family, Monomial, Poly, Variable};

/// Commutative ring elements that know their ground field. Implemented by
/// [`Scalar`] (numeric evaluation) and [`Poly`] (symbolic evaluation), so
/// matrix code runs unchanged over both.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero(field: FieldSpec) -> Self;
    fn one(field: FieldSpec) -> Self;
    fn from_scalar(s: &Scalar) -> Self;
    fn field(&self) -> FieldSpec;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    fn from_i64(field: FieldSpec, v: i64) -> Self {
        Self::from_scalar(&Scalar::from_i64(field, v))
    }

    /// `self += a * b`.
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }
}

impl Ring for Scalar {
    fn zero(field: FieldSpec) -> Self {
        Scalar::zero(field)
    }
    fn one(field: FieldSpec) -> Self {
        Scalar::one(field)
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn field(&self) -> FieldSpec {
        Scalar::field(self)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
}

impl Ring for Poly {
    fn zero(field: FieldSpec) -> Self {
        Poly::zero(field)
    }
    fn one(field: FieldSpec) -> Self {
        Poly::one(field)
    }
    fn from_scalar(s: &Scalar) -> Self {
        Poly::constant(s)
    }
    fn field(&self) -> FieldSpec {
        Poly::field(self)
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        self.add_product_assign(a, b).expect("operands over one field");
    }
}

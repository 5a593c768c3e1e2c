//! Elements of a cyclic field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::CyclicField;
use crate::arith::{Rat, Scalar, UPoly};
use crate::error::{Error, Result};

/// An element of a [`CyclicField`], as coordinates on `1, t, …, t^{d-1}`.
#[derive(Clone)]
pub struct FieldElem {
    field: CyclicField,
    coords: Vec<Rat>,
}

impl FieldElem {
    pub(crate) fn new(field: &CyclicField, coords: Vec<Rat>) -> Self {
        assert_eq!(coords.len(), field.degree(), "coordinate count");
        FieldElem { field: field.clone(), coords }
    }

    pub fn field(&self) -> &CyclicField {
        &self.field
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rat(&self) -> Option<Rat> {
        self.coords[1..].iter().all(Rat::is_zero).then(|| self.coords[0].clone())
    }

    fn same_field(&self, other: &FieldElem) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn try_add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        Ok(self.with(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn try_sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        Ok(self.with(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()))
    }

    pub fn try_mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        Ok(self.with(self.field.basis().mul(&self.coords, &other.coords)))
    }

    pub fn inv(&self) -> Result<FieldElem> {
        self.field.basis().inv(&self.coords).map(|c| self.with(c)).ok_or(Error::DivisionByZero)
    }

    fn with(&self, coords: Vec<Rat>) -> FieldElem {
        FieldElem { field: self.field.clone(), coords }
    }

    pub fn scale(&self, r: &Rat) -> FieldElem {
        self.with(self.coords.iter().map(|c| c * r).collect())
    }

    /// `σ^k(self)`, with `k` taken modulo the degree.
    pub fn galois(&self, k: i64) -> FieldElem {
        let d = self.field.degree() as i64;
        let k = k.rem_euclid(d) as usize;
        if k == 0 {
            return self.clone();
        }
        let coords = self.field.galois_matrix(k).mul_vec(&self.coords).expect("square Galois matrix");
        self.with(coords)
    }

    /// The conjugates `σ^k(self)` for `k = 0..d`.
    pub fn conjugates(&self) -> Vec<FieldElem> {
        (0..self.field.degree() as i64).map(|k| self.galois(k)).collect()
    }

    /// The product of all conjugates.
    pub fn norm(&self) -> Rat {
        let prod = self.conjugates().iter().skip(1).fold(self.clone(), |acc, c| &acc * c);
        prod.as_rat().expect("norms are Galois invariant")
    }

    /// The sum of all conjugates.
    pub fn trace(&self) -> Rat {
        let sum = self.conjugates().iter().skip(1).fold(self.clone(), |acc, c| &acc + c);
        sum.as_rat().expect("traces are Galois invariant")
    }

    pub fn as_poly(&self) -> UPoly {
        UPoly::from_coeffs(self.coords.clone())
    }

    /// Coordinates as `"num/den"` strings.
    pub fn to_wire(&self) -> Vec<String> {
        self.coords.iter().map(Rat::to_wire).collect()
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.field == other.field
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_poly())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.as_poly())
    }
}

// The operators panic on elements of different fields; the `try_` methods
// report that as an error instead.
impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        self.try_add(rhs).expect("operands in the same field")
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self.try_sub(rhs).expect("operands in the same field")
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        self.try_mul(rhs).expect("operands in the same field")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.with(self.coords.iter().map(|c| -c).collect())
    }
}

impl Scalar for FieldElem {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv_ref(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        self.field.from_rat(r.clone())
    }
    fn scale(&self, r: &Rat) -> Self {
        FieldElem::scale(self, r)
    }
}

/// Operations accepted by [`elem_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElemOp {
    Add,
    Mul,
    Inv,
    Norm,
    Trace,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ElemValue {
    Elem(FieldElem),
    Rat(Rat),
}

/// Uniform entry point for field arithmetic; `b` is required for the
/// binary operations and ignored otherwise.
pub fn elem_arith(a: &FieldElem, b: Option<&FieldElem>, op: ElemOp) -> Result<ElemValue> {
    let rhs = || b.ok_or_else(|| Error::Invalid(format!("{op:?} needs two operands")));
    Ok(match op {
        ElemOp::Add => ElemValue::Elem(a.try_add(rhs()?)?),
        ElemOp::Mul => ElemValue::Elem(a.try_mul(rhs()?)?),
        ElemOp::Inv => ElemValue::Elem(a.inv()?),
        ElemOp::Norm => ElemValue::Rat(a.norm()),
        ElemOp::Trace => ElemValue::Rat(a.trace()),
    })
}

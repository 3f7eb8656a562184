use std::fmt;
use std::ops::{Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// A 2x2 integer matrix `[[a, b], [c, d]]` with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl IntMat2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        IntMat2 { a, b, c, d }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        IntMat2::from_i64(1, 0, 0, 1)
    }

    /// The elementary monodromy factor `[[0, -1], [1, d]]`.
    pub fn elementary(d: i64) -> Self {
        IntMat2::from_i64(0, -1, 1, d)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn transpose(&self) -> Self {
        IntMat2::new(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    /// Inverse of a unimodular matrix; `None` when `det` is not `±1`.
    pub fn unimodular_inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.abs() != BigInt::one() {
            return None;
        }
        Some(IntMat2::new(
            &self.d * &det,
            -&self.b * &det,
            -&self.c * &det,
            &self.a * &det,
        ))
    }

    /// Conjugate by the coordinate swap `[[0, 1], [1, 0]]`, i.e. the same
    /// linear map written in the reversed basis.
    pub fn swap_basis(&self) -> Self {
        IntMat2::new(self.d.clone(), self.c.clone(), self.b.clone(), self.a.clone())
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64(&self) -> Option<[i64; 4]> {
        Some([
            self.a.to_i64()?,
            self.b.to_i64()?,
            self.c.to_i64()?,
            self.d.to_i64()?,
        ])
    }

    pub fn rows(&self) -> [[BigInt; 2]; 2] {
        [
            [self.a.clone(), self.b.clone()],
            [self.c.clone(), self.d.clone()],
        ]
    }
}

impl<'a> Mul<&'a IntMat2> for &'a IntMat2 {
    type Output = IntMat2;
    fn mul(self, o: &'a IntMat2) -> IntMat2 {
        IntMat2::new(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }
}

impl Mul for IntMat2 {
    type Output = IntMat2;
    fn mul(self, o: IntMat2) -> IntMat2 {
        &self * &o
    }
}

impl<'a> Sub<&'a IntMat2> for &'a IntMat2 {
    type Output = IntMat2;
    fn sub(self, o: &'a IntMat2) -> IntMat2 {
        IntMat2::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c, &self.d - &o.d)
    }
}

impl Neg for &IntMat2 {
    type Output = IntMat2;
    fn neg(self) -> IntMat2 {
        IntMat2::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl fmt::Display for IntMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Serializes as `[[a,b],[c,d]]`. Entries that do not fit in `i64` become
/// decimal strings so that JSON consumers never lose precision.
impl Serialize for IntMat2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&[BigJson(&self.a), BigJson(&self.b)])?;
        seq.serialize_element(&[BigJson(&self.c), BigJson(&self.d)])?;
        seq.end()
    }
}

/// JSON-friendly wrapper for a big integer.
pub struct BigJson<'a>(pub &'a BigInt);

impl Serialize for BigJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

/// `serialize_with` helper for big-integer fields.
pub fn serialize_big<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    BigJson(v).serialize(s)
}

/// Same convention as [`BigJson`] for `i128` values.
pub fn serialize_wide<S: Serializer>(v: &i128, s: S) -> Result<S::Ok, S::Error> {
    match i64::try_from(*v) {
        Ok(v) => s.serialize_i64(v),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

pub fn serialize_opt_wide<S: Serializer>(v: &Option<i128>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => serialize_wide(v, s),
        None => s.serialize_none(),
    }
}

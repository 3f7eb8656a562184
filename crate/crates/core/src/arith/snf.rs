use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::intmat::{BigJson, IntMat2};

/// Invariant factors `s1 | s2 | ...` of a finitely generated abelian group.
///
/// Factors equal to 1 are dropped, so the trivial group is the empty list.
/// A factor of 0 stands for an infinite cyclic summand and always sorts last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    factors: Vec<BigInt>,
}

impl AbelianInvariants {
    /// Builds from a diagonal already in Smith form (each entry divides the
    /// next, zeros last). Units are discarded.
    fn from_diagonal(diag: impl IntoIterator<Item = BigInt>) -> Self {
        let factors = diag.into_iter().filter(|f| !f.is_one()).collect();
        AbelianInvariants { factors }
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|f| !f.is_zero())
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// Group order, or `None` for an infinite group.
    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.factors.iter().product())
    }

    /// Largest element order, or `None` for an infinite group.
    pub fn exponent(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.factors.last().cloned().unwrap_or_else(BigInt::one))
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|s| if s.is_zero() { "Z".to_string() } else { format!("Z/{s}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for AbelianInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let inv: Vec<BigJson<'_>> = self.factors.iter().map(BigJson).collect();
        let mut st = s.serialize_struct("AbelianInvariants", 1)?;
        st.serialize_field("invariants", &inv)?;
        st.end()
    }
}

/// Elementary divisors `(e1, e2)` of a 2x2 integer matrix, `e1 | e2`.
///
/// `e1` is the gcd of the entries and `e1 * e2 = |det|`; a singular nonzero
/// matrix gives `(e1, 0)` and the zero matrix gives `(0, 0)`.
pub fn elementary_divisors(m: &IntMat2) -> (BigInt, BigInt) {
    let e1 = m.a.gcd(&m.b).gcd(&m.c).gcd(&m.d);
    if e1.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let e2 = m.det().abs() / &e1;
    (e1, e2)
}

/// Invariant factors of the cokernel of `m` acting on `Z^2`.
pub fn smith_normal_form(m: &IntMat2) -> AbelianInvariants {
    let (e1, e2) = elementary_divisors(m);
    AbelianInvariants::from_diagonal([e1, e2])
}

//! Local complete intersection cusps: the hypersurface family `T(p,q,r)` and
//! the codimension-two family `Pi(p,q,r,s)`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::blowup::reduce_ones;
use crate::cycle::{AnticanSeq, CuspCycle};
use crate::error::{CuspError, Result};

/// Normal-form equation data of an lci cusp.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum LciEquation {
    /// `x^p + y^q + z^r - xyz = 0`, `1/p + 1/q + 1/r < 1`.
    T { p: i64, q: i64, r: i64 },
    /// `x^p + w^r = yz, y^q + z^s = xw`, `(1/p + 1/r)(1/q + 1/s) < 1`.
    Pi { p: i64, q: i64, r: i64, s: i64 },
}

impl LciEquation {
    pub fn t(p: i64, q: i64, r: i64) -> Result<Self> {
        if p < 2 || q < 2 || r < 2 {
            return Err(CuspError::InvalidTriple(format!("({p},{q},{r}) has an entry < 2")));
        }
        // 1/p + 1/q + 1/r < 1 without division; widened to avoid overflow.
        let (p_, q_, r_) = (p as i128, q as i128, r as i128);
        if q_ * r_ + p_ * r_ + p_ * q_ >= p_ * q_ * r_ {
            return Err(CuspError::InvalidTriple(format!(
                "1/{p} + 1/{q} + 1/{r} is not below 1"
            )));
        }
        Ok(LciEquation::T { p, q, r })
    }

    pub fn pi(p: i64, q: i64, r: i64, s: i64) -> Result<Self> {
        if p < 2 || q < 2 || r < 2 || s < 2 {
            return Err(CuspError::InvalidQuadruple(format!(
                "({p},{q},{r},{s}) has an entry < 2"
            )));
        }
        let (p_, q_, r_, s_) = (p as i128, q as i128, r as i128, s as i128);
        if (r_ + p_) * (s_ + q_) >= p_ * q_ * r_ * s_ {
            return Err(CuspError::InvalidQuadruple(format!(
                "(1/{p} + 1/{r})(1/{q} + 1/{s}) is not below 1"
            )));
        }
        Ok(LciEquation::Pi { p, q, r, s })
    }
}

impl fmt::Display for LciEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            LciEquation::T { p, q, r } => write!(f, "x^{p}+y^{q}+z^{r}-xyz=0"),
            LciEquation::Pi { p, q, r, s } => write!(f, "x^{p}+w^{r}=yz, y^{q}+z^{s}=xw"),
        }
    }
}

/// Cycle of the hypersurface cusp `T(p,q,r)`: the dual of the reduced
/// triangle `(r-1, q-1, p-1)`.
pub fn t_cycle(p: i64, q: i64, r: i64) -> Result<CuspCycle> {
    LciEquation::t(p, q, r)?;
    let tri = AnticanSeq::new(vec![r - 1, q - 1, p - 1])?;
    let reduced = reduce_ones(&tri).map_err(|e| CuspError::InvalidTriple(e.to_string()))?;
    let cycle = CuspCycle::new(reduced.into_vec())
        .map_err(|e| CuspError::InvalidTriple(format!("reduced triangle is not a cycle: {e}")))?;
    Ok(cycle.dual())
}

/// Known `Pi` cycles. Only equation/cycle pairs that have been checked are
/// listed; anything else is reported as unknown.
type PiKey = (i64, i64, i64, i64);

const PI_TABLE: [(PiKey, &[i64]); 2] = [
    ((2, 2, 2, 3), &[8]),
    ((2, 3, 4, 6), &[4, 3, 2, 3, 2, 2, 2]),
];

/// Cycle of `Pi(p,q,r,s)` when tabulated, `None` otherwise.
pub fn pi_cycle(p: i64, q: i64, r: i64, s: i64) -> Result<Option<CuspCycle>> {
    LciEquation::pi(p, q, r, s)?;
    Ok(PI_TABLE
        .iter()
        .find(|(k, _)| *k == (p, q, r, s))
        .map(|(_, c)| CuspCycle::new(c.to_vec()).expect("table entries are cycles")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum LciClass {
    /// Multiplicity at most 3. The witness is absent if the bounded search
    /// found none.
    Hypersurface { witness: Option<LciEquation> },
    /// Multiplicity 4.
    CompleteIntersection { witness: Option<LciEquation> },
    /// Multiplicity at least 5.
    NotLci,
}

/// `(a, b, c) -> abc - a - b - c`, the trace of a three-entry word.
fn triangle_trace(a: i64, b: i64, c: i64) -> i128 {
    let (a, b, c) = (a as i128, b as i128, c as i128);
    a * b * c - a - b - c
}

/// Karras classification via the multiplicity rule, with a witness equation
/// when one is found.
pub fn classify(c: &CuspCycle) -> LciClass {
    let mult = c.multiplicity();
    if mult <= 3 {
        return LciClass::Hypersurface { witness: hypersurface_witness(c) };
    }
    if mult == 4 {
        let witness = PI_TABLE
            .iter()
            .find(|(_, w)| c.same_class(&CuspCycle::new(w.to_vec()).expect("table"), false))
            .map(|((p, q, r, s), _)| LciEquation::Pi { p: *p, q: *q, r: *r, s: *s });
        return LciClass::CompleteIntersection { witness };
    }
    LciClass::NotLci
}

/// First ordered triple in `[2, mult + len + 8]^3` whose cycle is a rotation
/// of `c`. Triples are prefiltered by trace, which corner moves and duality
/// both keep. Multiplicity above 3 rules out a hypersurface outright.
pub fn hypersurface_witness(c: &CuspCycle) -> Option<LciEquation> {
    let mult = i64::try_from(c.multiplicity()).ok().filter(|&m| m <= 3)?;
    let bound = mult.max(0) + i64::try_from(c.len()).ok()? + 8;
    let target: BigInt = c.trace();
    let target: i128 = target.try_into().ok()?;
    for p in 2..=bound {
        for q in 2..=bound {
            for r in 2..=bound {
                if triangle_trace(r - 1, q - 1, p - 1) != target {
                    continue;
                }
                match t_cycle(p, q, r) {
                    Ok(cand) if cand.same_class(c, false) => {
                        return Some(LciEquation::T { p, q, r })
                    }
                    _ => {}
                }
            }
        }
    }
    None
}

pub fn is_lci(c: &CuspCycle) -> bool {
    c.multiplicity() <= 4
}

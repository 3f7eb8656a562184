//! Covers and quotients of cusps: lci covers by a one-vertex cycle,
//! recognition of cycles from matrices, quotients by torsion subgroups and
//! trace families.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    eigen_unit, hj_expansion, mult_matrix, surd_from_cycle, IntMat2, QuadModule, QuadSurd,
};
use crate::cycle::{monodromy, trace, CuspCycle};
use crate::error::{CuspError, Result};

/// Sign of the top-left entry of the base monodromy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrientationCase {
    Negative,
    Positive,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NWCoverResult {
    pub trace: i64,
    pub cover_cycle: CuspCycle,
    pub cover_dual: CuspCycle,
    #[serde(serialize_with = "crate::arith::intmat::serialize_big")]
    pub sublattice_index: BigInt,
    pub orientation_case: OrientationCase,
}

/// Lci cover of a cusp by the one-vertex cycle `(t)`, `t` the trace.
///
/// The sublattice index is `|a|` for monodromy `[[a, b], [c, d]]`, or 1 when
/// `a = 0`.
pub fn nw_cover(c: &CuspCycle) -> Result<NWCoverResult> {
    let sigma = c.monodromy();
    let t = sigma.trace();
    if t.abs() <= BigInt::from(2) {
        return Err(CuspError::NotHyperbolic);
    }
    let t = t
        .to_i64()
        .ok_or_else(|| CuspError::Internal(format!("trace {t} exceeds i64")))?;
    if t < 3 {
        return Err(CuspError::TraceTooSmall(t));
    }
    let cover_cycle = CuspCycle::new(vec![t])?;
    let cover_dual = cover_cycle.dual();
    let (sublattice_index, orientation_case) = match sigma.a.sign() {
        num_bigint::Sign::Minus => (sigma.a.abs(), OrientationCase::Negative),
        num_bigint::Sign::Plus => (sigma.a.clone(), OrientationCase::Positive),
        num_bigint::Sign::NoSign => (BigInt::one(), OrientationCase::Zero),
    };
    Ok(NWCoverResult {
        trace: t,
        cover_cycle,
        cover_dual,
        sublattice_index,
        orientation_case,
    })
}

/// Cycle whose monodromy is conjugate to `m` in `SL2(Z)`, in canonical
/// rotation.
pub fn matrix_to_cycle(m: &IntMat2) -> Result<CuspCycle> {
    let det = m.det();
    if !det.is_one() {
        return Err(CuspError::NotSL2(det.to_string()));
    }
    let t = m.trace();
    if t.abs() <= BigInt::from(2) {
        return Err(CuspError::NotHyperbolic);
    }
    if t.is_negative() {
        return Err(CuspError::NegativeTrace);
    }
    // c != 0 since c = 0 forces a = d = +-1.
    let nu = eigen_unit(&t)?.conj();
    let x = nu
        .checked_sub(&QuadSurd::integer(m.d.clone()))?
        .checked_div(&QuadSurd::integer(m.c.clone()))?;
    let omega = -x;
    let period = hj_expansion(&omega)?.period;
    let base = CuspCycle::from_big(&period)?;
    // The expansion gives the primitive word; m may be a power of it.
    let mut word = base.entries().to_vec();
    while trace(&word) < t {
        word.extend_from_slice(base.entries());
    }
    if trace(&word) != t {
        return Err(CuspError::Internal(format!(
            "no power of ({base}) has trace {t}"
        )));
    }
    Ok(CuspCycle::new(word)?.canonical())
}

/// Quotient cusp by the order-`k` subgroup of the cyclic torsion group.
///
/// With `M = Z w + Z` (`w` the cycle's surd) and `e` the unit of the
/// trace, the torsion group is `(1/(e - 1)) M / M`. The order-`k` subgroup
/// spans `M'`, and the quotient cycle is read from `e` acting on `M'` in the
/// oriented basis taken in reverse order.
pub fn quotient_cycle(c: &CuspCycle, k: i64) -> Result<CuspCycle> {
    let torsion = c.torsion_group()?;
    if !torsion.is_cyclic() {
        return Err(CuspError::NonCyclicTorsion(torsion.to_string()));
    }
    let n = torsion.order().expect("hyperbolic torsion is finite");
    let bad_order = || CuspError::BadOrder {
        order: k,
        group_order: n.to_string(),
    };
    if k < 1 || !(&n % k).is_zero() {
        return Err(bad_order());
    }
    let omega = surd_from_cycle(c.entries())?;
    let one = QuadSurd::integer(1);
    let m = QuadModule::new(omega.clone(), one.clone())?;
    let eps = eigen_unit(&c.trace())?;
    let lambda = eps.checked_sub(&one)?.recip()?;
    let v = torsion_generator(&m, &omega, &lambda, &n)?;
    let w = v.checked_mul(&QuadSurd::integer(&n / k))?;
    let (g1, g2) = m.basis();
    let sub = QuadModule::from_generators(&[g1.clone(), g2.clone(), w])?;
    let action = mult_matrix(&sub, &eps)?;
    matrix_to_cycle(&action.swap_basis())
}

/// An element of `lambda M` whose class generates `lambda M / M` (order `n`).
fn torsion_generator(
    m: &QuadModule,
    omega: &QuadSurd,
    lambda: &QuadSurd,
    n: &BigInt,
) -> Result<QuadSurd> {
    let lw = lambda.checked_mul(omega)?;
    let limit = n.to_u64().unwrap_or(u64::MAX).min(10_000);
    for j in 0..limit {
        let j = QuadSurd::integer(j);
        for cand in [
            lw.checked_add(&lambda.checked_mul(&j)?)?,
            lambda.checked_add(&lw.checked_mul(&j)?)?,
        ] {
            if m.order_modulo(&cand).as_ref() == Some(n) {
                return Ok(cand);
            }
        }
    }
    Err(CuspError::Internal("no generator of the torsion group found".into()))
}

/// All canonical cusp cycles of length at most `max_len` with trace `t`.
pub fn enumerate_cycles_with_trace(t: i64, max_len: usize) -> BTreeSet<CuspCycle> {
    let mut out = BTreeSet::new();
    if t < 3 {
        return out;
    }
    let target = BigInt::from(t);
    let mut word = Vec::with_capacity(max_len);
    extend(&mut word, &target, t, max_len, &mut out);
    out
}

// With entries >= 2 the trace obeys the continuant recurrence
// K_m = d_m K_{m-1} - K_{m-2}, which is nondecreasing. Hence raising an
// entry or appending one never lowers the trace: every entry is at most t,
// and a prefix whose trace exceeds t cannot be completed.
fn extend(
    word: &mut Vec<i64>,
    target: &BigInt,
    t: i64,
    max_len: usize,
    out: &mut BTreeSet<CuspCycle>,
) {
    if !word.is_empty() {
        let tr = trace(word);
        if &tr > target {
            return;
        }
        if &tr == target && crate::cycle::canonical_word(word, false) == *word {
            if let Ok(c) = CuspCycle::new(word.clone()) {
                out.insert(c);
            }
        }
    }
    if word.len() == max_len {
        return;
    }
    for d in 2..=t {
        word.push(d);
        let over = trace(word) > *target;
        extend(word, target, t, max_len, out);
        word.pop();
        if over {
            break;
        }
    }
}

/// Necessary condition for one cusp to cover another: equal traces.
pub fn cover_compatible(cover: &CuspCycle, base: &CuspCycle) -> bool {
    cover.is_hyperbolic() && base.is_hyperbolic() && cover.trace() == base.trace()
}

/// `N_r = F(d_{r-1}) ... F(d_0)` with `F(d) = [[d, 1], [-1, 0]]`; `N_0 = I`.
/// The full product satisfies `(w, 1) N_n = e (w, 1)`.
pub fn chart_action_matrix(c: &CuspCycle, r: usize) -> Result<IntMat2> {
    if r > c.len() {
        return Err(CuspError::IndexOutOfRange { index: r, len: c.len() });
    }
    Ok(c.entries()[..r]
        .iter()
        .fold(IntMat2::identity(), |acc, &d| &IntMat2::from_i64(d, 1, -1, 0) * &acc))
}

/// `monodromy` of the one-vertex cycle `(t)`.
pub fn nw_matrix(t: i64) -> IntMat2 {
    monodromy(&[t])
}

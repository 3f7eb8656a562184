use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::intmat::IntMat2;
use super::surd::QuadSurd;
use crate::error::{CuspError, Result};

const MAX_STEPS: usize = 1_000_000;

/// Preperiod and minimal period of a minus continued fraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HjExpansion {
    pub preperiod: Vec<BigInt>,
    pub period: Vec<BigInt>,
}

impl HjExpansion {
    /// Period entries as `i64`, if they fit.
    pub fn period_i64(&self) -> Option<Vec<i64>> {
        self.period.iter().map(|d| d.to_i64()).collect()
    }
}

/// The purely periodic `w = [[d0, d1, ..., d_{n-1}]]` in the minus continued
/// fraction `w = d0 - 1/(d1 - 1/(... - 1/w))`, as the root `> 1` of its
/// quadratic equation.
pub fn surd_from_cycle(period: &[i64]) -> Result<QuadSurd> {
    if period.is_empty() {
        return Err(CuspError::EmptySequence);
    }
    if let Some(bad) = period.iter().find(|&&d| d < 2) {
        return Err(CuspError::InvalidCycle(format!("entry {bad} < 2")));
    }
    if period.iter().all(|&d| d == 2) {
        return Err(CuspError::ParabolicCycle);
    }
    // w is the attracting fixed point of z -> P z, P = prod [[d,-1],[1,0]].
    let p = period.iter().fold(IntMat2::identity(), |acc, &d| {
        &acc * &IntMat2::from_i64(d, -1, 1, 0)
    });
    debug_assert!(p.c.is_positive());
    let t = p.trace();
    QuadSurd::with_radicand_factors(&p.a - &p.d, 1.into(), &p.c * 2, &[&t - 2, &t + 2])
}

/// Minus continued fraction `a_k = ceil(x_k)`, `x_{k+1} = 1 / (a_k - x_k)`,
/// split into preperiod and minimal period.
pub fn hj_expansion(x: &QuadSurd) -> Result<HjExpansion> {
    if x.is_rational() {
        return Err(CuspError::RationalInput);
    }
    let mut seen: HashMap<QuadSurd, usize> = HashMap::new();
    let mut digits: Vec<BigInt> = Vec::new();
    let mut cur = x.clone();
    for step in 0..MAX_STEPS {
        if let Some(&start) = seen.get(&cur) {
            let period = digits.split_off(start);
            return Ok(HjExpansion {
                preperiod: digits,
                period,
            });
        }
        seen.insert(cur.clone(), step);
        let a = cur.ceil();
        let next = (&QuadSurd::integer(a.clone()) - &cur).recip()?;
        digits.push(a);
        cur = next;
    }
    Err(CuspError::Internal(format!(
        "continued fraction did not cycle within {MAX_STEPS} steps"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(p: i64, q: i64, r: i64, d: i64) -> QuadSurd {
        QuadSurd::from_i64(p, q, r, d).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn known_surds() {
        assert_eq!(surd_from_cycle(&[2, 5]).unwrap(), s(5, 1, 5, 15));
        assert_eq!(surd_from_cycle(&[7]).unwrap(), s(7, 3, 2, 5));
        assert_eq!(surd_from_cycle(&[2, 2]), Err(CuspError::ParabolicCycle));
        assert!(matches!(surd_from_cycle(&[1, 5]), Err(CuspError::InvalidCycle(_))));
    }

    #[test]
    fn satisfies_defining_equation() {
        // w = 2 - 1/(5 - 1/w)
        let w = surd_from_cycle(&[2, 5]).unwrap();
        let inner = &QuadSurd::integer(5) - &w.recip().unwrap();
        assert_eq!(&QuadSurd::integer(2) - &inner.recip().unwrap(), w);
    }

    #[test]
    fn expansions() {
        let e = hj_expansion(&s(5, 1, 5, 15)).unwrap();
        assert!(e.preperiod.is_empty());
        assert_eq!(e.period, ints(&[2, 5]));
        let e = hj_expansion(&s(7, 3, 2, 5)).unwrap();
        assert_eq!(e.period, ints(&[7]));
        // sqrt(2) = 2 - 1/(1 + sqrt 2 ...) picks up a preperiod.
        let e = hj_expansion(&s(0, 1, 1, 2)).unwrap();
        assert!(!e.preperiod.is_empty());
        assert_eq!(hj_expansion(&QuadSurd::integer(3)), Err(CuspError::RationalInput));
    }

    fn is_rotation(a: &[BigInt], b: &[i64]) -> bool {
        a.len() == b.len()
            && (0..b.len()).any(|k| (0..b.len()).all(|i| a[i] == BigInt::from(b[(i + k) % b.len()])))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn roundtrip(c in prop::collection::vec(2i64..=9, 1..=10)) {
            prop_assume!(c.iter().any(|&d| d >= 3));
            let w = surd_from_cycle(&c).unwrap();
            let e = hj_expansion(&w).unwrap();
            prop_assert!(e.preperiod.is_empty());
            // The period may be a proper divisor of c when c is a power.
            let k = e.period.len();
            prop_assert_eq!(c.len() % k, 0);
            let unrolled: Vec<BigInt> = e.period.iter().cycle().take(c.len()).cloned().collect();
            prop_assert!(is_rotation(&unrolled, &c));
            let back = surd_from_cycle(&e.period_i64().unwrap()).unwrap();
            prop_assert_eq!(back, w);
        }
    }
}

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{CuspError, Result};

/// Exact real quadratic number `(p + q*sqrt(d)) / r`.
///
/// Canonical form: `r > 0`, `gcd(p, q, r) = 1`, `d >= 2` square-free, and
/// `q = 0` forces `d = 1`. Canonical values compare structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    d: BigInt,
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Splits `n > 0` as `s^2 * k` with `k` square-free.
///
/// Trial division runs to `min(sqrt(n), 10^6)`; the leftover cofactor is then
/// either a perfect square or square-free whenever it is below `10^18`.
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    squarefree_split_product(std::slice::from_ref(n))
}

/// Like [`squarefree_split`] for the product of `factors`, splitting each
/// factor separately. Exact whenever every factor is below `10^18`, even if
/// the product is not.
pub fn squarefree_split_product(factors: &[BigInt]) -> (BigInt, BigInt) {
    let mut root = BigInt::one();
    let mut exps: std::collections::BTreeMap<u64, u32> = Default::default();
    let mut cofactors: Vec<BigInt> = Vec::new();
    for f in factors {
        let n = f.abs();
        if n.is_zero() {
            return (BigInt::zero(), BigInt::one());
        }
        let n = match n.to_u128() {
            Some(small) => BigInt::from(trial_divide_u128(small, &mut exps)),
            None => trial_divide_big(n, &mut exps),
        };
        if n.is_one() {
            continue;
        }
        let s = n.sqrt();
        if &s * &s == n {
            root *= s;
        } else {
            cofactors.push(n);
        }
    }
    for (p, e) in exps {
        root *= BigInt::from(p).pow(e / 2);
        if e % 2 == 1 {
            cofactors.push(BigInt::from(p));
        }
    }
    // Each cofactor is square-free; fold them pairwise via gcds.
    let mut kernel = BigInt::one();
    for c in cofactors {
        let g = kernel.gcd(&c);
        root *= &g;
        kernel = (kernel / &g) * (c / &g);
    }
    (root, kernel)
}

fn next_trial(p: u64) -> u64 {
    if p == 2 {
        3
    } else {
        p + 2
    }
}

fn trial_divide_u128(mut n: u128, exps: &mut std::collections::BTreeMap<u64, u32>) -> u128 {
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && (p as u128) * (p as u128) <= n {
        while n.is_multiple_of(p as u128) {
            n /= p as u128;
            *exps.entry(p).or_default() += 1;
        }
        p = next_trial(p);
    }
    n
}

fn trial_divide_big(mut n: BigInt, exps: &mut std::collections::BTreeMap<u64, u32>) -> BigInt {
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let pb = BigInt::from(p);
        if &pb * &pb > n {
            break;
        }
        while (&n % &pb).is_zero() {
            n /= &pb;
            *exps.entry(p).or_default() += 1;
        }
        p = next_trial(p);
    }
    n
}

impl QuadSurd {
    /// `(p + q*sqrt(d)) / r`, canonicalized. `d` must be positive.
    pub fn new(p: BigInt, q: BigInt, r: BigInt, d: BigInt) -> Result<Self> {
        if r.is_zero() {
            return Err(CuspError::Internal("zero denominator".into()));
        }
        if !d.is_positive() {
            return Err(CuspError::Internal(format!("radicand {d} is not positive")));
        }
        let (s, k) = squarefree_split(&d);
        Ok(Self::from_split(p, q * s, r, k))
    }

    /// Same as [`QuadSurd::new`] but with the radicand given as a product.
    pub fn with_radicand_factors(p: BigInt, q: BigInt, r: BigInt, d: &[BigInt]) -> Result<Self> {
        if r.is_zero() {
            return Err(CuspError::Internal("zero denominator".into()));
        }
        let (s, k) = squarefree_split_product(d);
        if s.is_zero() || d.iter().filter(|f| f.is_negative()).count() % 2 == 1 {
            return Err(CuspError::Internal("radicand is not positive".into()));
        }
        Ok(Self::from_split(p, q * s, r, k))
    }

    fn from_split(mut p: BigInt, mut q: BigInt, mut r: BigInt, mut d: BigInt) -> Self {
        if d.is_one() {
            p += &q;
            q = BigInt::zero();
        }
        if q.is_zero() {
            d = BigInt::one();
        }
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        QuadSurd { p, q, r, d }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        QuadSurd {
            p: n.into(),
            q: BigInt::zero(),
            r: BigInt::one(),
            d: BigInt::one(),
        }
    }

    pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        Self::new(num.into(), BigInt::zero(), den.into(), BigInt::one())
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(p: i64, q: i64, r: i64, d: i64) -> Result<Self> {
        Self::new(p.into(), q.into(), r.into(), d.into())
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }
    pub fn q(&self) -> &BigInt {
        &self.q
    }
    pub fn r(&self) -> &BigInt {
        &self.r
    }
    /// Square-free radicand; 1 for rational values.
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.q.is_zero() && self.r.is_one()
    }

    /// Rational and irrational parts `(a, b)` with value `a + b*sqrt(d)`.
    pub fn parts(&self) -> (BigRational, BigRational) {
        (
            BigRational::new(self.p.clone(), self.r.clone()),
            BigRational::new(self.q.clone(), self.r.clone()),
        )
    }

    /// Rebuilds `a + b*sqrt(d)` from rational parts; `d` must be square-free.
    pub fn from_parts(a: &BigRational, b: &BigRational, d: &BigInt) -> Self {
        let den = a.denom().lcm(b.denom());
        let p = a.numer() * (&den / a.denom());
        let q = b.numer() * (&den / b.denom());
        Self::from_split(p, q, den, d.clone())
    }

    /// Galois conjugate `(p - q*sqrt(d)) / r`.
    pub fn conj(&self) -> Self {
        QuadSurd {
            p: self.p.clone(),
            q: -&self.q,
            r: self.r.clone(),
            d: self.d.clone(),
        }
    }

    /// Field norm `x * conj(x)`.
    pub fn norm(&self) -> BigRational {
        let num = &self.p * &self.p - &self.q * &self.q * &self.d;
        BigRational::new(num, &self.r * &self.r)
    }

    /// Field trace `x + conj(x)`.
    pub fn trace(&self) -> BigRational {
        BigRational::new(&self.p * 2, self.r.clone())
    }

    fn common_radicand(&self, o: &Self) -> Result<BigInt> {
        match (self.q.is_zero(), o.q.is_zero()) {
            (true, _) => Ok(o.d.clone()),
            (_, true) => Ok(self.d.clone()),
            _ if self.d == o.d => Ok(self.d.clone()),
            _ => Err(CuspError::Internal(format!(
                "mixed radicands {} and {}",
                self.d, o.d
            ))),
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        let d = self.common_radicand(o)?;
        Ok(Self::from_split(
            &self.p * &o.r + &o.p * &self.r,
            &self.q * &o.r + &o.q * &self.r,
            &self.r * &o.r,
            d,
        ))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&-o)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let d = self.common_radicand(o)?;
        Ok(Self::from_split(
            &self.p * &o.p + &self.q * &o.q * &d,
            &self.p * &o.q + &self.q * &o.p,
            &self.r * &o.r,
            d,
        ))
    }

    pub fn recip(&self) -> Result<Self> {
        let den = &self.p * &self.p - &self.q * &self.q * &self.d;
        if den.is_zero() {
            return Err(CuspError::Internal("division by zero".into()));
        }
        Ok(Self::from_split(
            &self.r * &self.p,
            -&self.r * &self.q,
            den,
            self.d.clone(),
        ))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        self.checked_mul(&o.recip()?)
    }

    /// Sign of the real value.
    pub fn signum(&self) -> Ordering {
        let zero = BigInt::zero();
        let ps = self.p.cmp(&zero);
        let qs = self.q.cmp(&zero);
        if qs == Ordering::Equal {
            return ps;
        }
        if ps == Ordering::Equal || ps == qs {
            return qs;
        }
        // Opposite signs: the larger magnitude wins.
        let pp = &self.p * &self.p;
        let qq = &self.q * &self.q * &self.d;
        if pp > qq {
            ps
        } else {
            qs
        }
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        if self.q.is_zero() {
            return self.p.div_floor(&self.r);
        }
        // q*sqrt(d) is irrational and lies strictly between n and n + 1.
        let m = (&self.q * &self.q * &self.d).sqrt();
        let n = if self.q.is_positive() { m } else { -m - 1 };
        (&self.p + n).div_floor(&self.r)
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Nearest `f64`, for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let root = self.d.to_f64().unwrap_or(f64::NAN).sqrt();
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        let r = self.r.to_f64().unwrap_or(f64::NAN);
        (p + q * root) / r
    }
}

/// The unit `(t + sqrt(t^2 - 4)) / 2`, the eigenvalue `> 1` (for `t > 2`)
/// of a hyperbolic matrix with trace `t`.
pub fn eigen_unit(t: &BigInt) -> Result<QuadSurd> {
    if t.abs() <= BigInt::from(2) {
        return Err(CuspError::NotHyperbolic);
    }
    // t^2 - 4 = (t - 2)(t + 2) keeps each factor small for exact splitting.
    QuadSurd::with_radicand_factors(
        t.clone(),
        BigInt::one(),
        BigInt::from(2),
        &[t - 2, t + 2],
    )
}

impl PartialOrd for QuadSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.checked_sub(other).ok().map(|x| x.signum())
    }
}

impl Neg for &QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd {
            p: -&self.p,
            q: -&self.q,
            r: self.r.clone(),
            d: self.d.clone(),
        }
    }
}

impl Neg for QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        -&self
    }
}

// Operator forms panic on mixed radicands; use the checked forms where the
// radicands are not known to agree.
macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a QuadSurd> for &'a QuadSurd {
            type Output = QuadSurd;
            fn $m(self, o: &'a QuadSurd) -> QuadSurd {
                self.$checked(o).expect("surd arithmetic")
            }
        }
        impl $tr for QuadSurd {
            type Output = QuadSurd;
            fn $m(self, o: QuadSurd) -> QuadSurd {
                (&self).$checked(&o).expect("surd arithmetic")
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = if self.q.is_zero() {
            self.p.to_string()
        } else {
            let qabs = self.q.abs();
            let coef = if qabs.is_one() { String::new() } else { format!("{qabs}*") };
            let sign = if self.q.is_negative() { "-" } else { "+" };
            if self.p.is_zero() {
                let lead = if self.q.is_negative() { "-" } else { "" };
                format!("{lead}{coef}sqrt({})", self.d)
            } else {
                format!("{}{sign}{coef}sqrt({})", self.p, self.d)
            }
        };
        if self.r.is_one() {
            write!(f, "{num}")
        } else if self.q.is_zero() || self.p.is_zero() {
            write!(f, "{num}/{}", self.r)
        } else {
            write!(f, "({num})/{}", self.r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(p: i64, q: i64, r: i64, d: i64) -> QuadSurd {
        QuadSurd::from_i64(p, q, r, d).unwrap()
    }

    #[test]
    fn canonicalization() {
        assert_eq!(s(14, 2, 4, 45), s(7, 3, 2, 5));
        assert_eq!(s(2, 2, 2, 9), QuadSurd::integer(4));
        assert_eq!(s(-2, -2, -4, 15), s(1, 1, 2, 15));
        assert_eq!(s(3, 0, 6, 7).radicand(), &BigInt::one());
    }

    #[test]
    fn eigen_units() {
        assert_eq!(eigen_unit(&8.into()).unwrap(), s(4, 1, 1, 15));
        assert_eq!(eigen_unit(&7.into()).unwrap(), s(7, 3, 2, 5));
        assert_eq!(eigen_unit(&2.into()), Err(CuspError::NotHyperbolic));
        assert_eq!(eigen_unit(&(-1).into()), Err(CuspError::NotHyperbolic));
    }

    #[test]
    fn sigma_minus_one_has_norm_minus_six() {
        let e = eigen_unit(&8.into()).unwrap();
        let x = &e - &QuadSurd::integer(1);
        assert_eq!(x.norm(), BigRational::from_integer((-6).into()));
    }

    #[test]
    fn floor_and_ceil() {
        // sqrt(15) ~ 3.873
        assert_eq!(s(0, 1, 1, 15).floor(), 3.into());
        assert_eq!(s(0, -1, 1, 15).floor(), (-4).into());
        assert_eq!(s(0, -1, 1, 15).ceil(), (-3).into());
        assert_eq!(s(5, 1, 5, 15).floor(), 1.into());
        assert_eq!(s(-7, 3, 2, 5).floor(), (-1).into());
        assert_eq!(s(-7, 0, 2, 1).floor(), (-4).into());
        assert_eq!(s(-7, 0, 2, 1).ceil(), (-3).into());
    }

    #[test]
    fn ordering_and_display() {
        assert!(s(0, 1, 1, 2) < s(3, 0, 2, 1));
        assert!(s(0, 1, 1, 3) > s(3, 0, 2, 1));
        assert_eq!(s(5, 1, 5, 15).to_string(), "(5+sqrt(15))/5");
        assert_eq!(s(7, 3, 2, 5).to_string(), "(7+3*sqrt(5))/2");
        assert_eq!(s(0, -1, 1, 2).to_string(), "-sqrt(2)");
    }

    #[test]
    fn large_radicand_split() {
        // (t-2)(t+2) for t = 10^12 + 1: each factor has a big prime part.
        let t = BigInt::from(1_000_000_000_001i64);
        let (root, kernel) = squarefree_split_product(&[&t - 2, &t + 2]);
        assert_eq!(&root * &root * &kernel, (&t - 2) * (&t + 2));
        let (r2, k2) = squarefree_split(&BigInt::from(1_000_003i64 * 1_000_003));
        assert_eq!((r2, k2), (BigInt::from(1_000_003), BigInt::one()));
    }

    /// Square-free oracle by exhaustive divisor check.
    fn is_squarefree(n: u64) -> bool {
        (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k * k))
    }

    proptest! {
        #[test]
        fn split_is_exact(n in 1u64..2_000_000) {
            let (root, kernel) = squarefree_split(&BigInt::from(n));
            prop_assert_eq!(&root * &root * &kernel, BigInt::from(n));
            prop_assert!(is_squarefree(kernel.to_u64().unwrap()));
        }

        #[test]
        fn eigen_unit_satisfies_trace(t in 3i64..100_000) {
            let l = eigen_unit(&t.into()).unwrap();
            let sum = &l + &l.recip().unwrap();
            prop_assert_eq!(sum, QuadSurd::integer(t));
            prop_assert_eq!(l.norm(), BigRational::one());
        }

        #[test]
        fn floor_brackets_value(p in -1000i64..1000, q in -50i64..50, r in 1i64..40, d in 2i64..60) {
            let x = s(p, q, r, d);
            let f = QuadSurd::integer(x.floor());
            prop_assert!(f <= x);
            prop_assert!(x < &f + &QuadSurd::integer(1));
            let approx = x.to_f64();
            prop_assert!((x.floor().to_f64().unwrap() - approx.floor()).abs() < 1.5);
        }

        #[test]
        fn field_axioms(a in -30i64..30, b in -30i64..30, c in -30i64..30, e in -30i64..30) {
            prop_assume!(c != 0 || e != 0);
            let x = s(a, b, 7, 6);
            let y = s(c, e, 5, 6);
            prop_assert_eq!(&(&x * &y) / &y, x.clone());
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }
    }
}

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intmat::IntMat2;
use super::surd::QuadSurd;
use crate::error::{CuspError, Result};

/// Full-rank `Z`-module `Z g1 + Z g2` inside a real quadratic field.
///
/// The basis is kept positively oriented: `g1 g2' - g2 g1' > 0`, where `'` is
/// the Galois conjugate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadModule {
    g1: QuadSurd,
    g2: QuadSurd,
    d: BigInt,
}

fn radicand_of(gens: &[&QuadSurd]) -> Result<BigInt> {
    let mut d: Option<&BigInt> = None;
    for g in gens.iter().filter(|g| !g.is_rational()) {
        match d {
            None => d = Some(g.radicand()),
            Some(prev) if prev != g.radicand() => {
                return Err(CuspError::Internal("generators from different fields".into()))
            }
            _ => {}
        }
    }
    d.cloned().ok_or(CuspError::DegenerateModule)
}

/// `a2 b1 - a1 b2` for `g_i = a_i + b_i sqrt(d)`; same sign as `g1 g2' - g2 g1'`.
fn orientation(g1: &QuadSurd, g2: &QuadSurd) -> BigRational {
    let (a1, b1) = g1.parts();
    let (a2, b2) = g2.parts();
    a2 * b1 - a1 * b2
}

impl QuadModule {
    /// Module with basis `(g1, g2)`, swapped if needed to be positive.
    pub fn new(g1: QuadSurd, g2: QuadSurd) -> Result<Self> {
        let d = radicand_of(&[&g1, &g2])?;
        match orientation(&g1, &g2).cmp(&BigRational::zero()) {
            Ordering::Greater => Ok(QuadModule { g1, g2, d }),
            Ordering::Less => Ok(QuadModule { g1: g2, g2: g1, d }),
            Ordering::Equal => Err(CuspError::DegenerateModule),
        }
    }

    /// Module spanned by arbitrarily many generators, via a Hermite basis.
    pub fn from_generators(gens: &[QuadSurd]) -> Result<Self> {
        let refs: Vec<&QuadSurd> = gens.iter().collect();
        let d = radicand_of(&refs)?;
        let parts: Vec<(BigRational, BigRational)> = gens.iter().map(|g| g.parts()).collect();
        let den = parts
            .iter()
            .fold(BigInt::one(), |l, (a, b)| l.lcm(a.denom()).lcm(b.denom()));
        let scale = |x: &BigRational| x.numer() * (&den / x.denom());

        // Echelon form: pivot carries the gcd of first coordinates, h spans
        // the part of the lattice on the second axis.
        let mut pivot = (BigInt::zero(), BigInt::zero());
        let mut h = BigInt::zero();
        for (a, b) in &parts {
            let v = (scale(a), scale(b));
            if v.0.is_zero() {
                h = h.gcd(&v.1);
                continue;
            }
            let eg = pivot.0.extended_gcd(&v.0);
            let g = eg.gcd;
            let new_pivot = (
                &eg.x * &pivot.0 + &eg.y * &v.0,
                &eg.x * &pivot.1 + &eg.y * &v.1,
            );
            let kill = (&v.0 / &g) * &pivot.1 - (&pivot.0 / &g) * &v.1;
            h = h.gcd(&kill);
            pivot = new_pivot;
        }
        if pivot.0.is_zero() || h.is_zero() {
            return Err(CuspError::DegenerateModule);
        }
        if pivot.0.is_negative() {
            pivot = (-pivot.0, -pivot.1);
        }
        let y = pivot.1.mod_floor(&h);
        let rat = |n: BigInt| BigRational::new(n, den.clone());
        let b1 = QuadSurd::from_parts(&rat(pivot.0), &rat(y), &d);
        let b2 = QuadSurd::from_parts(&BigRational::zero(), &rat(h), &d);
        QuadModule::new(b1, b2)
    }

    pub fn basis(&self) -> (&QuadSurd, &QuadSurd) {
        (&self.g1, &self.g2)
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    /// Rational coordinates `(x, y)` with `v = x g1 + y g2`.
    pub fn coords(&self, v: &QuadSurd) -> Result<(BigRational, BigRational)> {
        if !v.is_rational() && v.radicand() != &self.d {
            return Err(CuspError::NotStable);
        }
        let (a1, b1) = self.g1.parts();
        let (a2, b2) = self.g2.parts();
        let (va, vb) = v.parts();
        let det = &a1 * &b2 - &a2 * &b1;
        let x = (&va * &b2 - &a2 * &vb) / &det;
        let y = (&a1 * &vb - &va * &b1) / &det;
        Ok((x, y))
    }

    pub fn contains(&self, v: &QuadSurd) -> bool {
        matches!(self.coords(v), Ok((x, y)) if x.is_integer() && y.is_integer())
    }

    /// Order of `v` in `(M + Z v) / M`, or `None` if `v` is not in `Q M`.
    pub fn order_modulo(&self, v: &QuadSurd) -> Option<BigInt> {
        let (x, y) = self.coords(v).ok()?;
        Some(x.denom().lcm(y.denom()))
    }

    /// `u M`.
    pub fn scaled(&self, u: &QuadSurd) -> Result<Self> {
        QuadModule::new(self.g1.checked_mul(u)?, self.g2.checked_mul(u)?)
    }
}

/// Matrix of multiplication by `u` in the oriented basis: column `j` holds
/// the coordinates of `u g_j`, so `u (g1, g2) = (g1, g2) N`.
pub fn mult_matrix(module: &QuadModule, u: &QuadSurd) -> Result<IntMat2> {
    let mut cols = Vec::with_capacity(2);
    for g in [&module.g1, &module.g2] {
        let img = g.checked_mul(u).map_err(|_| CuspError::NotStable)?;
        let (x, y) = module.coords(&img)?;
        if !x.is_integer() || !y.is_integer() {
            return Err(CuspError::NotStable);
        }
        cols.push((x.to_integer(), y.to_integer()));
    }
    let (c0, c1) = (cols[0].clone(), cols[1].clone());
    Ok(IntMat2::new(c0.0, c1.0, c0.1, c1.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::hj::surd_from_cycle;
    use crate::arith::surd::eigen_unit;
    use proptest::prelude::*;

    fn s(p: i64, q: i64, r: i64, d: i64) -> QuadSurd {
        QuadSurd::from_i64(p, q, r, d).unwrap()
    }

    fn omega_module(c: &[i64]) -> QuadModule {
        QuadModule::new(surd_from_cycle(c).unwrap(), QuadSurd::integer(1)).unwrap()
    }

    #[test]
    fn unit_action_on_omega_lattice() {
        let m = omega_module(&[2, 5]);
        assert_eq!(m.basis().0, &s(5, 1, 5, 15));
        let n = mult_matrix(&m, &eigen_unit(&8.into()).unwrap()).unwrap();
        assert_eq!(n, IntMat2::from_i64(9, 5, -2, -1));
        assert_eq!(n.trace(), 8.into());
        assert_eq!(n.det(), 1.into());
        assert!(mult_matrix(&m, &QuadSurd::integer(1)).unwrap().is_identity());
    }

    #[test]
    fn not_stable() {
        let m = QuadModule::new(QuadSurd::integer(1), s(0, 1, 1, 5)).unwrap();
        assert_eq!(mult_matrix(&m, &s(0, 1, 1, 15)), Err(CuspError::NotStable));
        assert_eq!(mult_matrix(&m, &s(1, 0, 2, 1)), Err(CuspError::NotStable));
    }

    #[test]
    fn orientation_is_positive() {
        let m = QuadModule::new(QuadSurd::integer(1), s(5, 1, 5, 15)).unwrap();
        assert_eq!(m.basis().1, &QuadSurd::integer(1));
        assert_eq!(
            QuadModule::new(QuadSurd::integer(1), QuadSurd::integer(2)),
            Err(CuspError::DegenerateModule)
        );
    }

    #[test]
    fn hermite_basis_spans_same_lattice() {
        let w = s(5, 1, 5, 15);
        let gens = vec![
            w.clone(),
            QuadSurd::integer(1),
            &w * &QuadSurd::integer(3),
            &w + &QuadSurd::integer(7),
        ];
        let m = QuadModule::from_generators(&gens).unwrap();
        let base = omega_module(&[2, 5]);
        for g in &gens {
            assert!(m.contains(g));
        }
        let (b1, b2) = m.basis();
        assert!(base.contains(b1) && base.contains(b2));
        // Adjoining a half-lattice vector halves the covolume.
        let half = &w / &QuadSurd::integer(2);
        let big = QuadModule::from_generators(&[w.clone(), QuadSurd::integer(1), half.clone()]).unwrap();
        assert_eq!(base.order_modulo(&half), Some(2.into()));
        assert!(big.contains(&half));
        let (c1, c2) = big.basis();
        let (x1, y1) = base.coords(c1).unwrap();
        let (x2, y2) = base.coords(c2).unwrap();
        let covol = x1 * y2 - x2 * y1;
        assert_eq!(covol, BigRational::new(1.into(), 2.into()));
    }

    proptest! {
        #[test]
        fn multiplicative(c in prop::collection::vec(2i64..=7, 1..=5), k in 1u32..4, l in 1u32..4) {
            prop_assume!(c.iter().any(|&d| d >= 3));
            let m = omega_module(&c);
            let p = c.iter().fold(IntMat2::identity(), |acc, &d| &acc * &IntMat2::from_i64(d, -1, 1, 0));
            let e = eigen_unit(&p.trace()).unwrap();
            let ek = (0..k).fold(QuadSurd::integer(1), |acc, _| &acc * &e);
            let el = (0..l).fold(QuadSurd::integer(1), |acc, _| &acc * &e);
            let nk = mult_matrix(&m, &ek).unwrap();
            let nl = mult_matrix(&m, &el).unwrap();
            prop_assert_eq!(mult_matrix(&m, &(&ek * &el)).unwrap(), &nk * &nl);
            prop_assert_eq!(nk.det(), BigInt::one());
        }
    }
}

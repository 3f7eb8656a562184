//! Cusp cycles, boundary sequences and their intrinsic invariants.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{smith_normal_form, AbelianInvariants, IntMat2};
use crate::error::{CuspError, Result};

/// Cyclic word of integers with no sign constraint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct AnticanSeq(Vec<i64>);

/// Cyclic word with every entry `>= 2` and some entry `>= 3`.
///
/// The word is kept in the order it was given; use [`CuspCycle::canonical`]
/// for the minimal rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct CuspCycle(Vec<i64>);

/// One block `(a, b)` of a cycle: the entry `a + 3` followed by `b` twos.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub a: u64,
    pub b: u64,
}

/// Block decomposition `(a0+3, 2^b0, ..., ak+3, 2^bk)` of a cusp cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockForm(pub Vec<Block>);

impl BlockForm {
    pub fn expand(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for blk in &self.0 {
            out.push(blk.a as i64 + 3);
            out.extend(std::iter::repeat_n(2, blk.b as usize));
        }
        out
    }

}

// ---------------------------------------------------------------------------
// Word-level operations shared by both sequence types.

/// Lexicographically least rotation, optionally also over the reversal.
pub fn canonical_word(w: &[i64], reflection: bool) -> Vec<i64> {
    let mut best = least_rotation(w);
    if reflection {
        let mut rev = w.to_vec();
        rev.reverse();
        let r = least_rotation(&rev);
        if r < best {
            best = r;
        }
    }
    best
}

fn least_rotation(w: &[i64]) -> Vec<i64> {
    rotated(w, extreme_rotation(w, Ordering::Less))
}

/// Start of the least (`Less`) or greatest (`Greater`) rotation in linear
/// time. Two candidate starts `i`, `j` are compared over a common prefix of
/// length `k`; on a mismatch the losing start and the `k` positions after it
/// cannot begin an extreme rotation.
fn extreme_rotation(w: &[i64], want: Ordering) -> usize {
    let n = w.len();
    let (mut i, mut j, mut k) = (0, 1, 0);
    while i < n && j < n && k < n {
        match w[(i + k) % n].cmp(&w[(j + k) % n]) {
            Ordering::Equal => {
                k += 1;
                continue;
            }
            o if o == want => j += k + 1,
            _ => i += k + 1,
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j).min(n.saturating_sub(1))
}

fn rotated(w: &[i64], k: usize) -> Vec<i64> {
    let mut v = w[k..].to_vec();
    v.extend_from_slice(&w[..k]);
    v
}

/// Whether `a` and `b` agree up to rotation (and reversal if requested).
pub fn same_cyclic_class(a: &[i64], b: &[i64], reflection: bool) -> bool {
    a.len() == b.len() && canonical_word(a, reflection) == canonical_word(b, reflection)
}

/// `12 + sum(d_i - 3)`, widened so any word of `i64` entries is exact.
pub fn charge(w: &[i64]) -> i128 {
    12 + w.iter().map(|&d| i128::from(d) - 3).sum::<i128>()
}

/// `M(d_{n-1}) ... M(d_0)` with `M(d) = [[0, -1], [1, d]]`.
pub fn monodromy(w: &[i64]) -> IntMat2 {
    // Balanced product: operands stay of similar size, so long words with
    // large entries avoid the quadratic cost of a left fold.
    match w {
        [] => IntMat2::identity(),
        [d] => IntMat2::elementary(*d),
        _ => {
            let (lo, hi) = w.split_at(w.len() / 2);
            &monodromy(hi) * &monodromy(lo)
        }
    }
}

pub fn trace(w: &[i64]) -> BigInt {
    monodromy(w).trace()
}

pub fn is_hyperbolic(w: &[i64]) -> bool {
    trace(w).abs() > BigInt::from(2)
}

/// Smallest `k` dividing the length such that shifting by `k` fixes `w`.
pub fn minimal_period(w: &[i64]) -> usize {
    let n = w.len();
    (1..=n)
        .filter(|k| n.is_multiple_of(*k))
        .find(|&k| (0..n).all(|i| w[i] == w[(i + k) % n]))
        .unwrap_or(n)
}

fn parse_word(s: &str) -> Result<Vec<i64>> {
    let body = s.trim();
    let body = body
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .or_else(|| body.strip_prefix('[').and_then(|b| b.strip_suffix(']')))
        .unwrap_or(body);
    let mut out = Vec::new();
    for tok in body.split(',') {
        let tok = tok.trim();
        let (val, rep) = match tok.split_once('^') {
            Some((v, r)) => (v.trim(), r.trim()),
            None => (tok, "1"),
        };
        let val: i64 = val
            .parse()
            .map_err(|_| CuspError::Parse(format!("bad entry {tok:?}")))?;
        let rep: usize = rep
            .parse()
            .map_err(|_| CuspError::Parse(format!("bad repeat count in {tok:?}")))?;
        if rep > MAX_PARSED_LEN - out.len() {
            return Err(CuspError::Parse(format!("more than {MAX_PARSED_LEN} entries")));
        }
        out.extend(std::iter::repeat_n(val, rep));
    }
    if out.is_empty() {
        return Err(CuspError::EmptySequence);
    }
    Ok(out)
}

/// Upper bound on the length of a parsed word.
pub const MAX_PARSED_LEN: usize = 100_000;

fn fmt_word(w: &[i64], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let parts: Vec<String> = w.iter().map(|d| d.to_string()).collect();
    write!(f, "{}", parts.join(","))
}

// ---------------------------------------------------------------------------

impl AnticanSeq {
    pub fn new(d: Vec<i64>) -> Result<Self> {
        if d.is_empty() {
            return Err(CuspError::EmptySequence);
        }
        Ok(AnticanSeq(d))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn canonical_form(&self, reflection: bool) -> AnticanSeq {
        AnticanSeq(canonical_word(&self.0, reflection))
    }

    pub fn charge(&self) -> i128 {
        charge(&self.0)
    }

    pub fn monodromy(&self) -> IntMat2 {
        monodromy(&self.0)
    }

    pub fn trace(&self) -> BigInt {
        trace(&self.0)
    }

    pub fn is_hyperbolic(&self) -> bool {
        is_hyperbolic(&self.0)
    }

    pub fn to_cycle(&self) -> Result<CuspCycle> {
        CuspCycle::new(self.0.clone())
    }
}

impl CuspCycle {
    pub fn new(d: Vec<i64>) -> Result<Self> {
        if d.is_empty() {
            return Err(CuspError::EmptySequence);
        }
        if let Some(bad) = d.iter().find(|&&x| x < 2) {
            return Err(CuspError::InvalidCycle(format!("entry {bad} < 2")));
        }
        if d.iter().all(|&x| x == 2) {
            return Err(CuspError::AllTwos);
        }
        Ok(CuspCycle(d))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn to_seq(&self) -> AnticanSeq {
        AnticanSeq(self.0.clone())
    }

    /// Least rotation.
    pub fn canonical(&self) -> CuspCycle {
        CuspCycle(canonical_word(&self.0, false))
    }

    /// Least rotation or reflected rotation.
    pub fn canonical_unoriented(&self) -> CuspCycle {
        CuspCycle(canonical_word(&self.0, true))
    }

    pub fn same_class(&self, other: &CuspCycle, reflection: bool) -> bool {
        same_cyclic_class(&self.0, &other.0, reflection)
    }

    /// Block decomposition read from the lexicographically greatest
    /// rotation, which starts at a maximal entry.
    pub fn blocks(&self) -> BlockForm {
        let start = extreme_rotation(&self.0, Ordering::Greater);
        let word = rotated(&self.0, start);
        let mut blocks: Vec<Block> = Vec::new();
        for d in word {
            if d >= 3 {
                blocks.push(Block { a: (d - 3) as u64, b: 0 });
            } else if let Some(last) = blocks.last_mut() {
                last.b += 1;
            }
        }
        BlockForm(blocks)
    }

    /// Dual cycle `(b_0+3, 2^{a_1}, b_1+3, 2^{a_2}, ..., b_k+3, 2^{a_0})`.
    ///
    /// Each run of twos is taken from the following block; this pairing is
    /// the one that keeps the monodromy trace.
    pub fn dual(&self) -> CuspCycle {
        let BlockForm(bl) = self.blocks();
        let k = bl.len();
        let mut out = Vec::new();
        for i in 0..k {
            out.push(bl[i].b as i64 + 3);
            out.extend(std::iter::repeat_n(2, bl[(i + 1) % k].a as usize));
        }
        CuspCycle(out)
    }

    pub fn charge(&self) -> i128 {
        charge(&self.0)
    }

    pub fn monodromy(&self) -> IntMat2 {
        monodromy(&self.0)
    }

    pub fn trace(&self) -> BigInt {
        trace(&self.0)
    }

    pub fn is_hyperbolic(&self) -> bool {
        is_hyperbolic(&self.0)
    }

    pub fn minimal_period(&self) -> usize {
        minimal_period(&self.0)
    }

    /// Invariant factors of `Z^2 / (sigma - 1) Z^2`.
    pub fn torsion_group(&self) -> Result<AbelianInvariants> {
        let s = self.monodromy();
        if s.trace().abs() <= BigInt::from(2) {
            return Err(CuspError::NotHyperbolic);
        }
        Ok(smith_normal_form(&(&s - &IntMat2::identity())))
    }

    /// `sum(d_i - 2)` for length at least 2, `d - 4` for a single entry.
    pub fn multiplicity(&self) -> i128 {
        match self.0.as_slice() {
            [d] => i128::from(*d) - 4,
            w => w.iter().map(|&d| i128::from(d) - 2).sum(),
        }
    }

    pub fn embdim(&self) -> i128 {
        self.multiplicity().max(3)
    }

    /// `10 + n - s` with `s` the length of the dual cycle. May be negative.
    pub fn lambda_rank(&self) -> i64 {
        10 + self.0.len() as i64 - self.dual().0.len() as i64
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Entries as `i64` from a big-integer word, if every entry fits.
    pub fn from_big(w: &[BigInt]) -> Result<Self> {
        let v: Option<Vec<i64>> = w.iter().map(|d| d.to_i64()).collect();
        CuspCycle::new(v.ok_or_else(|| CuspError::Internal("entry exceeds i64".into()))?)
    }
}

impl Deref for AnticanSeq {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl Deref for CuspCycle {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl TryFrom<Vec<i64>> for AnticanSeq {
    type Error = CuspError;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        AnticanSeq::new(v)
    }
}

impl TryFrom<Vec<i64>> for CuspCycle {
    type Error = CuspError;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        CuspCycle::new(v)
    }
}

impl From<AnticanSeq> for Vec<i64> {
    fn from(s: AnticanSeq) -> Self {
        s.0
    }
}

impl From<CuspCycle> for Vec<i64> {
    fn from(c: CuspCycle) -> Self {
        c.0
    }
}

impl From<CuspCycle> for AnticanSeq {
    fn from(c: CuspCycle) -> Self {
        AnticanSeq(c.0)
    }
}

/// Accepts `5,2`, `(5,2)`, `[5, 2]` and run-length tokens such as `3,2^49`.
impl FromStr for AnticanSeq {
    type Err = CuspError;
    fn from_str(s: &str) -> Result<Self> {
        AnticanSeq::new(parse_word(s)?)
    }
}

impl FromStr for CuspCycle {
    type Err = CuspError;
    fn from_str(s: &str) -> Result<Self> {
        CuspCycle::new(parse_word(s)?)
    }
}

impl fmt::Display for AnticanSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_word(&self.0, f)
    }
}

impl fmt::Display for CuspCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_word(&self.0, f)
    }
}

/// `det(sigma - 1) = 2 - trace` for `sigma` in `SL2(Z)`.
pub fn torsion_order(c: &CuspCycle) -> BigInt {
    (BigInt::from(2) - c.trace()).abs()
}

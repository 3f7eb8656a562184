//! Corner and internal blow-ups on boundary sequences, toric recognition and
//! toric-model search.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cycle::{canonical_word, charge, monodromy, AnticanSeq, CuspCycle};
use crate::error::{CuspError, Result};

/// Rule for a corner blow-up on a single nodal component.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CornerConvention {
    /// `(d) <-> (d + 2, 1)`. Matches `d = 2 - D^2` for a nodal curve and keeps
    /// the monodromy trace.
    #[default]
    PlusTwo,
    /// `(d) <-> (d + 4, 1)`, i.e. `d = -D^2` for the nodal curve.
    PlusFour,
}

impl CornerConvention {
    fn shift(self) -> i64 {
        match self {
            CornerConvention::PlusTwo => 2,
            CornerConvention::PlusFour => 4,
        }
    }
}

fn check_index(s: &[i64], i: usize) -> Result<()> {
    if i >= s.len() {
        return Err(CuspError::IndexOutOfRange { index: i, len: s.len() });
    }
    Ok(())
}

/// `d + k`, or `Overflow` when the result leaves `i64`.
pub(crate) fn shifted(d: i64, k: i64) -> Result<i64> {
    d.checked_add(k)
        .ok_or_else(|| CuspError::Overflow(format!("{d} + {k}")))
}

/// `d_i + 1`.
pub fn internal_blow_up(s: &AnticanSeq, i: usize) -> Result<AnticanSeq> {
    check_index(s, i)?;
    let mut v = s.to_vec();
    v[i] = shifted(v[i], 1)?;
    AnticanSeq::new(v)
}

/// `d_i - 1`.
pub fn internal_blow_down(s: &AnticanSeq, i: usize) -> Result<AnticanSeq> {
    check_index(s, i)?;
    let mut v = s.to_vec();
    v[i] = shifted(v[i], -1)?;
    AnticanSeq::new(v)
}

/// Blow up the node between positions `i` and `i + 1` (cyclically); the new
/// component sits at position `i + 1`, or at the end when `i` is last.
pub fn corner_blow_up(s: &AnticanSeq, i: usize, conv: CornerConvention) -> Result<AnticanSeq> {
    check_index(s, i)?;
    let n = s.len();
    if n == 1 {
        return AnticanSeq::new(vec![shifted(s[0], conv.shift())?, 1]);
    }
    let mut v = s.to_vec();
    let j = (i + 1) % n;
    v[i] = shifted(v[i], 1)?;
    v[j] = shifted(v[j], 1)?;
    v.insert(i + 1, 1);
    AnticanSeq::new(v)
}

/// Contract the component at `i`, which must have `d_i = 1`.
pub fn corner_blow_down(s: &AnticanSeq, i: usize, conv: CornerConvention) -> Result<AnticanSeq> {
    check_index(s, i)?;
    if s[i] != 1 {
        return Err(CuspError::NotExceptional(i));
    }
    let n = s.len();
    match n {
        1 => Err(CuspError::TooShort),
        2 => AnticanSeq::new(vec![shifted(s[1 - i], -conv.shift())?]),
        _ => {
            let mut v = s.to_vec();
            let (h, j) = ((i + n - 1) % n, (i + 1) % n);
            v[h] = shifted(v[h], -1)?;
            v[j] = shifted(v[j], -1)?;
            v.remove(i);
            AnticanSeq::new(v)
        }
    }
}

/// Repeated corner blow-downs at the leftmost 1 until no 1 remains or one
/// component is left. Fails with `Degenerate` once an entry drops below 1.
pub fn reduce_ones(s: &AnticanSeq) -> Result<AnticanSeq> {
    let mut cur = s.clone();
    while cur.len() > 1 {
        let Some(i) = cur.iter().position(|&d| d == 1) else {
            break;
        };
        let before = cur.clone();
        cur = corner_blow_down(&cur, i, CornerConvention::PlusTwo)?;
        if let Some(bad) = cur.iter().find(|&&d| d < 1) {
            return Err(CuspError::Degenerate(format!(
                "blowing down ({before}) at {i} gives entry {bad}"
            )));
        }
    }
    Ok(cur)
}

/// Charge zero and trivial monodromy.
pub fn is_toric(s: &[i64]) -> bool {
    charge(s) == 0 && monodromy(s).is_identity()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveOp {
    InternalBlowUp,
    InternalBlowDown,
    CornerBlowUp,
    CornerBlowDown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Move {
    pub op: MoveOp,
    pub index: usize,
}

impl Move {
    pub fn apply(&self, s: &AnticanSeq, conv: CornerConvention) -> Result<AnticanSeq> {
        match self.op {
            MoveOp::InternalBlowUp => internal_blow_up(s, self.index),
            MoveOp::InternalBlowDown => internal_blow_down(s, self.index),
            MoveOp::CornerBlowUp => corner_blow_up(s, self.index, conv),
            MoveOp::CornerBlowDown => corner_blow_down(s, self.index, conv),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.op {
            MoveOp::InternalBlowUp => "internal_blow_up",
            MoveOp::InternalBlowDown => "internal_blow_down",
            MoveOp::CornerBlowUp => "corner_blow_up",
            MoveOp::CornerBlowDown => "corner_blow_down",
        };
        write!(f, "{name}@{}", self.index)
    }
}

/// Ordered list of moves; serializes as `[{"op": ..., "index": ...}, ...]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MoveScript(pub Vec<Move>);

impl MoveScript {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| CuspError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("move scripts always serialize")
    }

    pub fn count(&self, op: MoveOp) -> usize {
        self.0.iter().filter(|m| m.op == op).count()
    }

    /// Applies every move in order, returning all intermediate sequences
    /// (starting with `s`).
    pub fn trace(&self, s: &AnticanSeq, conv: CornerConvention) -> Result<Vec<AnticanSeq>> {
        let mut out = vec![s.clone()];
        for m in &self.0 {
            let next = m.apply(out.last().expect("non-empty"), conv)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn replay(&self, s: &AnticanSeq, conv: CornerConvention) -> Result<AnticanSeq> {
        Ok(self.trace(s, conv)?.pop().expect("non-empty"))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }
}

/// Bounds for [`toric_model_search`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Corner blow-ups and blow-downs allowed in total.
    pub max_corner_ops: usize,
    /// Script length bound.
    pub max_depth: usize,
    /// Visited-state cap across all rounds.
    pub max_states: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_corner_ops: 6,
            max_depth: 40,
            max_states: 2_000_000,
        }
    }
}

/// Finds a script of internal blow-downs and corner moves ending at a toric
/// sequence. Uses exactly `charge(s)` internal blow-downs; rounds deepen the
/// corner budget from 0, and inside a round the search is breadth-first with
/// reflection-aware deduplication. Moves are tried in a fixed order, so the
/// result is deterministic.
pub fn toric_model_search(s: &AnticanSeq, limits: SearchLimits) -> Result<MoveScript> {
    if is_toric(s) {
        return Ok(MoveScript::default());
    }
    let q = s.charge();
    // Exactly `q` internal blow-downs are needed, so `q` beyond the depth
    // bound (or negative) cannot succeed.
    let q = match usize::try_from(q) {
        Ok(q) if q <= limits.max_depth => q,
        _ => return Err(CuspError::NotFound),
    };
    let conv = CornerConvention::PlusTwo;
    let mut visited_total = 0usize;
    for budget in 0..=limits.max_corner_ops {
        let depth_limit = limits.max_depth.min(q + budget);
        if depth_limit < q {
            break;
        }
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<(AnticanSeq, Vec<Move>, usize)> = VecDeque::new();
        seen.insert(canonical_word(s, true));
        queue.push_back((s.clone(), Vec::new(), 0));
        while let Some((cur, path, corners)) = queue.pop_front() {
            visited_total += 1;
            if visited_total > limits.max_states {
                return Err(CuspError::NotFound);
            }
            let depth = path.len();
            if depth >= depth_limit {
                continue;
            }
            let qc = cur.charge() as usize;
            let remaining = depth_limit - depth;
            let mut candidates: Vec<Move> = Vec::new();
            if qc > 0 {
                candidates.extend((0..cur.len()).map(|index| Move {
                    op: MoveOp::InternalBlowDown,
                    index,
                }));
            }
            if corners < budget && qc < remaining {
                candidates.extend(
                    (0..cur.len())
                        .filter(|&i| cur[i] == 1 && cur.len() > 1)
                        .map(|index| Move { op: MoveOp::CornerBlowDown, index }),
                );
                candidates.extend((0..cur.len()).map(|index| Move {
                    op: MoveOp::CornerBlowUp,
                    index,
                }));
            }
            for m in candidates {
                let next = m.apply(&cur, conv)?;
                let nq = next.charge();
                if nq < 0 || nq > (remaining - 1) as i128 {
                    continue;
                }
                let mut next_path = path.clone();
                next_path.push(m);
                if is_toric(&next) {
                    let script = MoveScript(next_path);
                    debug_assert!(is_toric(&script.replay(s, conv)?));
                    return Ok(script);
                }
                if seen.insert(canonical_word(&next, true)) {
                    let used = corners + usize::from(m.op != MoveOp::InternalBlowDown);
                    queue.push_back((next, next_path, used));
                }
            }
        }
    }
    Err(CuspError::NotFound)
}

/// Three-valued answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tri {
    True,
    False,
    Unknown,
}

/// Short cycles of charge at most 21 whose dual is not rational.
pub const RATIONAL_DUAL_EXCEPTIONS: [&[i64]; 11] = [
    &[4, 11],
    &[7, 8],
    &[2, 4, 12],
    &[2, 8, 8],
    &[3, 3, 12],
    &[3, 4, 11],
    &[3, 7, 8],
    &[4, 4, 10],
    &[4, 6, 8],
    &[4, 7, 7],
    &[5, 5, 8],
];

/// Whether the cycle's dual cusp sits on a rational surface: false above
/// charge 21, decided by the exception list up to length 3, unknown beyond.
/// Exceptions match up to rotation and reflection.
pub fn has_rational_dual(c: &CuspCycle) -> Tri {
    if c.charge() > 21 {
        return Tri::False;
    }
    if c.len() > 3 {
        return Tri::Unknown;
    }
    let listed = RATIONAL_DUAL_EXCEPTIONS
        .iter()
        .any(|e| crate::cycle::same_cyclic_class(c, e, true));
    if listed {
        Tri::False
    } else {
        Tri::True
    }
}

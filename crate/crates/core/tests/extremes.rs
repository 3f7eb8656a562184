//! Entries at the edge of the `i64` range: every operation whose output size
//! does not scale with the entries must either answer exactly or return an
//! error, never panic.

use cuspcalc_core::blowup::{
    corner_blow_down, corner_blow_up, internal_blow_down, internal_blow_up, is_toric,
    toric_model_search, CornerConvention, SearchLimits,
};
use cuspcalc_core::covers::nw_cover;
use cuspcalc_core::ia::{boundary_internal_blow_up, boundary_node_smoothing};
use cuspcalc_core::lci::{classify, hypersurface_witness, LciClass, LciEquation};
use cuspcalc_core::{AnticanSeq, CuspCycle, CuspError};
use num_bigint::BigInt;
use proptest::prelude::*;

const EDGES: [i64; 6] = [i64::MIN, i64::MIN + 1, -1, 1, i64::MAX - 1, i64::MAX];

fn seq(v: &[i64]) -> AnticanSeq {
    AnticanSeq::new(v.to_vec()).unwrap()
}

#[test]
fn charge_is_exact_past_i64() {
    let s = seq(&[i64::MAX, i64::MAX, 5]);
    assert_eq!(s.charge(), 12 + 2 * (i128::from(i64::MAX) - 3) + 2);
    let s = seq(&[i64::MIN; 4]);
    assert_eq!(s.charge(), 12 + 4 * (i128::from(i64::MIN) - 3));
    let c = CuspCycle::new(vec![i64::MAX, i64::MAX]).unwrap();
    assert_eq!(c.multiplicity(), 2 * (i128::from(i64::MAX) - 2));
}

#[test]
fn parsed_word_from_fuzzing() {
    // Reduced from a crashing input: huge entries used to overflow the charge.
    let s: AnticanSeq = "9223372036854775807,9223372036854775807".parse().unwrap();
    assert_eq!(s.charge(), 2 * i128::from(i64::MAX) + 6);
}

#[test]
fn moves_report_overflow() {
    let top = seq(&[i64::MAX, 3]);
    assert!(matches!(internal_blow_up(&top, 0), Err(CuspError::Overflow(_))));
    assert!(matches!(corner_blow_up(&top, 0, CornerConvention::PlusTwo), Err(CuspError::Overflow(_))));
    assert!(matches!(corner_blow_up(&seq(&[i64::MAX - 1]), 0, CornerConvention::PlusFour), Err(CuspError::Overflow(_))));
    assert!(matches!(boundary_internal_blow_up(&top, 0, 1), Err(CuspError::Overflow(_))));
    assert!(matches!(boundary_node_smoothing(&top, 0, 1), Err(CuspError::Overflow(_))));

    let bottom = seq(&[i64::MIN, 1, 4]);
    assert!(matches!(internal_blow_down(&bottom, 0), Err(CuspError::Overflow(_))));
    assert!(matches!(corner_blow_down(&bottom, 1, CornerConvention::PlusTwo), Err(CuspError::Overflow(_))));
    assert!(matches!(corner_blow_down(&seq(&[i64::MIN + 3, 1]), 1, CornerConvention::PlusFour), Err(CuspError::Overflow(_))));

    // One step inside the range still succeeds.
    assert_eq!(internal_blow_up(&seq(&[i64::MAX - 1]), 0).unwrap().entries(), &[i64::MAX]);
    assert_eq!(
        boundary_node_smoothing(&seq(&[i64::MAX - 1, 3]), 0, 1).unwrap().entries(),
        &[i64::MAX]
    );
}

#[test]
fn searches_stay_bounded() {
    let huge = seq(&[i64::MAX, 2]);
    assert_eq!(toric_model_search(&huge, SearchLimits::default()), Err(CuspError::NotFound));
    let c = CuspCycle::new(vec![i64::MAX, 3]).unwrap();
    assert_eq!(hypersurface_witness(&c), None);
    assert_eq!(classify(&c), LciClass::NotLci);
    assert!(LciEquation::t(2, 3, i64::MAX).is_ok());
}

#[test]
fn exact_big_traces() {
    let c = CuspCycle::new(vec![i64::MAX, i64::MAX]).unwrap();
    let m = BigInt::from(i64::MAX);
    assert_eq!(c.trace(), &m * &m - 2);
    assert!(c.torsion_group().is_ok());
    // The trace does not fit an entry of the cover cycle.
    assert!(nw_cover(&c).is_err());
}

proptest! {
    #[test]
    fn no_panics_at_the_edges(
        w in prop::collection::vec(prop::sample::select(EDGES.to_vec()), 1..6),
        i in 0usize..6,
    ) {
        let s = seq(&w);
        let i = i % s.len();
        let _ = s.charge();
        let _ = s.monodromy();
        let _ = is_toric(&s);
        let _ = internal_blow_up(&s, i);
        let _ = internal_blow_down(&s, i);
        for conv in [CornerConvention::PlusTwo, CornerConvention::PlusFour] {
            let _ = corner_blow_up(&s, i, conv);
            let _ = corner_blow_down(&s, i, conv);
        }
        let _ = boundary_internal_blow_up(&s, i, 1);
        let _ = boundary_node_smoothing(&s, i, 1);
        let small = SearchLimits { max_corner_ops: 1, max_depth: 4, max_states: 2_000 };
        let _ = toric_model_search(&s, small);
    }

    #[test]
    fn charge_shift_is_exact(w in prop::collection::vec(prop::sample::select(EDGES.to_vec()), 1..6)) {
        let s = seq(&w);
        let by_hand: i128 = 12 + w.iter().map(|&d| i128::from(d) - 3).sum::<i128>();
        prop_assert_eq!(s.charge(), by_hand);
        if let Ok(t) = internal_blow_up(&s, 0) {
            prop_assert_eq!(t.charge(), by_hand + 1);
        }
    }
}

#[test]
fn repeat_counts_cannot_wrap() {
    let text = format!("3,2^{}", usize::MAX);
    assert!(matches!(text.parse::<AnticanSeq>(), Err(CuspError::Parse(_))));
    let text = format!("2^{},3", cuspcalc_core::cycle::MAX_PARSED_LEN);
    assert!(matches!(text.parse::<AnticanSeq>(), Err(CuspError::Parse(_))));
}

#![no_main]

use cuspcalc_core::{AnticanSeq, CuspCycle};
use libfuzzer_sys::fuzz_target;

/// Rough bit size of the monodromy, which grows like `sum(log2 |d|)`.
/// Products and the Smith-form gcd get slow well before memory runs out, so
/// huge words skip them.
fn bits(w: &[i64]) -> u64 {
    w.iter().map(|d| u64::from(65 - d.unsigned_abs().leading_zeros())).sum()
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(s) = text.parse::<AnticanSeq>() {
        let _ = s.charge();
        if bits(&s) < 50_000 {
            let _ = s.monodromy();
        }
    }
    let Ok(c) = text.parse::<CuspCycle>() else {
        return;
    };
    // Display must parse back to the same word.
    let again: CuspCycle = c.to_string().parse().expect("display reparses");
    assert_eq!(again, c);
    assert!(c.canonical().same_class(&c, false));
    if bits(&c) < 50_000 {
        let _ = c.torsion_group();
    }
    // The dual has sum(d - 2) entries; keep it small.
    if c.iter().map(|&d| d.saturating_sub(2)).fold(0i64, i64::saturating_add) < 5_000 {
        let d = c.dual();
        assert_eq!(d.trace(), c.trace());
        assert_eq!(d.charge() + c.charge(), 24);
    }
});

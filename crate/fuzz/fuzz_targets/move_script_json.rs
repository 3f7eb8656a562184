#![no_main]

use cuspcalc_core::blowup::{CornerConvention, MoveScript};
use cuspcalc_core::AnticanSeq;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(script) = MoveScript::from_json(text) else {
        return;
    };
    let again = MoveScript::from_json(&script.to_json()).expect("serialized script reloads");
    assert_eq!(again, script);
    let start = AnticanSeq::new(vec![3, 2, 2, 2, 3, 2, 2, 2, 2, 2, 2]).unwrap();
    for conv in [CornerConvention::PlusTwo, CornerConvention::PlusFour] {
        if let Ok(end) = script.replay(&start, conv) {
            let internal = script.len() as i128;
            assert!(end.charge() <= start.charge() + 2 * internal);
        }
    }
});

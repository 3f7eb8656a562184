#![no_main]

use cuspcalc::corpus::Corpus;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // Decoding only: some row kinds (enumeration, toric search) are
    // deliberately expensive to run.
    if let Ok(c) = Corpus::from_json(text) {
        assert_eq!(c.rows().count(), c.len());
    }
});

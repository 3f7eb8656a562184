#![no_main]

use cuspcalc_core::ia::{cyclic_symmetry, validate_type_iii, IAComplex};
use cuspcalc_core::CuspCycle;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(g) = IAComplex::from_json(text) else {
        return;
    };
    let back = IAComplex::from_json(&g.to_json_value().to_string()).expect("serialized complex reloads");
    assert_eq!(back, g);
    let expected = CuspCycle::new(vec![3]).unwrap();
    let _ = validate_type_iii(&g, &expected);
    let id: Vec<usize> = (0..g.vertices.len()).collect();
    let sym = cyclic_symmetry(&g, &id).expect("identity is an automorphism");
    assert_eq!(sym.quotient.as_ref(), Some(&g));
});

#![no_main]

use libfuzzer_sys::fuzz_target;

// Spinor field files: both kinds, with rank/slot validation.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(value) = serde_json::from_str::<serde_json::Value>(text) else {
        return;
    };
    if let Ok(f) = fueter::json::sym_spinor_from_json(&value) {
        let encoded = fueter::json::sym_spinor_to_json(&f);
        assert_eq!(fueter::json::sym_spinor_from_json(&encoded).unwrap(), f);
    }
    if let Ok(g) = fueter::json::mixed_spinor_from_json(&value) {
        let encoded = fueter::json::mixed_spinor_to_json(&g);
        assert_eq!(fueter::json::mixed_spinor_from_json(&encoded).unwrap(), g);
    }
});

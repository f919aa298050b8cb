#![no_main]

use libfuzzer_sys::fuzz_target;

// Decoding untrusted field files must never panic; accepted values must
// re-encode to a stable canonical form.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(value) = serde_json::from_str::<serde_json::Value>(text) else {
        return;
    };
    let Ok(field) = fueter::json::field_from_json(&value) else {
        return;
    };
    let encoded = fueter::json::field_to_json(&field);
    let decoded = fueter::json::field_from_json(&encoded).expect("canonical form decodes");
    assert_eq!(decoded, field);
    assert_eq!(
        serde_json::to_string(&encoded).unwrap(),
        serde_json::to_string(&fueter::json::field_to_json(&decoded)).unwrap()
    );
});

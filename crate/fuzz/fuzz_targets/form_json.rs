#![no_main]

use libfuzzer_sys::fuzz_target;

// Differential form files: degree and index-tuple validation; accepted
// forms must survive a star/star round trip without panicking.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(value) = serde_json::from_str::<serde_json::Value>(text) else {
        return;
    };
    let Ok(w) = fueter::json::form_from_json(&value) else {
        return;
    };
    let encoded = fueter::json::form_to_json(&w);
    assert_eq!(fueter::json::form_from_json(&encoded).unwrap(), w);
    // exercise the calculus entry points on decoded data
    let ww = fueter::forms::hodge_star(&fueter::forms::hodge_star(&w));
    let sign_even = (w.degree() as u32 * (4 - w.degree() as u32)).is_multiple_of(2);
    assert_eq!(ww, if sign_even { w.clone() } else { w.neg() });
    if w.degree() < 4 {
        let _ = fueter::forms::exterior_d(&w);
    }
});

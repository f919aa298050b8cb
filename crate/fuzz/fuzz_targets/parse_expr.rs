#![no_main]

use libfuzzer_sys::fuzz_target;

// The parser must never panic, and whenever an input lowers to a field,
// the canonical printing must parse back to the identical field.
fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(expr) = fueter_cli::parse_expr(src) else {
        return;
    };
    let Ok(field) = fueter_cli::lower(&expr) else {
        return;
    };
    let printed = fueter_cli::field_to_expr_string(&field);
    let reparsed = fueter_cli::expr_to_field(&printed)
        .unwrap_or_else(|e| panic!("printed form `{printed}` failed to parse: {e}"));
    assert_eq!(reparsed, field, "round trip through `{printed}`");
});

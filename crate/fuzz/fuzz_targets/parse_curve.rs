#![no_main]

use firefly_harness::output::render_curve;
use firefly_harness::parse_curve;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(curve) = parse_curve(text) {
        let again = parse_curve(&render_curve(&curve)).expect("rendered curve failed to parse");
        assert_eq!(again, curve);
    }
});

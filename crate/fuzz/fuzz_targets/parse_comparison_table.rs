#![no_main]

use firefly_harness::{parse_compare_table, render_table};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(rows) = parse_compare_table(text) {
        let again = parse_compare_table(&render_table(&rows)).expect("rendered table failed to parse");
        // NaN cells parse but never compare equal
        if rows.iter().all(|r| !r.mean_best.is_nan() && !r.std_best.is_nan() && !r.success_rate.is_nan()
            && !r.mean_fes_to_success.is_some_and(f64::is_nan))
        {
            assert_eq!(again, rows);
        }
    }
});

#![no_main]

use biodilate_cli::io::{parse_state_file, STATE_NORM_TOL};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = parse_state_file(text, false) {
        assert!(v.dim().is_power_of_two());
        assert!((v.norm() - 1.0).abs() <= STATE_NORM_TOL);
    }
    if let Ok(v) = parse_state_file(text, true) {
        assert!((v.norm() - 1.0).abs() <= 1e-12);
    }
});

#![no_main]

use biodilate_cli::io::{parse_matrix_file, to_json, MatrixFile};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = parse_matrix_file(text) {
        // accepted matrices survive a write/read cycle unchanged
        let again = parse_matrix_file(&to_json(&MatrixFile::from_matrix(&m))).expect("round trip");
        assert_eq!(again, m);
    }
});

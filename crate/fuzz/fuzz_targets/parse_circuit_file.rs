#![no_main]

use biodilate_cli::io::parse_circuit_file;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(circuits) = parse_circuit_file(text) {
        for (file, circuit) in &circuits {
            assert_eq!(file.gates.len(), circuit.gates().len());
        }
    }
});

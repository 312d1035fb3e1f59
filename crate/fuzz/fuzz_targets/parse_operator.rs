#![no_main]
use libfuzzer_sys::fuzz_target;
use infocausal::schema::parse_operator;

fuzz_target!(|data: &str| {
    if let Ok(op) = parse_operator(data) {
        if op.dim() <= 8 {
            let _ = op.eigenvalues();
            let _ = op.pauli_decompose();
        }
    }
});

#![no_main]
use libfuzzer_sys::fuzz_target;
use infocausal::capacity::{information_capacity, information_dimension};
use infocausal::schema::parse_system;

fuzz_target!(|data: &str| {
    let Ok(sys) = parse_system(data) else { return };
    if sys.extremal_states().len() <= 8 {
        let _ = information_capacity(&sys, 1e-9);
        let _ = information_dimension(&sys, 1e-9);
    }
});

#![no_main]
use libfuzzer_sys::fuzz_target;
use infocausal::composition::{is_effect, is_state, popt_membership, CompositionRule};
use infocausal::schema::parse_check_document;
use infocausal::Settings;

fuzz_target!(|data: &str| {
    let Ok(doc) = parse_check_document(data) else { return };
    if doc.operator.dim() != 4 {
        return;
    }
    // small grid keeps each run fast
    let settings = Settings { grid_density: 8, ..Settings::default() };
    let _ = popt_membership(&doc.operator, settings.grid_density, settings.tol);
    let op = doc.certified();
    for rule in CompositionRule::ALL {
        let _ = is_effect(&op, rule, &settings);
        let _ = is_state(&op, rule, &settings);
    }
});

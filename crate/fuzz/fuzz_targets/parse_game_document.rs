#![no_main]
use libfuzzer_sys::fuzz_target;
use infocausal::game::{play_ic_game, Composite, Polytope};
use infocausal::schema::{parse_game_document, GameDocument};
use infocausal::Settings;

fuzz_target!(|data: &str| {
    let settings = Settings { grid_density: 8, ..Settings::default() };
    match parse_game_document(data) {
        Ok(GameDocument::Composite { rule, strategy }) => {
            let _ = play_ic_game(&strategy, &Composite::new(rule, settings));
        }
        Ok(GameDocument::Polytope { system, strategy }) => {
            let _ = play_ic_game(&strategy, &Polytope::new(system, settings.tol));
        }
        Err(_) => {}
    }
});

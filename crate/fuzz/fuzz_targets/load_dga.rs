//! Fuzzes the algebra interchange JSON decoder.
//!
//! Any byte string must either be rejected with an error or decode to an
//! algebra that passes the structural validator and survives a save/load
//! round trip. `load_dga` runs the validator itself, so a successful decode
//! asserts grading, filtration, and d² = 0 on adversarial input.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(dga) = legcard::dga::load_dga(text) else { return };

    assert!(
        legcard::dga::check_dga(&dga).is_empty(),
        "load_dga must only return validated algebras"
    );

    let saved = legcard::dga::save_dga(&dga);
    let round = legcard::dga::load_dga(&saved)
        .expect("a validated algebra must reload from its own serialization");
    assert_eq!(round, dga, "algebra round trip must be the identity");
    assert_eq!(saved, legcard::dga::save_dga(&round), "serialization must be stable");
});

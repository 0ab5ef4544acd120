//! Fuzzes the front-description JSON parser.
//!
//! Any byte string must either be rejected with an error or produce a
//! validated front that (a) survives a serialize/re-parse round trip and
//! (b) yields a structurally sound algebra. Building the algebra is skipped
//! for long event words, whose disk sweeps grow combinatorially; parsing
//! and validation themselves are bounded by the library's size cap.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(front) = legcard::front::parse_front(text) else { return };

    let round = legcard::front::parse_front(&front.to_json_string())
        .expect("a validated front must re-parse from its own serialization");
    assert_eq!(round, front, "front round trip must be the identity");

    let ci = legcard::front::classical_invariants(&front);
    assert!(ci.components >= 1);
    assert!(ci.rotation.iter().all(|&r| r == 0));

    if front.events().len() <= 24 {
        let dga = legcard::dga::build_dga(&front);
        let violations = legcard::dga::check_dga(&dga);
        assert!(
            violations.is_empty(),
            "front-built algebra must be well-formed: {violations:?}"
        );
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use sd_automata::format::AutFile;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(parsed) = AutFile::parse(text) else { return };
    // Canonical text reparses to the same automaton and is a fixed point.
    let canonical = parsed.render();
    let again = AutFile::parse(&canonical).expect("canonical text parses");
    assert_eq!(again, parsed);
    assert_eq!(again.render(), canonical);
});

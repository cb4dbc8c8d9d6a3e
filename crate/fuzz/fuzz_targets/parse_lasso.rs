#![no_main]

use libfuzzer_sys::fuzz_target;
use sd_automata::{Alphabet, Lasso};

// First line: alphabet letters. Rest: a lasso `[lasso] PREFIX ; PERIOD`.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let (head, body) = text.split_once('\n').unwrap_or((text, ""));
    let Ok(sigma) = Alphabet::new(head.split_whitespace()) else { return };
    let _ = sigma.parse_word(body);
    if let Ok(w) = Lasso::parse(body, &sigma) {
        let rendered = w.render(&sigma);
        assert_eq!(Lasso::parse(&rendered, &sigma).expect("rendered lasso parses"), w);
    }
});

//! Replays the fuzz corpus through the fuzz targets' checks, and mutates the
//! seeds with proptest as a stand-in for a fuzzing run.

use std::path::{Path, PathBuf};

use proptest::prelude::*;

use sd_automata::format::AutFile;
use sd_automata::{Alphabet, Lasso};

fn corpus(target: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files.into_iter().map(|p| (p.clone(), std::fs::read(&p).unwrap())).collect()
}

/// Body of `fuzz_targets/parse_automaton.rs`.
fn parse_automaton(data: &[u8]) -> bool {
    let Ok(text) = std::str::from_utf8(data) else { return false };
    let Ok(parsed) = AutFile::parse(text) else { return false };
    let canonical = parsed.render();
    let again = AutFile::parse(&canonical).expect("canonical text parses");
    assert_eq!(again, parsed);
    assert_eq!(again.render(), canonical);
    true
}

/// Body of `fuzz_targets/parse_lasso.rs`.
fn parse_lasso(data: &[u8]) -> bool {
    let Ok(text) = std::str::from_utf8(data) else { return false };
    let (head, body) = text.split_once('\n').unwrap_or((text, ""));
    let Ok(sigma) = Alphabet::new(head.split_whitespace()) else { return false };
    let _ = sigma.parse_word(body);
    match Lasso::parse(body, &sigma) {
        Ok(w) => {
            let rendered = w.render(&sigma);
            assert_eq!(Lasso::parse(&rendered, &sigma).expect("rendered lasso parses"), w);
            true
        }
        Err(_) => false,
    }
}

#[test]
fn automaton_seeds() {
    let seeds = corpus("parse_automaton");
    assert!(seeds.len() >= 8);
    let parsed = seeds.iter().filter(|(_, d)| parse_automaton(d)).count();
    // One seed is deliberately malformed.
    assert_eq!(parsed, seeds.len() - 1);
}

#[test]
fn lasso_seeds() {
    let seeds = corpus("parse_lasso");
    let parsed: Vec<bool> = seeds.iter().map(|(_, d)| parse_lasso(d)).collect();
    assert!(parsed.iter().any(|&p| p) && parsed.iter().any(|&p| !p));
}

#[derive(Debug, Clone)]
enum Edit {
    Flip(usize, u8),
    Delete(usize),
    Insert(usize, u8),
    DropLine(usize),
    Duplicate(usize),
}

fn edit() -> impl Strategy<Value = Edit> {
    let byte = prop::sample::select(b" \n#;$0123abacctrsink-end".to_vec());
    prop_oneof![
        (any::<usize>(), byte.clone()).prop_map(|(i, b)| Edit::Flip(i, b)),
        any::<usize>().prop_map(Edit::Delete),
        (any::<usize>(), byte).prop_map(|(i, b)| Edit::Insert(i, b)),
        any::<usize>().prop_map(Edit::DropLine),
        any::<usize>().prop_map(Edit::Duplicate),
    ]
}

fn apply(data: &[u8], edits: &[Edit]) -> Vec<u8> {
    let mut d = data.to_vec();
    for e in edits {
        let n = d.len().max(1);
        match *e {
            Edit::Flip(i, b) if !d.is_empty() => d[i % n] = b,
            Edit::Delete(i) if !d.is_empty() => {
                d.remove(i % n);
            }
            Edit::Insert(i, b) => d.insert(i % (d.len() + 1), b),
            Edit::DropLine(i) | Edit::Duplicate(i) => {
                let mut lines: Vec<Vec<u8>> = d.split(|&b| b == b'\n').map(<[u8]>::to_vec).collect();
                let k = i % lines.len();
                if matches!(e, Edit::DropLine(_)) {
                    lines.remove(k);
                } else {
                    lines.insert(k, lines[k].clone());
                }
                d = lines.join(&b'\n');
            }
            _ => {}
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn mutated_automata(seed in any::<prop::sample::Index>(), edits in prop::collection::vec(edit(), 1..6)) {
        let seeds = corpus("parse_automaton");
        let (_, data) = &seeds[seed.index(seeds.len())];
        parse_automaton(&apply(data, &edits));
    }

    #[test]
    fn mutated_lassos(seed in any::<prop::sample::Index>(), edits in prop::collection::vec(edit(), 1..6)) {
        let seeds = corpus("parse_lasso");
        let (_, data) = &seeds[seed.index(seeds.len())];
        parse_lasso(&apply(data, &edits));
    }

    #[test]
    fn arbitrary_bytes(data in prop::collection::vec(any::<u8>(), 0..200)) {
        parse_automaton(&data);
        parse_lasso(&data);
    }
}

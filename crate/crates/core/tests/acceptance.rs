//! Acceptance suite: one PASS/FAIL line per criterion, then a single
//! assertion over all of them.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sd_automata::buchi::{
    encode_infty, encode_infty_dollar, encode_infty_statebased, extract_nfw_infty, has_good_prefix,
};
use sd_automata::cobuchi::{bad_infix_optimize, encode_bowtie, encode_bowtie_statebased, extract_nfw_bowtie, has_bad_infix};
use sd_automata::families::{
    dfw_first_last_differ, good_words_alphabet, nfw_good_words, nfw_good_words_nodollar, tdbw_dn, tdcw_dn,
};
use sd_automata::finite::nfw_equivalent;
use sd_automata::random::{random_lasso, random_nfw};
use sd_automata::semantics::{
    complement, contains, is_sd, lasso_in_bowtie, lasso_in_infty, lasso_membership, SdOrigin,
};
use sd_automata::structure::is_weak;
use sd_automata::weak::{complement_sd_nww, delta_close, determinize_sd_nww, generate_sd_nww, SdNwwParams};
use sd_automata::{Acceptance, Alphabet, Budget, Lasso, Letter, Nfw, OmegaAutomaton};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn budget() -> Budget {
    Budget::default()
}

fn equivalent(a: &OmegaAutomaton, b: &OmegaAutomaton) -> Result<Option<Lasso>, String> {
    let e = |x| format!("{x}");
    if let Some(w) = contains(a, b, budget()).map_err(e)? {
        return Ok(Some(w));
    }
    contains(b, a, budget()).map_err(e)
}

fn all_words(letters: usize, len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..letters).map(move |l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
    }
    out
}

/// 1. Büchi succinctness fixture, plus the exhaustive one-state lower bound at n = 1.
fn buchi_succinctness() -> Outcome {
    let mut notes = Vec::new();
    for n in 1..=3 {
        let start = Instant::now();
        let r = nfw_good_words(n).map_err(|e| e.to_string())?;
        let d = tdbw_dn(n, budget()).map_err(|e| e.to_string())?;
        ensure!(r.states() == 3 * n + 3, "n={n}: |N| = {}", r.states());
        ensure!(d.states() == 1 << (n + 1), "n={n}: |D| = {}", d.states());
        if let Some(w) = equivalent(&encode_infty(&r), &d)? {
            return Err(format!("n={n}: not equivalent, {}", w.render(d.alphabet())));
        }
        let t = start.elapsed();
        ensure!(t < Duration::from_secs(60), "n={n} took {t:?}");
        notes.push(format!("n={n} {}/{} {:.1}s", r.states(), d.states(), t.as_secs_f64()));
    }
    // Every one-state tDBW over {1, #, $} is refuted by a lasso on which it
    // disagrees with the infix oracle.
    let r = nfw_good_words(1).map_err(|e| e.to_string())?;
    let sigma = good_words_alphabet(1, true);
    let candidates: Vec<Lasso> = [vec![0], vec![1], vec![2], vec![2, 0, 1, 0]]
        .into_iter()
        .map(|v| Lasso::new(vec![], v).unwrap())
        .collect();
    for mask in 0..8u32 {
        let mut b = OmegaAutomaton::builder(sigma.clone(), Acceptance::BuchiTrans, 1);
        b.initial(0);
        for l in 0..3 {
            b.edge(0, l, 0, mask & (1 << l) != 0);
        }
        let one = b.build().unwrap();
        let refuted = candidates.iter().find(|w| {
            let inside = lasso_in_infty(&r, w).unwrap();
            lasso_membership(&one, w).unwrap() != inside
        });
        ensure!(refuted.is_some(), "one-state tDBW with α mask {mask:03b} not refuted");
    }
    notes.push("8/8 one-state tDBWs refuted".into());
    Ok(notes.join(", "))
}

/// 2. Co-Büchi succinctness fixture.
fn cobuchi_succinctness() -> Outcome {
    let mut notes = Vec::new();
    for n in 1..=3 {
        let start = Instant::now();
        let d = tdcw_dn(n, budget()).map_err(|e| e.to_string())?;
        ensure!(d.states() == (1 << (n + 1)) + 1, "n={n}: |D| = {}", d.states());
        let a = encode_bowtie(&nfw_good_words_nodollar(n).unwrap()).map_err(|e| e.to_string())?;
        if let Some(w) = equivalent(&a, &d)? {
            return Err(format!("n={n}: not equivalent, {}", w.render(d.alphabet())));
        }
        ensure!(is_sd(&a, budget()).map_err(|e| e.to_string())?.is_none(), "n={n}: encoding not SD");
        let t = start.elapsed();
        ensure!(t < Duration::from_secs(60), "n={n} took {t:?}");
        notes.push(format!("n={n} {}/{} {:.1}s", a.states(), d.states(), t.as_secs_f64()));
    }
    Ok(notes.join(", "))
}

/// 3. Büchi extraction round trip on the first/last-differ languages.
fn buchi_extraction() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for n in 1..=2 {
        let r = dfw_first_last_differ(n).unwrap();
        ensure!(has_good_prefix(&r).is_none(), "n={n}: unexpected good prefix");
        let a = encode_infty_dollar(&r).map_err(|e| e.to_string())?;
        let x = extract_nfw_infty(&a, &r, budget()).map_err(|e| e.to_string())?;
        if let Some(w) = nfw_equivalent(&x, &r).map_err(|e| e.to_string())? {
            return Err(format!("n={n}: extraction differs on {}", r.alphabet().render(&w)));
        }
        ensure!(x.size() <= a.states(), "n={n}: |N| = {} > |A| = {}", x.size(), a.states());
        notes.push(format!("n={n} |N|={} (+sink) |A|={}", x.size(), a.states()));
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(120), "took {t:?}");
    Ok(notes.join(", "))
}

/// Whether `x` is an infix of no accepted word, checked on all contexts up
/// to length `k` on each side.
fn bad_in_context(r: &Nfw, x: &[Letter], k: usize) -> bool {
    let m = r.alphabet().len();
    (0..=k).flat_map(|i| all_words(m, i)).all(|u| {
        (0..=k).flat_map(|j| all_words(m, j)).all(|v| {
            let w: Vec<Letter> = u.iter().chain(x).chain(&v).copied().collect();
            !r.accepts(&w)
        })
    })
}

/// 4. Co-Büchi extraction round trip on random NFWs.
fn cobuchi_extraction() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut optimized = 0;
    for i in 0..100 {
        let states = rng.gen_range(1..=5);
        let r = random_nfw(&mut rng, states, 2, 0.3);
        let a = encode_bowtie(&r).unwrap();
        let x = extract_nfw_bowtie(&a).map_err(|e| format!("#{i}: {e}"))?;
        ensure!(nfw_equivalent(&x, &r).unwrap().is_none(), "#{i}: extraction differs");
        ensure!(x.states() <= r.states() + 1, "#{i}: {} > {} + 1", x.states(), r.states());
        if let Some(w) = has_bad_infix(&r, None) {
            ensure!(bad_in_context(&r, &w.word, 3), "#{i}: reported bad infix is not bad");
            let y = bad_infix_optimize(&a, &x, &w).map_err(|e| format!("#{i}: {e}"))?;
            ensure!(nfw_equivalent(&y, &r).unwrap().is_none(), "#{i}: optimized extraction differs");
            ensure!(y.states() <= r.states(), "#{i}: optimized {} > {}", y.states(), r.states());
            optimized += 1;
        }
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(300), "took {t:?}");
    Ok(format!("100 NFWs, {optimized} with a bad infix, {:.1}s", t.as_secs_f64()))
}

/// 5. Determinization of random SD-NWWs.
fn weak_determinization() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut shrunk = 0;
    for seed in 0..200u64 {
        let states = rng.gen_range(1..=6);
        let duplicates = rng.gen_range(0..=10 - states);
        let letters = rng.gen_range(1..=3);
        let a = generate_sd_nww(SdNwwParams { states, letters, duplicates, seed });
        let q = a.states();
        let h = delta_close(&a).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure!(h.iterations <= q * q, "seed {seed}: {} iterations", h.iterations);
        let det = determinize_sd_nww(&a).map_err(|e| format!("seed {seed}: {e}"))?;
        let d = &det.automaton;
        ensure!(d.is_deterministic() && is_weak(d), "seed {seed}: not a DWW");
        ensure!(d.states() <= q, "seed {seed}: |D| = {} > {q}", d.states());
        ensure!(det.origin.iter().all(|&o| o < q), "seed {seed}: foreign state id");
        ensure!(det.origin.windows(2).all(|p| p[0] < p[1]), "seed {seed}: origin not a subset");
        if let Some(w) = equivalent(&a, d)? {
            return Err(format!("seed {seed}: D differs on {}", w.render(a.alphabet())));
        }
        let c = complement_sd_nww(&a).map_err(|e| format!("seed {seed}: {e}"))?;
        for _ in 0..50 {
            let w = random_lasso(&mut rng, letters, 4, 4);
            let (x, y) = (lasso_membership(&a, &w).unwrap(), lasso_membership(&c, &w).unwrap());
            ensure!(x != y, "seed {seed}: complement overlaps or misses {}", w.render(a.alphabet()));
        }
        shrunk += usize::from(d.states() < q);
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(300), "took {t:?}");
    Ok(format!("200 SD-NWWs, {shrunk} strictly smaller after determinization, {:.1}s", t.as_secs_f64()))
}

/// 6. Encodings against the direct language oracles.
fn encoding_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut infty_in, mut bowtie_in) = (0, 0);
    for i in 0..200 {
        let states = rng.gen_range(1..=4);
        let letters = rng.gen_range(1..=2);
        let r = random_nfw(&mut rng, states, letters, 0.3);
        let w = random_lasso(&mut rng, letters, 3, 5);
        let got = lasso_membership(&encode_infty(&r), &w).unwrap();
        ensure!(got == lasso_in_infty(&r, &w).unwrap(), "pair {i}: ∞ disagreement");
        infty_in += usize::from(got);
        // Over Σ ∪ {$}, with `$` as the last letter.
        let w = random_lasso(&mut rng, letters + 1, 3, 6);
        let got = lasso_membership(&encode_bowtie(&r).unwrap(), &w).unwrap();
        ensure!(got == lasso_in_bowtie(&r, &w).unwrap(), "pair {i}: ⋈ disagreement");
        bowtie_in += usize::from(got);
    }
    Ok(format!("200 + 200 pairs, 0 disagreements ({infty_in} and {bowtie_in} members)"))
}

/// Two choices on one letter (or among initial states): an accepting and a
/// rejecting trap, reached after a chain of `depth` states.
fn two_trap(kind: Acceptance, depth: usize) -> OmegaAutomaton {
    let ab = Alphabet::new(["a", "b"]).unwrap();
    let (good, bad) = (depth + 1, depth + 2);
    let mut b = OmegaAutomaton::builder(ab, kind, depth + 3);
    // A trap loops through α iff it should accept (Büchi) or reject (co-Büchi).
    let looped = |b: &mut sd_automata::OmegaBuilder, q: usize, accept: bool| {
        let alpha = accept == kind.is_buchi();
        if kind.is_state_based() && alpha {
            b.alpha_state(q);
        }
        for l in 0..2 {
            b.edge(q, l, q, alpha && !kind.is_state_based());
        }
    };
    looped(&mut b, good, true);
    looped(&mut b, bad, false);
    if depth == 0 {
        b.initial(good).initial(bad);
        b.edge(0, 0, bad, false).edge(0, 1, bad, false);
    } else {
        b.initial(0);
        for q in 0..depth {
            let next = if q + 1 == depth { good } else { q + 1 };
            b.edge(q, 0, next, false).edge(q, 1, bad, false);
        }
        b.edge(depth - 1, 0, bad, false);
        b.edge(depth, 0, bad, false).edge(depth, 1, bad, false);
    }
    b.build().unwrap()
}

/// 7. SDness detection.
fn sd_detection() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut accepted = 0;
    for i in 0..20 {
        let states = rng.gen_range(1..=4);
        let r = random_nfw(&mut rng, states, 2, 0.4);
        let encodings = [
            encode_infty(&r),
            encode_infty_dollar(&r).unwrap(),
            encode_infty_statebased(&r).unwrap(),
            encode_bowtie(&r).unwrap(),
            encode_bowtie_statebased(&r).unwrap(),
        ];
        for (j, a) in encodings.iter().enumerate() {
            let c = is_sd(a, budget()).map_err(|e| e.to_string())?;
            ensure!(c.is_none(), "NFW #{i}, encoding {j}: reported non-SD");
            accepted += 1;
        }
    }
    for seed in 0..20 {
        let a = generate_sd_nww(SdNwwParams { states: 4, letters: 2, duplicates: 3, seed });
        ensure!(is_sd(&a, budget()).unwrap().is_none(), "SD-NWW seed {seed}: reported non-SD");
        accepted += 1;
    }
    let kinds = [Acceptance::BuchiState, Acceptance::BuchiTrans, Acceptance::CoBuchiState, Acceptance::CoBuchiTrans];
    let mut rejected = 0;
    for kind in kinds {
        for depth in 0..5 {
            let a = two_trap(kind, depth);
            let c = is_sd(&a, budget()).unwrap().ok_or(format!("{kind} depth {depth}: accepted"))?;
            let origin_ok = match c.origin {
                SdOrigin::Initial => a.initial().contains(&c.succ_a) && a.initial().contains(&c.succ_b),
                SdOrigin::Transition { state, letter } => {
                    let t: Vec<_> = a.targets(state, letter).collect();
                    a.reachable()[state] && t.contains(&c.succ_a) && t.contains(&c.succ_b)
                }
            };
            ensure!(origin_ok && c.succ_a != c.succ_b, "{kind} depth {depth}: bogus origin");
            let x = lasso_membership(&a.rerooted(c.succ_a), &c.witness).unwrap();
            let y = lasso_membership(&a.rerooted(c.succ_b), &c.witness).unwrap();
            ensure!(x != y, "{kind} depth {depth}: witness does not separate the choices");
            rejected += 1;
        }
    }
    Ok(format!("{accepted} SD automata accepted, {rejected} two-trap automata rejected with replayed witnesses"))
}

/// Hand-built deterministic tNCW for the words that are eventually
/// `n`-periodic (`w[i] = w[i+n]` from some point on): it remembers the last
/// `n` letters and takes α on every mismatch.
fn eventually_periodic(n: usize) -> OmegaAutomaton {
    // Ids: words of length < n in a prefix tree (2^n - 1 of them), then the
    // 2^n full windows as bitmasks, oldest letter in the lowest bit.
    let partial = (1 << n) - 1;
    let full = |mask: usize| partial + mask;
    let mut b = OmegaAutomaton::builder(Alphabet::numbered(2), Acceptance::CoBuchiTrans, partial + (1 << n));
    b.initial(0);
    // Prefix-tree node for a word of length len with bits `mask`: 2^len - 1 + mask.
    for len in 0..n {
        for mask in 0..1usize << len {
            let id = (1 << len) - 1 + mask;
            for l in 0..2 {
                let m = mask | l << len;
                let to = if len + 1 == n { full(m) } else { (1 << (len + 1)) - 1 + m };
                b.edge(id, l, to, false);
            }
        }
    }
    for mask in 0..1usize << n {
        for l in 0..2 {
            let oldest = mask & 1;
            let next = (mask >> 1) | l << (n - 1);
            b.edge(full(mask), l, full(next), oldest != l);
        }
    }
    b.build().unwrap()
}

/// 8. Complementing the `∞` encoding of the first/last-differ languages.
fn complementation_trend() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut sizes = Vec::new();
    for n in 1..=2 {
        let a = encode_infty(&dfw_first_last_differ(n).unwrap());
        let c = complement(&a, budget()).map_err(|e| e.to_string())?;
        let oracle = eventually_periodic(n);
        let mut members = 0;
        for k in 0..100 {
            // Half the samples are n-periodic after the prefix, so both
            // verdicts occur.
            let mut w = random_lasso(&mut rng, 2, 4, 2 * n + 2);
            if k % 2 == 0 {
                let v: Vec<Letter> = (0..n).map(|_| rng.gen_range(0..2)).collect();
                w = Lasso::new(w.prefix, v).unwrap();
            }
            let expected = lasso_membership(&oracle, &w).unwrap();
            let direct = (w.positions()..w.positions() + w.period.len() * n)
                .all(|i| w.nth(i) == w.nth(i + n));
            ensure!(expected == direct, "n={n}: hand-built tNCW wrong on {}", w.render(a.alphabet()));
            let got = lasso_membership(&c, &w).unwrap();
            ensure!(got == expected, "n={n}: complement wrong on {}", w.render(a.alphabet()));
            ensure!(got != lasso_membership(&a, &w).unwrap(), "n={n}: not a complement");
            members += usize::from(got);
        }
        sizes.push((n, c.states(), members));
    }
    ensure!(sizes.windows(2).all(|p| p[0].1 < p[1].1), "sizes not increasing: {sizes:?}");
    let text: Vec<String> = sizes.iter().map(|(n, s, m)| format!("n={n}: {s} states ({m}/100 members)")).collect();
    Ok(text.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("buchi succinctness", buchi_succinctness),
        ("co-buchi succinctness", cobuchi_succinctness),
        ("buchi extraction round trip", buchi_extraction),
        ("co-buchi extraction round trip", cobuchi_extraction),
        ("weak determinization", weak_determinization),
        ("encoding soundness", encoding_soundness),
        ("sd detection", sd_detection),
        ("complementation trend", complementation_trend),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| {
                let why = p.downcast_ref::<String>().cloned();
                Err(why.or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
            });
        match outcome {
            Ok(note) => println!("PASS {} {name}: {note}", i + 1),
            Err(why) => {
                println!("FAIL {} {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

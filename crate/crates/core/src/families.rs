//! Parameterized automaton families: the good-word languages with their
//! small nondeterministic and large deterministic recognizers, and two binary
//! languages whose `∞`/`⋈` closures are costly to complement.
//!
//! Letter order for the good-word families is `1 … n`, `#`, then `$` where
//! present, so `#` is letter `n` and `$` is letter `n + 1`.

use std::fmt;
use std::str::FromStr;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Budget, Error, Result};
use crate::format::Body;
use crate::nfw::{Nfw, StateId};
use crate::omega::{Acceptance, OmegaAutomaton};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    NfwGoodWords,
    NfwGoodWordsNoDollar,
    TdbwDn,
    TdcwDn,
    DfwFirstLastDiffer,
    NfwDistanceDiffer,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::NfwGoodWords,
        Family::NfwGoodWordsNoDollar,
        Family::TdbwDn,
        Family::TdcwDn,
        Family::DfwFirstLastDiffer,
        Family::NfwDistanceDiffer,
    ];

    /// Short command-line name.
    pub fn name(self) -> &'static str {
        match self {
            Family::NfwGoodWords => "nfw-good",
            Family::NfwGoodWordsNoDollar => "nfw-good-nodollar",
            Family::TdbwDn => "tdbw-dn",
            Family::TdcwDn => "tdcw-dn",
            Family::DfwFirstLastDiffer => "dfw-fld",
            Family::NfwDistanceDiffer => "nfw-dist",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
}

impl FamilySpec {
    pub fn build(self, budget: Budget) -> Result<Body> {
        let n = self.n;
        Ok(match self.family {
            Family::NfwGoodWords => Body::Finite(nfw_good_words(n)?),
            Family::NfwGoodWordsNoDollar => Body::Finite(nfw_good_words_nodollar(n)?),
            Family::TdbwDn => Body::Omega(tdbw_dn(n, budget)?),
            Family::TdcwDn => Body::Omega(tdcw_dn(n, budget)?),
            Family::DfwFirstLastDiffer => Body::Finite(dfw_first_last_differ(n)?),
            Family::NfwDistanceDiffer => Body::Finite(nfw_distance_differ(n)?),
        })
    }
}

fn positive(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("family parameter n must be at least 1".into()));
    }
    Ok(())
}

/// `1 … n`, `#`, and `$` when `dollar` is set.
pub fn good_words_alphabet(n: usize, dollar: bool) -> Alphabet {
    let mut names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    names.push("#".into());
    if dollar {
        names.push("$".into());
    }
    Alphabet::new(names).expect("distinct letters")
}

/// The three-state gadget guessing that the final letter is `i` (0-based).
/// Returns the states before seeing `i`, after seeing it, and after `#`.
fn gadget(i: usize) -> (StateId, StateId, StateId) {
    (1 + 3 * i, 2 + 3 * i, 3 + 3 * i)
}

/// Shared body of the good-word NFWs: the gadgets, the accepting state and
/// the rejecting sink. The entry from state 0 is added by the caller.
fn good_words_body(n: usize, dollar: bool, entry: impl Fn(&mut crate::nfw::NfwBuilder)) -> Nfw {
    let sigma = good_words_alphabet(n, dollar);
    let hash = n;
    let acc = 3 * n + 1;
    let mut b = Nfw::builder(sigma, 3 * n + 2);
    b.initial(0).accepting(acc);
    for i in 0..n {
        let (before, seen, closed) = gadget(i);
        for j in 0..n {
            b.edge(before, j, if j == i { seen } else { before });
            b.edge(seen, j, seen);
        }
        b.edge(seen, hash, closed);
        b.edge(closed, i, acc);
    }
    entry(&mut b);
    // The sink is counted: it is one of the 3n+3 states.
    b.complete().expect("valid construction").without_sink_marker()
}

/// NFW with `3n + 3` states for the words `$·x·#·i` with `x ∈ [n]⁺` and `i`
/// occurring in `x`. State 0 guesses `i` on reading `$`.
pub fn nfw_good_words(n: usize) -> Result<Nfw> {
    positive(n)?;
    let dollar = n + 1;
    Ok(good_words_body(n, true, |b| {
        for i in 0..n {
            b.edge(0, dollar, gadget(i).0);
        }
    }))
}

/// As [`nfw_good_words`] without the leading `$`: state 0 guesses `i` on the
/// first letter `j`, entering gadget `i` past its check when `i = j`.
pub fn nfw_good_words_nodollar(n: usize) -> Result<Nfw> {
    positive(n)?;
    Ok(good_words_body(n, false, |b| {
        for j in 0..n {
            for i in 0..n {
                let (before, seen, _) = gadget(i);
                b.edge(0, j, if i == j { seen } else { before });
            }
        }
    }))
}

/// `2^(n+1)`, refusing sizes beyond the budget or the word size.
fn dn_states(n: usize, extra: usize, budget: Budget) -> Result<usize> {
    positive(n)?;
    let limit = budget.0.saturating_sub(extra);
    if n + 1 >= usize::BITS as usize || (1usize << (n + 1)) > limit {
        return Err(Error::BudgetExceeded { limit: budget.0 });
    }
    Ok(1 << (n + 1))
}

/// Deterministic tNBW over `[n] ∪ {#, $}` with `2^(n+1)` states for the words
/// with infinitely many good infixes. State `⟨S, o⟩` has id `mask(S)`, plus
/// `2^n` in the check copy (`o = c`). The initial state is `⟨∅, c⟩`.
pub fn tdbw_dn(n: usize, budget: Budget) -> Result<OmegaAutomaton> {
    let total = dn_states(n, 0, budget)?;
    let check = 1usize << n;
    let (hash, dollar) = (n, n + 1);
    let mut b = OmegaAutomaton::builder(good_words_alphabet(n, true), Acceptance::BuchiTrans, total);
    b.initial(check);
    for s in 0..check {
        for l in 0..n {
            b.edge(s, l, s | 1 << l, false);
        }
        b.edge(s, hash, s | check, false);
        b.edge(s, dollar, 0, false);

        let c = s | check;
        for l in 0..=n {
            let hit = l < n && s & (1 << l) != 0;
            b.edge(c, l, check, hit);
        }
        b.edge(c, dollar, 0, false);
    }
    b.build()
}

/// Deterministic tNCW over `[n] ∪ {#, $}` with `2^(n+1) + 1` states for the
/// words with finitely many `$`, or a suffix made of `$`-prefixed good words
/// (without `$` inside). Ids as in [`tdbw_dn`]; `q_pass` is `2^(n+1)`.
pub fn tdcw_dn(n: usize, budget: Budget) -> Result<OmegaAutomaton> {
    let pass = dn_states(n, 1, budget)?;
    let check = 1usize << n;
    let (hash, dollar) = (n, n + 1);
    let mut b = OmegaAutomaton::builder(good_words_alphabet(n, true), Acceptance::CoBuchiTrans, pass + 1);
    b.initial(check);
    for s in 0..check {
        for l in 0..n {
            b.edge(s, l, s | 1 << l, false);
        }
        if s == 0 {
            b.edge(s, hash, check, true);
        } else {
            b.edge(s, hash, s | check, false);
        }
        b.edge(s, dollar, 0, true);

        let c = s | check;
        for l in 0..=n {
            let hit = l < n && s & (1 << l) != 0;
            match (hit, s) {
                (true, _) => b.edge(c, l, pass, false),
                // ⟨∅, c⟩ waits for `$` without penalty.
                (false, 0) => b.edge(c, l, check, false),
                (false, _) => b.edge(c, l, check, true),
            };
        }
        b.edge(c, dollar, 0, true);
    }
    for l in 0..=n {
        b.edge(pass, l, check, true);
    }
    b.edge(pass, dollar, 0, false);
    b.build()
}

/// DFW over `{0, 1}` with `2n + 3` states for the words of length `n + 1`
/// whose first and last letters differ. State `1 + b·n + (k-1)` has read `k`
/// letters starting with `b`; `2n + 1` accepts and `2n + 2` is the sink.
pub fn dfw_first_last_differ(n: usize) -> Result<Nfw> {
    positive(n)?;
    let at = |first: Letter, k: usize| 1 + first * n + (k - 1);
    let (acc, sink) = (2 * n + 1, 2 * n + 2);
    let mut b = Nfw::builder(Alphabet::numbered(2), 2 * n + 3);
    b.initial(0).accepting(acc);
    for first in 0..2 {
        b.edge(0, first, at(first, 1));
        for k in 1..n {
            b.edge_all(at(first, k), at(first, k + 1));
        }
        b.edge(at(first, n), 1 - first, acc);
        b.edge(at(first, n), first, sink);
    }
    b.edge_all(acc, sink).edge_all(sink, sink);
    b.build()
}

/// NFW over `{0, 1}` with `2n + 3` states for the words containing two
/// different letters at distance `n`. States as in [`dfw_first_last_differ`],
/// except that 0 and the accepting state loop on every letter.
pub fn nfw_distance_differ(n: usize) -> Result<Nfw> {
    positive(n)?;
    let at = |first: Letter, k: usize| 1 + first * n + (k - 1);
    let (acc, sink) = (2 * n + 1, 2 * n + 2);
    let mut b = Nfw::builder(Alphabet::numbered(2), 2 * n + 3);
    b.initial(0).accepting(acc);
    b.edge_all(0, 0);
    for first in 0..2 {
        b.edge(0, first, at(first, 1));
        for k in 1..n {
            b.edge_all(at(first, k), at(first, k + 1));
        }
        b.edge(at(first, n), 1 - first, acc);
        b.edge(at(first, n), first, sink);
    }
    b.edge_all(acc, acc).edge_all(sink, sink);
    b.build()
}

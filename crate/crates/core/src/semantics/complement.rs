//! Complementation: tight level rankings for Büchi input, breakpoint
//! determinization for co-Büchi (and weak Büchi) input.

use crate::error::{Budget, Result};
use crate::explore::Interner;
use crate::nfw::StateId;
use crate::omega::{Acceptance, Edge, OmegaAutomaton};
use crate::structure::{flip_alpha, is_weak};

/// An automaton for the complement of `L(a)`.
///
/// * deterministic weak input: α and ᾱ are swapped;
/// * co-Büchi input: breakpoint determinization, read as a deterministic
///   Büchi automaton over the reset transitions;
/// * weak Büchi input: the same, after reading it as co-Büchi;
/// * other Büchi input: rank-based construction, state-based Büchi output.
pub fn complement(a: &OmegaAutomaton, budget: Budget) -> Result<OmegaAutomaton> {
    if a.is_deterministic() && is_weak(a) {
        return Ok(flip_alpha(a));
    }
    if !a.kind().is_buchi() {
        return breakpoint_complement(a, |q, e| !a.marked(q, e), budget);
    }
    if is_weak(a) {
        return breakpoint_complement(a, |q, e| a.marked(q, e), budget);
    }
    rank_complement(a, budget)
}

/// Complement used inside decision procedures: a deterministic automaton is
/// complemented by reading its α under the dual condition.
pub(crate) fn complement_for_check(a: &OmegaAutomaton, budget: Budget) -> Result<OmegaAutomaton> {
    if a.is_deterministic() {
        return Ok(a.with_kind(a.kind().dual()));
    }
    complement(a, budget)
}

/// Breakpoint determinization. `safe(q, e)` tells which transitions a run may
/// take forever in an accepting run; the input accepts iff some run is
/// eventually safe. The output is a deterministic transition-based Büchi
/// automaton whose α-transitions are the breakpoints, so it accepts exactly
/// the words with no eventually-safe run.
pub(crate) fn breakpoint_complement(
    a: &OmegaAutomaton,
    safe: impl Fn(StateId, &Edge) -> bool,
    budget: Budget,
) -> Result<OmegaAutomaton> {
    type Key = (Vec<StateId>, Vec<StateId>);
    let mut states: Interner<Key> = Interner::new(budget);
    states.intern((a.initial().to_vec(), Vec::new()))?;
    let k = a.alphabet().len();
    let mut delta: Vec<Vec<Vec<Edge>>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let (set, owing) = states.key(i).clone();
        let mut row = Vec::with_capacity(k);
        for l in 0..k {
            let next = post(a, &set, l, |_, _| true);
            let tracked = if owing.is_empty() { &set } else { &owing };
            let owing_next = post(a, tracked, l, &safe);
            let reset = owing_next.is_empty();
            let id = states.intern((next, owing_next))?;
            row.push(vec![Edge { to: id, alpha: reset }]);
        }
        delta.push(row);
        i += 1;
    }
    let n = delta.len();
    Ok(OmegaAutomaton::from_raw(a.alphabet().clone(), Acceptance::BuchiTrans, vec![0], delta, vec![false; n]))
}

fn post(
    a: &OmegaAutomaton,
    set: &[StateId],
    l: usize,
    keep: impl Fn(StateId, &Edge) -> bool,
) -> Vec<StateId> {
    let mut out = Vec::new();
    for &q in set {
        out.extend(a.succ(q, l).iter().filter(|e| keep(q, e)).map(|e| e.to));
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum RankKey {
    /// Before the ranking has been guessed.
    Subset(Vec<StateId>),
    /// A tight level ranking of `set` (aligned `ranks`) and the even-ranked
    /// states still owing a visit to an odd rank since the last breakpoint.
    Ranked { set: Vec<StateId>, ranks: Vec<u32>, owing: Vec<StateId> },
    /// A guess that turned out wrong; loops without accepting.
    Dead,
}

/// Rank-based complementation restricted to tight rankings. A run of the
/// complement guesses, at some point, a ranking of the run DAG: ranks never
/// increase along edges, an α-transition leaving an odd rank strictly
/// decreases it, and every path must eventually settle on an odd rank, which
/// the breakpoint set `owing` checks.
fn rank_complement(a: &OmegaAutomaton, budget: Budget) -> Result<OmegaAutomaton> {
    let mut states: Interner<RankKey> = Interner::new(budget);
    states.intern(RankKey::Subset(a.initial().to_vec()))?;
    let k = a.alphabet().len();
    let mut delta: Vec<Vec<Vec<Edge>>> = Vec::new();
    let mut rankings = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let key = states.key(i).clone();
        let mut row = Vec::with_capacity(k);
        for l in 0..k {
            let mut targets: Vec<usize> = Vec::new();
            match &key {
                RankKey::Subset(set) => {
                    let next = post(a, set, l, |_, _| true);
                    let bounds = vec![u32::MAX; next.len()];
                    rankings.clear();
                    tight_rankings(&bounds, &mut rankings);
                    targets.push(states.intern(RankKey::Subset(next.clone()))?);
                    for ranks in rankings.drain(..) {
                        let key = RankKey::Ranked { set: next.clone(), ranks, owing: Vec::new() };
                        targets.push(states.intern(key)?);
                    }
                }
                RankKey::Dead => targets.push(i),
                RankKey::Ranked { set, ranks, owing } => {
                    let next = post(a, set, l, |_, _| true);
                    let mut bounds = vec![u32::MAX; next.len()];
                    for (&q, &r) in set.iter().zip(ranks) {
                        for e in a.succ(q, l) {
                            let cap = if r % 2 == 1 && a.marked(q, e) { r - 1 } else { r };
                            let j = next.binary_search(&e.to).expect("successor in post");
                            bounds[j] = bounds[j].min(cap);
                        }
                    }
                    let tracked = post(a, owing, l, |_, _| true);
                    rankings.clear();
                    tight_rankings(&bounds, &mut rankings);
                    for ranks in rankings.drain(..) {
                        let owing_next: Vec<StateId> = next
                            .iter()
                            .zip(&ranks)
                            .filter(|&(q, r)| r % 2 == 0 && (owing.is_empty() || tracked.binary_search(q).is_ok()))
                            .map(|(&q, _)| q)
                            .collect();
                        let key = RankKey::Ranked { set: next.clone(), ranks, owing: owing_next };
                        targets.push(states.intern(key)?);
                    }
                }
            }
            targets.sort_unstable();
            targets.dedup();
            if targets.is_empty() {
                // No ranking fits the bounds: this guess dies.
                targets.push(states.intern(RankKey::Dead)?);
            }
            row.push(targets.into_iter().map(|to| Edge { to, alpha: false }).collect());
        }
        delta.push(row);
        i += 1;
    }
    let keys = states.into_keys();
    let alpha_states = keys
        .iter()
        .map(|k| matches!(k, RankKey::Ranked { owing, .. } if owing.is_empty()))
        .collect();
    Ok(OmegaAutomaton::from_raw(a.alphabet().clone(), Acceptance::BuchiState, vec![0], delta, alpha_states))
}

/// All tight rankings below `bounds`: the largest rank is odd, `2m - 1`, and
/// every odd rank below it is used. The empty set has the empty ranking.
fn tight_rankings(bounds: &[u32], out: &mut Vec<Vec<u32>>) {
    let n = bounds.len();
    if n == 0 {
        out.push(Vec::new());
        return;
    }
    let mut current = vec![0u32; n];
    for m in 1..=n as u32 {
        let top = 2 * m - 1;
        if bounds.iter().all(|&b| b < top) {
            break;
        }
        fill(bounds, top, 0, 0u64, m, &mut current, out);
    }
}

fn fill(bounds: &[u32], top: u32, i: usize, covered: u64, m: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let missing = m - covered.count_ones();
    if (bounds.len() - i) < missing as usize {
        return;
    }
    if i == bounds.len() {
        out.push(current.clone());
        return;
    }
    let hi = bounds[i].min(top);
    for r in 0..=hi {
        current[i] = r;
        let c = if r % 2 == 1 { covered | 1 << (r / 2) } else { covered };
        fill(bounds, top, i + 1, c, m, current, out);
    }
}

//! Büchi encodings of `∞R`, their `$`-separated variants, and extraction of
//! an NFW for `R` from an SD-tNBW for `∞($·R·$)` through a good set.

use std::collections::VecDeque;

use crate::alphabet::{DollarSplit, Letter};
use crate::error::{Budget, Error, Result};
use crate::explore::Interner;
use crate::finite::{dfw_minimize, nfw_equivalent, subset_construct};
use crate::nfw::{Nfw, StateId};
use crate::omega::{Acceptance, Lasso, OmegaAutomaton};
use crate::semantics::contains;

/// SD-tNBW for `∞L(n)`: from every state, every letter may also restart in
/// `Q₀`; a restart is α when `ε ∈ L(n)` or when `n` could have accepted there.
pub fn encode_infty(n: &Nfw) -> OmegaAutomaton {
    let eps = n.initial().iter().any(|&q| n.is_accepting(q));
    let mut b = OmegaAutomaton::builder(n.alphabet().clone(), Acceptance::BuchiTrans, n.states());
    for &q in n.initial() {
        b.initial(q);
    }
    for (q, l, s) in n.transitions() {
        b.edge(q, l, s, false);
    }
    for q in 0..n.states() {
        for l in n.alphabet().letters() {
            let alpha = eps || n.succ(q, l).iter().any(|&s| n.is_accepting(s));
            for &q0 in n.initial() {
                b.edge(q, l, q0, alpha);
            }
        }
    }
    b.build().expect("encoding of a valid NFW")
}

/// tNBW for `∞($·L(n)·$)`: `$` leads from every state back to `Q₀`, through α
/// exactly from accepting states. Deterministic when `n` is.
pub fn encode_infty_dollar(n: &Nfw) -> Result<OmegaAutomaton> {
    let full = n.alphabet().with_dollar()?;
    let dollar = n.alphabet().len();
    let mut b = OmegaAutomaton::builder(full, Acceptance::BuchiTrans, n.states());
    for &q in n.initial() {
        b.initial(q);
    }
    for (q, l, s) in n.transitions() {
        b.edge(q, l, s, false);
    }
    for q in 0..n.states() {
        for &q0 in n.initial() {
            b.edge(q, dollar, q0, n.is_accepting(q));
        }
    }
    b.build()
}

/// State-based NBW for `∞($·L(n)·$)`. A fresh α-state `q_acc`, the last id,
/// stands in for the α `$`-transitions and then behaves like `Q₀`.
pub fn encode_infty_statebased(n: &Nfw) -> Result<OmegaAutomaton> {
    let full = n.alphabet().with_dollar()?;
    let dollar = n.alphabet().len();
    let acc = n.states();
    let mut b = OmegaAutomaton::builder(full, Acceptance::BuchiState, n.states() + 1);
    for &q in n.initial() {
        b.initial(q);
    }
    b.alpha_state(acc);
    for (q, l, s) in n.transitions() {
        b.edge(q, l, s, false);
    }
    for q in 0..n.states() {
        if n.is_accepting(q) {
            b.edge(q, dollar, acc, false);
        } else {
            for &q0 in n.initial() {
                b.edge(q, dollar, q0, false);
            }
        }
    }
    for &q0 in n.initial() {
        b.edge(acc, dollar, q0, false);
    }
    for l in n.alphabet().letters() {
        for s in n.post(n.initial(), l) {
            b.edge(acc, l, s, false);
        }
    }
    b.build()
}

/// Checks the shape shared by the extraction operations and aligns `r` with
/// the `Σ` part of `a`'s alphabet.
fn prepare(a: &OmegaAutomaton, r: &Nfw, op: &'static str) -> Result<(DollarSplit, Nfw)> {
    if !a.kind().is_buchi() {
        return Err(Error::WrongKind { op, kind: a.kind() });
    }
    let split = DollarSplit::new(a.alphabet())?;
    let r = r.reorder(&split.sigma)?;
    Ok((split, r))
}

/// For each state `q`, whether `{q}` is hopeful: no run from `q` on a word of
/// `($·R̄)⁺` traverses α. `rbar` is over `split.sigma`.
fn hopeful_states(a: &OmegaAutomaton, split: &DollarSplit, rbar: &Nfw) -> Vec<bool> {
    // Product of `a` with an automaton for `($·R̄)⁺`, whose state 0 waits for
    // `$` and whose state `1 + j` is state `j` of `rbar`.
    let m = rbar.states() + 1;
    let node = |p: StateId, j: usize, flag: bool| (p * m + j) * 2 + usize::from(flag);
    let mut hopeful = vec![true; a.states()];
    for (q, slot) in hopeful.iter_mut().enumerate() {
        let mut seen = vec![false; a.states() * m * 2];
        let mut queue = VecDeque::from([(q, 0usize, false)]);
        seen[node(q, 0, false)] = true;
        while let Some((p, j, flag)) = queue.pop_front() {
            if flag && j > 0 && rbar.is_accepting(j - 1) {
                *slot = false;
                break;
            }
            let mut push = |to: StateId, j2: usize, f: bool, queue: &mut VecDeque<_>| {
                if !seen[node(to, j2, f)] {
                    seen[node(to, j2, f)] = true;
                    queue.push_back((to, j2, f));
                }
            };
            let restarts = j == 0 || rbar.is_accepting(j - 1);
            if restarts {
                for e in a.succ(p, split.dollar) {
                    let f = flag || a.marked(p, e);
                    for &r0 in rbar.initial() {
                        push(e.to, r0 + 1, f, &mut queue);
                    }
                }
            }
            if j > 0 {
                for (l, &fl) in split.full.iter().enumerate() {
                    for e in a.succ(p, fl) {
                        let f = flag || a.marked(p, e);
                        for &t in rbar.succ(j - 1, l) {
                            push(e.to, t + 1, f, &mut queue);
                        }
                    }
                }
            }
        }
    }
    hopeful
}

/// Whether every state of `s` is hopeful with respect to `R̄ = L(rbar)`.
pub fn is_hopeful(a: &OmegaAutomaton, rbar: &Nfw, s: &[StateId]) -> Result<bool> {
    let (split, rbar) = prepare(a, rbar, "is_hopeful")?;
    let hopeful = hopeful_states(a, &split, &rbar);
    Ok(s.iter().all(|&q| hopeful[q]))
}

/// A good set of `a` for `R`, with the hopeful singletons it was judged by.
#[derive(Debug, Clone)]
pub struct GoodSetReport<'r> {
    pub set: Vec<StateId>,
    pub hopeful_singletons: Vec<StateId>,
    pub checked_against: &'r Nfw,
}

/// The first good set of `a`, by size and then lexicographically. A set `S`
/// is good when `x ∉ R` exactly for the words `x` on which no run from `S`
/// over `$x` traverses α and `δ(S, $x)` is hopeful.
pub fn find_good_set<'r>(a: &OmegaAutomaton, r: &'r Nfw, budget: Budget) -> Result<GoodSetReport<'r>> {
    let (split, r_aligned) = prepare(a, r, "find_good_set")?;
    let rbar = crate::finite::complement_dfw(&r_aligned);
    let hopeful = hopeful_states(a, &split, &rbar);
    let candidates: Vec<StateId> = (0..a.states()).filter(|&q| hopeful[q]).collect();
    let nontrivial_rbar = nfw_equivalent(&rbar, &Nfw::trivial(split.sigma.clone(), false))?.is_some();
    let mut chosen = Vec::new();
    for size in 1..=candidates.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            chosen.clear();
            chosen.extend(idx.iter().map(|&i| candidates[i]));
            // Some word is outside R, so the `$`-edges of a good set avoid α.
            let dollar_safe = !nontrivial_rbar
                || chosen.iter().all(|&q| a.succ(q, split.dollar).iter().all(|e| !a.marked(q, e)));
            if dollar_safe && is_good(a, &split, &r_aligned, &hopeful, &chosen, budget)? {
                return Ok(GoodSetReport {
                    set: chosen,
                    hopeful_singletons: candidates,
                    checked_against: r,
                });
            }
            if !next_combination(&mut idx, candidates.len()) {
                break;
            }
        }
    }
    Err(Error::NoGoodSet)
}

/// Advances `idx` to the next `idx.len()`-subset of `0..n` in lexicographic
/// order; false when `idx` was the last one.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

/// Runs from `s` over `$x`, determinized: the reached set and whether some run
/// traversed α. The result accepts `x` when `x` must be in `R` for `s` to be
/// good.
fn bad_for(a: &OmegaAutomaton, split: &DollarSplit, hopeful: &[bool], s: &[StateId], budget: Budget) -> Result<Nfw> {
    let step = |set: &[StateId], l: Letter, flag: bool| {
        let mut next = Vec::new();
        let mut f = flag;
        for &q in set {
            for e in a.succ(q, l) {
                f |= a.marked(q, e);
                next.push(e.to);
            }
        }
        next.sort_unstable();
        next.dedup();
        (next, f)
    };
    let mut states: Interner<(Vec<StateId>, bool)> = Interner::new(budget);
    states.intern(step(s, split.dollar, false))?;
    let mut delta = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let (set, flag) = states.key(i).clone();
        let mut row = Vec::with_capacity(split.full.len());
        for &l in &split.full {
            row.push(vec![states.intern(step(&set, l, flag))?]);
        }
        delta.push(row);
        i += 1;
    }
    let accepting = states
        .into_keys()
        .iter()
        .map(|(set, flag)| *flag || set.iter().any(|&q| !hopeful[q]))
        .collect();
    Ok(Nfw::from_raw(split.sigma.clone(), vec![0], delta, accepting))
}

fn is_good(
    a: &OmegaAutomaton,
    split: &DollarSplit,
    r: &Nfw,
    hopeful: &[bool],
    s: &[StateId],
    budget: Budget,
) -> Result<bool> {
    Ok(nfw_equivalent(&bad_for(a, split, hopeful, s, budget)?, r)?.is_none())
}

/// An NFW for `R` read off an SD-tNBW `a` for `∞($·R·$)`, with at most
/// `|a| + 1` states besides a completion sink, and at most `|a|` when `R` has
/// no good prefix. Trivial `R` gives a one-state automaton.
pub fn extract_nfw_infty(a: &OmegaAutomaton, r: &Nfw, budget: Budget) -> Result<Nfw> {
    let (split, r_aligned) = prepare(a, r, "extract_nfw_infty")?;
    let min = dfw_minimize(&r_aligned);
    if min.states() == 1 {
        return Ok(Nfw::trivial(split.sigma, min.is_accepting(0)));
    }
    let report = find_good_set(a, r, budget)?;
    let rbar = crate::finite::complement_dfw(&r_aligned);
    let hopeful = hopeful_states(a, &split, &rbar);

    let n = a.states();
    let acc = n;
    let k = split.sigma.len();
    let mut delta: Vec<Vec<Vec<StateId>>> = vec![vec![Vec::new(); k]; n + 1];
    for q in 0..n {
        for (l, &fl) in split.full.iter().enumerate() {
            for e in a.succ(q, fl) {
                delta[q][l].push(if a.marked(q, e) { acc } else { e.to });
            }
        }
    }
    for row in delta[acc].iter_mut() {
        row.push(acc);
    }
    let mut accepting: Vec<bool> = hopeful.iter().map(|&h| !h).collect();
    accepting.push(true);
    let mut initial: Vec<StateId> = report.set.iter().flat_map(|&q| a.targets(q, split.dollar)).collect();
    initial.sort_unstable();
    initial.dedup();
    Ok(build_pruned(split.sigma, &initial, &delta, &accepting))
}

/// Keeps the states reachable from `initial`, in id order, and routes missing
/// transitions to a completion sink.
pub(crate) fn build_pruned(
    alphabet: crate::alphabet::Alphabet,
    initial: &[StateId],
    delta: &[Vec<Vec<StateId>>],
    accepting: &[bool],
) -> Nfw {
    let n = delta.len();
    let mut seen = vec![false; n];
    let mut queue: VecDeque<StateId> = initial.iter().copied().collect();
    for &q in initial {
        seen[q] = true;
    }
    while let Some(q) = queue.pop_front() {
        for &t in delta[q].iter().flatten() {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    let old: Vec<StateId> = (0..n).filter(|&q| seen[q]).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &q) in old.iter().enumerate() {
        index[q] = i;
    }
    let mut b = Nfw::builder(alphabet, old.len());
    for &q in initial {
        b.initial(index[q]);
    }
    for (i, &q) in old.iter().enumerate() {
        if accepting[q] {
            b.accepting(i);
        }
        for (l, succ) in delta[q].iter().enumerate() {
            for &t in succ {
                b.edge(i, l, index[t]);
            }
        }
    }
    b.complete().expect("pruned automaton has valid ids and an initial state")
}

/// A shortest good prefix of `L(r)`: a word all of whose extensions are in
/// `L(r)`.
pub fn has_good_prefix(r: &Nfw) -> Option<Vec<Letter>> {
    let d = subset_construct(r);
    let n = d.states();
    let mut pred: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for (q, _, s) in d.transitions() {
        pred[s].push(q);
    }
    // States that can reach a rejecting state have no good future.
    let mut doomed = vec![false; n];
    let mut queue: VecDeque<StateId> = (0..n).filter(|&q| !d.is_accepting(q)).collect();
    for &q in &queue {
        doomed[q] = true;
    }
    while let Some(q) = queue.pop_front() {
        for &p in &pred[q] {
            if !doomed[p] {
                doomed[p] = true;
                queue.push_back(p);
            }
        }
    }
    let mut parent: Vec<Option<(StateId, Letter)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(q) = queue.pop_front() {
        if !doomed[q] {
            let mut word = Vec::new();
            let mut cur = q;
            while let Some((p, l)) = parent[cur] {
                word.push(l);
                cur = p;
            }
            word.reverse();
            return Some(word);
        }
        for l in d.alphabet().letters() {
            let s = d.succ(q, l)[0];
            if !seen[s] {
                seen[s] = true;
                parent[s] = Some((q, l));
                queue.push_back(s);
            }
        }
    }
    None
}

/// Up-front check that `L(a) = ∞($·L(r)·$)`: a lasso in the symmetric
/// difference, or `None`.
pub fn check_infty_dollar(a: &OmegaAutomaton, r: &Nfw, budget: Budget) -> Result<Option<Lasso>> {
    let (_, r_aligned) = prepare(a, r, "check_infty_dollar")?;
    let reference = encode_infty_dollar(&r_aligned)?.reorder(a.alphabet())?;
    if let Some(w) = contains(a, &reference, budget)? {
        return Ok(Some(w));
    }
    contains(&reference, a, budget)
}

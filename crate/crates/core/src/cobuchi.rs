//! Co-Büchi encodings of the `$`-separated language `⋈$(R)` and the
//! syntactic extraction of an NFW for `R` back from a tNCW.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{DollarSplit, Letter};
use crate::error::{Error, Result};
use crate::finite::subset_construct;
use crate::nfw::{Nfw, StateId};
use crate::omega::{Acceptance, OmegaAutomaton};
use crate::structure::{alpha_components, normalize, to_transition_based, Touch};

/// SD-tNCW for `⋈$(L(n))`: `$` leads from every state back to `Q₀`, through α
/// exactly from rejecting states. Deterministic when `n` is.
pub fn encode_bowtie(n: &Nfw) -> Result<OmegaAutomaton> {
    let full = n.alphabet().with_dollar()?;
    let dollar = n.alphabet().len();
    let mut b = OmegaAutomaton::builder(full, Acceptance::CoBuchiTrans, n.states());
    for &q in n.initial() {
        b.initial(q);
    }
    for (q, l, s) in n.transitions() {
        b.edge(q, l, s, false);
    }
    for q in 0..n.states() {
        for &q0 in n.initial() {
            b.edge(q, dollar, q0, !n.is_accepting(q));
        }
    }
    b.build()
}

/// State-based NCW for `⋈$(L(n))`. A fresh α-state `p`, the last id, is
/// entered on `$` from rejecting states and then behaves like `Q₀`, on `$`
/// included.
pub fn encode_bowtie_statebased(n: &Nfw) -> Result<OmegaAutomaton> {
    let full = n.alphabet().with_dollar()?;
    let dollar = n.alphabet().len();
    let p = n.states();
    let mut b = OmegaAutomaton::builder(full, Acceptance::CoBuchiState, n.states() + 1);
    for &q in n.initial() {
        b.initial(q);
    }
    b.alpha_state(p);
    for (q, l, s) in n.transitions() {
        b.edge(q, l, s, false);
    }
    let dollar_targets = |q: StateId| -> Vec<StateId> {
        if n.is_accepting(q) {
            n.initial().to_vec()
        } else {
            vec![p]
        }
    };
    for q in 0..n.states() {
        for t in dollar_targets(q) {
            b.edge(q, dollar, t, false);
        }
    }
    for &q0 in n.initial() {
        for t in dollar_targets(q0) {
            b.edge(p, dollar, t, false);
        }
    }
    for l in n.alphabet().letters() {
        for s in n.post(n.initial(), l) {
            b.edge(p, l, s, false);
        }
    }
    b.build()
}

/// A word all of whose extensions, on both sides, are outside `R`. Letters
/// follow the alphabet of the automaton it was computed for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadInfixWitness {
    pub word: Vec<Letter>,
    /// A state of the ω-automaton whose ᾱ-component can read `word^ω`.
    pub trap_state: Option<StateId>,
}

/// The automaton extraction works on: transition-based, trimmed and
/// normalized, with its alphabet split around `$`.
fn prepare(a: &OmegaAutomaton) -> Result<(OmegaAutomaton, DollarSplit)> {
    if a.kind().is_buchi() {
        return Err(Error::WrongKind { op: "extract_nfw_bowtie", kind: a.kind() });
    }
    let split = DollarSplit::new(a.alphabet())?;
    let t = if a.kind().is_state_based() { to_transition_based(a, Touch::default())? } else { a.clone() };
    let t = normalize(&t.trim().0)?;
    Ok((t, split))
}

/// An NFW for `R` read off a tNCW for `⋈$(R)`, over the same states plus a
/// rejecting sink `q_rej` (the last id). Initial states are the targets of
/// ᾱ `$`-transitions, accepting states their sources, and the other
/// transitions are the ᾱ `Σ`-transitions.
pub fn extract_nfw_bowtie(a: &OmegaAutomaton) -> Result<Nfw> {
    let (t, split) = prepare(a)?;
    Ok(extract_prepared(&t, &split))
}

fn extract_prepared(t: &OmegaAutomaton, split: &DollarSplit) -> Nfw {
    let n = t.states();
    let rej = n;
    let mut b = Nfw::builder(split.sigma.clone(), n + 1);
    let mut has_initial = false;
    for q in 0..n {
        for e in t.succ(q, split.dollar).iter().filter(|e| !e.alpha) {
            b.initial(e.to);
            b.accepting(q);
            has_initial = true;
        }
        for (l, &fl) in split.full.iter().enumerate() {
            let edges = t.succ(q, fl);
            if edges.iter().all(|e| e.alpha) {
                b.edge(q, l, rej);
            }
            for e in edges.iter().filter(|e| !e.alpha) {
                b.edge(q, l, e.to);
            }
        }
    }
    if !has_initial {
        b.initial(rej);
    }
    b.edge_all(rej, rej);
    let nfw = b.build().expect("extraction is total by construction");
    nfw.with_sink(rej).expect("q_rej is a rejecting sink")
}

/// Replaces `q_rej` of an extracted NFW by a state of `a` whose ᾱ-component
/// reads `witness.word^ω` and has no `$`-transition. That state is unreachable
/// in `n` and becomes the rejecting sink, so the result has `|a|` states.
pub fn bad_infix_optimize(a: &OmegaAutomaton, n: &Nfw, witness: &BadInfixWitness) -> Result<Nfw> {
    let (t, split) = prepare(a)?;
    if n.states() != t.states() + 1 || n.alphabet() != &split.sigma {
        return Err(Error::Invalid("the NFW was not extracted from this automaton".into()));
    }
    let trap = if witness.word.is_empty() {
        // `ε` is a bad infix only of the empty language. Then no path of `n`
        // reaches an accepting state, and turning any state into the sink
        // only removes paths.
        let reach = n.reachable();
        if n.accepting_states().any(|q| reach[q]) {
            return Err(Error::Invalid("the empty word is a bad infix only of the empty language".into()));
        }
        0
    } else {
        let word: Vec<Letter> = witness.word.iter().map(|&l| split.full[l]).collect();
        find_trap(&t, split.dollar, &word)?
    };
    let rej = t.states();
    let redirect = |s: StateId| if s == rej { trap } else { s };
    let mut b = Nfw::builder(split.sigma.clone(), rej);
    for &q in n.initial() {
        b.initial(redirect(q));
    }
    for q in (0..rej).filter(|&q| q != trap) {
        if n.is_accepting(q) {
            b.accepting(q);
        }
        for l in split.sigma.letters() {
            for &s in n.succ(q, l) {
                b.edge(q, l, redirect(s));
            }
        }
    }
    b.edge_all(trap, trap);
    let out = b.build().expect("every state keeps its transitions");
    out.with_sink(trap)
}

/// The smallest state whose ᾱ-component has no `$`-transition and can read
/// `word^ω` without leaving the component.
fn find_trap(t: &OmegaAutomaton, dollar: Letter, word: &[Letter]) -> Result<StateId> {
    let comps = alpha_components(t)?;
    let m = word.len();
    let inside = |q: StateId, s: StateId| comps.same(q, s);
    let mut has_dollar = vec![false; comps.components.len()];
    for q in 0..t.states() {
        if t.succ(q, dollar).iter().any(|e| !e.alpha && inside(q, e.to)) {
            has_dollar[comps.component_of[q]] = true;
        }
    }
    // Nodes (state, position in word) with ᾱ edges inside components. Keep
    // only nodes with an infinite path by peeling off dead ends.
    let node = |q: StateId, i: usize| q * m + i;
    let succ = |q: StateId, i: usize| -> Vec<usize> {
        t.succ(q, word[i])
            .iter()
            .filter(|e| !e.alpha && inside(q, e.to))
            .map(|e| node(e.to, (i + 1) % m))
            .collect()
    };
    let total = t.states() * m;
    let mut out_degree = vec![0usize; total];
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); total];
    for q in 0..t.states() {
        for i in 0..m {
            let s = succ(q, i);
            out_degree[node(q, i)] = s.len();
            for v in s {
                pred[v].push(node(q, i));
            }
        }
    }
    let mut alive = vec![true; total];
    let mut queue: VecDeque<usize> = (0..total).filter(|&v| out_degree[v] == 0).collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &u in &pred[v] {
            out_degree[u] -= 1;
            if out_degree[u] == 0 && alive[u] {
                queue.push_back(u);
            }
        }
    }
    (0..t.states())
        .find(|&q| alive[node(q, 0)] && !has_dollar[comps.component_of[q]])
        .ok_or(Error::NoTrapFound)
}

/// A shortest bad infix of `L(r)` of length at most `bound`, found by a
/// breadth-first search over the images of the reachable states of the
/// subset DFW. `None` only means no witness within the bound.
pub fn has_bad_infix(r: &Nfw, bound: Option<usize>) -> Option<BadInfixWitness> {
    let d = subset_construct(r);
    let n = d.states();
    let bound = bound.unwrap_or(2 * n + 2);
    let mut pred: Vec<Vec<StateId>> = vec![Vec::new(); n];
    for (q, _, s) in d.transitions() {
        pred[s].push(q);
    }
    // States from which some accepting state is reachable.
    let mut live = vec![false; n];
    let mut queue: VecDeque<StateId> = d.accepting_states().collect();
    for &q in &queue {
        live[q] = true;
    }
    while let Some(q) = queue.pop_front() {
        for &p in &pred[q] {
            if !live[p] {
                live[p] = true;
                queue.push_back(p);
            }
        }
    }
    // Every state of the subset DFW is reachable.
    let start: Vec<StateId> = (0..n).collect();
    let mut parent: HashMap<Vec<StateId>, Option<(Vec<StateId>, Letter)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((set, depth)) = queue.pop_front() {
        if set.iter().all(|&q| !live[q]) {
            let mut word = Vec::new();
            let mut cur = set;
            while let Some(Some((prev, l))) = parent.get(&cur).cloned() {
                word.push(l);
                cur = prev;
            }
            word.reverse();
            return Some(BadInfixWitness { word, trap_state: None });
        }
        if depth == bound {
            continue;
        }
        for l in d.alphabet().letters() {
            let next = d.post(&set, l);
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((set.clone(), l)));
                queue.push_back((next, depth + 1));
            }
        }
    }
    None
}

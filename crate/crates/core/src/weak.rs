//! Semantically deterministic weak automata: the δ-close relation, its
//! transitive closure, deepest-SCC representatives, determinization into a
//! DWW over a subset of the states, and DWW minimization.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Budget, Error, Result};
use crate::graph::tarjan;
use crate::nfw::StateId;
use crate::omega::{Acceptance, Lasso, OmegaAutomaton};
use crate::semantics::{contains, is_sd, is_universal};
use crate::structure::{dualize_dww, is_weak, scc_order, SccOrder};

/// A symmetric relation over states, with the number of rounds that added
/// pairs while it was computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CloseRelation {
    pairs: Vec<Vec<bool>>,
    pub iterations: usize,
}

impl CloseRelation {
    pub fn identity(n: usize) -> Self {
        let mut pairs = vec![vec![false; n]; n];
        for (q, row) in pairs.iter_mut().enumerate() {
            row[q] = true;
        }
        CloseRelation { pairs, iterations: 0 }
    }

    /// Builds a relation from a list of pairs, closed under symmetry and
    /// reflexivity.
    pub fn from_pairs(n: usize, pairs: &[(StateId, StateId)]) -> Self {
        let mut r = Self::identity(n);
        for &(p, q) in pairs {
            r.pairs[p][q] = true;
            r.pairs[q][p] = true;
        }
        r
    }

    pub fn states(&self) -> usize {
        self.pairs.len()
    }

    pub fn related(&self, p: StateId, q: StateId) -> bool {
        self.pairs[p][q]
    }

    /// Pairs `(p, q)` with `p < q`.
    pub fn pairs(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        let n = self.states();
        (0..n).flat_map(move |p| (p + 1..n).filter(move |&q| self.pairs[p][q]).map(move |q| (p, q)))
    }

    fn insert(&mut self, p: StateId, q: StateId) -> bool {
        if self.pairs[p][q] {
            return false;
        }
        self.pairs[p][q] = true;
        self.pairs[q][p] = true;
        true
    }
}

fn require_nww(a: &OmegaAutomaton, op: &'static str) -> Result<()> {
    if a.kind() != Acceptance::BuchiState {
        return Err(Error::WrongKind { op, kind: a.kind() });
    }
    if !is_weak(a) {
        return Err(Error::NotWeak { op });
    }
    Ok(())
}

/// The δ-close relation: `s₁` and `s₂` are related when some word leads from
/// one state to both. Initial states count as successors of a common source,
/// so they start out related.
pub fn delta_close(a: &OmegaAutomaton) -> Result<CloseRelation> {
    require_nww(a, "delta_close")?;
    let n = a.states();
    let mut h = CloseRelation::identity(n);
    let mut frontier: Vec<(StateId, StateId)> = (0..n).map(|q| (q, q)).collect();
    for (i, &p) in a.initial().iter().enumerate() {
        for &q in &a.initial()[i + 1..] {
            h.insert(p, q);
            frontier.push((p, q));
        }
    }
    // Only pairs added in the last round can produce new pairs.
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &(p, q) in &frontier {
            for l in a.alphabet().letters() {
                for s1 in a.targets(p, l) {
                    for s2 in a.targets(q, l) {
                        if h.insert(s1, s2) {
                            next.push((s1, s2));
                        }
                    }
                }
            }
        }
        if !next.is_empty() {
            h.iterations += 1;
        }
        frontier = next;
    }
    Ok(h)
}

/// The smallest equivalence relation containing `h`.
pub fn close_transitive(h: &CloseRelation) -> CloseRelation {
    let n = h.states();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut x = x;
        while parent[x] != r {
            let next = parent[x];
            parent[x] = r;
            x = next;
        }
        r
    }
    for (p, q) in h.pairs() {
        let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
        if rp != rq {
            parent[rp.max(rq)] = rp.min(rq);
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    let pairs = (0..n).map(|p| (0..n).map(|q| roots[p] == roots[q]).collect()).collect();
    CloseRelation { pairs, iterations: h.iterations }
}

/// Equivalence classes of a relation, each with its representative: the
/// smallest state of the deepest SCC the class meets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentativePartition {
    /// Classes ordered by their smallest member.
    pub classes: Vec<Vec<StateId>>,
    pub representative: Vec<StateId>,
    pub class_of: Vec<usize>,
    pub scc_order: SccOrder,
}

impl RepresentativePartition {
    /// The representative of the class of `q`.
    pub fn rep(&self, q: StateId) -> StateId {
        self.representative[self.class_of[q]]
    }
}

/// Groups states by the equivalence `h` and picks representatives in the
/// deepest SCC, SCCs being ordered sources first.
pub fn representatives(a: &OmegaAutomaton, h: &CloseRelation) -> RepresentativePartition {
    let n = a.states();
    let order = scc_order(a);
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<StateId>> = Vec::new();
    for q in 0..n {
        if class_of[q] != usize::MAX {
            continue;
        }
        let members: Vec<StateId> = (q..n).filter(|&s| h.related(q, s)).collect();
        for &s in &members {
            class_of[s] = classes.len();
        }
        classes.push(members);
    }
    let representative = classes
        .iter()
        .map(|members| {
            let deepest = members.iter().map(|&s| order.component_of[s]).max().expect("nonempty class");
            *members.iter().find(|&&s| order.component_of[s] == deepest).expect("member of deepest SCC")
        })
        .collect();
    RepresentativePartition { classes, representative, class_of, scc_order: order }
}

/// A DWW over representatives of the input, with the original id of each
/// of its states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Determinized {
    pub automaton: OmegaAutomaton,
    pub origin: Vec<StateId>,
}

/// Determinizes an SD-NWW. Each state keeps the acceptance of the original
/// state it comes from, and its `σ`-successor is the representative of the
/// class of its `σ`-successors. Only representatives reachable this way are
/// kept, in increasing original id. The output is unspecified when the input
/// is not SD; see [`determinize_sd_nww_checked`].
pub fn determinize_sd_nww(a: &OmegaAutomaton) -> Result<Determinized> {
    require_nww(a, "determinize_sd_nww")?;
    let h = close_transitive(&delta_close(a)?);
    let part = representatives(a, &h);
    let step = |p: StateId, l: Letter| -> StateId {
        let first = a.succ(p, l)[0].to;
        debug_assert!(a.targets(p, l).all(|q| part.class_of[q] == part.class_of[first]));
        part.rep(first)
    };
    let start = part.rep(a.initial()[0]);
    let mut keep = vec![false; a.states()];
    keep[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for l in a.alphabet().letters() {
            let s = step(p, l);
            if !keep[s] {
                keep[s] = true;
                queue.push_back(s);
            }
        }
    }
    let origin: Vec<StateId> = (0..a.states()).filter(|&q| keep[q]).collect();
    let mut index = vec![usize::MAX; a.states()];
    for (i, &q) in origin.iter().enumerate() {
        index[q] = i;
    }
    let mut b = OmegaAutomaton::builder(a.alphabet().clone(), Acceptance::BuchiState, origin.len());
    b.initial(index[start]);
    for (i, &p) in origin.iter().enumerate() {
        if a.is_alpha_state(p) {
            b.alpha_state(i);
        }
        for l in a.alphabet().letters() {
            b.edge(i, l, index[step(p, l)], false);
        }
    }
    Ok(Determinized { automaton: b.build()?, origin })
}

/// [`determinize_sd_nww`] after checking that the input is SD.
pub fn determinize_sd_nww_checked(a: &OmegaAutomaton, budget: Budget) -> Result<Determinized> {
    require_nww(a, "determinize_sd_nww")?;
    if let Some(c) = is_sd(a, budget)? {
        return Err(Error::NotSd(Box::new(c)));
    }
    determinize_sd_nww(a)
}

/// A DWW for the complement of an SD-NWW.
pub fn complement_sd_nww(a: &OmegaAutomaton) -> Result<OmegaAutomaton> {
    dualize_dww(&determinize_sd_nww(a)?.automaton)
}

/// The final acceptance status of the run of a deterministic weak `d` from
/// `q` on `v^ω`.
fn accepts_periodic(d: &OmegaAutomaton, q: StateId, v: &[Letter]) -> bool {
    let m = v.len();
    let mut seen = vec![usize::MAX; d.states() * m];
    let mut trace = Vec::new();
    let (mut s, mut i) = (q, 0);
    while seen[s * m + i] == usize::MAX {
        seen[s * m + i] = trace.len();
        trace.push(s);
        s = d.succ(s, v[i])[0].to;
        i = (i + 1) % m;
    }
    trace[seen[s * m + i]..].iter().any(|&x| d.is_alpha_state(x))
}

/// Language equivalence on the states of a DWW. Two states differ exactly
/// when their pair reaches a cycle of the pair graph whose two projections
/// have different acceptance.
fn dww_equivalence(d: &OmegaAutomaton) -> Vec<Vec<bool>> {
    let n = d.states();
    let k = d.alphabet().len();
    let step = |q: StateId, l: Letter| d.succ(q, l)[0].to;
    let node = |p: StateId, q: StateId| p * n + q;
    let succ = |v: usize| -> Vec<usize> {
        let (p, q) = (v / n, v % n);
        (0..k).map(|l| node(step(p, l), step(q, l))).collect()
    };
    let comps = tarjan(n * n, succ);
    let mut differ = vec![false; n * n];
    for comp in &comps {
        let cyclic = comp.len() > 1 || succ(comp[0]).contains(&comp[0]);
        if cyclic {
            for &v in comp {
                if d.is_alpha_state(v / n) != d.is_alpha_state(v % n) {
                    differ[v] = true;
                }
            }
        }
    }
    // Tarjan emits sinks first, so a single pass propagates backwards.
    for comp in &comps {
        let any = comp.iter().any(|&v| differ[v] || succ(v).iter().any(|&w| differ[w]));
        if any {
            for &v in comp {
                differ[v] = true;
            }
        }
    }
    (0..n).map(|p| (0..n).map(|q| !differ[node(p, q)]).collect()).collect()
}

/// The minimal DWW equivalent to a deterministic weak `d`, states numbered
/// breadth-first from the initial state. Each SCC of the quotient takes the
/// acceptance its cycles have in `d`; transient states are ᾱ.
pub fn minimize_dww(d: &OmegaAutomaton) -> Result<OmegaAutomaton> {
    require_nww(d, "minimize_dww")?;
    if !d.is_deterministic() {
        return Err(Error::NotDeterministic { op: "minimize_dww" });
    }
    let d = d.trim().0;
    let n = d.states();
    let k = d.alphabet().len();
    let eq = dww_equivalence(&d);
    let mut block_of = vec![usize::MAX; n];
    let mut rep = Vec::new();
    for q in 0..n {
        if block_of[q] == usize::MAX {
            for s in q..n {
                if eq[q][s] {
                    block_of[s] = rep.len();
                }
            }
            rep.push(q);
        }
    }
    // Breadth-first numbering of the quotient.
    let step = |b: usize, l: Letter| block_of[d.succ(rep[b], l)[0].to];
    let mut number = vec![usize::MAX; rep.len()];
    let start = block_of[d.initial()[0]];
    number[start] = 0;
    let mut order = vec![start];
    let mut i = 0;
    while i < order.len() {
        for l in 0..k {
            let s = step(order[i], l);
            if number[s] == usize::MAX {
                number[s] = order.len();
                order.push(s);
            }
        }
        i += 1;
    }
    let m = order.len();
    let next = |x: usize, l: Letter| number[step(order[x], l)];
    let comps = tarjan(m, |x| (0..k).map(move |l| next(x, l)).collect::<Vec<_>>());
    let mut alpha = vec![false; m];
    for comp in &comps {
        let c = comp[0];
        let Some(cycle) = cycle_word(m, k, &next, c, comp) else {
            continue;
        };
        let status = accepts_periodic(&d, rep[order[c]], &cycle);
        for &x in comp {
            alpha[x] = status;
        }
    }
    let mut b = OmegaAutomaton::builder(d.alphabet().clone(), Acceptance::BuchiState, m);
    b.initial(0);
    for x in 0..m {
        if alpha[x] {
            b.alpha_state(x);
        }
        for l in 0..k {
            b.edge(x, l, next(x, l), false);
        }
    }
    b.build()
}

/// A shortest nonempty word leading from `c` back to `c` inside `comp`.
fn cycle_word(m: usize, k: usize, next: &impl Fn(usize, Letter) -> usize, c: usize, comp: &[usize]) -> Option<Vec<Letter>> {
    let mut in_comp = vec![false; m];
    for &x in comp {
        in_comp[x] = true;
    }
    let mut parent: Vec<Option<(usize, Letter)>> = vec![None; m];
    let mut seen = vec![false; m];
    let mut queue = VecDeque::new();
    for l in 0..k {
        let s = next(c, l);
        if s == c {
            return Some(vec![l]);
        }
        if in_comp[s] && !seen[s] {
            seen[s] = true;
            parent[s] = Some((c, l));
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        for l in 0..k {
            let s = next(x, l);
            if s == c {
                let mut word = vec![l];
                let mut cur = x;
                while let Some((p, l)) = parent[cur] {
                    word.push(l);
                    if p == c {
                        break;
                    }
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            if in_comp[s] && !seen[s] {
                seen[s] = true;
                parent[s] = Some((x, l));
                queue.push_back(s);
            }
        }
    }
    None
}

/// Containment both ways and universality of two SD-NWWs, decided on their
/// determinizations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakDecision {
    /// A lasso in `L(a) \ L(b)`.
    pub a_not_in_b: Option<Lasso>,
    /// A lasso in `L(b) \ L(a)`.
    pub b_not_in_a: Option<Lasso>,
    /// A lasso rejected by `a`.
    pub a_not_universal: Option<Lasso>,
    /// A lasso rejected by `b`.
    pub b_not_universal: Option<Lasso>,
}

impl WeakDecision {
    pub fn equivalent(&self) -> bool {
        self.a_not_in_b.is_none() && self.b_not_in_a.is_none()
    }
}

pub fn weak_decision(a: &OmegaAutomaton, b: &OmegaAutomaton) -> Result<WeakDecision> {
    let da = determinize_sd_nww(a)?.automaton;
    let db = determinize_sd_nww(b)?.automaton.reorder(a.alphabet())?;
    // Complements of deterministic automata are read off directly, so every
    // step below is polynomial.
    let budget = Budget::default();
    Ok(WeakDecision {
        a_not_in_b: contains(&da, &db, budget)?,
        b_not_in_a: contains(&db, &da, budget)?,
        a_not_universal: is_universal(&da, budget)?,
        b_not_universal: is_universal(&db, budget)?,
    })
}

/// Parameters of [`generate_sd_nww`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SdNwwParams {
    /// States of the underlying DWW.
    pub states: usize,
    pub letters: usize,
    /// Number of duplicate states added on top.
    pub duplicates: usize,
    pub seed: u64,
}

/// A random SD-NWW: a random DWW whose SCCs get random uniform acceptance,
/// plus duplicates of some states. Transitions into a duplicated state go to
/// a random nonempty subset of its copies, so every choice is between
/// equivalent states.
pub fn generate_sd_nww(params: SdNwwParams) -> OmegaAutomaton {
    let SdNwwParams { states, letters, duplicates, seed } = params;
    let states = states.max(1);
    let letters = letters.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base: Vec<Vec<StateId>> =
        (0..states).map(|_| (0..letters).map(|_| rng.gen_range(0..states)).collect()).collect();
    let comps = tarjan(states, |q| base[q].clone());
    let mut alpha = vec![false; states];
    for comp in &comps {
        let status = rng.gen_bool(0.5);
        for &q in comp {
            alpha[q] = status;
        }
    }
    let origin: Vec<StateId> = (0..states).chain((0..duplicates).map(|_| rng.gen_range(0..states))).collect();
    let copies: Vec<Vec<StateId>> =
        (0..states).map(|q| (0..origin.len()).filter(|&c| origin[c] == q).collect()).collect();
    let total = origin.len();
    let alphabet = Alphabet::numbered(letters);
    let mut b = OmegaAutomaton::builder(alphabet, Acceptance::BuchiState, total);
    b.initial(0);
    for q in 0..total {
        if alpha[origin[q]] {
            b.alpha_state(q);
        }
        for l in 0..letters {
            let target = &copies[base[origin[q]][l]];
            let first = target[rng.gen_range(0..target.len())];
            b.edge(q, l, first, false);
            for &c in target {
                if c != first && rng.gen_bool(0.5) {
                    b.edge(q, l, c, false);
                }
            }
        }
    }
    let a = b.build().expect("generated automaton is total");
    // Copies may sit outside their original's SCC; acceptance is uniform on
    // copies, so weakness only needs checking, not repair.
    debug_assert!(is_weak(&a));
    a
}

/// An SD-NWW that cannot be determinized by pruning. Over `{a, b}`: state 0
/// reads either letter into `{1, 2}`; state 1 moves on `a` to the accepting
/// sink 3 and on `b` back to 0; state 2 is symmetric with the letters
/// swapped. Every state is universal, yet any pruning loses the word that
/// always contradicts the choice just made.
pub fn sd_nww_not_dbp() -> OmegaAutomaton {
    let ab = Alphabet::new(["a", "b"]).expect("valid letters");
    let mut b = OmegaAutomaton::builder(ab, Acceptance::BuchiState, 4);
    b.initial(0).alpha_state(3);
    for l in 0..2 {
        b.edge(0, l, 1, false).edge(0, l, 2, false).edge(3, l, 3, false);
    }
    b.edge(1, 0, 3, false).edge(1, 1, 0, false);
    b.edge(2, 1, 3, false).edge(2, 0, 0, false);
    b.build().expect("valid automaton")
}

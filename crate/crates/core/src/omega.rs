//! ω-automata with Büchi or co-Büchi acceptance on states or transitions.

use std::collections::VecDeque;
use std::fmt;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::nfw::StateId;

/// Acceptance condition: Büchi or co-Büchi, on states or on transitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Acceptance {
    BuchiState,
    BuchiTrans,
    CoBuchiState,
    CoBuchiTrans,
}

impl Acceptance {
    pub fn is_buchi(self) -> bool {
        matches!(self, Acceptance::BuchiState | Acceptance::BuchiTrans)
    }

    pub fn is_state_based(self) -> bool {
        matches!(self, Acceptance::BuchiState | Acceptance::CoBuchiState)
    }

    pub fn new(buchi: bool, state_based: bool) -> Self {
        match (buchi, state_based) {
            (true, true) => Acceptance::BuchiState,
            (true, false) => Acceptance::BuchiTrans,
            (false, true) => Acceptance::CoBuchiState,
            (false, false) => Acceptance::CoBuchiTrans,
        }
    }

    /// Same placement, opposite condition.
    pub fn dual(self) -> Self {
        Acceptance::new(!self.is_buchi(), self.is_state_based())
    }
}

impl fmt::Display for Acceptance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Acceptance::BuchiState => "NBW",
            Acceptance::BuchiTrans => "tNBW",
            Acceptance::CoBuchiState => "NCW",
            Acceptance::CoBuchiTrans => "tNCW",
        })
    }
}

/// Outgoing transition: target state and α membership (transition-based only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub to: StateId,
    pub alpha: bool,
}

/// A nondeterministic ω-automaton with a total transition relation.
///
/// State-based kinds keep every `Edge::alpha` false; transition-based kinds
/// keep every α-state flag false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaAutomaton {
    alphabet: Alphabet,
    kind: Acceptance,
    initial: Vec<StateId>,
    delta: Vec<Vec<Vec<Edge>>>,
    alpha_states: Vec<bool>,
}

#[derive(Debug, Clone)]
pub struct OmegaBuilder {
    alphabet: Alphabet,
    kind: Acceptance,
    initial: Vec<StateId>,
    delta: Vec<Vec<Vec<Edge>>>,
    alpha_states: Vec<bool>,
}

impl OmegaBuilder {
    pub fn new(alphabet: Alphabet, kind: Acceptance, states: usize) -> Self {
        let k = alphabet.len();
        OmegaBuilder {
            alphabet,
            kind,
            initial: Vec::new(),
            delta: vec![vec![Vec::new(); k]; states],
            alpha_states: vec![false; states],
        }
    }

    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn add_state(&mut self) -> StateId {
        self.delta.push(vec![Vec::new(); self.alphabet.len()]);
        self.alpha_states.push(false);
        self.delta.len() - 1
    }

    pub fn initial(&mut self, q: StateId) -> &mut Self {
        crate::nfw::insert_sorted(&mut self.initial, q);
        self
    }

    pub fn alpha_state(&mut self, q: StateId) -> &mut Self {
        self.alpha_states[q] = true;
        self
    }

    pub fn has_edge(&self, from: StateId, l: Letter, to: StateId) -> bool {
        self.delta[from][l].iter().any(|e| e.to == to)
    }

    /// Adds `from -l-> to`; a repeated edge keeps α if either copy has it.
    pub fn edge(&mut self, from: StateId, l: Letter, to: StateId, alpha: bool) -> &mut Self {
        let row = &mut self.delta[from][l];
        match row.binary_search_by_key(&to, |e| e.to) {
            Ok(i) => row[i].alpha |= alpha,
            Err(i) => row.insert(i, Edge { to, alpha }),
        }
        self
    }

    pub fn build(self) -> Result<OmegaAutomaton> {
        let n = self.delta.len();
        if self.initial.is_empty() {
            return Err(Error::Invalid("no initial state".into()));
        }
        for &q in &self.initial {
            if q >= n {
                return Err(Error::Invalid(format!("state {q} out of range (states = {n})")));
            }
        }
        let state_based = self.kind.is_state_based();
        for (q, row) in self.delta.iter().enumerate() {
            for (l, edges) in row.iter().enumerate() {
                if edges.is_empty() {
                    return Err(Error::Invalid(format!(
                        "no transition from state {q} on letter {}",
                        self.alphabet.name(l)
                    )));
                }
                for e in edges {
                    if e.to >= n {
                        return Err(Error::Invalid(format!("state {} out of range (states = {n})", e.to)));
                    }
                    if state_based && e.alpha {
                        return Err(Error::Invalid(format!("{} automaton with an α-transition", self.kind)));
                    }
                }
            }
        }
        if !state_based && self.alpha_states.iter().any(|&a| a) {
            return Err(Error::Invalid(format!("{} automaton with an α-state", self.kind)));
        }
        Ok(OmegaAutomaton {
            alphabet: self.alphabet,
            kind: self.kind,
            initial: self.initial,
            delta: self.delta,
            alpha_states: self.alpha_states,
        })
    }
}

impl OmegaAutomaton {
    pub fn builder(alphabet: Alphabet, kind: Acceptance, states: usize) -> OmegaBuilder {
        OmegaBuilder::new(alphabet, kind, states)
    }

    /// One state, every transition a self-loop in α (`alpha = true`) or not.
    pub fn single_state(alphabet: Alphabet, kind: Acceptance, alpha: bool) -> OmegaAutomaton {
        let mut b = OmegaBuilder::new(alphabet.clone(), kind, 1);
        b.initial(0);
        if kind.is_state_based() && alpha {
            b.alpha_state(0);
        }
        for l in alphabet.letters() {
            b.edge(0, l, 0, alpha && !kind.is_state_based());
        }
        b.build().expect("single state automaton is valid")
    }

    pub fn universal(alphabet: Alphabet) -> OmegaAutomaton {
        Self::single_state(alphabet, Acceptance::BuchiTrans, true)
    }

    pub fn empty(alphabet: Alphabet) -> OmegaAutomaton {
        Self::single_state(alphabet, Acceptance::BuchiTrans, false)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn kind(&self) -> Acceptance {
        self.kind
    }

    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn succ(&self, q: StateId, l: Letter) -> &[Edge] {
        &self.delta[q][l]
    }

    pub fn targets(&self, q: StateId, l: Letter) -> impl Iterator<Item = StateId> + '_ {
        self.delta[q][l].iter().map(|e| e.to)
    }

    pub fn is_alpha_state(&self, q: StateId) -> bool {
        self.alpha_states[q]
    }

    pub fn alpha_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.states()).filter(|&q| self.alpha_states[q])
    }

    /// Whether `q -l-> to` is an α-transition. False for state-based kinds.
    pub fn is_alpha_edge(&self, q: StateId, l: Letter, to: StateId) -> bool {
        self.delta[q][l].iter().any(|e| e.to == to && e.alpha)
    }

    /// Whether taking `e` out of `q` counts towards acceptance: the edge is in
    /// α, or (state-based) its source is. Visiting α-states infinitely often
    /// is the same as leaving them infinitely often, so every procedure that
    /// only looks at infinite behaviour can work with this one notion.
    pub(crate) fn marked(&self, q: StateId, e: &Edge) -> bool {
        e.alpha || self.alpha_states[q]
    }

    /// `(from, letter, to, alpha)` in canonical order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Letter, StateId, bool)> + '_ {
        self.delta.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(l, edges)| edges.iter().map(move |e| (q, l, e.to, e.alpha)))
        })
    }

    pub fn alpha_transitions(&self) -> impl Iterator<Item = (StateId, Letter, StateId)> + '_ {
        self.transitions().filter(|t| t.3).map(|(q, l, s, _)| (q, l, s))
    }

    pub fn is_deterministic(&self) -> bool {
        self.initial.len() == 1 && self.delta.iter().flatten().all(|s| s.len() == 1)
    }

    pub fn reachable(&self) -> Vec<bool> {
        self.reachable_from(&self.initial)
    }

    pub fn reachable_from(&self, from: &[StateId]) -> Vec<bool> {
        let mut seen = vec![false; self.states()];
        let mut queue = VecDeque::new();
        for &q in from {
            if !seen[q] {
                seen[q] = true;
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            for edges in &self.delta[q] {
                for e in edges {
                    if !seen[e.to] {
                        seen[e.to] = true;
                        queue.push_back(e.to);
                    }
                }
            }
        }
        seen
    }

    /// The same automaton started from `initial` instead.
    pub fn with_initial(&self, initial: &[StateId]) -> OmegaAutomaton {
        let mut a = self.clone();
        a.initial = initial.to_vec();
        a.initial.sort_unstable();
        a.initial.dedup();
        a
    }

    pub fn rerooted(&self, q: StateId) -> OmegaAutomaton {
        self.with_initial(&[q])
    }

    /// Drops unreachable states, keeping the relative order of the rest.
    /// Returns the trimmed automaton and, for each new id, the old id.
    pub fn trim(&self) -> (OmegaAutomaton, Vec<StateId>) {
        let keep = self.reachable();
        let old: Vec<StateId> = (0..self.states()).filter(|&q| keep[q]).collect();
        let mut index = vec![usize::MAX; self.states()];
        for (i, &q) in old.iter().enumerate() {
            index[q] = i;
        }
        let delta = old
            .iter()
            .map(|&q| {
                self.delta[q]
                    .iter()
                    .map(|edges| edges.iter().map(|e| Edge { to: index[e.to], alpha: e.alpha }).collect())
                    .collect()
            })
            .collect();
        let a = OmegaAutomaton {
            alphabet: self.alphabet.clone(),
            kind: self.kind,
            initial: self.initial.iter().map(|&q| index[q]).collect(),
            delta,
            alpha_states: old.iter().map(|&q| self.alpha_states[q]).collect(),
        };
        (a, old)
    }

    /// The same automaton with letters reordered to match `alphabet`.
    pub fn reorder(&self, alphabet: &Alphabet) -> Result<OmegaAutomaton> {
        if alphabet == &self.alphabet {
            return Ok(self.clone());
        }
        let map = alphabet.mapping_to(&self.alphabet)?;
        let mut a = self.clone();
        a.alphabet = alphabet.clone();
        a.delta = self
            .delta
            .iter()
            .map(|row| map.iter().map(|&old| row[old].clone()).collect())
            .collect();
        Ok(a)
    }

    /// Same structure read under `kind`. Placement (state/transition) must match.
    pub(crate) fn with_kind(&self, kind: Acceptance) -> OmegaAutomaton {
        debug_assert_eq!(kind.is_state_based(), self.kind.is_state_based());
        let mut a = self.clone();
        a.kind = kind;
        a
    }

    pub(crate) fn from_raw(
        alphabet: Alphabet,
        kind: Acceptance,
        initial: Vec<StateId>,
        delta: Vec<Vec<Vec<Edge>>>,
        alpha_states: Vec<bool>,
    ) -> OmegaAutomaton {
        debug_assert!(!initial.is_empty());
        debug_assert!(delta.iter().flatten().all(|e| !e.is_empty()));
        debug_assert!(!kind.is_state_based() || delta.iter().flatten().flatten().all(|e| !e.alpha));
        debug_assert!(kind.is_state_based() || alpha_states.iter().all(|&a| !a));
        OmegaAutomaton { alphabet, kind, initial, delta, alpha_states }
    }

    pub(crate) fn delta(&self) -> &Vec<Vec<Vec<Edge>>> {
        &self.delta
    }

    pub(crate) fn alpha_state_flags(&self) -> &[bool] {
        &self.alpha_states
    }
}

/// An ultimately periodic word `prefix · period^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lasso {
    pub prefix: Vec<Letter>,
    pub period: Vec<Letter>,
}

impl Lasso {
    pub fn new(prefix: Vec<Letter>, period: Vec<Letter>) -> Result<Lasso> {
        if period.is_empty() {
            return Err(Error::Invalid("lasso period is empty".into()));
        }
        Ok(Lasso { prefix, period })
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        match self.prefix.iter().chain(&self.period).find(|&&l| l >= alphabet.len()) {
            Some(l) => Err(Error::UnknownLetter(format!("#{l}"))),
            None => Ok(()),
        }
    }

    /// Total number of positions in the product with an automaton.
    pub fn positions(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    /// Letter read at position `i` of the unrolled lasso graph.
    pub fn letter_at(&self, i: usize) -> Letter {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[i - self.prefix.len()]
        }
    }

    /// Successor position in the unrolled lasso graph.
    pub fn next(&self, i: usize) -> usize {
        if i + 1 < self.positions() {
            i + 1
        } else {
            self.prefix.len()
        }
    }

    /// The `i`-th letter of the infinite word.
    pub fn nth(&self, i: usize) -> Letter {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// `lasso PREFIX ; PERIOD`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut s = String::from("lasso");
        for &l in &self.prefix {
            s.push(' ');
            s.push_str(alphabet.name(l));
        }
        s.push_str(" ;");
        for &l in &self.period {
            s.push(' ');
            s.push_str(alphabet.name(l));
        }
        s
    }

    /// Parses `[lasso] PREFIX ; PERIOD`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Lasso> {
        let text = text.trim();
        let body = text.strip_prefix("lasso").filter(|rest| rest.is_empty() || rest.starts_with(char::is_whitespace)).unwrap_or(text);
        let mut parts = body.splitn(2, ';');
        let prefix = parts.next().unwrap_or("");
        let period = parts
            .next()
            .ok_or_else(|| Error::Invalid("lasso needs `;` between prefix and period".into()))?;
        Lasso::new(alphabet.parse_word(prefix)?, alphabet.parse_word(period)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_rejects_partial_delta() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let mut b = OmegaAutomaton::builder(ab, Acceptance::BuchiTrans, 1);
        b.initial(0).edge(0, 0, 0, true);
        assert!(b.build().is_err());
    }

    #[test]
    fn builder_rejects_mixed_placement() {
        let a = Alphabet::new(["a"]).unwrap();
        let mut b = OmegaAutomaton::builder(a.clone(), Acceptance::BuchiState, 1);
        b.initial(0).edge(0, 0, 0, true);
        assert!(b.build().is_err());
        let mut b = OmegaAutomaton::builder(a, Acceptance::CoBuchiTrans, 1);
        b.initial(0).alpha_state(0).edge(0, 0, 0, false);
        assert!(b.build().is_err());
    }

    #[test]
    fn lasso_text_round_trip() {
        let ab = Alphabet::new(["a", "b", "$"]).unwrap();
        let w = Lasso::new(vec![], vec![2, 0, 1]).unwrap();
        let text = w.render(&ab);
        assert_eq!(text, "lasso ; $ a b");
        assert_eq!(Lasso::parse(&text, &ab).unwrap(), w);
        assert_eq!(Lasso::parse("a ; b", &ab).unwrap(), Lasso::new(vec![0], vec![1]).unwrap());
        assert!(Lasso::parse("a ;", &ab).is_err());
        assert!(Lasso::parse("a b", &ab).is_err());
        assert!(Lasso::parse("; c", &ab).is_err());
    }

    #[test]
    fn lasso_positions_wrap_into_period() {
        let w = Lasso::new(vec![0], vec![1, 2]).unwrap();
        assert_eq!((0..3).map(|i| w.next(i)).collect::<Vec<_>>(), vec![1, 2, 1]);
        assert_eq!((0..6).map(|i| w.nth(i)).collect::<Vec<_>>(), vec![0, 1, 2, 1, 2, 1]);
    }
}

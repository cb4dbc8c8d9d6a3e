//! Nondeterministic finite-word automata.

use std::collections::VecDeque;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};

/// Dense state identifier, `0..states`.
pub type StateId = usize;

/// A nondeterministic finite-word automaton with a total transition relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfw {
    alphabet: Alphabet,
    initial: Vec<StateId>,
    delta: Vec<Vec<Vec<StateId>>>,
    accepting: Vec<bool>,
    sink: Option<StateId>,
}

/// An NFW under construction; the transition relation may be partial.
#[derive(Debug, Clone)]
pub struct NfwBuilder {
    alphabet: Alphabet,
    initial: Vec<StateId>,
    delta: Vec<Vec<Vec<StateId>>>,
    accepting: Vec<bool>,
}

impl NfwBuilder {
    pub fn new(alphabet: Alphabet, states: usize) -> Self {
        let k = alphabet.len();
        NfwBuilder {
            alphabet,
            initial: Vec::new(),
            delta: vec![vec![Vec::new(); k]; states],
            accepting: vec![false; states],
        }
    }

    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn add_state(&mut self) -> StateId {
        self.delta.push(vec![Vec::new(); self.alphabet.len()]);
        self.accepting.push(false);
        self.delta.len() - 1
    }

    pub fn initial(&mut self, q: StateId) -> &mut Self {
        insert_sorted(&mut self.initial, q);
        self
    }

    pub fn accepting(&mut self, q: StateId) -> &mut Self {
        self.accepting[q] = true;
        self
    }

    pub fn edge(&mut self, from: StateId, letter: Letter, to: StateId) -> &mut Self {
        insert_sorted(&mut self.delta[from][letter], to);
        self
    }

    /// Adds `from -l-> to` for every letter `l`.
    pub fn edge_all(&mut self, from: StateId, to: StateId) -> &mut Self {
        for l in self.alphabet.letters() {
            self.edge(from, l, to);
        }
        self
    }

    /// Builds the automaton, failing on a missing transition.
    pub fn build(self) -> Result<Nfw> {
        self.check_ids()?;
        for (q, row) in self.delta.iter().enumerate() {
            for (l, succ) in row.iter().enumerate() {
                if succ.is_empty() {
                    return Err(Error::Invalid(format!(
                        "no transition from state {q} on letter {}",
                        self.alphabet.name(l)
                    )));
                }
            }
        }
        Ok(Nfw {
            alphabet: self.alphabet,
            initial: self.initial,
            delta: self.delta,
            accepting: self.accepting,
            sink: None,
        })
    }

    /// Routes every missing transition to a fresh rejecting sink, appended as
    /// the highest state id. Adds nothing when the relation is already total.
    pub fn complete(mut self) -> Result<Nfw> {
        let missing = self.delta.iter().flatten().any(Vec::is_empty);
        let mut sink = None;
        if missing {
            let s = self.add_state();
            for row in &mut self.delta {
                for succ in row.iter_mut() {
                    if succ.is_empty() {
                        succ.push(s);
                    }
                }
            }
            sink = Some(s);
        }
        let mut n = self.build()?;
        n.sink = sink;
        Ok(n)
    }

    fn check_ids(&self) -> Result<()> {
        let n = self.delta.len();
        if self.initial.is_empty() {
            return Err(Error::Invalid("no initial state".into()));
        }
        if let Some(&q) = self.initial.iter().chain(self.delta.iter().flatten().flatten()).find(|&&q| q >= n) {
            return Err(Error::Invalid(format!("state {q} out of range (states = {n})")));
        }
        Ok(())
    }
}

pub(crate) fn insert_sorted(v: &mut Vec<StateId>, q: StateId) {
    if let Err(pos) = v.binary_search(&q) {
        v.insert(pos, q);
    }
}

impl Nfw {
    pub fn builder(alphabet: Alphabet, states: usize) -> NfwBuilder {
        NfwBuilder::new(alphabet, states)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.delta.len()
    }

    /// State count not including the completion sink, the count that
    /// matches a partial automaton.
    pub fn size(&self) -> usize {
        self.states() - usize::from(self.sink.is_some())
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn succ(&self, q: StateId, l: Letter) -> &[StateId] {
        &self.delta[q][l]
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.states()).filter(|&q| self.accepting[q])
    }

    /// The rejecting sink added by completion, if any.
    pub fn completion_sink(&self) -> Option<StateId> {
        self.sink
    }

    /// Marks `q` as a completion sink. `q` must be a rejecting state whose
    /// transitions all loop.
    pub fn with_sink(mut self, q: StateId) -> Result<Nfw> {
        let loops = self.delta[q].iter().all(|s| s == &[q]);
        if self.accepting[q] || !loops {
            return Err(Error::Invalid(format!("state {q} is not a rejecting sink")));
        }
        self.sink = Some(q);
        Ok(self)
    }

    pub fn without_sink_marker(mut self) -> Nfw {
        self.sink = None;
        self
    }

    pub fn is_deterministic(&self) -> bool {
        self.initial.len() == 1 && self.delta.iter().flatten().all(|s| s.len() == 1)
    }

    /// The successor set of a sorted state set.
    pub fn post(&self, set: &[StateId], l: Letter) -> Vec<StateId> {
        let mut out: Vec<StateId> = set.iter().flat_map(|&q| self.delta[q][l].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn run(&self, word: &[Letter]) -> Vec<StateId> {
        word.iter().fold(self.initial.clone(), |set, &l| self.post(&set, l))
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.run(word).iter().any(|&q| self.accepting[q])
    }

    /// States reachable from the initial states.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.states()];
        let mut queue: VecDeque<StateId> = VecDeque::new();
        for &q in &self.initial {
            seen[q] = true;
            queue.push_back(q);
        }
        while let Some(q) = queue.pop_front() {
            for succ in &self.delta[q] {
                for &s in succ {
                    if !seen[s] {
                        seen[s] = true;
                        queue.push_back(s);
                    }
                }
            }
        }
        seen
    }

    /// Drops unreachable states, keeping the relative order of the rest.
    pub fn trim(&self) -> Nfw {
        let keep = self.reachable();
        let mut index = vec![usize::MAX; self.states()];
        let mut next = 0;
        for q in 0..self.states() {
            if keep[q] {
                index[q] = next;
                next += 1;
            }
        }
        let delta = (0..self.states())
            .filter(|&q| keep[q])
            .map(|q| {
                self.delta[q]
                    .iter()
                    .map(|s| s.iter().map(|&t| index[t]).collect())
                    .collect()
            })
            .collect();
        Nfw {
            alphabet: self.alphabet.clone(),
            initial: self.initial.iter().map(|&q| index[q]).collect(),
            delta,
            accepting: (0..self.states()).filter(|&q| keep[q]).map(|q| self.accepting[q]).collect(),
            sink: self.sink.filter(|&s| keep[s]).map(|s| index[s]),
        }
    }

    /// The same automaton with its letters reordered to match `alphabet`.
    pub fn reorder(&self, alphabet: &Alphabet) -> Result<Nfw> {
        let map = alphabet.mapping_to(&self.alphabet)?;
        let delta = self
            .delta
            .iter()
            .map(|row| map.iter().map(|&old| row[old].clone()).collect())
            .collect();
        Ok(Nfw {
            alphabet: alphabet.clone(),
            initial: self.initial.clone(),
            delta,
            accepting: self.accepting.clone(),
            sink: self.sink,
        })
    }

    /// Same states and transitions with the accepting set flipped. Only a
    /// complement when the automaton is deterministic.
    pub fn flip_accepting(&self) -> Nfw {
        let mut n = self.clone();
        for a in &mut n.accepting {
            *a = !*a;
        }
        n.sink = None;
        n
    }

    pub(crate) fn from_raw(
        alphabet: Alphabet,
        initial: Vec<StateId>,
        delta: Vec<Vec<Vec<StateId>>>,
        accepting: Vec<bool>,
    ) -> Nfw {
        debug_assert!(!initial.is_empty());
        debug_assert!(delta.iter().flatten().all(|s| !s.is_empty()));
        Nfw { alphabet, initial, delta, accepting, sink: None }
    }

    /// `(from, letter, to)` triples in canonical order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Letter, StateId)> + '_ {
        self.delta.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(l, succ)| succ.iter().map(move |&s| (q, l, s)))
        })
    }

    /// One-state automaton accepting every word (`accept = true`) or none.
    pub fn trivial(alphabet: Alphabet, accept: bool) -> Nfw {
        let k = alphabet.len();
        Nfw {
            alphabet,
            initial: vec![0],
            delta: vec![vec![vec![0]; k]],
            accepting: vec![accept],
            sink: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn complete_adds_one_sink_for_ab() {
        let mut b = Nfw::builder(ab(), 3);
        b.initial(0).accepting(2).edge(0, 0, 1).edge(1, 1, 2);
        let n = b.complete().unwrap();
        assert_eq!(n.states(), 4);
        assert_eq!(n.completion_sink(), Some(3));
        assert!(n.accepts(&[0, 1]));
        for w in [&[][..], &[0], &[1], &[0, 0], &[0, 1, 0], &[1, 1]] {
            assert!(!n.accepts(w), "{w:?}");
        }
    }

    #[test]
    fn complete_is_identity_on_total_input() {
        let mut b = Nfw::builder(ab(), 2);
        b.initial(0).accepting(1).edge_all(0, 1).edge_all(1, 0);
        let total = b.clone().build().unwrap();
        assert_eq!(b.complete().unwrap(), total);
    }

    #[test]
    fn complete_empty_relation() {
        let mut b = Nfw::builder(ab(), 1);
        b.initial(0);
        let n = b.complete().unwrap();
        assert_eq!(n.states(), 2);
        assert!(!n.accepts(&[]) && !n.accepts(&[0, 1]));
    }

    #[test]
    fn build_names_missing_transition() {
        let mut b = Nfw::builder(ab(), 1);
        b.initial(0).edge(0, 0, 0);
        let err = b.build().unwrap_err().to_string();
        assert!(err.contains("state 0") && err.contains("letter b"), "{err}");
    }

    #[test]
    fn trim_keeps_order() {
        let mut b = Nfw::builder(ab(), 3);
        b.initial(0).accepting(2).edge_all(0, 2).edge_all(1, 1).edge_all(2, 2);
        let t = b.build().unwrap().trim();
        assert_eq!(t.states(), 2);
        assert!(t.is_accepting(1));
    }
}

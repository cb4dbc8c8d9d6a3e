use std::collections::HashMap;

use crate::alphabet::Letter;
use crate::error::{Budget, Result};
use crate::nfw::StateId;
use crate::omega::{Lasso, OmegaAutomaton};

use super::complement::complement_for_check;
use super::membership::is_empty;
use super::product::intersect;

/// A lasso in `L(a) \ L(b)`, or `None` when `L(a) ⊆ L(b)`.
pub fn contains(a: &OmegaAutomaton, b: &OmegaAutomaton, budget: Budget) -> Result<Option<Lasso>> {
    let b = b.reorder(a.alphabet())?;
    let not_b = complement_for_check(&b, budget)?;
    Ok(is_empty(&intersect(a, &not_b, budget)?))
}

/// A lasso rejected by `a`, or `None` when `a` accepts every word.
pub fn is_universal(a: &OmegaAutomaton, budget: Budget) -> Result<Option<Lasso>> {
    Ok(is_empty(&complement_for_check(a, budget)?))
}

/// A lasso accepted from exactly one of `q` and `s`.
pub fn distinguish(a: &OmegaAutomaton, q: StateId, s: StateId, budget: Budget) -> Result<Option<Lasso>> {
    Checker::new(a, budget).distinguish(q, s)
}

pub fn states_equivalent(a: &OmegaAutomaton, q: StateId, s: StateId, budget: Budget) -> Result<bool> {
    Ok(distinguish(a, q, s, budget)?.is_none())
}

/// Where the two inequivalent choices come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SdOrigin {
    /// Two initial states.
    Initial,
    /// Two successors of `state` on `letter`.
    Transition { state: StateId, letter: Letter },
}

/// A nondeterministic choice between inequivalent states. `witness` is
/// accepted from exactly one of `succ_a` and `succ_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdCounterexample {
    pub origin: SdOrigin,
    pub succ_a: StateId,
    pub succ_b: StateId,
    pub witness: Lasso,
}

/// `None` when `a` is semantically deterministic; otherwise the first
/// offending choice, scanning initial states and then reachable states in
/// increasing order.
pub fn is_sd(a: &OmegaAutomaton, budget: Budget) -> Result<Option<SdCounterexample>> {
    if a.is_deterministic() {
        return Ok(None);
    }
    let mut checker = Checker::new(a, budget);
    // Equivalence is transitive, so comparing each choice with the first one
    // of its group is enough.
    let first_differing = |checker: &mut Checker, group: &[StateId]| -> Result<Option<(StateId, StateId, Lasso)>> {
        for &other in group.iter().skip(1) {
            if let Some(w) = checker.distinguish(group[0], other)? {
                return Ok(Some((group[0], other, w)));
            }
        }
        Ok(None)
    };
    if let Some((x, y, w)) = first_differing(&mut checker, a.initial())? {
        return Ok(Some(SdCounterexample { origin: SdOrigin::Initial, succ_a: x, succ_b: y, witness: w }));
    }
    let reach = a.reachable();
    for q in (0..a.states()).filter(|&q| reach[q]) {
        for l in a.alphabet().letters() {
            let group: Vec<StateId> = a.targets(q, l).collect();
            if let Some((x, y, w)) = first_differing(&mut checker, &group)? {
                let origin = SdOrigin::Transition { state: q, letter: l };
                return Ok(Some(SdCounterexample { origin, succ_a: x, succ_b: y, witness: w }));
            }
        }
    }
    Ok(None)
}

/// Pairwise state comparisons sharing complements and verdicts.
struct Checker<'a> {
    a: &'a OmegaAutomaton,
    budget: Budget,
    rooted: HashMap<StateId, (OmegaAutomaton, OmegaAutomaton)>,
    verdicts: HashMap<(StateId, StateId), Option<Lasso>>,
}

impl<'a> Checker<'a> {
    fn new(a: &'a OmegaAutomaton, budget: Budget) -> Self {
        Checker { a, budget, rooted: HashMap::new(), verdicts: HashMap::new() }
    }

    /// The automaton rooted at `q`, trimmed, with its complement.
    fn rooted(&mut self, q: StateId) -> Result<&(OmegaAutomaton, OmegaAutomaton)> {
        if !self.rooted.contains_key(&q) {
            let at_q = self.a.rerooted(q).trim().0;
            let not_q = complement_for_check(&at_q, self.budget)?;
            self.rooted.insert(q, (at_q, not_q));
        }
        Ok(&self.rooted[&q])
    }

    fn distinguish(&mut self, q: StateId, s: StateId) -> Result<Option<Lasso>> {
        if q == s {
            return Ok(None);
        }
        let key = (q.min(s), q.max(s));
        if let Some(v) = self.verdicts.get(&key) {
            return Ok(v.clone());
        }
        let (at_q, not_q) = self.rooted(q)?.clone();
        let (at_s, not_s) = self.rooted(s)?.clone();
        let mut w = is_empty(&intersect(&at_q, &not_s, self.budget)?);
        if w.is_none() {
            w = is_empty(&intersect(&at_s, &not_q, self.budget)?);
        }
        self.verdicts.insert(key, w.clone());
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::omega::Acceptance;
    use crate::semantics::lasso_membership;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    /// On `a` from 0, either an accepting trap (1) or a rejecting trap (2).
    fn two_traps() -> OmegaAutomaton {
        let mut b = OmegaAutomaton::builder(ab(), Acceptance::BuchiState, 3);
        b.initial(0).alpha_state(1);
        b.edge(0, 0, 1, false).edge(0, 0, 2, false).edge(0, 1, 2, false);
        for l in 0..2 {
            b.edge(1, l, 1, false).edge(2, l, 2, false);
        }
        b.build().unwrap()
    }

    #[test]
    fn two_traps_are_not_sd() {
        let a = two_traps();
        let c = is_sd(&a, Budget::default()).unwrap().expect("counterexample");
        assert_eq!(c.origin, SdOrigin::Transition { state: 0, letter: 0 });
        let from_a = lasso_membership(&a.rerooted(c.succ_a), &c.witness).unwrap();
        let from_b = lasso_membership(&a.rerooted(c.succ_b), &c.witness).unwrap();
        assert_ne!(from_a, from_b);
    }

    #[test]
    fn universality_and_containment() {
        let u = OmegaAutomaton::universal(ab());
        assert_eq!(is_universal(&u, Budget::default()).unwrap(), None);
        let a = two_traps();
        let w = is_universal(&a, Budget::default()).unwrap().expect("not universal");
        assert!(!lasso_membership(&a, &w).unwrap());
        assert_eq!(contains(&a, &u, Budget::default()).unwrap(), None);
        assert_eq!(contains(&a, &a, Budget::default()).unwrap(), None);
        let w = contains(&u, &a, Budget::default()).unwrap().expect("strict");
        assert!(!lasso_membership(&a, &w).unwrap());
    }

    #[test]
    fn state_equivalence() {
        let a = two_traps();
        assert!(states_equivalent(&a, 1, 1, Budget::default()).unwrap());
        assert!(!states_equivalent(&a, 1, 2, Budget::default()).unwrap());
    }
}

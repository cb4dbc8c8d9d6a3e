//! Structural operations: SCC orders, ᾱ-components, normalization,
//! acceptance-placement conversions, weakness and dualization.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::topo_sccs;
use crate::nfw::StateId;
use crate::omega::{Acceptance, Edge, OmegaAutomaton};

/// SCCs in a topological order (sources first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccOrder {
    pub components: Vec<Vec<StateId>>,
    pub component_of: Vec<usize>,
}

impl SccOrder {
    fn from_graph<F, I>(n: usize, succ: F) -> SccOrder
    where
        F: FnMut(usize) -> I,
        I: IntoIterator<Item = usize>,
    {
        let (components, component_of) = topo_sccs(n, succ);
        SccOrder { components, component_of }
    }

    pub fn same(&self, p: StateId, q: StateId) -> bool {
        self.component_of[p] == self.component_of[q]
    }
}

/// SCCs of the whole transition graph, every state included.
pub fn scc_order(a: &OmegaAutomaton) -> SccOrder {
    SccOrder::from_graph(a.states(), |q| {
        a.delta()[q].iter().flatten().map(|e| e.to).collect::<Vec<_>>()
    })
}

fn require_tncw(a: &OmegaAutomaton, op: &'static str) -> Result<()> {
    if a.kind() == Acceptance::CoBuchiTrans {
        Ok(())
    } else {
        Err(Error::WrongKind { op, kind: a.kind() })
    }
}

/// SCCs of the graph restricted to ᾱ-transitions.
pub fn alpha_components(a: &OmegaAutomaton) -> Result<SccOrder> {
    require_tncw(a, "alpha_components")?;
    Ok(safe_components(a))
}

fn safe_components(a: &OmegaAutomaton) -> SccOrder {
    SccOrder::from_graph(a.states(), |q| {
        a.delta()[q]
            .iter()
            .flatten()
            .filter(|e| !e.alpha)
            .map(|e| e.to)
            .collect::<Vec<_>>()
    })
}

/// Moves every ᾱ-transition that connects two ᾱ-components into α.
pub fn normalize(a: &OmegaAutomaton) -> Result<OmegaAutomaton> {
    require_tncw(a, "normalize")?;
    let comps = safe_components(a);
    let delta = a
        .delta()
        .iter()
        .enumerate()
        .map(|(q, row)| {
            row.iter()
                .map(|edges| {
                    edges
                        .iter()
                        .map(|e| Edge { to: e.to, alpha: e.alpha || !comps.same(q, e.to) })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(OmegaAutomaton::from_raw(
        a.alphabet().clone(),
        a.kind(),
        a.initial().to_vec(),
        delta,
        vec![false; a.states()],
    ))
}

/// Which transitions a state-based co-Büchi α-state turns into α.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Touch {
    /// Transitions leaving or entering an α-state.
    #[default]
    SourceOrTarget,
    /// Transitions entering an α-state.
    Target,
}

/// Moves state-based acceptance onto transitions. Büchi: transitions leaving
/// an α-state; co-Büchi: transitions touching one, as selected by `touch`.
pub fn to_transition_based(a: &OmegaAutomaton, touch: Touch) -> Result<OmegaAutomaton> {
    if !a.kind().is_state_based() {
        return Err(Error::WrongKind { op: "to_transition_based", kind: a.kind() });
    }
    let buchi = a.kind().is_buchi();
    let delta = a
        .delta()
        .iter()
        .enumerate()
        .map(|(q, row)| {
            row.iter()
                .map(|edges| {
                    edges
                        .iter()
                        .map(|e| {
                            let (src, dst) = (a.is_alpha_state(q), a.is_alpha_state(e.to));
                            let alpha = match (buchi, touch) {
                                (true, _) => src,
                                (false, Touch::SourceOrTarget) => src || dst,
                                (false, Touch::Target) => dst,
                            };
                            Edge { to: e.to, alpha }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(OmegaAutomaton::from_raw(
        a.alphabet().clone(),
        Acceptance::new(buchi, false),
        a.initial().to_vec(),
        delta,
        vec![false; a.states()],
    ))
}

/// Moves transition-based acceptance onto states by splitting each state into
/// an α-entered and an ᾱ-entered copy. Only reachable copies are built,
/// numbered in breadth-first order.
pub fn to_state_based(a: &OmegaAutomaton) -> Result<OmegaAutomaton> {
    if a.kind().is_state_based() {
        return Err(Error::WrongKind { op: "to_state_based", kind: a.kind() });
    }
    let mut index: HashMap<(StateId, bool), StateId> = HashMap::new();
    let mut order: Vec<(StateId, bool)> = Vec::new();
    let mut intern = |key: (StateId, bool), order: &mut Vec<(StateId, bool)>| {
        *index.entry(key).or_insert_with(|| {
            order.push(key);
            order.len() - 1
        })
    };
    let initial: Vec<StateId> = a.initial().iter().map(|&q| intern((q, false), &mut order)).collect();
    let mut delta: Vec<Vec<Vec<Edge>>> = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let (q, _) = order[i];
        let row = a
            .alphabet()
            .letters()
            .map(|l| {
                let mut edges: Vec<Edge> = a
                    .succ(q, l)
                    .iter()
                    .map(|e| Edge { to: intern((e.to, e.alpha), &mut order), alpha: false })
                    .collect();
                edges.sort();
                edges
            })
            .collect();
        delta.push(row);
        i += 1;
    }
    let alpha_states = order.iter().map(|&(_, entered_alpha)| entered_alpha).collect();
    Ok(OmegaAutomaton::from_raw(
        a.alphabet().clone(),
        Acceptance::new(a.kind().is_buchi(), true),
        initial,
        delta,
        alpha_states,
    ))
}

/// Every SCC is uniformly α or ᾱ: by its states (state-based) or by its
/// internal transitions (transition-based).
pub fn is_weak(a: &OmegaAutomaton) -> bool {
    let scc = scc_order(a);
    let mut colour: Vec<Option<bool>> = vec![None; scc.components.len()];
    let mut agree = |c: usize, v: bool| match colour[c] {
        None => {
            colour[c] = Some(v);
            true
        }
        Some(x) => x == v,
    };
    if a.kind().is_state_based() {
        (0..a.states()).all(|q| agree(scc.component_of[q], a.is_alpha_state(q)))
    } else {
        a.transitions()
            .filter(|&(q, _, s, _)| scc.same(q, s))
            .all(|(q, _, _, alpha)| agree(scc.component_of[q], alpha))
    }
}

/// Complements a deterministic weak automaton by swapping α and ᾱ.
pub fn dualize_dww(d: &OmegaAutomaton) -> Result<OmegaAutomaton> {
    if !d.is_deterministic() {
        return Err(Error::NotDeterministic { op: "dualize_dww" });
    }
    if !is_weak(d) {
        return Err(Error::NotWeak { op: "dualize_dww" });
    }
    Ok(flip_alpha(d))
}

/// Swaps α and ᾱ without any checks.
pub(crate) fn flip_alpha(a: &OmegaAutomaton) -> OmegaAutomaton {
    let state_based = a.kind().is_state_based();
    let delta = a
        .delta()
        .iter()
        .map(|row| {
            row.iter()
                .map(|edges| {
                    edges
                        .iter()
                        .map(|e| Edge { to: e.to, alpha: !state_based && !e.alpha })
                        .collect()
                })
                .collect()
        })
        .collect();
    let alpha_states = a.alpha_state_flags().iter().map(|&x| state_based && !x).collect();
    OmegaAutomaton::from_raw(a.alphabet().clone(), a.kind(), a.initial().to_vec(), delta, alpha_states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn single_loop_is_one_component() {
        let a = OmegaAutomaton::universal(ab());
        assert_eq!(scc_order(&a).components, vec![vec![0]]);
    }

    #[test]
    fn chain_is_two_components() {
        let mut b = OmegaAutomaton::builder(ab(), Acceptance::BuchiTrans, 2);
        b.initial(0);
        for l in 0..2 {
            b.edge(0, l, 1, false).edge(1, l, 1, false);
        }
        let a = b.build().unwrap();
        assert_eq!(scc_order(&a).components, vec![vec![0], vec![1]]);
    }

    #[test]
    fn alpha_components_reject_other_kinds() {
        let a = OmegaAutomaton::universal(ab());
        assert!(matches!(alpha_components(&a), Err(Error::WrongKind { .. })));
        assert!(normalize(&a).is_err());
    }

    #[test]
    fn all_alpha_tncw_has_singleton_components() {
        let mut b = OmegaAutomaton::builder(ab(), Acceptance::CoBuchiTrans, 2);
        b.initial(0);
        for l in 0..2 {
            b.edge(0, l, 1, true).edge(1, l, 0, true);
        }
        let a = b.build().unwrap();
        assert_eq!(alpha_components(&a).unwrap().components, vec![vec![0], vec![1]]);
    }

    #[test]
    fn normalize_moves_cross_edge() {
        let mut b = OmegaAutomaton::builder(ab(), Acceptance::CoBuchiTrans, 2);
        b.initial(0);
        b.edge(0, 0, 1, false).edge(0, 1, 0, false).edge(1, 0, 1, false).edge(1, 1, 1, false);
        let a = b.build().unwrap();
        let n = normalize(&a).unwrap();
        assert!(n.is_alpha_edge(0, 0, 1));
        assert!(!n.is_alpha_edge(0, 1, 0));
        assert_eq!(normalize(&n).unwrap(), n);
    }

    #[test]
    fn one_state_nbw_becomes_all_alpha() {
        let a = OmegaAutomaton::single_state(ab(), Acceptance::BuchiState, true);
        let t = to_transition_based(&a, Touch::default()).unwrap();
        assert_eq!(t.alpha_transitions().count(), 2);
        assert!(to_transition_based(&t, Touch::default()).is_err());
    }

    #[test]
    fn state_based_split() {
        let mut b = OmegaAutomaton::builder(ab(), Acceptance::BuchiTrans, 1);
        b.initial(0).edge(0, 0, 0, true).edge(0, 1, 0, false);
        let s = to_state_based(&b.build().unwrap()).unwrap();
        assert_eq!(s.states(), 2);
        assert_eq!(s.alpha_states().collect::<Vec<_>>(), vec![1]);
        assert!(to_state_based(&s).is_err());
    }

    #[test]
    fn mixed_scc_is_not_weak() {
        let mut b = OmegaAutomaton::builder(ab(), Acceptance::BuchiState, 2);
        b.initial(0).alpha_state(0);
        for l in 0..2 {
            b.edge(0, l, 1, false).edge(1, l, 0, false);
        }
        assert!(!is_weak(&b.build().unwrap()));
    }

    #[test]
    fn dualize_universal_gives_empty() {
        let u = OmegaAutomaton::universal(ab());
        let d = dualize_dww(&u).unwrap();
        assert_eq!(d, OmegaAutomaton::empty(ab()));
        assert_eq!(dualize_dww(&d).unwrap(), u);
    }
}

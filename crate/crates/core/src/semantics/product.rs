use crate::error::{Budget, Result};
use crate::explore::Interner;
use crate::nfw::StateId;
use crate::omega::{Acceptance, Edge, OmegaAutomaton};

/// An automaton for `L(a) ∩ L(b)`, over the alphabet of `a`.
///
/// Two co-Büchi operands give a co-Büchi product whose α is the union of
/// both. Otherwise every co-Büchi operand is first turned into a Büchi one and
/// the two Büchi conditions are interleaved with a phase bit.
pub fn intersect(a: &OmegaAutomaton, b: &OmegaAutomaton, budget: Budget) -> Result<OmegaAutomaton> {
    let b = b.reorder(a.alphabet())?;
    if !a.kind().is_buchi() && !b.kind().is_buchi() {
        return product(a, &b, false, budget);
    }
    let a = as_buchi(a);
    let b = as_buchi(&b);
    product(&a, &b, true, budget)
}

fn as_buchi(a: &OmegaAutomaton) -> OmegaAutomaton {
    if a.kind().is_buchi() {
        a.clone()
    } else {
        cobuchi_to_buchi(a)
    }
}

/// Two copies: the first mirrors `a`, the second keeps only ᾱ-transitions and
/// is entirely α. A run accepts by moving to the second copy for good.
pub(crate) fn cobuchi_to_buchi(a: &OmegaAutomaton) -> OmegaAutomaton {
    let n = a.states();
    let sink = 2 * n;
    let k = a.alphabet().len();
    let mut delta: Vec<Vec<Vec<Edge>>> = vec![vec![Vec::new(); k]; 2 * n + 1];
    for q in 0..n {
        for l in 0..k {
            for e in a.succ(q, l) {
                let safe = !a.marked(q, e);
                delta[q][l].push(Edge { to: e.to, alpha: false });
                if safe {
                    delta[q][l].push(Edge { to: n + e.to, alpha: false });
                    delta[n + q][l].push(Edge { to: n + e.to, alpha: true });
                }
            }
            if delta[n + q][l].is_empty() {
                delta[n + q][l].push(Edge { to: sink, alpha: false });
            }
            delta[q][l].sort();
            delta[n + q][l].sort();
        }
    }
    for l in 0..k {
        delta[sink][l].push(Edge { to: sink, alpha: false });
    }
    let full = OmegaAutomaton::from_raw(
        a.alphabet().clone(),
        Acceptance::BuchiTrans,
        a.initial().to_vec(),
        delta,
        vec![false; 2 * n + 1],
    );
    full.trim().0
}

/// Synchronous product over reachable state pairs. With `buchi`, a phase bit
/// waits for `a`'s mark and then for `b`'s; completing the round is α.
fn product(a: &OmegaAutomaton, b: &OmegaAutomaton, buchi: bool, budget: Budget) -> Result<OmegaAutomaton> {
    type Key = (StateId, StateId, bool);
    let mut states: Interner<Key> = Interner::new(budget);
    let mut initial = Vec::new();
    for &p in a.initial() {
        for &q in b.initial() {
            initial.push(states.intern((p, q, false))?);
        }
    }
    let k = a.alphabet().len();
    let mut delta: Vec<Vec<Vec<Edge>>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let (p, q, phase) = *states.key(i);
        let mut row = Vec::with_capacity(k);
        for l in 0..k {
            let mut edges: Vec<Edge> = Vec::new();
            for ea in a.succ(p, l) {
                for eb in b.succ(q, l) {
                    let (ma, mb) = (a.marked(p, ea), b.marked(q, eb));
                    let (next_phase, alpha) = if !buchi {
                        (false, ma || mb)
                    } else if !phase {
                        (ma, false)
                    } else {
                        (!mb, mb)
                    };
                    let to = states.intern((ea.to, eb.to, next_phase))?;
                    match edges.iter_mut().find(|e| e.to == to) {
                        Some(e) => e.alpha |= alpha,
                        None => edges.push(Edge { to, alpha }),
                    }
                }
            }
            edges.sort();
            row.push(edges);
        }
        delta.push(row);
        i += 1;
    }
    initial.sort_unstable();
    initial.dedup();
    let n = delta.len();
    let kind = if buchi { Acceptance::BuchiTrans } else { Acceptance::CoBuchiTrans };
    Ok(OmegaAutomaton::from_raw(a.alphabet().clone(), kind, initial, delta, vec![false; n]))
}

use crate::error::Result;
use crate::graph::{accepting_lasso, Arc};
use crate::omega::{Lasso, OmegaAutomaton};

/// Whether `a` accepts `w`, via the product of `a` with the positions of `w`.
pub fn lasso_membership(a: &OmegaAutomaton, w: &Lasso) -> Result<bool> {
    w.check_alphabet(a.alphabet())?;
    let p = w.positions();
    let node = |q: usize, i: usize| q * p + i;
    let mut adj: Vec<Vec<Arc>> = vec![Vec::new(); a.states() * p];
    for q in 0..a.states() {
        for i in 0..p {
            let l = w.letter_at(i);
            let j = w.next(i);
            adj[node(q, i)] = a
                .succ(q, l)
                .iter()
                .map(|e| Arc { to: node(e.to, j), letter: l, marked: a.marked(q, e) })
                .collect();
        }
    }
    let init: Vec<usize> = a.initial().iter().map(|&q| node(q, 0)).collect();
    Ok(accepting_lasso(&adj, &init, a.kind().is_buchi()).is_some())
}

/// A lasso accepted by `a`, or `None` when its language is empty.
pub fn is_empty(a: &OmegaAutomaton) -> Option<Lasso> {
    let adj: Vec<Vec<Arc>> = (0..a.states())
        .map(|q| {
            a.alphabet()
                .letters()
                .flat_map(|l| a.succ(q, l).iter().map(move |e| (l, e)))
                .map(|(l, e)| Arc { to: e.to, letter: l, marked: a.marked(q, e) })
                .collect()
        })
        .collect();
    accepting_lasso(&adj, a.initial(), a.kind().is_buchi())
        .map(|(prefix, period)| Lasso { prefix, period })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::omega::Acceptance;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    /// One state; only the `a` loop is in α.
    fn inf_a(kind: Acceptance) -> OmegaAutomaton {
        let mut b = OmegaAutomaton::builder(ab(), kind, 1);
        b.initial(0).edge(0, 0, 0, true).edge(0, 1, 0, false);
        b.build().unwrap()
    }

    #[test]
    fn universal_accepts_everything() {
        let u = OmegaAutomaton::universal(ab());
        assert!(lasso_membership(&u, &Lasso::new(vec![0], vec![1]).unwrap()).unwrap());
    }

    #[test]
    fn buchi_and_cobuchi_readings() {
        let b = inf_a(Acceptance::BuchiTrans);
        let c = inf_a(Acceptance::CoBuchiTrans);
        let ab_ = Lasso::new(vec![], vec![0, 1]).unwrap();
        let b_ = Lasso::new(vec![0, 0], vec![1]).unwrap();
        assert!(lasso_membership(&b, &ab_).unwrap());
        assert!(!lasso_membership(&b, &b_).unwrap());
        assert!(!lasso_membership(&c, &ab_).unwrap());
        assert!(lasso_membership(&c, &b_).unwrap());
    }

    #[test]
    fn letter_outside_alphabet() {
        let u = OmegaAutomaton::universal(ab());
        assert!(lasso_membership(&u, &Lasso::new(vec![], vec![2]).unwrap()).is_err());
    }

    #[test]
    fn emptiness_witness_replays() {
        assert_eq!(is_empty(&OmegaAutomaton::empty(ab())), None);
        let all_alpha = OmegaAutomaton::single_state(ab(), Acceptance::CoBuchiTrans, true);
        assert_eq!(is_empty(&all_alpha), None);
        let b = inf_a(Acceptance::BuchiTrans);
        let w = is_empty(&b).unwrap();
        assert!(lasso_membership(&b, &w).unwrap());
    }
}

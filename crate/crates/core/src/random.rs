//! Seedable generators for test inputs and experiments.

use rand::Rng;

use crate::alphabet::Alphabet;
use crate::nfw::Nfw;
use crate::omega::{Acceptance, Lasso, OmegaAutomaton};

/// Random NFW over letters `0 … letters-1` with `states` states (at least
/// one each). Every state gets at least one successor per letter; a second
/// one is added with probability `branching`.
pub fn random_nfw<R: Rng>(rng: &mut R, states: usize, letters: usize, branching: f64) -> Nfw {
    let (states, letters) = (states.max(1), letters.max(1));
    let mut b = Nfw::builder(Alphabet::numbered(letters), states);
    b.initial(0);
    if states > 1 && rng.gen_bool(0.25) {
        b.initial(rng.gen_range(1..states));
    }
    for q in 0..states {
        if rng.gen_bool(0.4) {
            b.accepting(q);
        }
        for l in 0..letters {
            b.edge(q, l, rng.gen_range(0..states));
            if rng.gen_bool(branching) {
                b.edge(q, l, rng.gen_range(0..states));
            }
        }
    }
    b.build().expect("every state has a successor on every letter")
}

/// Random ω-automaton of the given kind. α covers about a third of the
/// states or transitions.
pub fn random_omega<R: Rng>(
    rng: &mut R,
    kind: Acceptance,
    states: usize,
    letters: usize,
    branching: f64,
) -> OmegaAutomaton {
    let (states, letters) = (states.max(1), letters.max(1));
    let mut b = OmegaAutomaton::builder(Alphabet::numbered(letters), kind, states);
    b.initial(0);
    let state_based = kind.is_state_based();
    for q in 0..states {
        if state_based && rng.gen_bool(0.33) {
            b.alpha_state(q);
        }
        for l in 0..letters {
            let fanout = if rng.gen_bool(branching) { 2 } else { 1 };
            for _ in 0..fanout {
                let alpha = !state_based && rng.gen_bool(0.33);
                b.edge(q, l, rng.gen_range(0..states), alpha);
            }
        }
    }
    b.build().expect("every state has a successor on every letter")
}

/// Random lasso over `0 … letters-1` with prefix length in `0..=max_prefix`
/// and period length in `1..=max_period`.
pub fn random_lasso<R: Rng>(rng: &mut R, letters: usize, max_prefix: usize, max_period: usize) -> Lasso {
    let letters = letters.max(1);
    let u = rng.gen_range(0..=max_prefix);
    let v = rng.gen_range(1..=max_period.max(1));
    let mut word = |len: usize| (0..len).map(|_| rng.gen_range(0..letters)).collect::<Vec<_>>();
    let prefix = word(u);
    let period = word(v);
    Lasso::new(prefix, period).expect("nonempty period")
}

//! Finite-word tools: subset construction, minimization, equivalence.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::Letter;
use crate::error::Result;
use crate::nfw::{Nfw, StateId};

/// Determinizes `n`. States are the reachable subsets in breadth-first order;
/// the empty subset appears as a rejecting sink when reachable.
pub fn subset_construct(n: &Nfw) -> Nfw {
    subset_construct_with_sets(n).0
}

/// Like [`subset_construct`], also returning the subset behind each state.
pub fn subset_construct_with_sets(n: &Nfw) -> (Nfw, Vec<Vec<StateId>>) {
    let k = n.alphabet().len();
    let mut index: HashMap<Vec<StateId>, StateId> = HashMap::new();
    let mut sets: Vec<Vec<StateId>> = vec![n.initial().to_vec()];
    index.insert(n.initial().to_vec(), 0);
    let mut delta: Vec<Vec<Vec<StateId>>> = Vec::new();
    let mut i = 0;
    while i < sets.len() {
        let mut row = Vec::with_capacity(k);
        for l in 0..k {
            let next = n.post(&sets[i], l);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    sets.push(next.clone());
                    index.insert(next, sets.len() - 1);
                    sets.len() - 1
                }
            };
            row.push(vec![id]);
        }
        delta.push(row);
        i += 1;
    }
    let accepting = sets.iter().map(|s| s.iter().any(|&q| n.is_accepting(q))).collect();
    (Nfw::from_raw(n.alphabet().clone(), vec![0], delta, accepting), sets)
}

/// The complement language as a DFW.
pub fn complement_dfw(n: &Nfw) -> Nfw {
    let d = if n.is_deterministic() { n.clone().without_sink_marker() } else { subset_construct(n) };
    d.flip_accepting()
}

/// Minimal DFW for `d`, numbered in breadth-first order from the initial
/// state. Nondeterministic input is determinized first.
pub fn dfw_minimize(d: &Nfw) -> Nfw {
    let d = if d.is_deterministic() { d.trim() } else { subset_construct(d) };
    let n = d.states();
    let k = d.alphabet().len();
    let step = |q: StateId, l: Letter| d.succ(q, l)[0];

    // Hopcroft refinement.
    let mut pre: Vec<Vec<Vec<StateId>>> = vec![vec![Vec::new(); n]; k];
    for q in 0..n {
        for l in 0..k {
            pre[l][step(q, l)].push(q);
        }
    }
    let (acc, rej): (Vec<StateId>, Vec<StateId>) = (0..n).partition(|&q| d.is_accepting(q));
    let mut blocks: Vec<Vec<StateId>> = [acc, rej].into_iter().filter(|b| !b.is_empty()).collect();
    let mut block_of = vec![0usize; n];
    for (b, members) in blocks.iter().enumerate() {
        for &q in members {
            block_of[q] = b;
        }
    }
    let mut work: Vec<usize> = (0..blocks.len()).collect();
    while let Some(splitter) = work.pop() {
        let members = blocks[splitter].clone();
        for l in 0..k {
            let mut hit: HashMap<usize, Vec<StateId>> = HashMap::new();
            for &s in &members {
                for &p in &pre[l][s] {
                    hit.entry(block_of[p]).or_default().push(p);
                }
            }
            let mut touched: Vec<usize> = hit.keys().copied().collect();
            touched.sort_unstable();
            for b in touched {
                let mut inside = hit.remove(&b).expect("touched block");
                inside.sort_unstable();
                inside.dedup();
                if inside.len() == blocks[b].len() {
                    continue;
                }
                let outside: Vec<StateId> = blocks[b].iter().copied().filter(|q| inside.binary_search(q).is_err()).collect();
                let new = blocks.len();
                let (stay, moved) = if inside.len() <= outside.len() { (outside, inside) } else { (inside, outside) };
                for &q in &moved {
                    block_of[q] = new;
                }
                blocks[b] = stay;
                blocks.push(moved);
                // Whether or not `b` is pending, queueing the smaller half suffices.
                work.push(new);
            }
        }
    }

    // Canonical numbering of the quotient.
    let mut number = vec![usize::MAX; blocks.len()];
    let start = block_of[d.initial()[0]];
    number[start] = 0;
    let mut order = vec![start];
    let mut i = 0;
    while i < order.len() {
        let rep = blocks[order[i]][0];
        for l in 0..k {
            let b = block_of[step(rep, l)];
            if number[b] == usize::MAX {
                number[b] = order.len();
                order.push(b);
            }
        }
        i += 1;
    }
    let delta = order
        .iter()
        .map(|&b| (0..k).map(|l| vec![number[block_of[step(blocks[b][0], l)]]]).collect())
        .collect();
    let accepting = order.iter().map(|&b| d.is_accepting(blocks[b][0])).collect();
    Nfw::from_raw(d.alphabet().clone(), vec![0], delta, accepting)
}

/// A shortest word on which `a` and `b` disagree, or `None` if they are
/// equivalent. The alphabets must hold the same letters.
pub fn nfw_equivalent(a: &Nfw, b: &Nfw) -> Result<Option<Vec<Letter>>> {
    let b = b.reorder(a.alphabet())?;
    let k = a.alphabet().len();
    type Pair = (Vec<StateId>, Vec<StateId>);
    let start: Pair = (a.initial().to_vec(), b.initial().to_vec());
    let mut parent: HashMap<Pair, Option<(Pair, Letter)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(pair) = queue.pop_front() {
        let acc_a = pair.0.iter().any(|&q| a.is_accepting(q));
        let acc_b = pair.1.iter().any(|&q| b.is_accepting(q));
        if acc_a != acc_b {
            let mut word = Vec::new();
            let mut cur = pair;
            while let Some(Some((prev, l))) = parent.get(&cur).cloned() {
                word.push(l);
                cur = prev;
            }
            word.reverse();
            return Ok(Some(word));
        }
        for l in 0..k {
            let next = (a.post(&pair.0, l), b.post(&pair.1, l));
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((pair.clone(), l)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    /// DFW for words over {a,b} ending in `a`, with a redundant copy.
    fn ends_in_a_redundant() -> Nfw {
        let mut b = Nfw::builder(ab(), 3);
        b.initial(0).accepting(1).accepting(2);
        b.edge(0, 0, 1).edge(0, 1, 0).edge(1, 0, 2).edge(1, 1, 0).edge(2, 0, 1).edge(2, 1, 0);
        b.build().unwrap()
    }

    #[test]
    fn minimize_merges_copies() {
        let m = dfw_minimize(&ends_in_a_redundant());
        assert_eq!(m.states(), 2);
        assert_eq!(nfw_equivalent(&m, &ends_in_a_redundant()).unwrap(), None);
        assert_eq!(dfw_minimize(&m), m);
    }

    #[test]
    fn equivalence_finds_shortest_word() {
        let all = Nfw::trivial(ab(), true);
        assert_eq!(nfw_equivalent(&all, &ends_in_a_redundant()).unwrap(), Some(vec![]));
        let none = Nfw::trivial(ab(), false);
        assert_eq!(nfw_equivalent(&none, &ends_in_a_redundant()).unwrap(), Some(vec![0]));
        assert_eq!(nfw_equivalent(&all, &all).unwrap(), None);
    }

    #[test]
    fn equivalence_aligns_letter_order() {
        let ba = Alphabet::new(["b", "a"]).unwrap();
        let e = ends_in_a_redundant();
        let flipped = e.reorder(&ba).unwrap();
        assert_eq!(nfw_equivalent(&e, &flipped).unwrap(), None);
    }
}

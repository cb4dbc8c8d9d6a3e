//! Graph plumbing shared by the automaton algorithms.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::alphabet::Letter;

/// Strongly connected components, sinks first (Tarjan's emission order).
pub(crate) fn tarjan<F, I>(n: usize, mut succ: F) -> Vec<Vec<usize>>
where
    F: FnMut(usize) -> I,
    I: IntoIterator<Item = usize>,
{
    const NONE: usize = usize::MAX;
    let mut index = vec![NONE; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;
    // Successor lists are materialized once per node.
    let mut adj: Vec<Option<Vec<usize>>> = vec![None; n];

    for root in 0..n {
        if index[root] != NONE {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&(v, i)) = call.last() {
            let succs = adj[v].get_or_insert_with(|| succ(v).into_iter().collect());
            if i < succs.len() {
                let w = succs[i];
                call.last_mut().expect("frame").1 += 1;
                if index[w] == NONE {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

/// SCCs in topological order (sources first). Among components that are
/// ready at the same time, the one with the smallest member goes first.
pub(crate) fn topo_sccs<F, I>(n: usize, mut succ: F) -> (Vec<Vec<usize>>, Vec<usize>)
where
    F: FnMut(usize) -> I,
    I: IntoIterator<Item = usize>,
{
    let comps = tarjan(n, &mut succ);
    let mut comp_of = vec![0; n];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = c;
        }
    }
    let m = comps.len();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut indeg = vec![0usize; m];
    for v in 0..n {
        for w in succ(v) {
            let (a, b) = (comp_of[v], comp_of[w]);
            if a != b {
                out[a].push(b);
            }
        }
    }
    for list in &mut out {
        list.sort_unstable();
        list.dedup();
        for &b in list.iter() {
            indeg[b] += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..m)
        .filter(|&c| indeg[c] == 0)
        .map(|c| Reverse((comps[c][0], c)))
        .collect();
    let mut order = Vec::with_capacity(m);
    while let Some(Reverse((_, c))) = heap.pop() {
        order.push(c);
        for &b in &out[c] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                heap.push(Reverse((comps[b][0], b)));
            }
        }
    }
    let mut position = vec![0; m];
    for (i, &c) in order.iter().enumerate() {
        position[c] = i;
    }
    let sorted: Vec<Vec<usize>> = order.iter().map(|&c| comps[c].clone()).collect();
    let component_of = comp_of.iter().map(|&c| position[c]).collect();
    (sorted, component_of)
}

/// A labelled arc of an explicit graph.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Arc {
    pub to: usize,
    pub letter: Letter,
    pub marked: bool,
}

/// Breadth-first paths from `from` (any of them), following `allowed` arcs.
/// Returns for each node the arc used to reach it: `(parent, letter)`.
fn bfs_tree(
    adj: &[Vec<Arc>],
    from: &[usize],
    allowed: impl Fn(usize, &Arc) -> bool,
) -> Vec<Option<(usize, Letter)>> {
    const ROOT: usize = usize::MAX;
    let mut parent: Vec<Option<(usize, Letter)>> = vec![None; adj.len()];
    let mut queue = VecDeque::new();
    for &v in from {
        if parent[v].is_none() {
            parent[v] = Some((ROOT, 0));
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for a in &adj[v] {
            if parent[a.to].is_none() && allowed(v, a) {
                parent[a.to] = Some((v, a.letter));
                queue.push_back(a.to);
            }
        }
    }
    parent
}

fn path_to(parent: &[Option<(usize, Letter)>], mut v: usize) -> Vec<Letter> {
    let mut word = Vec::new();
    while let Some((p, l)) = parent[v] {
        if p == usize::MAX {
            break;
        }
        word.push(l);
        v = p;
    }
    word.reverse();
    word
}

/// Searches for a reachable cycle that is accepting: for `buchi`, a cycle
/// through a marked arc; otherwise a cycle of unmarked arcs. Returns the
/// letters of a path to the cycle and of the cycle itself.
pub(crate) fn accepting_lasso(
    adj: &[Vec<Arc>],
    init: &[usize],
    buchi: bool,
) -> Option<(Vec<Letter>, Vec<Letter>)> {
    let n = adj.len();
    let reach = bfs_tree(adj, init, |_, _| true);
    let usable = |v: usize, a: &Arc| reach[v].is_some() && (buchi || !a.marked);
    let comps = tarjan(n, |v| {
        adj[v]
            .iter()
            .filter(|a| usable(v, a))
            .map(|a| a.to)
            .collect::<Vec<_>>()
    });
    let mut comp_of = vec![0; n];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = c;
        }
    }
    let mut best: Option<(usize, usize, Arc)> = None;
    for v in 0..n {
        if reach[v].is_none() {
            continue;
        }
        for a in &adj[v] {
            let inner = usable(v, a) && comp_of[a.to] == comp_of[v];
            let good = inner && (!buchi || a.marked);
            if good {
                best = Some((v, comp_of[v], *a));
                break;
            }
        }
        if best.is_some() {
            break;
        }
    }
    let (u, c, arc) = best?;
    let prefix = path_to(&reach, u);
    let back = bfs_tree(adj, &[arc.to], |v, a| usable(v, a) && comp_of[v] == c && comp_of[a.to] == c);
    let mut cycle = vec![arc.letter];
    cycle.extend(path_to(&back, u));
    Some((prefix, cycle))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adj_of(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
        }
        adj
    }

    #[test]
    fn topo_order_breaks_ties_by_smallest_member() {
        let adj = adj_of(4, &[(3, 1), (2, 0)]);
        let (comps, comp_of) = topo_sccs(4, |v| adj[v].clone());
        assert_eq!(comps, vec![vec![2], vec![0], vec![3], vec![1]]);
        assert_eq!(comp_of, vec![1, 3, 0, 2]);
    }

    #[test]
    fn cycle_collapses() {
        let adj = adj_of(3, &[(0, 1), (1, 0), (1, 2)]);
        let (comps, _) = topo_sccs(3, |v| adj[v].clone());
        assert_eq!(comps, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn lasso_search_respects_marks() {
        let arc = |to, letter, marked| Arc { to, letter, marked };
        // 0 -a-> 1, 1 -b(marked)-> 1, 1 -c-> 2, 2 -c-> 2
        let adj = vec![vec![arc(1, 0, false)], vec![arc(1, 1, true), arc(2, 2, false)], vec![arc(2, 2, false)]];
        assert_eq!(accepting_lasso(&adj, &[0], true), Some((vec![0], vec![1])));
        assert_eq!(accepting_lasso(&adj, &[0], false), Some((vec![0, 2], vec![2])));
    }
}

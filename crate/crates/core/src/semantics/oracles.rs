//! Direct membership tests for the two encoded languages, computed from the
//! finite-word language alone.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::nfw::Nfw;
use crate::omega::Lasso;

/// Whether `w` has infinitely many disjoint infixes in `L(r)`: either `ε` is
/// in `L(r)`, or some word of `L(r)` is an infix of the period's repetition.
pub fn lasso_in_infty(r: &Nfw, w: &Lasso) -> Result<bool> {
    w.check_alphabet(r.alphabet())?;
    if r.initial().iter().any(|&q| r.is_accepting(q)) {
        return Ok(true);
    }
    // Product of `r` with the automaton reading `v^ω` from any offset.
    let p = w.period.len();
    let mut seen = vec![false; r.states() * p];
    let mut queue = VecDeque::new();
    for &q in r.initial() {
        for i in 0..p {
            seen[q * p + i] = true;
            queue.push_back((q, i));
        }
    }
    while let Some((q, i)) = queue.pop_front() {
        if r.is_accepting(q) {
            return Ok(true);
        }
        let j = (i + 1) % p;
        for &t in r.succ(q, w.period[i]) {
            if !seen[t * p + j] {
                seen[t * p + j] = true;
                queue.push_back((t, j));
            }
        }
    }
    Ok(false)
}

/// Whether `w` is in the `$`-separated language of `r`: finitely many `$`, or
/// every block between consecutive `$` of the period (read cyclically) is in
/// `L(r)`. The letters of `w` follow `r`'s alphabet, with `$` right after.
pub fn lasso_in_bowtie(r: &Nfw, w: &Lasso) -> Result<bool> {
    let dollar = r.alphabet().len();
    if let Some(&l) = w.prefix.iter().chain(&w.period).find(|&&l| l > dollar) {
        return Err(Error::Invalid(format!("letter index {l} outside the alphabet plus $")));
    }
    let v = &w.period;
    let marks: Vec<usize> = (0..v.len()).filter(|&i| v[i] == dollar).collect();
    if marks.is_empty() {
        return Ok(true);
    }
    let p = v.len();
    for (j, &start) in marks.iter().enumerate() {
        let end = if j + 1 < marks.len() { marks[j + 1] } else { marks[0] + p };
        let block: Vec<usize> = (start + 1..end).map(|i| v[i % p]).collect();
        if !r.accepts(&block) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn n_ab() -> Nfw {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let mut b = Nfw::builder(ab, 3);
        b.initial(0).accepting(2).edge(0, 0, 1).edge(1, 1, 2);
        b.complete().unwrap()
    }

    fn lasso(u: &[usize], v: &[usize]) -> Lasso {
        Lasso::new(u.to_vec(), v.to_vec()).unwrap()
    }

    #[test]
    fn infty_examples() {
        let r = n_ab();
        assert!(lasso_in_infty(&r, &lasso(&[], &[0, 1])).unwrap());
        assert!(!lasso_in_infty(&r, &lasso(&[0, 1], &[0])).unwrap());
        let eps = Nfw::trivial(r.alphabet().clone(), true);
        assert!(lasso_in_infty(&eps, &lasso(&[], &[1])).unwrap());
        let none = Nfw::trivial(r.alphabet().clone(), false);
        assert!(!lasso_in_infty(&none, &lasso(&[], &[0, 1])).unwrap());
    }

    #[test]
    fn bowtie_examples() {
        let r = n_ab();
        assert!(lasso_in_bowtie(&r, &lasso(&[], &[0])).unwrap());
        assert!(lasso_in_bowtie(&r, &lasso(&[], &[2, 0, 1])).unwrap());
        assert!(!lasso_in_bowtie(&r, &lasso(&[], &[2, 0])).unwrap());
        assert!(lasso_in_bowtie(&r, &lasso(&[0, 2, 1], &[1])).unwrap());
        // The block wraps around the period: (a $ b)^ω has blocks "ba".
        assert!(!lasso_in_bowtie(&r, &lasso(&[], &[0, 2, 1])).unwrap());
        assert!(lasso_in_bowtie(&r, &lasso(&[], &[1, 2, 0])).unwrap());
    }
}

//! Experiment tables.

use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;

use sd_automata::buchi::encode_infty;
use sd_automata::cobuchi::encode_bowtie;
use sd_automata::families::{nfw_good_words, nfw_good_words_nodollar, tdbw_dn, tdcw_dn};
use sd_automata::semantics::contains;
use sd_automata::{Budget, Error, OmegaAutomaton, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Condition {
    Buchi,
    Cobuchi,
}

struct Row {
    n: usize,
    sd: usize,
    det: usize,
    verdict: String,
    millis: u128,
}

fn pair(n: usize, condition: Condition, budget: Budget) -> Result<(OmegaAutomaton, OmegaAutomaton)> {
    Ok(match condition {
        Condition::Buchi => (encode_infty(&nfw_good_words(n)?), tdbw_dn(n, budget)?),
        Condition::Cobuchi => (encode_bowtie(&nfw_good_words_nodollar(n)?)?, tdcw_dn(n, budget)?),
    })
}

fn verdict(sd: &OmegaAutomaton, det: &OmegaAutomaton, budget: Budget) -> Result<&'static str> {
    let equal = contains(sd, det, budget)?.is_none() && contains(det, sd, budget)?.is_none();
    Ok(if equal { "equivalent" } else { "not-equivalent" })
}

fn row(n: usize, condition: Condition, budget: Budget) -> Row {
    let start = Instant::now();
    let (sd, det, verdict) = match pair(n, condition, budget) {
        Ok((sd, det)) => {
            let v = match verdict(&sd, &det, budget) {
                Ok(v) => v.to_string(),
                Err(Error::BudgetExceeded { .. }) => "budget-exceeded".into(),
                Err(e) => format!("error: {e}"),
            };
            (sd.states(), det.states(), v)
        }
        Err(Error::BudgetExceeded { .. }) => (0, 0, "budget-exceeded".into()),
        Err(e) => (0, 0, format!("error: {e}")),
    };
    Row { n, sd, det, verdict, millis: start.elapsed().as_millis() }
}

/// TSV rows for `n = 1 … max_n`, computed in parallel and printed by `n`.
pub fn succinctness(max_n: usize, condition: Condition, budget: Budget) -> String {
    let mut rows: Vec<Row> = (1..=max_n).into_par_iter().map(|n| row(n, condition, budget)).collect();
    rows.sort_by_key(|r| r.n);
    let mut out = String::from("n\tsd_states\tdet_states\tverdict\tmillis\n");
    for r in rows {
        out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", r.n, r.sd, r.det, r.verdict, r.millis));
    }
    out
}

use thiserror::Error;

use crate::omega::Acceptance;
use crate::semantics::SdCounterexample;

/// Errors raised by constructions and decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid automaton: {0}")]
    Invalid(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(String),

    #[error("alphabets differ: [{left}] vs [{right}]")]
    AlphabetMismatch { left: String, right: String },

    #[error("letter `$` is already in the alphabet")]
    DollarPresent,

    #[error("letter `$` is missing from the alphabet")]
    DollarMissing,

    #[error("{op} does not accept {kind} automata")]
    WrongKind { op: &'static str, kind: Acceptance },

    #[error("{op} needs a deterministic automaton")]
    NotDeterministic { op: &'static str },

    #[error("{op} needs a weak automaton")]
    NotWeak { op: &'static str },

    #[error("automaton is not semantically deterministic")]
    NotSd(Box<SdCounterexample>),

    #[error("budget-exceeded: construction needs more than {limit} states")]
    BudgetExceeded { limit: usize },

    #[error("no good set: the automaton does not recognize the expected language")]
    NoGoodSet,

    #[error("no trap state found for the bad infix")]
    NoTrapFound,
}

pub type Result<T> = std::result::Result<T, Error>;

/// Upper bound on the number of states an exponential construction may build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub usize);

impl Default for Budget {
    fn default() -> Self {
        Budget(1_000_000)
    }
}

impl Budget {
    pub(crate) fn check(self, used: usize) -> Result<()> {
        if used > self.0 {
            Err(Error::BudgetExceeded { limit: self.0 })
        } else {
            Ok(())
        }
    }
}

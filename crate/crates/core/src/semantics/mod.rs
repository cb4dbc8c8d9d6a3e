//! Decision procedures over ω-automata and the finite-word oracles for the
//! `$`-framed languages.

mod complement;
mod decide;
mod membership;
mod oracles;
mod product;

pub use complement::complement;
#[allow(unused_imports)]
pub(crate) use complement::{breakpoint_complement, complement_for_check};
pub use decide::{contains, distinguish, is_sd, is_universal, states_equivalent, SdCounterexample, SdOrigin};
pub use membership::{is_empty, lasso_membership};
pub use oracles::{lasso_in_bowtie, lasso_in_infty};
pub use product::intersect;

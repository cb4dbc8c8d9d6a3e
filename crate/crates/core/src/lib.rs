//! Semantically deterministic ω-automata: the `∞R` and `⋈$(R)` encodings of
//! finite-word languages into Büchi and co-Büchi automata, their inverse
//! extractions, and the polynomial treatment of weak automata.

pub mod alphabet;
pub mod buchi;
pub mod cobuchi;
pub mod error;
mod explore;
pub mod families;
pub mod finite;
pub mod format;
mod graph;
pub mod nfw;
pub mod omega;
pub mod random;
pub mod semantics;
pub mod structure;
pub mod weak;

pub use alphabet::{Alphabet, Letter, DOLLAR};
pub use error::{Budget, Error, Result};
pub use nfw::{Nfw, NfwBuilder, StateId};
pub use omega::{Acceptance, Edge, Lasso, OmegaAutomaton, OmegaBuilder};

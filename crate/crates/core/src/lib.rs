//! Finite models of Generalized Quantum Theory (GQT).
//!
//! Propositions are pairs of idempotent, mutually annihilating maps on a
//! finite set of states plus an absorbing zero state. Observables are
//! spectrum-indexed families of propositions. On top of that the crate
//! classifies observable pairs as compatible, complementary or strongly
//! complementary, finds eigenstates, replays measurement sequences and
//! detects entangled states relative to a partition into subsystems.
//!
//! The [`quantum`] module is an independent density-matrix backend: it
//! compiles projectors acting on seed states into a finite [`Model`] by orbit
//! closure, which is how the shipped fixtures are produced. [`check`]
//! generates random valid models and checks the calculus' laws and theorems
//! on them. [`io`] holds the JSON document formats and [`cli`] the `gqt`
//! command line.
//!
//! ```
//! use gqt::prelude::*;
//!
//! let model = gqt::io::parse_model(include_str!("../fixtures/qzx.json")).unwrap();
//! let z = model.observable("Z").unwrap();
//! let x = model.observable("X").unwrap();
//! let (class, evidence) = classify_pair(z, x).unwrap();
//! assert_eq!(class, PairClass::StronglyComplementary);
//! assert!(evidence.common.is_empty());
//! ```

pub mod check;
pub mod cli;
pub mod compat;
pub mod entangle;
pub mod error;
pub mod io;
pub mod model;
pub mod observable;
pub mod proposition;
pub mod quantum;
pub mod state;
pub mod validation;

pub use error::{GqtError, Result};
pub use model::{Model, Partition};
pub use observable::Observable;
pub use proposition::{Outcome, PropMap, Proposition};
pub use state::{StateId, StateRef, StateSpace};

pub mod prelude {
    pub use crate::compat::{
        adjunction, classify_pair, common_eigenstates, conjunction, is_compatible_propositions,
        measure_sequence, PairClass,
    };
    pub use crate::entangle::{check_entanglement_preconditions, entangled_states};
    pub use crate::model::{realize, validate_model, Model, Partition};
    pub use crate::observable::{eigenstates_of_observable, validate_observable, Observable};
    pub use crate::proposition::{
        apply, compose, eigenstates_of_proposition, modal_status, negate, validate_proposition,
        DerivedProposition, ModalStatus, Outcome, PropMap, Proposition,
    };
    pub use crate::state::{StateId, StateRef, StateSpace};
}

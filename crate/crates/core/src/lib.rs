//! Propositional abduction over restricted connective sets: Boolean function
//! utilities, Post's lattice, formulas, explanation search and counting.

pub mod abduction;
pub mod boolean;
pub mod error;
pub mod formula;
pub mod io;
pub mod lattice;
pub mod par;
pub mod reductions;
pub mod sat;
pub mod solvers;

pub use error::{AbdError, Pos, Result};

//! Betti-number growth in finite cyclic covers.
//!
//! Given a finite presentation and an epimorphism `ψ: π → Z`, the crate
//! computes `H_1` of the infinite cyclic cover as a module over
//! `Λ = Q[t, t^-1]` and reads off `β_1` of every finite cyclic cover. An
//! independent Reidemeister–Schreier engine recomputes the same numbers
//! from explicit cover presentations.

pub mod covers;
pub mod error;
pub mod growth;
pub mod laurent;
pub mod library;
pub mod linalg;
pub mod presentation;

pub use error::{Error, Result};

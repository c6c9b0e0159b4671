//! Finite operads and their localizations.
//!
//! This crate works with *set-level* finite operads given as explicit tables
//! and provides:
//!
//! * permutation calculus (block permutations, direct sums) and operad tables
//!   with exhaustive axiom checking ([`perm`], [`operad`]);
//! * the strict symmetric monoidal category `C_O` attached to an operad, with
//!   canonical coset representatives for its morphisms ([`smc`]);
//! * the Dwyer–Kan hammock localization of finite categories ([`dk`]);
//! * tree hammocks: reduction, grafting, simplicial structure, symmetric
//!   actions and bounded enumeration of the localized operad ([`tree`]);
//! * the comparison between the two localizations ([`comparison`]);
//! * free algebras, bar constructions and localization of algebras
//!   ([`algebra`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command
//! line front end live in the `oploc` crate.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod category;
pub mod comparison;
pub mod dk;
mod error;
pub mod operad;
pub mod perm;
pub mod report;
pub mod smc;
pub mod tree;
pub mod unionfind;

pub use error::{Error, Result};
pub use operad::{Op, OperadTable};
pub use perm::Permutation;
pub use report::AxiomReport;

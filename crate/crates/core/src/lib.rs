//! Institutions with an explicit variable-extension structure.
//!
//! The crate provides finite categories and the constructions built over them
//! ([`cat`]), the abstract institution interface with its extension laws
//! ([`institution`]), compound first-order sentences over any such institution
//! ([`sentence`]), two concrete instances ([`instances`]), morphisms between
//! institutions ([`morphism`]), a sequent calculus with executable proof
//! transformations ([`sequent`]), bounded semantic checking ([`semantics`]),
//! and a text syntax for theory files ([`syntax`]).

pub mod cat;
pub mod compactness;
pub mod corpus;
pub mod error;
pub mod fingerprint;
pub mod instances;
pub mod institution;
pub mod morphism;
pub mod report;
pub mod sentence;
pub mod semantics;
pub mod sequent;
pub mod syntax;
pub mod util;

pub use error::{Error, Result};

//! Dung-style argumentation semantics, semantics-preserving attack additions
//! and local-expansion robustness.
//!
//! The labelling-based invariance predicates in [`invariance`] are audited
//! against a recomputation oracle in [`oracle`].

pub mod af;
pub mod cli_io;
pub mod error;
pub mod invariance;
pub mod labelling;
pub mod oracle;
pub mod par;
pub mod robustness;
pub mod semantics;

pub use af::{ArgSet, ArgumentId, ArgumentationFramework, Attack};
pub use error::{Error, Result};
pub use semantics::{ExtensionSet, SemanticsId};

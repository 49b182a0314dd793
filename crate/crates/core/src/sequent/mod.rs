//! The sequent calculus over first-order sentences: proof trees, the proof
//! checker, the structural rules Init/Modify/Cut as proof transformations, and
//! a bounded proof search.
//!
//! Weakening is built into every rule: side sentences may be carried along
//! freely, so `Γ' ⊢_{Γ|Σ|Δ} Δ'` stands for `Γ ∪ Γ' ⊢_Σ Δ ∪ Δ'`.

mod check;
mod oracle;
mod prove;
mod transform;
mod tree;

pub use check::{check_proof, check_proof_with, path_string, CheckOptions, CheckReport};
pub use oracle::{AtomicOracle, CongruenceOracle, Judgment, ModelOracle};
pub use prove::{bounded_prove, ProveOptions, ProveOutcome};
pub use transform::{cut_proof, cut_proof_traced, init_proof, modify_proof, CutTrace, Measure};
pub use tree::{Applied, Part, ProofTree, Rule, Sequent, SentenceSet};
pub(crate) use tree::{translate_set, union, with, without};

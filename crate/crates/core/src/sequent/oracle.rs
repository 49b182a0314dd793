use crate::error::Result;
use crate::instances::fol0::{self, Fol0, Fol0Atom, Fol0Sig};
use crate::institution::Institution;

/// The verdict of an atomic oracle on `Γ_b ⊢ Δ_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Judgment {
    Certified,
    Refuted,
    /// No counterexample up to this carrier bound, but the search was not exhaustive.
    Inconclusive(usize),
}

/// The base entailment `⊢^INS` on atomic sequents used by the `Atom` rule.
///
/// A `Certified` judgment must stay certified when sentences are added to
/// either side.
pub trait AtomicOracle<I: Institution>: Send + Sync {
    fn judge(&self, sig: &I::Sig, gamma: &[I::Atom], delta: &[I::Atom]) -> Result<Judgment>;
}

/// Decides atomic sequents by model enumeration up to a carrier bound.
/// Certifies only when the instance reports the enumeration as exhaustive.
#[derive(Debug, Clone)]
pub struct ModelOracle<I> {
    pub ins: I,
    pub bound: usize,
}

impl<I: Institution> AtomicOracle<I> for ModelOracle<I> {
    fn judge(&self, sig: &I::Sig, gamma: &[I::Atom], delta: &[I::Atom]) -> Result<Judgment> {
        for m in self.ins.models(sig, self.bound)? {
            let mut counter = true;
            for a in gamma {
                if !self.ins.satisfies_atom(&m, a)? {
                    counter = false;
                    break;
                }
            }
            if counter {
                for a in delta {
                    if self.ins.satisfies_atom(&m, a)? {
                        counter = false;
                        break;
                    }
                }
            }
            if counter {
                return Ok(Judgment::Refuted);
            }
        }
        if self.ins.models_exhaustive(sig, self.bound) {
            Ok(Judgment::Certified)
        } else {
            Ok(Judgment::Inconclusive(self.bound))
        }
    }
}

/// Exact oracle for ground atomic first-order sequents via congruence closure.
#[derive(Debug, Clone, Copy, Default)]
pub struct CongruenceOracle;

impl AtomicOracle<Fol0> for CongruenceOracle {
    fn judge(&self, sig: &Fol0Sig, gamma: &[Fol0Atom], delta: &[Fol0Atom]) -> Result<Judgment> {
        Ok(if fol0::entails(sig, gamma, delta)? { Judgment::Certified } else { Judgment::Refuted })
    }
}

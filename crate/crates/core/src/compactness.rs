//! Finite chains of theories and their colimits.
//!
//! A theory `⟨Γ, Σ, Δ⟩` is stored as a [`Sequent`]. An arrow
//! `⟨Γ, Σ, Δ⟩ → ⟨Γ′, Σ′, Δ′⟩` is a signature morphism `χ: Σ → Σ′` with
//! `χ(Γ) ⊆ Γ′` and `χ(Δ) ⊆ Δ′`. Compactness asks that a colimit of theories
//! which are each consistent stays consistent; here consistency means that
//! bounded proof search finds no proof of `Γ ⊢ Δ`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::corpus;
use crate::error::{Error, Result};
use crate::instances::fol0::{Fol0, Fol0Mor, Fol0Sig, FuncDecl, Name, Sym};
use crate::institution::Institution;
use crate::report::LawReport;
use crate::sentence::Sentence;
use crate::sequent::{bounded_prove, translate_set, union, AtomicOracle, ProveOptions, Sequent, SentenceSet};

/// `T₀ → T₁ → … → Tₙ`, with `links[i]: Tᵢ → Tᵢ₊₁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModifyChain<I: Institution> {
    pub objects: Vec<Sequent<I>>,
    pub links: Vec<I::Mor>,
}

/// A colimit of a chain: the apex and the injections `ιᵢ: Tᵢ → apex`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainColimit<I: Institution> {
    pub apex: Sequent<I>,
    pub injections: Vec<I::Mor>,
}

fn included<I: Institution>(ins: &I, chi: &I::Mor, from: &SentenceSet<I>, into: &SentenceSet<I>) -> Result<bool> {
    Ok(translate_set(ins, chi, from)?.is_subset(into))
}

/// Whether `chi` is an arrow `from → to` of theories.
pub fn is_theory_morphism<I: Institution>(ins: &I, chi: &I::Mor, from: &Sequent<I>, to: &Sequent<I>) -> Result<bool> {
    Ok(ins.mor_dom(chi) == from.sig
        && ins.mor_cod(chi) == to.sig
        && included(ins, chi, &from.gamma, &to.gamma)?
        && included(ins, chi, &from.delta, &to.delta)?)
}

/// Checks that every link is an arrow of theories.
pub fn check_chain<I: Institution>(ins: &I, chain: &ModifyChain<I>) -> Result<()> {
    if chain.objects.is_empty() || chain.links.len() + 1 != chain.objects.len() {
        return Err(Error::Precondition(format!(
            "a chain of {} theories needs {} links, found {}",
            chain.objects.len(),
            chain.objects.len().saturating_sub(1),
            chain.links.len()
        )));
    }
    for (i, chi) in chain.links.iter().enumerate() {
        chain.objects[i].check(ins)?;
        if !is_theory_morphism(ins, chi, &chain.objects[i], &chain.objects[i + 1])? {
            return Err(Error::Precondition(format!("link {i} is not a morphism of theories")));
        }
    }
    chain.objects[chain.objects.len() - 1].check(ins)
}

/// The colimit of a finite chain.
///
/// The signature part is the colimit of the signature chain, `Σₙ` with the
/// composites of the links as injections; the sentence parts are the unions
/// of the translated sets. For a chain every translated set already lies in
/// the last theory, so the apex coincides with `Tₙ`.
pub fn chain_colimit<I: Institution>(ins: &I, chain: &ModifyChain<I>) -> Result<ChainColimit<I>> {
    check_chain(ins, chain)?;
    let last = &chain.objects[chain.objects.len() - 1];
    let mut injections = vec![ins.identity(&last.sig)];
    for chi in chain.links.iter().rev() {
        let next = ins.compose(&injections[injections.len() - 1], chi)?;
        injections.push(next);
    }
    injections.reverse();
    let mut gamma = SentenceSet::new();
    let mut delta = SentenceSet::new();
    for (t, iota) in chain.objects.iter().zip(&injections) {
        gamma = union(&gamma, &translate_set(ins, iota, &t.gamma)?);
        delta = union(&delta, &translate_set(ins, iota, &t.delta)?);
    }
    Ok(ChainColimit { apex: Sequent { gamma, sig: last.sig.clone(), delta }, injections })
}

/// Checks the compactness property on one chain at proof depth `depth`.
///
/// Returns `None` when some theory of the chain is provably inconsistent
/// within `depth`, since the property then says nothing. Otherwise the report
/// holds `compactness.cocone` (each injection is an arrow of theories and
/// `ιᵢ = ιᵢ₊₁ ∘ χᵢ`) and `compactness.consistency` (no proof of the apex).
pub fn check_chain_compactness<I: Institution>(
    ins: &I,
    chain: &ModifyChain<I>,
    depth: usize,
    oracle: &dyn AtomicOracle<I>,
    opts: ProveOptions,
) -> Result<Option<LawReport>> {
    for t in &chain.objects {
        if bounded_prove(ins, &t.gamma, &t.delta, &t.sig, depth, oracle, opts)?.proof().is_some() {
            return Ok(None);
        }
    }
    let colimit = chain_colimit(ins, chain)?;
    let mut report = LawReport::new();
    for (i, (t, iota)) in chain.objects.iter().zip(&colimit.injections).enumerate() {
        let commutes = match chain.links.get(i) {
            Some(chi) => ins.compose(&colimit.injections[i + 1], chi)? == *iota,
            None => *iota == ins.identity(&colimit.apex.sig),
        };
        let ok = commutes && is_theory_morphism(ins, iota, t, &colimit.apex)?;
        report.check("compactness.cocone", format!("T{i}"), ok, || format!("injection {i} of {} links", chain.links.len()));
    }
    let apex = &colimit.apex;
    let outcome = bounded_prove(ins, &apex.gamma, &apex.delta, &apex.sig, depth, oracle, opts)?;
    report.check("compactness.consistency", format!("T{}", chain.links.len()), outcome.proof().is_none(), || {
        format!("apex proved at depth {depth}")
    });
    Ok(Some(report))
}

/// `sig` with one extra constant `k{step}` of an existing sort, or one extra
/// nullary predicate `N{step}`.
fn grow(rng: &mut impl Rng, sig: &Fol0Sig, step: usize) -> Result<Fol0Sig> {
    let mut funcs = sig.funcs().clone();
    let mut preds = sig.preds().clone();
    let sorts: Vec<&Name> = sig.sorts().iter().collect();
    match sorts.choose(rng) {
        Some(s) if rng.gen_bool(0.5) => {
            funcs.insert(Sym::named(&format!("k{step}")), FuncDecl { args: Vec::new(), result: (*s).clone() });
        }
        _ => {
            preds.insert(Name::from(format!("N{step}")), Vec::new());
        }
    }
    Fol0Sig::new(sig.sorts().clone(), funcs, preds, sig.has_equality())
}

/// A seeded chain of `length` inclusions, each enlarging the signature by one
/// symbol and the sides by at most one random sentence each.
pub fn random_fol0_chain<R: Rng>(ins: &Fol0, rng: &mut R, length: usize, sentence_depth: usize) -> Result<ModifyChain<Fol0>> {
    let sig = corpus::random_fol0_signature(rng, 2, 2)?;
    let side = |rng: &mut R, sig: &Fol0Sig| -> Result<Vec<Sentence<Fol0>>> {
        let n: usize = rng.gen_range(0..=1);
        (0..n).map(|_| corpus::random_sentence(ins, rng, sig, sentence_depth, 1)).collect()
    };
    let first = Sequent::new(side(rng, &sig)?, sig.clone(), side(rng, &sig)?);
    let mut objects = vec![first];
    let mut links = Vec::new();
    for step in 0..length {
        let prev = &objects[objects.len() - 1];
        let next_sig = grow(rng, &prev.sig, step)?;
        let chi = Fol0Mor::inclusion(&prev.sig, &next_sig)?;
        let mut gamma = translate_set(ins, &chi, &prev.gamma)?;
        let mut delta = translate_set(ins, &chi, &prev.delta)?;
        gamma.extend(side(rng, &next_sig)?);
        delta.extend(side(rng, &next_sig)?);
        objects.push(Sequent { gamma, sig: next_sig, delta });
        links.push(chi);
    }
    Ok(ModifyChain { objects, links })
}

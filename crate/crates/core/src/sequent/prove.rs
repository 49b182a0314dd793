use std::collections::HashSet;

use super::oracle::{AtomicOracle, Judgment};
use super::tree::{translate_set, with, without, Applied, Part, ProofTree, Rule, Sequent, SentenceSet};
use crate::error::Result;
use crate::institution::Institution;
use crate::sentence::{self, Sentence};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProveOptions {
    /// Size budget for `ExistsR` witnesses (term height, polynomial degree).
    pub witness_budget: usize,
    /// Offer every morphism `Σ^Dex[X] → Σ` as an `ExistsR` choice instead of
    /// substitutions only. Unsound; pairs with the relaxed checker.
    pub relax_exists_r: bool,
}

impl Default for ProveOptions {
    fn default() -> Self {
        ProveOptions { witness_budget: 1, relax_exists_r: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProveOutcome<I: Institution> {
    Found(ProofTree<I>),
    NotFoundWithin(usize),
}

impl<I: Institution> ProveOutcome<I> {
    pub fn proof(&self) -> Option<&ProofTree<I>> {
        match self {
            ProveOutcome::Found(t) => Some(t),
            ProveOutcome::NotFoundWithin(_) => None,
        }
    }
}

/// Iterative-deepening backward search for a proof of `Γ ⊢_Σ Δ` of depth at
/// most `depth`, where depth counts inference steps on the longest branch (a
/// single `Atom` leaf has depth 0).
///
/// Candidate rule applications are tried in a fixed order: `Atom`, then for
/// each sentence in set order the left rules and right rules, with `OrR`
/// disjuncts and `ExistsR` witnesses in their enumeration order. The result is
/// the first proof in that order at the least depth that admits one.
/// Negation, disjunction on the left and `ExistsL` consume their principal
/// sentence; `OrR` and `ExistsR` keep theirs so it can be used again.
pub fn bounded_prove<I: Institution>(
    ins: &I,
    gamma: &SentenceSet<I>,
    delta: &SentenceSet<I>,
    sig: &I::Sig,
    depth: usize,
    oracle: &dyn AtomicOracle<I>,
    opts: ProveOptions,
) -> Result<ProveOutcome<I>> {
    let goal = Sequent { gamma: gamma.clone(), sig: sig.clone(), delta: delta.clone() };
    goal.check(ins)?;
    let mut search = Search { ins, oracle, opts, failed: HashSet::new() };
    for d in 0..=depth {
        if let Some(t) = search.prove(&goal, d + 1)? {
            return Ok(ProveOutcome::Found(t));
        }
    }
    Ok(ProveOutcome::NotFoundWithin(depth))
}

struct Search<'a, I: Institution> {
    ins: &'a I,
    oracle: &'a dyn AtomicOracle<I>,
    opts: ProveOptions,
    failed: HashSet<(Sequent<I>, usize)>,
}

impl<I: Institution> Search<'_, I> {
    fn prove(&mut self, s: &Sequent<I>, d: usize) -> Result<Option<ProofTree<I>>> {
        if d == 0 || self.failed.contains(&(s.clone(), d)) {
            return Ok(None);
        }
        let found = self.prove_uncached(s, d)?;
        if found.is_none() {
            self.failed.insert((s.clone(), d));
        }
        Ok(found)
    }

    fn prove_uncached(&mut self, s: &Sequent<I>, d: usize) -> Result<Option<ProofTree<I>>> {
        let ga = Sequent::<I>::atoms(&s.gamma);
        let da = Sequent::<I>::atoms(&s.delta);
        if self.oracle.judge(&s.sig, &ga, &da)? == Judgment::Certified {
            let gb = s.gamma.iter().filter(|p| p.is_atomic()).cloned().collect();
            let db = s.delta.iter().filter(|p| p.is_atomic()).cloned().collect();
            return Ok(Some(ProofTree::atom_leaf(s.clone(), gb, db)));
        }
        let bot = Sentence::falsum();
        if s.gamma.contains(&bot) {
            return Ok(Some(ProofTree {
                rule: Rule::OrL,
                premises: Vec::new(),
                root: s.clone(),
                applied: Applied { premises: Vec::new(), conclusion: Part::left(bot) },
            }));
        }
        if d == 1 {
            return Ok(None);
        }
        for phi in &s.gamma {
            if let Some(t) = self.left_rule(s, phi, d)? {
                return Ok(Some(t));
            }
        }
        for phi in &s.delta {
            if let Some(t) = self.right_rule(s, phi, d)? {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }

    fn node(
        &mut self,
        rule: Rule<I>,
        s: &Sequent<I>,
        goals: Vec<(Sequent<I>, Part<I>)>,
        conclusion: Part<I>,
        d: usize,
    ) -> Result<Option<ProofTree<I>>> {
        let mut premises = Vec::with_capacity(goals.len());
        let mut parts = Vec::with_capacity(goals.len());
        for (g, part) in goals {
            match self.prove(&g, d - 1)? {
                Some(t) => premises.push(t),
                None => return Ok(None),
            }
            parts.push(part);
        }
        Ok(Some(ProofTree { rule, premises, root: s.clone(), applied: Applied { premises: parts, conclusion } }))
    }

    fn left_rule(&mut self, s: &Sequent<I>, psi: &Sentence<I>, d: usize) -> Result<Option<ProofTree<I>>> {
        let rest = without(&s.gamma, psi);
        match psi {
            Sentence::Atom(_) => Ok(None),
            Sentence::Not(phi) => {
                let g = Sequent { gamma: rest, sig: s.sig.clone(), delta: with(&s.delta, phi) };
                self.node(Rule::NegL, s, vec![(g, Part::right((**phi).clone()))], Part::left(psi.clone()), d)
            }
            Sentence::Or(v) if !v.is_empty() => {
                let goals = v
                    .iter()
                    .map(|phi| {
                        (Sequent { gamma: with(&rest, phi), sig: s.sig.clone(), delta: s.delta.clone() }, Part::left(phi.clone()))
                    })
                    .collect();
                self.node(Rule::OrL, s, goals, Part::left(psi.clone()), d)
            }
            Sentence::Or(_) => Ok(None),
            Sentence::Exists(x, phi) => {
                let b = self.ins.extend(&s.sig, x)?;
                let g = Sequent {
                    gamma: with(&translate_set(self.ins, &b.inclusion, &rest)?, phi),
                    sig: b.extended,
                    delta: translate_set(self.ins, &b.inclusion, &s.delta)?,
                };
                self.node(Rule::ExistsL, s, vec![(g, Part::left((**phi).clone()))], Part::left(psi.clone()), d)
            }
        }
    }

    fn right_rule(&mut self, s: &Sequent<I>, psi: &Sentence<I>, d: usize) -> Result<Option<ProofTree<I>>> {
        match psi {
            Sentence::Atom(_) => Ok(None),
            Sentence::Not(phi) => {
                let g = Sequent { gamma: with(&s.gamma, phi), sig: s.sig.clone(), delta: without(&s.delta, psi) };
                self.node(Rule::NegR, s, vec![(g, Part::left((**phi).clone()))], Part::right(psi.clone()), d)
            }
            Sentence::Or(v) => {
                for (n, phi) in v.iter().enumerate() {
                    if s.delta.contains(phi) {
                        continue;
                    }
                    let g = Sequent { gamma: s.gamma.clone(), sig: s.sig.clone(), delta: with(&s.delta, phi) };
                    let found =
                        self.node(Rule::OrR(n), s, vec![(g, Part::right(phi.clone()))], Part::right(psi.clone()), d)?;
                    if found.is_some() {
                        return Ok(found);
                    }
                }
                Ok(None)
            }
            Sentence::Exists(x, phi) => {
                let candidates = if self.opts.relax_exists_r {
                    let ext = self.ins.extend(&s.sig, x)?.extended;
                    self.ins.morphisms_between(&ext, &s.sig, self.opts.witness_budget)
                } else {
                    self.ins.substitution_candidates(&s.sig, x, self.opts.witness_budget)?
                };
                for theta in candidates {
                    let inst = sentence::translate(self.ins, &theta, phi)?;
                    if s.delta.contains(&inst) {
                        continue;
                    }
                    let g = Sequent { gamma: s.gamma.clone(), sig: s.sig.clone(), delta: with(&s.delta, &inst) };
                    let found =
                        self.node(Rule::ExistsR(theta), s, vec![(g, Part::right(inst))], Part::right(psi.clone()), d)?;
                    if found.is_some() {
                        return Ok(found);
                    }
                }
                Ok(None)
            }
        }
    }
}

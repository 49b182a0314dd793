//! The structural rules as executable transformations on proof trees.

use super::tree::{premise_translation, translate_set, union, with, without, Applied, Part, ProofTree, Rule, Sequent, SentenceSet};
use crate::error::{Error, Result};
use crate::institution::Institution;
use crate::sentence::{self, Sentence};

/// A proof of `{ψ} ∪ Γ ⊢_Σ Δ ∪ {ψ}`, by recursion on `ψ`.
pub fn init_proof<I: Institution>(
    ins: &I,
    gamma: &SentenceSet<I>,
    delta: &SentenceSet<I>,
    sig: &I::Sig,
    psi: &Sentence<I>,
) -> Result<ProofTree<I>> {
    sentence::check(ins, sig, psi)?;
    let root = Sequent { gamma: with(gamma, psi), sig: sig.clone(), delta: with(delta, psi) };
    Ok(match psi {
        Sentence::Atom(_) => ProofTree::atom_leaf(root, [psi.clone()].into(), [psi.clone()].into()),
        Sentence::Not(inner) => {
            let top = init_proof(ins, gamma, delta, sig, inner)?;
            let neg_l = ProofTree {
                rule: Rule::NegL,
                root: Sequent { gamma: with(&top.root.gamma, psi), sig: sig.clone(), delta: delta.clone() },
                premises: vec![top],
                applied: Applied { premises: vec![Part::right((**inner).clone())], conclusion: Part::left(psi.clone()) },
            };
            ProofTree {
                rule: Rule::NegR,
                root,
                premises: vec![neg_l],
                applied: Applied { premises: vec![Part::left((**inner).clone())], conclusion: Part::right(psi.clone()) },
            }
        }
        Sentence::Or(v) => {
            let mut premises = Vec::with_capacity(v.len());
            for (n, phi) in v.iter().enumerate() {
                let top = init_proof(ins, gamma, delta, sig, phi)?;
                premises.push(ProofTree {
                    rule: Rule::OrR(n),
                    root: Sequent { gamma: with(gamma, phi), sig: sig.clone(), delta: with(delta, psi) },
                    premises: vec![top],
                    applied: Applied { premises: vec![Part::right(phi.clone())], conclusion: Part::right(psi.clone()) },
                });
            }
            ProofTree {
                rule: Rule::OrL,
                root,
                premises,
                applied: Applied {
                    premises: v.iter().map(|p| Part::left(p.clone())).collect(),
                    conclusion: Part::left(psi.clone()),
                },
            }
        }
        Sentence::Exists(x, body) => {
            let bundle = ins.extend(sig, x)?;
            let ext = bundle.extended;
            let g1 = translate_set(ins, &bundle.inclusion, gamma)?;
            let d1 = translate_set(ins, &bundle.inclusion, delta)?;
            let moved = sentence::translate(ins, &bundle.inclusion, psi)?;
            let theta = sentence::canonical_substitution(ins, sig, x)?;
            let top = init_proof(ins, &g1, &d1, &ext, body)?;
            let exists_r = ProofTree {
                rule: Rule::ExistsR(theta),
                root: Sequent { gamma: with(&g1, body), sig: ext.clone(), delta: with(&d1, &moved) },
                premises: vec![top],
                applied: Applied { premises: vec![Part::right((**body).clone())], conclusion: Part::right(moved) },
            };
            ProofTree {
                rule: Rule::ExistsL,
                root,
                premises: vec![exists_r],
                applied: Applied { premises: vec![Part::left((**body).clone())], conclusion: Part::left(psi.clone()) },
            }
        }
    })
}

/// The substitution stored in an `ExistsR` node is translated along `χ`; the
/// block is read off the node's principal sentence.
fn translate_rule<I: Institution>(ins: &I, chi: &I::Mor, node: &ProofTree<I>) -> Result<Rule<I>> {
    Ok(match &node.rule {
        Rule::ExistsR(theta) => match node.applied.conclusion.right.iter().next() {
            Some(Sentence::Exists(x, _)) => Rule::ExistsR(sentence::translate_substitution(ins, chi, x, theta)?),
            _ => return Err(Error::Precondition("exists-r node without an existential principal".into())),
        },
        r => r.clone(),
    })
}

/// Translates `t` along `χ` and re-roots it at `Γ' ⊢_{cod χ} Δ'`. Every node
/// keeps its rule, with choices translated; the sentences of `Γ'`, `Δ'` beyond
/// the translated root are carried up into every premise as side sentences.
pub fn modify_proof<I: Institution>(
    ins: &I,
    chi: &I::Mor,
    t: &ProofTree<I>,
    gamma2: &SentenceSet<I>,
    delta2: &SentenceSet<I>,
) -> Result<ProofTree<I>> {
    if ins.mor_dom(chi) != t.root.sig {
        return Err(Error::Precondition(format!("{chi} does not start at {}", t.root.sig)));
    }
    if !translate_set(ins, chi, &t.root.gamma)?.is_subset(gamma2)
        || !translate_set(ins, chi, &t.root.delta)?.is_subset(delta2)
    {
        return Err(Error::Precondition("target sequent does not contain the translated root".into()));
    }
    let sig2 = ins.mor_cod(chi);
    let c = &t.applied.conclusion;
    let conclusion = Part { left: translate_set(ins, chi, &c.left)?, right: translate_set(ins, chi, &c.right)? };
    let rule = translate_rule(ins, chi, t)?;
    let mut premises = Vec::with_capacity(t.premises.len());
    let mut parts = Vec::with_capacity(t.premises.len());
    if !t.premises.is_empty() {
        let (chi_i, iota2) = if let (Rule::ExistsL, Some(Sentence::Exists(x, _))) = (&t.rule, c.left.iter().next()) {
            let x2 = ins.translate_block(chi, x)?;
            (ins.translate_ext(chi, x)?, ins.extend(&sig2, &x2)?.inclusion)
        } else {
            (chi.clone(), ins.identity(&sig2))
        };
        let extra_g: SentenceSet<I> = gamma2.difference(&translate_set(ins, chi, &t.root.gamma)?).cloned().collect();
        let extra_d: SentenceSet<I> = delta2.difference(&translate_set(ins, chi, &t.root.delta)?).cloned().collect();
        let g_side = translate_set(ins, &iota2, &extra_g)?;
        let d_side = translate_set(ins, &iota2, &extra_d)?;
        for (p, part) in t.premises.iter().zip(&t.applied.premises) {
            let part2 = Part { left: translate_set(ins, &chi_i, &part.left)?, right: translate_set(ins, &chi_i, &part.right)? };
            let g_i = union(&translate_set(ins, &chi_i, &p.root.gamma)?, &g_side);
            let d_i = union(&translate_set(ins, &chi_i, &p.root.delta)?, &d_side);
            premises.push(modify_proof(ins, &chi_i, p, &g_i, &d_i)?);
            parts.push(part2);
        }
    }
    Ok(ProofTree {
        rule,
        premises,
        root: Sequent { gamma: gamma2.clone(), sig: sig2, delta: delta2.clone() },
        applied: Applied { premises: parts, conclusion },
    })
}

/// One recursive call of [`cut_proof`]: the cut-formula size and the
/// combined size of the two input trees.
pub type Measure = (usize, usize);

/// Instrumentation for the termination argument of [`cut_proof`].
#[derive(Debug, Clone, Default)]
pub struct CutTrace {
    /// Measures of every call, in call order.
    pub measures: Vec<Measure>,
    /// Recursive calls whose measure did not decrease, as `(caller, callee)`.
    pub violations: Vec<(Measure, Measure)>,
}

/// From proofs of `Γ ⊢_Σ Δ ∪ {ψ}` and `{ψ} ∪ Γ' ⊢_Σ Δ'`, a cut-free-at-`ψ`
/// proof of `Γ ∪ Γ' ⊢_Σ Δ ∪ Δ'`.
#[allow(clippy::too_many_arguments)]
pub fn cut_proof<I: Institution>(
    ins: &I,
    gamma: &SentenceSet<I>,
    gamma2: &SentenceSet<I>,
    delta: &SentenceSet<I>,
    delta2: &SentenceSet<I>,
    psi: &Sentence<I>,
    t: &ProofTree<I>,
    t2: &ProofTree<I>,
) -> Result<ProofTree<I>> {
    cut_proof_traced(ins, gamma, gamma2, delta, delta2, psi, t, t2, &mut CutTrace::default())
}

#[allow(clippy::too_many_arguments)]
pub fn cut_proof_traced<I: Institution>(
    ins: &I,
    gamma: &SentenceSet<I>,
    gamma2: &SentenceSet<I>,
    delta: &SentenceSet<I>,
    delta2: &SentenceSet<I>,
    psi: &Sentence<I>,
    t: &ProofTree<I>,
    t2: &ProofTree<I>,
    trace: &mut CutTrace,
) -> Result<ProofTree<I>> {
    Cutter { ins, trace, stack: Vec::new() }.cut(gamma, gamma2, delta, delta2, psi, t, t2)
}

struct Cutter<'a, I: Institution> {
    ins: &'a I,
    trace: &'a mut CutTrace,
    stack: Vec<Measure>,
}

impl<I: Institution> Cutter<'_, I> {
    #[allow(clippy::too_many_arguments)]
    fn cut(
        &mut self,
        gamma: &SentenceSet<I>,
        gamma2: &SentenceSet<I>,
        delta: &SentenceSet<I>,
        delta2: &SentenceSet<I>,
        psi: &Sentence<I>,
        t: &ProofTree<I>,
        t2: &ProofTree<I>,
    ) -> Result<ProofTree<I>> {
        let sig = &t.root.sig;
        if !t.proves(gamma, sig, &with(delta, psi)) || !t2.proves(&with(gamma2, psi), sig, delta2) {
            return Err(Error::Precondition(format!(
                "cut roots {} and {} do not match the cut on {psi}",
                t.root, t2.root
            )));
        }
        let m = (psi.size(), t.size() + t2.size());
        if let Some(&caller) = self.stack.last() {
            if m >= caller {
                self.trace.violations.push((caller, m));
            }
        }
        self.trace.measures.push(m);
        self.stack.push(m);
        let out = self.cut_cases(gamma, gamma2, delta, delta2, psi, t, t2);
        self.stack.pop();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn cut_cases(
        &mut self,
        gamma: &SentenceSet<I>,
        gamma2: &SentenceSet<I>,
        delta: &SentenceSet<I>,
        delta2: &SentenceSet<I>,
        psi: &Sentence<I>,
        t: &ProofTree<I>,
        t2: &ProofTree<I>,
    ) -> Result<ProofTree<I>> {
        let ins = self.ins;
        let sig = t.root.sig.clone();
        let id = ins.identity(&sig);
        let g_all = union(gamma, gamma2);
        let d_all = union(delta, delta2);
        if delta.contains(psi) || delta2.contains(psi) {
            return modify_proof(ins, &id, t, &g_all, &d_all);
        }
        if gamma.contains(psi) || gamma2.contains(psi) {
            return modify_proof(ins, &id, t2, &g_all, &d_all);
        }
        let root = Sequent { gamma: g_all.clone(), sig: sig.clone(), delta: d_all.clone() };

        if !t2.applied.conclusion.left.contains(psi) {
            if t2.premises.is_empty() {
                return Ok(ProofTree { root, ..leaf_shell(t2) });
            }
            let (_, iota) = premise_translation(ins, &t2.rule, &t2.applied.conclusion, &sig)?;
            let moved = sentence::translate(ins, &iota, psi)?;
            let g_i = translate_set(ins, &iota, gamma)?;
            let d_i = translate_set(ins, &iota, delta)?;
            let mut premises = Vec::with_capacity(t2.premises.len());
            for (p, part) in t2.premises.iter().zip(&t2.applied.premises) {
                if p.root.gamma.contains(&moved) && !part.left.contains(&moved) {
                    let left = modify_proof(ins, &iota, t, &g_i, &with(&d_i, &moved))?;
                    let rest = without(&p.root.gamma, &moved);
                    premises.push(self.cut(&g_i, &rest, &d_i, &p.root.delta, &moved, &left, p)?);
                } else {
                    let pid = ins.identity(&p.root.sig);
                    premises.push(modify_proof(ins, &pid, p, &union(&p.root.gamma, &g_i), &union(&p.root.delta, &d_i))?);
                }
            }
            return Ok(ProofTree { rule: t2.rule.clone(), premises, root, applied: t2.applied.clone() });
        }

        if !t.applied.conclusion.right.contains(psi) {
            if t.premises.is_empty() {
                return Ok(ProofTree { root, ..leaf_shell(t) });
            }
            let (_, iota) = premise_translation(ins, &t.rule, &t.applied.conclusion, &sig)?;
            let moved = sentence::translate(ins, &iota, psi)?;
            let g_i = translate_set(ins, &iota, gamma2)?;
            let d_i = translate_set(ins, &iota, delta2)?;
            let mut premises = Vec::with_capacity(t.premises.len());
            for (p, part) in t.premises.iter().zip(&t.applied.premises) {
                if p.root.delta.contains(&moved) && !part.right.contains(&moved) {
                    let right = modify_proof(ins, &iota, t2, &with(&g_i, &moved), &d_i)?;
                    let rest = without(&p.root.delta, &moved);
                    premises.push(self.cut(&p.root.gamma, &g_i, &rest, &d_i, &moved, p, &right)?);
                } else {
                    let pid = ins.identity(&p.root.sig);
                    premises.push(modify_proof(ins, &pid, p, &union(&p.root.gamma, &g_i), &union(&p.root.delta, &d_i))?);
                }
            }
            return Ok(ProofTree { rule: t.rule.clone(), premises, root, applied: t.applied.clone() });
        }

        // ψ is principal on both sides
        let (left_proof, right_proof, phi) = match psi {
            Sentence::Atom(_) => {
                let c1 = &t.applied.conclusion;
                let c2 = &t2.applied.conclusion;
                return Ok(ProofTree::atom_leaf(
                    root,
                    union(&c1.left, &without(&c2.left, psi)),
                    union(&without(&c1.right, psi), &c2.right),
                ));
            }
            Sentence::Not(phi) => {
                let a = self.clear_right(&t.premises[0], psi, gamma2, delta2, t2)?;
                let b = self.clear_left(&t2.premises[0], psi, gamma, delta, t)?;
                (b, a, (**phi).clone())
            }
            Sentence::Or(v) => {
                let n = match &t.rule {
                    Rule::OrR(n) => *n,
                    r => return Err(Error::Precondition(format!("{} introduces a disjunction on the right", r.keyword()))),
                };
                let a = self.clear_right(&t.premises[0], psi, gamma2, delta2, t2)?;
                let b = self.clear_left(&t2.premises[n], psi, gamma, delta, t)?;
                (a, b, v[n].clone())
            }
            Sentence::Exists(x, body) => {
                let theta = match &t.rule {
                    Rule::ExistsR(theta) => theta.clone(),
                    r => return Err(Error::Precondition(format!("{} introduces an existential on the right", r.keyword()))),
                };
                let a = self.clear_right(&t.premises[0], psi, gamma2, delta2, t2)?;
                let bundle = ins.extend(&sig, x)?;
                let moved = sentence::translate(ins, &bundle.inclusion, psi)?;
                let p = &t2.premises[0];
                let b = if p.root.gamma.contains(&moved) && moved != **body {
                    let g_i = translate_set(ins, &bundle.inclusion, gamma)?;
                    let d_i = translate_set(ins, &bundle.inclusion, delta)?;
                    let left = modify_proof(ins, &bundle.inclusion, t, &g_i, &with(&d_i, &moved))?;
                    self.cut(&g_i, &without(&p.root.gamma, &moved), &d_i, &p.root.delta, &moved, &left, p)?
                } else {
                    p.clone()
                };
                let gb = translate_set(ins, &theta, &b.root.gamma)?;
                let db = translate_set(ins, &theta, &b.root.delta)?;
                let b = modify_proof(ins, &theta, &b, &gb, &db)?;
                (a, b, sentence::translate(ins, &theta, body)?)
            }
        };
        let (a, b) = (&left_proof, &right_proof);
        let r = self.cut(
            &a.root.gamma,
            &without(&b.root.gamma, &phi),
            &without(&a.root.delta, &phi),
            &b.root.delta,
            &phi,
            a,
            b,
        )?;
        modify_proof(ins, &id, &r, &g_all, &d_all)
    }

    /// Removes a side occurrence of `ψ` from the succedent of `p` by cutting
    /// against `t2`, whose root is `{ψ} ∪ Γ' ⊢ Δ'`.
    fn clear_right(
        &mut self,
        p: &ProofTree<I>,
        psi: &Sentence<I>,
        gamma2: &SentenceSet<I>,
        delta2: &SentenceSet<I>,
        t2: &ProofTree<I>,
    ) -> Result<ProofTree<I>> {
        if !p.root.delta.contains(psi) {
            return Ok(p.clone());
        }
        self.cut(&p.root.gamma, gamma2, &without(&p.root.delta, psi), delta2, psi, p, t2)
    }

    /// Removes a side occurrence of `ψ` from the antecedent of `p` by cutting
    /// against `t`, whose root is `Γ ⊢ Δ ∪ {ψ}`.
    fn clear_left(
        &mut self,
        p: &ProofTree<I>,
        psi: &Sentence<I>,
        gamma: &SentenceSet<I>,
        delta: &SentenceSet<I>,
        t: &ProofTree<I>,
    ) -> Result<ProofTree<I>> {
        if !p.root.gamma.contains(psi) {
            return Ok(p.clone());
        }
        self.cut(gamma, &without(&p.root.gamma, psi), delta, &p.root.delta, psi, t, p)
    }
}

fn leaf_shell<I: Institution>(t: &ProofTree<I>) -> ProofTree<I> {
    ProofTree { rule: t.rule.clone(), premises: Vec::new(), root: t.root.clone(), applied: t.applied.clone() }
}

//! Seeded and exhaustive generators of signatures, sentences and sequents
//! used by the sweeps and test suites.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::instances::fol0::{Fol0Atom, Fol0Sig};
use crate::institution::Institution;
use crate::sentence::Sentence;

/// A one-sorted or two-sorted signature with up to `max_symbols` function
/// symbols and up to `max_symbols` predicates. Every sort gets a constant so
/// that ground terms exist.
pub fn random_fol0_signature(rng: &mut impl Rng, max_sorts: usize, max_symbols: usize) -> Result<Fol0Sig> {
    let sorts: Vec<&str> = ["s", "t"][..rng.gen_range(1..=max_sorts.clamp(1, 2))].to_vec();
    let mut funcs: Vec<(String, Vec<&str>, &str)> = Vec::new();
    for (i, s) in sorts.iter().enumerate() {
        funcs.push((["c", "d"][i].to_string(), vec![], s));
    }
    let extra = rng.gen_range(0..=max_symbols.saturating_sub(sorts.len()));
    for i in 0..extra {
        let arg = *sorts.choose(rng).expect("a sort");
        let res = *sorts.choose(rng).expect("a sort");
        if rng.gen_bool(0.5) {
            funcs.push((format!("f{i}"), vec![arg], res));
        } else {
            funcs.push((format!("e{i}"), vec![], res));
        }
    }
    let npreds = rng.gen_range(1..=max_symbols.max(1));
    let mut preds: Vec<(String, Vec<&str>)> = Vec::new();
    for (i, name) in ["P", "Q", "R"].iter().enumerate().take(npreds) {
        let arity = if i == 0 { 1 } else { rng.gen_range(0..=1) };
        preds.push((name.to_string(), (0..arity).map(|_| *sorts.choose(rng).expect("a sort")).collect()));
    }
    let equality = rng.gen_bool(0.25);
    let funcs: Vec<(&str, &[&str], &str)> = funcs.iter().map(|(f, a, r)| (f.as_str(), a.as_slice(), *r)).collect();
    let preds: Vec<(&str, &[&str])> = preds.iter().map(|(p, a)| (p.as_str(), a.as_slice())).collect();
    Fol0Sig::build(&sorts, &funcs, &preds, equality)
}

/// The signature with no sorts and two nullary predicates `P`, `Q`.
pub fn propositional_signature() -> Fol0Sig {
    Fol0Sig::build(&[], &[], &[("P", &[]), ("Q", &[])], false).expect("well-formed")
}

/// A random sentence over `sig` of depth at most `depth`. Disjunctions have
/// zero to two children; quantifiers range over the non-empty blocks.
pub fn random_sentence<I: Institution>(
    ins: &I,
    rng: &mut impl Rng,
    sig: &I::Sig,
    depth: usize,
    atom_budget: usize,
) -> Result<Sentence<I>> {
    let atoms = ins.atoms(sig, atom_budget);
    let blocks: Vec<I::Block> = ins.blocks(sig).into_iter().filter(|x| ins.block_size(x) > 0).collect();
    if depth == 0 || rng.gen_bool(0.3) {
        return Ok(match atoms.choose(rng) {
            Some(a) => Sentence::Atom(a.clone()),
            None => Sentence::falsum(),
        });
    }
    Ok(match rng.gen_range(0..10) {
        0..=2 => Sentence::not(random_sentence(ins, rng, sig, depth - 1, atom_budget)?),
        3..=6 => {
            let n = if rng.gen_bool(0.1) { 0 } else { rng.gen_range(1..=2) };
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push(random_sentence(ins, rng, sig, depth - 1, atom_budget)?);
            }
            Sentence::Or(v)
        }
        _ => match blocks.choose(rng) {
            Some(x) => {
                let ext = ins.extend(sig, x)?.extended;
                Sentence::exists(x.clone(), random_sentence(ins, rng, &ext, depth - 1, atom_budget)?)
            }
            None => Sentence::not(random_sentence(ins, rng, sig, depth - 1, atom_budget)?),
        },
    })
}

/// Every sentence over `sig` of depth at most `depth` in the grammar: atoms,
/// negation, falsum, binary disjunction of distinct children, and `∃` over
/// each non-empty block. Sentences are listed without duplicates, in order
/// of depth.
pub fn sentences_up_to<I: Institution>(ins: &I, sig: &I::Sig, depth: usize, atom_budget: usize) -> Result<Vec<Sentence<I>>> {
    let mut out: Vec<Sentence<I>> = ins.atoms(sig, atom_budget).into_iter().map(Sentence::Atom).collect();
    out.push(Sentence::falsum());
    if depth == 0 {
        return Ok(out);
    }
    let below = sentences_up_to(ins, sig, depth - 1, atom_budget)?;
    let mut seen: BTreeSet<Sentence<I>> = out.iter().cloned().collect();
    let mut push = |s: Sentence<I>, out: &mut Vec<Sentence<I>>| {
        if seen.insert(s.clone()) {
            out.push(s);
        }
    };
    for s in &below {
        push(s.clone(), &mut out);
    }
    for s in &below {
        push(Sentence::not(s.clone()), &mut out);
    }
    for (i, a) in below.iter().enumerate() {
        for b in &below[i + 1..] {
            push(Sentence::Or(vec![a.clone(), b.clone()]), &mut out);
        }
    }
    for x in ins.blocks(sig) {
        if ins.block_size(&x) == 0 {
            continue;
        }
        let ext = ins.extend(sig, &x)?.extended;
        for body in sentences_up_to(ins, &ext, depth - 1, atom_budget)? {
            push(Sentence::exists(x.clone(), body), &mut out);
        }
    }
    Ok(out)
}

/// Quantifier-free formulas over [`propositional_signature`] by level: the
/// literals `P`, `Q`, `¬P`, `¬Q` form level 1; level `k+1` adds `¬φ` for
/// `φ` of level exactly `k` and `φ ∨ ψ` for distinct unordered pairs whose
/// higher level is exactly `k`.
pub fn literal_formulas<I: Institution<Atom = Fol0Atom>>(levels: usize) -> Vec<Sentence<I>> {
    let p = Sentence::Atom(Fol0Atom::pred("P", vec![]));
    let q = Sentence::Atom(Fol0Atom::pred("Q", vec![]));
    let mut by_level: Vec<Vec<Sentence<I>>> = vec![vec![p.clone(), q.clone(), Sentence::not(p), Sentence::not(q)]];
    for k in 1..levels {
        let last = &by_level[k - 1];
        let lower: Vec<&Sentence<I>> = by_level[..k - 1].iter().flatten().collect();
        let mut next: Vec<Sentence<I>> = last.iter().map(|s| Sentence::not(s.clone())).collect();
        for (i, a) in last.iter().enumerate() {
            for b in lower.iter().copied().chain(&last[i + 1..]) {
                next.push(Sentence::Or(vec![a.clone(), b.clone()]));
            }
        }
        by_level.push(next);
    }
    by_level.into_iter().flatten().collect()
}

/// All sequents `Γ ⊢ Δ` with `|Γ| + |Δ| ≤ 2` drawn from `formulas`.
pub fn small_sequents<I: Institution>(formulas: &[Sentence<I>]) -> Vec<(Vec<Sentence<I>>, Vec<Sentence<I>>)> {
    let mut out = vec![(vec![], vec![])];
    for f in formulas {
        out.push((vec![f.clone()], vec![]));
        out.push((vec![], vec![f.clone()]));
    }
    for a in formulas {
        for b in formulas {
            out.push((vec![a.clone()], vec![b.clone()]));
        }
    }
    for (i, a) in formulas.iter().enumerate() {
        for b in &formulas[i + 1..] {
            out.push((vec![a.clone(), b.clone()], vec![]));
            out.push((vec![], vec![a.clone(), b.clone()]));
        }
    }
    out
}

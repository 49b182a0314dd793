use std::collections::BTreeMap;
use std::fmt;

use super::signature::{Fol0Sig, Name, Sym};
use crate::error::{Error, Result};
use crate::util::Odometer;

/// A term. `Hole(i)` stands for the `i`-th argument in the image of a
/// function symbol under a signature morphism; ground terms have no holes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    Hole(usize),
    App(Sym, Vec<Term>),
}

impl Term {
    pub fn constant(sym: Sym) -> Self {
        Term::App(sym, Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Self {
        Term::App(Sym::named(name), args)
    }

    /// The generic application `f(#0, …, #n-1)`.
    pub fn generic(sym: Sym, arity: usize) -> Self {
        Term::App(sym, (0..arity).map(Term::Hole).collect())
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Hole(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            Term::Hole(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.height() + 1).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Hole(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Replaces every hole `#i` by `args[i]`.
    pub fn fill(&self, args: &[Term]) -> Result<Term> {
        match self {
            Term::Hole(i) => args
                .get(*i)
                .cloned()
                .ok_or_else(|| Error::IllFormedMorphism(format!("hole #{i} out of range"))),
            Term::App(f, a) => Ok(Term::App(f.clone(), a.iter().map(|t| t.fill(args)).collect::<Result<_>>()?)),
        }
    }

    /// Replaces every occurrence of a symbol applied to arguments by a
    /// template, bottom-up.
    pub fn map_symbols(&self, image: &impl Fn(&Sym) -> Result<Term>) -> Result<Term> {
        match self {
            Term::Hole(i) => Ok(Term::Hole(*i)),
            Term::App(f, a) => {
                let args = a.iter().map(|t| t.map_symbols(image)).collect::<Result<Vec<_>>>()?;
                image(f)?.fill(&args)
            }
        }
    }

    pub fn symbols(&self, out: &mut Vec<Sym>) {
        if let Term::App(f, a) = self {
            out.push(f.clone());
            for t in a {
                t.symbols(out);
            }
        }
    }

    /// Sort of the term in `sig`, with `holes[i]` giving the sort of `#i`.
    pub fn sort(&self, sig: &Fol0Sig, holes: &[Name]) -> Result<Name> {
        match self {
            Term::Hole(i) => holes
                .get(*i)
                .cloned()
                .ok_or_else(|| Error::IllFormedMorphism(format!("hole #{i} out of range"))),
            Term::App(f, args) => {
                let d = sig.func(f)?;
                if d.args.len() != args.len() {
                    return Err(Error::IllFormedSentence(format!(
                        "`{f}` expects {} arguments, got {}",
                        d.args.len(),
                        args.len()
                    )));
                }
                for (a, s) in args.iter().zip(&d.args) {
                    let got = a.sort(sig, holes)?;
                    if got != *s {
                        return Err(Error::IllFormedSentence(format!("argument {a} of `{f}` has sort {got}, expected {s}")));
                    }
                }
                Ok(d.result.clone())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Hole(i) => write!(f, "#{i}"),
            Term::App(s, args) if args.is_empty() => write!(f, "{s}"),
            Term::App(s, args) => {
                write!(f, "({s}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// An atomic sentence: a predicate applied to ground terms, or an equation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Fol0Atom {
    Pred(Name, Vec<Term>),
    Eq(Term, Term),
}

impl Fol0Atom {
    pub fn pred(name: &str, args: Vec<Term>) -> Self {
        Fol0Atom::Pred(name.into(), args)
    }

    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Fol0Atom::Pred(_, a) => a.iter().collect(),
            Fol0Atom::Eq(a, b) => vec![a, b],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.terms().iter().map(|t| t.size()).sum::<usize>()
    }

    pub fn check(&self, sig: &Fol0Sig) -> Result<()> {
        match self {
            Fol0Atom::Pred(p, args) => {
                let sorts = sig.pred(p)?;
                if sorts.len() != args.len() {
                    return Err(Error::IllFormedSentence(format!(
                        "`{p}` expects {} arguments, got {}",
                        sorts.len(),
                        args.len()
                    )));
                }
                for (a, s) in args.iter().zip(sorts) {
                    if !a.is_ground() {
                        return Err(Error::IllFormedSentence(format!("{a} is not ground")));
                    }
                    let got = a.sort(sig, &[])?;
                    if got != *s {
                        return Err(Error::IllFormedSentence(format!("argument {a} of `{p}` has sort {got}, expected {s}")));
                    }
                }
                Ok(())
            }
            Fol0Atom::Eq(a, b) => {
                if !sig.has_equality() {
                    return Err(Error::IllFormedSentence("equation over a signature without equality".into()));
                }
                if !a.is_ground() || !b.is_ground() {
                    return Err(Error::IllFormedSentence(format!("{self} is not ground")));
                }
                let (sa, sb) = (a.sort(sig, &[])?, b.sort(sig, &[])?);
                if sa != sb {
                    return Err(Error::IllFormedSentence(format!("{self} equates sorts {sa} and {sb}")));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Fol0Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fol0Atom::Pred(p, args) => {
                write!(f, "({p}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
            Fol0Atom::Eq(a, b) => write!(f, "(= {a} {b})"),
        }
    }
}

/// All terms of height at most `height` over `sig`, grouped by sort, where
/// `holes[i]` is the sort of `#i` and holes count as height 0.
pub fn terms_by_sort(sig: &Fol0Sig, holes: &[Name], height: usize, cap: usize) -> BTreeMap<Name, Vec<Term>> {
    let mut by_sort: BTreeMap<Name, Vec<Term>> = sig.sorts().iter().map(|s| (s.clone(), Vec::new())).collect();
    for (i, s) in holes.iter().enumerate() {
        by_sort.entry(s.clone()).or_default().push(Term::Hole(i));
    }
    for (f, d) in sig.funcs() {
        if d.args.is_empty() {
            by_sort.entry(d.result.clone()).or_default().push(Term::constant(f.clone()));
        }
    }
    for _ in 0..height {
        let prev = by_sort.clone();
        for (f, d) in sig.funcs() {
            if d.args.is_empty() {
                continue;
            }
            let pools: Vec<&Vec<Term>> = d.args.iter().map(|s| &prev[s]).collect();
            let out = by_sort.entry(d.result.clone()).or_default();
            for idx in Odometer::new(pools.iter().map(|p| p.len()).collect()) {
                if out.len() >= cap {
                    break;
                }
                let t = Term::App(f.clone(), idx.iter().zip(&pools).map(|(i, p)| p[*i].clone()).collect());
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
    }
    for v in by_sort.values_mut() {
        v.sort();
        v.dedup();
        v.truncate(cap);
    }
    by_sort
}

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::signature::{Fol0Sig, Name, Sym};
use super::term::{Fol0Atom, Term};
use crate::error::{Error, Result};

#[derive(PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
struct MorData {
    dom: Fol0Sig,
    cod: Fol0Sig,
    sorts: BTreeMap<Name, Name>,
    funcs: BTreeMap<Sym, Term>,
    preds: BTreeMap<Name, Name>,
}

/// A signature morphism. Each function symbol maps to a term of the target
/// signature whose holes `#i` stand for the arguments, so a morphism may send
/// a constant to a compound ground term. Equality is extensional.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Fol0Mor(Arc<MorData>);

impl Fol0Mor {
    pub fn new(
        dom: Fol0Sig,
        cod: Fol0Sig,
        sorts: BTreeMap<Name, Name>,
        funcs: BTreeMap<Sym, Term>,
        preds: BTreeMap<Name, Name>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::IllFormedMorphism(m));
        for s in dom.sorts() {
            match sorts.get(s) {
                Some(t) if cod.has_sort(t) => {}
                Some(t) => return bad(format!("sort {s} maps to unknown sort {t}")),
                None => return bad(format!("sort {s} is not mapped")),
            }
        }
        if sorts.len() != dom.sorts().len() {
            return bad("sort map has entries outside the domain".into());
        }
        for (f, d) in dom.funcs() {
            let Some(img) = funcs.get(f) else {
                return bad(format!("function {f} is not mapped"));
            };
            let holes: Vec<Name> = d.args.iter().map(|s| sorts[s].clone()).collect();
            let got = img.sort(&cod, &holes).map_err(|e| Error::IllFormedMorphism(format!("image of {f}: {e}")))?;
            if got != sorts[&d.result] {
                return bad(format!("image {img} of {f} has sort {got}, expected {}", sorts[&d.result]));
            }
        }
        if funcs.len() != dom.funcs().len() {
            return bad("function map has entries outside the domain".into());
        }
        for (p, args) in dom.preds() {
            let Some(q) = preds.get(p) else {
                return bad(format!("predicate {p} is not mapped"));
            };
            let want: Vec<Name> = args.iter().map(|s| sorts[s].clone()).collect();
            match cod.preds().get(q) {
                Some(have) if *have == want => {}
                Some(_) => return bad(format!("predicate {p} maps to {q} of a different arity")),
                None => return bad(format!("predicate {p} maps to unknown {q}")),
            }
        }
        if preds.len() != dom.preds().len() {
            return bad("predicate map has entries outside the domain".into());
        }
        if dom.has_equality() && !cod.has_equality() {
            return bad("equality cannot be mapped into a signature without it".into());
        }
        Ok(Self::new_unchecked(dom, cod, sorts, funcs, preds))
    }

    pub(crate) fn new_unchecked(
        dom: Fol0Sig,
        cod: Fol0Sig,
        sorts: BTreeMap<Name, Name>,
        funcs: BTreeMap<Sym, Term>,
        preds: BTreeMap<Name, Name>,
    ) -> Self {
        Fol0Mor(Arc::new(MorData { dom, cod, sorts, funcs, preds }))
    }

    /// The inclusion of `dom` into a signature containing all of its symbols.
    pub fn inclusion(dom: &Fol0Sig, cod: &Fol0Sig) -> Result<Self> {
        Self::new(
            dom.clone(),
            cod.clone(),
            dom.sorts().iter().map(|s| (s.clone(), s.clone())).collect(),
            dom.funcs().iter().map(|(f, d)| (f.clone(), Term::generic(f.clone(), d.args.len()))).collect(),
            dom.preds().keys().map(|p| (p.clone(), p.clone())).collect(),
        )
    }

    pub fn identity(sig: &Fol0Sig) -> Self {
        Self::new_unchecked(
            sig.clone(),
            sig.clone(),
            sig.sorts().iter().map(|s| (s.clone(), s.clone())).collect(),
            sig.funcs().iter().map(|(f, d)| (f.clone(), Term::generic(f.clone(), d.args.len()))).collect(),
            sig.preds().keys().map(|p| (p.clone(), p.clone())).collect(),
        )
    }

    pub fn dom(&self) -> &Fol0Sig {
        &self.0.dom
    }

    pub fn cod(&self) -> &Fol0Sig {
        &self.0.cod
    }

    pub fn sort_map(&self) -> &BTreeMap<Name, Name> {
        &self.0.sorts
    }

    pub fn func_map(&self) -> &BTreeMap<Sym, Term> {
        &self.0.funcs
    }

    pub fn pred_map(&self) -> &BTreeMap<Name, Name> {
        &self.0.preds
    }

    pub fn sort(&self, s: &str) -> Result<Name> {
        self.0.sorts.get(s).cloned().ok_or_else(|| Error::UnknownSymbol(s.to_string()))
    }

    pub fn pred(&self, p: &str) -> Result<Name> {
        self.0.preds.get(p).cloned().ok_or_else(|| Error::UnknownSymbol(p.to_string()))
    }

    /// Translates a term of the domain (holes are kept).
    pub fn apply_term(&self, t: &Term) -> Result<Term> {
        t.map_symbols(&|f| self.0.funcs.get(f).cloned().ok_or_else(|| Error::UnknownSymbol(f.to_string())))
    }

    pub fn apply_atom(&self, a: &Fol0Atom) -> Result<Fol0Atom> {
        match a {
            Fol0Atom::Pred(p, args) => {
                Ok(Fol0Atom::Pred(self.pred(p)?, args.iter().map(|t| self.apply_term(t)).collect::<Result<_>>()?))
            }
            Fol0Atom::Eq(l, r) => Ok(Fol0Atom::Eq(self.apply_term(l)?, self.apply_term(r)?)),
        }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Fol0Mor) -> Result<Fol0Mor> {
        if self.cod() != g.dom() {
            return Err(Error::SignatureMismatch { expected: g.dom().to_string(), found: self.cod().to_string() });
        }
        let sorts = self.0.sorts.iter().map(|(s, t)| Ok((s.clone(), g.sort(t)?))).collect::<Result<_>>()?;
        let funcs = self.0.funcs.iter().map(|(f, t)| Ok((f.clone(), g.apply_term(t)?))).collect::<Result<_>>()?;
        let preds = self.0.preds.iter().map(|(p, q)| Ok((p.clone(), g.pred(q)?))).collect::<Result<_>>()?;
        Ok(Self::new_unchecked(self.dom().clone(), g.cod().clone(), sorts, funcs, preds))
    }
}

impl fmt::Display for Fol0Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}→{}", self.dom(), self.cod())?;
        for (s, t) in &self.0.sorts {
            if s != t {
                write!(f, " (sort {s} {t})")?;
            }
        }
        for (g, t) in &self.0.funcs {
            if let Term::App(h, args) = t {
                if h == g && args.iter().enumerate().all(|(i, a)| *a == Term::Hole(i)) {
                    continue;
                }
            }
            write!(f, " (func {g} {t})")?;
        }
        for (p, q) in &self.0.preds {
            if p != q {
                write!(f, " (pred {p} {q})")?;
            }
        }
        write!(f, ")")
    }
}

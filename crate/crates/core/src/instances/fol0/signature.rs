use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fingerprint::{fingerprint, tag_hex};

pub type Name = Arc<str>;

/// A function symbol: either declared by name, or a variable introduced by
/// an extension and tagged with the fingerprint of the signature it extends.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sym {
    Named(Name),
    Var { name: Name, tag: u64 },
}

impl Sym {
    pub fn named(name: &str) -> Self {
        Sym::Named(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Sym::Named(n) | Sym::Var { name: n, .. } => n,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Sym::Var { .. })
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Named(n) => write!(f, "{n}"),
            Sym::Var { name, tag } => write!(f, "{name}#{}", tag_hex(*tag)),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FuncDecl {
    pub args: Vec<Name>,
    pub result: Name,
}

#[derive(PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SigData {
    fp: u64,
    sorts: BTreeSet<Name>,
    funcs: BTreeMap<Sym, FuncDecl>,
    preds: BTreeMap<Name, Vec<Name>>,
    equality: bool,
}

/// A many-sorted signature. Cloning is cheap; equality, ordering and hashing
/// start from a content fingerprint.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Fol0Sig(Arc<SigData>);

impl Fol0Sig {
    pub fn new(
        sorts: BTreeSet<Name>,
        funcs: BTreeMap<Sym, FuncDecl>,
        preds: BTreeMap<Name, Vec<Name>>,
        equality: bool,
    ) -> Result<Self> {
        let known = |s: &Name, what: &str| {
            if sorts.contains(s) {
                Ok(())
            } else {
                Err(Error::IllFormedSignature(format!("{what} uses undeclared sort `{s}`")))
            }
        };
        for (f, d) in &funcs {
            for s in d.args.iter().chain(std::iter::once(&d.result)) {
                known(s, &format!("function `{f}`"))?;
            }
            if f.is_var() && !d.args.is_empty() {
                return Err(Error::IllFormedSignature(format!("variable `{f}` must be a constant")));
            }
        }
        for (p, args) in &preds {
            for s in args {
                known(s, &format!("predicate `{p}`"))?;
            }
        }
        let fp = fingerprint(&canonical(&sorts, &funcs, &preds, equality));
        Ok(Fol0Sig(Arc::new(SigData { fp, sorts, funcs, preds, equality })))
    }

    /// Convenience constructor from string slices.
    pub fn build(
        sorts: &[&str],
        funcs: &[(&str, &[&str], &str)],
        preds: &[(&str, &[&str])],
        equality: bool,
    ) -> Result<Self> {
        Self::new(
            sorts.iter().map(|s| Name::from(*s)).collect(),
            funcs
                .iter()
                .map(|(f, a, r)| {
                    (Sym::named(f), FuncDecl { args: a.iter().map(|s| Name::from(*s)).collect(), result: (*r).into() })
                })
                .collect(),
            preds.iter().map(|(p, a)| (Name::from(*p), a.iter().map(|s| Name::from(*s)).collect())).collect(),
            equality,
        )
    }

    pub fn fingerprint(&self) -> u64 {
        self.0.fp
    }

    pub fn sorts(&self) -> &BTreeSet<Name> {
        &self.0.sorts
    }

    pub fn funcs(&self) -> &BTreeMap<Sym, FuncDecl> {
        &self.0.funcs
    }

    pub fn preds(&self) -> &BTreeMap<Name, Vec<Name>> {
        &self.0.preds
    }

    pub fn has_equality(&self) -> bool {
        self.0.equality
    }

    pub fn has_sort(&self, s: &str) -> bool {
        self.0.sorts.contains(s)
    }

    pub fn func(&self, f: &Sym) -> Result<&FuncDecl> {
        self.0.funcs.get(f).ok_or_else(|| Error::UnknownSymbol(f.to_string()))
    }

    pub fn pred(&self, p: &str) -> Result<&Vec<Name>> {
        self.0.preds.get(p).ok_or_else(|| Error::UnknownSymbol(p.to_string()))
    }

    pub fn sort(&self, s: &str) -> Result<Name> {
        self.0.sorts.get(s).cloned().ok_or_else(|| Error::UnknownSymbol(s.to_string()))
    }

    /// Sorts that have at least one ground term.
    pub fn inhabited_sorts(&self) -> BTreeSet<Name> {
        let mut inhabited = BTreeSet::new();
        loop {
            let before = inhabited.len();
            for d in self.0.funcs.values() {
                if d.args.iter().all(|a| inhabited.contains(a)) {
                    inhabited.insert(d.result.clone());
                }
            }
            if inhabited.len() == before {
                return inhabited;
            }
        }
    }

    /// The canonical text from which the fingerprint is computed.
    pub fn canonical(&self) -> String {
        canonical(&self.0.sorts, &self.0.funcs, &self.0.preds, self.0.equality)
    }
}

fn canonical(
    sorts: &BTreeSet<Name>,
    funcs: &BTreeMap<Sym, FuncDecl>,
    preds: &BTreeMap<Name, Vec<Name>>,
    equality: bool,
) -> String {
    let mut out = String::from("(sorts");
    for s in sorts {
        out.push(' ');
        out.push_str(s);
    }
    out.push_str(") (funcs");
    for (f, d) in funcs {
        out.push_str(&format!(" ({f} ({}) {})", d.args.join(" "), d.result));
    }
    out.push_str(") (preds");
    for (p, a) in preds {
        out.push_str(&format!(" ({p} ({}))", a.join(" ")));
    }
    out.push(')');
    if equality {
        out.push_str(" (equality)");
    }
    out
}

impl fmt::Display for Fol0Sig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sig#{}", &tag_hex(self.0.fp)[..8])
    }
}

/// A block: finitely many variables, each with a name and a sort, attached to
/// the signature (by fingerprint) they extend.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Fol0Block {
    pub home: u64,
    pub vars: BTreeMap<Name, Name>,
}

impl Fol0Block {
    pub fn new(home: &Fol0Sig, vars: impl IntoIterator<Item = (Name, Name)>) -> Self {
        Fol0Block { home: home.fingerprint(), vars: vars.into_iter().collect() }
    }

    pub fn empty(home: &Fol0Sig) -> Self {
        Fol0Block { home: home.fingerprint(), vars: BTreeMap::new() }
    }

    /// The function symbol a variable of this block becomes in the extension.
    pub fn symbol(&self, name: &str) -> Sym {
        Sym::Var { name: name.into(), tag: self.home }
    }

    pub fn is_subset(&self, other: &Fol0Block) -> bool {
        self.home == other.home && self.vars.iter().all(|(n, s)| other.vars.get(n) == Some(s))
    }
}

impl fmt::Display for Fol0Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (n, s)) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "({n} {s})")?;
        }
        write!(f, ")@{}", &tag_hex(self.home)[..8])
    }
}

/// An inclusion of blocks over the same signature.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Fol0Inclusion {
    pub dom: Fol0Block,
    pub cod: Fol0Block,
}

impl Fol0Inclusion {
    pub fn new(dom: Fol0Block, cod: Fol0Block) -> Result<Self> {
        if dom.is_subset(&cod) {
            Ok(Fol0Inclusion { dom, cod })
        } else {
            Err(Error::Precondition(format!("{dom} is not included in {cod}")))
        }
    }
}

impl fmt::Display for Fol0Inclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊆{}", self.dom, self.cod)
    }
}

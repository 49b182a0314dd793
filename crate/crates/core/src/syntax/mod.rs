//! Text syntax for theory files.
//!
//! A theory file is a sequence of parenthesized declarations with `;` line
//! comments:
//!
//! ```text
//! (institution fol0)
//! (signature A (sorts s) (funcs (c () s)) (preds (P (s))))
//! (sentence ex :over A (exists ((x s)) (atom P x)))
//! (sequent goal :over A (gamma ex) (delta (atom P c)))
//! (proof p :over A :rule atom :root goal :premises ())
//! ```
//!
//! Signatures are referred to by name or as `(extend SIG BLOCK)`. Variables
//! bound by `exists` or by an extension shadow outer ones of the same name;
//! a shadowed variable is written `name#tag` with the tag of its block.
//! Reading resolves every reference and checks every declaration for
//! well-formedness. Printing is canonical: sets come out sorted and
//! declarations grouped by kind, so that `read ∘ print` is the identity.

mod cring;
mod fol0;
mod sexpr;

use std::collections::BTreeMap;

pub use sexpr::{parse, Pos, SExpr};
pub use cring::{print_poly, ring_by_name, MAX_RING_SIZE};

use crate::fingerprint::tag_hex;
use crate::instances::cring::CRing;
use crate::instances::fol0::{Fol0, Sym};
use crate::institution::Institution;
use crate::sentence::{self, Sentence};
use crate::sequent::{Applied, Part, ProofTree, Rule, Sequent, SentenceSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed text or an unexpected shape.
    Parse,
    /// An unknown name, or a declaration that fails its well-formedness check.
    Resolve,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct SyntaxError {
    pub kind: ErrorKind,
    pub pos: Pos,
    pub message: String,
}

impl SyntaxError {
    pub fn new(kind: ErrorKind, pos: Pos, message: impl Into<String>) -> Self {
        SyntaxError { kind, pos, message: message.into() }
    }

    pub fn parse(pos: Pos, message: impl Into<String>) -> Self {
        Self::new(ErrorKind::Parse, pos, message)
    }

    pub fn resolve(pos: Pos, message: impl Into<String>) -> Self {
        Self::new(ErrorKind::Resolve, pos, message)
    }
}

pub type SResult<T> = Result<T, SyntaxError>;

trait At<T> {
    fn at(self, pos: Pos) -> SResult<T>;
}

impl<T> At<T> for crate::Result<T> {
    fn at(self, pos: Pos) -> SResult<T> {
        self.map_err(|e| SyntaxError::resolve(pos, e.to_string()))
    }
}

/// Variables in scope, innermost last.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Scope {
    vars: Vec<(String, Sym)>,
}

impl Scope {
    pub fn with(&self, bindings: Vec<(String, Sym)>) -> Scope {
        let mut vars = self.vars.clone();
        vars.extend(bindings);
        Scope { vars }
    }

    /// Resolves `name` or `name#tag` to a bound variable.
    pub fn lookup(&self, text: &str) -> Option<Sym> {
        match text.split_once('#') {
            Some((name, tag)) => self
                .vars
                .iter()
                .rev()
                .find(|(n, s)| n == name && matches!(s, Sym::Var { tag: t, .. } if tag_hex(*t) == tag))
                .map(|(_, s)| s.clone()),
            None => self.vars.iter().rev().find(|(n, _)| n == text).map(|(_, s)| s.clone()),
        }
    }

    /// The shortest text that [`Scope::lookup`] resolves back to `sym`.
    pub fn name_of(&self, sym: &Sym) -> String {
        match sym {
            Sym::Named(n) => n.to_string(),
            Sym::Var { name, tag } => match self.lookup(name) {
                Some(s) if s == *sym => name.to_string(),
                _ => format!("{name}#{}", tag_hex(*tag)),
            },
        }
    }
}

/// A signature together with the variables its extensions bind.
#[derive(Debug, Clone)]
pub struct Ctx<I: Institution> {
    pub sig: I::Sig,
    pub scope: Scope,
}

/// The per-institution part of the syntax.
pub trait Syntax: Institution {
    const KEYWORD: &'static str;

    fn with_var_budget(n: usize) -> Self;
    fn var_budget(&self) -> usize;

    fn read_signature(&self, body: &[SExpr], pos: Pos) -> SResult<Self::Sig>;
    fn print_signature(&self, sig: &Self::Sig) -> Vec<SExpr>;

    fn read_morphism(&self, dom: &Ctx<Self>, cod: &Ctx<Self>, body: &[SExpr], pos: Pos) -> SResult<Self::Mor>;
    fn print_morphism(&self, m: &Self::Mor, dom: &Scope, cod: &Scope) -> Vec<SExpr>;

    fn read_model(&self, ctx: &Ctx<Self>, body: &[SExpr], pos: Pos) -> SResult<Self::Model>;
    fn print_model(&self, m: &Self::Model, scope: &Scope) -> Vec<SExpr>;

    /// Reads the arguments of an `(atom ...)` form.
    fn read_atom(&self, ctx: &Ctx<Self>, args: &[SExpr], pos: Pos) -> SResult<Self::Atom>;
    fn print_atom(&self, sig: &Self::Sig, a: &Self::Atom, scope: &Scope) -> Vec<SExpr>;

    fn read_block(&self, sig: &Self::Sig, e: &SExpr) -> SResult<Self::Block>;
    fn print_block(&self, x: &Self::Block) -> SExpr;
    /// The names a block binds and the symbols they stand for in the extension.
    fn bindings(&self, x: &Self::Block) -> Vec<(String, Sym)>;

    /// Reads `((x t) ...)` as the substitution `Σ^Dex[X] → Σ` sending each
    /// variable to its term.
    fn read_substitution(&self, ctx: &Ctx<Self>, x: &Self::Block, e: &SExpr) -> SResult<Self::Mor>;
    /// `None` when `theta` is not a substitution for `x`.
    fn print_substitution(&self, theta: &Self::Mor, x: &Self::Block, scope: &Scope) -> Option<SExpr>;
}

/// How a declaration names its signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigExpr<I: Institution> {
    Name(String),
    Extend(Box<SigExpr<I>>, I::Block),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decl<I: Institution, T> {
    pub name: String,
    pub over: SigExpr<I>,
    pub value: T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismDecl<I: Institution> {
    pub name: String,
    pub from: SigExpr<I>,
    pub to: SigExpr<I>,
    pub value: I::Mor,
}

/// A loaded theory file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory<I: Institution> {
    pub ins: I,
    pub signatures: Vec<(String, I::Sig)>,
    pub morphisms: Vec<MorphismDecl<I>>,
    pub models: Vec<Decl<I, I::Model>>,
    pub sentences: Vec<Decl<I, Sentence<I>>>,
    pub sequents: Vec<Decl<I, Sequent<I>>>,
    pub proofs: Vec<Decl<I, ProofTree<I>>>,
}

/// A theory file of either shipped institution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyTheory {
    Fol0(Theory<Fol0>),
    CRing(Theory<CRing>),
}

impl AnyTheory {
    pub fn print(&self) -> Result<String, String> {
        match self {
            AnyTheory::Fol0(t) => t.print(),
            AnyTheory::CRing(t) => t.print(),
        }
    }
}

/// Reads a theory file; the first declaration selects the institution.
pub fn load(src: &str) -> SResult<AnyTheory> {
    let items = parse(src)?;
    let Some(first) = items.first() else {
        return Err(SyntaxError::parse(Pos { line: 1, col: 1 }, "empty theory file: expected (institution ...)"));
    };
    let head = first.expect_list("(institution ...)")?;
    if first.head() != Some("institution") || head.len() < 2 {
        return Err(SyntaxError::parse(first.pos(), "the file must start with (institution fol0|cring)"));
    }
    let kw = keywords(&head[2..], &[":var-budget"])?;
    let budget = match kw.get(":var-budget") {
        Some(e) => Some(e.expect_usize("a variable budget")?),
        None => None,
    };
    match head[1].expect_symbol("an institution name")? {
        "fol0" => Ok(AnyTheory::Fol0(Theory::read(instance::<Fol0>(budget), &items[1..])?)),
        "cring" => Ok(AnyTheory::CRing(Theory::read(instance::<CRing>(budget), &items[1..])?)),
        other => Err(SyntaxError::resolve(head[1].pos(), format!("unknown institution `{other}`"))),
    }
}

fn instance<I: Syntax + Default>(budget: Option<usize>) -> I {
    budget.map(I::with_var_budget).unwrap_or_default()
}

/// Splits `:key value` pairs; rejects unknown and repeated keys.
fn keywords<'a>(items: &'a [SExpr], allowed: &[&str]) -> SResult<BTreeMap<&'a str, &'a SExpr>> {
    let mut out = BTreeMap::new();
    let mut i = 0;
    while i < items.len() {
        let key = items[i].expect_symbol("a keyword")?;
        if !allowed.contains(&key) {
            return Err(SyntaxError::parse(items[i].pos(), format!("unexpected `{key}`")));
        }
        let Some(value) = items.get(i + 1) else {
            return Err(SyntaxError::parse(items[i].pos(), format!("`{key}` needs a value")));
        };
        if out.insert(key, value).is_some() {
            return Err(SyntaxError::parse(items[i].pos(), format!("`{key}` given twice")));
        }
        i += 2;
    }
    Ok(out)
}

/// Splits leading `:key value` pairs from the remaining clauses.
fn split_keywords(items: &[SExpr]) -> (&[SExpr], &[SExpr]) {
    let mut i = 0;
    while i + 1 < items.len() && items[i].as_symbol().is_some_and(|s| s.starts_with(':')) {
        i += 2;
    }
    items.split_at(i)
}

fn required<'a>(kw: &BTreeMap<&str, &'a SExpr>, key: &str, pos: Pos) -> SResult<&'a SExpr> {
    kw.get(key).copied().ok_or_else(|| SyntaxError::parse(pos, format!("missing `{key}`")))
}

fn name_of(e: &SExpr) -> SResult<String> {
    let s = e.expect_symbol("a name")?;
    if s.starts_with(':') || s.contains('#') {
        return Err(SyntaxError::parse(e.pos(), format!("`{s}` is not a valid name")));
    }
    Ok(s.to_string())
}

impl<I: Syntax> Theory<I> {
    pub fn new(ins: I) -> Self {
        Theory {
            ins,
            signatures: Vec::new(),
            morphisms: Vec::new(),
            models: Vec::new(),
            sentences: Vec::new(),
            sequents: Vec::new(),
            proofs: Vec::new(),
        }
    }

    pub fn signature(&self, name: &str) -> Option<&I::Sig> {
        self.signatures.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn morphism(&self, name: &str) -> Option<&MorphismDecl<I>> {
        self.morphisms.iter().find(|m| m.name == name)
    }

    fn taken(&self, name: &str) -> bool {
        self.signatures.iter().any(|(n, _)| n == name)
            || self.morphisms.iter().any(|d| d.name == name)
            || self.models.iter().any(|d| d.name == name)
            || self.sentences.iter().any(|d| d.name == name)
            || self.sequents.iter().any(|d| d.name == name)
            || self.proofs.iter().any(|d| d.name == name)
    }

    /// Reads declarations (after the institution header) into a theory.
    pub fn read(ins: I, items: &[SExpr]) -> SResult<Self> {
        let mut t = Theory::new(ins);
        for item in items {
            t.read_decl(item)?;
        }
        Ok(t)
    }

    fn read_decl(&mut self, item: &SExpr) -> SResult<()> {
        let v = item.expect_list("a declaration")?;
        let pos = item.pos();
        let Some(kind) = item.head() else {
            return Err(SyntaxError::parse(pos, "expected a declaration"));
        };
        let Some(name_e) = v.get(1) else {
            return Err(SyntaxError::parse(pos, format!("`{kind}` needs a name")));
        };
        let name = name_of(name_e)?;
        if self.taken(&name) {
            return Err(SyntaxError::resolve(name_e.pos(), format!("`{name}` is declared twice")));
        }
        let (kws, body) = split_keywords(&v[2..]);
        let ins = self.ins.clone();
        match kind {
            "signature" => {
                keywords(kws, &[])?;
                let sig = ins.read_signature(body, pos)?;
                self.signatures.push((name, sig));
            }
            "morphism" => {
                let kw = keywords(kws, &[":from", ":to"])?;
                let (from, dom) = self.read_sig_expr(required(&kw, ":from", pos)?)?;
                let (to, cod) = self.read_sig_expr(required(&kw, ":to", pos)?)?;
                let value = ins.read_morphism(&dom, &cod, body, pos)?;
                self.morphisms.push(MorphismDecl { name, from, to, value });
            }
            "model" => {
                let kw = keywords(kws, &[":of"])?;
                let (over, ctx) = self.read_sig_expr(required(&kw, ":of", pos)?)?;
                let value = ins.read_model(&ctx, body, pos)?;
                self.models.push(Decl { name, over, value });
            }
            "sentence" => {
                let kw = keywords(kws, &[":over"])?;
                let (over, ctx) = self.read_sig_expr(required(&kw, ":over", pos)?)?;
                let [e] = body else {
                    return Err(SyntaxError::parse(pos, "a sentence declaration holds exactly one sentence"));
                };
                let value = read_sentence(&ins, &ctx, e)?;
                self.sentences.push(Decl { name, over, value });
            }
            "sequent" => {
                let kw = keywords(kws, &[":over"])?;
                let (over, ctx) = match kw.get(":over") {
                    Some(e) => self.read_sig_expr(e)?,
                    None => self.infer_over(body, pos)?,
                };
                let value = self.read_sides(&ctx, body, pos)?;
                self.sequents.push(Decl { name, over, value });
            }
            "proof" => {
                let (over, ctx) = self.proof_signature(kws, pos)?;
                let value = self.read_proof(&ctx, &v[2..], pos, true)?;
                self.proofs.push(Decl { name, over, value });
            }
            other => return Err(SyntaxError::parse(pos, format!("unknown declaration `{other}`"))),
        }
        Ok(())
    }

    fn proof_signature(&self, kws: &[SExpr], pos: Pos) -> SResult<(SigExpr<I>, Ctx<I>)> {
        let mut i = 0;
        while i + 1 < kws.len() {
            if kws[i].as_symbol() == Some(":over") {
                return self.read_sig_expr(&kws[i + 1]);
            }
            i += 2;
        }
        Err(SyntaxError::parse(pos, "missing `:over`"))
    }

    /// A signature name or `(extend SIG BLOCK)`.
    pub fn read_sig_expr(&self, e: &SExpr) -> SResult<(SigExpr<I>, Ctx<I>)> {
        match e {
            SExpr::Symbol(n, pos) => match self.signature(n) {
                Some(sig) => Ok((SigExpr::Name(n.clone()), Ctx { sig: sig.clone(), scope: Scope::default() })),
                None => Err(SyntaxError::resolve(*pos, format!("unknown signature `{n}`"))),
            },
            SExpr::List(v, pos) => {
                let [head, base, block] = v.as_slice() else {
                    return Err(SyntaxError::parse(*pos, "expected a signature name or (extend SIG BLOCK)"));
                };
                if head.as_symbol() != Some("extend") {
                    return Err(SyntaxError::parse(*pos, "expected a signature name or (extend SIG BLOCK)"));
                }
                let (inner, ctx) = self.read_sig_expr(base)?;
                let x = self.ins.read_block(&ctx.sig, block)?;
                let bundle = self.ins.extend(&ctx.sig, &x).at(block.pos())?;
                let scope = ctx.scope.with(self.ins.bindings(&x));
                Ok((SigExpr::Extend(Box::new(inner), x), Ctx { sig: bundle.extended, scope }))
            }
        }
    }

    /// The signature and bound variables a declaration lives in.
    pub fn sig_ctx(&self, e: &SigExpr<I>) -> Option<Ctx<I>> {
        match e {
            SigExpr::Name(n) => Some(Ctx { sig: self.signature(n)?.clone(), scope: Scope::default() }),
            SigExpr::Extend(inner, x) => {
                let ctx = self.sig_ctx(inner)?;
                let sig = self.ins.extend(&ctx.sig, x).ok()?.extended;
                Some(Ctx { sig, scope: ctx.scope.with(self.ins.bindings(x)) })
            }
        }
    }

    pub fn print_sig_expr(&self, e: &SigExpr<I>) -> SExpr {
        match e {
            SigExpr::Name(n) => SExpr::sym(n),
            SigExpr::Extend(inner, x) => {
                SExpr::list(vec![SExpr::sym("extend"), self.print_sig_expr(inner), self.ins.print_block(x)])
            }
        }
    }

    /// A sequent without `:over` takes the signature of its named sentences.
    fn infer_over(&self, body: &[SExpr], pos: Pos) -> SResult<(SigExpr<I>, Ctx<I>)> {
        for clause in body {
            for e in clause.as_list().unwrap_or(&[]).iter().skip(1) {
                if let Some(n) = e.as_symbol() {
                    if let Some(d) = self.sentences.iter().find(|d| d.name == n) {
                        let ctx = self.sig_ctx(&d.over).expect("declared signature");
                        return Ok((d.over.clone(), ctx));
                    }
                }
            }
        }
        Err(SyntaxError::parse(pos, "a sequent with inline sentences only needs `:over`"))
    }

    /// `(gamma S ...) (delta S ...)` where each `S` is a declared sentence name
    /// or an inline sentence.
    fn read_sides(&self, ctx: &Ctx<I>, body: &[SExpr], pos: Pos) -> SResult<Sequent<I>> {
        let mut gamma = None;
        let mut delta = None;
        for clause in body {
            let v = clause.expect_list("(gamma ...) or (delta ...)")?;
            let slot = match clause.head() {
                Some("gamma") => &mut gamma,
                Some("delta") => &mut delta,
                _ => return Err(SyntaxError::parse(clause.pos(), "expected (gamma ...) or (delta ...)")),
            };
            if slot.is_some() {
                return Err(SyntaxError::parse(clause.pos(), "side given twice"));
            }
            let mut set = SentenceSet::new();
            for e in &v[1..] {
                set.insert(self.read_sentence_ref(ctx, e)?);
            }
            *slot = Some(set);
        }
        let seq = Sequent { gamma: gamma.unwrap_or_default(), sig: ctx.sig.clone(), delta: delta.unwrap_or_default() };
        seq.check(&self.ins).at(pos)?;
        Ok(seq)
    }

    fn read_sentence_ref(&self, ctx: &Ctx<I>, e: &SExpr) -> SResult<Sentence<I>> {
        match e.as_symbol() {
            Some(n) => {
                let Some(d) = self.sentences.iter().find(|d| d.name == n) else {
                    return Err(SyntaxError::resolve(e.pos(), format!("unknown sentence `{n}`")));
                };
                let home = self.sig_ctx(&d.over).expect("declared signature");
                if home.sig != ctx.sig {
                    return Err(SyntaxError::resolve(e.pos(), format!("sentence `{n}` lives over another signature")));
                }
                Ok(d.value.clone())
            }
            None => read_sentence(&self.ins, ctx, e),
        }
    }

    /// Reads the keyword arguments of a proof node.
    fn read_proof(&self, ctx: &Ctx<I>, items: &[SExpr], pos: Pos, top: bool) -> SResult<ProofTree<I>> {
        let mut allowed = vec![":rule", ":choice", ":theta", ":principal", ":atoms", ":root", ":premises"];
        if top {
            allowed.push(":over");
        }
        let kw = keywords(items, &allowed)?;
        let rule_e = required(&kw, ":rule", pos)?;
        let root_e = required(&kw, ":root", pos)?;
        let root = match root_e {
            SExpr::Symbol(n, p) => {
                let Some(d) = self.sequents.iter().find(|d| d.name == *n) else {
                    return Err(SyntaxError::resolve(*p, format!("unknown sequent `{n}`")));
                };
                if d.value.sig != ctx.sig {
                    return Err(SyntaxError::resolve(*p, format!("sequent `{n}` lives over another signature")));
                }
                d.value.clone()
            }
            SExpr::List(v, p) if root_e.head() == Some("sequent") => self.read_sides(ctx, &v[1..], *p)?,
            _ => return Err(SyntaxError::parse(root_e.pos(), "expected a sequent name or (sequent ...)")),
        };
        let principal = kw.get(":principal").map(|e| read_sentence(&self.ins, ctx, e)).transpose()?;
        let rule = match rule_e.expect_symbol("a rule name")? {
            "atom" => Rule::Atom,
            "neg-l" => Rule::NegL,
            "neg-r" => Rule::NegR,
            "or-l" => Rule::OrL,
            "or-r" => Rule::OrR(required(&kw, ":choice", pos)?.expect_usize("a disjunct index")?),
            "exists-l" => Rule::ExistsL,
            "exists-r" => {
                let theta_e = required(&kw, ":theta", pos)?;
                let Some(Sentence::Exists(x, _)) = &principal else {
                    return Err(SyntaxError::resolve(pos, "exists-r needs an existential :principal"));
                };
                Rule::ExistsR(self.ins.read_substitution(ctx, x, theta_e)?)
            }
            other => return Err(SyntaxError::parse(rule_e.pos(), format!("unknown rule `{other}`"))),
        };
        let conclusion = match (&rule, &principal) {
            (Rule::Atom, _) => match kw.get(":atoms") {
                Some(e) => {
                    let s = self.read_sides(ctx, e.expect_list("(atoms (gamma ...) (delta ...))")?, e.pos())?;
                    Part { left: s.gamma, right: s.delta }
                }
                None => default_atoms(&root),
            },
            (_, None) => return Err(SyntaxError::parse(pos, format!("`{}` needs :principal", rule.keyword()))),
            (Rule::NegL | Rule::OrL | Rule::ExistsL, Some(p)) => Part::left(p.clone()),
            (_, Some(p)) => Part::right(p.clone()),
        };
        let premise_ctx = match (&rule, &principal) {
            (Rule::ExistsL, Some(Sentence::Exists(x, _))) => {
                let b = self.ins.extend(&ctx.sig, x).at(pos)?;
                Ctx { sig: b.extended, scope: ctx.scope.with(self.ins.bindings(x)) }
            }
            _ => ctx.clone(),
        };
        let mut premises = Vec::new();
        if let Some(e) = kw.get(":premises") {
            for p in e.expect_list("a list of premises")? {
                let v = p.expect_list("a premise (proof ...)")?;
                if p.head() != Some("proof") {
                    return Err(SyntaxError::parse(p.pos(), "expected (proof ...)"));
                }
                premises.push(self.read_proof(&premise_ctx, &v[1..], p.pos(), false)?);
            }
        }
        let parts = premise_parts(&self.ins, &rule, principal.as_ref(), premises.len());
        Ok(ProofTree { rule, premises, root, applied: Applied { premises: parts, conclusion } })
    }

    /// Canonical text of the whole theory. Fails only on proofs whose
    /// `ExistsR` choice is not a substitution.
    pub fn print(&self) -> Result<String, String> {
        let mut out = String::new();
        let mut header = vec![SExpr::sym("institution"), SExpr::sym(I::KEYWORD)];
        if self.ins.var_budget() != 1 {
            header.push(SExpr::sym(":var-budget"));
            header.push(SExpr::sym(self.ins.var_budget().to_string()));
        }
        out.push_str(&SExpr::list(header).to_string());
        out.push('\n');
        for e in self.print_decls()? {
            out.push_str(&e.pretty(100));
            out.push('\n');
        }
        Ok(out)
    }

    pub fn print_decls(&self) -> Result<Vec<SExpr>, String> {
        let ins = &self.ins;
        let mut out = Vec::new();
        let decl = |kind: &str, name: &str, key: &str, over: &SigExpr<I>, mut body: Vec<SExpr>| {
            let mut v = vec![SExpr::sym(kind), SExpr::sym(name), SExpr::sym(key), self.print_sig_expr(over)];
            v.append(&mut body);
            SExpr::list(v)
        };
        for (name, sig) in &self.signatures {
            let mut v = vec![SExpr::sym("signature"), SExpr::sym(name)];
            v.extend(ins.print_signature(sig));
            out.push(SExpr::list(v));
        }
        for m in &self.morphisms {
            let (Some(dom), Some(cod)) = (self.sig_ctx(&m.from), self.sig_ctx(&m.to)) else { continue };
            let mut v = vec![
                SExpr::sym("morphism"),
                SExpr::sym(&m.name),
                SExpr::sym(":from"),
                self.print_sig_expr(&m.from),
                SExpr::sym(":to"),
                self.print_sig_expr(&m.to),
            ];
            v.extend(ins.print_morphism(&m.value, &dom.scope, &cod.scope));
            out.push(SExpr::list(v));
        }
        for d in &self.models {
            let scope = self.sig_ctx(&d.over).map(|c| c.scope).unwrap_or_default();
            out.push(decl("model", &d.name, ":of", &d.over, ins.print_model(&d.value, &scope)));
        }
        for d in &self.sentences {
            let ctx = self.sig_ctx(&d.over).ok_or_else(|| format!("sentence {}: unknown signature", d.name))?;
            out.push(decl("sentence", &d.name, ":over", &d.over, vec![print_sentence(ins, &ctx, &d.value)]));
        }
        for d in &self.sequents {
            let scope = self.sig_ctx(&d.over).map(|c| c.scope).unwrap_or_default();
            let ctx = Ctx { sig: d.value.sig.clone(), scope };
            out.push(decl("sequent", &d.name, ":over", &d.over, print_sides(ins, &ctx, &d.value.gamma, &d.value.delta)));
        }
        for d in &self.proofs {
            let scope = self.sig_ctx(&d.over).map(|c| c.scope).unwrap_or_default();
            let body = print_proof_node(ins, &scope, &d.value).map_err(|m| format!("proof {}: {m}", d.name))?;
            out.push(decl("proof", &d.name, ":over", &d.over, body));
        }
        Ok(out)
    }
}

fn default_atoms<I: Institution>(root: &Sequent<I>) -> Part<I> {
    Part {
        left: root.gamma.iter().filter(|s| s.is_atomic()).cloned().collect(),
        right: root.delta.iter().filter(|s| s.is_atomic()).cloned().collect(),
    }
}

/// Premise parts determined by the rule and its principal sentence. Shapes
/// that do not fit the rule give empty parts, which the checker rejects.
fn premise_parts<I: Institution>(ins: &I, rule: &Rule<I>, principal: Option<&Sentence<I>>, n: usize) -> Vec<Part<I>> {
    let empty = || Part::new([], []);
    (0..n)
        .map(|i| match (rule, principal) {
            (Rule::NegL, Some(Sentence::Not(p))) => Part::right((**p).clone()),
            (Rule::NegR, Some(Sentence::Not(p))) => Part::left((**p).clone()),
            (Rule::OrL, Some(Sentence::Or(v))) => v.get(i).map(|p| Part::left(p.clone())).unwrap_or_else(empty),
            (Rule::OrR(k), Some(Sentence::Or(v))) => v.get(*k).map(|p| Part::right(p.clone())).unwrap_or_else(empty),
            (Rule::ExistsL, Some(Sentence::Exists(_, body))) => Part::left((**body).clone()),
            (Rule::ExistsR(theta), Some(Sentence::Exists(_, body))) => {
                sentence::translate(ins, theta, body).map(Part::right).unwrap_or_else(|_| empty())
            }
            _ => empty(),
        })
        .collect()
}

pub fn read_sentence<I: Syntax>(ins: &I, ctx: &Ctx<I>, e: &SExpr) -> SResult<Sentence<I>> {
    let v = e.expect_list("a sentence")?;
    let pos = e.pos();
    let s = match e.head() {
        Some("atom") => Sentence::Atom(ins.read_atom(ctx, &v[1..], pos)?),
        Some("not") => {
            let [_, inner] = v else {
                return Err(SyntaxError::parse(pos, "(not φ) takes one sentence"));
            };
            Sentence::not(read_sentence(ins, ctx, inner)?)
        }
        Some("or") => Sentence::Or(v[1..].iter().map(|x| read_sentence(ins, ctx, x)).collect::<SResult<_>>()?),
        Some("exists") => {
            let [_, block, body] = v else {
                return Err(SyntaxError::parse(pos, "(exists BLOCK φ) takes a block and a sentence"));
            };
            let x = ins.read_block(&ctx.sig, block)?;
            let b = ins.extend(&ctx.sig, &x).at(block.pos())?;
            let inner = Ctx { sig: b.extended, scope: ctx.scope.with(ins.bindings(&x)) };
            Sentence::exists(x, read_sentence(ins, &inner, body)?)
        }
        _ => return Err(SyntaxError::parse(pos, format!("expected atom, not, or or exists, found `{e}`"))),
    };
    sentence::check(ins, &ctx.sig, &s).at(pos)?;
    Ok(s)
}

pub fn print_sentence<I: Syntax>(ins: &I, ctx: &Ctx<I>, s: &Sentence<I>) -> SExpr {
    match s {
        Sentence::Atom(a) => {
            let mut v = vec![SExpr::sym("atom")];
            v.extend(ins.print_atom(&ctx.sig, a, &ctx.scope));
            SExpr::list(v)
        }
        Sentence::Not(p) => SExpr::list(vec![SExpr::sym("not"), print_sentence(ins, ctx, p)]),
        Sentence::Or(ps) => {
            let mut v = vec![SExpr::sym("or")];
            v.extend(ps.iter().map(|p| print_sentence(ins, ctx, p)));
            SExpr::list(v)
        }
        Sentence::Exists(x, p) => {
            let sig = ins.extend(&ctx.sig, x).map(|b| b.extended).unwrap_or_else(|_| ctx.sig.clone());
            let inner = Ctx { sig, scope: ctx.scope.with(ins.bindings(x)) };
            SExpr::list(vec![SExpr::sym("exists"), ins.print_block(x), print_sentence(ins, &inner, p)])
        }
    }
}

fn print_sides<I: Syntax>(ins: &I, ctx: &Ctx<I>, gamma: &SentenceSet<I>, delta: &SentenceSet<I>) -> Vec<SExpr> {
    let side = |head: &str, s: &SentenceSet<I>| {
        let mut v = vec![SExpr::sym(head)];
        v.extend(s.iter().map(|p| print_sentence(ins, ctx, p)));
        SExpr::list(v)
    };
    vec![side("gamma", gamma), side("delta", delta)]
}

/// Keyword arguments of a proof node, without the leading `proof`.
fn print_proof_node<I: Syntax>(ins: &I, scope: &Scope, t: &ProofTree<I>) -> Result<Vec<SExpr>, String> {
    let ctx = Ctx { sig: t.root.sig.clone(), scope: scope.clone() };
    let mut v = vec![SExpr::sym(":rule"), SExpr::sym(t.rule.keyword())];
    let principal = t.applied.conclusion.left.iter().chain(&t.applied.conclusion.right).next();
    if let Rule::OrR(n) = t.rule {
        v.push(SExpr::sym(":choice"));
        v.push(SExpr::sym(n.to_string()));
    }
    if let Rule::ExistsR(theta) = &t.rule {
        let Some(Sentence::Exists(x, _)) = principal else {
            return Err("exists-r without an existential principal".into());
        };
        let Some(e) = ins.print_substitution(theta, x, scope) else {
            return Err(format!("{theta} is not a substitution"));
        };
        v.push(SExpr::sym(":theta"));
        v.push(e);
    }
    if t.rule == Rule::Atom {
        if t.applied.conclusion != default_atoms(&t.root) {
            v.push(SExpr::sym(":atoms"));
            v.push(SExpr::list(print_sides(ins, &ctx, &t.applied.conclusion.left, &t.applied.conclusion.right)));
        }
    } else if let Some(p) = principal {
        v.push(SExpr::sym(":principal"));
        v.push(print_sentence(ins, &ctx, p));
    }
    let mut root = vec![SExpr::sym("sequent")];
    root.extend(print_sides(ins, &ctx, &t.root.gamma, &t.root.delta));
    v.push(SExpr::sym(":root"));
    v.push(SExpr::list(root));
    let inner = match (&t.rule, principal) {
        (Rule::ExistsL, Some(Sentence::Exists(x, _))) => scope.with(ins.bindings(x)),
        _ => scope.clone(),
    };
    let mut premises = Vec::new();
    for p in &t.premises {
        let mut node = vec![SExpr::sym("proof")];
        node.extend(print_proof_node(ins, &inner, p)?);
        premises.push(SExpr::list(node));
    }
    v.push(SExpr::sym(":premises"));
    v.push(SExpr::list(premises));
    Ok(v)
}

/// A proof as a standalone declaration over a named signature.
pub fn print_proof<I: Syntax>(ins: &I, name: &str, over: &SigExpr<I>, scope: &Scope, t: &ProofTree<I>) -> Result<String, String> {
    let theory = Theory::new(ins.clone());
    let mut v = vec![SExpr::sym("proof"), SExpr::sym(name), SExpr::sym(":over"), theory.print_sig_expr(over)];
    v.extend(print_proof_node(ins, scope, t)?);
    Ok(SExpr::list(v).pretty(100))
}

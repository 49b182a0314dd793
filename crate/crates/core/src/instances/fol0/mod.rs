//! Many-sorted first-order logic restricted to atomic base sentences, with
//! blocks of typed constants as variables.

mod congruence;
mod model;
mod morphism;
mod signature;
mod term;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

pub use congruence::{entails, term_model, Egraph, TermModel, TermModelOutcome};
pub use model::Fol0Model;
pub use morphism::Fol0Mor;
pub use signature::{Fol0Block, Fol0Inclusion, Fol0Sig, FuncDecl, Name, Sym};
pub use term::{terms_by_sort, Fol0Atom, Term};

use crate::error::{Error, Result};
use crate::institution::{DexBundle, Institution};
use crate::util::Odometer;

/// The institution, parameterized by enumeration budgets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fol0 {
    /// Number of variable names (`v0`, `v1`, …) used when enumerating blocks.
    pub var_budget: usize,
    /// Upper bound on the number of models one enumeration may produce.
    pub model_cap: usize,
    /// Upper bound on the number of morphisms one enumeration may produce.
    pub morphism_cap: usize,
}

impl Default for Fol0 {
    fn default() -> Self {
        Fol0 { var_budget: 1, model_cap: 2_000_000, morphism_cap: 20_000 }
    }
}

impl Fol0 {
    pub fn with_var_budget(var_budget: usize) -> Self {
        Fol0 { var_budget, ..Self::default() }
    }
}

fn extension_cache() -> &'static Mutex<HashMap<(Fol0Sig, Fol0Block), Fol0Sig>> {
    static CACHE: OnceLock<Mutex<HashMap<(Fol0Sig, Fol0Block), Fol0Sig>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Σ^Dex[X]`: the signature with one fresh constant per variable of `X`.
pub fn extended_signature(sig: &Fol0Sig, x: &Fol0Block) -> Result<Fol0Sig> {
    if x.home != sig.fingerprint() {
        return Err(Error::NotABlock(format!("{x} belongs to another signature than {sig}")));
    }
    if let Some(s) = x.vars.values().find(|s| !sig.has_sort(s)) {
        return Err(Error::NotABlock(format!("{x} uses unknown sort {s}")));
    }
    let key = (sig.clone(), x.clone());
    if let Some(found) = extension_cache().lock().expect("cache lock").get(&key) {
        return Ok(found.clone());
    }
    let mut funcs = sig.funcs().clone();
    for (n, s) in &x.vars {
        funcs.insert(x.symbol(n), FuncDecl { args: Vec::new(), result: s.clone() });
    }
    let ext = Fol0Sig::new(sig.sorts().clone(), funcs, sig.preds().clone(), sig.has_equality())?;
    extension_cache().lock().expect("cache lock").insert(key, ext.clone());
    Ok(ext)
}

fn check_home(chi: &Fol0Mor, x: &Fol0Block) -> Result<()> {
    if x.home != chi.dom().fingerprint() {
        return Err(Error::NotABlock(format!("{x} is not a block of {}", chi.dom())));
    }
    Ok(())
}

impl Institution for Fol0 {
    type Sig = Fol0Sig;
    type Mor = Fol0Mor;
    type Atom = Fol0Atom;
    type Model = Fol0Model;
    type Block = Fol0Block;
    type BlockMor = Fol0Inclusion;

    fn name(&self) -> &'static str {
        "fol0"
    }

    fn mor_dom(&self, m: &Fol0Mor) -> Fol0Sig {
        m.dom().clone()
    }

    fn mor_cod(&self, m: &Fol0Mor) -> Fol0Sig {
        m.cod().clone()
    }

    fn identity(&self, sig: &Fol0Sig) -> Fol0Mor {
        Fol0Mor::identity(sig)
    }

    fn compose(&self, g: &Fol0Mor, f: &Fol0Mor) -> Result<Fol0Mor> {
        f.then(g)
    }

    fn check_atom(&self, sig: &Fol0Sig, atom: &Fol0Atom) -> Result<()> {
        atom.check(sig)
    }

    fn translate_atom(&self, m: &Fol0Mor, atom: &Fol0Atom) -> Result<Fol0Atom> {
        m.apply_atom(atom)
    }

    /// Predicate atoms and (with equality) equations over ground terms of
    /// height at most `budget`.
    fn atoms(&self, sig: &Fol0Sig, budget: usize) -> Vec<Fol0Atom> {
        let terms = terms_by_sort(sig, &[], budget, 64);
        let mut out = Vec::new();
        for (p, args) in sig.preds() {
            let pools: Vec<&Vec<Term>> = args.iter().map(|s| &terms[s]).collect();
            for idx in Odometer::new(pools.iter().map(|p| p.len()).collect()) {
                out.push(Fol0Atom::Pred(p.clone(), idx.iter().zip(&pools).map(|(i, p)| p[*i].clone()).collect()));
            }
        }
        if sig.has_equality() {
            for ts in terms.values() {
                for a in ts {
                    for b in ts {
                        out.push(Fol0Atom::Eq(a.clone(), b.clone()));
                    }
                }
            }
        }
        out
    }

    fn model_signature(&self, model: &Fol0Model) -> Fol0Sig {
        model.signature().clone()
    }

    fn reduct(&self, m: &Fol0Mor, model: &Fol0Model) -> Result<Fol0Model> {
        model.reduct(m)
    }

    fn satisfies_atom(&self, model: &Fol0Model, atom: &Fol0Atom) -> Result<bool> {
        model.satisfies(atom)
    }

    fn models(&self, sig: &Fol0Sig, bound: usize) -> Result<Vec<Fol0Model>> {
        Fol0Model::enumerate(sig, bound, self.model_cap)
    }

    fn for_each_model(&self, sig: &Fol0Sig, bound: usize, f: &mut dyn FnMut(&Fol0Model) -> Result<bool>) -> Result<()> {
        Fol0Model::visit(sig, bound, self.model_cap, f)
    }

    fn blocks(&self, sig: &Fol0Sig) -> Vec<Fol0Block> {
        let sorts: Vec<&Name> = sig.sorts().iter().collect();
        let mut out: Vec<Fol0Block> = Odometer::new(vec![sorts.len() + 1; self.var_budget])
            .map(|choice| {
                Fol0Block::new(
                    sig,
                    choice
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| **c > 0)
                        .map(|(i, c)| (Name::from(format!("v{i}")), sorts[c - 1].clone())),
                )
            })
            .collect();
        out.sort();
        out
    }

    fn block_morphisms(&self, sig: &Fol0Sig) -> Vec<Fol0Inclusion> {
        let blocks = self.blocks(sig);
        let mut out = Vec::new();
        for a in &blocks {
            for b in &blocks {
                if a.is_subset(b) {
                    out.push(Fol0Inclusion { dom: a.clone(), cod: b.clone() });
                }
            }
        }
        out.sort();
        out
    }

    fn block_mor_dom(&self, i: &Fol0Inclusion) -> Fol0Block {
        i.dom.clone()
    }

    fn block_mor_cod(&self, i: &Fol0Inclusion) -> Fol0Block {
        i.cod.clone()
    }

    fn block_identity(&self, x: &Fol0Block) -> Fol0Inclusion {
        Fol0Inclusion { dom: x.clone(), cod: x.clone() }
    }

    fn block_compose(&self, j: &Fol0Inclusion, i: &Fol0Inclusion) -> Result<Fol0Inclusion> {
        if i.cod != j.dom {
            return Err(Error::Precondition(format!("{j} and {i} do not compose")));
        }
        Ok(Fol0Inclusion { dom: i.dom.clone(), cod: j.cod.clone() })
    }

    /// Any finite set of typed names over the signature's sorts is a block.
    fn is_block(&self, sig: &Fol0Sig, x: &Fol0Block) -> bool {
        x.home == sig.fingerprint() && x.vars.values().all(|s| sig.has_sort(s))
    }

    fn block_size(&self, x: &Fol0Block) -> usize {
        x.vars.len()
    }

    fn extend(&self, sig: &Fol0Sig, x: &Fol0Block) -> Result<DexBundle<Fol0Sig, Fol0Mor>> {
        let extended = extended_signature(sig, x)?;
        let inclusion = Fol0Mor::inclusion(sig, &extended)?;
        Ok(DexBundle { extended, inclusion })
    }

    fn extend_along(&self, sig: &Fol0Sig, i: &Fol0Inclusion) -> Result<Fol0Mor> {
        if !i.dom.is_subset(&i.cod) {
            return Err(Error::Precondition(format!("{i} is not an inclusion")));
        }
        Fol0Mor::inclusion(&extended_signature(sig, &i.dom)?, &extended_signature(sig, &i.cod)?)
    }

    fn translate_block(&self, chi: &Fol0Mor, x: &Fol0Block) -> Result<Fol0Block> {
        check_home(chi, x)?;
        Ok(Fol0Block {
            home: chi.cod().fingerprint(),
            vars: x.vars.iter().map(|(n, s)| Ok((n.clone(), chi.sort(s)?))).collect::<Result<_>>()?,
        })
    }

    fn translate_block_mor(&self, chi: &Fol0Mor, i: &Fol0Inclusion) -> Result<Fol0Inclusion> {
        Fol0Inclusion::new(self.translate_block(chi, &i.dom)?, self.translate_block(chi, &i.cod)?)
    }

    fn translate_ext(&self, chi: &Fol0Mor, x: &Fol0Block) -> Result<Fol0Mor> {
        let x2 = self.translate_block(chi, x)?;
        let dom = extended_signature(chi.dom(), x)?;
        let cod = extended_signature(chi.cod(), &x2)?;
        let mut funcs = BTreeMap::new();
        for (f, t) in chi.func_map() {
            funcs.insert(f.clone(), t.clone());
        }
        for n in x.vars.keys() {
            funcs.insert(x.symbol(n), Term::constant(x2.symbol(n)));
        }
        Ok(Fol0Mor::new_unchecked(dom, cod, chi.sort_map().clone(), funcs, chi.pred_map().clone()))
    }

    fn expansions(&self, model: &Fol0Model, x: &Fol0Block) -> Result<Vec<Fol0Model>> {
        let ext = extended_signature(model.signature(), x)?;
        Ok(model.expansions(x, &ext))
    }

    fn pushout_mediator(&self, chi: &Fol0Mor, x: &Fol0Block, f: &Fol0Mor, g: &Fol0Mor) -> Result<Fol0Mor> {
        let bundle = self.extend(chi.dom(), x)?;
        if f.dom() != &bundle.extended || g.dom() != chi.cod() || f.cod() != g.cod() {
            return Err(Error::Precondition("cocone legs have the wrong signatures".into()));
        }
        if bundle.inclusion.then(f)? != chi.then(g)? {
            return Err(Error::Precondition("cocone does not commute".into()));
        }
        let x2 = self.translate_block(chi, x)?;
        let dom = extended_signature(chi.cod(), &x2)?;
        let mut funcs = g.func_map().clone();
        for n in x.vars.keys() {
            funcs.insert(x2.symbol(n), f.func_map()[&x.symbol(n)].clone());
        }
        Ok(Fol0Mor::new_unchecked(dom, f.cod().clone(), g.sort_map().clone(), funcs, g.pred_map().clone()))
    }

    /// Morphisms whose function images have height at most `budget`.
    fn morphisms_between(&self, src: &Fol0Sig, tgt: &Fol0Sig, budget: usize) -> Vec<Fol0Mor> {
        if src.has_equality() && !tgt.has_equality() {
            return Vec::new();
        }
        let ssorts: Vec<&Name> = src.sorts().iter().collect();
        let tsorts: Vec<&Name> = tgt.sorts().iter().collect();
        let mut out = Vec::new();
        for smap in Odometer::new(vec![tsorts.len(); ssorts.len()]) {
            let sorts: BTreeMap<Name, Name> =
                ssorts.iter().zip(&smap).map(|(s, i)| ((*s).clone(), tsorts[*i].clone())).collect();
            let mut choices: Vec<(Sym, Vec<Term>)> = Vec::new();
            for (f, d) in src.funcs() {
                let holes: Vec<Name> = d.args.iter().map(|s| sorts[s].clone()).collect();
                let pool = terms_by_sort(tgt, &holes, budget, 64).remove(&sorts[&d.result]).unwrap_or_default();
                choices.push((f.clone(), pool));
            }
            let mut pchoices: Vec<(Name, Vec<Name>)> = Vec::new();
            for (p, args) in src.preds() {
                let want: Vec<Name> = args.iter().map(|s| sorts[s].clone()).collect();
                let pool = tgt.preds().iter().filter(|(_, a)| **a == want).map(|(q, _)| q.clone()).collect();
                pchoices.push((p.clone(), pool));
            }
            let radices: Vec<usize> =
                choices.iter().map(|c| c.1.len()).chain(pchoices.iter().map(|c| c.1.len())).collect();
            for digits in Odometer::new(radices) {
                if out.len() >= self.morphism_cap {
                    break;
                }
                let funcs = choices.iter().zip(&digits).map(|((f, pool), i)| (f.clone(), pool[*i].clone())).collect();
                let preds = pchoices
                    .iter()
                    .zip(&digits[choices.len()..])
                    .map(|((p, pool), i)| (p.clone(), pool[*i].clone()))
                    .collect();
                out.push(Fol0Mor::new_unchecked(src.clone(), tgt.clone(), sorts.clone(), funcs, preds));
            }
        }
        out.sort();
        out
    }

    /// Substitutions sending each variable to a ground term of height at most `budget`.
    fn substitution_candidates(&self, sig: &Fol0Sig, x: &Fol0Block, budget: usize) -> Result<Vec<Fol0Mor>> {
        let ext = extended_signature(sig, x)?;
        let terms = terms_by_sort(sig, &[], budget, 64);
        let vars: Vec<(&Name, &Name)> = x.vars.iter().collect();
        let pools: Vec<&Vec<Term>> = vars.iter().map(|(_, s)| &terms[*s]).collect();
        let id = Fol0Mor::identity(sig);
        let mut out = Vec::new();
        for idx in Odometer::new(pools.iter().map(|p| p.len()).collect()) {
            let mut funcs = id.func_map().clone();
            for ((n, _), (i, pool)) in vars.iter().zip(idx.iter().zip(&pools)) {
                funcs.insert(x.symbol(n), pool[*i].clone());
            }
            out.push(Fol0Mor::new_unchecked(
                ext.clone(),
                sig.clone(),
                id.sort_map().clone(),
                funcs,
                id.pred_map().clone(),
            ));
            if out.len() >= self.morphism_cap {
                break;
            }
        }
        Ok(out)
    }
}

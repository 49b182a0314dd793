use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::morphism::Fol0Mor;
use super::signature::{Fol0Block, Fol0Sig, Name, Sym};
use super::term::{Fol0Atom, Term};
use crate::error::{Error, Result};
use crate::util::Odometer;

#[derive(PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
struct ModelData {
    sig: Fol0Sig,
    carriers: BTreeMap<Name, usize>,
    funcs: BTreeMap<Sym, Vec<usize>>,
    preds: BTreeMap<Name, Vec<bool>>,
}

/// A finite model. Carriers are `0..n`; tables are indexed by argument tuples
/// in row-major order (first argument most significant).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Fol0Model(Arc<ModelData>);

fn table_len(carriers: &BTreeMap<Name, usize>, args: &[Name]) -> usize {
    args.iter().map(|s| carriers[s]).product()
}

fn tuple_index(carriers: &BTreeMap<Name, usize>, args: &[Name], tuple: &[usize]) -> usize {
    args.iter().zip(tuple).fold(0, |acc, (s, v)| acc * carriers[s] + v)
}

impl Fol0Model {
    pub fn new(
        sig: Fol0Sig,
        carriers: BTreeMap<Name, usize>,
        funcs: BTreeMap<Sym, Vec<usize>>,
        preds: BTreeMap<Name, Vec<bool>>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::IllFormedModel(m));
        if carriers.len() != sig.sorts().len() || sig.sorts().iter().any(|s| !carriers.contains_key(s)) {
            return bad("carriers do not match the sorts".into());
        }
        if funcs.len() != sig.funcs().len() {
            return bad("function tables do not match the signature".into());
        }
        for (f, d) in sig.funcs() {
            let Some(t) = funcs.get(f) else {
                return bad(format!("no table for {f}"));
            };
            if t.len() != table_len(&carriers, &d.args) {
                return bad(format!("table for {f} has {} entries", t.len()));
            }
            if t.iter().any(|v| *v >= carriers[&d.result]) {
                return bad(format!("table for {f} leaves the carrier of {}", d.result));
            }
        }
        if preds.len() != sig.preds().len() {
            return bad("predicate tables do not match the signature".into());
        }
        for (p, args) in sig.preds() {
            match preds.get(p) {
                Some(t) if t.len() == table_len(&carriers, args) => {}
                _ => return bad(format!("bad table for {p}")),
            }
        }
        Ok(Fol0Model(Arc::new(ModelData { sig, carriers, funcs, preds })))
    }

    pub fn signature(&self) -> &Fol0Sig {
        &self.0.sig
    }

    pub fn carrier(&self, s: &str) -> usize {
        self.0.carriers.get(s).copied().unwrap_or(0)
    }

    pub fn carriers(&self) -> &BTreeMap<Name, usize> {
        &self.0.carriers
    }

    pub fn func_table(&self, f: &Sym) -> Option<&Vec<usize>> {
        self.0.funcs.get(f)
    }

    pub fn pred_table(&self, p: &str) -> Option<&Vec<bool>> {
        self.0.preds.get(p)
    }

    pub fn max_carrier(&self) -> usize {
        self.0.carriers.values().copied().max().unwrap_or(0)
    }

    /// Value of `t` with holes bound to `env`.
    pub fn eval_with(&self, t: &Term, env: &[usize]) -> Result<usize> {
        match t {
            Term::Hole(i) => env.get(*i).copied().ok_or_else(|| Error::IllFormedSentence(format!("unbound hole #{i}"))),
            Term::App(f, args) => {
                let d = self.0.sig.func(f)?;
                let vals = args.iter().map(|a| self.eval_with(a, env)).collect::<Result<Vec<_>>>()?;
                Ok(self.0.funcs[f][tuple_index(&self.0.carriers, &d.args, &vals)])
            }
        }
    }

    pub fn eval(&self, t: &Term) -> Result<usize> {
        self.eval_with(t, &[])
    }

    pub fn holds(&self, p: &str, tuple: &[usize]) -> Result<bool> {
        let args = self.0.sig.pred(p)?;
        Ok(self.0.preds[p][tuple_index(&self.0.carriers, args, tuple)])
    }

    pub fn satisfies(&self, a: &Fol0Atom) -> Result<bool> {
        match a {
            Fol0Atom::Pred(p, args) => {
                let vals = args.iter().map(|t| self.eval(t)).collect::<Result<Vec<_>>>()?;
                self.holds(p, &vals)
            }
            Fol0Atom::Eq(l, r) => Ok(self.eval(l)? == self.eval(r)?),
        }
    }

    /// `Mod(χ)(self)` for `χ: Σ → Σ'` and `self` a `Σ'`-model.
    pub fn reduct(&self, chi: &Fol0Mor) -> Result<Fol0Model> {
        if chi.cod() != self.signature() {
            return Err(Error::SignatureMismatch { expected: chi.cod().to_string(), found: self.signature().to_string() });
        }
        let sig = chi.dom();
        let carriers: BTreeMap<Name, usize> =
            sig.sorts().iter().map(|s| (s.clone(), self.carrier(&chi.sort_map()[s]))).collect();
        let mut funcs = BTreeMap::new();
        for (f, d) in sig.funcs() {
            let img = &chi.func_map()[f];
            let radices: Vec<usize> = d.args.iter().map(|s| carriers[s]).collect();
            let table = Odometer::new(radices).map(|env| self.eval_with(img, &env)).collect::<Result<Vec<_>>>()?;
            funcs.insert(f.clone(), table);
        }
        let preds =
            sig.preds().keys().map(|p| (p.clone(), self.0.preds[&chi.pred_map()[p]].clone())).collect();
        Ok(Fol0Model(Arc::new(ModelData { sig: sig.clone(), carriers, funcs, preds })))
    }

    /// The expansions of `self` to `ext = Σ^Dex[X]`, one per assignment of the
    /// block's variables, first variable most significant.
    pub fn expansions(&self, x: &Fol0Block, ext: &Fol0Sig) -> Vec<Fol0Model> {
        let vars: Vec<(&Name, &Name)> = x.vars.iter().collect();
        let radices: Vec<usize> = vars.iter().map(|(_, s)| self.carrier(s)).collect();
        Odometer::new(radices)
            .map(|vals| {
                let mut funcs = self.0.funcs.clone();
                for ((n, _), v) in vars.iter().zip(vals) {
                    funcs.insert(x.symbol(n), vec![v]);
                }
                Fol0Model(Arc::new(ModelData {
                    sig: ext.clone(),
                    carriers: self.0.carriers.clone(),
                    funcs,
                    preds: self.0.preds.clone(),
                }))
            })
            .collect()
    }

    /// Models of `sig` with every carrier at most `bound`, empty carriers
    /// included. Carrier size vectors are ordered by total size, then
    /// lexicographically; within one size vector, function tables vary
    /// slowest (lexicographically, first entry most significant) and
    /// predicate tables fastest (as bit masks, first tuple least significant).
    pub fn enumerate(sig: &Fol0Sig, bound: usize, cap: usize) -> Result<Vec<Fol0Model>> {
        let mut out = Vec::new();
        Self::visit(sig, bound, cap, &mut |m| {
            out.push(m.clone());
            Ok(false)
        })?;
        Ok(out)
    }

    /// Streams the models of [`Fol0Model::enumerate`] in the same order until
    /// `f` returns `true`. Fails before visiting anything when there are more
    /// than `cap` models in total.
    pub fn visit(sig: &Fol0Sig, bound: usize, cap: usize, f: &mut dyn FnMut(&Fol0Model) -> Result<bool>) -> Result<()> {
        let sorts: Vec<Name> = sig.sorts().iter().cloned().collect();
        let mut sizes: Vec<Vec<usize>> = Odometer::new(vec![bound + 1; sorts.len()]).collect();
        sizes.sort_by_key(|v| (v.iter().sum::<usize>(), v.clone()));
        let mut blocks = Vec::new();
        let mut total = 0usize;
        for size in sizes {
            let carriers: BTreeMap<Name, usize> = sorts.iter().cloned().zip(size).collect();
            let mut radices = Vec::new();
            let mut slots = Vec::new();
            for (f, d) in sig.funcs() {
                let n = table_len(&carriers, &d.args);
                let r = carriers[&d.result];
                slots.push((f.clone(), n));
                radices.extend(std::iter::repeat_n(r, n));
            }
            let mut pred_slots = Vec::new();
            for (p, args) in sig.preds() {
                let n = table_len(&carriers, args);
                pred_slots.push((p.clone(), n));
                // one digit per bit, most significant bit first
                radices.extend(std::iter::repeat_n(2, n));
            }
            let count = Odometer::count_all(&radices);
            if count == 0 {
                continue;
            }
            total = total.saturating_add(count);
            if total > cap {
                return Err(Error::Budget(format!("more than {cap} models with carriers up to {bound}")));
            }
            blocks.push((carriers, radices, slots, pred_slots));
        }
        for (carriers, radices, slots, pred_slots) in blocks {
            for digits in Odometer::new(radices) {
                let mut pos = 0;
                let mut funcs = BTreeMap::new();
                for (f, n) in &slots {
                    funcs.insert(f.clone(), digits[pos..pos + n].to_vec());
                    pos += n;
                }
                let mut preds = BTreeMap::new();
                for (p, n) in &pred_slots {
                    let bits: Vec<bool> = digits[pos..pos + n].iter().rev().map(|b| *b == 1).collect();
                    preds.insert(p.clone(), bits);
                    pos += n;
                }
                let m = Fol0Model(Arc::new(ModelData { sig: sig.clone(), carriers: carriers.clone(), funcs, preds }));
                if f(&m)? {
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    /// Every homomorphism `self → other`, as one map per sort.
    pub fn homomorphisms(&self, other: &Fol0Model, cap: usize) -> Result<Vec<BTreeMap<Name, Vec<usize>>>> {
        if self.signature() != other.signature() {
            return Err(Error::SignatureMismatch { expected: self.signature().to_string(), found: other.signature().to_string() });
        }
        let sig = self.signature();
        let sorts: Vec<Name> = sig.sorts().iter().cloned().collect();
        let mut radices = Vec::new();
        for s in &sorts {
            radices.extend(std::iter::repeat_n(other.carrier(s), self.carrier(s)));
        }
        if Odometer::count_all(&radices) > cap {
            return Err(Error::Budget(format!("more than {cap} candidate maps")));
        }
        let mut out = Vec::new();
        'maps: for digits in Odometer::new(radices) {
            let mut h = BTreeMap::new();
            let mut pos = 0;
            for s in &sorts {
                let n = self.carrier(s);
                h.insert(s.clone(), digits[pos..pos + n].to_vec());
                pos += n;
            }
            for (f, d) in sig.funcs() {
                for tuple in Odometer::new(d.args.iter().map(|s| self.carrier(s)).collect()) {
                    let lhs = h[&d.result][self.0.funcs[f][tuple_index(&self.0.carriers, &d.args, &tuple)]];
                    let image: Vec<usize> = tuple.iter().zip(&d.args).map(|(v, s)| h[s][*v]).collect();
                    let rhs = other.0.funcs[f][tuple_index(&other.0.carriers, &d.args, &image)];
                    if lhs != rhs {
                        continue 'maps;
                    }
                }
            }
            for (p, args) in sig.preds() {
                for tuple in Odometer::new(args.iter().map(|s| self.carrier(s)).collect()) {
                    if self.holds(p, &tuple)? {
                        let image: Vec<usize> = tuple.iter().zip(args).map(|(v, s)| h[s][*v]).collect();
                        if !other.holds(p, &image)? {
                            continue 'maps;
                        }
                    }
                }
            }
            out.push(h);
        }
        Ok(out)
    }
}

impl fmt::Display for Fol0Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = &self.0;
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if first {
                first = false;
                Ok(())
            } else {
                write!(f, " ")
            }
        };
        for (s, n) in &d.carriers {
            sep(f)?;
            write!(f, "(carrier {s}")?;
            for v in 0..*n {
                write!(f, " {v}")?;
            }
            write!(f, ")")?;
        }
        for (g, decl) in d.sig.funcs() {
            sep(f)?;
            write!(f, "(func {g}")?;
            for (i, tuple) in Odometer::new(decl.args.iter().map(|s| d.carriers[s]).collect()).enumerate() {
                let args: Vec<String> = tuple.iter().map(|v| v.to_string()).collect();
                write!(f, " (({}) {})", args.join(" "), d.funcs[g][i])?;
            }
            write!(f, ")")?;
        }
        for (p, args) in d.sig.preds() {
            sep(f)?;
            write!(f, "(pred {p}")?;
            for (i, tuple) in Odometer::new(args.iter().map(|s| d.carriers[s]).collect()).enumerate() {
                if d.preds[p][i] {
                    let vals: Vec<String> = tuple.iter().map(|v| v.to_string()).collect();
                    write!(f, " ({})", vals.join(" "))?;
                }
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

//! Congruence closure over ground terms: the exact decision procedure for
//! atomic entailment, and the construction of finite term models.

use std::collections::{BTreeMap, HashMap};

use super::model::Fol0Model;
use super::signature::{Fol0Sig, Name, Sym};
use super::term::{Fol0Atom, Term};
use crate::error::{Error, Result};
use crate::util::Odometer;

/// Hash-consed ground terms with a union-find kept closed under congruence.
#[derive(Debug, Clone, Default)]
pub struct Egraph {
    nodes: Vec<(Sym, Vec<usize>)>,
    index: HashMap<(Sym, Vec<usize>), usize>,
    parent: Vec<usize>,
}

impl Egraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn add_node(&mut self, f: Sym, args: Vec<usize>) -> usize {
        if let Some(&id) = self.index.get(&(f.clone(), args.clone())) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push((f.clone(), args.clone()));
        self.index.insert((f, args), id);
        self.parent.push(id);
        id
    }

    pub fn add(&mut self, t: &Term) -> Result<usize> {
        match t {
            Term::Hole(i) => Err(Error::IllFormedSentence(format!("hole #{i} in a ground term"))),
            Term::App(f, args) => {
                let ids = args.iter().map(|a| self.add(a)).collect::<Result<Vec<_>>>()?;
                Ok(self.add_node(f.clone(), ids))
            }
        }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Merges two classes, keeping the smaller id as representative.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Restores closure under congruence.
    pub fn close(&mut self) {
        loop {
            let mut seen: HashMap<(Sym, Vec<usize>), usize> = HashMap::new();
            let mut merged = false;
            for id in 0..self.nodes.len() {
                let (f, args) = &self.nodes[id];
                let key = (f.clone(), args.iter().map(|a| self.find(*a)).collect::<Vec<_>>());
                if let Some(&other) = seen.get(&key) {
                    if self.find(other) != self.find(id) {
                        merged = true;
                        self.union(other, id);
                    }
                } else {
                    seen.insert(key, id);
                }
            }
            if !merged {
                return;
            }
        }
    }

    pub fn class_count(&self) -> usize {
        (0..self.nodes.len()).filter(|&i| self.find(i) == i).count()
    }

    pub fn term(&self, id: usize) -> Term {
        let (f, args) = &self.nodes[id];
        Term::App(f.clone(), args.iter().map(|a| self.term(*a)).collect())
    }

    pub fn node(&self, id: usize) -> &(Sym, Vec<usize>) {
        &self.nodes[id]
    }

    pub fn lookup(&self, f: &Sym, args: &[usize]) -> Option<usize> {
        self.index.get(&(f.clone(), args.to_vec())).copied()
    }
}

fn load(gamma: &[Fol0Atom], extra: &[&Fol0Atom]) -> Result<Egraph> {
    let mut eg = Egraph::new();
    for a in gamma.iter().chain(extra.iter().copied()) {
        for t in a.terms() {
            eg.add(t)?;
        }
    }
    for a in gamma {
        if let Fol0Atom::Eq(l, r) = a {
            let (x, y) = (eg.add(l)?, eg.add(r)?);
            eg.union(x, y);
        }
    }
    eg.close();
    Ok(eg)
}

fn derivable(eg: &mut Egraph, gamma: &[Fol0Atom], goal: &Fol0Atom) -> Result<bool> {
    match goal {
        Fol0Atom::Eq(l, r) => {
            let (x, y) = (eg.add(l)?, eg.add(r)?);
            Ok(eg.find(x) == eg.find(y))
        }
        Fol0Atom::Pred(p, args) => {
            let goal_ids = args.iter().map(|t| eg.add(t).map(|i| eg.find(i))).collect::<Result<Vec<_>>>()?;
            for a in gamma {
                if let Fol0Atom::Pred(q, qargs) = a {
                    if q == p {
                        let ids = qargs.iter().map(|t| eg.add(t).map(|i| eg.find(i))).collect::<Result<Vec<_>>>()?;
                        if ids == goal_ids {
                            return Ok(true);
                        }
                    }
                }
            }
            Ok(false)
        }
    }
}

/// Whether every model of `gamma` satisfies some member of `delta`. Exact:
/// atomic theories have initial (term) models, so the disjunction holds
/// everywhere iff one disjunct is derivable by congruence closure.
pub fn entails(sig: &Fol0Sig, gamma: &[Fol0Atom], delta: &[Fol0Atom]) -> Result<bool> {
    for a in gamma.iter().chain(delta) {
        a.check(sig)?;
    }
    let mut eg = load(gamma, &delta.iter().collect::<Vec<_>>())?;
    for d in delta {
        if derivable(&mut eg, gamma, d)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A finite term model with the ground term chosen to represent each element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermModel {
    pub model: Fol0Model,
    pub representatives: BTreeMap<Name, Vec<Term>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermModelOutcome {
    Finite(TermModel),
    /// The quotient did not stabilize within the round bound.
    Unbounded,
}

/// Builds the initial model of an atomic theory when its quotient of the
/// ground terms is finite, growing the term set round by round until every
/// function application falls into an existing class.
pub fn term_model(sig: &Fol0Sig, gamma: &[Fol0Atom], rounds: usize) -> Result<TermModelOutcome> {
    for a in gamma {
        a.check(sig)?;
    }
    let inhabited = sig.inhabited_sorts();
    if let Some(s) = sig.sorts().iter().find(|s| !inhabited.contains(*s)) {
        return Err(Error::EmptySort(s.to_string()));
    }
    let mut eg = load(gamma, &[])?;
    for (f, d) in sig.funcs() {
        if d.args.is_empty() {
            eg.add_node(f.clone(), Vec::new());
        }
    }
    eg.close();
    let sort_of = |eg: &Egraph, id: usize| sig.func(&eg.node(id).0).map(|d| d.result.clone());
    for _ in 0..=rounds {
        let classes = eg.class_count();
        let mut by_sort: BTreeMap<Name, Vec<usize>> = sig.sorts().iter().map(|s| (s.clone(), Vec::new())).collect();
        for id in 0..eg.len() {
            if eg.find(id) == id {
                by_sort.get_mut(&sort_of(&eg, id)?).expect("declared sort").push(id);
            }
        }
        for (f, d) in sig.funcs() {
            if d.args.is_empty() {
                continue;
            }
            let pools: Vec<&Vec<usize>> = d.args.iter().map(|s| &by_sort[s]).collect();
            for idx in Odometer::new(pools.iter().map(|p| p.len()).collect()) {
                let args = idx.iter().zip(&pools).map(|(i, p)| p[*i]).collect();
                eg.add_node(f.clone(), args);
            }
        }
        eg.close();
        if eg.class_count() == classes {
            return build(sig, gamma, &mut eg, &by_sort).map(TermModelOutcome::Finite);
        }
    }
    Ok(TermModelOutcome::Unbounded)
}

fn build(sig: &Fol0Sig, gamma: &[Fol0Atom], eg: &mut Egraph, by_sort: &BTreeMap<Name, Vec<usize>>) -> Result<TermModel> {
    let element = |eg: &Egraph, s: &Name, id: usize| -> usize {
        let r = eg.find(id);
        by_sort[s].iter().position(|c| *c == r).expect("class of the sort")
    };
    let carriers: BTreeMap<Name, usize> = by_sort.iter().map(|(s, v)| (s.clone(), v.len())).collect();
    let mut funcs = BTreeMap::new();
    for (f, d) in sig.funcs() {
        let pools: Vec<&Vec<usize>> = d.args.iter().map(|s| &by_sort[s]).collect();
        let mut table = Vec::new();
        for idx in Odometer::new(pools.iter().map(|p| p.len()).collect()) {
            let args: Vec<usize> = idx.iter().zip(&pools).map(|(i, p)| p[*i]).collect();
            let id = eg.lookup(f, &args).ok_or_else(|| Error::Precondition(format!("{f} application missing")))?;
            table.push(element(eg, &d.result, id));
        }
        funcs.insert(f.clone(), table);
    }
    let mut preds = BTreeMap::new();
    for (p, args) in sig.preds() {
        let mut table = vec![false; args.iter().map(|s| carriers[s]).product()];
        for a in gamma {
            if let Fol0Atom::Pred(q, qargs) = a {
                if q == p {
                    let mut pos = 0;
                    for (t, s) in qargs.iter().zip(args) {
                        let id = eg.add(t)?;
                        pos = pos * carriers[s] + element(eg, s, id);
                    }
                    table[pos] = true;
                }
            }
        }
        preds.insert(p.clone(), table);
    }
    let representatives = by_sort.iter().map(|(s, ids)| (s.clone(), ids.iter().map(|i| eg.term(*i)).collect())).collect();
    Ok(TermModel { model: Fol0Model::new(sig.clone(), carriers, funcs, preds)?, representatives })
}

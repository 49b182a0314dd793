//! Commutative rings: a signature is a polynomial ring over a finite base
//! ring, models are rings under the signature, sentences are equations, and
//! blocks of variables extend a signature to a larger polynomial ring.

mod poly;
mod ring;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub use poly::{eval_expr, poly_normalize, Expr, Monomial, Poly};
pub use ring::{FiniteRing, CATALOG_COMPLETE_UP_TO};

use crate::error::{Error, Result};
use crate::fingerprint::{fingerprint, tag_hex};
use crate::institution::{DexBundle, Institution};
use crate::instances::fol0::{Name, Sym};
use crate::util::Odometer;

#[derive(PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
struct SigData {
    fp: u64,
    ring: Arc<FiniteRing>,
    vars: BTreeSet<Sym>,
}

/// The polynomial ring `R[V]` over a finite base ring.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CRingSig(Arc<SigData>);

impl CRingSig {
    pub fn new(ring: Arc<FiniteRing>, vars: BTreeSet<Sym>) -> Self {
        let names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let fp = fingerprint(&format!("{} [{}]", ring.canonical(), names.join(" ")));
        CRingSig(Arc::new(SigData { fp, ring, vars }))
    }

    /// `R[names]` with named (untagged) generators.
    pub fn named(ring: &FiniteRing, names: &[&str]) -> Self {
        Self::new(Arc::new(ring.clone()), names.iter().map(|n| Sym::named(n)).collect())
    }

    pub fn fingerprint(&self) -> u64 {
        self.0.fp
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.0.ring
    }

    pub fn vars(&self) -> &BTreeSet<Sym> {
        &self.0.vars
    }
}

impl fmt::Display for CRingSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.0.vars.iter().map(|v| v.to_string()).collect();
        write!(f, "{}[{}]", self.0.ring, names.join(","))
    }
}

#[derive(PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
struct MorData {
    dom: CRingSig,
    cod: CRingSig,
    base: Vec<usize>,
    images: BTreeMap<Sym, Poly>,
}

/// A ring map `R[V] → R'[V']` sending coefficients through a base ring
/// homomorphism `R → R'` and each variable to a polynomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CRingMor(Arc<MorData>);

impl CRingMor {
    pub fn new(dom: CRingSig, cod: CRingSig, base: Vec<usize>, images: BTreeMap<Sym, Poly>) -> Result<Self> {
        let (r, r2) = (dom.ring(), cod.ring());
        if base.len() != r.size() || base.iter().any(|v| *v >= r2.size()) {
            return Err(Error::IllFormedMorphism("base map has the wrong shape".into()));
        }
        if base[0] != 0 || base[r.one()] != r2.one() {
            return Err(Error::IllFormedMorphism("base map does not preserve 0 and 1".into()));
        }
        for a in 0..r.size() {
            for b in 0..r.size() {
                if base[r.add(a, b)] != r2.add(base[a], base[b]) || base[r.mul(a, b)] != r2.mul(base[a], base[b]) {
                    return Err(Error::IllFormedMorphism(format!("base map is not a ring map at ({a}, {b})")));
                }
            }
        }
        if images.keys().collect::<BTreeSet<_>>() != dom.vars().iter().collect() {
            return Err(Error::IllFormedMorphism("variable images do not match the domain".into()));
        }
        for p in images.values() {
            p.check(r2, cod.vars()).map_err(|e| Error::IllFormedMorphism(e.to_string()))?;
        }
        Ok(CRingMor(Arc::new(MorData { dom, cod, base, images })))
    }

    fn new_unchecked(dom: CRingSig, cod: CRingSig, base: Vec<usize>, images: BTreeMap<Sym, Poly>) -> Self {
        CRingMor(Arc::new(MorData { dom, cod, base, images }))
    }

    pub fn dom(&self) -> &CRingSig {
        &self.0.dom
    }

    pub fn cod(&self) -> &CRingSig {
        &self.0.cod
    }

    pub fn base(&self) -> &[usize] {
        &self.0.base
    }

    pub fn images(&self) -> &BTreeMap<Sym, Poly> {
        &self.0.images
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        p.substitute(self.cod().ring(), &self.0.base, &|v| {
            self.0.images.get(v).cloned().ok_or_else(|| Error::UnknownSymbol(v.to_string()))
        })
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &CRingMor) -> Result<CRingMor> {
        if self.cod() != g.dom() {
            return Err(Error::SignatureMismatch { expected: g.dom().to_string(), found: self.cod().to_string() });
        }
        let base = self.0.base.iter().map(|c| g.0.base[*c]).collect();
        let images = self.0.images.iter().map(|(v, p)| Ok((v.clone(), g.apply(p)?))).collect::<Result<_>>()?;
        Ok(Self::new_unchecked(self.dom().clone(), g.cod().clone(), base, images))
    }
}

impl fmt::Display for CRingMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}→{} (base", self.dom(), self.cod())?;
        for v in &self.0.base {
            write!(f, " {v}")?;
        }
        write!(f, ")")?;
        for (v, p) in &self.0.images {
            write!(f, " ({v} {p})")?;
        }
        write!(f, ")")
    }
}

/// An equation between polynomials of the signature.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CRingAtom {
    pub lhs: Poly,
    pub rhs: Poly,
}

impl fmt::Display for CRingAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(= {} {})", self.lhs, self.rhs)
    }
}

#[derive(PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
struct ModelData {
    sig: CRingSig,
    ring: Arc<FiniteRing>,
    base: Vec<usize>,
    assign: BTreeMap<Sym, usize>,
}

/// A ring `A` under `R[V]`: a base homomorphism `R → A` and values for `V`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CRingModel(Arc<ModelData>);

impl CRingModel {
    pub fn new(sig: CRingSig, ring: Arc<FiniteRing>, base: Vec<usize>, assign: BTreeMap<Sym, usize>) -> Result<Self> {
        let homs = sig.ring().homomorphisms(&ring);
        if !homs.contains(&base) {
            return Err(Error::IllFormedModel("base map is not a ring homomorphism".into()));
        }
        if assign.keys().collect::<BTreeSet<_>>() != sig.vars().iter().collect() || assign.values().any(|v| *v >= ring.size()) {
            return Err(Error::IllFormedModel("assignment does not match the variables".into()));
        }
        Ok(CRingModel(Arc::new(ModelData { sig, ring, base, assign })))
    }

    pub fn signature(&self) -> &CRingSig {
        &self.0.sig
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.0.ring
    }

    pub fn base(&self) -> &[usize] {
        &self.0.base
    }

    pub fn assignment(&self) -> &BTreeMap<Sym, usize> {
        &self.0.assign
    }

    pub fn eval(&self, p: &Poly) -> Result<usize> {
        p.eval(&self.0.ring, &self.0.base, &|v| {
            self.0.assign.get(v).copied().ok_or_else(|| Error::UnknownSymbol(v.to_string()))
        })
    }
}

impl fmt::Display for CRingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(ring {}) (base", self.0.ring)?;
        for v in &self.0.base {
            write!(f, " {v}")?;
        }
        write!(f, ")")?;
        for (v, a) in &self.0.assign {
            write!(f, " (value {v} {a})")?;
        }
        Ok(())
    }
}

/// A block of fresh ring variables over the signature with the given fingerprint.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CRingBlock {
    pub home: u64,
    pub vars: BTreeSet<Name>,
}

impl CRingBlock {
    pub fn new(home: &CRingSig, vars: impl IntoIterator<Item = Name>) -> Self {
        CRingBlock { home: home.fingerprint(), vars: vars.into_iter().collect() }
    }

    pub fn symbol(&self, name: &str) -> Sym {
        Sym::Var { name: name.into(), tag: self.home }
    }
}

impl fmt::Display for CRingBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.vars.iter().map(|n| &**n).collect();
        write!(f, "({})@{}", names.join(" "), &tag_hex(self.home)[..8])
    }
}

/// An injection between blocks over the same signature.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CRingInjection {
    pub dom: CRingBlock,
    pub cod: CRingBlock,
    pub map: BTreeMap<Name, Name>,
}

impl CRingInjection {
    pub fn new(dom: CRingBlock, cod: CRingBlock, map: BTreeMap<Name, Name>) -> Result<Self> {
        let image: BTreeSet<&Name> = map.values().collect();
        let ok = dom.home == cod.home
            && map.keys().collect::<BTreeSet<_>>() == dom.vars.iter().collect()
            && image.len() == map.len()
            && image.iter().all(|v| cod.vars.contains(*v));
        if ok {
            Ok(CRingInjection { dom, cod, map })
        } else {
            Err(Error::Precondition(format!("not an injection {dom} → {cod}")))
        }
    }
}

impl fmt::Display for CRingInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.map.iter().map(|(a, b)| format!("{a}↦{b}")).collect();
        write!(f, "{}→{}[{}]", self.dom, self.cod, pairs.join(","))
    }
}

/// The institution, parameterized by enumeration budgets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CRing {
    /// Number of variable names (`v0`, `v1`, …) used when enumerating blocks.
    pub var_budget: usize,
    /// Upper bound on the number of models or morphisms one enumeration may produce.
    pub cap: usize,
}

impl Default for CRing {
    fn default() -> Self {
        CRing { var_budget: 1, cap: 200_000 }
    }
}

fn extension_cache() -> &'static Mutex<HashMap<(CRingSig, CRingBlock), CRingSig>> {
    static CACHE: OnceLock<Mutex<HashMap<(CRingSig, CRingBlock), CRingSig>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `R[V ∪ X]`.
pub fn extended_signature(sig: &CRingSig, x: &CRingBlock) -> Result<CRingSig> {
    if x.home != sig.fingerprint() {
        return Err(Error::NotABlock(format!("{x} belongs to another signature than {sig}")));
    }
    let key = (sig.clone(), x.clone());
    if let Some(found) = extension_cache().lock().expect("cache lock").get(&key) {
        return Ok(found.clone());
    }
    let mut vars = sig.vars().clone();
    vars.extend(x.vars.iter().map(|n| x.symbol(n)));
    let ext = CRingSig::new(sig.ring().clone(), vars);
    extension_cache().lock().expect("cache lock").insert(key, ext.clone());
    Ok(ext)
}

/// Polynomials of the form `c` or `c·m` with `m` a monomial of degree at most `degree`.
pub fn small_polys(ring: &FiniteRing, vars: &BTreeSet<Sym>, degree: u32) -> Vec<Poly> {
    let mut monomials = vec![Monomial::new()];
    for _ in 0..degree {
        let mut next = monomials.clone();
        for m in &monomials {
            for v in vars {
                let mut m2 = m.clone();
                *m2.entry(v.clone()).or_insert(0) += 1;
                next.push(m2);
            }
        }
        next.sort();
        next.dedup();
        monomials = next;
    }
    let mut out = vec![Poly::zero()];
    for m in &monomials {
        for c in 1..ring.size() {
            out.push(Poly::monomial(c, m.clone()));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn identity_images(sig: &CRingSig) -> BTreeMap<Sym, Poly> {
    sig.vars().iter().map(|v| (v.clone(), Poly::var(sig.ring(), v.clone()))).collect()
}

impl Institution for CRing {
    type Sig = CRingSig;
    type Mor = CRingMor;
    type Atom = CRingAtom;
    type Model = CRingModel;
    type Block = CRingBlock;
    type BlockMor = CRingInjection;

    fn name(&self) -> &'static str {
        "cring"
    }

    fn mor_dom(&self, m: &CRingMor) -> CRingSig {
        m.dom().clone()
    }

    fn mor_cod(&self, m: &CRingMor) -> CRingSig {
        m.cod().clone()
    }

    fn identity(&self, sig: &CRingSig) -> CRingMor {
        CRingMor::new_unchecked(sig.clone(), sig.clone(), (0..sig.ring().size()).collect(), identity_images(sig))
    }

    fn compose(&self, g: &CRingMor, f: &CRingMor) -> Result<CRingMor> {
        f.then(g)
    }

    fn check_atom(&self, sig: &CRingSig, atom: &CRingAtom) -> Result<()> {
        atom.lhs.check(sig.ring(), sig.vars())?;
        atom.rhs.check(sig.ring(), sig.vars())
    }

    fn translate_atom(&self, m: &CRingMor, atom: &CRingAtom) -> Result<CRingAtom> {
        Ok(CRingAtom { lhs: m.apply(&atom.lhs)?, rhs: m.apply(&atom.rhs)? })
    }

    /// Equations between polynomials `c·m` with `deg m ≤ budget`.
    fn atoms(&self, sig: &CRingSig, budget: usize) -> Vec<CRingAtom> {
        let pool = small_polys(sig.ring(), sig.vars(), budget as u32);
        let mut out = Vec::new();
        for a in &pool {
            for b in &pool {
                out.push(CRingAtom { lhs: a.clone(), rhs: b.clone() });
            }
        }
        out
    }

    fn model_signature(&self, model: &CRingModel) -> CRingSig {
        model.signature().clone()
    }

    fn reduct(&self, m: &CRingMor, model: &CRingModel) -> Result<CRingModel> {
        if m.cod() != model.signature() {
            return Err(Error::SignatureMismatch { expected: m.cod().to_string(), found: model.signature().to_string() });
        }
        let base = m.base().iter().map(|c| model.base()[*c]).collect();
        let assign = m.images().iter().map(|(v, p)| Ok((v.clone(), model.eval(p)?))).collect::<Result<_>>()?;
        Ok(CRingModel(Arc::new(ModelData { sig: m.dom().clone(), ring: model.ring().clone(), base, assign })))
    }

    fn satisfies_atom(&self, model: &CRingModel, atom: &CRingAtom) -> Result<bool> {
        Ok(model.eval(&atom.lhs)? == model.eval(&atom.rhs)?)
    }

    /// Rings from the catalog of order at most `bound`, every base
    /// homomorphism into them, and every assignment.
    fn models(&self, sig: &CRingSig, bound: usize) -> Result<Vec<CRingModel>> {
        let vars: Vec<&Sym> = sig.vars().iter().collect();
        let mut out = Vec::new();
        for ring in FiniteRing::catalog(bound) {
            for base in sig.ring().homomorphisms(&ring) {
                for vals in Odometer::new(vec![ring.size(); vars.len()]) {
                    if out.len() >= self.cap {
                        return Err(Error::Budget(format!("more than {} models", self.cap)));
                    }
                    let assign = vars.iter().map(|v| (*v).clone()).zip(vals).collect();
                    out.push(CRingModel(Arc::new(ModelData {
                        sig: sig.clone(),
                        ring: ring.clone(),
                        base: base.clone(),
                        assign,
                    })));
                }
            }
        }
        Ok(out)
    }

    fn models_exhaustive(&self, _sig: &CRingSig, bound: usize) -> bool {
        bound <= CATALOG_COMPLETE_UP_TO
    }

    fn blocks(&self, sig: &CRingSig) -> Vec<CRingBlock> {
        let mut out: Vec<CRingBlock> = Odometer::new(vec![2; self.var_budget])
            .map(|bits| {
                CRingBlock::new(
                    sig,
                    bits.iter().enumerate().filter(|(_, b)| **b == 1).map(|(i, _)| Name::from(format!("v{i}"))),
                )
            })
            .collect();
        out.sort();
        out
    }

    fn block_morphisms(&self, sig: &CRingSig) -> Vec<CRingInjection> {
        let blocks = self.blocks(sig);
        let mut out = Vec::new();
        for a in &blocks {
            for b in &blocks {
                let src: Vec<&Name> = a.vars.iter().collect();
                let tgt: Vec<&Name> = b.vars.iter().collect();
                for choice in Odometer::new(vec![tgt.len(); src.len()]) {
                    let distinct: BTreeSet<&usize> = choice.iter().collect();
                    if distinct.len() == choice.len() {
                        let map = src.iter().zip(&choice).map(|(s, i)| ((*s).clone(), tgt[*i].clone())).collect();
                        out.push(CRingInjection { dom: a.clone(), cod: b.clone(), map });
                    }
                }
            }
        }
        out.sort();
        out
    }

    fn block_mor_dom(&self, i: &CRingInjection) -> CRingBlock {
        i.dom.clone()
    }

    fn block_mor_cod(&self, i: &CRingInjection) -> CRingBlock {
        i.cod.clone()
    }

    fn block_identity(&self, x: &CRingBlock) -> CRingInjection {
        CRingInjection { dom: x.clone(), cod: x.clone(), map: x.vars.iter().map(|n| (n.clone(), n.clone())).collect() }
    }

    fn block_compose(&self, j: &CRingInjection, i: &CRingInjection) -> Result<CRingInjection> {
        if i.cod != j.dom {
            return Err(Error::Precondition(format!("{j} and {i} do not compose")));
        }
        let map = i.map.iter().map(|(a, b)| (a.clone(), j.map[b].clone())).collect();
        Ok(CRingInjection { dom: i.dom.clone(), cod: j.cod.clone(), map })
    }

    fn is_block(&self, sig: &CRingSig, x: &CRingBlock) -> bool {
        x.home == sig.fingerprint()
    }

    fn block_size(&self, x: &CRingBlock) -> usize {
        x.vars.len()
    }

    fn extend(&self, sig: &CRingSig, x: &CRingBlock) -> Result<DexBundle<CRingSig, CRingMor>> {
        let extended = extended_signature(sig, x)?;
        let inclusion = CRingMor::new_unchecked(
            sig.clone(),
            extended.clone(),
            (0..sig.ring().size()).collect(),
            identity_images(sig),
        );
        Ok(DexBundle { extended, inclusion })
    }

    fn extend_along(&self, sig: &CRingSig, i: &CRingInjection) -> Result<CRingMor> {
        let dom = extended_signature(sig, &i.dom)?;
        let cod = extended_signature(sig, &i.cod)?;
        let mut images = identity_images(sig);
        for (a, b) in &i.map {
            images.insert(i.dom.symbol(a), Poly::var(sig.ring(), i.cod.symbol(b)));
        }
        Ok(CRingMor::new_unchecked(dom, cod, (0..sig.ring().size()).collect(), images))
    }

    fn translate_block(&self, chi: &CRingMor, x: &CRingBlock) -> Result<CRingBlock> {
        if x.home != chi.dom().fingerprint() {
            return Err(Error::NotABlock(format!("{x} is not a block of {}", chi.dom())));
        }
        Ok(CRingBlock { home: chi.cod().fingerprint(), vars: x.vars.clone() })
    }

    fn translate_block_mor(&self, chi: &CRingMor, i: &CRingInjection) -> Result<CRingInjection> {
        Ok(CRingInjection {
            dom: self.translate_block(chi, &i.dom)?,
            cod: self.translate_block(chi, &i.cod)?,
            map: i.map.clone(),
        })
    }

    fn translate_ext(&self, chi: &CRingMor, x: &CRingBlock) -> Result<CRingMor> {
        let x2 = self.translate_block(chi, x)?;
        let dom = extended_signature(chi.dom(), x)?;
        let cod = extended_signature(chi.cod(), &x2)?;
        let mut images = chi.images().clone();
        for n in &x.vars {
            images.insert(x.symbol(n), Poly::var(cod.ring(), x2.symbol(n)));
        }
        Ok(CRingMor::new_unchecked(dom, cod, chi.base().to_vec(), images))
    }

    fn expansions(&self, model: &CRingModel, x: &CRingBlock) -> Result<Vec<CRingModel>> {
        let ext = extended_signature(model.signature(), x)?;
        let names: Vec<&Name> = x.vars.iter().collect();
        Ok(Odometer::new(vec![model.ring().size(); names.len()])
            .map(|vals| {
                let mut assign = model.assignment().clone();
                for (n, v) in names.iter().zip(vals) {
                    assign.insert(x.symbol(n), v);
                }
                CRingModel(Arc::new(ModelData {
                    sig: ext.clone(),
                    ring: model.ring().clone(),
                    base: model.base().to_vec(),
                    assign,
                }))
            })
            .collect())
    }

    fn pushout_mediator(&self, chi: &CRingMor, x: &CRingBlock, f: &CRingMor, g: &CRingMor) -> Result<CRingMor> {
        let bundle = self.extend(chi.dom(), x)?;
        if f.dom() != &bundle.extended || g.dom() != chi.cod() || f.cod() != g.cod() {
            return Err(Error::Precondition("cocone legs have the wrong signatures".into()));
        }
        if bundle.inclusion.then(f)? != chi.then(g)? {
            return Err(Error::Precondition("cocone does not commute".into()));
        }
        let x2 = self.translate_block(chi, x)?;
        let dom = extended_signature(chi.cod(), &x2)?;
        let mut images = g.images().clone();
        for n in &x.vars {
            images.insert(x2.symbol(n), f.images()[&x.symbol(n)].clone());
        }
        Ok(CRingMor::new_unchecked(dom, f.cod().clone(), g.base().to_vec(), images))
    }

    /// Morphisms sending each variable to some `c·m` with `deg m ≤ budget`.
    fn morphisms_between(&self, src: &CRingSig, tgt: &CRingSig, budget: usize) -> Vec<CRingMor> {
        let pool = small_polys(tgt.ring(), tgt.vars(), budget as u32);
        let vars: Vec<&Sym> = src.vars().iter().collect();
        let mut out = Vec::new();
        for base in src.ring().homomorphisms(tgt.ring()) {
            for idx in Odometer::new(vec![pool.len(); vars.len()]) {
                if out.len() >= self.cap {
                    break;
                }
                let images = vars.iter().zip(&idx).map(|(v, i)| ((*v).clone(), pool[*i].clone())).collect();
                out.push(CRingMor::new_unchecked(src.clone(), tgt.clone(), base.clone(), images));
            }
        }
        out.sort();
        out
    }

    fn substitution_candidates(&self, sig: &CRingSig, x: &CRingBlock, budget: usize) -> Result<Vec<CRingMor>> {
        let bundle = self.extend(sig, x)?;
        let pool = small_polys(sig.ring(), sig.vars(), budget as u32);
        let names: Vec<&Name> = x.vars.iter().collect();
        let mut out = Vec::new();
        for idx in Odometer::new(vec![pool.len(); names.len()]) {
            if out.len() >= self.cap {
                break;
            }
            let mut images = identity_images(sig);
            for (n, i) in names.iter().zip(&idx) {
                images.insert(x.symbol(n), pool[*i].clone());
            }
            out.push(CRingMor::new_unchecked(
                bundle.extended.clone(),
                sig.clone(),
                (0..sig.ring().size()).collect(),
                images,
            ));
        }
        Ok(out)
    }
}

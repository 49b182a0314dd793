//! Morphisms between institutions with variable extensions: data, identity
//! and composition, translation of compound sentences, and a law sweep.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::instances::fol0::{Fol0, Fol0Atom, Fol0Block, Fol0Inclusion, Fol0Model, Fol0Mor, Fol0Sig, Term};
use crate::institution::Institution;
use crate::report::LawReport;
use crate::sentence::{self, Sentence};

/// A morphism `Src → Tgt`: signatures and models go forward, sentences and
/// blocks come back, and `ext` relates the two ways of extending.
pub trait InstitutionMorphism: Clone + Debug {
    type Src: Institution;
    type Tgt: Institution;

    fn source(&self) -> &Self::Src;
    fn target(&self) -> &Self::Tgt;
    fn name(&self) -> String;

    /// `Φ(Σ)`.
    fn map_sig(&self, sig: &<Self::Src as Institution>::Sig) -> Result<<Self::Tgt as Institution>::Sig>;
    /// `Φ(χ)`.
    fn map_mor(&self, chi: &<Self::Src as Institution>::Mor) -> Result<<Self::Tgt as Institution>::Mor>;
    /// `Mod^INM(Σ)`.
    fn map_model(
        &self,
        sig: &<Self::Src as Institution>::Sig,
        model: &<Self::Src as Institution>::Model,
    ) -> Result<<Self::Tgt as Institution>::Model>;
    /// `Sen^INM(Σ)` on atomic sentences over `Φ(Σ)`.
    fn map_atom(
        &self,
        sig: &<Self::Src as Institution>::Sig,
        atom: &<Self::Tgt as Institution>::Atom,
    ) -> Result<<Self::Src as Institution>::Atom>;
    /// `Σ_Dex^INM` on blocks of `Φ(Σ)`.
    fn map_block(
        &self,
        sig: &<Self::Src as Institution>::Sig,
        x: &<Self::Tgt as Institution>::Block,
    ) -> Result<<Self::Src as Institution>::Block>;
    /// `Σ_Dex^INM` on block morphisms of `Φ(Σ)`.
    fn map_block_mor(
        &self,
        sig: &<Self::Src as Institution>::Sig,
        i: &<Self::Tgt as Institution>::BlockMor,
    ) -> Result<<Self::Src as Institution>::BlockMor>;
    /// `Σ^Dex^INM[X]: Φ(Σ)^Dex'[X] → Φ(Σ^Dex[Σ_Dex^INM(X)])`.
    fn ext(
        &self,
        sig: &<Self::Src as Institution>::Sig,
        x: &<Self::Tgt as Institution>::Block,
    ) -> Result<<Self::Tgt as Institution>::Mor>;
}

type SrcSig<M> = <<M as InstitutionMorphism>::Src as Institution>::Sig;
type SrcMor<M> = <<M as InstitutionMorphism>::Src as Institution>::Mor;

/// `Sen^FOL(INM)(Σ)`: `∃X.φ ↦ ∃Σ_Dex(X). Sen^FOL(INM)(Σ^Dex[Σ_Dex X])(Sen'(ext[X])(φ))`.
pub fn translate_along_morphism<M: InstitutionMorphism>(
    m: &M,
    sig: &SrcSig<M>,
    phi: &Sentence<M::Tgt>,
) -> Result<Sentence<M::Src>> {
    Ok(match phi {
        Sentence::Atom(a) => Sentence::Atom(m.map_atom(sig, a)?),
        Sentence::Not(s) => Sentence::not(translate_along_morphism(m, sig, s)?),
        Sentence::Or(v) => Sentence::Or(v.iter().map(|s| translate_along_morphism(m, sig, s)).collect::<Result<_>>()?),
        Sentence::Exists(x, body) => {
            let bx = m.map_block(sig, x)?;
            let ext_sig = m.source().extend(sig, &bx)?.extended;
            let moved = sentence::translate(m.target(), &m.ext(sig, x)?, body)?;
            Sentence::exists(bx, translate_along_morphism(m, &ext_sig, &moved)?)
        }
    })
}

/// The identity morphism on an institution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityMorphism<I: Institution>(pub I);

impl<I: Institution> InstitutionMorphism for IdentityMorphism<I> {
    type Src = I;
    type Tgt = I;

    fn source(&self) -> &I {
        &self.0
    }

    fn target(&self) -> &I {
        &self.0
    }

    fn name(&self) -> String {
        format!("id[{}]", self.0.name())
    }

    fn map_sig(&self, sig: &I::Sig) -> Result<I::Sig> {
        Ok(sig.clone())
    }

    fn map_mor(&self, chi: &I::Mor) -> Result<I::Mor> {
        Ok(chi.clone())
    }

    fn map_model(&self, _sig: &I::Sig, model: &I::Model) -> Result<I::Model> {
        Ok(model.clone())
    }

    fn map_atom(&self, _sig: &I::Sig, atom: &I::Atom) -> Result<I::Atom> {
        Ok(atom.clone())
    }

    fn map_block(&self, _sig: &I::Sig, x: &I::Block) -> Result<I::Block> {
        Ok(x.clone())
    }

    fn map_block_mor(&self, _sig: &I::Sig, i: &I::BlockMor) -> Result<I::BlockMor> {
        Ok(i.clone())
    }

    fn ext(&self, sig: &I::Sig, x: &I::Block) -> Result<I::Mor> {
        Ok(self.0.identity(&self.0.extend(sig, x)?.extended))
    }
}

/// `second ∘ first`.
#[derive(Debug, Clone)]
pub struct Composite<A, B> {
    pub first: A,
    pub second: B,
}

/// Composes `first: I → I'` with `second: I' → I''`.
pub fn compose_morphisms<A, B>(first: A, second: B) -> Result<Composite<A, B>>
where
    A: InstitutionMorphism,
    B: InstitutionMorphism<Src = A::Tgt>,
{
    if first.target() != second.source() {
        return Err(Error::Precondition(format!("{} does not end where {} starts", first.name(), second.name())));
    }
    Ok(Composite { first, second })
}

impl<A, B> InstitutionMorphism for Composite<A, B>
where
    A: InstitutionMorphism,
    B: InstitutionMorphism<Src = A::Tgt>,
{
    type Src = A::Src;
    type Tgt = B::Tgt;

    fn source(&self) -> &A::Src {
        self.first.source()
    }

    fn target(&self) -> &B::Tgt {
        self.second.target()
    }

    fn name(&self) -> String {
        format!("{}∘{}", self.second.name(), self.first.name())
    }

    fn map_sig(&self, sig: &SrcSig<A>) -> Result<<B::Tgt as Institution>::Sig> {
        self.second.map_sig(&self.first.map_sig(sig)?)
    }

    fn map_mor(&self, chi: &SrcMor<A>) -> Result<<B::Tgt as Institution>::Mor> {
        self.second.map_mor(&self.first.map_mor(chi)?)
    }

    fn map_model(
        &self,
        sig: &SrcSig<A>,
        model: &<A::Src as Institution>::Model,
    ) -> Result<<B::Tgt as Institution>::Model> {
        let mid = self.first.map_sig(sig)?;
        self.second.map_model(&mid, &self.first.map_model(sig, model)?)
    }

    fn map_atom(&self, sig: &SrcSig<A>, atom: &<B::Tgt as Institution>::Atom) -> Result<<A::Src as Institution>::Atom> {
        let mid = self.first.map_sig(sig)?;
        self.first.map_atom(sig, &self.second.map_atom(&mid, atom)?)
    }

    fn map_block(&self, sig: &SrcSig<A>, x: &<B::Tgt as Institution>::Block) -> Result<<A::Src as Institution>::Block> {
        let mid = self.first.map_sig(sig)?;
        self.first.map_block(sig, &self.second.map_block(&mid, x)?)
    }

    fn map_block_mor(
        &self,
        sig: &SrcSig<A>,
        i: &<B::Tgt as Institution>::BlockMor,
    ) -> Result<<A::Src as Institution>::BlockMor> {
        let mid = self.first.map_sig(sig)?;
        self.first.map_block_mor(sig, &self.second.map_block_mor(&mid, i)?)
    }

    /// `Φ''(ext_Σ[b'(X'')]) ∘ ext'_{Φ(Σ)}[X'']`.
    fn ext(&self, sig: &SrcSig<A>, x: &<B::Tgt as Institution>::Block) -> Result<<B::Tgt as Institution>::Mor> {
        let mid = self.first.map_sig(sig)?;
        let x_mid = self.second.map_block(&mid, x)?;
        let outer = self.second.map_mor(&self.first.ext(sig, &x_mid)?)?;
        self.target().compose(&outer, &self.second.ext(&mid, x)?)
    }
}

/// From full first-order signatures to their equational part: predicates are
/// dropped from signatures and forgotten by models, equations embed as
/// themselves, and blocks are carried across unchanged apart from the
/// signature they hang off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForgetPredicates {
    pub fol: Fol0,
}

pub fn forget_predicates_morphism(fol: Fol0) -> ForgetPredicates {
    ForgetPredicates { fol }
}

fn strip(sig: &Fol0Sig) -> Result<Fol0Sig> {
    Fol0Sig::new(sig.sorts().clone(), sig.funcs().clone(), BTreeMap::new(), sig.has_equality())
}

fn rehome(x: &Fol0Block, home: &Fol0Sig) -> Fol0Block {
    Fol0Block { home: home.fingerprint(), vars: x.vars.clone() }
}

impl InstitutionMorphism for ForgetPredicates {
    type Src = Fol0;
    type Tgt = Fol0;

    fn source(&self) -> &Fol0 {
        &self.fol
    }

    fn target(&self) -> &Fol0 {
        &self.fol
    }

    fn name(&self) -> String {
        "forget-predicates".into()
    }

    fn map_sig(&self, sig: &Fol0Sig) -> Result<Fol0Sig> {
        strip(sig)
    }

    fn map_mor(&self, chi: &Fol0Mor) -> Result<Fol0Mor> {
        Fol0Mor::new(strip(chi.dom())?, strip(chi.cod())?, chi.sort_map().clone(), chi.func_map().clone(), BTreeMap::new())
    }

    fn map_model(&self, sig: &Fol0Sig, model: &Fol0Model) -> Result<Fol0Model> {
        if model.signature() != sig {
            return Err(Error::SignatureMismatch { expected: sig.to_string(), found: model.signature().to_string() });
        }
        let funcs = sig.funcs().keys().map(|f| (f.clone(), model.func_table(f).expect("table").clone())).collect();
        Fol0Model::new(strip(sig)?, model.carriers().clone(), funcs, BTreeMap::new())
    }

    fn map_atom(&self, sig: &Fol0Sig, atom: &Fol0Atom) -> Result<Fol0Atom> {
        atom.check(&strip(sig)?)?;
        Ok(atom.clone())
    }

    fn map_block(&self, sig: &Fol0Sig, x: &Fol0Block) -> Result<Fol0Block> {
        if x.home != strip(sig)?.fingerprint() {
            return Err(Error::NotABlock(format!("{x} is not a block of the equational part of {sig}")));
        }
        Ok(rehome(x, sig))
    }

    fn map_block_mor(&self, sig: &Fol0Sig, i: &Fol0Inclusion) -> Result<Fol0Inclusion> {
        Fol0Inclusion::new(self.map_block(sig, &i.dom)?, self.map_block(sig, &i.cod)?)
    }

    fn ext(&self, sig: &Fol0Sig, x: &Fol0Block) -> Result<Fol0Mor> {
        let image = strip(sig)?;
        let bx = self.map_block(sig, x)?;
        let dom = self.fol.extend(&image, x)?.extended;
        let cod = strip(&self.fol.extend(sig, &bx)?.extended)?;
        let id = Fol0Mor::identity(&image);
        let mut funcs = id.func_map().clone();
        for n in x.vars.keys() {
            funcs.insert(x.symbol(n), Term::constant(bx.symbol(n)));
        }
        Fol0Mor::new(dom, cod, id.sort_map().clone(), funcs, BTreeMap::new())
    }
}

/// A morphism whose block component renames every variable (appending `'`)
/// while its other components are left alone. Used to exercise the checker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorruptBlocks(pub ForgetPredicates);

impl InstitutionMorphism for CorruptBlocks {
    type Src = Fol0;
    type Tgt = Fol0;

    fn source(&self) -> &Fol0 {
        self.0.source()
    }

    fn target(&self) -> &Fol0 {
        self.0.target()
    }

    fn name(&self) -> String {
        "corrupt-blocks".into()
    }

    fn map_sig(&self, sig: &Fol0Sig) -> Result<Fol0Sig> {
        self.0.map_sig(sig)
    }

    fn map_mor(&self, chi: &Fol0Mor) -> Result<Fol0Mor> {
        self.0.map_mor(chi)
    }

    fn map_model(&self, sig: &Fol0Sig, model: &Fol0Model) -> Result<Fol0Model> {
        self.0.map_model(sig, model)
    }

    fn map_atom(&self, sig: &Fol0Sig, atom: &Fol0Atom) -> Result<Fol0Atom> {
        self.0.map_atom(sig, atom)
    }

    fn map_block(&self, sig: &Fol0Sig, x: &Fol0Block) -> Result<Fol0Block> {
        let b = self.0.map_block(sig, x)?;
        Ok(Fol0Block { home: b.home, vars: b.vars.into_iter().map(|(n, s)| (format!("{n}'").into(), s)).collect() })
    }

    fn map_block_mor(&self, sig: &Fol0Sig, i: &Fol0Inclusion) -> Result<Fol0Inclusion> {
        Fol0Inclusion::new(self.map_block(sig, &i.dom)?, self.map_block(sig, &i.cod)?)
    }

    fn ext(&self, sig: &Fol0Sig, x: &Fol0Block) -> Result<Fol0Mor> {
        self.0.ext(sig, x)
    }
}

/// Data the morphism law sweep ranges over.
#[derive(Debug, Clone)]
pub struct MorphismSamples<M: InstitutionMorphism> {
    /// Source-side signature morphisms; their endpoints are swept too.
    pub morphisms: Vec<SrcMor<M>>,
    pub signatures: Vec<SrcSig<M>>,
    pub model_bound: usize,
    pub atom_budget: usize,
    pub mediator_budget: usize,
    /// Compound target-side sentences over `Φ(Σ)` for the satisfaction sweep.
    pub sentences: Vec<(SrcSig<M>, Sentence<M::Tgt>)>,
}

fn check_eq<T: PartialEq + std::fmt::Display>(report: &mut LawReport, law: &str, case: String, lhs: Result<T>, rhs: Result<T>) {
    match (lhs, rhs) {
        (Ok(a), Ok(b)) => {
            let ok = a == b;
            report.check(law, case, ok, || format!("{a} != {b}"));
        }
        (Err(e), _) | (_, Err(e)) => report.fail(law, case, e.to_string()),
    }
}

/// Sweeps functoriality of `Φ`, naturality of the model, sentence and block
/// components, the satisfaction condition (atomic and compound), MDex-1/2/3,
/// the universal-morphism condition for `ext` (relative to the fragment) and
/// the unique expansion lift across the morphism.
pub fn check_morphism_laws<M: InstitutionMorphism>(m: &M, samples: &MorphismSamples<M>) -> LawReport {
    let (src, tgt) = (m.source(), m.target());
    let mut report = LawReport::new();
    let mut sigs = samples.signatures.clone();
    for chi in &samples.morphisms {
        sigs.push(src.mor_dom(chi));
        sigs.push(src.mor_cod(chi));
    }
    sigs.sort();
    sigs.dedup();
    let mut mors = samples.morphisms.clone();
    mors.extend(sigs.iter().map(|s| src.identity(s)));
    mors.sort();
    mors.dedup();

    for s in &sigs {
        let case = s.to_string();
        let Ok(ps) = m.map_sig(s) else {
            report.fail("morphism.sig-map", case, "Φ undefined");
            continue;
        };
        check_eq(&mut report, "morphism.sig-identity", case.clone(), m.map_mor(&src.identity(s)), Ok(tgt.identity(&ps)));
        let models = src.models(s, samples.model_bound).unwrap_or_default();
        let atoms = tgt.atoms(&ps, samples.atom_budget);
        // satisfaction condition on atoms
        let mut sat_ok = true;
        for a in &models {
            let Ok(ma) = m.map_model(s, a) else {
                report.fail("morphism.mod-typing", format!("{case} {a}"), "model component failed");
                continue;
            };
            if tgt.model_signature(&ma) != ps {
                report.fail("morphism.mod-typing", format!("{case} {a}"), format!("lands in {}", tgt.model_signature(&ma)));
            }
            for g in &atoms {
                let lhs = m.map_atom(s, g).and_then(|t| src.satisfies_atom(a, &t));
                let rhs = tgt.satisfies_atom(&ma, g);
                if lhs.as_ref().ok() != rhs.as_ref().ok() || lhs.is_err() {
                    sat_ok = false;
                    report.fail("morphism.satisfaction", case.clone(), format!("model={a} sentence={g}"));
                }
            }
        }
        if sat_ok {
            report.pass("morphism.satisfaction", format!("{case} models={} sentences={}", models.len(), atoms.len()));
        }
        for x in tgt.blocks(&ps) {
            let case = format!("{s} {x}");
            let bx = match m.map_block(s, &x) {
                Ok(b) => b,
                Err(e) => {
                    report.fail("morphism.block-map", case, e.to_string());
                    continue;
                }
            };
            report.check("morphism.block-map", case.clone(), src.is_block(s, &bx), || format!("{bx} is not a block"));
            check_eq(
                &mut report,
                "morphism.block-identity",
                case.clone(),
                m.map_block_mor(s, &tgt.block_identity(&x)),
                Ok(src.block_identity(&bx)),
            );
            // MDex-1: Φ(Σ^Dex(bX)) = ext[X] ∘ Φ(Σ)^Dex'(X)
            check_eq(
                &mut report,
                "morphism.mdex1",
                case.clone(),
                src.extend(s, &bx).and_then(|b| m.map_mor(&b.inclusion)),
                m.ext(s, &x).and_then(|e| tgt.extend(&ps, &x).and_then(|b| tgt.compose(&e, &b.inclusion))),
            );
            check_universal(m, &mut report, s, &ps, &x, &bx, samples.mediator_budget);
            check_lift(m, &mut report, s, &x, &bx, &models);
        }
        let bms = tgt.block_morphisms(&ps);
        for i in &bms {
            let (x, y) = (tgt.block_mor_dom(i), tgt.block_mor_cod(i));
            let case = format!("{s} {i}");
            // MDex-2: Φ(Σ^Dex[b(ι)]) ∘ ext[X] = ext[Y] ∘ Φ(Σ)^Dex'[ι]
            check_eq(
                &mut report,
                "morphism.mdex2",
                case.clone(),
                m.map_block_mor(s, i)
                    .and_then(|bi| src.extend_along(s, &bi))
                    .and_then(|e| m.map_mor(&e))
                    .and_then(|l| m.ext(s, &x).and_then(|e| tgt.compose(&l, &e))),
                m.ext(s, &y).and_then(|e| tgt.extend_along(&ps, i).and_then(|a| tgt.compose(&e, &a))),
            );
            for j in &bms {
                if tgt.block_mor_dom(j) != y {
                    continue;
                }
                check_eq(
                    &mut report,
                    "morphism.block-composition",
                    format!("{s} {j}∘{i}"),
                    tgt.block_compose(j, i).and_then(|ji| m.map_block_mor(s, &ji)),
                    m.map_block_mor(s, j).and_then(|a| m.map_block_mor(s, i).and_then(|b| src.block_compose(&a, &b))),
                );
            }
        }
    }

    for chi in &mors {
        let (s, s2) = (src.mor_dom(chi), src.mor_cod(chi));
        let cname = chi.to_string();
        let (Ok(ps), Ok(ps2), Ok(pchi)) = (m.map_sig(&s), m.map_sig(&s2), m.map_mor(chi)) else {
            report.fail("morphism.sig-map", cname, "Φ undefined");
            continue;
        };
        let typed = tgt.mor_dom(&pchi) == ps && tgt.mor_cod(&pchi) == ps2;
        report.check("morphism.sig-typing", cname.clone(), typed, || format!("{pchi}"));
        // naturality of the model component
        for a2 in src.models(&s2, samples.model_bound).unwrap_or_default().iter().take(64) {
            check_eq(
                &mut report,
                "morphism.mod-naturality",
                format!("{cname} {a2}"),
                src.reduct(chi, a2).and_then(|r| m.map_model(&s, &r)),
                m.map_model(&s2, a2).and_then(|ma| tgt.reduct(&pchi, &ma)),
            );
        }
        // naturality of the sentence component
        for g in tgt.atoms(&ps, samples.atom_budget) {
            check_eq(
                &mut report,
                "morphism.sen-naturality",
                format!("{cname} {g}"),
                tgt.translate_atom(&pchi, &g).and_then(|t| m.map_atom(&s2, &t)),
                m.map_atom(&s, &g).and_then(|t| src.translate_atom(chi, &t)),
            );
        }
        for x in tgt.blocks(&ps) {
            let case = format!("{cname} {x}");
            // naturality of the block component
            let x2 = tgt.translate_block(&pchi, &x);
            check_eq(
                &mut report,
                "morphism.block-naturality",
                case.clone(),
                x2.clone().and_then(|x2| m.map_block(&s2, &x2)),
                m.map_block(&s, &x).and_then(|bx| src.translate_block(chi, &bx)),
            );
            // MDex-3: Φ(χ^Dex[bX]) ∘ ext_Σ[X] = ext_Σ'[Φ(χ)_Dex'(X)] ∘ Φ(χ)^Dex'[X]
            check_eq(
                &mut report,
                "morphism.mdex3",
                case,
                m.map_block(&s, &x)
                    .and_then(|bx| src.translate_ext(chi, &bx))
                    .and_then(|e| m.map_mor(&e))
                    .and_then(|l| m.ext(&s, &x).and_then(|e| tgt.compose(&l, &e))),
                x2.and_then(|x2| m.ext(&s2, &x2))
                    .and_then(|e| tgt.translate_ext(&pchi, &x).and_then(|a| tgt.compose(&e, &a))),
            );
        }
        for i in tgt.block_morphisms(&ps) {
            check_eq(
                &mut report,
                "morphism.block-naturality",
                format!("{cname} {i}"),
                tgt.translate_block_mor(&pchi, &i).and_then(|i2| m.map_block_mor(&s2, &i2)),
                m.map_block_mor(&s, &i).and_then(|bi| src.translate_block_mor(chi, &bi)),
            );
        }
    }

    for chi in &mors {
        for chi2 in &mors {
            if src.mor_cod(chi) != src.mor_dom(chi2) {
                continue;
            }
            check_eq(
                &mut report,
                "morphism.sig-composition",
                format!("{chi2}∘{chi}"),
                src.compose(chi2, chi).and_then(|c| m.map_mor(&c)),
                m.map_mor(chi2).and_then(|b| m.map_mor(chi).and_then(|a| tgt.compose(&b, &a))),
            );
        }
    }

    // satisfaction condition on compound sentences
    for (s, phi) in &samples.sentences {
        let case = format!("{s} {phi}");
        let translated = match translate_along_morphism(m, s, phi) {
            Ok(t) => t,
            Err(e) => {
                report.fail("morphism.compound-satisfaction", case, e.to_string());
                continue;
            }
        };
        let mut ok = true;
        let mut witness = String::new();
        for a in src.models(s, samples.model_bound).unwrap_or_default() {
            let lhs = sentence::satisfies(src, &a, &translated);
            let rhs = m.map_model(s, &a).and_then(|ma| sentence::satisfies(tgt, &ma, phi));
            if lhs.as_ref().ok() != rhs.as_ref().ok() || lhs.is_err() {
                ok = false;
                witness = format!("model={a} source={lhs:?} target={rhs:?}");
                break;
            }
        }
        report.check("morphism.compound-satisfaction", case, ok, || witness);
    }
    report
}

/// `⟨ext[X], Σ^Dex(bX)⟩` is universal from `Φ(Σ)^Dex'[X]` to `Σ/Φ`: each
/// `u: Σ^Dex[bX] → Σ''` in the fragment is determined by `(u ∘ Σ^Dex(bX), Φ(u) ∘ ext[X])`,
/// and each compatible pair `(χ, k)` assembled from fragment morphisms has such a `u`.
fn check_universal<M: InstitutionMorphism>(
    m: &M,
    report: &mut LawReport,
    s: &SrcSig<M>,
    ps: &<M::Tgt as Institution>::Sig,
    x: &<M::Tgt as Institution>::Block,
    bx: &<M::Src as Institution>::Block,
    budget: usize,
) {
    let (src, tgt) = (m.source(), m.target());
    let case = format!("{s} {x}");
    let (Ok(bundle), Ok(ext), Ok(pbundle)) = (src.extend(s, bx), m.ext(s, x), tgt.extend(ps, x)) else {
        report.fail("morphism.universal", case, "extension failed");
        return;
    };
    let mut ok = true;
    let mut witness = String::new();
    let mut pairs = 0usize;
    for target in [s.clone(), bundle.extended.clone()] {
        let Ok(pt) = m.map_sig(&target) else { continue };
        let mut by_pair: HashMap<(SrcMor<M>, <M::Tgt as Institution>::Mor), usize> = HashMap::new();
        for u in src.morphisms_between(&bundle.extended, &target, budget) {
            let chi = src.compose(&u, &bundle.inclusion);
            let k = m.map_mor(&u).and_then(|pu| tgt.compose(&pu, &ext));
            if let (Ok(chi), Ok(k)) = (chi, k) {
                *by_pair.entry((chi, k)).or_insert(0) += 1;
            }
        }
        if let Some(((chi, k), n)) = by_pair.iter().find(|(_, n)| **n > 1) {
            ok = false;
            witness = format!("{n} mediators for ({chi}, {k})");
        }
        for chi in src.morphisms_between(s, &target, budget) {
            let Ok(pchi) = m.map_mor(&chi) else { continue };
            for k in tgt.morphisms_between(&pbundle.extended, &pt, budget) {
                if tgt.compose(&k, &pbundle.inclusion).ok().as_ref() != Some(&pchi) {
                    continue;
                }
                pairs += 1;
                if !by_pair.contains_key(&(chi.clone(), k.clone())) {
                    ok = false;
                    witness = format!("no mediator for ({chi}, {k})");
                }
                if pairs > 2_000 {
                    break;
                }
            }
        }
    }
    report.check("morphism.universal", format!("{case} pairs={pairs}"), ok, || witness);
}

/// Every expansion of `Mod^INM(A)` along `Φ(Σ)^Dex'(X)` comes from exactly
/// one expansion of `A` along `Σ^Dex(bX)`.
fn check_lift<M: InstitutionMorphism>(
    m: &M,
    report: &mut LawReport,
    s: &SrcSig<M>,
    x: &<M::Tgt as Institution>::Block,
    bx: &<M::Src as Institution>::Block,
    models: &[<M::Src as Institution>::Model],
) {
    let (src, tgt) = (m.source(), m.target());
    let Ok(ext) = m.ext(s, x) else {
        report.fail("morphism.unique-lift", format!("{s} {x}"), "ext undefined");
        return;
    };
    let Ok(ext_sig) = src.extend(s, bx).map(|b| b.extended) else { return };
    for a in models.iter().take(32) {
        let case = format!("{s} {x} {a}");
        let (Ok(ma), Ok(exps)) = (m.map_model(s, a), src.expansions(a, bx)) else {
            report.fail("morphism.unique-lift", case, "model component failed");
            continue;
        };
        let images: Vec<_> = exps
            .iter()
            .map(|e| m.map_model(&ext_sig, e).and_then(|me| tgt.reduct(&ext, &me)))
            .collect::<Result<Vec<_>>>()
            .unwrap_or_default();
        let Ok(targets) = tgt.expansions(&ma, x) else {
            report.fail("morphism.unique-lift", case, "target expansions failed");
            continue;
        };
        let mut ok = images.len() == exps.len();
        let mut witness = String::new();
        for t in &targets {
            let n = images.iter().filter(|i| *i == t).count();
            if n != 1 {
                ok = false;
                witness = format!("{n} lifts of {t}");
            }
        }
        report.check("morphism.unique-lift", case, ok, || witness);
    }
}

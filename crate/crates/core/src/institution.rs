//! The institution interface with its variable-extension structure, and the
//! generic law checks stated over it.

use std::collections::HashMap;
use std::fmt::{Debug, Display};
use std::hash::Hash;

use crate::cat::{FiniteCategory, MorphismRecord};
use crate::error::{Error, Result};
use crate::report::LawReport;

/// An extension `Σ^Dex[X]` together with the inclusion `Σ^Dex(X): Σ → Σ^Dex[X]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DexBundle<S, M> {
    pub extended: S,
    pub inclusion: M,
}

/// Bound shared by every value type of an institution.
pub trait Value: Clone + Debug + Display + PartialEq + Eq + PartialOrd + Ord + Hash + Send + Sync + 'static {}
impl<T: Clone + Debug + Display + PartialEq + Eq + PartialOrd + Ord + Hash + Send + Sync + 'static> Value for T {}

/// An institution with a variable-extension (Dex) structure.
///
/// Implementations are small configuration values (budgets); signatures,
/// morphisms, sentences and models are the associated types. All operations
/// are pure.
pub trait Institution: Clone + Debug + PartialEq + Eq + PartialOrd + Ord + Hash + Send + Sync + 'static {
    type Sig: Value;
    type Mor: Value;
    type Atom: Value;
    type Model: Value;
    type Block: Value;
    type BlockMor: Value;

    fn name(&self) -> &'static str;

    // signature category
    fn mor_dom(&self, m: &Self::Mor) -> Self::Sig;
    fn mor_cod(&self, m: &Self::Mor) -> Self::Sig;
    fn identity(&self, sig: &Self::Sig) -> Self::Mor;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;

    // atomic sentences
    fn check_atom(&self, sig: &Self::Sig, atom: &Self::Atom) -> Result<()>;
    fn translate_atom(&self, m: &Self::Mor, atom: &Self::Atom) -> Result<Self::Atom>;
    /// Atomic sentences of `sig` up to an instance-defined size budget, in a fixed order.
    fn atoms(&self, sig: &Self::Sig, budget: usize) -> Vec<Self::Atom>;

    // models
    fn model_signature(&self, model: &Self::Model) -> Self::Sig;
    fn reduct(&self, m: &Self::Mor, model: &Self::Model) -> Result<Self::Model>;
    fn satisfies_atom(&self, model: &Self::Model, atom: &Self::Atom) -> Result<bool>;
    /// All models of `sig` with carriers up to `bound`, in a deterministic order.
    fn models(&self, sig: &Self::Sig, bound: usize) -> Result<Vec<Self::Model>>;
    /// Visits the models of [`Institution::models`] in order until `f` returns `true`.
    fn for_each_model(
        &self,
        sig: &Self::Sig,
        bound: usize,
        f: &mut dyn FnMut(&Self::Model) -> Result<bool>,
    ) -> Result<()> {
        for m in self.models(sig, bound)? {
            if f(&m)? {
                break;
            }
        }
        Ok(())
    }
    /// Whether [`Institution::models`] at this bound already lists every model up to isomorphism.
    fn models_exhaustive(&self, _sig: &Self::Sig, _bound: usize) -> bool {
        false
    }

    // Dex structure
    /// The blocks of `sig` within the variable budget, sorted.
    fn blocks(&self, sig: &Self::Sig) -> Vec<Self::Block>;
    /// The block morphisms between blocks of [`Institution::blocks`], sorted.
    fn block_morphisms(&self, sig: &Self::Sig) -> Vec<Self::BlockMor>;
    fn block_mor_dom(&self, i: &Self::BlockMor) -> Self::Block;
    fn block_mor_cod(&self, i: &Self::BlockMor) -> Self::Block;
    fn block_identity(&self, x: &Self::Block) -> Self::BlockMor;
    /// `j ∘ i`.
    fn block_compose(&self, j: &Self::BlockMor, i: &Self::BlockMor) -> Result<Self::BlockMor>;
    fn is_block(&self, sig: &Self::Sig, x: &Self::Block) -> bool;
    /// Number of variables a block adds.
    fn block_size(&self, x: &Self::Block) -> usize;
    /// `Σ^Dex[X]` and `Σ^Dex(X)`.
    fn extend(&self, sig: &Self::Sig, x: &Self::Block) -> Result<DexBundle<Self::Sig, Self::Mor>>;
    /// `Σ^Dex[ι]: Σ^Dex[X] → Σ^Dex[Y]`.
    fn extend_along(&self, sig: &Self::Sig, i: &Self::BlockMor) -> Result<Self::Mor>;
    /// `χ_Dex(X)`.
    fn translate_block(&self, chi: &Self::Mor, x: &Self::Block) -> Result<Self::Block>;
    /// `χ_Dex(ι)`.
    fn translate_block_mor(&self, chi: &Self::Mor, i: &Self::BlockMor) -> Result<Self::BlockMor>;
    /// `χ^Dex[X]: Σ^Dex[X] → Σ'^Dex[χ_Dex(X)]`.
    fn translate_ext(&self, chi: &Self::Mor, x: &Self::Block) -> Result<Self::Mor>;
    /// Every `Σ^Dex(X)`-expansion of `model`, each exactly once, in a fixed order.
    fn expansions(&self, model: &Self::Model, x: &Self::Block) -> Result<Vec<Self::Model>>;
    /// The mediating morphism `m: Σ'^Dex[χ_Dex(X)] → T` of the extension square
    /// for a cocone `f: Σ^Dex[X] → T`, `g: Σ' → T` with `f ∘ Σ^Dex(X) = g ∘ χ`.
    fn pushout_mediator(&self, chi: &Self::Mor, x: &Self::Block, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    /// Morphisms `src → tgt` expressible in the instance's finite fragment, sorted.
    fn morphisms_between(&self, src: &Self::Sig, tgt: &Self::Sig, budget: usize) -> Vec<Self::Mor>;
    /// Substitutions `θ: Σ^Dex[X] → Σ` (with `θ ∘ Σ^Dex(X) = id`) up to a size budget, sorted.
    fn substitution_candidates(&self, sig: &Self::Sig, x: &Self::Block, budget: usize) -> Result<Vec<Self::Mor>>;
}

/// `Σ_Dex` materialized as a finite category, with the block and block-morphism
/// values backing each id.
pub fn block_category<I: Institution>(
    ins: &I,
    sig: &I::Sig,
) -> Result<(FiniteCategory, Vec<I::Block>, Vec<I::BlockMor>)> {
    let blocks = ins.blocks(sig);
    let mors = ins.block_morphisms(sig);
    let obj = |b: &I::Block| blocks.binary_search(b).map_err(|_| Error::NotABlock(b.to_string()));
    let mut records = Vec::with_capacity(mors.len());
    for m in &mors {
        records.push(MorphismRecord {
            name: m.to_string(),
            dom: obj(&ins.block_mor_dom(m))?,
            cod: obj(&ins.block_mor_cod(m))?,
        });
    }
    let identity = blocks
        .iter()
        .map(|b| {
            mors.binary_search(&ins.block_identity(b))
                .map_err(|_| Error::LawViolation(format!("identity on block {b} missing")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut compose_err = None;
    let cat = FiniteCategory::from_fn(blocks.iter().map(|b| b.to_string()).collect(), records, identity, |g, f| {
        match ins.block_compose(&mors[g], &mors[f]).map(|h| mors.binary_search(&h)) {
            Ok(Ok(h)) => h,
            _ => {
                compose_err = Some(format!("{} ∘ {}", mors[g], mors[f]));
                f
            }
        }
    });
    if let Some(w) = compose_err {
        return Err(Error::IllFormedCategory { law: "composition-total", witness: w });
    }
    Ok((cat?, blocks, mors))
}

/// The unique `Σ'^Dex(χ_Dex(X))`-expansion of `a2` whose `χ^Dex[X]`-reduct is `a_hat`.
pub fn lift_expansion<I: Institution>(
    ins: &I,
    chi: &I::Mor,
    a2: &I::Model,
    x: &I::Block,
    a_hat: &I::Model,
) -> Result<I::Model> {
    let x2 = ins.translate_block(chi, x)?;
    let ext = ins.translate_ext(chi, x)?;
    let mut found = Vec::new();
    for cand in ins.expansions(a2, &x2)? {
        if ins.reduct(&ext, &cand)? == *a_hat {
            found.push(cand);
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one lift")),
        0 => Err(Error::LawViolation(format!("no expansion lift of {a_hat} along {chi}"))),
        n => Err(Error::LawViolation(format!("{n} expansion lifts of {a_hat} along {chi}"))),
    }
}

/// Data the Dex law sweep ranges over.
#[derive(Debug, Clone)]
pub struct DexSamples<I: Institution> {
    pub signatures: Vec<I::Sig>,
    pub morphisms: Vec<I::Mor>,
    /// Carrier bound for model enumeration.
    pub model_bound: usize,
    /// Size budget for atomic sentences.
    pub atom_budget: usize,
    /// Size budget for the mediator candidates in the extension-square check.
    pub mediator_budget: usize,
}

fn check<T: PartialEq + Display>(report: &mut LawReport, law: &str, case: &str, lhs: Result<T>, rhs: Result<T>) {
    match (lhs, rhs) {
        (Ok(a), Ok(b)) => {
            let ok = a == b;
            report.check(law, case.to_string(), ok, || format!("{a} != {b}"));
        }
        (Err(e), _) | (_, Err(e)) => report.fail(law, case.to_string(), e.to_string()),
    }
}

/// Sweeps the institution and Dex laws over the sampled data:
/// sentence and model functoriality, the satisfaction condition, the
/// coherence equations for extensions (identity/composition of `Σ^Dex[ι]`,
/// the extension squares, the differential law), functoriality of `χ_Dex`,
/// the extension-square universal property relative to the finite fragment,
/// and the unique expansion lift.
pub fn check_dex_laws<I: Institution>(ins: &I, samples: &DexSamples<I>) -> LawReport {
    let mut report = LawReport::new();
    let mut sigs: Vec<I::Sig> = samples.signatures.clone();
    for m in &samples.morphisms {
        sigs.push(ins.mor_dom(m));
        sigs.push(ins.mor_cod(m));
    }
    sigs.sort();
    sigs.dedup();
    let mut mors = samples.morphisms.clone();
    for s in &sigs {
        mors.push(ins.identity(s));
    }
    mors.sort();
    mors.dedup();

    for s in &sigs {
        let sname = s.to_string();
        for x in ins.blocks(s) {
            let case = format!("{sname} {x}");
            // (1) Σ^Dex[id] = id
            let bundle = match ins.extend(s, &x) {
                Ok(b) => b,
                Err(e) => {
                    report.fail("dex.extend", case, e.to_string());
                    continue;
                }
            };
            check(
                &mut report,
                "dex.eq1-identity",
                &case,
                ins.extend_along(s, &ins.block_identity(&x)),
                Ok(ins.identity(&bundle.extended)),
            );
            // id_Dex(X) = X and id^Dex[X] = id  (eq. 3, first line)
            let id = ins.identity(s);
            check(&mut report, "dex.block-translation-identity", &case, ins.translate_block(&id, &x), Ok(x.clone()));
            check(
                &mut report,
                "dex.eq3-identity",
                &case,
                ins.translate_ext(&id, &x),
                Ok(ins.identity(&bundle.extended)),
            );
            // expansions reduce to the model, without repetition
            if let Ok(models) = ins.models(s, samples.model_bound) {
                for a in models.iter().take(64) {
                    match ins.expansions(a, &x) {
                        Ok(exps) => {
                            let mut sorted = exps.clone();
                            sorted.sort();
                            sorted.dedup();
                            let ok = sorted.len() == exps.len()
                                && exps.iter().all(|e| ins.reduct(&bundle.inclusion, e).ok().as_ref() == Some(a));
                            report.check("dex.expansions", format!("{case} {a}"), ok, || {
                                format!("{} expansions, {} distinct", exps.len(), sorted.len())
                            });
                        }
                        Err(e) => report.fail("dex.expansions", format!("{case} {a}"), e.to_string()),
                    }
                }
            }
        }
        // (1) composition, and the coslice condition Σ^Dex[ι] ∘ Σ^Dex(X) = Σ^Dex(Y)
        let bms = ins.block_morphisms(s);
        for i in &bms {
            let (x, y) = (ins.block_mor_dom(i), ins.block_mor_cod(i));
            let case = format!("{sname} {i}");
            check(
                &mut report,
                "dex.eq1-coslice",
                &case,
                ins.extend_along(s, i)
                    .and_then(|e| ins.extend(s, &x).and_then(|b| ins.compose(&e, &b.inclusion))),
                ins.extend(s, &y).map(|b| b.inclusion),
            );
            for j in &bms {
                if ins.block_mor_dom(j) != y {
                    continue;
                }
                let case = format!("{sname} {j}∘{i}");
                check(
                    &mut report,
                    "dex.eq1-composition",
                    &case,
                    ins.block_compose(j, i).and_then(|ji| ins.extend_along(s, &ji)),
                    ins.extend_along(s, j).and_then(|ej| ins.extend_along(s, i).and_then(|ei| ins.compose(&ej, &ei))),
                );
            }
        }
    }

    for chi in &mors {
        let (s, s2) = (ins.mor_dom(chi), ins.mor_cod(chi));
        let cname = chi.to_string();
        let atoms = ins.atoms(&s, samples.atom_budget);
        let models2 = match ins.models(&s2, samples.model_bound) {
            Ok(m) => m,
            Err(e) => {
                report.fail("institution.models", cname.clone(), e.to_string());
                Vec::new()
            }
        };
        // satisfaction condition on atoms
        let mut sat_ok = true;
        let mut sat_cases = 0usize;
        for a2 in &models2 {
            let red = match ins.reduct(chi, a2) {
                Ok(r) => r,
                Err(e) => {
                    report.fail("institution.reduct", format!("{cname} {a2}"), e.to_string());
                    continue;
                }
            };
            for g in &atoms {
                sat_cases += 1;
                let lhs = ins.satisfies_atom(&red, g);
                let rhs = ins.translate_atom(chi, g).and_then(|t| ins.satisfies_atom(a2, &t));
                if lhs.as_ref().ok() != rhs.as_ref().ok() || lhs.is_err() {
                    sat_ok = false;
                    report.fail(
                        "institution.satisfaction",
                        cname.to_string(),
                        format!("model={a2} atom={g} reduct={lhs:?} translated={rhs:?}"),
                    );
                }
            }
        }
        if sat_ok {
            report.pass("institution.satisfaction", format!("{cname} cases={sat_cases}"));
        }
        // identity laws of Sen and Mod
        if ins.identity(&s) == *chi {
            for g in &atoms {
                check(&mut report, "institution.sen-identity", &format!("{cname} {g}"), ins.translate_atom(chi, g), Ok(g.clone()));
            }
            for a in &models2 {
                check(&mut report, "institution.mod-identity", &format!("{cname} {a}"), ins.reduct(chi, a), Ok(a.clone()));
            }
        }

        for x in ins.blocks(&s) {
            let case = format!("{cname} {x}");
            let x2 = match ins.translate_block(chi, &x) {
                Ok(v) => v,
                Err(e) => {
                    report.fail("dex.block-translation", case, e.to_string());
                    continue;
                }
            };
            report.check("dex.block-translation", case.clone(), ins.is_block(&s2, &x2), || {
                format!("{x2} is not a block of the codomain")
            });
            // (2) χ^Dex[X] ∘ Σ^Dex(X) = Σ'^Dex(χ_Dex X) ∘ χ
            let ext = ins.translate_ext(chi, &x);
            let inc = ins.extend(&s, &x);
            let inc2 = ins.extend(&s2, &x2);
            check(
                &mut report,
                "dex.eq2-square",
                &case,
                ext.clone().and_then(|e| inc.clone().and_then(|b| ins.compose(&e, &b.inclusion))),
                inc2.clone().and_then(|b| ins.compose(&b.inclusion, chi)),
            );
            // extension square is a pushout, relative to the fragment
            if let (Ok(ext), Ok(inc), Ok(inc2)) = (&ext, &inc, &inc2) {
                check_pushout(ins, &mut report, chi, &x, ext, inc, inc2, samples.mediator_budget);
                // unique expansion lift, as a bijection
                for a2 in models2.iter().take(32) {
                    let case = format!("{cname} {x} {a2}");
                    let red = match ins.reduct(chi, a2) {
                        Ok(r) => r,
                        Err(e) => {
                            report.fail("dex.unique-lift", case, e.to_string());
                            continue;
                        }
                    };
                    let (exps, exps2) = match (ins.expansions(&red, &x), ins.expansions(a2, &x2)) {
                        (Ok(a), Ok(b)) => (a, b),
                        _ => {
                            report.fail("dex.unique-lift", case, "expansion enumeration failed".to_string());
                            continue;
                        }
                    };
                    let mut ok = exps.len() == exps2.len();
                    let mut witness = format!("{} vs {} expansions", exps.len(), exps2.len());
                    for e in &exps {
                        match lift_expansion(ins, chi, a2, &x, e) {
                            Ok(l) => {
                                if ins.reduct(&inc2.inclusion, &l).ok().as_ref() != Some(a2) {
                                    ok = false;
                                    witness = format!("lift {l} does not expand {a2}");
                                }
                            }
                            Err(err) => {
                                ok = false;
                                witness = err.to_string();
                            }
                        }
                    }
                    report.check("dex.unique-lift", case, ok, || witness);
                }
            }
        }
        // χ_Dex on block morphisms, and the outer square of (2)
        for i in ins.block_morphisms(&s) {
            let case = format!("{cname} {i}");
            let (x, y) = (ins.block_mor_dom(&i), ins.block_mor_cod(&i));
            let ti = ins.translate_block_mor(chi, &i);
            if let (Ok(ti), Ok(tx), Ok(ty)) = (&ti, ins.translate_block(chi, &x), ins.translate_block(chi, &y)) {
                let ok = ins.block_mor_dom(ti) == tx && ins.block_mor_cod(ti) == ty;
                report.check("dex.block-functor-typing", case.clone(), ok, || format!("{ti}"));
            }
            check(
                &mut report,
                "dex.eq2-outer",
                &case,
                ins.translate_ext(chi, &y)
                    .and_then(|ey| ins.extend_along(&s, &i).and_then(|ei| ins.compose(&ey, &ei))),
                ti.clone().and_then(|ti| {
                    ins.extend_along(&s2, &ti)
                        .and_then(|e2| ins.translate_ext(chi, &x).and_then(|ex| ins.compose(&e2, &ex)))
                }),
            );
            check(
                &mut report,
                "dex.block-functor-identity",
                &case,
                ins.translate_block_mor(chi, &ins.block_identity(&x)),
                ins.translate_block(chi, &x).map(|tx| ins.block_identity(&tx)),
            );
            for j in ins.block_morphisms(&s) {
                if ins.block_mor_dom(&j) != y {
                    continue;
                }
                check(
                    &mut report,
                    "dex.block-functor-composition",
                    &format!("{cname} {j}∘{i}"),
                    ins.block_compose(&j, &i).and_then(|ji| ins.translate_block_mor(chi, &ji)),
                    ins.translate_block_mor(chi, &j)
                        .and_then(|a| ins.translate_block_mor(chi, &i).and_then(|b| ins.block_compose(&a, &b))),
                );
            }
        }
    }

    // composition laws over composable sampled pairs
    for chi in &mors {
        for chi2 in &mors {
            if ins.mor_cod(chi) != ins.mor_dom(chi2) {
                continue;
            }
            let comp = match ins.compose(chi2, chi) {
                Ok(c) => c,
                Err(e) => {
                    report.fail("institution.compose", format!("{chi2}∘{chi}"), e.to_string());
                    continue;
                }
            };
            let case = format!("{chi2}∘{chi}");
            let s = ins.mor_dom(chi);
            for g in ins.atoms(&s, samples.atom_budget) {
                check(
                    &mut report,
                    "institution.sen-composition",
                    &format!("{case} {g}"),
                    ins.translate_atom(&comp, &g),
                    ins.translate_atom(chi, &g).and_then(|t| ins.translate_atom(chi2, &t)),
                );
            }
            if let Ok(models) = ins.models(&ins.mor_cod(chi2), samples.model_bound) {
                for a in models.iter().take(64) {
                    check(
                        &mut report,
                        "institution.mod-composition",
                        &format!("{case} {a}"),
                        ins.reduct(&comp, a),
                        ins.reduct(chi2, a).and_then(|r| ins.reduct(chi, &r)),
                    );
                }
            }
            for x in ins.blocks(&s) {
                let case = format!("{case} {x}");
                check(
                    &mut report,
                    "dex.block-translation-composition",
                    &case,
                    ins.translate_block(&comp, &x),
                    ins.translate_block(chi, &x).and_then(|x1| ins.translate_block(chi2, &x1)),
                );
                // (3) (χ'∘χ)^Dex[X] = χ'^Dex[χ_Dex X] ∘ χ^Dex[X]
                check(
                    &mut report,
                    "dex.eq3-composition",
                    &case,
                    ins.translate_ext(&comp, &x),
                    ins.translate_block(chi, &x).and_then(|x1| {
                        ins.translate_ext(chi2, &x1)
                            .and_then(|e2| ins.translate_ext(chi, &x).and_then(|e1| ins.compose(&e2, &e1)))
                    }),
                );
            }
        }
    }
    report
}

/// Upper bound on the independently assembled cocones tried per square.
const MAX_COCONES: usize = 2_000;

/// Universal property of the extension square within the finite fragment:
/// every candidate `m: Σ'^Dex[X'] → T` is recovered as the mediator of its own
/// cocone, and every cocone assembled from fragment morphisms has a mediator
/// commuting with both legs that is the only such candidate.
#[allow(clippy::too_many_arguments)]
fn check_pushout<I: Institution>(
    ins: &I,
    report: &mut LawReport,
    chi: &I::Mor,
    x: &I::Block,
    ext: &I::Mor,
    inc: &DexBundle<I::Sig, I::Mor>,
    inc2: &DexBundle<I::Sig, I::Mor>,
    budget: usize,
) {
    let case = format!("{chi} {x}");
    let s2 = ins.mor_cod(chi);
    let targets = [s2.clone(), inc2.extended.clone()];
    let mut ok = true;
    let mut witness = String::new();
    let mut cocones = 0usize;
    for t in &targets {
        let candidates = ins.morphisms_between(&inc2.extended, t, budget);
        let mut by_cocone: HashMap<(I::Mor, I::Mor), usize> = HashMap::new();
        for m in &candidates {
            let (f, g) = match (ins.compose(m, ext), ins.compose(m, &inc2.inclusion)) {
                (Ok(f), Ok(g)) => (f, g),
                _ => continue,
            };
            cocones += 1;
            match ins.pushout_mediator(chi, x, &f, &g) {
                Ok(med) if med == *m => {}
                Ok(med) => {
                    ok = false;
                    witness = format!("candidate {m} but mediator {med}");
                }
                Err(e) => {
                    ok = false;
                    witness = format!("cocone of {m}: {e}");
                }
            }
            *by_cocone.entry((f, g)).or_insert(0) += 1;
        }
        let mut fs_by_restriction: HashMap<I::Mor, Vec<I::Mor>> = HashMap::new();
        for f in ins.morphisms_between(&inc.extended, t, budget) {
            if let Ok(r) = ins.compose(&f, &inc.inclusion) {
                fs_by_restriction.entry(r).or_default().push(f);
            }
        }
        let mut assembled = Vec::new();
        for g in ins.morphisms_between(&s2, t, budget) {
            if let Some(fs) = ins.compose(&g, chi).ok().and_then(|r| fs_by_restriction.get(&r)) {
                assembled.extend(fs.iter().map(|f| (f.clone(), g.clone())));
            }
        }
        let stride = (assembled.len() / MAX_COCONES).max(1);
        for (f, g) in assembled.iter().step_by(stride) {
            cocones += 1;
            match ins.pushout_mediator(chi, x, f, g) {
                Ok(med) => {
                    let legs = ins.compose(&med, ext).ok().as_ref() == Some(f)
                        && ins.compose(&med, &inc2.inclusion).ok().as_ref() == Some(g);
                    let others = by_cocone.get(&(f.clone(), g.clone())).copied().unwrap_or(0);
                    let in_fragment = candidates.binary_search(&med).is_ok();
                    if !legs || others != usize::from(in_fragment) {
                        ok = false;
                        witness = format!("cocone ({f}, {g}): legs={legs} candidates={others}");
                    }
                }
                Err(e) => {
                    ok = false;
                    witness = format!("cocone ({f}, {g}): {e}");
                }
            }
        }
    }
    report.check("dex.pushout", format!("{case} cocones={cocones}"), ok, || witness);
}

//! Bounded semantic entailment: `Γ ⊨_Σ Δ` holds when no model satisfies all
//! of `Γ` and none of `Δ`. Verdicts are always labeled with the carrier bound
//! that was searched.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus;
use crate::error::Result;
use crate::instances::fol0::{Fol0, Fol0Sig};
use crate::institution::Institution;
use crate::report::LawReport;
use crate::sentence::{self, Sentence};
use crate::sequent::{translate_set, union, with, without};
use crate::sequent::{
    bounded_prove, check_proof_with, cut_proof, init_proof, modify_proof, AtomicOracle, CheckOptions, CheckReport,
    ProofTree, ProveOptions, ProveOutcome, Sequent, SentenceSet,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<M> {
    /// No countermodel with carriers up to this bound.
    Holds(usize),
    Countermodel(M),
}

impl<M> Verdict<M> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }

    pub fn countermodel(&self) -> Option<&M> {
        match self {
            Verdict::Countermodel(m) => Some(m),
            Verdict::Holds(_) => None,
        }
    }
}

impl<M: fmt::Display> fmt::Display for Verdict<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds(b) => write!(f, "holds bound={b}"),
            Verdict::Countermodel(m) => write!(f, "countermodel {m}"),
        }
    }
}

/// Whether `model` satisfies every sentence of `gamma` and none of `delta`.
pub fn is_countermodel<'a, I: Institution>(
    ins: &I,
    model: &I::Model,
    gamma: impl IntoIterator<Item = &'a Sentence<I>>,
    delta: impl IntoIterator<Item = &'a Sentence<I>>,
) -> Result<bool> {
    for g in gamma {
        if !sentence::satisfies(ins, model, g)? {
            return Ok(false);
        }
    }
    for d in delta {
        if sentence::satisfies(ins, model, d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches the models of `sig` with carriers up to `bound`, in enumeration
/// order, for the first countermodel of `Γ ⊢ Δ`.
pub fn semantic_sequent<'a, I: Institution>(
    ins: &I,
    gamma: impl IntoIterator<Item = &'a Sentence<I>> + Clone,
    delta: impl IntoIterator<Item = &'a Sentence<I>> + Clone,
    sig: &I::Sig,
    bound: usize,
) -> Result<Verdict<I::Model>> {
    let mut found = None;
    ins.for_each_model(sig, bound, &mut |m| {
        if is_countermodel(ins, m, gamma.clone(), delta.clone())? {
            found = Some(m.clone());
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(found.map_or(Verdict::Holds(bound), Verdict::Countermodel))
}

fn first_countermodel<'a, I: Institution>(
    ins: &I,
    models: &[I::Model],
    gamma: impl IntoIterator<Item = &'a Sentence<I>> + Clone,
    delta: impl IntoIterator<Item = &'a Sentence<I>> + Clone,
    bound: usize,
) -> Result<Verdict<I::Model>> {
    for m in models {
        if is_countermodel(ins, m, gamma.clone(), delta.clone())? {
            return Ok(Verdict::Countermodel(m.clone()));
        }
    }
    Ok(Verdict::Holds(bound))
}

#[derive(Debug)]
struct CacheState<I: Institution> {
    lists: HashMap<(I::Sig, usize), Arc<Vec<I::Model>>>,
    stored: usize,
}

/// Model enumeration memoized per `(signature, bound)`.
///
/// Only enumerations of at most `entry_limit` models are kept, and the whole
/// cache is dropped once it holds more than `total_limit` models; larger
/// enumerations are streamed on every query.
#[derive(Debug)]
pub struct ModelCache<I: Institution> {
    state: Mutex<CacheState<I>>,
    entry_limit: usize,
    total_limit: usize,
}

impl<I: Institution> Default for ModelCache<I> {
    fn default() -> Self {
        Self::new()
    }
}

impl<I: Institution> ModelCache<I> {
    pub fn new() -> Self {
        Self::with_limits(50_000, 500_000)
    }

    pub fn with_limits(entry_limit: usize, total_limit: usize) -> Self {
        ModelCache { state: Mutex::new(CacheState { lists: HashMap::new(), stored: 0 }), entry_limit, total_limit }
    }

    fn lookup(&self, key: &(I::Sig, usize)) -> Option<Arc<Vec<I::Model>>> {
        self.state.lock().expect("model cache").lists.get(key).cloned()
    }

    fn store(&self, key: (I::Sig, usize), models: Arc<Vec<I::Model>>) {
        if models.len() > self.entry_limit {
            return;
        }
        let mut st = self.state.lock().expect("model cache");
        if st.stored + models.len() > self.total_limit {
            st.lists.clear();
            st.stored = 0;
        }
        st.stored += models.len();
        st.lists.insert(key, models);
    }

    /// The full enumeration, kept when it is small enough.
    pub fn models(&self, ins: &I, sig: &I::Sig, bound: usize) -> Result<Arc<Vec<I::Model>>> {
        let key = (sig.clone(), bound);
        if let Some(m) = self.lookup(&key) {
            return Ok(m);
        }
        let models = Arc::new(ins.models(sig, bound)?);
        self.store(key, models.clone());
        Ok(models)
    }

    /// [`semantic_sequent`] over the cached enumeration. A miss streams the
    /// models and keeps them only when the search ran to the end.
    pub fn semantic_sequent<'a>(
        &self,
        ins: &I,
        gamma: impl IntoIterator<Item = &'a Sentence<I>> + Clone,
        delta: impl IntoIterator<Item = &'a Sentence<I>> + Clone,
        sig: &I::Sig,
        bound: usize,
    ) -> Result<Verdict<I::Model>> {
        let key = (sig.clone(), bound);
        if let Some(models) = self.lookup(&key) {
            return first_countermodel(ins, &models, gamma, delta, bound);
        }
        let mut seen = Some(Vec::new());
        let mut found = None;
        ins.for_each_model(sig, bound, &mut |m| {
            if let Some(v) = &mut seen {
                if v.len() < self.entry_limit {
                    v.push(m.clone());
                } else {
                    seen = None;
                }
            }
            if is_countermodel(ins, m, gamma.clone(), delta.clone())? {
                found = Some(m.clone());
                return Ok(true);
            }
            Ok(false)
        })?;
        match found {
            Some(m) => Ok(Verdict::Countermodel(m)),
            None => {
                if let Some(v) = seen {
                    self.store(key, Arc::new(v));
                }
                Ok(Verdict::Holds(bound))
            }
        }
    }
}

/// Parameters of [`soundness_sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub seed: u64,
    /// Number of generated cases; each contributes several proofs.
    pub cases: usize,
    /// Depth of generated sentences.
    pub sentence_depth: usize,
    /// Depth bound for `bounded_prove`.
    pub proof_depth: usize,
    /// Carrier bound for countermodel search.
    pub carrier_bound: usize,
    pub max_sorts: usize,
    pub max_symbols: usize,
    /// Prove and check with the `ExistsR` side condition switched off.
    pub fault_injection: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            seed: 0,
            cases: 500,
            sentence_depth: 2,
            proof_depth: 6,
            carrier_bound: 3,
            max_sorts: 1,
            max_symbols: 2,
            fault_injection: false,
        }
    }
}

/// Outcome of [`soundness_sweep`]. The report holds one record per check
/// under the laws `satisfaction-condition`, `admissibility` and `soundness`.
#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub report: LawReport,
    /// Proofs handed to the checker.
    pub proofs: usize,
    /// Proofs the checker accepted.
    pub valid: usize,
    /// Proofs accepted only up to an inconclusive oracle.
    pub conditional: usize,
}

impl SweepReport {
    pub fn violations(&self, law: &str) -> usize {
        self.report.failures().filter(|r| r.law == law).count()
    }
}

/// Generates FOL₀ proofs from seeded cases, checks each one and searches for a
/// countermodel of every accepted root.
///
/// Each case draws a signature, a second signature with morphisms into it, and
/// a handful of sentences. The satisfaction condition is checked first on
/// those morphisms, sentences and models of the target. Proofs come from
/// `init_proof`, `modify_proof` along the sampled morphisms, `cut_proof` of
/// an init proof against a search hit, and `bounded_prove` on a random
/// sequent. Transformation outputs must be accepted by the checker with
/// exactly the expected root (`admissibility`); every accepted proof must have
/// no countermodel within the carrier bound (`soundness`).
pub fn soundness_sweep(config: &SweepConfig, oracle: &dyn AtomicOracle<Fol0>) -> SweepReport {
    let ins = Fol0::default();
    let cache = ModelCache::new();
    let mut out = SweepReport::default();
    for i in 0..config.cases {
        let case = config.seed.wrapping_add(i as u64);
        if let Err(e) = sweep_case(&ins, &cache, config, oracle, case, &mut out) {
            out.report.fail("sweep.error", format!("seed={case}"), e.to_string());
        }
    }
    out
}

type Set = SentenceSet<Fol0>;

fn sweep_case(
    ins: &Fol0,
    cache: &ModelCache<Fol0>,
    config: &SweepConfig,
    oracle: &dyn AtomicOracle<Fol0>,
    case: u64,
    out: &mut SweepReport,
) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(case);
    let sig = corpus::random_fol0_signature(&mut rng, config.max_sorts, config.max_symbols)?;
    let sig2 = corpus::random_fol0_signature(&mut rng, config.max_sorts, config.max_symbols + 1)?;
    let depth = config.sentence_depth;
    let draw = |rng: &mut ChaCha8Rng, s: &Fol0Sig, n: std::ops::RangeInclusive<usize>| -> Result<Set> {
        let n = rng.gen_range(n);
        (0..n).map(|_| corpus::random_sentence(ins, rng, s, depth, 1)).collect()
    };
    let gamma = draw(&mut rng, &sig, 0..=2)?;
    let delta = draw(&mut rng, &sig, 0..=2)?;
    let psi = corpus::random_sentence(ins, &mut rng, &sig, depth, 1)?;
    let mut chis = ins.morphisms_between(&sig, &sig2, 1);
    chis.shuffle(&mut rng);
    chis.truncate(2);

    let targets = cache.models(ins, &sig2, 2)?;
    for (k, chi) in chis.iter().enumerate() {
        for phi in gamma.iter().chain(&delta).chain([&psi]) {
            let moved = sentence::translate(ins, chi, phi)?;
            for m in targets.iter().take(64) {
                let lhs = sentence::satisfies(ins, &ins.reduct(chi, m)?, phi)?;
                let rhs = sentence::satisfies(ins, m, &moved)?;
                out.report.check("satisfaction-condition", format!("seed={case}.{k}"), lhs == rhs, || {
                    format!("chi={chi} phi={phi} model={m}")
                });
            }
        }
    }

    let check_opts = CheckOptions { skip_exists_r_side_condition: config.fault_injection };
    let prove_opts = ProveOptions { witness_budget: 1, relax_exists_r: config.fault_injection };
    let mut proofs: Vec<(&str, ProofTree<Fol0>, Option<Sequent<Fol0>>)> = Vec::new();

    let init = init_proof(ins, &gamma, &delta, &sig, &psi)?;
    let init_root = Sequent { gamma: with(&gamma, &psi), sig: sig.clone(), delta: with(&delta, &psi) };
    proofs.push(("init", init.clone(), Some(init_root.clone())));
    for chi in &chis {
        let extra = draw(&mut rng, &sig2, 1..=1)?;
        let g2 = union(&translate_set(ins, chi, &init_root.gamma)?, &extra);
        let d2 = translate_set(ins, chi, &init_root.delta)?;
        let t = modify_proof(ins, chi, &init, &g2, &d2)?;
        proofs.push(("modify", t, Some(Sequent { gamma: g2, sig: sig2.clone(), delta: d2 })));
    }

    let goal_g = draw(&mut rng, &sig, 0..=2)?;
    let goal_d = draw(&mut rng, &sig, 1..=2)?;
    if let ProveOutcome::Found(t) = bounded_prove(ins, &goal_g, &goal_d, &sig, config.proof_depth, oracle, prove_opts)? {
        if !config.fault_injection {
            // A search hit on `Γ ⊢ Δ` cut against an init proof of `φ ∈ Δ`.
            if let Some(phi) = goal_d.iter().next() {
                let rest = without(&goal_d, phi);
                let t2 = init_proof(ins, &gamma, &delta, &sig, phi)?;
                let root = Sequent {
                    gamma: union(&goal_g, &gamma),
                    sig: sig.clone(),
                    delta: union(&rest, &with(&delta, phi)),
                };
                let cut = cut_proof(ins, &goal_g, &gamma, &rest, &with(&delta, phi), phi, &t, &t2)?;
                proofs.push(("cut", cut, Some(root)));
            }
        }
        proofs.push(("prove", t, None));
    }
    let t_psi = init_proof(ins, &gamma, &delta, &sig, &psi)?;
    let t_psi2 = init_proof(ins, &with(&gamma, &psi), &delta, &sig, &psi)?;
    let cut_root = Sequent { gamma: with(&gamma, &psi), sig: sig.clone(), delta: with(&delta, &psi) };
    let cut = cut_proof(ins, &with(&gamma, &psi), &gamma, &delta, &with(&delta, &psi), &psi, &t_psi, &t_psi2)?;
    proofs.push(("cut", cut, Some(cut_root)));

    for (n, (kind, t, expected)) in proofs.into_iter().enumerate() {
        let id = format!("seed={case}.{n}.{kind}");
        out.proofs += 1;
        let verdict = check_proof_with(ins, &t, oracle, check_opts);
        if let Some(root) = &expected {
            let exact = t.root == *root;
            let ok = verdict.is_valid() && exact;
            out.report.check("admissibility", id.clone(), ok, || format!("{verdict} root={} expected={root}", t.root));
        }
        match verdict {
            CheckReport::Valid => out.valid += 1,
            CheckReport::ConditionallyValid { .. } => {
                out.conditional += 1;
                continue;
            }
            CheckReport::Invalid { .. } => continue,
        }
        let r = &t.root;
        match cache.semantic_sequent(ins, &r.gamma, &r.delta, &r.sig, config.carrier_bound)? {
            Verdict::Holds(_) => out.report.pass("soundness", id),
            Verdict::Countermodel(m) => out.report.fail("soundness", id, format!("model={m} proof={t}")),
        }
    }
    Ok(())
}

use std::collections::BTreeSet;
use std::io::Write;

use dexlogic::cat::generate::generate_case;
use dexlogic::cat::{verify_construction_laws, DEFAULT_SECTION_BUDGET};
use dexlogic::instances::cring::CRing;
use dexlogic::instances::fol0::Fol0;
use dexlogic::institution::{check_dex_laws, DexSamples, Institution};
use dexlogic::morphism::{check_morphism_laws, forget_predicates_morphism, IdentityMorphism, InstitutionMorphism, MorphismSamples};
use dexlogic::report::{LawRecord, LawReport};
use dexlogic::semantics::{semantic_sequent, soundness_sweep, SweepConfig, Verdict};
use dexlogic::sentence::{self, Sentence};
use dexlogic::sequent::{
    bounded_prove, check_proof, AtomicOracle, CheckReport, CongruenceOracle, ModelOracle, ProveOptions, ProveOutcome,
};
use dexlogic::syntax::{load, print_proof, print_sentence, AnyTheory, ErrorKind, SExpr, SigExpr, Syntax, SyntaxError, Theory};

use crate::{Cli, Command, Suite};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_RESOLVE: u8 = 3;
pub const EXIT_CHECK_FAILED: u8 = 4;
pub const EXIT_BUDGET: u8 = 5;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(#[from] anyhow::Error),
    #[error("{file}:{err}")]
    Syntax { file: String, err: SyntaxError },
    #[error("{0}")]
    Resolve(String),
    #[error("{0}")]
    Library(#[from] dexlogic::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Usage(_) => EXIT_USAGE,
            CliError::Syntax { err, .. } if err.kind == ErrorKind::Parse => EXIT_PARSE,
            CliError::Syntax { .. } | CliError::Resolve(_) => EXIT_RESOLVE,
            CliError::Library(dexlogic::Error::Budget(_)) => EXIT_BUDGET,
            CliError::Library(_) => EXIT_CHECK_FAILED,
        }
    }
}

type CResult<T> = Result<T, CliError>;

/// Runs one command, writing the report to `out`; returns the exit status.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CResult<u8> {
    let seed = cli.seed.ok_or_else(|| CliError::Usage("--seed is required".into()))?;
    let file = match &cli.command {
        Command::CheckProof { file, .. }
        | Command::Entail { file, .. }
        | Command::Prove { file, .. }
        | Command::Laws { file, .. }
        | Command::Translate { file, .. } => file,
    };
    let src = std::fs::read_to_string(file)
        .map_err(|e| anyhow::Error::new(e).context(format!("cannot read {}", file.display())))?;
    let theory = load(&src).map_err(|err| CliError::Syntax { file: file.display().to_string(), err })?;
    let report = match theory {
        AnyTheory::Fol0(t) => dispatch(cli, seed, &t, out)?,
        AnyTheory::CRing(t) => dispatch(cli, seed, &t, out)?,
    };
    write!(out, "{report}").map_err(anyhow::Error::new)?;
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Per-institution choices the commands need.
trait Frontend: Syntax + Default {
    fn oracle(&self, bound: usize) -> Box<dyn AtomicOracle<Self>>;
    fn morphism_laws(t: &Theory<Self>, samples: &Samples) -> LawReport;
    fn soundness(config: &SweepConfig) -> CResult<LawReport>;
}

struct Samples {
    model_bound: usize,
    atom_budget: usize,
    mediator_budget: usize,
}

fn named_sentences<I: Syntax>(t: &Theory<I>) -> Vec<(I::Sig, Sentence<I>)> {
    t.sentences
        .iter()
        .filter_map(|d| match &d.over {
            SigExpr::Name(n) => Some((t.signature(n)?.clone(), d.value.clone())),
            SigExpr::Extend(..) => None,
        })
        .collect()
}

fn morphism_samples<M>(t: &Theory<M::Src>, s: &Samples, sentences: Vec<(<M::Src as Institution>::Sig, Sentence<M::Tgt>)>) -> MorphismSamples<M>
where
    M: InstitutionMorphism,
    M::Src: Syntax,
{
    MorphismSamples {
        morphisms: t.morphisms.iter().map(|d| d.value.clone()).collect(),
        signatures: t.signatures.iter().map(|(_, s)| s.clone()).collect(),
        model_bound: s.model_bound,
        atom_budget: s.atom_budget,
        mediator_budget: s.mediator_budget,
        sentences,
    }
}

impl Frontend for Fol0 {
    fn oracle(&self, _bound: usize) -> Box<dyn AtomicOracle<Self>> {
        Box::new(CongruenceOracle)
    }

    /// Forgetting predicates, with every declared sentence that survives it.
    fn morphism_laws(t: &Theory<Self>, s: &Samples) -> LawReport {
        let m = forget_predicates_morphism(t.ins.clone());
        let sentences = named_sentences(t)
            .into_iter()
            .filter(|(sig, phi)| m.map_sig(sig).is_ok_and(|image| sentence::check(&t.ins, &image, phi).is_ok()))
            .collect();
        check_morphism_laws(&m, &morphism_samples(t, s, sentences))
    }

    fn soundness(config: &SweepConfig) -> CResult<LawReport> {
        Ok(soundness_sweep(config, &CongruenceOracle).report)
    }
}

impl Frontend for CRing {
    fn oracle(&self, bound: usize) -> Box<dyn AtomicOracle<Self>> {
        Box::new(ModelOracle { ins: self.clone(), bound })
    }

    /// The identity morphism of the institution.
    fn morphism_laws(t: &Theory<Self>, s: &Samples) -> LawReport {
        let m = IdentityMorphism(t.ins.clone());
        check_morphism_laws(&m, &morphism_samples(t, s, named_sentences(t)))
    }

    fn soundness(_config: &SweepConfig) -> CResult<LawReport> {
        Err(CliError::Usage("the soundness suite runs on fol0 theories".into()))
    }
}

fn echo(out: &mut dyn Write, fields: &[(&str, String)]) -> CResult<()> {
    let line: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
    writeln!(out, "# {}", line.join(" ")).map_err(anyhow::Error::new)?;
    Ok(())
}

fn record(law: &str, case: &str, passed: bool, witness: String) -> LawRecord {
    LawRecord { law: law.into(), case: case.into(), passed, witness }
}

fn dispatch<I: Frontend>(cli: &Cli, seed: u64, t: &Theory<I>, out: &mut dyn Write) -> CResult<LawReport> {
    let ins = &t.ins;
    let mut report = LawReport::new();
    let kw = I::KEYWORD.to_string();
    match &cli.command {
        Command::CheckProof { oracle_bound, .. } => {
            echo(out, &[("command", "check-proof".into()), ("institution", kw), ("oracle-bound", oracle_bound.to_string())])?;
            let oracle = ins.oracle(*oracle_bound);
            for d in &t.proofs {
                let r = check_proof(ins, &d.value, oracle.as_ref());
                report.records.push(record("check-proof", &d.name, matches!(r, CheckReport::Valid), r.to_string()));
            }
        }
        Command::Entail { max_model_size, .. } => {
            echo(out, &[("command", "entail".into()), ("institution", kw), ("max-model-size", max_model_size.to_string())])?;
            for d in &t.sequents {
                let s = &d.value;
                let verdict = semantic_sequent(ins, &s.gamma, &s.delta, &s.sig, *max_model_size)?;
                let witness = match &verdict {
                    Verdict::Holds(b) => format!("holds bound={b}"),
                    Verdict::Countermodel(m) => {
                        let scope = t.sig_ctx(&d.over).map(|c| c.scope).unwrap_or_default();
                        let mut v = vec![SExpr::sym("countermodel")];
                        v.extend(ins.print_model(m, &scope));
                        SExpr::list(v).to_string()
                    }
                };
                report.records.push(record("entail", &d.name, verdict.holds(), witness));
            }
        }
        Command::Prove { depth, witness_budget, oracle_bound, .. } => {
            echo(
                out,
                &[
                    ("command", "prove".into()),
                    ("institution", kw),
                    ("depth", depth.to_string()),
                    ("witness-budget", witness_budget.to_string()),
                    ("oracle-bound", oracle_bound.to_string()),
                ],
            )?;
            let oracle = ins.oracle(*oracle_bound);
            let opts = ProveOptions { witness_budget: *witness_budget, ..ProveOptions::default() };
            for d in &t.sequents {
                let s = &d.value;
                match bounded_prove(ins, &s.gamma, &s.delta, &s.sig, *depth, oracle.as_ref(), opts)? {
                    ProveOutcome::Found(p) => {
                        let scope = t.sig_ctx(&d.over).map(|c| c.scope).unwrap_or_default();
                        let text = print_proof(ins, &format!("{}-proof", d.name), &d.over, &scope, &p).map_err(CliError::Resolve)?;
                        writeln!(out, "{text}").map_err(anyhow::Error::new)?;
                        report.records.push(record("prove", &d.name, true, format!("depth={}", p.depth())));
                    }
                    ProveOutcome::NotFoundWithin(n) => {
                        report.records.push(record("prove", &d.name, false, format!("no proof within depth {n}")));
                    }
                }
            }
        }
        Command::Laws { suite, model_bound, atom_budget, mediator_budget, cases, fault_injection, .. } => {
            let samples = Samples { model_bound: *model_bound, atom_budget: *atom_budget, mediator_budget: *mediator_budget };
            let budgets = [
                ("model-bound", model_bound.to_string()),
                ("atom-budget", atom_budget.to_string()),
                ("mediator-budget", mediator_budget.to_string()),
            ];
            match suite {
                Suite::Dex => {
                    let mut fields = vec![("command", "laws".into()), ("suite", "dex".into()), ("institution", kw)];
                    fields.extend(budgets);
                    echo(out, &fields)?;
                    let s = DexSamples {
                        signatures: t.signatures.iter().map(|(_, s)| s.clone()).collect(),
                        morphisms: t.morphisms.iter().map(|d| d.value.clone()).collect(),
                        model_bound: *model_bound,
                        atom_budget: *atom_budget,
                        mediator_budget: *mediator_budget,
                    };
                    report = check_dex_laws(ins, &s);
                }
                Suite::Morphism => {
                    let mut fields = vec![("command", "laws".into()), ("suite", "morphism".into()), ("institution", kw)];
                    fields.extend(budgets);
                    echo(out, &fields)?;
                    report = I::morphism_laws(t, &samples);
                }
                Suite::Cat => {
                    echo(
                        out,
                        &[
                            ("command", "laws".into()),
                            ("suite", "cat".into()),
                            ("seed", seed.to_string()),
                            ("cases", cases.to_string()),
                            ("section-budget", DEFAULT_SECTION_BUDGET.to_string()),
                        ],
                    )?;
                    for i in 0..*cases as u64 {
                        let case = generate_case(seed.wrapping_add(i));
                        let mut r = verify_construction_laws(&case.m, &case.etas, &case.functors, DEFAULT_SECTION_BUDGET);
                        for rec in &mut r.records {
                            rec.case = format!("seed{}:{}", case.seed, rec.case);
                        }
                        report.extend(r);
                    }
                }
                Suite::Soundness => {
                    let config = SweepConfig { seed, cases: *cases, fault_injection: *fault_injection, ..SweepConfig::default() };
                    echo(
                        out,
                        &[
                            ("command", "laws".into()),
                            ("suite", "soundness".into()),
                            ("seed", seed.to_string()),
                            ("cases", config.cases.to_string()),
                            ("sentence-depth", config.sentence_depth.to_string()),
                            ("proof-depth", config.proof_depth.to_string()),
                            ("carrier-bound", config.carrier_bound.to_string()),
                            ("fault-injection", config.fault_injection.to_string()),
                        ],
                    )?;
                    report = I::soundness(&config)?;
                }
            }
        }
        Command::Translate { morphism, .. } => {
            echo(out, &[("command", "translate".into()), ("institution", kw), ("morphism", morphism.clone())])?;
            let m = t.morphism(morphism).ok_or_else(|| CliError::Resolve(format!("unknown morphism `{morphism}`")))?;
            let cod = t.sig_ctx(&m.to).ok_or_else(|| CliError::Resolve(format!("unknown signature of `{morphism}`")))?;
            let mut names = BTreeSet::new();
            for d in t.sentences.iter().filter(|d| d.over == m.from) {
                let image = sentence::translate(ins, &m.value, &d.value)?;
                let name = format!("{}.{}", morphism, d.name);
                names.insert(name.clone());
                let v = vec![
                    SExpr::sym("sentence"),
                    SExpr::sym(name),
                    SExpr::sym(":over"),
                    t.print_sig_expr(&m.to),
                    print_sentence(ins, &cod, &image),
                ];
                writeln!(out, "{}", SExpr::list(v).pretty(100)).map_err(anyhow::Error::new)?;
                report.records.push(record("translate", &d.name, true, "-".into()));
            }
        }
    }
    Ok(report)
}

use std::fmt;

use super::oracle::{AtomicOracle, Judgment};
use super::tree::{premise_translation, Part, ProofTree, Rule, SentenceSet};
use crate::error::Result;
use crate::institution::Institution;
use crate::sentence::{self, Sentence};

/// Switches for the checker. The default checks every rule clause.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Accept any `θ: Σ^Dex[X] → Σ` in `ExistsR`, not only substitutions.
    /// Unsound; exists to show that the soundness harness notices.
    pub skip_exists_r_side_condition: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckReport {
    Valid,
    /// Every clause holds but the oracle was inconclusive at these `Atom` leaves.
    ConditionallyValid { inconclusive: Vec<Vec<usize>> },
    Invalid { path: Vec<usize>, clause: String },
}

impl CheckReport {
    pub fn is_valid(&self) -> bool {
        matches!(self, CheckReport::Valid)
    }
}

pub fn path_string(path: &[usize]) -> String {
    if path.is_empty() {
        "root".into()
    } else {
        path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckReport::Valid => write!(f, "valid"),
            CheckReport::ConditionallyValid { inconclusive } => write!(
                f,
                "conditionally-valid inconclusive={}",
                inconclusive.iter().map(|p| path_string(p)).collect::<Vec<_>>().join(",")
            ),
            CheckReport::Invalid { path, clause } => write!(f, "invalid at {}: {clause}", path_string(path)),
        }
    }
}

/// Checks every node of `t` against its rule schema and re-judges every
/// `Atom` leaf with `oracle`.
pub fn check_proof<I: Institution>(ins: &I, t: &ProofTree<I>, oracle: &dyn AtomicOracle<I>) -> CheckReport {
    check_proof_with(ins, t, oracle, CheckOptions::default())
}

pub fn check_proof_with<I: Institution>(
    ins: &I,
    t: &ProofTree<I>,
    oracle: &dyn AtomicOracle<I>,
    opts: CheckOptions,
) -> CheckReport {
    let mut inconclusive = Vec::new();
    for (path, node) in t.nodes() {
        match check_node(ins, node, oracle, opts) {
            Ok(None) => {}
            Ok(Some(Judgment::Inconclusive(_))) => inconclusive.push(path),
            Ok(Some(_)) => {}
            Err(clause) => return CheckReport::Invalid { path, clause },
        }
    }
    if inconclusive.is_empty() {
        CheckReport::Valid
    } else {
        CheckReport::ConditionallyValid { inconclusive }
    }
}

type Clause = std::result::Result<Option<Judgment>, String>;

fn lift<T>(r: Result<T>, clause: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{clause}: {e}"))
}

fn single<I: Institution>(set: &SentenceSet<I>) -> Option<&Sentence<I>> {
    if set.len() == 1 {
        set.iter().next()
    } else {
        None
    }
}

/// The premise parts a rule instance must have, given its conclusion part.
fn expected_premises<I: Institution>(
    ins: &I,
    node: &ProofTree<I>,
    opts: CheckOptions,
) -> std::result::Result<Vec<Part<I>>, String> {
    let c = &node.applied.conclusion;
    let sig = &node.root.sig;
    let left = || single(&c.left).filter(|_| c.right.is_empty());
    let right = || single(&c.right).filter(|_| c.left.is_empty());
    match &node.rule {
        Rule::Atom => Ok(Vec::new()),
        Rule::NegL => match left() {
            Some(Sentence::Not(phi)) => Ok(vec![Part::right((**phi).clone())]),
            _ => Err("neg-l.principal: conclusion part must be a single negation on the left".into()),
        },
        Rule::NegR => match right() {
            Some(Sentence::Not(phi)) => Ok(vec![Part::left((**phi).clone())]),
            _ => Err("neg-r.principal: conclusion part must be a single negation on the right".into()),
        },
        Rule::OrL => match left() {
            Some(Sentence::Or(v)) => Ok(v.iter().map(|p| Part::left(p.clone())).collect()),
            _ => Err("or-l.principal: conclusion part must be a single disjunction on the left".into()),
        },
        Rule::OrR(n) => match right() {
            Some(Sentence::Or(v)) => match v.get(*n) {
                Some(p) => Ok(vec![Part::right(p.clone())]),
                None => Err(format!("or-r.choice: disjunct index {n} outside 0..{}", v.len())),
            },
            _ => Err("or-r.principal: conclusion part must be a single disjunction on the right".into()),
        },
        Rule::ExistsL => match left() {
            Some(Sentence::Exists(x, phi)) => {
                if !ins.is_block(sig, x) {
                    return Err(format!("exists-l.block: {x} is not a block of {sig}"));
                }
                Ok(vec![Part::left((**phi).clone())])
            }
            _ => Err("exists-l.principal: conclusion part must be a single existential on the left".into()),
        },
        Rule::ExistsR(theta) => match right() {
            Some(Sentence::Exists(x, phi)) => {
                if !ins.is_block(sig, x) {
                    return Err(format!("exists-r.block: {x} is not a block of {sig}"));
                }
                let ext = lift(ins.extend(sig, x), "exists-r.block")?.extended;
                if ins.mor_dom(theta) != ext || ins.mor_cod(theta) != *sig {
                    return Err(format!("exists-r.typing: {theta} is not a morphism {ext} → {sig}"));
                }
                if !opts.skip_exists_r_side_condition
                    && !lift(sentence::is_substitution(ins, sig, x, theta), "exists-r.substitution")?
                {
                    return Err(format!("exists-r.substitution: {theta} ∘ inclusion is not the identity"));
                }
                let inst = lift(sentence::translate(ins, theta, phi), "exists-r.instance")?;
                Ok(vec![Part::right(inst)])
            }
            _ => Err("exists-r.principal: conclusion part must be a single existential on the right".into()),
        },
    }
}

/// Side-sentence clause for one side: the premise sides are translations of
/// sentences in the conclusion, and every conclusion sentence is either
/// principal or a side sentence of some premise.
fn sides_ok<I: Institution>(
    root: &SentenceSet<I>,
    principal: &SentenceSet<I>,
    premises: &[(&SentenceSet<I>, &SentenceSet<I>, Vec<Sentence<I>>)],
) -> bool {
    if !principal.is_subset(root) {
        return false;
    }
    let mut covered: Vec<bool> = root.iter().map(|s| principal.contains(s)).collect();
    for (prem, prem_principal, images) in premises {
        if !prem_principal.is_subset(prem) {
            return false;
        }
        let mut reached = SentenceSet::<I>::new();
        for (k, img) in images.iter().enumerate() {
            if prem.contains(img) {
                covered[k] = true;
                reached.insert(img.clone());
            }
        }
        if prem.iter().any(|s| !prem_principal.contains(s) && !reached.contains(s)) {
            return false;
        }
    }
    covered.into_iter().all(|c| c)
}

fn check_node<I: Institution>(ins: &I, node: &ProofTree<I>, oracle: &dyn AtomicOracle<I>, opts: CheckOptions) -> Clause {
    lift(node.root.check(ins), "root.well-formed")?;
    let c = &node.applied.conclusion;
    if node.applied.premises.len() != node.premises.len() {
        return Err(format!(
            "applied.arity: {} applied premises for {} premise trees",
            node.applied.premises.len(),
            node.premises.len()
        ));
    }
    if let Rule::Atom = node.rule {
        if !node.premises.is_empty() {
            return Err("atom.arity: atom leaves have no premises".into());
        }
        if !c.left.iter().chain(&c.right).all(Sentence::is_atomic) {
            return Err("atom.atomic: applied part contains a compound sentence".into());
        }
        if !c.left.is_subset(&node.root.gamma) || !c.right.is_subset(&node.root.delta) {
            return Err("atom.sides: applied part not contained in the root".into());
        }
        let gb: Vec<I::Atom> = super::tree::Sequent::<I>::atoms(&c.left);
        let db: Vec<I::Atom> = super::tree::Sequent::<I>::atoms(&c.right);
        return match lift(oracle.judge(&node.root.sig, &gb, &db), "atom.oracle")? {
            Judgment::Refuted => Err(format!("atom.oracle: base entailment refuted for {c}")),
            j => Ok(Some(j)),
        };
    }
    let expected = expected_premises(ins, node, opts)?;
    if expected.len() != node.premises.len() {
        return Err(format!(
            "{}.arity: expected {} premises, found {}",
            node.rule.keyword(),
            expected.len(),
            node.premises.len()
        ));
    }
    if expected != node.applied.premises {
        return Err(format!("{}.applied: premise parts do not match the rule", node.rule.keyword()));
    }
    let (psig, iota) = lift(premise_translation(ins, &node.rule, c, &node.root.sig), "premise.signature")?;
    for p in &node.premises {
        if p.root.sig != psig {
            return Err(format!("{}.signature: premise at {} instead of {psig}", node.rule.keyword(), p.root.sig));
        }
    }
    if node.premises.is_empty() {
        // falsum on the left: the sides are arbitrary
        if !c.left.is_subset(&node.root.gamma) || !c.right.is_subset(&node.root.delta) {
            return Err(format!("{}.sides: applied part not contained in the root", node.rule.keyword()));
        }
        return Ok(None);
    }
    let image = |set: &SentenceSet<I>| -> std::result::Result<Vec<Sentence<I>>, String> {
        set.iter().map(|s| lift(sentence::translate(ins, &iota, s), "premise.translation")).collect()
    };
    let img_g = image(&node.root.gamma)?;
    let img_d = image(&node.root.delta)?;
    let left: Vec<_> = node
        .premises
        .iter()
        .zip(&node.applied.premises)
        .map(|(p, part)| (&p.root.gamma, &part.left, img_g.clone()))
        .collect();
    if !sides_ok(&node.root.gamma, &c.left, &left) {
        return Err(format!("{}.sides-left: antecedents do not match the schema", node.rule.keyword()));
    }
    let right: Vec<_> = node
        .premises
        .iter()
        .zip(&node.applied.premises)
        .map(|(p, part)| (&p.root.delta, &part.right, img_d.clone()))
        .collect();
    if !sides_ok(&node.root.delta, &c.right, &right) {
        return Err(format!("{}.sides-right: succedents do not match the schema", node.rule.keyword()));
    }
    Ok(None)
}

use std::collections::{BTreeMap, BTreeSet};

use dexlogic::instances::fol0::*;
use dexlogic::institution::Institution;
use dexlogic::semantics::{semantic_sequent, Verdict};
use dexlogic::sentence::{self, Sentence};
use dexlogic::sequent::*;

type S = Sentence<Fol0>;

fn sig() -> Fol0Sig {
    Fol0Sig::build(&["s"], &[("c", &[], "s")], &[("P", &["s"]), ("Q", &["s"]), ("R", &["s"])], false).unwrap()
}

fn c() -> Term {
    Term::app("c", vec![])
}

fn pc(p: &str) -> S {
    Sentence::Atom(Fol0Atom::pred(p, vec![c()]))
}

fn set(v: &[S]) -> BTreeSet<S> {
    v.iter().cloned().collect()
}

fn x_block(sig: &Fol0Sig) -> Fol0Block {
    Fol0Block::new(sig, [("x".into(), "s".into())])
}

fn exists_p(sig: &Fol0Sig) -> S {
    let x = x_block(sig);
    Sentence::exists(x.clone(), Sentence::Atom(Fol0Atom::pred("P", vec![Term::constant(x.symbol("x"))])))
}

fn valid(t: &ProofTree<Fol0>) {
    let report = check_proof(&Fol0::default(), t, &CongruenceOracle);
    assert_eq!(report, CheckReport::Valid, "{t}");
}

#[test]
fn single_atom_leaf_is_valid() {
    let s = sig();
    let t = ProofTree::atom_leaf(Sequent::new([pc("P")], s, [pc("P")]), set(&[pc("P")]), set(&[pc("P")]));
    valid(&t);
}

#[test]
fn atom_leaf_with_unentailed_base_is_invalid() {
    let s = sig();
    let t = ProofTree::atom_leaf(Sequent::new([pc("P")], s, [pc("Q")]), set(&[pc("P")]), set(&[pc("Q")]));
    match check_proof(&Fol0::default(), &t, &CongruenceOracle) {
        CheckReport::Invalid { path, clause } => {
            assert!(path.is_empty());
            assert!(clause.starts_with("atom.oracle"), "{clause}");
        }
        r => panic!("{r}"),
    }
}

#[test]
fn negation_init_has_the_neg_r_over_neg_l_shape() {
    let s = sig();
    let psi = Sentence::not(pc("P"));
    let t = init_proof(&Fol0::default(), &BTreeSet::new(), &BTreeSet::new(), &s, &psi).unwrap();
    assert_eq!(t.rule, Rule::NegR);
    assert_eq!(t.premises[0].rule, Rule::NegL);
    assert_eq!(t.premises[0].premises[0].rule, Rule::Atom);
    assert!(t.proves(&set(std::slice::from_ref(&psi)), &s, &set(&[psi])));
    valid(&t);
}

#[test]
fn out_of_range_disjunct_is_invalid() {
    let s = sig();
    let disj = Sentence::Or(vec![pc("P"), pc("Q")]);
    let leaf = ProofTree::atom_leaf(Sequent::new([pc("P")], s.clone(), [pc("P")]), set(&[pc("P")]), set(&[pc("P")]));
    let t = ProofTree {
        rule: Rule::OrR(2),
        premises: vec![leaf],
        root: Sequent::new([pc("P")], s, [disj.clone()]),
        applied: Applied { premises: vec![Part::right(pc("P"))], conclusion: Part::right(disj) },
    };
    match check_proof(&Fol0::default(), &t, &CongruenceOracle) {
        CheckReport::Invalid { path, clause } => {
            assert!(path.is_empty());
            assert!(clause.starts_with("or-r.choice"), "{clause}");
        }
        r => panic!("{r}"),
    }
}

#[test]
fn existential_init_matches_the_two_step_shape() {
    let ins = Fol0::default();
    let s = sig();
    let psi = exists_p(&s);
    let t = init_proof(&ins, &set(&[pc("Q")]), &BTreeSet::new(), &s, &psi).unwrap();
    assert_eq!(t.rule, Rule::ExistsL);
    assert!(matches!(t.premises[0].rule, Rule::ExistsR(_)));
    let ext = ins.extend(&s, &x_block(&s)).unwrap().extended;
    assert_eq!(t.premises[0].root.sig, ext);
    assert!(t.proves(&set(&[psi.clone(), pc("Q")]), &s, &set(&[psi])));
    valid(&t);
}

#[test]
fn falsum_init_uses_zero_premise_or_l() {
    let s = sig();
    let bot = Sentence::falsum();
    let t = init_proof(&Fol0::default(), &BTreeSet::new(), &set(&[pc("R")]), &s, &bot).unwrap();
    assert_eq!(t.rule, Rule::OrL);
    assert!(t.premises.is_empty());
    assert!(t.proves(&set(std::slice::from_ref(&bot)), &s, &set(&[bot, pc("R")])));
    valid(&t);
}

#[test]
fn modify_along_identity_is_the_same_tree() {
    let ins = Fol0::default();
    let s = sig();
    let psi = Sentence::Or(vec![exists_p(&s), Sentence::not(pc("Q"))]);
    let t = init_proof(&ins, &BTreeSet::new(), &BTreeSet::new(), &s, &psi).unwrap();
    let m = modify_proof(&ins, &ins.identity(&s), &t, &t.root.gamma, &t.root.delta).unwrap();
    assert_eq!(m, t);
}

#[test]
fn modify_renames_and_weakens() {
    let ins = Fol0::default();
    let s = sig();
    let rename = Fol0Mor::new(
        s.clone(),
        s.clone(),
        BTreeMap::from([("s".into(), "s".into())]),
        BTreeMap::from([(Sym::named("c"), c())]),
        BTreeMap::from([("P".into(), "Q".into()), ("Q".into(), "Q".into()), ("R".into(), "R".into())]),
    )
    .unwrap();
    let t = ProofTree::atom_leaf(Sequent::new([pc("P")], s.clone(), [pc("P")]), set(&[pc("P")]), set(&[pc("P")]));
    let m = modify_proof(&ins, &rename, &t, &set(&[pc("Q"), pc("R")]), &set(&[pc("Q")])).unwrap();
    assert!(m.proves(&set(&[pc("Q"), pc("R")]), &s, &set(&[pc("Q")])));
    valid(&m);
}

#[test]
fn modify_moves_exists_l_premises_to_the_translated_extension() {
    let ins = Fol0::default();
    let s = sig();
    let bigger = Fol0Sig::build(
        &["s"],
        &[("c", &[], "s"), ("d", &[], "s")],
        &[("P", &["s"]), ("Q", &["s"]), ("R", &["s"])],
        false,
    )
    .unwrap();
    let chi = Fol0Mor::inclusion(&s, &bigger).unwrap();
    let psi = exists_p(&s);
    let t = init_proof(&ins, &BTreeSet::new(), &BTreeSet::new(), &s, &psi).unwrap();
    let moved = sentence::translate(&ins, &chi, &psi).unwrap();
    let m = modify_proof(&ins, &chi, &t, &set(std::slice::from_ref(&moved)), &set(&[moved])).unwrap();
    let x2 = ins.translate_block(&chi, &x_block(&s)).unwrap();
    assert_eq!(m.premises[0].root.sig, ins.extend(&bigger, &x2).unwrap().extended);
    valid(&m);
}

#[test]
fn modify_rejects_a_target_missing_the_translation() {
    let ins = Fol0::default();
    let s = sig();
    let t = ProofTree::atom_leaf(Sequent::new([pc("P")], s.clone(), [pc("P")]), set(&[pc("P")]), set(&[pc("P")]));
    assert!(modify_proof(&ins, &ins.identity(&s), &t, &BTreeSet::new(), &set(&[pc("P")])).is_err());
}

#[test]
fn cut_with_psi_in_a_side_set_weakens_the_left_proof() {
    let ins = Fol0::default();
    let s = sig();
    let p = pc("P");
    let t = init_proof(&ins, &BTreeSet::new(), &BTreeSet::new(), &s, &p).unwrap();
    let t2 = init_proof(&ins, &set(&[pc("Q")]), &BTreeSet::new(), &s, &p).unwrap();
    let delta = set(std::slice::from_ref(&p));
    let out = cut_proof(&ins, &set(std::slice::from_ref(&p)), &set(&[pc("Q")]), &delta, &set(std::slice::from_ref(&p)), &p, &t, &t2).unwrap();
    let expect = modify_proof(&ins, &ins.identity(&s), &t, &set(&[p.clone(), pc("Q")]), &set(std::slice::from_ref(&p))).unwrap();
    assert_eq!(out, expect);
    valid(&out);
}

fn p_leaf(s: &Fol0Sig) -> ProofTree<Fol0> {
    ProofTree::atom_leaf(Sequent::new([pc("P")], s.clone(), [pc("P")]), set(&[pc("P")]), set(&[pc("P")]))
}

#[test]
fn cut_on_a_principal_negation_reduces_with_swapped_roles() {
    let ins = Fol0::default();
    let s = sig();
    let psi = Sentence::not(pc("P"));
    // ⊢ P(c), ¬P(c) by NegR over P(c) ⊢ P(c)
    let t = ProofTree {
        rule: Rule::NegR,
        premises: vec![p_leaf(&s)],
        root: Sequent::new([], s.clone(), [pc("P"), psi.clone()]),
        applied: Applied { premises: vec![Part::left(pc("P"))], conclusion: Part::right(psi.clone()) },
    };
    // ¬P(c), P(c) ⊢ by NegL over P(c) ⊢ P(c)
    let t2 = ProofTree {
        rule: Rule::NegL,
        premises: vec![p_leaf(&s)],
        root: Sequent::new([psi.clone(), pc("P")], s.clone(), []),
        applied: Applied { premises: vec![Part::right(pc("P"))], conclusion: Part::left(psi.clone()) },
    };
    valid(&t);
    valid(&t2);
    let mut trace = CutTrace::default();
    let out = cut_proof_traced(
        &ins,
        &BTreeSet::new(),
        &set(&[pc("P")]),
        &set(&[pc("P")]),
        &BTreeSet::new(),
        &psi,
        &t,
        &t2,
        &mut trace,
    )
    .unwrap();
    assert!(out.proves(&set(&[pc("P")]), &s, &set(&[pc("P")])));
    assert!(trace.violations.is_empty(), "{trace:?}");
    assert_eq!(trace.measures[0].0, 2);
    assert!(trace.measures.iter().any(|m| m.0 == 1), "{:?}", trace.measures);
    valid(&out);
}

#[test]
fn cut_on_a_principal_existential_instantiates_the_left_premise() {
    let ins = Fol0::default();
    let s = sig();
    let psi = exists_p(&s);
    let pc_ = pc("P");
    // P(c) ⊢ ∃x.P(x) via ExistsR with x ↦ c
    let theta = ins.substitution_candidates(&s, &x_block(&s), 1).unwrap().remove(0);
    let leaf = ProofTree::atom_leaf(Sequent::new([pc_.clone()], s.clone(), [pc_.clone()]), set(std::slice::from_ref(&pc_)), set(std::slice::from_ref(&pc_)));
    let t = ProofTree {
        rule: Rule::ExistsR(theta),
        premises: vec![leaf],
        root: Sequent::new([pc_.clone()], s.clone(), [psi.clone()]),
        applied: Applied { premises: vec![Part::right(pc_.clone())], conclusion: Part::right(psi.clone()) },
    };
    valid(&t);
    // ∃x.P(x) ⊢ ∃x.P(x) with ∃ principal on the left
    let t2 = init_proof(&ins, &BTreeSet::new(), &BTreeSet::new(), &s, &psi).unwrap();
    let out = cut_proof(&ins, &set(std::slice::from_ref(&pc_)), &BTreeSet::new(), &BTreeSet::new(), &set(std::slice::from_ref(&psi)), &psi, &t, &t2)
        .unwrap();
    assert!(out.proves(&set(&[pc_]), &s, &set(&[psi])));
    valid(&out);
}

#[test]
fn cut_on_an_atom_between_two_leaves() {
    let ins = Fol0::default();
    let s = sig();
    let p = pc("P");
    let t = ProofTree::atom_leaf(Sequent::new([p.clone()], s.clone(), [p.clone()]), set(std::slice::from_ref(&p)), set(std::slice::from_ref(&p)));
    let t2 = init_proof(&ins, &set(&[pc("Q")]), &BTreeSet::new(), &s, &p).unwrap();
    let out = cut_proof(&ins, &set(std::slice::from_ref(&p)), &set(&[pc("Q")]), &BTreeSet::new(), &set(std::slice::from_ref(&p)), &p, &t, &t2)
        .unwrap();
    valid(&out);
}

#[test]
fn bounded_prove_finds_reflexivity_at_depth_one() {
    let ins = Fol0::default();
    let s = sig();
    let out = bounded_prove(&ins, &set(&[pc("P")]), &set(&[pc("P")]), &s, 1, &CongruenceOracle, ProveOptions::default())
        .unwrap();
    let t = out.proof().expect("found").clone();
    assert_eq!(t.depth(), 0);
    valid(&t);
}

#[test]
fn bounded_prove_finds_excluded_middle() {
    let ins = Fol0::default();
    let s = sig();
    let em = Sentence::Or(vec![pc("P"), Sentence::not(pc("P"))]);
    let out =
        bounded_prove(&ins, &BTreeSet::new(), &set(std::slice::from_ref(&em)), &s, 3, &CongruenceOracle, ProveOptions::default())
            .unwrap();
    let t = out.proof().expect("found within depth 3").clone();
    assert_eq!(t.depth(), 3);
    valid(&t);
    assert!(semantic_sequent(&ins, &[], &[em], &s, 2).unwrap().holds());
}

#[test]
fn bounded_prove_fails_on_an_unprovable_atom() {
    let ins = Fol0::default();
    let s = sig();
    for d in 1..=4 {
        let out =
            bounded_prove(&ins, &BTreeSet::new(), &set(&[pc("P")]), &s, d, &CongruenceOracle, ProveOptions::default())
                .unwrap();
        assert_eq!(out, ProveOutcome::NotFoundWithin(d));
    }
    match semantic_sequent(&ins, &[], &[pc("P")], &s, 1).unwrap() {
        Verdict::Countermodel(m) => assert!(m.pred_table("P").unwrap().iter().all(|b| !b)),
        v => panic!("{v}"),
    }
}

#[test]
fn bounded_prove_instantiates_existentials() {
    let ins = Fol0::default();
    let s = sig();
    let psi = exists_p(&s);
    let out = bounded_prove(&ins, &set(&[pc("P")]), &set(&[psi]), &s, 2, &CongruenceOracle, ProveOptions::default())
        .unwrap();
    valid(out.proof().expect("found"));
}

#[test]
fn semantic_countermodel_for_existential_hypothesis() {
    let ins = Fol0::default();
    let s = Fol0Sig::build(&["s"], &[("c", &[], "s")], &[("P", &["s"])], false).unwrap();
    let psi = exists_p(&s);
    match semantic_sequent(&ins, &[psi], &[pc("P")], &s, 2).unwrap() {
        Verdict::Countermodel(m) => {
            assert_eq!(m.carrier("s"), 2);
            assert_eq!(m.pred_table("P").unwrap(), &vec![false, true]);
            assert_eq!(m.eval(&c()).unwrap(), 0);
        }
        v => panic!("{v}"),
    }
}

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dexlogic::compactness::*;
use dexlogic::instances::fol0::*;
use dexlogic::institution::Institution;
use dexlogic::sentence::Sentence;
use dexlogic::sequent::{CongruenceOracle, ProveOptions, Sequent};

fn base() -> Fol0Sig {
    Fol0Sig::build(&["s"], &[("c", &[], "s")], &[("P", &["s"])], false).unwrap()
}

fn grown() -> Fol0Sig {
    Fol0Sig::build(&["s"], &[("c", &[], "s"), ("d", &[], "s")], &[("P", &["s"]), ("Q", &["s"])], false).unwrap()
}

fn atom(p: &str, c: &str) -> Sentence<Fol0> {
    Sentence::Atom(Fol0Atom::pred(p, vec![Term::app(c, vec![])]))
}

fn two_step() -> ModifyChain<Fol0> {
    let (a, b) = (base(), grown());
    let t0 = Sequent::new([atom("P", "c")], a.clone(), []);
    let t1 = Sequent::new([atom("P", "c")], b.clone(), [atom("Q", "d")]);
    ModifyChain { objects: vec![t0, t1], links: vec![Fol0Mor::inclusion(&a, &b).unwrap()] }
}

#[test]
fn colimit_of_a_chain_is_its_last_theory() {
    let ins = Fol0::default();
    let chain = two_step();
    let colimit = chain_colimit(&ins, &chain).unwrap();
    assert_eq!(colimit.apex, chain.objects[1]);
    assert_eq!(colimit.injections.len(), 2);
    assert_eq!(colimit.injections[1], ins.identity(&grown()));
    assert_eq!(colimit.injections[0], chain.links[0]);
}

#[test]
fn link_that_drops_a_sentence_is_rejected() {
    let ins = Fol0::default();
    let mut chain = two_step();
    chain.objects[1].gamma.clear();
    assert!(matches!(check_chain(&ins, &chain), Err(dexlogic::Error::Precondition(_))));
    chain.links.clear();
    assert!(check_chain(&ins, &chain).is_err());
}

#[test]
fn consistent_chain_passes() {
    let ins = Fol0::default();
    let report = check_chain_compactness(&ins, &two_step(), 4, &CongruenceOracle, ProveOptions::default()).unwrap().unwrap();
    assert!(report.all_passed());
    assert_eq!(report.count_law("compactness.cocone"), 2);
    assert_eq!(report.count_law("compactness.consistency"), 1);
}

#[test]
fn provable_link_makes_the_check_vacuous() {
    let ins = Fol0::default();
    let mut chain = two_step();
    chain.objects[1].delta.insert(atom("P", "c"));
    assert!(check_chain_compactness(&ins, &chain, 4, &CongruenceOracle, ProveOptions::default()).unwrap().is_none());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn random_chains_are_chains(seed in any::<u64>(), length in 0usize..4) {
        let ins = Fol0::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chain = random_fol0_chain(&ins, &mut rng, length, 2).unwrap();
        prop_assert_eq!(chain.links.len(), length);
        check_chain(&ins, &chain).unwrap();
        let colimit = chain_colimit(&ins, &chain).unwrap();
        prop_assert_eq!(&colimit.apex, chain.objects.last().unwrap());
    }
}

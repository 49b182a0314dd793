use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dexlogic::corpus;
use dexlogic::instances::fol0::*;
use dexlogic::institution::Institution;
use dexlogic::semantics::{is_countermodel, semantic_sequent, soundness_sweep, ModelCache, SweepConfig, Verdict};
use dexlogic::sentence::Sentence;
use dexlogic::sequent::CongruenceOracle;

type S = Sentence<Fol0>;

fn drinker_sig() -> Fol0Sig {
    Fol0Sig::build(&["s"], &[("c", &[], "s")], &[("P", &["s"])], false).unwrap()
}

fn pc() -> S {
    Sentence::Atom(Fol0Atom::pred("P", vec![Term::app("c", vec![])]))
}

fn exists_p(sig: &Fol0Sig) -> S {
    let x = Fol0Block::new(sig, [("x".into(), "s".into())]);
    Sentence::exists(x.clone(), Sentence::Atom(Fol0Atom::pred("P", vec![Term::constant(x.symbol("x"))])))
}

#[test]
fn instance_entails_existential() {
    let ins = Fol0::default();
    let s = drinker_sig();
    let v = semantic_sequent(&ins, &BTreeSet::from([pc()]), &BTreeSet::from([exists_p(&s)]), &s, 3).unwrap();
    assert_eq!(v, Verdict::Holds(3));
}

#[test]
fn existential_alone_has_a_one_element_countermodel() {
    let ins = Fol0::default();
    let s = drinker_sig();
    let v = semantic_sequent(&ins, &BTreeSet::new(), &BTreeSet::from([exists_p(&s)]), &s, 2).unwrap();
    let m = v.countermodel().expect("countermodel");
    assert_eq!(m.carrier("s"), 1);
    assert!(is_countermodel(&ins, m, &[], &[exists_p(&s)]).unwrap());
}

#[test]
fn streaming_matches_materialized_enumeration() {
    let ins = Fol0::default();
    let s = Fol0Sig::build(&["s", "t"], &[("c", &[], "s"), ("f", &["s"], "t")], &[("P", &["t"])], false).unwrap();
    let all = ins.models(&s, 2).unwrap();
    let mut streamed = Vec::new();
    ins.for_each_model(&s, 2, &mut |m| {
        streamed.push(m.clone());
        Ok(false)
    })
    .unwrap();
    assert_eq!(all, streamed);
    let mut first = Vec::new();
    ins.for_each_model(&s, 2, &mut |m| {
        first.push(m.clone());
        Ok(first.len() == 5)
    })
    .unwrap();
    assert_eq!(first, all[..5]);
}

#[test]
fn model_cap_is_checked_before_streaming() {
    let ins = Fol0 { model_cap: 10, ..Fol0::default() };
    let s = drinker_sig();
    let mut visited = 0;
    let r = ins.for_each_model(&s, 3, &mut |_| {
        visited += 1;
        Ok(true)
    });
    assert!(matches!(r, Err(dexlogic::Error::Budget(_))));
    assert_eq!(visited, 0);
}

#[test]
fn sweep_is_clean_and_deterministic() {
    let cfg = SweepConfig { cases: 20, ..SweepConfig::default() };
    let a = soundness_sweep(&cfg, &CongruenceOracle);
    assert!(a.report.all_passed(), "{:?}", a.report.failures().next());
    assert!(a.valid > 0);
    assert!(a.report.count_law("satisfaction-condition") > 0);
    assert!(a.report.count_law("admissibility") > 0);
    let b = soundness_sweep(&cfg, &CongruenceOracle);
    assert_eq!(a.report, b.report);
}

#[test]
fn fault_injection_is_caught() {
    let cfg = SweepConfig { seed: 1, cases: 40, fault_injection: true, ..SweepConfig::default() };
    let r = soundness_sweep(&cfg, &CongruenceOracle);
    assert!(r.violations("soundness") >= 1);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn cache_agrees_with_direct_search(seed in any::<u64>(), entry_limit in 0usize..40) {
        let ins = Fol0::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = corpus::random_fol0_signature(&mut rng, 1, 2).unwrap();
        let cache = ModelCache::with_limits(entry_limit, 60);
        for _ in 0..4 {
            let g: BTreeSet<S> = [corpus::random_sentence(&ins, &mut rng, &s, 2, 1).unwrap()].into();
            let d: BTreeSet<S> = [corpus::random_sentence(&ins, &mut rng, &s, 2, 1).unwrap()].into();
            for _ in 0..2 {
                let cached = cache.semantic_sequent(&ins, &g, &d, &s, 2).unwrap();
                prop_assert_eq!(cached, semantic_sequent(&ins, &g, &d, &s, 2).unwrap());
            }
        }
    }
}

use std::collections::BTreeMap;

use dexlogic::instances::fol0::*;
use dexlogic::institution::{check_dex_laws, lift_expansion, DexSamples, Institution};

fn unary() -> Fol0Sig {
    Fol0Sig::build(&["s"], &[("c", &[], "s")], &[("P", &["s"]), ("Q", &["s"])], false).unwrap()
}

fn two_sorted() -> Fol0Sig {
    Fol0Sig::build(&["s", "t"], &[("c", &[], "s"), ("f", &["s"], "t")], &[("P", &["t"])], true).unwrap()
}

fn swap_pq(sig: &Fol0Sig) -> Fol0Mor {
    Fol0Mor::new(
        sig.clone(),
        sig.clone(),
        BTreeMap::from([("s".into(), "s".into())]),
        BTreeMap::from([(Sym::named("c"), Term::app("c", vec![]))]),
        BTreeMap::from([("P".into(), "Q".into()), ("Q".into(), "P".into())]),
    )
    .unwrap()
}

#[test]
fn dex_laws_hold_on_small_signatures() {
    let ins = Fol0::with_var_budget(2);
    let a = unary();
    let b = two_sorted();
    let collapse = Fol0Mor::new(
        a.clone(),
        b.clone(),
        BTreeMap::from([("s".into(), "t".into())]),
        BTreeMap::from([(Sym::named("c"), Term::app("f", vec![Term::app("c", vec![])]))]),
        BTreeMap::from([("P".into(), "P".into()), ("Q".into(), "P".into())]),
    )
    .unwrap();
    let samples = DexSamples {
        signatures: vec![a.clone(), b.clone()],
        morphisms: vec![swap_pq(&a), collapse],
        model_bound: 2,
        atom_budget: 1,
        mediator_budget: 1,
    };
    let report = check_dex_laws(&ins, &samples);
    let failures: Vec<String> = report.failures().map(|r| r.to_string()).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
    assert!(report.count_law("dex.pushout") > 0);
    assert!(report.count_law("dex.unique-lift") > 0);
}

#[test]
fn lift_is_unique_along_a_sort_collapse() {
    let ins = Fol0::default();
    let a = unary();
    let chi = swap_pq(&a);
    let x = Fol0Block::new(&a, [("x".into(), "s".into())]);
    for m in ins.models(&a, 2).unwrap() {
        let red = ins.reduct(&chi, &m).unwrap();
        for e in ins.expansions(&red, &x).unwrap() {
            lift_expansion(&ins, &chi, &m, &x, &e).unwrap();
        }
    }
}

mod morphisms {
    use super::*;
    use dexlogic::morphism::*;
    use dexlogic::sentence::Sentence;

    fn eq_sig() -> Fol0Sig {
        Fol0Sig::build(&["s"], &[("c", &[], "s"), ("d", &[], "s")], &[("P", &["s"])], true).unwrap()
    }

    fn samples<M: InstitutionMorphism<Src = Fol0, Tgt = Fol0>>(m: &M) -> MorphismSamples<M> {
        let sig = eq_sig();
        let swap = Fol0Mor::new(
            sig.clone(),
            sig.clone(),
            BTreeMap::from([("s".into(), "s".into())]),
            BTreeMap::from([(Sym::named("c"), Term::app("d", vec![])), (Sym::named("d"), Term::app("c", vec![]))]),
            BTreeMap::from([("P".into(), "P".into())]),
        )
        .unwrap();
        let image = m.map_sig(&sig).unwrap();
        let x = Fol0Block::new(&image, [("x".into(), "s".into())]);
        let eq = Fol0Atom::Eq(Term::constant(x.symbol("x")), Term::app("c", vec![]));
        let phi = Sentence::exists(x.clone(), Sentence::not(Sentence::Atom(eq)));
        MorphismSamples {
            morphisms: vec![swap],
            signatures: vec![sig.clone()],
            model_bound: 2,
            atom_budget: 0,
            mediator_budget: 0,
            sentences: vec![(sig, phi)],
        }
    }

    #[test]
    fn forget_predicates_passes_all_laws() {
        let m = forget_predicates_morphism(Fol0::default());
        let report = check_morphism_laws(&m, &samples(&m));
        let failures: Vec<String> = report.failures().map(|r| r.to_string()).take(10).collect();
        assert!(failures.is_empty(), "{}", failures.join("\n"));
        for law in ["morphism.mdex1", "morphism.mdex2", "morphism.mdex3", "morphism.universal", "morphism.unique-lift", "morphism.compound-satisfaction"] {
            assert!(report.count_law(law) > 0, "{law} not exercised");
        }
    }

    #[test]
    fn corrupted_blocks_break_mdex3() {
        let m = CorruptBlocks(forget_predicates_morphism(Fol0::default()));
        let report = check_morphism_laws(&m, &samples(&m));
        assert!(report.failures().any(|r| r.law == "morphism.mdex3"));
    }

    #[test]
    fn composites_with_identity_agree_componentwise() {
        let fol = Fol0::default();
        let m = forget_predicates_morphism(fol.clone());
        let left = compose_morphisms(IdentityMorphism(fol.clone()), m.clone()).unwrap();
        let right = compose_morphisms(m.clone(), IdentityMorphism(fol.clone())).unwrap();
        let sig = eq_sig();
        let image = m.map_sig(&sig).unwrap();
        for x in fol.blocks(&image) {
            assert_eq!(left.ext(&sig, &x).unwrap(), m.ext(&sig, &x).unwrap());
            assert_eq!(right.ext(&sig, &x).unwrap(), m.ext(&sig, &x).unwrap());
            assert_eq!(left.map_block(&sig, &x).unwrap(), m.map_block(&sig, &x).unwrap());
        }
        let report = check_morphism_laws(&left, &samples(&left));
        assert!(report.all_passed());
    }
}

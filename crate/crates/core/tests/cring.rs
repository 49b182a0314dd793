use std::collections::BTreeMap;

use dexlogic::instances::cring::*;
use dexlogic::instances::fol0::Sym;
use dexlogic::institution::{check_dex_laws, DexSamples};

#[test]
fn dex_laws_hold_for_rings() {
    let ins = CRing { var_budget: 2, ..CRing::default() };
    let z6 = FiniteRing::zn(6).unwrap();
    let z3 = FiniteRing::zn(3).unwrap();
    let a = CRingSig::named(&z6, &["x"]);
    let b = CRingSig::named(&z3, &["y"]);
    let reduce = CRingMor::new(
        a.clone(),
        b.clone(),
        vec![0, 1, 2, 0, 1, 2],
        BTreeMap::from([(Sym::named("x"), Poly::var(&z3, Sym::named("y")).mul(&z3, &Poly::var(&z3, Sym::named("y"))))]),
    )
    .unwrap();
    let samples = DexSamples {
        signatures: vec![a, b],
        morphisms: vec![reduce],
        model_bound: 3,
        atom_budget: 1,
        mediator_budget: 1,
    };
    let report = check_dex_laws(&ins, &samples);
    let failures: Vec<String> = report.failures().map(|r| r.to_string()).take(10).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
    assert!(report.count_law("dex.unique-lift") > 0);
}

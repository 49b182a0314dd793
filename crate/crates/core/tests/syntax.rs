use std::collections::BTreeSet;

use dexlogic::corpus;
use dexlogic::instances::cring::{CRing, CRingSig, FiniteRing};
use dexlogic::instances::fol0::Fol0;
use dexlogic::institution::Institution;
use dexlogic::sentence::Sentence;
use dexlogic::sequent::{bounded_prove, check_proof, init_proof, CongruenceOracle, ModelOracle, ProveOptions, Sequent};
use dexlogic::syntax::{load, AnyTheory, Decl, ErrorKind, MorphismDecl, SigExpr, Theory};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn named<I: Institution>(n: &str) -> SigExpr<I> {
    SigExpr::Name(n.to_string())
}

fn round_trip(t: AnyTheory) {
    let text = t.print().expect("printable");
    let back = load(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    assert_eq!(back, t, "\n{text}");
    assert_eq!(back.print().unwrap(), text);
}

fn fol0_theory(seed: u64) -> Theory<Fol0> {
    let ins = Fol0::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = corpus::random_fol0_signature(&mut rng, 2, 3).unwrap();
    let b = corpus::random_fol0_signature(&mut rng, 2, 3).unwrap();
    let mut t = Theory::new(ins.clone());
    t.signatures.push(("A".into(), a.clone()));
    t.signatures.push(("B".into(), b.clone()));
    if let Some(m) = ins.morphisms_between(&a, &b, 1).choose(&mut rng) {
        t.morphisms.push(MorphismDecl { name: "m".into(), from: named("A"), to: named("B"), value: m.clone() });
    }
    if let Some(m) = ins.models(&a, 2).unwrap().choose(&mut rng) {
        t.models.push(Decl { name: "M".into(), over: named("A"), value: m.clone() });
    }
    let sentences: Vec<Sentence<Fol0>> =
        (0..3).map(|_| corpus::random_sentence(&ins, &mut rng, &a, 3, 1).unwrap()).collect();
    for (i, s) in sentences.iter().enumerate() {
        t.sentences.push(Decl { name: format!("s{i}"), over: named("A"), value: s.clone() });
    }
    let seq = Sequent::new(sentences[..1].to_vec(), a.clone(), sentences[1..].to_vec());
    t.sequents.push(Decl { name: "q".into(), over: named("A"), value: seq.clone() });
    let init = init_proof(&ins, &seq.gamma, &seq.delta, &a, &sentences[2]).unwrap();
    t.proofs.push(Decl { name: "p0".into(), over: named("A"), value: init });
    let goal = corpus::random_sentence(&ins, &mut rng, &a, 2, 1).unwrap();
    let found = bounded_prove(&ins, &BTreeSet::new(), &[goal].into(), &a, 3, &CongruenceOracle, ProveOptions::default());
    if let Some(p) = found.unwrap().proof() {
        t.proofs.push(Decl { name: "p1".into(), over: named("A"), value: p.clone() });
    }
    if rng.gen_bool(0.5) {
        t.proofs.reverse();
    }
    t
}

fn cring_theory(seed: u64) -> Theory<CRing> {
    let ins = CRing::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rings = FiniteRing::catalog(6);
    let ring = rings.choose(&mut rng).unwrap().clone();
    let names: &[&str] = [&["x"][..], &["x", "y"][..], &[][..]].choose(&mut rng).unwrap();
    let a = CRingSig::new(ring.clone(), names.iter().map(|n| dexlogic::instances::fol0::Sym::named(n)).collect());
    let b = CRingSig::named(&ring, &["u", "x"]);
    let mut t = Theory::new(ins.clone());
    t.signatures.push(("A".into(), a.clone()));
    t.signatures.push(("B".into(), b.clone()));
    if let Some(m) = ins.morphisms_between(&a, &b, 1).choose(&mut rng) {
        t.morphisms.push(MorphismDecl { name: "m".into(), from: named("A"), to: named("B"), value: m.clone() });
    }
    if let Some(m) = ins.models(&a, 4).unwrap().choose(&mut rng) {
        t.models.push(Decl { name: "M".into(), over: named("A"), value: m.clone() });
    }
    for i in 0..3 {
        let s = corpus::random_sentence(&ins, &mut rng, &a, 3, 2).unwrap();
        t.sentences.push(Decl { name: format!("s{i}"), over: named("A"), value: s });
    }
    let goal = corpus::random_sentence(&ins, &mut rng, &a, 2, 1).unwrap();
    let oracle = ModelOracle { ins: ins.clone(), bound: 3 };
    if let Some(p) = bounded_prove(&ins, &BTreeSet::new(), &[goal].into(), &a, 2, &oracle, ProveOptions::default()).unwrap().proof() {
        t.proofs.push(Decl { name: "p".into(), over: named("A"), value: p.clone() });
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn fol0_print_then_read_is_identity(seed in any::<u64>()) {
        round_trip(AnyTheory::Fol0(fol0_theory(seed)));
    }

    #[test]
    fn cring_print_then_read_is_identity(seed in any::<u64>()) {
        round_trip(AnyTheory::CRing(cring_theory(seed)));
    }

    #[test]
    fn reader_never_panics(src in "[()a-z0-9:#= \n;-]{0,80}") {
        let _ = load(&format!("(institution fol0)\n{src}"));
        let _ = load(&format!("(institution cring)\n{src}"));
    }
}

const SAMPLE: &str = r#"
; a two-sorted sample
(institution fol0)
(signature A (sorts s) (funcs (c () s) (f (s) s)) (preds (P (s)) (Q ())))
(signature B (sorts t) (funcs (d () t) (g (t) t)) (preds (R (t)) (Q ())))
(morphism m :from A :to B (sort s t) (func c (g d)) (func f g) (pred P R))
(model M :of A (carrier s 0 1) (func c (() 1)) (func f ((0) 1) ((1) 0)) (pred P (1)) (pred Q ()))
(sentence ex :over A (exists ((x s)) (or (atom P x) (not (atom Q)))))
(sentence open :over (extend A (x:s)) (atom P (f x)))
(sequent goal (gamma ex) (delta ex))
(proof p :over A :rule exists-r :theta ((x c))
  :principal (exists ((x s)) (atom P x))
  :root (sequent (gamma (atom P c)) (delta (exists ((x s)) (atom P x))))
  :premises ((proof :rule atom :root (sequent (gamma (atom P c)) (delta (atom P c) (exists ((x s)) (atom P x)))))))
"#;

#[test]
fn sample_file_loads_and_checks() {
    let AnyTheory::Fol0(t) = load(SAMPLE).unwrap() else { panic!("fol0 expected") };
    assert_eq!(t.signatures.len(), 2);
    assert_eq!(t.sentences[1].over, SigExpr::Extend(Box::new(named("A")), t.sentences[1].over_block().clone()));
    let m = &t.morphism("m").unwrap().value;
    assert_eq!(m.func_map().len(), 2);
    assert!(check_proof(&t.ins, &t.proofs[0].value, &CongruenceOracle).is_valid());
    round_trip(AnyTheory::Fol0(t));
}

trait OverBlock<B> {
    fn over_block(&self) -> &B;
}

impl<T> OverBlock<<Fol0 as Institution>::Block> for Decl<Fol0, T> {
    fn over_block(&self) -> &<Fol0 as Institution>::Block {
        match &self.over {
            SigExpr::Extend(_, x) => x,
            SigExpr::Name(_) => panic!("not an extension"),
        }
    }
}

#[test]
fn shadowed_variables_print_with_tags() {
    let src = "(institution fol0)
(signature A (sorts s) (funcs (c () s)) (preds (P (s s))))
(sentence n :over A (exists ((x s)) (exists ((x s)) (atom P x x#0000000000000000))))";
    let e = load(src).unwrap_err();
    assert_eq!(e.kind, ErrorKind::Resolve);
    assert_eq!((e.pos.line, e.pos.col), (3, 63));
    let ok = "(institution fol0)
(signature A (sorts s) (funcs (c () s)) (preds (P (s s))))
(sentence n :over A (exists ((x s)) (exists ((x s)) (atom P x c))))";
    let t = load(ok).unwrap();
    let AnyTheory::Fol0(th) = &t else { unreachable!() };
    let text = t.print().unwrap();
    // The inner `x` shadows the outer one; both binders print as `x`.
    assert!(text.contains("(atom P x c)"), "{text}");
    assert_eq!(th.sentences.len(), 1);
    round_trip(t);
}

#[test]
fn outer_variable_under_shadowing_gets_a_tag() {
    let src = "(institution fol0)
(signature A (sorts s) (funcs (c () s)) (preds (P (s s))))
(sentence n :over (extend A ((x s))) (exists ((x s)) (atom P x c)))
(sentence o :over (extend A ((x s))) (atom P x x))";
    let t = load(src).unwrap();
    let AnyTheory::Fol0(th) = &t else { unreachable!() };
    let Sentence::Exists(_, body) = &th.sentences[0].value else { panic!() };
    let Sentence::Atom(a) = &**body else { panic!() };
    // Rebuild the atom with the outer `x` in second position and print it.
    let outer = match &th.sentences[1].value {
        Sentence::Atom(dexlogic::instances::fol0::Fol0Atom::Pred(_, args)) => args[0].clone(),
        _ => unreachable!(),
    };
    let dexlogic::instances::fol0::Fol0Atom::Pred(p, args) = a else { panic!() };
    let mixed = Sentence::exists(
        match &th.sentences[0].value {
            Sentence::Exists(x, _) => x.clone(),
            _ => unreachable!(),
        },
        Sentence::Atom(dexlogic::instances::fol0::Fol0Atom::Pred(p.clone(), vec![args[0].clone(), outer])),
    );
    let mut th2 = th.clone();
    th2.sentences[0].value = mixed;
    let text = AnyTheory::Fol0(th2.clone()).print().unwrap();
    assert!(text.contains("(atom P x x#"), "{text}");
    round_trip(AnyTheory::Fol0(th2));
}

#[test]
fn errors_carry_line_and_column() {
    let cases: &[(&str, ErrorKind, (usize, usize))] = &[
        ("(institution fol0)\n(signature A (sorts s)\n", ErrorKind::Parse, (2, 1)),
        ("(institution fol0))", ErrorKind::Parse, (1, 19)),
        ("(institution fol0)\n(sentence x :over B (atom P))", ErrorKind::Resolve, (2, 19)),
        ("(institution fol0)\n(signature A (sorts s) (preds (P (s))))\n  (sentence x :over A (atom P d))", ErrorKind::Resolve, (3, 31)),
        ("(institution fol0)\n(signature A (sorts s) (frobs))", ErrorKind::Parse, (2, 24)),
        ("(institution foo)", ErrorKind::Resolve, (1, 14)),
        ("(institution cring)\n(signature A (ring Z4) (vars x))\n(sentence e :over A (atom = x y))", ErrorKind::Resolve, (3, 31)),
        ("(institution cring)\n(signature A (ring Q) (vars x))", ErrorKind::Resolve, (2, 20)),
        ("(institution fol0)\n(signature A (sorts s))\n(signature A (sorts t))", ErrorKind::Resolve, (3, 12)),
    ];
    for (src, kind, (line, col)) in cases {
        let e = load(src).unwrap_err();
        assert_eq!((e.kind, e.pos.line, e.pos.col), (*kind, *line, *col), "{src}: {e}");
    }
}

#[test]
fn cring_sample_reads_polynomials() {
    let src = "(institution cring)
(signature A (ring Z6) (vars x y))
(signature B (ring Z2xZ3) (vars u))
(morphism m :from A :to B (var x (* 2 u)) (var y (^ u 2)))
(model M :of A (ring Z3) (value x 2) (value y 0))
(sentence e :over A (atom = (^ (+ x y) 2) (+ (^ x 2) (* (int 2) x y) (^ y 2))))
(sentence f :over A (exists (z) (atom = (* z x) (- 1))))";
    let t = load(src).unwrap_or_else(|e| panic!("{e}"));
    let AnyTheory::CRing(th) = &t else { panic!() };
    let Sentence::Atom(a) = &th.sentences[0].value else { panic!() };
    assert_eq!(a.lhs, a.rhs);
    assert_eq!(th.models[0].value.base(), &[0, 1, 2, 0, 1, 2]);
    round_trip(t);
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dexlogic::sentence::Sentence;
use dexlogic::sequent::init_proof;
use dexlogic::syntax::{load, AnyTheory, Decl, SigExpr};

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn dexlogic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dexlogic")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn records(out: &str, verdict: &str) -> usize {
    out.lines().filter(|l| l.starts_with(verdict)).count()
}

fn temp_theory(name: &str, text: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const INIT_EXISTS_HEADER: &str = "(institution fol0)
(signature S (sorts s) (preds (P (s))))
(sentence ex :over S (exists ((x s)) (atom P x)))
";

/// The checked-in `init_exists.thy` is the printed output of `init_proof`
/// for `∃x. P(x) ⊢ ∃x. P(x)`; set `DEXLOGIC_BLESS=1` to rewrite it.
#[test]
fn init_exists_is_init_proof_output() {
    let AnyTheory::Fol0(mut t) = load(INIT_EXISTS_HEADER).unwrap() else { panic!("fol0 expected") };
    let sig = t.signature("S").unwrap().clone();
    let ex: Sentence<_> = t.sentences[0].value.clone();
    let p = init_proof(&t.ins, &Default::default(), &Default::default(), &sig, &ex).unwrap();
    t.proofs.push(Decl { name: "init".into(), over: SigExpr::Name("S".into()), value: p });
    let text = format!("; init_proof for (exists x. P x) |- (exists x. P x)\n{}", t.print().unwrap());
    let path = example("init_exists.thy");
    if std::env::var_os("DEXLOGIC_BLESS").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
}

#[test]
fn check_proof_accepts_init_exists() {
    let o = dexlogic(&["--seed", "0", "check-proof", example("init_exists.thy").to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(code(&o), 0, "{out}");
    assert_eq!(records(&out, "PASS"), 1);
    assert_eq!(records(&out, "FAIL"), 0);
}

#[test]
fn drinker_has_a_size_one_countermodel() {
    let o = dexlogic(&["--seed", "0", "entail", example("drinker.thy").to_str().unwrap(), "--max-model-size", "1"]);
    let out = stdout(&o);
    assert_eq!(code(&o), 4);
    assert!(out.contains("FAIL law=entail case=drinker witness=(countermodel (carrier s 0) (func c (() 0)) (pred P))"), "{out}");
}

#[test]
fn dex_laws_hold_on_fol0_small() {
    let o = dexlogic(&["--seed", "0", "laws", example("fol0_small.thy").to_str().unwrap(), "--suite", "dex"]);
    let out = stdout(&o);
    assert_eq!(code(&o), 0);
    assert_eq!(records(&out, "FAIL"), 0);
    assert!(records(&out, "PASS") > 1000);
    assert!(out.starts_with("# command=laws suite=dex institution=fol0 model-bound=2 atom-budget=1 mediator-budget=1\n"));
}

#[test]
fn dex_laws_hold_on_ring_small() {
    let o = dexlogic(&["--seed", "0", "laws", example("ring_small.thy").to_str().unwrap(), "--suite", "dex"]);
    assert_eq!(code(&o), 0);
    assert_eq!(records(&stdout(&o), "FAIL"), 0);
}

#[test]
fn morphism_laws_hold_for_both_institutions() {
    let fol = temp_theory(
        "morphism_small.thy",
        "(institution fol0)
(signature A (sorts s) (funcs (c () s)) (preds (P (s))) (equality))
(signature B (sorts s) (funcs (c () s) (d () s)) (preds (P (s))) (equality))
(morphism i :from A :to B)
(sentence e :over A (exists ((x s)) (atom = x c)))
(sentence p :over A (atom P c))
",
    );
    let o = dexlogic(&["--seed", "0", "laws", fol.to_str().unwrap(), "--suite", "morphism"]);
    let out = stdout(&o);
    assert_eq!(code(&o), 0, "{out}");
    assert!(out.contains("law=morphism.satisfaction case="));
    let o = dexlogic(&["--seed", "0", "laws", example("ring_small.thy").to_str().unwrap(), "--suite", "morphism"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn cat_and_soundness_suites() {
    let file = example("drinker.thy");
    let o = dexlogic(&["--seed", "3", "laws", file.to_str().unwrap(), "--suite", "cat", "--cases", "10"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("case=seed12:"));
    let o = dexlogic(&["--seed", "3", "laws", file.to_str().unwrap(), "--suite", "soundness", "--cases", "10"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("law=soundness"));
    let o = dexlogic(&["--seed", "3", "laws", example("ring_small.thy").to_str().unwrap(), "--suite", "soundness"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn fault_injection_is_reported_as_failure() {
    let file = example("drinker.thy");
    let o = dexlogic(&["--seed", "1", "laws", file.to_str().unwrap(), "--suite", "soundness", "--cases", "40", "--fault-injection"]);
    assert_eq!(code(&o), 4);
    assert!(records(&stdout(&o), "FAIL law=soundness") >= 1);
}

#[test]
fn prove_output_is_a_checkable_proof() {
    let src = "(institution fol0)
(signature A (sorts s) (funcs (c () s)) (preds (P (s))))
(sentence pc :over A (atom P c))
(sentence ex :over A (exists ((x s)) (atom P x)))
(sequent q (gamma pc) (delta ex))
(sequent r (gamma) (delta ex))
";
    let file = temp_theory("prove.thy", src);
    let o = dexlogic(&["--seed", "0", "prove", file.to_str().unwrap(), "--depth", "3"]);
    let out = stdout(&o);
    assert_eq!(code(&o), 4);
    assert!(out.contains("PASS law=prove case=q witness=depth=1"), "{out}");
    assert!(out.contains("FAIL law=prove case=r witness=no proof within depth 3"), "{out}");
    let proofs: String = out.lines().filter(|l| !l.starts_with('#') && !l.starts_with("PASS") && !l.starts_with("FAIL")).map(|l| format!("{l}\n")).collect();
    let file = temp_theory("proved.thy", &format!("{src}{proofs}"));
    let o = dexlogic(&["--seed", "0", "check-proof", file.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(records(&stdout(&o), "PASS"), 1);
}

#[test]
fn cring_prove_and_translate_round_trip() {
    let file = example("ring_small.thy");
    let o = dexlogic(&["--seed", "0", "prove", file.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let proved = stdout(&o);
    let o = dexlogic(&["--seed", "0", "translate", file.to_str().unwrap(), "--morphism", "m"]);
    assert_eq!(code(&o), 0);
    let translated = stdout(&o);
    assert!(translated.contains("(sentence m.unit :over B (atom = 5 5))"), "{translated}");
    let body: String = format!("{proved}{translated}")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("PASS"))
        .map(|l| format!("{l}\n"))
        .collect();
    let combined = format!("{}{body}", std::fs::read_to_string(&file).unwrap());
    let AnyTheory::CRing(t) = load(&combined).unwrap() else { panic!("cring expected") };
    assert_eq!(t.sentences.len(), 4);
    assert_eq!(t.proofs.len(), 1);
    let path = temp_theory("ring_combined.thy", &combined);
    let o = dexlogic(&["--seed", "0", "check-proof", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let runs: [&[&str]; 3] = [
        &["--seed", "9", "laws", "FILE", "--suite", "cat", "--cases", "5"],
        &["--seed", "9", "laws", "FILE", "--suite", "soundness", "--cases", "5"],
        &["--seed", "9", "entail", "FILE", "--max-model-size", "2"],
    ];
    let file = example("drinker.thy");
    for args in runs {
        let args: Vec<&str> = args.iter().map(|a| if *a == "FILE" { file.to_str().unwrap() } else { a }).collect();
        let a = dexlogic(&args);
        let b = dexlogic(&args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status, b.status);
    }
}

#[test]
fn error_exit_codes() {
    let parse = temp_theory("parse.thy", "(institution fol0)\n(signature A (sorts s)\n");
    let o = dexlogic(&["--seed", "0", "check-proof", parse.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("parse.thy:2:1:"), "{}", stderr(&o));

    let resolve = temp_theory("resolve.thy", "(institution fol0)\n(sentence s :over Missing (atom P))\n");
    let o = dexlogic(&["--seed", "0", "check-proof", resolve.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("resolve.thy:2:"), "{}", stderr(&o));

    let o = dexlogic(&["--seed", "0", "translate", example("fol0_small.thy").to_str().unwrap(), "--morphism", "nope"]);
    assert_eq!(code(&o), 3);

    let big = temp_theory(
        "big.thy",
        "(institution fol0)
(signature D (sorts s) (funcs (f (s s) s)) (preds (P (s))))
(sentence e :over D (exists ((x s)) (atom P x)))
(sequent q (gamma) (delta e))
",
    );
    let o = dexlogic(&["--seed", "0", "entail", big.to_str().unwrap(), "--max-model-size", "4"]);
    assert_eq!(code(&o), 5);
    assert!(stderr(&o).contains("budget"));

    let o = dexlogic(&["check-proof", example("init_exists.thy").to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("--seed"));

    let o = dexlogic(&["--seed", "0", "check-proof", "/nonexistent/file.thy"]);
    assert_eq!(code(&o), 1);

    let o = dexlogic(&["--seed", "0", "frobnicate"]);
    assert_eq!(code(&o), 1);
}

//! Replays the checked-in fuzz corpus through the checks the fuzz targets make.

use std::path::{Path, PathBuf};

use dexlogic::sequent::{check_proof, CongruenceOracle, ModelOracle};
use dexlogic::syntax::{load, parse, ring_by_name, AnyTheory};

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(PathBuf, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            let text = std::fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn sexpr_seeds() {
    for (path, src) in seeds("sexpr") {
        let Ok(items) = parse(&src) else { continue };
        let printed: Vec<String> = items.iter().map(|e| e.to_string()).collect();
        let again = parse(&printed.join("\n")).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let reprinted: Vec<String> = again.iter().map(|e| e.to_string()).collect();
        assert_eq!(printed, reprinted, "{}", path.display());
    }
}

#[test]
fn theory_seeds_round_trip() {
    let mut loaded = 0;
    for (path, src) in seeds("theory") {
        let Ok(t) = load(&src) else { continue };
        loaded += 1;
        let text = t.print().unwrap();
        let back = load(&text).unwrap();
        assert_eq!(back, t, "{}", path.display());
        assert_eq!(back.print().unwrap(), text);
    }
    assert!(loaded >= 5);
}

#[test]
fn oversized_inputs_are_rejected_quickly() {
    let start = std::time::Instant::now();
    let src = &seeds("theory").into_iter().find(|(p, _)| p.ends_with("deep_power.thy")).unwrap().1;
    assert!(load(src).is_err());
    assert!(ring_by_name("Z4096").is_none());
    assert!(start.elapsed().as_secs() < 5);
}

#[test]
fn check_seeds_accept_their_proofs() {
    for (path, src) in seeds("check") {
        match load(&src).unwrap_or_else(|e| panic!("{}: {e}", path.display())) {
            AnyTheory::Fol0(t) => {
                for p in &t.proofs {
                    assert!(check_proof(&t.ins, &p.value, &CongruenceOracle).is_valid(), "{}", path.display());
                }
            }
            AnyTheory::CRing(t) => {
                let oracle = ModelOracle { ins: t.ins.clone(), bound: 3 };
                for p in &t.proofs {
                    let _ = check_proof(&t.ins, &p.value, &oracle);
                }
            }
        }
    }
}

#[test]
fn ring_name_seeds() {
    let mut known = 0;
    for (_, name) in seeds("ring_name") {
        if let Some(r) = ring_by_name(&name) {
            assert!(r.size() <= dexlogic::syntax::MAX_RING_SIZE);
            assert_eq!(ring_by_name(r.name()).as_ref(), Some(&r));
            known += 1;
        }
    }
    assert!(known >= 5);
}

#![no_main]

use dexlogic::sequent::{check_proof, CongruenceOracle, ModelOracle};
use dexlogic::syntax::{load, AnyTheory};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    match load(src) {
        Ok(AnyTheory::Fol0(t)) => {
            for p in &t.proofs {
                let _ = check_proof(&t.ins, &p.value, &CongruenceOracle);
            }
        }
        Ok(AnyTheory::CRing(t)) => {
            let oracle = ModelOracle { ins: t.ins.clone(), bound: 3 };
            for p in &t.proofs {
                let _ = check_proof(&t.ins, &p.value, &oracle);
            }
        }
        Err(_) => {}
    }
});

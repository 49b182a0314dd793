#![no_main]

use dexlogic::syntax::ring_by_name;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(name) = std::str::from_utf8(data) else { return };
    if let Some(r) = ring_by_name(name) {
        assert!(r.size() <= dexlogic::syntax::MAX_RING_SIZE);
        assert_eq!(ring_by_name(r.name()).as_ref(), Some(&r));
    }
});

#![no_main]

use dexlogic::syntax::load;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let Ok(t) = load(src) else { return };
    let Ok(text) = t.print() else { return };
    let back = load(&text).expect("printed theory loads");
    assert_eq!(back, t);
    assert_eq!(back.print().unwrap(), text);
});

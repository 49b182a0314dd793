#![no_main]

use dexlogic::syntax::parse;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let Ok(items) = parse(src) else { return };
    // printed forms parse back to the same shape
    let printed: Vec<String> = items.iter().map(|e| e.to_string()).collect();
    let again = parse(&printed.join("\n")).expect("printed s-expressions parse");
    let reprinted: Vec<String> = again.iter().map(|e| e.to_string()).collect();
    assert_eq!(printed, reprinted);
});

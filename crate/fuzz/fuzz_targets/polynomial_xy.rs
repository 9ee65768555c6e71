#![no_main]

use libfuzzer_sys::fuzz_target;
use planeval::germ::Poly2;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = Poly2::parse(text, ('x', 'y')) {
        let again = Poly2::parse(&p.to_string(), ('x', 'y')).expect("printed polynomial parses");
        assert_eq!(again, p);
    }
});

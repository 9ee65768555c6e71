#![no_main]

use libfuzzer_sys::fuzz_target;
use planeval::report::{emit_config, parse_config};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(config) = parse_config(text) {
        let again = parse_config(&emit_config(&config)).expect("emitted configuration parses");
        assert_eq!(again, config);
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use planeval::report::{EvalReport, FamilyReport, Report};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = Report::from_json(text) {
        assert_eq!(Report::from_json(&r.to_json()).expect("reparse"), r);
    }
    if let Ok(r) = FamilyReport::from_json(text) {
        assert_eq!(FamilyReport::from_json(&r.to_json()).expect("reparse"), r);
    }
    if let Ok(r) = EvalReport::from_json(text) {
        assert_eq!(EvalReport::from_json(&r.to_json()).expect("reparse"), r);
    }
});

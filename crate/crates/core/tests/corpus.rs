//! Replays the fuzz corpus seeds through the same round-trip checks as the
//! fuzz targets, so they run on stable with the ordinary test suite.

use planeval::germ::{realize, Field, Poly2};
use planeval::report::{emit_config, parse_config, EvalReport, FamilyReport, Report};
use planeval::valuation::{Configuration, Point};
use std::path::PathBuf;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn config_json_seeds() {
    let mut accepted = 0;
    for (_, text) in seeds("config_json") {
        if let Ok(config) = parse_config(&text) {
            assert_eq!(parse_config(&emit_config(&config)).unwrap(), config);
            accepted += 1;
        }
    }
    assert!(accepted >= 5);
}

#[test]
fn polynomial_xy_seeds() {
    for (name, text) in seeds("polynomial_xy") {
        if let Ok(p) = Poly2::parse(&text, ('x', 'y')) {
            assert_eq!(Poly2::parse(&p.to_string(), ('x', 'y')).unwrap(), p, "{name}");
        }
    }
}

#[test]
fn germ_uv_seeds() {
    let cusp = Configuration::new(vec![Point::Origin, Point::Free, Point::Satellite(1)], 1).unwrap();
    let real = realize(&cusp, Field::Rationals, 0).unwrap();
    for (name, text) in seeds("germ_uv") {
        let Ok(h) = Poly2::parse(&text, ('u', 'v')) else { continue };
        assert_eq!(Poly2::parse(&h.display_with(("u", "v")), ('u', 'v')).unwrap(), h, "{name}");
        if !h.is_zero() {
            real.germ_valuation(&h).unwrap();
        }
    }
}

#[test]
fn report_json_seeds() {
    let mut accepted = 0;
    for (_, text) in seeds("report_json") {
        if let Ok(r) = Report::from_json(&text) {
            assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
            accepted += 1;
        }
        if let Ok(r) = FamilyReport::from_json(&text) {
            assert_eq!(FamilyReport::from_json(&r.to_json()).unwrap(), r);
            accepted += 1;
        }
        if let Ok(r) = EvalReport::from_json(&text) {
            assert_eq!(EvalReport::from_json(&r.to_json()).unwrap(), r);
            accepted += 1;
        }
    }
    assert!(accepted >= 4);
}

#![no_main]

use libfuzzer_sys::fuzz_target;
use planeval::germ::{realize, Field, Poly2};
use planeval::valuation::{Configuration, Point};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(h) = Poly2::parse(text, ('u', 'v')) else { return };
    let again = Poly2::parse(&h.display_with(("u", "v")), ('u', 'v')).expect("printed germ parses");
    assert_eq!(again, h);
    // keep evaluation cheap: small germs on the cusp only
    if h.is_zero() || h.degree().is_some_and(|d| d > 12) {
        return;
    }
    let cusp = Configuration::new(vec![Point::Origin, Point::Free, Point::Satellite(1)], 1).unwrap();
    let real = realize(&cusp, Field::Rationals, 0).unwrap();
    let _ = real.germ_valuation(&h);
});

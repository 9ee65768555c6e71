#![allow(dead_code)]

use planeval::germ::Poly2;
use planeval::valuation::{Configuration, Point};
use planeval::Rat;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A valid configuration with `1 <= m <= max_m`, roughly 40% satellites and
/// `s` anywhere up to the initial free chain.
pub fn random_config(rng: &mut ChaCha8Rng, max_m: usize) -> Configuration {
    let m = rng.gen_range(1..=max_m);
    random_config_of(rng, m)
}

pub fn random_config_of(rng: &mut ChaCha8Rng, m: usize) -> Configuration {
    let mut points = vec![Point::Origin];
    for i in 2..=m {
        let mut satellites = Vec::new();
        if i >= 3 {
            satellites.push(Point::Satellite(i - 2));
        }
        if let Point::Satellite(j) = points[i - 2] {
            if j + 2 != i {
                satellites.push(Point::Satellite(j));
            }
        }
        let p = if !satellites.is_empty() && rng.gen_bool(0.4) {
            satellites[rng.gen_range(0..satellites.len())]
        } else {
            Point::Free
        };
        points.push(p);
    }
    let chain = Configuration::new(points.clone(), 1).expect("valid").initial_free_chain();
    let s = rng.gen_range(1..=chain);
    Configuration::new(points, s).expect("valid")
}

/// Ends in two consecutive satellite points.
pub fn random_satellite_tail(rng: &mut ChaCha8Rng, max_m: usize) -> Configuration {
    loop {
        let c = random_config(rng, max_m);
        let m = c.m();
        if m >= 3 && c.is_satellite(m) && c.is_satellite(m - 1) {
            return c;
        }
    }
}

/// Random polynomial in the two variables of total degree at most `deg`
/// with small integer coefficients; never zero.
pub fn random_poly(rng: &mut ChaCha8Rng, deg: u32, terms: usize) -> Poly2 {
    loop {
        let mut p = Poly2::zero();
        for _ in 0..terms {
            let total = rng.gen_range(0..=deg);
            let i = rng.gen_range(0..=total);
            let c = rng.gen_range(-5i64..=5);
            p.add_term((i, total - i), Rat::from_integer(c.into()));
        }
        if !p.is_zero() {
            return p;
        }
    }
}

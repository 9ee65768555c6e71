mod common;

use num_traits::{One, Signed, Zero};
use planeval::germ::{poly_valuation, realize, Field, Poly2};
use planeval::picard::{
    d_family, intersect, lemma1_nonneg, negative_probe, sample_Q, strict_basis_change, DivisorClass,
};
use planeval::report::{analyze, decide, emit_config, parse_config, Report};
use planeval::valuation::{
    configuration_from_full_contact, contact_from_puiseux, contact_invariants, puiseux_from_contact,
    semigroup_contains, Configuration,
};
use planeval::{Int, Rat};
use proptest::prelude::*;

fn config(seed: u64, m: usize) -> Configuration {
    common::random_config_of(&mut common::rng(seed), m)
}

fn xy(s: &str) -> Poly2 {
    Poly2::parse(s, ('x', 'y')).unwrap()
}

fn gcd(a: &Int, b: &Int) -> Int {
    num_integer::Integer::gcd(a, b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn contact_values_determine_the_configuration(seed in any::<u64>(), m in 1usize..=24) {
        let c = config(seed, m);
        let inv = contact_invariants(&c);
        let back = configuration_from_full_contact(&inv.beta_bar, c.s()).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn puiseux_roundtrip(seed in any::<u64>(), m in 1usize..=24) {
        let inv = contact_invariants(&config(seed, m));
        let puiseux = puiseux_from_contact(&inv.beta_bar).unwrap();
        prop_assert_eq!(&puiseux, &inv.puiseux);
        prop_assert_eq!(contact_from_puiseux(&puiseux).unwrap(), inv.beta_bar);
    }

    #[test]
    fn terminal_value_is_sum_of_squared_multiplicities(seed in any::<u64>(), m in 1usize..=24) {
        let inv = contact_invariants(&config(seed, m));
        let sum: Int = inv.mult.iter().map(|x| x * x).sum();
        prop_assert_eq!(inv.terminal(), &sum);
    }

    #[test]
    fn gcd_chain_and_semigroup(seed in any::<u64>(), m in 1usize..=24) {
        let inv = contact_invariants(&config(seed, m));
        let g = inv.g();
        prop_assert!(inv.n[0].is_zero());
        let mut running = inv.beta_bar[0].clone();
        for j in 0..=g {
            running = gcd(&running, &inv.beta_bar[j]);
            prop_assert_eq!(&inv.e[j], &running);
        }
        prop_assert!(inv.e[g].is_one());
        for j in 1..=g {
            prop_assert_eq!(&inv.n[j], &(&inv.e[j - 1] / &inv.e[j]));
            prop_assert!(inv.n[j] > Int::one());
            // N_j β̄_j already lies in the previous semigroup and stays below β̄_{j+1}
            let next = &inv.n[j] * &inv.beta_bar[j];
            prop_assert!(semigroup_contains(&inv.beta_bar[..j], &next));
            if j < g {
                prop_assert!(next < inv.beta_bar[j + 1]);
            }
        }
    }

    #[test]
    fn truncation_is_coherent(seed in any::<u64>(), m in 2usize..=20, cut in 1usize..=20) {
        let c = config(seed, m);
        let i = cut.min(m);
        let t = c.truncate(i).unwrap();
        let full = d_family(&c);
        let part = d_family(&t);
        prop_assert_eq!(&full.d[..i], &part.d[..]);
        prop_assert_eq!(&full.self_int[..i], &part.self_int[..]);
        prop_assert_eq!(contact_invariants(&t).mult, c.multiplicity_vector(i).unwrap());
    }

    #[test]
    fn strict_and_total_bases_are_inverse(seed in any::<u64>(), m in 1usize..=20) {
        let b = strict_basis_change(&config(seed, m));
        let n = m + 1;
        for i in 0..n {
            for j in 0..n {
                let v: Int = (0..n).map(|k| &b.strict_in_total[i][k] * &b.total_in_strict[k][j]).sum();
                prop_assert_eq!(v, if i == j { Int::one() } else { Int::zero() });
            }
        }
    }

    #[test]
    fn lemma1_agrees_with_sampling(
        d in 1i64..40,
        r in prop::collection::vec(0i64..25, 1..8),
        seed in any::<u64>(),
    ) {
        let mut coeffs = vec![d];
        coeffs.extend(r.iter().map(|x| -x));
        let div = DivisorClass::from_i64(&coeffs);
        let m = r.len();
        if lemma1_nonneg(&div).unwrap() {
            prop_assert!(negative_probe(&div).is_none());
            for x in sample_Q(m, 24, seed) {
                prop_assert!(!x.self_intersection().is_negative());
                prop_assert!(!intersect(&div, &x).unwrap().is_negative());
            }
        } else {
            let x = negative_probe(&div).expect("probe for D² < 0");
            prop_assert!(!x.self_intersection().is_negative());
            prop_assert_eq!(&x.coeffs[0], &Rat::one());
            prop_assert!(intersect(&div, &x).unwrap().is_negative());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coordinate_values_do_not_depend_on_the_realization(
        seed in any::<u64>(),
        m in 1usize..=10,
        a in any::<u64>(),
        b in any::<u64>(),
    ) {
        let c = config(seed, m);
        let d_m = d_family(&c).d_m().clone();
        let beta0 = contact_invariants(&c).beta_bar[0].clone();
        for s in [a, b] {
            let r = realize(&c, Field::Rationals, s).unwrap();
            prop_assert_eq!(poly_valuation(&r, &xy("x")).unwrap(), -&d_m);
            prop_assert_eq!(poly_valuation(&r, &xy("y")).unwrap(), &beta0 - &d_m);
            prop_assert_eq!(poly_valuation(&r, &xy("-7")).unwrap(), Int::zero());
        }
    }

    #[test]
    fn germ_valuation_matches_pullback_order(seed in any::<u64>(), m in 1usize..=8, pseed in any::<u64>()) {
        let c = config(seed, m);
        let r = realize(&c, Field::Rationals, seed).unwrap();
        let mut rng = common::rng(pseed);
        let h = common::random_poly(&mut rng, 5, 4);
        let nu = r.germ_valuation(&h).unwrap();
        let bound = u32::try_from(&nu + Int::from(1)).unwrap();
        let order = r.pullback_valuation(&h, Some(bound)).unwrap();
        prop_assert_eq!(order.map(Int::from), Some(nu));
    }

    #[test]
    fn reports_roundtrip(seed in any::<u64>(), m in 1usize..=12) {
        let c = config(seed, m);
        let text = emit_config(&c);
        prop_assert_eq!(parse_config(&text).unwrap(), c.clone());
        let report = decide(&c, &Field::Rationals).unwrap();
        prop_assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
        let plain = analyze(&c);
        prop_assert_eq!(Report::from_json(&plain.to_json()).unwrap(), plain);
    }

    #[test]
    fn polynomials_roundtrip(pseed in any::<u64>(), deg in 0u32..8, terms in 1usize..7) {
        let p = common::random_poly(&mut common::rng(pseed), deg, terms);
        prop_assert_eq!(Poly2::parse(&p.to_string(), ('x', 'y')).unwrap(), p.clone());
        let (h, d) = planeval::germ::to_local(&p).unwrap();
        prop_assert_eq!(planeval::germ::from_local(&h, d), p);
    }
}

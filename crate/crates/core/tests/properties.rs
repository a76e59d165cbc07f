use proptest::prelude::*;

use graphknot::generate::{random_batch, GenConfig};
use graphknot::rational::is_reduced;
use graphknot::{normalize_mirrors, parse, profile, KnotExpr, SlopeSet};

fn all_rationals(s: &SlopeSet) -> bool {
    s.iter().all(is_reduced)
}

#[test]
fn sum_profiles_commute_and_associate() {
    let exprs = random_batch(11, 30, &GenConfig { max_depth: 2, ..GenConfig::default() });
    for w in exprs.windows(3) {
        let (a, b, c) = (&w[0], &w[1], &w[2]);
        let ab = profile(&KnotExpr::sum(a.clone(), b.clone())).unwrap();
        let ba = profile(&KnotExpr::sum(b.clone(), a.clone())).unwrap();
        assert_eq!(ab.js_upper, ba.js_upper);
        assert_eq!(ab.js_star_upper, ba.js_star_upper);
        assert_eq!(ab.bs_gen, ba.bs_gen);

        let left = profile(&KnotExpr::sum(KnotExpr::sum(a.clone(), b.clone()), c.clone())).unwrap();
        let right = profile(&KnotExpr::sum(a.clone(), KnotExpr::sum(b.clone(), c.clone()))).unwrap();
        assert_eq!(left.js_upper, right.js_upper);
        assert_eq!(left.bs_gen, right.bs_gen);
        assert_eq!(left.verdict, right.verdict);
    }
}

#[test]
fn double_mirror_is_identity() {
    for k in random_batch(5, 40, &GenConfig::default()) {
        let mm = KnotExpr::mirror(KnotExpr::mirror(k.clone()));
        assert_eq!(normalize_mirrors(&mm), normalize_mirrors(&k));
        let (a, b) = (profile(&k).unwrap(), profile(&mm).unwrap());
        assert_eq!(a.js_upper, b.js_upper);
        assert_eq!(a.bs_gen, b.bs_gen);
    }
}

#[test]
fn emitted_rationals_are_reduced() {
    for k in random_batch(9, 60, &GenConfig::default()) {
        let p = profile(&k).unwrap();
        assert!(all_rationals(&p.js_upper) && all_rationals(&p.js_star_upper) && all_rationals(&p.bs_gen));
        if let Some((d, ds)) = &p.delta {
            for c in [d.c2(), d.c1(), d.c0(), ds.c2(), ds.c1(), ds.c0()] {
                assert!(c.iter().all(is_reduced));
            }
        }
    }
}

#[test]
fn cable_example() {
    let p = profile(&parse("C(13,2; T(2,3))").unwrap()).unwrap();
    assert_eq!(p.bs_gen.to_string(), "{0, 24, 26}");
    assert!(p.jones_slopes().is_subset(&p.bs_gen));
    assert!(p.verdict.is_verified());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn render_parse_round_trip(seed in any::<u64>()) {
        for k in random_batch(seed, 4, &GenConfig::default()) {
            let text = k.to_string();
            prop_assert_eq!(parse(&text).unwrap(), k.clone());
            let json = serde_json::to_string(&k).unwrap();
            prop_assert_eq!(serde_json::from_str::<KnotExpr>(&json).unwrap(), k);
        }
    }

    #[test]
    fn generated_expressions_verify(seed in any::<u64>()) {
        for k in random_batch(seed, 3, &GenConfig::default()) {
            let p = profile(&k).unwrap();
            if p.verdict.is_verified() {
                prop_assert!(p.jones_slopes().is_subset(&p.bs_gen));
            }
        }
    }
}

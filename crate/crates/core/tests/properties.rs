use proptest::prelude::*;

use hbl::cech::{cech_line_cohomology_with, LiftOrder, Model, PatternTable};
use hbl::cohomology::h_vector;
use hbl::monad::{is_monad, sample_monad, AnyMonad, MonadPoint};
use hbl::report::{derive_seed, TwistRange};
use hbl::{ChernData, DivisorClass, PrimeField, Rationals, Surface};

fn fp() -> PrimeField {
    PrimeField::new(10007).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn engine_matches_closed_form(e in 0u32..7, a in -14i64..=14, b in -14i64..=14) {
        let s = Surface::new(e);
        let table = PatternTable::new(&fp(), Model::Surface(s), LiftOrder::Forward);
        let d = DivisorClass::new(a, b);
        prop_assert_eq!(cech_line_cohomology_with(&table, d).unwrap(), h_vector(&s, d));
    }

    #[test]
    fn closed_form_serre_duality(e in 0u32..10, a in -30i64..=30, b in -30i64..=30) {
        let s = Surface::new(e);
        let d = DivisorClass::new(a, b);
        let h = h_vector(&s, d);
        let dual = h_vector(&s, s.canonical_class() - d);
        prop_assert_eq!(h, [dual[2], dual[1], dual[0]]);
    }

    #[test]
    fn closed_form_riemann_roch(e in 0u32..10, a in -30i64..=30, b in -30i64..=30) {
        let s = Surface::new(e);
        let d = DivisorClass::new(a, b);
        let h = h_vector(&s, d);
        prop_assert_eq!(h[0] - h[1] + h[2], s.euler_char(&ChernData::line(d)).unwrap());
        prop_assert!(h.iter().all(|&x| x >= 0));
    }

    #[test]
    fn twist_ranges_round_trip(a in 0u32..9, len in 0u32..9) {
        let r = TwistRange { start: a, end: a + len };
        prop_assert_eq!(r.to_string().parse::<TwistRange>().unwrap(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn prime_monads_round_trip_exactly(e in 1u32..3, seed in any::<u64>()) {
        let m = sample_monad(fp(), e, seed).unwrap();
        let text = m.to_json();
        let back = MonadPoint::from_json(fp(), &text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert!(back == m);
    }

    #[test]
    fn rational_monads_round_trip_exactly(seed in any::<u64>()) {
        let m = sample_monad(Rationals::default(), 1, seed).unwrap();
        let text = m.to_json();
        let any = AnyMonad::from_json(&text).unwrap();
        prop_assert_eq!(any.e(), 1);
        prop_assert_eq!(serde_json::to_string_pretty(&any.to_json_value()).unwrap(), text);
    }

    #[test]
    fn sampled_points_are_monads(e in 1u32..4, seed in any::<u64>()) {
        let m = sample_monad(fp(), e, seed).unwrap();
        prop_assert!(is_monad(&m).unwrap().is_valid());
    }

    #[test]
    fn derived_seeds_are_stable(seed in any::<u64>(), e in 0u32..9, i in 0usize..1000) {
        prop_assert_eq!(derive_seed(seed, e, i), derive_seed(seed, e, i));
        prop_assert_ne!(derive_seed(seed, e, i), derive_seed(seed, e, i + 1));
    }
}

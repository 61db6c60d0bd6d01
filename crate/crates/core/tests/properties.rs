mod common;

use bour_core::bour::{
    bour_partner_with_offsets, gauge_complete, gauss_residual, isometry_residual, pair_report, same_gauss_pair_i,
    vbar, BourPair, Given, Grid, SameGaussParams, Signs, Tolerances,
};
use bour_core::expr::{parse, Env};
use bour_core::helicoid::{HelicoidSpec, Kind};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn kind_of(i: u8) -> Kind {
    Kind::ALL[i as usize % 3]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn partners_are_isometric(seed in 0u64..10_000, k in 0u8..3, off in -1.0..1.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (spec, _) = common::random_spec(kind_of(k), &mut rng);
        // b ≡ 0 for types I and III is not always feasible; a gauge built from the
        // constraint's own scale always is.
        let given = match spec.kind {
            Kind::I => Given::A(parse("0").unwrap()),
            Kind::II => Given::B(parse("0").unwrap()),
            Kind::III => Given::A(parse("1").unwrap()),
        };
        let gauge = match gauge_complete(&spec, given) {
            Ok(g) => g,
            Err(_) => return Ok(()),
        };
        let partner = bour_partner_with_offsets(&spec, &gauge, [off, -off]).unwrap();
        let grid = Grid::for_spec(&spec, 9, 9);
        let iso = isometry_residual(&spec, &partner, &grid).unwrap();
        prop_assert!(iso < 1e-9, "{iso}");
        prop_assert!(gauge.constraint_residual(&spec, 33).unwrap() < 1e-10);
    }

    #[test]
    fn gauss_residual_vanishes_on_itself(seed in 0u64..10_000, k in 0u8..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (spec, _) = common::random_spec(kind_of(k), &mut rng);
        let grid = Grid::for_spec(&spec, 7, 7);
        prop_assert_eq!(gauss_residual(&spec, &spec, &grid).unwrap(), 0.0);
        prop_assert_eq!(isometry_residual(&spec, &spec, &grid).unwrap(), 0.0);
    }

    #[test]
    fn zero_pitch_vbar_is_identity(u in 0.3..1.4f64, v in -3.0..3.0f64, k in 0u8..3) {
        let spec = HelicoidSpec::new(kind_of(k), 0.0, ["2 + u", "u/5", "1 + u/2"], [0.2, 1.5], Env::new()).unwrap();
        prop_assert_eq!(vbar(&spec, u, v).unwrap(), v);
    }

    #[test]
    fn same_gauss_pairs_hold_across_parameters(c3 in 0.05..1.0f64, sw in prop::bool::ANY, sr in prop::bool::ANY) {
        let s = |b: bool| if b { 1.0 } else { -1.0 };
        let p = SameGaussParams {
            profile: "u + sin(u)/4".into(),
            lambda: 1.0,
            c1: 0.1,
            c2: 0.2,
            c3,
            c4: 0.3,
            signs: Signs { profile: s(sw), partner: s(sr) },
            domain: [1.3, 3.0],
            v_domain: None,
        };
        let pair = same_gauss_pair_i(&p).unwrap();
        let rep = pair_report(&pair, &Grid::for_spec(&pair.helicoid, 9, 9), &Tolerances::default()).unwrap();
        prop_assert!(rep.pass, "{:?}", rep.residuals);
    }
}

#[test]
fn pair_reports_are_deterministic() {
    let spec = HelicoidSpec::new(Kind::II, 0.6, ["3*u^2 + 2*u", "u/7", "u/2 + 1"], [0.5, 2.5], Env::new()).unwrap();
    let run = || {
        let pair = BourPair::bour(spec.clone(), Given::B(parse("0.3").unwrap()), [0.0, 0.0]).unwrap();
        let rep = pair_report(&pair, &Grid::for_spec(&spec, 17, 17), &Tolerances::default()).unwrap();
        serde_json::to_string(&rep).unwrap()
    };
    assert_eq!(run(), run());
}

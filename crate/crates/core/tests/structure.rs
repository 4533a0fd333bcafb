use loopforge::analysis::{center, quotient, upper_central_series, Nilpotency};
use loopforge::loops::{build_bruck_loop, preset};
use loopforge::mapping::{
    inner_group_closure, GeneratorPolicy, CLOSURE_BUDGET, DEFINITIONAL_BUDGET,
};
use loopforge::ring::{parse_ring_spec, ring_preset_text};
use loopforge::sampling::SamplingPlan;
use loopforge::session::Session;

/// The same structure constants read modulo 2: a triple loop of order 2⁷
/// small enough for every definitional computation.
fn mod2_loop() -> loopforge::Loop {
    let text = ring_preset_text("paper-z4").unwrap();
    let text: String = text
        .lines()
        .map(
            |l| match l.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["modulus", _] => "modulus 2".to_string(),
                ["prod", i, j, k, c] => {
                    format!("prod {i} {j} {k} {}", c.parse::<u32>().unwrap() % 2)
                }
                _ => l.to_string(),
            },
        )
        .map(|l| l + "\n")
        .collect();
    build_bruck_loop(&parse_ring_spec(&text).unwrap()).unwrap()
}

#[test]
fn certified_and_definitional_paths_agree_mod_2() {
    let lp = mod2_loop();
    assert_eq!(lp.order(), 128);
    let s = Session::new(lp.clone(), SamplingPlan::default().with_samples(20_000));
    assert!(s.form_cert().is_some());
    let cert = s.inner_cert().expect("inner form certifies");
    let certified =
        inner_group_closure(&lp, GeneratorPolicy::Certified(cert), CLOSURE_BUDGET).unwrap();
    let definitional = inner_group_closure(
        &lp,
        GeneratorPolicy::Definitional {
            budget: DEFINITIONAL_BUDGET,
        },
        CLOSURE_BUDGET,
    )
    .unwrap();
    assert_eq!(certified.order(), definitional.order());
    assert_eq!(certified.is_abelian(), definitional.is_abelian());
    assert_eq!(certified.exponent(), definitional.exponent());
    assert_eq!(
        certified.fixed_points(&lp).elements(),
        definitional.fixed_points(&lp).elements()
    );

    let generic = center(&lp, None);
    assert_eq!(generic.elements(), s.center().elements());
    let generic_series = upper_central_series(&lp, None).unwrap();
    assert_eq!(generic_series.orders(), s.series().unwrap().orders());
}

#[test]
fn paper_z3_generic_center_matches_certified() {
    let s = Session::new(
        preset("paper-z3").unwrap(),
        SamplingPlan::default().with_samples(20_000),
    );
    let generic = center(s.lp(), None);
    assert_eq!(generic.elements(), s.center().elements());
    assert_eq!(generic.len(), 3);
}

#[test]
fn groups_have_expected_series() {
    let cases = [
        ("c4", Some(1)),
        ("s3", None),
        ("d4", Some(2)),
        ("heis27", Some(2)),
        ("chein-s3", None),
    ];
    for (name, class) in cases {
        let cs = upper_central_series(&preset(name).unwrap(), None).unwrap();
        assert_eq!(cs.class(), class, "{name}");
    }
    let cs = upper_central_series(&preset("s3").unwrap(), None).unwrap();
    assert_eq!(cs.verdict, Nilpotency::NotNilpotent { stabilized: 1 });
}

#[test]
fn quotient_by_center_of_d4() {
    let lp = preset("d4").unwrap();
    let z = center(&lp, None);
    let q = quotient(&lp, &z).unwrap();
    assert_eq!(q.lp.order(), 4);
    assert!(q.fully_checked);
    let unverified = loopforge::analysis::Subloop::from_elements(8, z.elements().to_vec(), "copy");
    assert!(quotient(&lp, &unverified).is_err());
}

#[test]
fn inner_groups_of_presets() {
    let cases = [
        ("c3", 1, true),
        ("s3", 6, false),
        ("d4", 4, true),
        ("heis27", 9, true),
    ];
    for (name, order, abelian) in cases {
        let s = Session::new(preset(name).unwrap(), SamplingPlan::default());
        let inn = s.inn().unwrap();
        assert_eq!((inn.order(), inn.is_abelian()), (order, abelian), "{name}");
        assert!(inn.is_closed(s.lp()));
    }
}

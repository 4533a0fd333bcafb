use loopforge::half::{build_half_loop, divisibility, half_suite};
use loopforge::loops::preset;
use loopforge::sampling::SamplingPlan;
use loopforge::session::Session;
use loopforge::Error;

#[test]
fn cml81_half_is_commutative_with_matching_associators() {
    let s = Session::new(preset("cml81").unwrap(), SamplingPlan::default());
    let h = half_suite(&s).unwrap();
    assert!(h.suite.passed(), "{:?}", h.suite);
    assert!(h.commutative);
    assert!(!h.abelian);
    assert_eq!(
        h.suite.item("associators_agree").unwrap().checked,
        81 * 81 * 81
    );
}

#[test]
fn paper_loop_is_cube_divisible_but_not_square_divisible() {
    let lp = preset("paper-z4").unwrap();
    assert!(matches!(
        divisibility(&lp, 2),
        Err(Error::NotDivisible { m: 2, .. })
    ));
    let cubes = divisibility(&lp, 3).unwrap();
    assert_eq!(cubes.power(cubes.root(12345)), 12345);
}

#[test]
fn non_moufang_inputs_are_refused() {
    // nassoc5 has odd order, so only the Moufang gate can refuse it.
    let lp = preset("nassoc5").unwrap();
    match divisibility(&lp, 2) {
        Ok(_) => assert!(build_half_loop(&lp, &SamplingPlan::default()).is_err()),
        Err(e) => assert!(matches!(e, Error::NotDivisible { .. })),
    }
}

#[test]
fn half_of_c3_is_c3() {
    let h = build_half_loop(&preset("c3").unwrap(), &SamplingPlan::default()).unwrap();
    assert!(h.bol().passed());
    assert_eq!(h.as_loop().mul(1, 1), 2);
}

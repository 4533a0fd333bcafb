use loopforge::loops::{load_cayley, preset, save_cayley, GroupTable, DEFAULT_EXPORT_CAP};
use loopforge::sampling::SamplingPlan;
use loopforge::suites::check_moufang;
use loopforge::Error;

#[test]
fn cayley_round_trip() {
    for name in ["c4", "s3", "nassoc5", "chein-s3"] {
        let lp = preset(name).unwrap();
        let text = save_cayley(&lp, DEFAULT_EXPORT_CAP).unwrap();
        let back = load_cayley(&text).unwrap();
        let n = lp.order();
        assert_eq!(back.order(), n);
        assert!((0..n * n).all(|i| back.mul(i / n, i % n) == lp.mul(i / n, i % n)));
    }
}

#[test]
fn paper_loop_exceeds_the_export_cap() {
    let lp = preset("paper-z4").unwrap();
    assert!(matches!(
        save_cayley(&lp, DEFAULT_EXPORT_CAP),
        Err(Error::CapExceeded { order: 16384, .. })
    ));
}

#[test]
fn invalid_tables_are_rejected() {
    assert!(load_cayley("loop 2\n0 1\n1 1\n").is_err());
    assert!(load_cayley("loop 2\n1 0\n0 1\n").is_err());
    assert!(load_cayley("loop 2\n0 1\n").is_err());
}

#[test]
fn divisions_invert_multiplication() {
    for name in ["nassoc5", "chein-s3", "paper-z3"] {
        let lp = preset(name).unwrap();
        let n = lp.order().min(200);
        for x in 0..n {
            for y in 0..n {
                assert_eq!(lp.mul(x, lp.ldiv(x, y)), y);
                assert_eq!(lp.mul(lp.rdiv(y, x), x), y);
            }
        }
    }
}

#[test]
fn triple_inverse_formula() {
    let lp = preset("paper-z4").unwrap();
    let t = lp.as_triple().unwrap();
    for x in (0..lp.order()).step_by(97) {
        assert_eq!(t.inverse_formula(x), lp.inverse(x).unwrap());
    }
}

#[test]
fn chein_double_is_a_nonassociative_moufang_loop() {
    let lp = preset("chein-s3").unwrap();
    assert_eq!(lp.order(), 12);
    assert!(check_moufang(&lp, &SamplingPlan::default()).passed());
    assert!(GroupTable::verify(lp, None).is_err());
}

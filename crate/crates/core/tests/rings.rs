use loopforge::ring::{
    check_ring_axioms, graded_parts, parse_ring_spec, ring_preset, ring_preset_text,
};
use loopforge::Error;

#[test]
fn presets_satisfy_the_axioms() {
    for name in ["paper-z4", "paper-z3"] {
        let report = check_ring_axioms(&ring_preset(name).unwrap());
        assert!(report.passed(), "{name}: {report:?}");
        assert_eq!(report.item("associativity").unwrap().checked, 343);
    }
}

#[test]
fn graded_sizes() {
    let z4 = graded_parts(&ring_preset("paper-z4").unwrap()).unwrap();
    assert_eq!((z4.x1.len(), z4.x2.len(), z4.x3.len()), (64, 64, 4));
    let z3 = graded_parts(&ring_preset("paper-z3").unwrap()).unwrap();
    assert_eq!((z3.x1.len(), z3.x2.len(), z3.x3.len()), (27, 27, 3));
}

#[test]
fn every_deleted_product_is_caught() {
    let text = ring_preset_text("paper-z4").unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let prods: Vec<usize> = (0..lines.len())
        .filter(|&i| lines[i].starts_with("prod"))
        .collect();
    assert_eq!(prods.len(), 12);
    for &skip in &prods {
        let cut: String = lines
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, l)| format!("{l}\n"))
            .collect();
        let report = check_ring_axioms(&parse_ring_spec(&cut).unwrap());
        let failing: Vec<_> = report.failing().collect();
        assert!(
            !failing.is_empty(),
            "deleting `{}` went unnoticed",
            lines[skip]
        );
        assert!(!failing[0].witnesses.is_empty());
        assert!(failing[0].note.is_some());
    }
}

#[test]
fn malformed_specs_are_rejected_with_line_numbers() {
    let err = parse_ring_spec("ring\nmodulus 4\ndim seven\n").unwrap_err();
    assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    assert!(parse_ring_spec("").is_err());
}

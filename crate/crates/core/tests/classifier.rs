use semilin_core::classifier::*;
use semilin_core::formula::Formula;

#[test]
fn trichotomy() {
    let cfg = ClassifyConfig::with_seed(0);
    let cases = [
        (Formula::parse("x != y").unwrap(), VerdictClass::Equality),
        (b_formula(), VerdictClass::Betweenness),
        (r_formula(), VerdictClass::Order),
        (Formula::parse("C(z, x y)").unwrap(), VerdictClass::Order),
        (Formula::parse("x <= y").unwrap(), VerdictClass::Order),
    ];
    for (phi, want) in cases {
        let t = std::time::Instant::now();
        let v = classify(&phi, &cfg).unwrap();
        eprintln!("{phi}: {v} ({:?})", t.elapsed());
        assert_eq!(v.class, want, "{phi}");
        assert!(v.family(Family::PartialIsomorphisms).violation.is_none());
        for e in &v.evidence {
            if let Some(x) = &e.violation {
                assert!(x.recheck(&phi));
            }
        }
    }
}

#[test]
fn chains() {
    let lt = Formula::parse("x < y").unwrap();
    assert_eq!(chain_classify(&lt, 100, 1).unwrap().0, ChainClass::Linear);
    assert_eq!(chain_classify(&betw_formula(), 100, 1).unwrap().0, ChainClass::Betw);
    assert_eq!(chain_classify(&cyc_formula(), 100, 1).unwrap().0, ChainClass::Cyc);
    assert_eq!(chain_classify(&sep_formula(), 100, 1).unwrap().0, ChainClass::Sep);
    assert_eq!(chain_classify(&Formula::parse("x != y").unwrap(), 100, 1).unwrap().0, ChainClass::Equality);
}

#[test]
fn core_hints() {
    let hint = |fs: &[&str]| {
        let phis: Vec<Formula> = fs.iter().map(|f| Formula::parse(f).unwrap()).collect();
        let h = model_complete_core_hint(&phis, 3).unwrap();
        eprintln!("{fs:?} -> {} {:?}", h.label, h.notes);
        h.label
    };
    assert_eq!(hint(&["x != y"]), CoreLabel::RationalsNeq);
    assert_eq!(hint(&["x < y", "x || y"]), CoreLabel::TreeOrder);
    assert_eq!(model_complete_core_hint(&[b_formula()], 3).unwrap().label, CoreLabel::TreeBetweenness);
    assert_eq!(hint(&["x = y"]), CoreLabel::OneElement);
}

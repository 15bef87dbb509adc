use abduction_core::boolean::*;
use abduction_core::formula::Formula;
use abduction_core::lattice::*;

fn set(ts: &[(&str, TruthTable)]) -> FunctionSet {
    FunctionSet::from_connectives(ts.iter().map(|(n, t)| Connective::new(*n, t.clone()))).unwrap()
}

fn cid(s: &str) -> CloneId {
    s.parse().unwrap()
}

#[test]
fn evaluation_and_duals() {
    assert!(!named::and().eval(&[false, true]).unwrap());
    assert!(named::and_not().eval(&[true, false]).unwrap());
    assert!(named::maj3().eval(&[true, true, false]).unwrap());
    assert_eq!(named::and().dual(), named::or());
    assert_eq!(named::not().dual(), named::not());
    assert_eq!(named::maj3().dual(), named::maj3());
}

#[test]
fn properties() {
    let or = function_properties(&named::or());
    assert!(or.reproduces0 && or.reproduces1 && or.monotone && !or.self_dual && !or.affine);
    assert_eq!(or.shape, Shape::Disjunction);
    let xor = function_properties(&named::xor());
    assert!(xor.reproduces0 && !xor.reproduces1 && !xor.monotone && xor.affine);
    assert_eq!(xor.shape, Shape::General);
    let maj = function_properties(&named::maj3());
    assert!(maj.monotone && maj.self_dual && !maj.affine && maj.reproduces0 && maj.reproduces1);
    assert_eq!(maj.shape, Shape::General);
}

#[test]
fn separating_degrees() {
    assert_eq!(separating_degree(&named::implies(), false), SepDegree::Infinite);
    assert_eq!(separating_degree(&named::maj3(), true), SepDegree::Finite(2));
    assert_eq!(separating_degree(&named::and_not(), true), SepDegree::Infinite);
}

#[test]
fn closures() {
    let bf = clone_closure(&[named::and(), named::not()], 2).unwrap();
    assert_eq!(bf.len(), 16);
    let id = clone_closure(&[named::id()], 2).unwrap();
    assert_eq!(id.len(), 2);
    let xor = clone_closure(&[named::xor()], 2).unwrap();
    let mut expect = vec![
        TruthTable::projection(2, 0),
        TruthTable::projection(2, 1),
        TruthTable::constant(2, false),
        named::xor(),
    ];
    expect.sort();
    let mut got = xor.clone();
    got.sort();
    assert_eq!(got, expect);
}

#[test]
fn signatures_and_identification() {
    let s = signature_of(&set(&[("or", named::or())]));
    assert!(s.all_monotone && s.all_reproduce0 && s.all_reproduce1 && s.all_disjunction && !s.all_affine);
    let s = signature_of(&set(&[("xor3", named::xor3())]));
    assert!(s.all_affine && s.all_reproduce0 && s.all_reproduce1 && s.all_self_dual);
    let s = signature_of(&set(&[("and", named::and()), ("not", named::not())]));
    assert!(!s.all_monotone && !s.all_affine && !s.all_reproduce0);
    assert_eq!(s.sep0_degree, SepDegree::Finite(1));
    assert_eq!(s.sep1_degree, SepDegree::Finite(1));

    assert_eq!(identify_clone(&set(&[("h", named::and_not())])), cid("S1"));
    assert_eq!(identify_clone(&set(&[("or", named::or())])), cid("V2"));
    assert_eq!(identify_clone(&set(&[("maj", named::maj3())])), cid("D2"));
    assert_eq!(identify_clone(&set(&[("and", named::and()), ("not", named::not())])), cid("BF"));
}

#[test]
fn inclusion_and_bases() {
    assert!(clone_leq(cid("V2"), cid("M")));
    assert!(clone_leq(cid("L2"), cid("L")));
    assert!(clone_leq(cid("S00"), cid("S02")));
    assert!(!clone_leq(cid("M"), cid("V2")));

    let bf: Vec<TruthTable> = base_of(cid("BF")).unwrap().tables();
    assert!(bf.contains(&named::and()) && bf.contains(&named::not()));
    assert_eq!(base_of(cid("D1")).unwrap().tables(), vec![named::d1()]);
    let s12 = base_of(cid("S1^2")).unwrap().tables();
    assert!(s12.contains(&named::and_not()) && s12.contains(&named::h(2)));
    assert_eq!(named::h(2), named::maj3());
}

#[test]
fn identification_round_trip() {
    for c in CloneId::catalog(3) {
        let b = match base_of(c) {
            Ok(b) => b,
            Err(e) => panic!("{c}: {e}"),
        };
        assert_eq!(identify_clone(&b), c, "{c}");
    }
}

#[test]
fn classification() {
    let or = set(&[("or", named::or())]);
    assert_eq!(classify_decision(&or, Variant::Q), ComplexityLabel::IN_L);
    assert_eq!(classify_decision(&or, Variant::T), ComplexityLabel::NP_COMPLETE);
    let h = set(&[("h", named::and_not())]);
    assert_eq!(classify_decision(&h, Variant::Q), ComplexityLabel::SIGMA2P_COMPLETE);
    let x = set(&[("xor3", named::xor3())]);
    assert_eq!(classify_decision(&x, Variant::C), ComplexityLabel::P_PARITYL_HARD);
    assert_eq!(classify_counting(&or), ComplexityLabel::SHARP_P_COMPLETE);
    let an = set(&[("and", named::and()), ("not", named::not())]);
    assert_eq!(classify_counting(&an), ComplexityLabel::SHARP_CONP_COMPLETE);
    assert_eq!(classify_counting(&set(&[("not", named::not())])), ComplexityLabel::FP);
}

#[test]
fn synthesis() {
    let h = set(&[("h", named::and_not())]);
    let t = synthesize_representation(&h, &named::and(), DEFAULT_SYNTH_BUDGET).unwrap();
    assert_eq!(t.table().unwrap(), named::and());
    assert_eq!(t.body.to_string(), "(h x (h x y))");

    let or = set(&[("or", named::or())]);
    let t = synthesize_representation(&or, &named::or(), DEFAULT_SYNTH_BUDGET).unwrap();
    assert_eq!(t.body.to_string(), "(or x y)");
    let or3 = TruthTable::from_fn(3, |a| a.iter().any(|&b| b));
    let t = synthesize_representation(&or, &or3, DEFAULT_SYNTH_BUDGET).unwrap();
    assert_eq!(t.table().unwrap(), or3);
    assert_eq!(t.body.size(), 5);
    assert!(matches!(
        synthesize_representation(&or, &named::and(), DEFAULT_SYNTH_BUDGET),
        Err(abduction_core::AbdError::NoRepresentation)
    ));
    assert!(matches!(t.body, Formula::Apply(..)));
}

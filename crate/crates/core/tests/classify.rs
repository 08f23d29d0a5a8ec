use orbitlang_core::arith::upoly::UPoly;
use orbitlang_core::arith::{int, rat};
use orbitlang_core::classify::{
    chebyshev, conjugate_poly, decompose, irreducibility, normal_form, periodic_curve_candidates, plane_vars,
    power_or_chebyshev_class, type_of, verify_invariant_curve, CurveForm, Decomposition, InvariantVerdict,
    Irreducibility, PowerClass,
};
use orbitlang_core::expr::parse_poly;

#[test]
fn chebyshev_recurrence_values() {
    assert_eq!(chebyshev(2), UPoly::from_ints(&[-2, 0, 1]));
    assert_eq!(chebyshev(3), UPoly::from_ints(&[0, -3, 0, 1]));
    assert_eq!(chebyshev(4), UPoly::from_ints(&[2, 0, -4, 0, 1]));
}

#[test]
fn normal_form_is_monic_and_depressed() {
    let f = UPoly::new(vec![int(5), int(3), int(2)]);
    let nf = normal_form(&f).unwrap();
    assert_eq!(nf.normal.lead(), int(1));
    assert_eq!(nf.normal.coeff(1), int(0));
    assert_eq!(conjugate_poly(&f, &nf.mu_a, &nf.mu_b), nf.normal);
}

#[test]
fn type_pairs() {
    assert_eq!(type_of(&UPoly::from_ints(&[0, 0, 0, 1])).b, 0);
    let t = type_of(&UPoly::from_ints(&[0, 1, 0, 1]));
    assert_eq!((t.a, t.b), (1, 2));
}

#[test]
fn conjugates_of_models_are_recognised() {
    let g = conjugate_poly(&UPoly::monomial(int(1), 3), &rat(2, 3), &int(-1));
    assert_eq!(power_or_chebyshev_class(&g).unwrap(), PowerClass::PowerConjugate(3));
    let h = conjugate_poly(&chebyshev(2), &int(-3), &rat(1, 2));
    assert_eq!(power_or_chebyshev_class(&h).unwrap(), PowerClass::ChebyshevConjugate(2));
    assert_eq!(power_or_chebyshev_class(&UPoly::from_ints(&[1, 0, 1])).unwrap(), PowerClass::Neither);
}

#[test]
fn decomposition_of_an_iterate() {
    let f = UPoly::from_ints(&[1, 0, 1]);
    match decompose(&f.compose(&f)) {
        Decomposition::Decomposition { outer, inner } => assert_eq!(outer.compose(&inner), f.compose(&f)),
        Decomposition::Indecomposable => panic!("f∘f decomposes"),
    }
    assert_eq!(decompose(&UPoly::from_ints(&[0, 1, 1, 1, 0, 1])), Decomposition::Indecomposable);
}

#[test]
fn curve_candidates_include_graphs() {
    let f = UPoly::from_ints(&[1, 0, 1]);
    let cands = periodic_curve_candidates(&f, 1).unwrap();
    assert!(cands.iter().any(|c| c.form == CurveForm::YOfX { r: 1, zeta: 1 }));
    for c in &cands {
        assert!(matches!(verify_invariant_curve(&c.curve, &f, 4), Ok(InvariantVerdict::PeriodicWithPeriod(_))));
    }
}

#[test]
fn irreducibility_of_plane_curves() {
    let v = plane_vars();
    assert_eq!(irreducibility(&parse_poly("y - x^2 - 1", &v).unwrap()), Irreducibility::Irreducible);
    assert!(matches!(irreducibility(&parse_poly("(x - 1)*(x + y)", &v).unwrap()), Irreducibility::Reducible(_)));
    // two mixed factors: the specialization test cannot tell, but never claims irreducible
    assert_ne!(irreducibility(&parse_poly("(x - y)*(x + y + 1)", &v).unwrap()), Irreducibility::Irreducible);
}

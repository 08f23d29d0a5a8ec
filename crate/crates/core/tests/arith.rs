use num_bigint::BigInt;
use num_traits::Zero;
use orbitlang_core::arith::modp::{legendre, pow_mod, rat_mod};
use orbitlang_core::arith::padic::PadicNumber;
use orbitlang_core::arith::poly::Poly;
use orbitlang_core::arith::upoly::UPoly;
use orbitlang_core::arith::{int, rat, Valuation};
use orbitlang_core::expr::{coordinate_vars, parse_poly, parse_upoly, ParseError};

#[test]
fn padic_valuation_and_residue() {
    let x = PadicNumber::from_rational(&rat(50, 3), 5, 6);
    assert_eq!(x.valuation(), Valuation::Finite(2));
    assert_eq!(x.precision(), 6);
    // 50/3 ≡ 50 * 3^{-1} mod 5^6
    let inv3 = BigInt::from(10417); // 3 * 10417 = 31251 ≡ 1 mod 15625
    assert_eq!((BigInt::from(3) * &inv3) % 15625, BigInt::from(1));
    assert_eq!(x.to_residue().unwrap(), (BigInt::from(50) * inv3) % 15625);
    let y = PadicNumber::from_rational(&rat(1, 3), 3, 5);
    assert_eq!(y.valuation(), Valuation::Finite(-1));
}

#[test]
fn padic_precision_loss_under_cancellation() {
    let a = PadicNumber::from_int(1, 7, 10);
    let b = PadicNumber::from_int(1 + 7 * 7 * 7, 7, 10);
    let d = b.sub(&a);
    assert_eq!(d.valuation(), Valuation::Finite(3));
    // dividing by 7^3 costs three digits
    let q = d.div(&PadicNumber::from_int(343, 7, 10)).unwrap();
    assert_eq!(q.precision(), 7);
    assert!(q.agrees_with(&PadicNumber::from_int(1, 7, 7)));
}

#[test]
fn modular_helpers() {
    assert_eq!(pow_mod(3, 100, 101), 1);
    assert_eq!(legendre(2, 7), 1);
    assert_eq!(legendre(2, 5), -1);
    assert_eq!(rat_mod(&rat(1, 2), 5), Some(3));
    assert_eq!(rat_mod(&rat(1, 5), 5), None);
}

#[test]
fn univariate_roots_and_composition() {
    let f = UPoly::from_ints(&[1, 0, 1]);
    let ff = f.compose(&f);
    assert_eq!(ff, UPoly::from_ints(&[2, 0, 2, 0, 1]));
    assert_eq!(ff.eval(&int(2)), int(26));
    let g = UPoly::from_ints(&[-6, 11, -6, 1]);
    assert_eq!(g.rational_roots(), vec![int(1), int(2), int(3)]);
}

#[test]
fn bivariate_gcd_division_and_resultant() {
    let v = coordinate_vars(2);
    let a = parse_poly("x^2 - y^2", &v).unwrap();
    let b = parse_poly("x - y", &v).unwrap();
    assert_eq!(a.gcd(&b), b);
    assert_eq!(a.divexact(&b).unwrap(), parse_poly("x + y", &v).unwrap());
    assert!(parse_poly("x^2 + 1", &v).unwrap().divexact(&b).is_err());
    // Res_x(x^2 - y, x - 2) = 4 - y
    let r = parse_poly("x^2 - y", &v).unwrap().resultant(&parse_poly("x - 2", &v).unwrap(), 0);
    assert_eq!(r.primitive_integer(), parse_poly("4 - y", &v).unwrap().primitive_integer());
}

#[test]
fn parse_rejects_division_by_zero() {
    let v = coordinate_vars(1);
    assert!(matches!(parse_poly("x/0", &v), Err(ParseError::DivisionByZero { .. })));
    assert!(parse_upoly("t^2 + 1/(2-2)").is_err());
}

#[test]
fn parse_accepts_rational_coefficients() {
    let v = coordinate_vars(2);
    let f = parse_poly("(x + 1/2)*(y - 3/4)", &v).unwrap();
    assert!(f.eval(&[rat(-1, 2), int(5)]).is_zero());
    assert_eq!(f.eval(&[int(0), int(0)]), rat(-3, 8));
    let z = Poly::zero_in(&v);
    assert!(z.is_zero());
}

//! Normal forms, power and Chebyshev detection, decomposition, and periodic
//! curves for the split action `(f, f)` on the plane.

use crate::arith::modp::FpPoly;
use crate::arith::poly::Poly;
use crate::arith::primes::next_prime;
use crate::arith::upoly::UPoly;
use crate::arith::{int, rational_root, Rational};
use crate::dynsys::{Mobius, P1Point, RationalMap};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("degree must be at least 2")]
    DegreeTooSmall,
    #[error("the leading coefficient has no rational root of the needed order")]
    RootNotRational,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("the curve is reducible: {0}")]
    ReducibleInput(String),
    #[error("irreducibility could not be decided")]
    IrreducibilityUndecided,
    #[error("a polynomial map is required")]
    NotPolynomial,
    #[error("image computation failed: {0}")]
    ImageFailed(String),
}

/// `b = 0` marks a pure power `t^m`, whose type is otherwise undefined.
pub const PURE_POWER: u32 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TypePair {
    pub a: u32,
    pub b: u32,
}

impl TypePair {
    pub fn is_pure_power(&self) -> bool {
        self.b == PURE_POWER
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalFormRecord {
    #[serde(serialize_with = "crate::arith::display_str")]
    pub original: UPoly,
    /// `μ(t) = A t + B`.
    #[serde(serialize_with = "crate::arith::display_str")]
    pub mu_a: Rational,
    #[serde(serialize_with = "crate::arith::display_str")]
    pub mu_b: Rational,
    #[serde(serialize_with = "crate::arith::display_str")]
    pub normal: UPoly,
    pub type_pair: TypePair,
}

impl NormalFormRecord {
    pub fn mu(&self) -> Mobius {
        Mobius::affine(self.mu_a.clone(), self.mu_b.clone())
    }
}

fn affine(a: &Rational, b: &Rational) -> UPoly {
    UPoly::new(vec![b.clone(), a.clone()])
}

/// `μ⁻¹ ∘ f ∘ μ` for `μ = A t + B`.
pub fn conjugate_poly(f: &UPoly, a: &Rational, b: &Rational) -> UPoly {
    let inner = f.compose(&affine(a, b));
    (&inner - &UPoly::constant(b.clone())).scale(&(Rational::one() / a))
}

/// `μ = A t + B` with `A^{m-1} = 1/lc(f)` and `B = -a_{m-1} / (m·lc)`, so
/// that `μ⁻¹ ∘ f ∘ μ` is monic with no `t^{m-1}` term. When `m - 1` is even
/// the positive root is taken.
pub fn normal_form(f: &UPoly) -> Result<NormalFormRecord, ClassifyError> {
    let m = f.deg0();
    if m < 2 {
        return Err(ClassifyError::DegreeTooSmall);
    }
    let lc = f.lead();
    let a = rational_root(&(Rational::one() / &lc), (m - 1) as u32).ok_or(ClassifyError::RootNotRational)?;
    let a = a.abs() * if (m - 1) % 2 == 1 && lc.is_negative() { -Rational::one() } else { Rational::one() };
    let b = -f.coeff(m - 1) / (Rational::from_integer(m.into()) * &lc);
    let normal = conjugate_poly(f, &a, &b);
    // μ ∘ f̂ = f ∘ μ
    debug_assert_eq!(affine(&a, &b).compose(&normal), f.compose(&affine(&a, &b)));
    assert!(normal.lead().is_one() && normal.coeff(m - 1).is_zero());
    let type_pair = type_of(&normal);
    Ok(NormalFormRecord { original: f.clone(), mu_a: a, mu_b: b, normal, type_pair })
}

/// `a` is the least index of a nonzero coefficient, `b` the gcd of
/// `e - a` over the nonzero exponents `e`.
pub fn type_of(f: &UPoly) -> TypePair {
    let nz: Vec<u32> = f.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i as u32).collect();
    let a = nz[0];
    let b = nz.iter().fold(0u32, |g, &e| g.gcd(&(e - a)));
    TypePair { a, b }
}

/// `D_0 = 2`, `D_1 = t`, `D_m = t D_{m-1} - D_{m-2}`.
pub fn chebyshev(m: usize) -> UPoly {
    let t = UPoly::x();
    let (mut prev, mut cur) = (UPoly::constant(int(2)), t.clone());
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = &(&t * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PowerClass {
    PowerConjugate(usize),
    ChebyshevConjugate(usize),
    Neither,
}

/// Rational `ζ` with `ζ^{m-1} = 1`.
fn rational_unit_roots(m: usize) -> Vec<Rational> {
    if (m - 1) % 2 == 0 {
        vec![int(1), int(-1)]
    } else {
        vec![int(1)]
    }
}

/// `ζ⁻¹ g(ζ t)`.
fn twist(g: &UPoly, zeta: &Rational) -> UPoly {
    conjugate_poly(g, zeta, &Rational::zero())
}

pub fn power_or_chebyshev_class(f: &UPoly) -> Result<PowerClass, ClassifyError> {
    let nf = normal_form(f)?;
    let m = f.deg0();
    let power = UPoly::monomial(int(1), m);
    let cheb = chebyshev(m);
    for zeta in rational_unit_roots(m) {
        let g = twist(&nf.normal, &zeta);
        if g == power {
            return Ok(PowerClass::PowerConjugate(m));
        }
        if g == cheb {
            return Ok(PowerClass::ChebyshevConjugate(m));
        }
    }
    Ok(PowerClass::Neither)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Decomposition {
    Decomposition {
        #[serde(serialize_with = "crate::arith::display_str")]
        outer: UPoly,
        #[serde(serialize_with = "crate::arith::display_str")]
        inner: UPoly,
    },
    Indecomposable,
}

/// The monic `h` of degree `s` with `h(0) = 0` whose `r`-th power agrees with
/// the monic `f` in the top `s` coefficients below the leading one.
fn right_factor_candidate(f: &UPoly, r: usize, s: usize) -> UPoly {
    let m = r * s;
    let mut h = UPoly::monomial(int(1), s);
    let rr = Rational::from_integer(r.into());
    for k in 1..s {
        let c = h.pow(r as u32).coeff(m - k);
        let delta = (f.coeff(m - k) - c) / &rr;
        h = &h + &UPoly::monomial(delta, s - k);
    }
    h
}

/// Expansion `f = Σ g_i h^i`, or `None` if some remainder is not constant.
fn expand_in(f: &UPoly, h: &UPoly) -> Option<UPoly> {
    let mut g = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(h);
        if !r.is_constant() {
            return None;
        }
        g.push(r.coeff(0));
        rest = q;
    }
    Some(UPoly::new(g))
}

/// First decomposition `f = g ∘ h` by increasing inner degree.
pub fn decompose(f: &UPoly) -> Decomposition {
    let m = f.deg0();
    let lc = f.lead();
    let monic = f.monic();
    for s in 2..m {
        if m % s != 0 || m / s < 2 {
            continue;
        }
        let h = right_factor_candidate(&monic, m / s, s);
        if let Some(g) = expand_in(&monic, &h) {
            let outer = g.scale(&lc);
            debug_assert_eq!(outer.compose(&h), *f);
            return Decomposition::Decomposition { outer, inner: h };
        }
    }
    Decomposition::Indecomposable
}

/// Forms of the periodic curves of `(f, f)` for indecomposable `f` that is
/// neither a power nor Chebyshev up to conjugacy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CurveForm {
    XConst(P1Point),
    YConst(P1Point),
    /// `x = ζ f^r(y)`.
    XOfY { r: usize, zeta: i8 },
    /// `y = ζ f^r(x)`.
    YOfX { r: usize, zeta: i8 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveCandidate {
    pub form: CurveForm,
    #[serde(serialize_with = "crate::arith::display_str")]
    pub curve: Poly,
}

pub fn plane_vars() -> Arc<Vec<String>> {
    Poly::new_vars(&["x", "y"])
}

fn iterate_poly(f: &UPoly, r: usize) -> UPoly {
    (0..r).fold(UPoly::x(), |acc, _| f.compose(&acc))
}

/// Rational periodic points of period at most this bound are used for the
/// constant forms.
pub const CANDIDATE_PERIOD_BOUND: usize = 3;

pub fn periodic_curve_candidates(f: &UPoly, r_max: usize) -> Result<Vec<CurveCandidate>, ClassifyError> {
    let m = f.deg0();
    if m < 2 {
        return Err(ClassifyError::HypothesisViolated("linear map".into()));
    }
    let nf = normal_form(f)?;
    if nf.normal != *f {
        return Err(ClassifyError::HypothesisViolated("not in normal form".into()));
    }
    match power_or_chebyshev_class(f)? {
        PowerClass::Neither => {}
        c => return Err(ClassifyError::HypothesisViolated(format!("{c:?}"))),
    }
    if decompose(f) != Decomposition::Indecomposable {
        return Err(ClassifyError::HypothesisViolated("decomposable".into()));
    }
    let TypePair { a, b } = nf.type_pair;
    let mut zetas = vec![1i8];
    if b % 2 == 0 && a % 2 == 1 {
        zetas.push(-1);
    }
    let v = plane_vars();
    let x = Poly::var(&v, 0);
    let y = Poly::var(&v, 1);
    let map = RationalMap::from_polynomial(f).unwrap();
    let mut out = Vec::new();
    for n in 1..=CANDIDATE_PERIOD_BOUND {
        for z in map.periodic_points(n) {
            let Some(q) = z.finite() else { continue };
            let c = Poly::constant(&v, q.clone());
            out.push(CurveCandidate { form: CurveForm::XConst(z.clone()), curve: (&x - &c).primitive_integer() });
            out.push(CurveCandidate { form: CurveForm::YConst(z.clone()), curve: (&y - &c).primitive_integer() });
        }
    }
    for r in 0..=r_max {
        let fr = iterate_poly(f, r);
        for &zeta in &zetas {
            let s = Rational::from_integer(zeta.into());
            let fy = Poly::from_upoly(&v, 1, &fr).scale(&s);
            let fx = Poly::from_upoly(&v, 0, &fr).scale(&s);
            let xy = (&x - &fy).primitive_integer();
            let yx = (&y - &fx).primitive_integer();
            if r == 0 {
                // x = ζy and y = ζx are the same line
                out.push(CurveCandidate { form: CurveForm::YOfX { r, zeta }, curve: yx });
                continue;
            }
            out.push(CurveCandidate { form: CurveForm::XOfY { r, zeta }, curve: xy });
            out.push(CurveCandidate { form: CurveForm::YOfX { r, zeta }, curve: yx });
        }
    }
    Ok(out)
}

/// Closure of `(f × f)(C)` for a polynomial `f`.
///
/// Eliminating `x, y` from `C, u - f(x), v - f(y)` by two resultants gives
/// `c · I^e` with `I` the image; `I` is the largest perfect root. Images of
/// rational points of `C` are checked to lie on it.
pub fn image_curve(c: &Poly, f: &UPoly) -> Result<Poly, ClassifyError> {
    let v4 = Poly::new_vars(&["x", "y", "u", "v"]);
    let cc = c.embed(&v4, &[0, 1]);
    let gx = &Poly::var(&v4, 2) - &Poly::from_upoly(&v4, 0, f);
    let gy = &Poly::var(&v4, 3) - &Poly::from_upoly(&v4, 1, f);
    let r1 = cc.resultant(&gx, 0);
    let r2 = r1.resultant(&gy, 1);
    if r2.is_zero() {
        return Err(ClassifyError::ImageFailed("vanishing resultant".into()));
    }
    let r2 = r2.embed(&plane_vars(), &[0, 1, 0, 1]);
    let (du, dv) = (r2.deg(0), r2.deg(1));
    let g = du.gcd(&dv).max(1);
    let image = (1..=g)
        .rev()
        .filter(|e| g % e == 0)
        .find_map(|e| r2.perfect_root(e))
        .ok_or_else(|| ClassifyError::ImageFailed("no perfect root".into()))?
        .primitive_integer();
    for (x0, y0) in rational_points(c, 3) {
        if !image.eval(&[f.eval(&x0), f.eval(&y0)]).is_zero() {
            return Err(ClassifyError::ImageFailed("image misses a point".into()));
        }
    }
    Ok(image)
}

/// Up to `want` rational points with small integer `x` (or `y`).
pub fn rational_points(c: &Poly, want: usize) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    for k in 0..40i64 {
        let x0 = int(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 });
        for i in 0..2 {
            let u = c.eval_var(i, &x0).to_upoly(1 - i).unwrap();
            let roots = if u.is_zero() { vec![int(0)] } else { u.rational_roots() };
            for r in roots {
                let pt = if i == 0 { (x0.clone(), r) } else { (r, x0.clone()) };
                if !out.contains(&pt) {
                    out.push(pt);
                }
                if out.len() >= want {
                    return out;
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Irreducibility {
    Irreducible,
    Reducible(String),
    Unknown,
}

/// Factor degrees of a squarefree polynomial over `F_p`, by distinct-degree
/// factorization.
fn fp_factor_degrees(f: &FpPoly) -> Vec<usize> {
    let p = f.p;
    let x = FpPoly::x(p);
    let mut rest = f.monic();
    let mut xp = x.clone();
    let mut out = Vec::new();
    let mut i = 0;
    while rest.degree().unwrap_or(0) >= 2 * (i + 1) {
        i += 1;
        xp = xp.powmod(p, &rest);
        let g = rest.gcd(&xp.sub(&x));
        let dg = g.degree().unwrap_or(0);
        if dg > 0 {
            out.extend(std::iter::repeat_n(i, dg / i));
            rest = rest.div_rem(&g).0;
            xp = xp.rem(&rest);
        }
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push(d);
    }
    out
}

/// Irreducibility of a univariate polynomial over `Q` from factor-degree
/// patterns mod several primes; `None` if undecided.
pub fn univariate_irreducible(f: &UPoly) -> Option<bool> {
    let n = f.deg0();
    if n <= 1 {
        return Some(n == 1);
    }
    if !f.gcd(&f.derivative()).is_constant() {
        return Some(false);
    }
    if !f.rational_roots().is_empty() {
        return Some(false);
    }
    let lc = f.lead();
    let mut possible: BTreeSet<usize> = (0..=n).collect();
    let mut p = 1000u64;
    let mut used = 0;
    while used < 24 {
        p = next_prime(p + 1);
        let Some(fp) = FpPoly::from_rationals(p, f.coeffs()) else { continue };
        if fp.degree() != Some(n) || !fp.is_squarefree() || crate::arith::modp::rat_mod(&lc, p).is_none() {
            continue;
        }
        used += 1;
        let mut sums: BTreeSet<usize> = BTreeSet::from([0]);
        for d in fp_factor_degrees(&fp) {
            let shifted: Vec<usize> = sums.iter().map(|s| s + d).collect();
            sums.extend(shifted);
        }
        possible = possible.intersection(&sums).copied().collect();
        if possible.len() == 2 {
            return Some(true);
        }
    }
    None
}

/// Irreducibility over `Q` of a plane curve.
///
/// A factor involving only one variable shows up in the content with respect
/// to the other. Otherwise a specialization `C(x, y0)` of full degree that is
/// irreducible certifies irreducibility.
pub fn irreducibility(c: &Poly) -> Irreducibility {
    if c.is_constant() {
        return Irreducibility::Reducible("constant".into());
    }
    for i in 0..2 {
        if c.deg(i) == 0 {
            let u = c.to_upoly(1 - i).unwrap();
            return match univariate_irreducible(&u) {
                Some(true) => Irreducibility::Irreducible,
                Some(false) => Irreducibility::Reducible("univariate factor".into()),
                None => Irreducibility::Unknown,
            };
        }
    }
    for i in 0..2 {
        if !c.content_in(i).is_constant() {
            return Irreducibility::Reducible(format!("content in {}", c.vars()[i]));
        }
    }
    for i in 0..2 {
        if c.deg(i) == 1 {
            return Irreducibility::Irreducible;
        }
        let lead = c.coefficients_in(i).pop().unwrap();
        for k in 0..12i64 {
            let y0 = int(if k % 2 == 0 { k / 2 + 2 } else { -(k + 1) / 2 - 1 });
            if lead.eval(&[y0.clone(), y0.clone()]).is_zero() {
                continue;
            }
            let u = c.eval_var(1 - i, &y0).to_upoly(i).unwrap();
            if let Some(true) = univariate_irreducible(&u) {
                return Irreducibility::Irreducible;
            }
        }
    }
    if !c.gcd(&c.derivative(0)).is_constant() {
        return Irreducibility::Reducible("square factor".into());
    }
    Irreducibility::Unknown
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum InvariantVerdict {
    PeriodicWithPeriod(usize),
    /// `chain[i]` is the `i`-th image; `preperiodic` records a repeat in
    /// the chain that does not return to `C`.
    NotPeriodicUpTo {
        k_max: usize,
        #[serde(serialize_with = "crate::arith::display_seq")]
        chain: Vec<Poly>,
        preperiodic: bool,
    },
}

/// Iterates images of an irreducible curve under `(f, f)`, comparing each
/// with `C` up to scalars.
pub fn verify_invariant_curve(c: &Poly, f: &UPoly, k_max: usize) -> Result<InvariantVerdict, ClassifyError> {
    match irreducibility(c) {
        Irreducibility::Irreducible => {}
        Irreducibility::Reducible(why) => return Err(ClassifyError::ReducibleInput(why)),
        Irreducibility::Unknown => return Err(ClassifyError::IrreducibilityUndecided),
    }
    let c0 = c.rename(&plane_vars()).primitive_integer();
    let mut chain = vec![c0.clone()];
    for k in 1..=k_max {
        let next = image_curve(chain.last().unwrap(), f)?;
        if next == c0 {
            return Ok(InvariantVerdict::PeriodicWithPeriod(k));
        }
        let repeat = chain.contains(&next);
        chain.push(next);
        if repeat {
            return Ok(InvariantVerdict::NotPeriodicUpTo { k_max, chain, preperiodic: true });
        }
    }
    Ok(InvariantVerdict::NotPeriodicUpTo { k_max, chain, preperiodic: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::expr::parse_poly;

    fn up(cs: &[i64]) -> UPoly {
        UPoly::from_ints(cs)
    }

    #[test]
    fn normal_forms() {
        let nf = normal_form(&up(&[0, 4, 2])).unwrap();
        assert_eq!(nf.normal, up(&[-2, 0, 1]));
        assert_eq!((nf.mu_a.clone(), nf.mu_b.clone()), (rat(1, 2), int(-1)));
        let nf = normal_form(&up(&[0, 1, 0, 1])).unwrap();
        assert_eq!((nf.mu_a, nf.mu_b), (int(1), int(0)));
        assert_eq!(normal_form(&up(&[0, 0, 0, 2])), Err(ClassifyError::RootNotRational));
    }

    #[test]
    fn types() {
        assert_eq!(type_of(&up(&[0, 0, 0, 1, 0, 1])), TypePair { a: 3, b: 2 });
        assert_eq!(type_of(&up(&[0, -3, 0, 1])), TypePair { a: 1, b: 2 });
        assert!(type_of(&up(&[0, 0, 0, 1])).is_pure_power());
    }

    #[test]
    fn chebyshev_small() {
        assert_eq!(chebyshev(2), up(&[-2, 0, 1]));
        assert_eq!(chebyshev(3), up(&[0, -3, 0, 1]));
        // D_3(2t) = 2 T_3(t)
        assert_eq!(chebyshev(3).compose(&up(&[0, 2])), up(&[0, -6, 0, 8]));
    }

    #[test]
    fn classes() {
        assert_eq!(power_or_chebyshev_class(&up(&[-2, 0, 1])), Ok(PowerClass::ChebyshevConjugate(2)));
        assert_eq!(power_or_chebyshev_class(&up(&[0, 4, 2])), Ok(PowerClass::ChebyshevConjugate(2)));
        assert_eq!(power_or_chebyshev_class(&up(&[1, 0, 1])), Ok(PowerClass::Neither));
        // (t - 1)^2 + 1 is t^2 conjugated by t + 1; (t + 1)^2 is not conjugate to t^2 over Q
        assert_eq!(power_or_chebyshev_class(&up(&[2, -2, 1])), Ok(PowerClass::PowerConjugate(2)));
        assert_eq!(power_or_chebyshev_class(&up(&[1, 2, 1])), Ok(PowerClass::Neither));
    }

    #[test]
    fn decompositions() {
        assert_eq!(
            decompose(&up(&[0, 0, 1, 0, 1])),
            Decomposition::Decomposition { outer: up(&[0, 1, 1]), inner: up(&[0, 0, 1]) }
        );
        assert_eq!(decompose(&up(&[0, 0, 0, 0, 0, 1])), Decomposition::Indecomposable);
        assert_eq!(decompose(&up(&[0, 1, 0, 0, 1])), Decomposition::Indecomposable);
        let f = up(&[3, -1, 2]).compose(&up(&[1, 0, 5, 1]));
        let Decomposition::Decomposition { outer, inner } = decompose(&f) else { panic!() };
        assert_eq!(outer.compose(&inner), f);
    }

    #[test]
    fn candidates() {
        let f = up(&[0, 1, 0, 1]);
        let cs = periodic_curve_candidates(&f, 1).unwrap();
        let v = plane_vars();
        let want = parse_poly("y + x^3 + x", &v).unwrap();
        assert!(cs.iter().any(|c| c.curve == want));
        let g = up(&[1, 0, 1]);
        let cs = periodic_curve_candidates(&g, 1).unwrap();
        assert!(cs.iter().all(|c| !matches!(c.form, CurveForm::XOfY { zeta: -1, .. } | CurveForm::YOfX { zeta: -1, .. })));
        assert!(cs.iter().any(|c| c.curve == parse_poly("y - x", &v).unwrap().primitive_integer()));
        assert!(periodic_curve_candidates(&up(&[-2, 0, 1]), 1).is_err());
    }

    #[test]
    fn invariant_curves() {
        let v = plane_vars();
        let f = up(&[1, 0, 1]);
        let graph = parse_poly("y - x^2 - 1", &v).unwrap();
        assert_eq!(verify_invariant_curve(&graph, &f, 3), Ok(InvariantVerdict::PeriodicWithPeriod(1)));
        let anti = parse_poly("x + y", &v).unwrap();
        let sq = up(&[0, 0, 1]);
        match verify_invariant_curve(&anti, &sq, 3).unwrap() {
            InvariantVerdict::NotPeriodicUpTo { chain, preperiodic, .. } => {
                assert!(preperiodic);
                assert_eq!(chain[1], parse_poly("x - y", &v).unwrap());
            }
            other => panic!("{other:?}"),
        }
        let odd = up(&[0, 1, 0, 1]);
        let c = parse_poly("y + x^3 + x", &v).unwrap();
        assert_eq!(verify_invariant_curve(&c, &odd, 2), Ok(InvariantVerdict::PeriodicWithPeriod(1)));
        let red = parse_poly("(y^2 + 1)*(x - y)", &v).unwrap();
        assert!(matches!(verify_invariant_curve(&red, &f, 2), Err(ClassifyError::ReducibleInput(_))));
        // split only by a factorization this module does not attempt
        let split = parse_poly("x^2 - y^2", &v).unwrap();
        assert_eq!(verify_invariant_curve(&split, &f, 2), Err(ClassifyError::IrreducibilityUndecided));
    }

    #[test]
    fn univariate_irreducibility() {
        assert_eq!(univariate_irreducible(&up(&[1, 1, 0, 0, 1])), Some(true));
        // t^4 + 1 splits mod every prime, so degree patterns cannot decide it
        assert_eq!(univariate_irreducible(&up(&[1, 0, 0, 0, 1])), None);
        assert_eq!(univariate_irreducible(&up(&[-2, 0, 1])), Some(true));
        // (t^2 + 1)(t^2 + 2)
        assert_eq!(univariate_irreducible(&up(&[2, 0, 3, 0, 1])), None);
    }
}

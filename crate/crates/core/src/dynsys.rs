//! Rational self-maps of the projective line over `Q`.

use crate::arith::modp::{EvalRing, QField};
use crate::arith::upoly::UPoly;
use crate::arith::{common_denominator, height_bits, valuation, Rational, Valuation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// Orbits longer than this without repetition or escape are given up on.
pub const ORBIT_PREFIX_LIMIT: usize = 4096;
/// Height (in bits) past which an orbit point is taken to have escaped.
pub const ESCAPE_HEIGHT_BITS: u64 = 200;
/// Longest cycle searched for among algebraic critical points.
pub const MAX_PERIOD: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynError {
    #[error("constant map")]
    DegreeZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("map has degree {0}, need at least 2")]
    DegreeTooSmall(usize),
    #[error("singular fractional-linear map")]
    SingularMu,
    #[error("critical points of a non-polynomial map are not all rational")]
    IrrationalCriticalData,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum P1Point {
    Finite(Rational),
    Infinity,
}

impl P1Point {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            P1Point::Finite(q) => Some(q),
            P1Point::Infinity => None,
        }
    }

    pub fn from_int(n: i64) -> Self {
        P1Point::Finite(Rational::from_integer(n.into()))
    }

    /// Homogeneous coordinates in a ring (`[x : 1]` or `[1 : 0]`).
    pub fn homogeneous<R: EvalRing>(&self, ring: &R) -> Option<(R::Elem, R::Elem)> {
        match self {
            P1Point::Infinity => Some((ring.one(), ring.zero())),
            P1Point::Finite(q) => {
                if let Some(x) = ring.from_rational(q) {
                    return Some((x, ring.one()));
                }
                // non-integral point: use [1 : 1/q]
                Some((ring.one(), ring.from_rational(&q.recip())?))
            }
        }
    }

    pub fn height_bits(&self) -> u64 {
        match self {
            P1Point::Finite(q) => height_bits(q),
            P1Point::Infinity => 1,
        }
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Finite(q) => write!(f, "{q}"),
            P1Point::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for P1Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `[X : Y] ↦ [F(X,Y) : G(X,Y)]` with integer coefficients, coefficient `i`
/// belonging to `X^i Y^(d-i)`. Coprime, content one, leading nonzero
/// coefficient of `F` positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMap {
    num: Vec<BigInt>,
    den: Vec<BigInt>,
}

impl RationalMap {
    pub fn from_fraction(num: &UPoly, den: &UPoly) -> Result<Self, DynError> {
        if den.is_zero() {
            return Err(DynError::ZeroDenominator);
        }
        let g = num.gcd(den);
        let (num, den) = if g.is_constant() {
            (num.clone(), den.clone())
        } else {
            (num.divexact(&g).unwrap(), den.divexact(&g).unwrap())
        };
        let d = num.deg0().max(den.deg0());
        if d == 0 {
            return Err(DynError::DegreeZero);
        }
        let dd = common_denominator(num.coeffs().iter().chain(den.coeffs()));
        let to_ints = |p: &UPoly| -> Vec<BigInt> {
            (0..=d).map(|i| (p.coeff(i) * Rational::from_integer(dd.clone())).to_integer()).collect()
        };
        Ok(Self::normalize(to_ints(&num), to_ints(&den)))
    }

    pub fn from_polynomial(f: &UPoly) -> Result<Self, DynError> {
        Self::from_fraction(f, &UPoly::one())
    }

    /// Assumes coprime forms of a common degree.
    fn normalize(mut num: Vec<BigInt>, mut den: Vec<BigInt>) -> Self {
        let g = num.iter().chain(&den).fold(BigInt::zero(), |g, c| g.gcd(c));
        let lead_neg = num.iter().rev().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
        let g = if lead_neg { -g } else { g };
        for c in num.iter_mut().chain(den.iter_mut()) {
            *c = &*c / &g;
        }
        RationalMap { num, den }
    }

    pub fn degree(&self) -> usize {
        self.num.len() - 1
    }

    pub fn num_coeffs(&self) -> &[BigInt] {
        &self.num
    }

    pub fn den_coeffs(&self) -> &[BigInt] {
        &self.den
    }

    /// `G = g_0 Y^d`, i.e. `∞` is a totally invariant fixed point.
    pub fn is_polynomial(&self) -> bool {
        self.den.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn numerator(&self) -> UPoly {
        UPoly::new(self.num.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn denominator(&self) -> UPoly {
        UPoly::new(self.den.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// The affine polynomial when `is_polynomial`.
    pub fn as_polynomial(&self) -> Option<UPoly> {
        if !self.is_polynomial() {
            return None;
        }
        let g0 = Rational::from_integer(self.den[0].clone());
        Some(self.numerator().scale(&g0.recip()))
    }

    pub fn apply(&self, x: &P1Point) -> P1Point {
        let d = self.degree();
        let (f, g) = match x {
            P1Point::Infinity => {
                (Rational::from_integer(self.num[d].clone()), Rational::from_integer(self.den[d].clone()))
            }
            P1Point::Finite(t) => (self.numerator().eval(t), self.denominator().eval(t)),
        };
        if g.is_zero() {
            P1Point::Infinity
        } else {
            P1Point::Finite(f / g)
        }
    }

    pub fn iterate(&self, x: &P1Point, n: usize) -> P1Point {
        let mut y = x.clone();
        for _ in 0..n {
            y = self.apply(&y);
        }
        y
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RationalMap) -> RationalMap {
        let a = other.numerator();
        let b = other.denominator();
        let d = self.degree();
        let mut apow = vec![UPoly::one()];
        let mut bpow = vec![UPoly::one()];
        for k in 0..d {
            apow.push(&apow[k] * &a);
            bpow.push(&bpow[k] * &b);
        }
        let form = |cs: &[BigInt]| {
            let mut acc = UPoly::zero();
            for (i, c) in cs.iter().enumerate() {
                if !c.is_zero() {
                    let t = (&apow[i] * &bpow[d - i]).scale(&Rational::from_integer(c.clone()));
                    acc = &acc + &t;
                }
            }
            acc
        };
        RationalMap::from_fraction(&form(&self.num), &form(&self.den)).expect("composition of nonconstant maps")
    }

    pub fn iterate_map(&self, n: usize) -> RationalMap {
        assert!(n >= 1);
        let mut m = self.clone();
        for _ in 1..n {
            m = self.compose(&m);
        }
        m
    }

    /// `F'G - FG'` in the affine coordinate.
    pub fn wronskian(&self) -> UPoly {
        let f = self.numerator();
        let g = self.denominator();
        &(&f.derivative() * &g) - &(&f * &g.derivative())
    }

    /// Derivative at `x` in the standard charts at `x` and `φ(x)`.
    pub fn local_derivative(&self, x: &P1Point) -> Rational {
        let num: Vec<Rational> = self.num.iter().map(|c| Rational::from_integer(c.clone())).collect();
        let den: Vec<Rational> = self.den.iter().map(|c| Rational::from_integer(c.clone())).collect();
        chart_derivative(&QField, &num, &den, x.finite()).expect("coprime forms")
    }

    pub fn multiplier(&self, cycle: &[P1Point]) -> Rational {
        cycle.iter().map(|z| self.local_derivative(z)).fold(Rational::one(), |a, b| a * b)
    }

    pub fn critical_points(&self) -> Result<CriticalData, DynError> {
        let d = self.degree();
        if d < 2 {
            return Err(DynError::DegreeTooSmall(d));
        }
        let w = self.wronskian();
        let mut points = Vec::new();
        for r in w.rational_roots() {
            let k = w.root_multiplicity(&r);
            points.push((P1Point::Finite(r), k + 1));
        }
        let at_inf = 2 * d - 2 - w.deg0();
        if at_inf > 0 {
            points.push((P1Point::Infinity, at_inf as u32 + 1));
        }
        let rational_total: usize = points.iter().map(|(_, e)| *e as usize - 1).sum();
        Ok(CriticalData { all_rational: rational_total == 2 * d - 2, points, wronskian: w })
    }

    pub fn orbit_kind(&self, x: &P1Point) -> OrbitKind {
        let escape = self.escape_data();
        let mut seen: HashMap<P1Point, usize> = HashMap::new();
        let mut y = x.clone();
        for i in 0..ORBIT_PREFIX_LIMIT {
            if let Some(&j) = seen.get(&y) {
                return OrbitKind::Preperiodic { tail: j, period: i - j };
            }
            if let Some(w) = escape.check(&y, i) {
                return OrbitKind::Wandering(w);
            }
            seen.insert(y.clone(), i);
            y = self.apply(&y);
        }
        OrbitKind::Wandering(EscapeWitness::PrefixExhausted { length: ORBIT_PREFIX_LIMIT })
    }

    fn escape_data(&self) -> EscapeData {
        let Some(f) = self.as_polynomial() else {
            return EscapeData { radius: None, bad: None };
        };
        let lc = f.lead().abs();
        let rest: Rational = f.coeffs()[..f.deg0()].iter().map(|c| c.abs()).sum();
        let radius = ((Rational::one() + rest) / lc).max(Rational::one());
        let mut bad = common_denominator(f.coeffs());
        bad *= f.lead().numer();
        EscapeData { radius: Some(radius), bad: Some(bad.abs()) }
    }

    pub fn classify_cycle(&self, x: &P1Point, place: Place) -> Result<CycleRecord, NotPeriodic> {
        match self.orbit_kind(x) {
            OrbitKind::Preperiodic { tail: 0, period } => {
                let cycle: Vec<P1Point> =
                    std::iter::successors(Some(x.clone()), |z| Some(self.apply(z))).take(period).collect();
                let lambda = self.multiplier(&cycle);
                let class = classify_multiplier(&lambda, place);
                Ok(CycleRecord { points: cycle, period, multiplier: lambda, class, place })
            }
            OrbitKind::Preperiodic { tail, period } => Err(NotPeriodic::StrictlyPreperiodic { tail, period }),
            OrbitKind::Wandering(w) => Err(NotPeriodic::Escaped(w)),
        }
    }

    pub fn exceptional_structure(&self) -> Result<Exceptional, DynError> {
        let d = self.degree();
        let crit = self.critical_points()?;
        let total: Vec<&P1Point> = crit.points.iter().filter(|(_, e)| *e as usize == d).map(|(z, _)| z).collect();
        let mut fixed = Vec::new();
        let mut swapped = Vec::new();
        for z in &total {
            let w = self.apply(z);
            if &&w == z {
                fixed.push((*z).clone());
            } else if total.contains(&&w) && self.apply(&w) == **z {
                swapped.push((*z).clone());
            }
        }
        Ok(match (fixed.len(), swapped.len()) {
            (2, _) => Exceptional::Two { points: [fixed[0].clone(), fixed[1].clone()], inverted: false },
            (_, 2) => Exceptional::Two { points: [swapped[0].clone(), swapped[1].clone()], inverted: true },
            (1, _) => Exceptional::One { point: fixed[0].clone() },
            _ => Exceptional::None,
        })
    }

    /// `μ⁻¹ ∘ φ ∘ μ`.
    pub fn conjugate(&self, mu: &Mobius) -> Result<RationalMap, DynError> {
        let m = mu.to_map()?;
        let inv = mu.inverse()?.to_map()?;
        Ok(inv.compose(&self.compose(&m)))
    }

    /// Points of exact period `n` (rational or `∞`).
    pub fn periodic_points(&self, n: usize) -> Vec<P1Point> {
        let m = self.iterate_map(n);
        let fixed_eq = &m.numerator() - &(&UPoly::x() * &m.denominator());
        let mut pts: Vec<P1Point> = if fixed_eq.is_zero() {
            Vec::new()
        } else {
            fixed_eq.rational_roots().into_iter().map(P1Point::Finite).collect()
        };
        if m.apply(&P1Point::Infinity) == P1Point::Infinity {
            pts.push(P1Point::Infinity);
        }
        pts.retain(|z| (1..n).all(|k| n % k != 0 || self.iterate(z, k) != *z));
        pts
    }

    /// Periodicity of every critical point, rational or not.
    ///
    /// Irrational critical points of polynomial maps are tracked as a
    /// generic root of their squarefree factor of the Wronskian, iterating in
    /// `Q[t]/(w)` and testing `gcd(w, z_n - t)`.
    pub fn critical_orbits(&self) -> Result<Vec<CriticalOrbit>, DynError> {
        let crit = self.critical_points()?;
        let mut out = Vec::new();
        for (z, e) in &crit.points {
            let periodic = matches!(self.orbit_kind(z), OrbitKind::Preperiodic { tail: 0, .. });
            out.push(CriticalOrbit { locus: CriticalLocus::Rational(z.clone()), ramification: *e, periodic });
        }
        if crit.all_rational {
            return Ok(out);
        }
        let Some(f) = self.as_polynomial() else {
            return Err(DynError::IrrationalCriticalData);
        };
        for (w, k) in crit.wronskian.squarefree_decomposition() {
            let mut rest = w.clone();
            for r in w.rational_roots() {
                rest = rest.divexact(&UPoly::new(vec![-r, Rational::one()])).unwrap();
            }
            if rest.is_constant() {
                continue;
            }
            let periodic = algebraic_orbit_is_periodic(&f, &rest);
            out.push(CriticalOrbit { locus: CriticalLocus::Algebraic(rest), ramification: k + 1, periodic });
        }
        Ok(out)
    }
}

fn algebraic_orbit_is_periodic(f: &UPoly, w: &UPoly) -> bool {
    let t = UPoly::x();
    let mut z = t.clone();
    for _ in 0..MAX_PERIOD {
        z = f.coeffs().iter().rev().fold(UPoly::zero(), |acc, c| (&(&acc * &z) + &UPoly::constant(c.clone())).rem(w));
        if !w.gcd(&(&z - &t)).is_constant() {
            return true;
        }
        if z.coeffs().iter().any(|c| height_bits(c) > ESCAPE_HEIGHT_BITS) {
            return false;
        }
    }
    false
}

/// Derivative of `A/B` in charts: `x = None` is `∞`. Coefficient vectors are
/// affine (index = power of `t`) and share the common degree `d`.
pub(crate) fn chart_derivative<R: EvalRing>(
    ring: &R,
    num: &[R::Elem],
    den: &[R::Elem],
    x: Option<&R::Elem>,
) -> Option<R::Elem> {
    let (a, b, t): (Vec<R::Elem>, Vec<R::Elem>, R::Elem) = match x {
        Some(t) => (num.to_vec(), den.to_vec(), t.clone()),
        None => (num.iter().rev().cloned().collect(), den.iter().rev().cloned().collect(), ring.zero()),
    };
    let ev = |cs: &[R::Elem]| cs.iter().rev().fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, &t), c));
    let dv = |cs: &[R::Elem]| {
        let mut acc = ring.zero();
        for (i, c) in cs.iter().enumerate().skip(1).rev() {
            let k = ring.from_rational(&Rational::from_integer(i.into())).unwrap();
            acc = ring.add(&ring.mul(&acc, &t), &ring.mul(c, &k));
        }
        acc
    };
    let (av, bv, ad, bd) = (ev(&a), ev(&b), dv(&a), dv(&b));
    if let Some(binv) = ring.inv(&bv) {
        let w = ring.sub(&ring.mul(&ad, &bv), &ring.mul(&av, &bd));
        return Some(ring.mul(&w, &ring.mul(&binv, &binv)));
    }
    let ainv = ring.inv(&av)?;
    let w = ring.sub(&ring.mul(&bd, &av), &ring.mul(&bv, &ad));
    Some(ring.mul(&w, &ring.mul(&ainv, &ainv)))
}

struct EscapeData {
    radius: Option<Rational>,
    bad: Option<BigInt>,
}

impl EscapeData {
    fn check(&self, y: &P1Point, index: usize) -> Option<EscapeWitness> {
        let q = y.finite()?;
        if let Some(r) = &self.radius {
            if &q.abs() > r {
                return Some(EscapeWitness::Archimedean { index, radius: r.clone() });
            }
        }
        if let Some(bad) = &self.bad {
            if !q.denom().is_one() && q.denom().gcd(bad).is_one() {
                return Some(EscapeWitness::Denominator { index, denominator: q.denom().clone() });
            }
        }
        let bits = height_bits(q);
        (bits > ESCAPE_HEIGHT_BITS).then_some(EscapeWitness::Height { index, bits })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalData {
    /// Critical points defined over `Q` with their ramification indices.
    pub points: Vec<(P1Point, u32)>,
    /// Whether the listed points account for all `2d - 2` of ramification.
    pub all_rational: bool,
    pub wronskian: UPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriticalLocus {
    Rational(P1Point),
    /// All roots of this squarefree factor, which has no rational root.
    Algebraic(UPoly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalOrbit {
    pub locus: CriticalLocus,
    pub ramification: u32,
    /// For an algebraic locus: some root of the factor is periodic.
    pub periodic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Place {
    Archimedean,
    Prime(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CycleClass {
    Superattracting,
    Attracting,
    Indifferent,
    Repelling,
}

pub fn classify_multiplier(lambda: &Rational, place: Place) -> CycleClass {
    if lambda.is_zero() {
        return CycleClass::Superattracting;
    }
    match place {
        Place::Archimedean => match lambda.abs().cmp(&Rational::one()) {
            std::cmp::Ordering::Less => CycleClass::Attracting,
            std::cmp::Ordering::Equal => CycleClass::Indifferent,
            std::cmp::Ordering::Greater => CycleClass::Repelling,
        },
        Place::Prime(p) => match valuation(lambda, p) {
            Valuation::Finite(v) if v > 0 => CycleClass::Attracting,
            Valuation::Finite(0) => CycleClass::Indifferent,
            _ => CycleClass::Repelling,
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleRecord {
    pub points: Vec<P1Point>,
    pub period: usize,
    pub multiplier: Rational,
    pub class: CycleClass,
    pub place: Place,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EscapeWitness {
    /// A polynomial orbit left the disk `|t| ≤ radius`, outside which `|f|`
    /// strictly increases.
    Archimedean { index: usize, radius: Rational },
    /// A prime of good reduction divides the denominator; the `p`-adic
    /// absolute value grows from then on.
    Denominator { index: usize, denominator: BigInt },
    Height { index: usize, bits: u64 },
    PrefixExhausted { length: usize },
}

impl EscapeWitness {
    /// Escape proven rather than inferred from a cutoff.
    pub fn is_rigorous(&self) -> bool {
        matches!(self, EscapeWitness::Archimedean { .. } | EscapeWitness::Denominator { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitKind {
    /// `φ^tail(x)` is the first periodic point, of exact period `period`.
    Preperiodic { tail: usize, period: usize },
    Wandering(EscapeWitness),
}

impl OrbitKind {
    pub fn is_preperiodic(&self) -> bool {
        matches!(self, OrbitKind::Preperiodic { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NotPeriodic {
    #[error("strictly preperiodic: tail {tail}, period {period}")]
    StrictlyPreperiodic { tail: usize, period: usize },
    #[error("orbit escapes: {0:?}")]
    Escaped(EscapeWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exceptional {
    /// Conjugate to `t^d` (`inverted = false`, both points fixed) or to
    /// `t^-d` (the two points are swapped).
    Two { points: [P1Point; 2], inverted: bool },
    /// A single totally invariant point; conjugate to a polynomial.
    One { point: P1Point },
    None,
}

/// `t ↦ (a t + b) / (c t + d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Mobius {
    pub fn affine(a: Rational, b: Rational) -> Self {
        Mobius { a, b, c: Rational::zero(), d: Rational::one() }
    }

    pub fn identity() -> Self {
        Self::affine(Rational::one(), Rational::zero())
    }

    pub fn det(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn inverse(&self) -> Result<Mobius, DynError> {
        if self.det().is_zero() {
            return Err(DynError::SingularMu);
        }
        Ok(Mobius { a: self.d.clone(), b: -self.b.clone(), c: -self.c.clone(), d: self.a.clone() })
    }

    pub fn to_map(&self) -> Result<RationalMap, DynError> {
        if self.det().is_zero() {
            return Err(DynError::SingularMu);
        }
        RationalMap::from_fraction(
            &UPoly::new(vec![self.b.clone(), self.a.clone()]),
            &UPoly::new(vec![self.d.clone(), self.c.clone()]),
        )
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_polynomial() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({})/({})", self.numerator(), self.denominator()),
        }
    }
}

impl Serialize for RationalMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn poly(cs: &[i64]) -> RationalMap {
        RationalMap::from_polynomial(&UPoly::from_ints(cs)).unwrap()
    }

    fn pt(n: i64) -> P1Point {
        P1Point::from_int(n)
    }

    #[test]
    fn iteration_examples() {
        assert_eq!(poly(&[-1, 0, 1]).iterate(&pt(2), 2), pt(8));
        // orbit of 0 is 0, 1, 2, 5, 26, 677
        assert_eq!(poly(&[1, 0, 1]).iterate(&pt(0), 4), pt(26));
        assert_eq!(poly(&[1, 0, 1]).iterate(&pt(0), 5), pt(677));
        assert_eq!(poly(&[1, 0, 1]).iterate(&pt(3), 0), pt(3));
        assert_eq!(poly(&[1, 0, 1]).apply(&P1Point::Infinity), P1Point::Infinity);
    }

    #[test]
    fn critical_point_examples() {
        let c = poly(&[5, 0, 1]).critical_points().unwrap();
        assert_eq!(c.points, vec![(pt(0), 2), (P1Point::Infinity, 2)]);
        let c = poly(&[0, 0, 0, 1]).critical_points().unwrap();
        assert_eq!(c.points, vec![(pt(0), 3), (P1Point::Infinity, 3)]);
        let m = RationalMap::from_fraction(&UPoly::from_ints(&[1, 0, 1]), &UPoly::x()).unwrap();
        let c = m.critical_points().unwrap();
        assert_eq!(c.points, vec![(pt(-1), 2), (pt(1), 2)]);
        assert!(c.all_rational);
        // t^3 + t has critical points ±sqrt(-1/3)
        assert!(!poly(&[0, 1, 0, 1]).critical_points().unwrap().all_rational);
    }

    #[test]
    fn cycle_examples() {
        let f = poly(&[-1, 0, 1]);
        let r = f.classify_cycle(&pt(0), Place::Archimedean).unwrap();
        assert_eq!((r.period, r.multiplier.clone(), r.class), (2, int(0), CycleClass::Superattracting));

        let r = poly(&[0, 0, 1]).classify_cycle(&pt(1), Place::Prime(7)).unwrap();
        assert_eq!((r.period, r.multiplier.clone(), r.class), (1, int(2), CycleClass::Indifferent));

        let e = poly(&[-2, 0, 1]).classify_cycle(&pt(0), Place::Archimedean).unwrap_err();
        assert_eq!(e, NotPeriodic::StrictlyPreperiodic { tail: 2, period: 1 });

        let e = poly(&[1, 0, 1]).classify_cycle(&pt(0), Place::Archimedean).unwrap_err();
        assert!(matches!(e, NotPeriodic::Escaped(ref w) if w.is_rigorous()));
    }

    #[test]
    fn exceptional_examples() {
        let two = poly(&[0, 0, 1]).exceptional_structure().unwrap();
        assert_eq!(two, Exceptional::Two { points: [pt(0), P1Point::Infinity], inverted: false });
        let one = poly(&[-1, 0, 1]).exceptional_structure().unwrap();
        assert_eq!(one, Exceptional::One { point: P1Point::Infinity });
        let m = RationalMap::from_fraction(&UPoly::from_ints(&[1, 0, 1]), &UPoly::from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!(m.exceptional_structure().unwrap(), Exceptional::None);
        let inv = RationalMap::from_fraction(&UPoly::one(), &UPoly::from_ints(&[0, 0, 1])).unwrap();
        assert!(matches!(inv.exceptional_structure().unwrap(), Exceptional::Two { inverted: true, .. }));
    }

    #[test]
    fn conjugation_examples() {
        let sq = poly(&[0, 0, 1]);
        let c = sq.conjugate(&Mobius::affine(int(2), int(0))).unwrap();
        assert_eq!(c, poly(&[0, 0, 2]));
        let f = poly(&[-3, 1, 1]);
        assert_eq!(f.conjugate(&Mobius::identity()).unwrap(), f);
        let singular = Mobius { a: int(1), b: int(1), c: int(1), d: int(1) };
        assert_eq!(f.conjugate(&singular).unwrap_err(), DynError::SingularMu);
        // conjugating by 1/t moves the exceptional point of a polynomial to 0
        let inv = Mobius { a: int(0), b: int(1), c: int(1), d: int(0) };
        let g = f.conjugate(&inv).unwrap();
        assert_eq!(g.exceptional_structure().unwrap(), Exceptional::One { point: pt(0) });
    }

    #[test]
    fn normalization_is_canonical() {
        let a = RationalMap::from_fraction(&UPoly::from_ints(&[2, 0, 2]), &UPoly::from_ints(&[0, 4])).unwrap();
        let b = RationalMap::from_fraction(
            &UPoly::new(vec![rat(-1, 3), int(0), rat(-1, 3)]),
            &UPoly::new(vec![int(0), rat(-2, 3)]),
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.num_coeffs(), &[BigInt::from(1), BigInt::from(0), BigInt::from(1)]);
    }

    #[test]
    fn periodic_points_of_chebyshev() {
        // t^2 - 2: fixed points 2 and -1, no rational 2-cycle except via ∞
        let f = poly(&[-2, 0, 1]);
        assert_eq!(f.periodic_points(1), vec![pt(-1), pt(2), P1Point::Infinity]);
        assert!(f.periodic_points(2).is_empty());
        // t^2 - 1 has the 2-cycle {0, -1}
        assert_eq!(poly(&[-1, 0, 1]).periodic_points(2), vec![pt(-1), pt(0)]);
    }

    #[test]
    fn algebraic_critical_orbits() {
        let orbits = poly(&[0, 1, 0, 1]).critical_orbits().unwrap();
        let alg: Vec<_> = orbits.iter().filter(|o| matches!(o.locus, CriticalLocus::Algebraic(_))).collect();
        assert_eq!(alg.len(), 1);
        assert_eq!(alg[0].ramification, 2);
        assert!(!alg[0].periodic);
        // t^3 + 3t/2 fixes its critical points ±sqrt(-1/2)
        let f = RationalMap::from_polynomial(&UPoly::new(vec![int(0), rat(3, 2), int(0), int(1)])).unwrap();
        let orbits = f.critical_orbits().unwrap();
        assert!(orbits.iter().any(|o| matches!(o.locus, CriticalLocus::Algebraic(_)) && o.periodic));
    }
}

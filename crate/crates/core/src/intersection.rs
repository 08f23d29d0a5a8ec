//! Pullbacks of the diagonal under `(φ, φ)`, their layers, ramification
//! bounds and `S`-integrality scans of orbit differences.

use crate::arith::modp::{rat_mod, FpPoly};
use crate::arith::poly::Poly;
use crate::arith::primes::prev_prime;
use crate::arith::upoly::UPoly;
use crate::arith::Rational;
use crate::dynsys::{CriticalLocus, DynError, Exceptional, P1Point, RationalMap};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::Arc;
use thiserror::Error;

pub const DEFAULT_LEVEL_CAP: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntersectionError {
    #[error("level {n} exceeds the cap {cap}")]
    DegreeCapExceeded { n: usize, cap: usize },
    #[error("layer division was inexact")]
    InexactDivision,
    #[error("critical point {0} is periodic")]
    PeriodicCriticalPoint(String),
    #[error("input point is preperiodic")]
    PreperiodicInput,
    #[error("a polynomial map is required")]
    NotPolynomial,
    #[error(transparent)]
    Dyn(#[from] DynError),
}

fn xy_vars() -> Arc<Vec<String>> {
    Poly::new_vars(&["x", "y"])
}

/// `A(x) B(y) - A(y) B(x)` for `φⁿ = A / B`.
fn level_poly(m: &RationalMap) -> Poly {
    let v = xy_vars();
    let (a, b) = (m.numerator(), m.denominator());
    let ax = Poly::from_upoly(&v, 0, &a);
    let ay = Poly::from_upoly(&v, 1, &a);
    let bx = Poly::from_upoly(&v, 0, &b);
    let by = Poly::from_upoly(&v, 1, &b);
    (&(&ax * &by) - &(&ay * &bx)).primitive_integer()
}

/// `(N(X,Y) D(X',Y') - N(X',Y') D(X,Y)) / (X Y' - X' Y)` for `φ = N / D`.
fn difference_quotient(phi: &RationalMap) -> Result<Poly, IntersectionError> {
    let v = Poly::new_vars(&["X", "Y", "U", "V"]);
    let d = phi.degree() as u32;
    let form = |cs: &[BigInt], a: usize, b: usize| {
        Poly::from_terms(
            &v,
            cs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
                let mut m = vec![0u32; 4];
                m[a] = i as u32;
                m[b] = d - i as u32;
                (m, Rational::from_integer(c.clone()))
            }),
        )
    };
    let r = &(&form(phi.num_coeffs(), 0, 1) * &form(phi.den_coeffs(), 2, 3))
        - &(&form(phi.num_coeffs(), 2, 3) * &form(phi.den_coeffs(), 0, 1));
    let cross = &(&Poly::var(&v, 0) * &Poly::var(&v, 3)) - &(&Poly::var(&v, 2) * &Poly::var(&v, 1));
    r.divexact(&cross).map_err(|_| IntersectionError::InexactDivision)
}

/// `X_n = (φⁿ × φⁿ)^* Δ` in the affine chart, with its chain of layers.
#[derive(Clone, Debug)]
pub struct DiagonalPullback {
    map: RationalMap,
    /// `X_0, …, X_n`, each primitive over `Z`.
    chain: Vec<Poly>,
    /// `Y_1, …, Y_n` (index 0 holds `X_0`).
    layers: Vec<Poly>,
}

impl DiagonalPullback {
    pub fn new(phi: &RationalMap, n: usize) -> Result<Self, IntersectionError> {
        Self::with_cap(phi, n, DEFAULT_LEVEL_CAP)
    }

    /// Builds each layer as `Q(φ^{i-1} x, φ^{i-1} y)` with `Q` the difference
    /// quotient of `φ`, and checks `X_i = X_{i-1} · Y_i` against the directly
    /// expanded `X_i`.
    pub fn with_cap(phi: &RationalMap, n: usize, cap: usize) -> Result<Self, IntersectionError> {
        if phi.degree() < 2 {
            return Err(DynError::DegreeTooSmall(phi.degree()).into());
        }
        if n > cap {
            return Err(IntersectionError::DegreeCapExceeded { n, cap });
        }
        let q = difference_quotient(phi)?;
        let v = xy_vars();
        let mut iter = RationalMap::from_polynomial(&UPoly::x()).unwrap();
        let mut chain = vec![level_poly(&iter)];
        let mut layers = vec![chain[0].clone()];
        for _ in 1..=n {
            let (a, b) = (iter.numerator(), iter.denominator());
            let images = [
                Poly::from_upoly(&v, 0, &a),
                Poly::from_upoly(&v, 0, &b),
                Poly::from_upoly(&v, 1, &a),
                Poly::from_upoly(&v, 1, &b),
            ];
            let y = q.compose(&images).primitive_integer();
            iter = phi.compose(&iter);
            let x = level_poly(&iter);
            if (&chain.last().unwrap().clone() * &y).primitive_integer() != x {
                return Err(IntersectionError::InexactDivision);
            }
            chain.push(x);
            layers.push(y);
        }
        Ok(DiagonalPullback { map: phi.clone(), chain, layers })
    }

    pub fn map(&self) -> &RationalMap {
        &self.map
    }

    pub fn level(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn poly(&self) -> &Poly {
        self.chain.last().unwrap()
    }

    pub fn chain(&self) -> &[Poly] {
        &self.chain
    }

    /// `Y_i = X_i / X_{i-1}` for `1 ≤ i ≤ n`.
    pub fn layer(&self, i: usize) -> &Poly {
        assert!(i >= 1 && i < self.layers.len(), "layer index out of range");
        &self.layers[i]
    }

    /// Multiplicity of `X_n` at the affine point `(a, b)`.
    pub fn multiplicity_at(&self, a: &Rational, b: &Rational) -> u32 {
        multiplicity_at(self.poly(), a, b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub poly: Poly,
    pub squarefree: bool,
}

/// `Y_n` with a squarefree flag.
pub fn layer(phi: &RationalMap, n: usize) -> Result<Layer, IntersectionError> {
    if n == 0 {
        return Err(IntersectionError::InexactDivision);
    }
    let x = DiagonalPullback::new(phi, n)?;
    let poly = x.layer(n).clone();
    let squarefree = is_squarefree_bivariate(&poly);
    Ok(Layer { poly, squarefree })
}

/// Order of vanishing of a polynomial in `x, y` at `(a, b)`.
pub fn multiplicity_at(f: &Poly, a: &Rational, b: &Rational) -> u32 {
    f.order_at(&[a.clone(), b.clone()])
}

/// Squarefree test for `f(x, y)` over `Q`.
///
/// A specialization `f(x, y0)` that keeps its `x`-degree and is squarefree
/// mod a prime certifies that no square factor involves `x`; likewise with
/// the roles swapped. Only when no lucky specialization turns up does it fall
/// back to `gcd(f, f_x, f_y)` over `Q`.
pub fn is_squarefree_bivariate(f: &Poly) -> bool {
    if f.is_constant() {
        return true;
    }
    let f = f.primitive_integer();
    (0..2).all(|i| specialization_squarefree(&f, i).unwrap_or_else(|| exact_squarefree_in(&f, i)))
}

/// Squarefree in the factors that involve variable `i`.
fn specialization_squarefree(f: &Poly, i: usize) -> Option<bool> {
    let Some(deg) = f.degree_in(i).filter(|&d| d > 0) else {
        return Some(true);
    };
    let other = 1 - i;
    let mut q = 1u64 << 61;
    for attempt in 0..8u64 {
        q = prev_prime(q).expect("primes below 2^61");
        let y0 = 3 + 7 * attempt;
        let mut cs = vec![0u64; deg as usize + 1];
        for (m, c) in f.terms() {
            let c = rat_mod(c, q)?;
            let yv = crate::arith::modp::pow_mod(y0, m[other] as u64, q);
            let k = m[i] as usize;
            cs[k] = crate::arith::modp::add_mod(cs[k], crate::arith::modp::mul_mod(c, yv, q), q);
        }
        let g = FpPoly::new(q, cs);
        if g.degree() == Some(deg as usize) && g.is_squarefree() {
            return Some(true);
        }
    }
    None
}

fn exact_squarefree_in(f: &Poly, i: usize) -> bool {
    f.gcd(&f.derivative(i)).degree_in(i).unwrap_or(0) == 0
}

/// Product of the ramification indices of the non-exceptional critical
/// points, each irrational locus counted once per conjugate root.
pub fn ramification_bound(phi: &RationalMap) -> Result<u64, IntersectionError> {
    let exceptional: Vec<P1Point> = match phi.exceptional_structure()? {
        Exceptional::Two { points, .. } => points.to_vec(),
        Exceptional::One { point } => vec![point],
        Exceptional::None => vec![],
    };
    let mut m = 1u64;
    for c in phi.critical_orbits()? {
        let copies = match &c.locus {
            CriticalLocus::Rational(z) if exceptional.contains(z) => continue,
            CriticalLocus::Rational(_) => 1,
            CriticalLocus::Algebraic(w) => w.deg0() as u32,
        };
        if c.periodic {
            let name = match &c.locus {
                CriticalLocus::Rational(z) => z.to_string(),
                CriticalLocus::Algebraic(w) => format!("root of {w}"),
            };
            return Err(IntersectionError::PeriodicCriticalPoint(name));
        }
        m *= (c.ramification as u64).pow(copies);
    }
    Ok(m)
}

/// A finite set of primes together with the archimedean place, which every
/// such set contains.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PlaceSet {
    primes: BTreeSet<u64>,
}

impl PlaceSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Self {
        PlaceSet { primes: primes.into_iter().collect() }
    }

    pub fn archimedean_only() -> Self {
        PlaceSet::default()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }

    /// `q` is nonzero and all its prime factors lie in the set.
    pub fn is_unit(&self, q: &Rational) -> bool {
        if q.is_zero() {
            return false;
        }
        let strip = |n: &BigInt| {
            let mut n = n.abs();
            for &p in &self.primes {
                let p = BigInt::from(p);
                while n.is_multiple_of(&p) {
                    n /= &p;
                }
            }
            n.is_one()
        };
        strip(q.numer()) && strip(q.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub hits: Vec<usize>,
    pub range: usize,
    /// Whether the last hit lies in the first half of the range, the
    /// observable trace of the finiteness statement.
    pub stagnated: bool,
}

/// All `n ≤ range` with `fⁿ(α) - fⁿ(β)` an `S`-unit.
pub fn s_integrality_scan(
    f: &RationalMap,
    alpha: &Rational,
    beta: &Rational,
    s: &PlaceSet,
    range: usize,
) -> Result<ScanReport, IntersectionError> {
    let f = f.as_polynomial().ok_or(IntersectionError::NotPolynomial)?;
    let map = RationalMap::from_polynomial(&f)?;
    for z in [alpha, beta] {
        if map.orbit_kind(&P1Point::Finite(z.clone())).is_preperiodic() {
            return Err(IntersectionError::PreperiodicInput);
        }
    }
    let (mut a, mut b) = (alpha.clone(), beta.clone());
    let mut hits = Vec::new();
    for n in 0..=range {
        if s.is_unit(&(&a - &b)) {
            hits.push(n);
        }
        if n < range {
            a = f.eval(&a);
            b = f.eval(&b);
        }
    }
    let stagnated = hits.last().is_none_or(|&h| 2 * h <= range);
    Ok(ScanReport { hits, range, stagnated })
}

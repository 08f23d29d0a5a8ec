//! Bounded searches for primes at which the residue dynamics of a map avoid
//! superattracting behavior, with replayable certificates.

use crate::arith::modp::{legendre, pow_mod, rat_mod};
use crate::arith::primes::{is_prime, sieve};
use crate::arith::upoly::UPoly;
use crate::arith::{int, is_p_integral, valuation, Rational, Valuation};
use crate::dynsys::{OrbitKind, P1Point, RationalMap};
use crate::reduction::{good_reduction, is_integral_point, reduce_map, reduce_point, ReducedMap, ResidueOrbit};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrimeSearchError {
    #[error("no qualifying prime up to {0}")]
    NotFound(u64),
    #[error("the critical point is periodic")]
    PeriodicCriticalPoint,
    #[error("a start point is preperiodic")]
    PreperiodicInput,
    #[error("expected a monic quadratic t^2 + c")]
    NotQuadratic,
}

/// Which extra condition a certificate was searched under.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ExtraCheck {
    /// `(2/p) = -1`, so `1` has no preimage under `t^2 - 1` mod `p`.
    TwoNonResidue { legendre: i8 },
    /// Each point and its image reduce to nonzero residues.
    PointsAndImagesUnits,
}

/// `None` marks a check the search did not require.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checklist {
    pub good_reduction: bool,
    pub points_integral: Option<bool>,
    pub critical_nonperiodic: Option<bool>,
    pub unit_multipliers: bool,
    pub extra: Vec<ExtraCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    pub cycle: Vec<u64>,
    pub multiplier: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub point_orbits: Vec<ResidueOrbit>,
    pub critical_orbits: Vec<ResidueOrbit>,
    /// For quadratic searches every affine cycle of the functional graph,
    /// otherwise the cycles the points fall into.
    pub cycles: Vec<CycleWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeCertificate {
    pub prime: u64,
    pub map: RationalMap,
    pub points: Vec<P1Point>,
    pub checks: Checklist,
    pub witnesses: Witnesses,
}

impl PrimeCertificate {
    /// Redoes every finite check over `F_p` from the stored data.
    pub fn replay(&self) -> Result<(), String> {
        let p = self.prime;
        if !is_prime(p) {
            return Err(format!("{p} is not prime"));
        }
        if good_reduction(&self.map, p) != self.checks.good_reduction || !self.checks.good_reduction {
            return Err("good reduction".into());
        }
        let red = reduce_map(&self.map, p).unwrap();
        if let Some(flag) = self.checks.points_integral {
            let all = self.points.iter().all(|x| x.finite().is_some_and(|q| is_p_integral(q, p)));
            if all != flag || !flag {
                return Err("integrality".into());
            }
        }
        for o in self.witnesses.point_orbits.iter().chain(&self.witnesses.critical_orbits) {
            if &red.residue_orbit(o.start) != o {
                return Err(format!("residue orbit of {}", o.start));
            }
        }
        let starts: Vec<u64> = self.points.iter().map(|x| reduce_point(x, p)).collect();
        if starts != self.witnesses.point_orbits.iter().map(|o| o.start).collect::<Vec<_>>() {
            return Err("point orbits do not match the points".into());
        }
        if self.checks.critical_nonperiodic == Some(true)
            && self.witnesses.critical_orbits.iter().any(|o| o.tail == 0)
        {
            return Err("a critical residue is periodic".into());
        }
        for c in &self.witnesses.cycles {
            if !is_cycle(&red, &c.cycle) || red.cycle_multiplier(&c.cycle) != c.multiplier || c.multiplier == 0 {
                return Err(format!("cycle through {}", c.cycle[0]));
            }
        }
        if self.checks.critical_nonperiodic.is_some() && affine_cycles(&red).len() != self.witnesses.cycles.len() {
            return Err("cycle enumeration incomplete".into());
        }
        for o in &self.witnesses.point_orbits {
            if !self.witnesses.cycles.iter().any(|c| c.cycle.contains(&o.cycle[0])) {
                return Err(format!("cycle of {} not witnessed", o.start));
            }
        }
        for e in &self.checks.extra {
            match e {
                ExtraCheck::TwoNonResidue { legendre } => {
                    // Euler's criterion, independent of the Legendre routine
                    if *legendre != -1 || pow_mod(2, (p - 1) / 2, p) != p - 1 {
                        return Err("2 is a residue".into());
                    }
                }
                ExtraCheck::PointsAndImagesUnits => {
                    for x in &self.points {
                        let r = reduce_point(x, p);
                        if r == 0 || r == p || red.apply(r) == 0 || red.apply(r) == p {
                            return Err(format!("{x} or its image is not a unit"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Cycles off `∞`, the superattracting exceptional point of a polynomial.
fn affine_cycles(red: &ReducedMap) -> Vec<Vec<u64>> {
    red.periodic_cycles().into_iter().filter(|c| c[0] != red.prime()).collect()
}

fn is_cycle(red: &ReducedMap, c: &[u64]) -> bool {
    !c.is_empty() && (0..c.len()).all(|i| red.apply(c[i]) == c[(i + 1) % c.len()])
}

fn cycle_witnesses(red: &ReducedMap, cycles: impl IntoIterator<Item = Vec<u64>>) -> Vec<CycleWitness> {
    cycles
        .into_iter()
        .map(|cycle| {
            let multiplier = red.cycle_multiplier(&cycle);
            CycleWitness { cycle, multiplier }
        })
        .collect()
}

/// The cycle reached from each point, listed from its least element.
fn point_cycles(orbits: &[ResidueOrbit]) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = Vec::new();
    for o in orbits {
        let mut c = o.cycle.clone();
        let k = c.iter().enumerate().min_by_key(|(_, &v)| v).unwrap().0;
        c.rotate_left(k);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out.sort();
    out
}

/// Smallest prime in `[lo, hi]` accepted by `check`, scanning blocks in
/// parallel and merging by minimum.
pub fn search_primes<T: Send>(lo: u64, hi: u64, check: impl Fn(u64) -> Option<T> + Sync) -> Option<T> {
    const BLOCK: usize = 256;
    let primes: Vec<u64> = sieve(hi).into_iter().filter(|&p| p >= lo).collect();
    for block in primes.chunks(BLOCK) {
        let found: Vec<Option<T>> = block.par_iter().map(|&p| check(p)).collect();
        if let Some(t) = found.into_iter().flatten().next() {
            return Some(t);
        }
    }
    None
}

/// `c` when `f = t^2 + c`.
pub fn quadratic_constant(f: &UPoly) -> Option<Rational> {
    (f.degree() == Some(2) && f.coeff(2).is_one() && f.coeff(1).is_zero()).then(|| f.coeff(0))
}

/// Smallest odd prime `p ≤ p_max` with good reduction, integral points, and
/// `0` not periodic mod `p`; the last forces a unit multiplier on every
/// periodic residue since `f' = 2t`.
pub fn find_good_prime_quadratic(f: &UPoly, points: &[Rational], p_max: u64) -> Result<PrimeCertificate, PrimeSearchError> {
    find_good_prime_quadratic_from(f, points, 3, p_max)
}

pub fn find_good_prime_quadratic_from(
    f: &UPoly,
    points: &[Rational],
    p_min: u64,
    p_max: u64,
) -> Result<PrimeCertificate, PrimeSearchError> {
    quadratic_constant(f).ok_or(PrimeSearchError::NotQuadratic)?;
    let map = RationalMap::from_polynomial(f).unwrap();
    if matches!(map.orbit_kind(&P1Point::from_int(0)), OrbitKind::Preperiodic { tail: 0, .. }) {
        return Err(PrimeSearchError::PeriodicCriticalPoint);
    }
    let pts: Vec<P1Point> = points.iter().cloned().map(P1Point::Finite).collect();
    search_primes(p_min.max(3), p_max, |p| quadratic_certificate_at(&map, &pts, p))
    .ok_or(PrimeSearchError::NotFound(p_max))
}

/// For `t^2 - 1`: smallest odd `p ≤ p_max` with every `x_i` and `f(x_i)` a
/// `p`-adic unit and `2` a non-residue. Then no orbit residue reaches `0` or
/// `-1`, the superattracting cycle.
pub fn qr_filter_for_minus_one(points: &[Rational], p_max: u64) -> Result<PrimeCertificate, PrimeSearchError> {
    qr_filter_for_minus_one_from(points, 3, p_max)
}

pub fn qr_filter_for_minus_one_from(
    points: &[Rational],
    p_min: u64,
    p_max: u64,
) -> Result<PrimeCertificate, PrimeSearchError> {
    let f = UPoly::from_ints(&[-1, 0, 1]);
    let map = RationalMap::from_polynomial(&f).unwrap();
    let pts: Vec<P1Point> = points.iter().cloned().map(P1Point::Finite).collect();
    if pts.iter().any(|x| map.orbit_kind(x).is_preperiodic()) {
        return Err(PrimeSearchError::PreperiodicInput);
    }
    search_primes(p_min.max(3), p_max, |p| minus_one_certificate_at(&pts, p))
    .ok_or(PrimeSearchError::NotFound(p_max))
}

/// Smallest prime in `[p_min, p_max]` of good reduction at which the residue
/// cycle reached by every point has a unit multiplier.
pub fn find_orbit_prime(
    map: &RationalMap,
    points: &[P1Point],
    p_min: u64,
    p_max: u64,
) -> Result<PrimeCertificate, PrimeSearchError> {
    search_primes(p_min.max(2), p_max, |p| orbit_certificate_at(map, points, p))
    .ok_or(PrimeSearchError::NotFound(p_max))
}

/// The quadratic check at a single odd prime, assuming `0` is not periodic
/// over `Q`.
pub fn quadratic_certificate_at(map: &RationalMap, pts: &[P1Point], p: u64) -> Option<PrimeCertificate> {
    if p == 2 {
        return None;
    }
    let red = reduce_map(map, p).ok()?;
    if !pts.iter().all(|q| is_integral_point(q, p)) {
        return None;
    }
    let crit = red.residue_orbit(0);
    if crit.tail == 0 {
        return None;
    }
    let point_orbits: Vec<ResidueOrbit> = pts.iter().map(|x| red.residue_orbit(reduce_point(x, p))).collect();
    let cycles = cycle_witnesses(&red, affine_cycles(&red));
    Some(PrimeCertificate {
        prime: p,
        map: map.clone(),
        points: pts.to_vec(),
        checks: Checklist {
            good_reduction: true,
            points_integral: Some(true),
            critical_nonperiodic: Some(true),
            unit_multipliers: cycles.iter().all(|c| c.multiplier != 0),
            extra: vec![],
        },
        witnesses: Witnesses { point_orbits, critical_orbits: vec![crit], cycles },
    })
}

/// The `t^2 - 1` check at a single odd prime, for wandering points.
pub fn minus_one_certificate_at(pts: &[P1Point], p: u64) -> Option<PrimeCertificate> {
    if p == 2 {
        return None;
    }
    let f = UPoly::from_ints(&[-1, 0, 1]);
    let map = RationalMap::from_polynomial(&f).unwrap();
    let unit = |q: &Rational| valuation(q, p) == Valuation::Finite(0);
    if !pts.iter().all(|x| x.finite().is_some_and(|x| unit(x) && unit(&f.eval(x)))) {
        return None;
    }
    let l = legendre(2, p);
    if l != -1 {
        return None;
    }
    let red = reduce_map(&map, p).ok()?;
    let point_orbits: Vec<ResidueOrbit> = pts.iter().map(|x| red.residue_orbit(reduce_point(x, p))).collect();
    let cycles = cycle_witnesses(&red, point_cycles(&point_orbits));
    Some(PrimeCertificate {
        prime: p,
        map,
        points: pts.to_vec(),
        checks: Checklist {
            good_reduction: true,
            points_integral: Some(true),
            critical_nonperiodic: None,
            unit_multipliers: cycles.iter().all(|c| c.multiplier != 0),
            extra: vec![ExtraCheck::TwoNonResidue { legendre: l }, ExtraCheck::PointsAndImagesUnits],
        },
        witnesses: Witnesses { point_orbits, critical_orbits: vec![], cycles },
    })
}

/// Good reduction at `p` and a unit multiplier on every residue cycle the
/// points reach.
pub fn orbit_certificate_at(map: &RationalMap, points: &[P1Point], p: u64) -> Option<PrimeCertificate> {
    let red = reduce_map(map, p).ok()?;
    let point_orbits: Vec<ResidueOrbit> = points.iter().map(|x| red.residue_orbit(reduce_point(x, p))).collect();
    let cycles = cycle_witnesses(&red, point_cycles(&point_orbits));
    if cycles.iter().any(|c| c.multiplier == 0) {
        return None;
    }
    Some(PrimeCertificate {
        prime: p,
        map: map.clone(),
        points: points.to_vec(),
        checks: Checklist {
            good_reduction: true,
            points_integral: None,
            critical_nonperiodic: None,
            unit_multipliers: true,
            extra: vec![],
        },
        witnesses: Witnesses { point_orbits, critical_orbits: vec![], cycles },
    })
}

/// Pairs `(p, n)` with `φⁿ(α) ≡ φⁿ(β)` mod `p`, for `p ≤ p_max`, `n ≤ n_max`.
///
/// At primes of good reduction the orbits are iterated on residues. At the
/// finitely many bad primes the exact orbits are reduced, as long as their
/// heights stay below a fixed budget.
pub fn common_residue_search(
    map: &RationalMap,
    alpha: &P1Point,
    beta: &P1Point,
    p_max: u64,
    n_max: usize,
) -> Result<Vec<(u64, usize)>, PrimeSearchError> {
    const HEIGHT_BUDGET: u64 = 1 << 16;
    if map.orbit_kind(alpha).is_preperiodic() || map.orbit_kind(beta).is_preperiodic() {
        return Err(PrimeSearchError::PreperiodicInput);
    }
    let mut exact: Vec<(P1Point, P1Point)> = Vec::new();
    let (mut a, mut b) = (alpha.clone(), beta.clone());
    for _ in 0..=n_max {
        if a.height_bits().max(b.height_bits()) > HEIGHT_BUDGET {
            break;
        }
        exact.push((a.clone(), b.clone()));
        a = map.apply(&a);
        b = map.apply(&b);
    }
    let per_prime: Vec<Vec<(u64, usize)>> = sieve(p_max)
        .par_iter()
        .map(|&p| match reduce_map(map, p) {
            Ok(red) => {
                let (mut a, mut b) = (reduce_point(alpha, p), reduce_point(beta, p));
                let mut hits = Vec::new();
                for n in 0..=n_max {
                    if a == b {
                        hits.push((p, n));
                    }
                    a = red.apply(a);
                    b = red.apply(b);
                }
                hits
            }
            Err(_) => exact
                .iter()
                .enumerate()
                .filter(|(_, (a, b))| reduce_point(a, p) == reduce_point(b, p))
                .map(|(n, _)| (p, n))
                .collect(),
        })
        .collect();
    Ok(per_prime.into_iter().flatten().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityEstimate {
    /// Primes with no `f_j^n(x_j) ≡ 0` for any `j` and `n ≥ 1`.
    pub avoiding: u64,
    pub total: u64,
    /// Bad primes where the exact orbit neither escaped nor settled within
    /// the iteration budget; counted as avoiding.
    pub undecided: u64,
    /// `(p, hit)` for every prime up to the bound.
    pub bitmap: Vec<(u64, bool)>,
}

impl DensityEstimate {
    pub fn avoiding_fraction(&self) -> Rational {
        Rational::new(self.avoiding.into(), self.total.max(1).into())
    }

    pub fn hit_fraction(&self) -> Rational {
        Rational::one() - self.avoiding_fraction()
    }
}

/// Whether `0` lies on `{fⁿ(x) : n ≥ 1}` mod `p` for `f = t^2 + c`.
/// `None` when a bad prime is not settled within the budget.
fn zero_on_forward_orbit(c: &Rational, x: &Rational, p: u64) -> Option<bool> {
    if let (Some(cb), Some(xb)) = (rat_mod(c, p), rat_mod(x, p)) {
        let f = |z: u64| ((z as u128 * z as u128 + cb as u128) % p as u128) as u64;
        let mut tortoise = f(xb);
        let mut hare = f(tortoise);
        // Floyd: every point from f(x) up to the cycle's closure is visited
        let mut seen_zero = tortoise == 0 || hare == 0;
        while tortoise != hare {
            tortoise = f(tortoise);
            hare = f(f(hare));
            seen_zero |= tortoise == 0;
        }
        // walk one full cycle to cover points not passed by the tortoise
        let mut z = f(tortoise);
        while z != tortoise {
            seen_zero |= z == 0;
            z = f(z);
        }
        return Some(seen_zero || tortoise == 0);
    }
    // p divides a denominator: iterate exactly until the orbit provably
    // leaves the unit ball for good
    let vc = valuation(c, p).finite().unwrap_or(i64::MAX);
    let mut z = x.clone();
    for _ in 0..64 {
        z = &z * &z + c;
        let vz = valuation(&z, p);
        match vz {
            Valuation::Infinite => return Some(true),
            Valuation::Finite(v) if v > 0 => return Some(true),
            Valuation::Finite(v) if v < 0 && 2 * v < vc.min(0) => return Some(false),
            Valuation::Finite(v) if v >= 0 && vc < 0 => return Some(false),
            _ => {}
        }
    }
    None
}

/// Share of primes `p ≤ p_max` at which no `f_j = t^2 + c_j` carries `x_j`
/// to `0` mod `p`.
pub fn jones_density_estimate(maps: &[(Rational, Rational)], p_max: u64) -> Result<DensityEstimate, PrimeSearchError> {
    for (c, x) in maps {
        let f = RationalMap::from_polynomial(&UPoly::new(vec![c.clone(), int(0), int(1)])).unwrap();
        if f.orbit_kind(&P1Point::Finite(x.clone())).is_preperiodic() {
            return Err(PrimeSearchError::PreperiodicInput);
        }
    }
    let rows: Vec<(u64, bool, bool)> = sieve(p_max)
        .par_iter()
        .map(|&p| {
            let verdicts: Vec<Option<bool>> = maps.iter().map(|(c, x)| zero_on_forward_orbit(c, x, p)).collect();
            let hit = verdicts.iter().any(|v| *v == Some(true));
            let undecided = !hit && verdicts.iter().any(|v| v.is_none());
            (p, hit, undecided)
        })
        .collect();
    let total = rows.len() as u64;
    let avoiding = rows.iter().filter(|r| !r.1).count() as u64;
    let undecided = rows.iter().filter(|r| r.2).count() as u64;
    Ok(DensityEstimate { avoiding, total, undecided, bitmap: rows.into_iter().map(|(p, h, _)| (p, h)).collect() })
}

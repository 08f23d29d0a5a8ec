//! Decision procedure for orbit points on a subvariety.
//!
//! The answer is a finite set of indices plus finitely many arithmetic
//! progressions. The pipeline:
//!
//! 1. Preperiodic coordinates are pinned. Along a progression whose step is a
//!    multiple of their period they are constant.
//! 2. A prime `p` is chosen so that every wandering coordinate falls into a
//!    residue cycle with a unit multiplier.
//! 3. With `K` a common multiple of the cycle lengths and multiplier orders,
//!    each class `n ≡ ℓ (mod K)` is an analytic function of the index. Every
//!    generator of `V` is composed with it and either vanishes at every
//!    sample (a full progression) or a Strassmann bound caps its zeros.
//! 4. Everything is checked against a brute-force scan, and the description
//!    agrees with the scan on `[0, N]` by construction.

pub mod scan;

pub use scan::{brute_force_scan, exact_membership, scan_orbit, OrbitRecord, ScanResult};

use crate::analytic::mahler::{homogeneous_mod, zero_count_bound, ProjectiveOrbit};
use crate::analytic::{certify_vanishing, Chart, MahlerSeries, VanishingVerdict};
use crate::arith::modp::{EvalRing, Zpm};
use crate::arith::poly::Poly;
use crate::arith::upoly::UPoly;
use crate::arith::{lcm_u64, Rational};
use crate::classify::{power_or_chebyshev_class, PowerClass};
use crate::dynsys::{DynError, Exceptional, OrbitKind, P1Point, RationalMap};
use crate::prime_search::{
    common_residue_search, minus_one_certificate_at, orbit_certificate_at, quadratic_certificate_at, quadratic_constant,
    search_primes, PrimeCertificate,
};
use crate::reduction::{reduce_map, reduce_point};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("power or Chebyshev map {0}: reduces to a torus problem, not handled here")]
    PowerMapCase(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("critical points are not all rational; cannot check for superattracting cycles")]
    IrrationalCriticalData,
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("variety lives in {got} variables, orbit in {expected}")]
    VarietyMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Dyn(#[from] DynError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EngineOptions {
    /// Scan prefix `N`.
    pub scan_n: usize,
    /// Reported indices up to here are re-checked from scratch.
    pub check_n: usize,
    pub p_max: u64,
    /// Interpolation order `J`.
    pub order: usize,
    /// Working precision `M`.
    pub precision: u32,
    /// Primes needing a larger class count `K` are skipped.
    pub max_step: u64,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { scan_n: 1000, check_n: 64, p_max: 10_000, order: 48, precision: 64, max_step: 2048 }
    }
}

/// `{n : n ≡ l (mod k), n ≥ start}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Progression {
    pub k: u64,
    pub l: u64,
    pub start: u64,
}

impl Progression {
    pub fn contains(&self, n: u64) -> bool {
        n >= self.start && n % self.k == self.l
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certification {
    /// Finite orbit or trivial variety: the description is exact.
    Exact,
    /// Every class settled at prime `prime`, order `order`, precision
    /// `precision`. Vanishing verdicts are precision-stamped.
    Certified { prime: u64, order: usize, precision: u32 },
    /// Some class rests on the scan of `[0, n]` alone.
    ScanOnly { n: usize },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ClassVerdict {
    /// Every generator vanishes along the class.
    Full,
    /// The scanned zeros of `generator` meet its Strassmann bound.
    Finite { generator: usize, zero_bound: usize },
    ScanOnly { reason: String },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub l: u64,
    /// First index of the class past every tail.
    pub base: u64,
    pub verdict: ClassVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionDescription {
    pub progressions: Vec<Progression>,
    pub exceptional: Vec<u64>,
    pub certification: Certification,
    /// Class count `K` used for the analytic step, if one was taken.
    pub step: Option<u64>,
    pub classes: Vec<ClassReport>,
    pub prime_certificates: Vec<PrimeCertificate>,
    pub scanned: usize,
    /// Hits up to the scan bound resting on modular evidence alone.
    pub modular_hits: Vec<u64>,
}

impl IntersectionDescription {
    pub fn contains(&self, n: u64) -> bool {
        self.exceptional.binary_search(&n).is_ok() || self.progressions.iter().any(|p| p.contains(n))
    }

    /// The described set restricted to `[0, n_max]`.
    pub fn indices_up_to(&self, n_max: u64) -> Vec<u64> {
        (0..=n_max).filter(|&n| self.contains(n)).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.progressions.is_empty()
    }
}

/// `Φ = (f_1, …, f_g)` acting coordinatewise, or one `f` on every coordinate.
pub fn decide(
    maps: &[UPoly],
    alpha: &[Rational],
    v: &[Poly],
    opts: &EngineOptions,
) -> Result<IntersectionDescription, EngineError> {
    let maps: Vec<UPoly> = match maps {
        [f] => vec![f.clone(); alpha.len()],
        _ => maps.to_vec(),
    };
    if maps.len() != alpha.len() {
        return Err(EngineError::DimensionMismatch { expected: maps.len(), got: alpha.len() });
    }
    let mut rmaps = Vec::new();
    for f in &maps {
        let m = RationalMap::from_polynomial(f)?;
        if m.degree() < 2 {
            return Err(DynError::DegreeTooSmall(m.degree()).into());
        }
        reject_power_map(f)?;
        rmaps.push(m);
    }
    let start: Vec<P1Point> = alpha.iter().cloned().map(P1Point::Finite).collect();
    run(&rmaps, &start, v, opts, &Vec::new())
}

/// One map on both coordinates of the plane, orbit of `(x, y)`.
pub fn decide_curve_pair(
    phi: &RationalMap,
    alpha: &[Rational; 2],
    c: &Poly,
    opts: &EngineOptions,
) -> Result<IntersectionDescription, EngineError> {
    if phi.degree() < 2 {
        return Err(DynError::DegreeTooSmall(phi.degree()).into());
    }
    let exceptional = match phi.exceptional_structure() {
        Ok(Exceptional::Two { .. }) => return Err(EngineError::PowerMapCase(phi.to_string())),
        Ok(Exceptional::One { point }) => vec![point],
        Ok(Exceptional::None) => vec![],
        Err(DynError::IrrationalCriticalData) => return Err(EngineError::IrrationalCriticalData),
        Err(e) => return Err(e.into()),
    };
    if let Some(f) = phi.as_polynomial() {
        reject_power_map(&f)?;
    }
    let orbits = phi.critical_orbits().map_err(|e| match e {
        DynError::IrrationalCriticalData => EngineError::IrrationalCriticalData,
        e => e.into(),
    })?;
    for o in &orbits {
        let off_exceptional = match &o.locus {
            crate::dynsys::CriticalLocus::Rational(z) => !exceptional.contains(z),
            crate::dynsys::CriticalLocus::Algebraic(_) => true,
        };
        if o.periodic && off_exceptional {
            return Err(EngineError::HypothesisViolated(format!("{phi} has a superattracting cycle through {:?}", o.locus)));
        }
    }
    let start: Vec<P1Point> = alpha.iter().cloned().map(P1Point::Finite).collect();
    let preferred = match common_residue_search(phi, &start[0], &start[1], opts.p_max.min(1000), 16) {
        Ok(pairs) => pairs.into_iter().map(|(p, _)| p).collect::<BTreeSet<u64>>().into_iter().collect(),
        Err(_) => Vec::new(),
    };
    run(&[phi.clone(), phi.clone()], &start, std::slice::from_ref(c), opts, &preferred)
}

fn reject_power_map(f: &UPoly) -> Result<(), EngineError> {
    if quadratic_constant(f).is_some_and(|c| c.is_zero()) {
        return Err(EngineError::PowerMapCase(f.to_string()));
    }
    match power_or_chebyshev_class(f) {
        Ok(PowerClass::Neither) | Err(_) => Ok(()),
        Ok(_) => Err(EngineError::PowerMapCase(f.to_string())),
    }
}

fn run(
    maps: &[RationalMap],
    start: &[P1Point],
    v: &[Poly],
    opts: &EngineOptions,
    preferred: &[u64],
) -> Result<IntersectionDescription, EngineError> {
    let g = maps.len();
    if let Some(f) = v.iter().find(|f| f.nvars() != g) {
        return Err(EngineError::VarietyMismatch { expected: g, got: f.nvars() });
    }
    let gens: Vec<Poly> = v.iter().filter(|f| !f.is_zero()).cloned().collect();
    let rec = OrbitRecord::new(maps, start, opts.scan_n)?;
    let scan = scan_orbit(&rec, &gens, opts.scan_n);
    let base = Assembly { rec: &rec, gens: &gens, scan: &scan, opts };
    let whole_space = gens.is_empty() && start.iter().all(|x| x.finite().is_some());
    if whole_space {
        // a polynomial orbit through finite points stays finite
        if maps.iter().all(|m| m.is_polynomial()) {
            let p = Progression { k: 1, l: 0, start: 0 };
            return Ok(base.finish(vec![p], Certification::Exact, None, vec![], vec![]));
        }
    }
    if gens.iter().any(|f| f.is_constant()) {
        return Ok(base.finish(vec![], Certification::Exact, None, vec![], vec![]));
    }
    if (0..g).all(|i| rec.is_preperiodic(i)) {
        return Ok(base.finite_orbit());
    }
    let Some(choice) = choose_prime(&rec, opts, preferred) else {
        let reason = format!("no prime up to {} with unit multipliers on the reached residue cycles", opts.p_max);
        return Ok(base.scan_only(Certification::Inconclusive { reason }));
    };
    Ok(base.analytic(choice))
}

struct PrimeChoice {
    p: u64,
    step: u64,
    /// Every wandering residue orbit is on its cycle from here on.
    tail: u64,
    certificates: Vec<PrimeCertificate>,
}

fn multiplicative_order(a: u64, p: u64) -> u64 {
    let mut x = a % p;
    let mut k = 1;
    while x != 1 {
        x = crate::arith::modp::mul_mod(x, a, p);
        k += 1;
    }
    k
}

fn choose_prime(rec: &OrbitRecord, opts: &EngineOptions, preferred: &[u64]) -> Option<PrimeChoice> {
    let g = rec.dim();
    let wandering: Vec<usize> = (0..g).filter(|&i| !rec.is_preperiodic(i)).collect();
    let mut pre_period = 1u64;
    let mut pre_tail = 0u64;
    for i in 0..g {
        if let OrbitKind::Preperiodic { tail, period } = rec.kind(i) {
            pre_period = lcm_u64(pre_period, *period as u64);
            pre_tail = pre_tail.max(*tail as u64);
        }
    }
    // wandering coordinates grouped by map, one certificate per group
    let mut groups: Vec<(RationalMap, Vec<P1Point>)> = Vec::new();
    for &i in &wandering {
        let m = &rec.maps()[i];
        match groups.iter_mut().find(|(f, _)| f == m) {
            Some((_, pts)) => pts.push(rec.start()[i].clone()),
            None => groups.push((m.clone(), vec![rec.start()[i].clone()])),
        }
    }
    let check = |p: u64| -> Option<PrimeChoice> {
        let mut certificates = Vec::new();
        for (m, pts) in &groups {
            let cert = match m.as_polynomial().as_ref().and_then(quadratic_constant) {
                Some(c) if c == -Rational::one() => minus_one_certificate_at(pts, p),
                Some(_) => quadratic_certificate_at(m, pts, p),
                None => orbit_certificate_at(m, pts, p),
            }?;
            if !cert.checks.unit_multipliers || cert.replay().is_err() {
                return None;
            }
            certificates.push(cert);
        }
        let mut step = pre_period;
        let mut tail = pre_tail;
        for &i in &wandering {
            let red = reduce_map(&rec.maps()[i], p).ok()?;
            let orbit = red.residue_orbit(reduce_point(&rec.start()[i], p));
            let lambda = red.cycle_multiplier(&orbit.cycle);
            if lambda == 0 {
                return None;
            }
            let k = orbit.cycle_len() as u64 * multiplicative_order(lambda, p);
            step = lcm_u64(step, k);
            tail = tail.max(orbit.tail as u64);
        }
        // p = 2, 3: one more factor of p puts the step iterate within
        // p^2 of the identity on each disk
        if p <= 3 {
            step *= p;
        }
        (step <= opts.max_step).then_some(PrimeChoice { p, step, tail, certificates })
    };
    preferred
        .iter()
        .copied()
        .filter(|&p| p <= opts.p_max)
        .find_map(&check)
        .or_else(|| search_primes(2, opts.p_max, check))
}

struct Assembly<'a> {
    rec: &'a OrbitRecord,
    gens: &'a [Poly],
    scan: &'a ScanResult,
    opts: &'a EngineOptions,
}

impl Assembly<'_> {
    fn hit(&self, n: u64) -> bool {
        n as usize <= self.scan.n_max && self.scan.is_hit(n as usize)
    }

    /// Scan hits only, with the given certification.
    fn scan_only(&self, cert: Certification) -> IntersectionDescription {
        self.finish(vec![], cert, None, vec![], vec![])
    }

    /// Both orbits finite: membership is periodic past the tails.
    fn finite_orbit(&self) -> IntersectionDescription {
        let mut period = 1u64;
        let mut tail = 0u64;
        for i in 0..self.rec.dim() {
            if let OrbitKind::Preperiodic { tail: t, period: q } = self.rec.kind(i) {
                period = lcm_u64(period, *q as u64);
                tail = tail.max(*t as u64);
            }
        }
        let member = |n: u64| exact_membership(self.gens, &self.rec.exact_point(n as usize).unwrap());
        let full: Vec<(u64, u64)> = (tail..tail + period).filter(|&n| member(n)).map(|n| (n % period, n)).collect();
        let progs = merge_classes(period, &full, member);
        let extra: Vec<u64> = (0..tail).filter(|&n| member(n)).collect();
        self.finish_with(progs, Certification::Exact, None, vec![], vec![], extra)
    }

    fn analytic(&self, choice: PrimeChoice) -> IntersectionDescription {
        let PrimeChoice { p, step: k, tail, certificates } = choice;
        let (j, m) = (self.opts.order, self.opts.precision);
        let ring = Zpm::new(p, m);
        let first = tail;
        let span = (j as u64 + 1) * k;
        // projective orbit points mod p^M for indices first .. first + span
        let windows: Vec<Option<Vec<(BigInt, BigInt)>>> = (0..self.rec.dim())
            .into_par_iter()
            .map(|i| {
                if self.rec.is_preperiodic(i) {
                    return None;
                }
                let mut o = ProjectiveOrbit::new(&self.rec.maps()[i], &self.rec.start()[i], &ring);
                for _ in 0..first {
                    o.step();
                }
                let mut out = Vec::with_capacity(span as usize);
                for _ in 0..span {
                    out.push(o.point.clone());
                    o.step();
                }
                Some(out)
            })
            .collect();
        let classes: Vec<ClassReport> = (0..k)
            .into_par_iter()
            .map(|l| {
                let base = first + (l + k - first % k) % k;
                let theta: Vec<MahlerSeries> = (0..self.rec.dim())
                    .map(|i| match &windows[i] {
                        Some(w) => {
                            let off = (base - first) as usize;
                            let chart = if w[off].1.is_one() { Chart::Affine } else { Chart::AtInfinity };
                            let samples: Vec<BigInt> =
                                (0..=j).map(|s| chart_value(&w[off + s * k as usize], chart)).collect();
                            MahlerSeries::from_samples(p, m, chart, &samples)
                        }
                        None => {
                            let x = self.rec.exact_coordinate(i, base as usize).unwrap();
                            let (chart, value) = normalized(&x, &ring);
                            MahlerSeries::from_samples(p, m, chart, &vec![value; j + 1])
                        }
                    })
                    .collect();
                ClassReport { l, base, verdict: self.class_verdict(l, base, k, &theta) }
            })
            .collect();

        if let Some(ClassReport { verdict: ClassVerdict::Inconclusive { reason }, l, .. }) =
            classes.iter().find(|c| matches!(c.verdict, ClassVerdict::Inconclusive { .. }))
        {
            let reason = format!("class {l} mod {k}: {reason}");
            return self.finish(vec![], Certification::Inconclusive { reason }, Some(k), classes, certificates);
        }
        let mut full = Vec::new();
        for c in &classes {
            if c.verdict == ClassVerdict::Full {
                let mut s = c.base;
                while s >= k && self.hit(s - k) {
                    s -= k;
                }
                full.push((c.l, s));
            }
        }
        let progs = merge_classes(k, &full, |n| self.hit(n));
        let settled = classes.iter().all(|c| matches!(c.verdict, ClassVerdict::Full | ClassVerdict::Finite { .. }));
        let cert = if settled {
            Certification::Certified { prime: p, order: j, precision: m }
        } else {
            Certification::ScanOnly { n: self.scan.n_max }
        };
        self.finish(progs, cert, Some(k), classes, certificates)
    }

    fn class_verdict(&self, l: u64, base: u64, k: u64, theta: &[MahlerSeries]) -> ClassVerdict {
        let n_max = self.scan.n_max as u64;
        let in_class = |zs: &[usize]| zs.iter().filter(|&&n| n as u64 >= base && n as u64 % k == l).count();
        let mut nonzero = Vec::new();
        for (gi, f) in self.gens.iter().enumerate() {
            match certify_vanishing(f, theta) {
                Ok(VanishingVerdict::IdenticallyZeroAtPrecision { .. }) => {}
                Ok(VanishingVerdict::NonzeroWitness(_)) => nonzero.push(gi),
                Err(e) => return ClassVerdict::Inconclusive { reason: e.to_string() },
            }
        }
        if nonzero.is_empty() {
            let mut n = base;
            while n <= n_max {
                if !self.hit(n) {
                    return ClassVerdict::Inconclusive {
                        reason: format!("vanishing certificate contradicted by index {n}"),
                    };
                }
                n += k;
            }
            return ClassVerdict::Full;
        }
        let mut last_reason = String::new();
        for &gi in &nonzero {
            match zero_count_bound(&self.gens[gi], theta) {
                Ok(bound) => {
                    let seen = in_class(&self.scan.generator_zeros[gi]);
                    if seen == bound {
                        return ClassVerdict::Finite { generator: gi, zero_bound: bound };
                    }
                    last_reason = format!("generator {gi}: {seen} zeros scanned, Strassmann bound {bound}");
                }
                Err(e) => last_reason = format!("generator {gi}: {e}"),
            }
        }
        ClassVerdict::ScanOnly { reason: last_reason }
    }

    /// Fills in the exceptional set so that the description matches the
    /// scan on `[0, N]`, and re-checks the first `check_n` indices.
    fn finish(
        &self,
        progressions: Vec<Progression>,
        certification: Certification,
        step: Option<u64>,
        classes: Vec<ClassReport>,
        prime_certificates: Vec<PrimeCertificate>,
    ) -> IntersectionDescription {
        self.finish_with(progressions, certification, step, classes, prime_certificates, vec![])
    }

    fn finish_with(
        &self,
        progressions: Vec<Progression>,
        mut certification: Certification,
        step: Option<u64>,
        classes: Vec<ClassReport>,
        prime_certificates: Vec<PrimeCertificate>,
        extra: Vec<u64>,
    ) -> IntersectionDescription {
        let n_max = self.scan.n_max as u64;
        let in_prog = |n: u64| progressions.iter().any(|p| p.contains(n));
        let mut exceptional: BTreeSet<u64> = extra.into_iter().filter(|&n| !in_prog(n)).collect();
        exceptional.extend(self.scan.hits.iter().map(|&n| n as u64).filter(|&n| !in_prog(n)));
        let mut d = IntersectionDescription {
            progressions,
            exceptional: exceptional.into_iter().collect(),
            certification: Certification::Exact,
            step,
            classes,
            prime_certificates,
            scanned: self.scan.n_max,
            modular_hits: self.scan.modular_hits.iter().map(|&n| n as u64).collect(),
        };
        let described = d.indices_up_to(n_max);
        let scanned: Vec<u64> = self.scan.hits.iter().map(|&n| n as u64).collect();
        if described != scanned && !matches!(certification, Certification::Exact) {
            certification = Certification::Inconclusive { reason: "description disagrees with the scan".into() };
        }
        let check = (self.opts.check_n as u64).min(n_max);
        let exact = self.rec.exact_len() as u64;
        for n in 0..=check.min(exact.saturating_sub(1)) {
            let pt = self.rec.exact_point(n as usize).unwrap();
            if d.contains(n) != exact_membership(self.gens, &pt) {
                certification = Certification::Inconclusive { reason: format!("index {n} fails exact re-evaluation") };
                break;
            }
        }
        d.certification = certification;
        d
    }
}

/// Coarsest modulus `d | k` such that the full classes are a union of
/// classes mod `d`, with starts pushed down through confirmed hits.
fn merge_classes(k: u64, full: &[(u64, u64)], hit: impl Fn(u64) -> bool) -> Vec<Progression> {
    if full.is_empty() {
        return vec![];
    }
    let set: BTreeSet<u64> = full.iter().map(|&(l, _)| l).collect();
    let d = (1..=k)
        .filter(|d| k % d == 0)
        .find(|&d| set.iter().all(|&l| (0..k / d).all(|t| set.contains(&((l % d) + t * d)))))
        .unwrap();
    let mut out: Vec<Progression> = Vec::new();
    for r in set.iter().map(|l| l % d).collect::<BTreeSet<u64>>() {
        let mut s = full.iter().filter(|&&(l, _)| l % d == r).map(|&(_, s)| s).max().unwrap();
        while s >= d && hit(s - d) {
            s -= d;
        }
        out.push(Progression { k: d, l: r, start: s });
    }
    out
}

fn chart_value(pt: &(BigInt, BigInt), chart: Chart) -> BigInt {
    match chart {
        Chart::Affine => pt.0.clone(),
        Chart::AtInfinity => pt.1.clone(),
    }
}

/// Chart and chart coordinate of an exact point mod `p^M`.
fn normalized(x: &P1Point, ring: &Zpm) -> (Chart, BigInt) {
    let (a, b) = homogeneous_mod(x, ring);
    match ring.inv(&b) {
        Some(bi) => (Chart::Affine, ring.mul(&a, &bi)),
        None => (Chart::AtInfinity, ring.mul(&b, &ring.inv(&a).expect("primitive pair"))),
    }
}

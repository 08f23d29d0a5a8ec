//! Mahler interpolation of sequences in `Z/p^M`, conversion to power series
//! in the index, and vanishing certificates for polynomials along orbits.

use super::series::{TailBound, TruncatedPadicSeries};
use super::AnalyticError;
use crate::arith::modp::{EvalRing, Zpm};
use crate::arith::padic::PadicNumber;
use crate::arith::poly::Poly;
use crate::arith::{int_valuation, Rational};
use crate::dynsys::{P1Point, RationalMap};
use crate::reduction::{reduce_map, reduce_point};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Which affine coordinate of `P^1` a series describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Chart {
    /// `X / Y`, for orbits in a finite residue class.
    Affine,
    /// `Y / X`, for orbits in the residue class of `∞`.
    AtInfinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MahlerSeries {
    ring: Zpm,
    coeffs: Vec<BigInt>,
    chart: Chart,
}

impl MahlerSeries {
    /// Forward differences of `samples` (values at `n = 0..=J`).
    pub fn from_samples(p: u64, precision: u32, chart: Chart, samples: &[BigInt]) -> Self {
        let ring = Zpm::new(p, precision);
        let mut row: Vec<BigInt> = samples.iter().map(|s| ring.reduce(s)).collect();
        let mut coeffs = Vec::with_capacity(row.len());
        while !row.is_empty() {
            coeffs.push(row[0].clone());
            row = row.windows(2).map(|w| ring.sub(&w[1], &w[0])).collect();
        }
        MahlerSeries { ring, coeffs, chart }
    }

    pub fn prime(&self) -> u64 {
        self.ring.p
    }

    pub fn precision(&self) -> u32 {
        self.ring.m
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> PadicNumber {
        PadicNumber::from_parts(self.ring.p, 0, self.coeffs[j].clone(), self.ring.m as i64)
    }

    /// `min_{j ≥ 1} v(a_j) / j`, capped at 1; the observed decay rate.
    pub fn slope(&self) -> Rational {
        let mut s = Rational::one();
        for (j, a) in self.coeffs.iter().enumerate().skip(1) {
            let v = self.ring.val(a);
            let r = Rational::new(BigInt::from(v), BigInt::from(j));
            if r < s {
                s = r;
            }
        }
        s
    }

    /// Guaranteed precision of values at indices past the order, assuming the
    /// unseen coefficients keep the observed decay.
    pub fn tail_precision(&self) -> i64 {
        let t = (self.slope() * Rational::from_integer(BigInt::from(self.coeffs.len()))).floor().to_integer();
        i64::try_from(t).unwrap_or(i64::MAX).min(self.ring.m as i64)
    }

    /// `Σ C(n, j) a_j`: exact at the samples, tail-limited beyond them.
    pub fn eval(&self, n: u64) -> PadicNumber {
        let mut acc = BigInt::zero();
        let mut binom = BigInt::one();
        for (j, a) in self.coeffs.iter().enumerate() {
            if j as u64 > n {
                break;
            }
            acc += &binom * a;
            binom = binom * BigInt::from(n - j as u64) / BigInt::from(j as u64 + 1);
        }
        let prec = if n as usize <= self.order() { self.ring.m as i64 } else { self.tail_precision() };
        PadicNumber::from_parts(self.ring.p, 0, acc, prec)
    }

    /// Homogeneous coordinates of `θ(n)` in `Z/p^M`.
    pub fn eval_point(&self, n: u64) -> (BigInt, BigInt) {
        let h = self.ring.reduce(&self.eval(n).to_residue().unwrap());
        match self.chart {
            Chart::Affine => (h, BigInt::one()),
            Chart::AtInfinity => (BigInt::one(), h),
        }
    }

    /// Rewrites `Σ a_j C(n, j)` as `Σ b_i n^i` using Stirling numbers of the
    /// first kind. The tail floor is `slope·(J+1) - J/(p-1)`, the least value
    /// of `v(a_j) - v(j!)` for unseen `j` under the observed decay.
    pub fn to_power_series(&self) -> TruncatedPadicSeries {
        let p = self.ring.p;
        let jmax = self.order();
        let m = self.ring.m as i64;
        let stirling = stirling_first(jmax);
        let slope = self.slope();
        let floor = slope * Rational::from_integer(BigInt::from(jmax + 1))
            - Rational::new(BigInt::from(jmax), BigInt::from(p - 1));
        let floor = i64::try_from(floor.floor().to_integer()).unwrap_or(i64::MIN);
        let mut fact = BigInt::one();
        let mut terms: Vec<PadicNumber> = Vec::with_capacity(jmax + 1);
        for j in 0..=jmax {
            if j > 0 {
                fact *= BigInt::from(j);
            }
            let a = PadicNumber::from_parts(p, 0, self.coeffs[j].clone(), m);
            let f = PadicNumber::from_rational(&Rational::from_integer(fact.clone()), p, m + 2 * jmax as i64 + 2);
            terms.push(a.div(&f).expect("factorials are nonzero"));
        }
        let mut out = Vec::with_capacity(jmax + 1);
        for i in 0..=jmax {
            let mut b = PadicNumber::zero(p, i64::MAX / 4);
            for j in i..=jmax {
                let s = &stirling[j][i];
                if s.is_zero() {
                    continue;
                }
                let sp = PadicNumber::from_rational(&Rational::from_integer(s.clone()), p, m + 64);
                b = b.add(&terms[j].mul(&sp));
            }
            out.push(b.with_precision(floor.max(0)));
        }
        let tail = if floor > 0 { TailBound::AtLeast(floor) } else { TailBound::Unknown };
        TruncatedPadicSeries::new(p, out, tail)
    }
}

/// Signed Stirling numbers of the first kind, `s[j][i]`, for `j ≤ n`.
pub fn stirling_first(n: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); n + 1]; n + 1];
    s[0][0] = BigInt::one();
    for j in 1..=n {
        for i in 1..=j {
            s[j][i] = &s[j - 1][i - 1] - BigInt::from(j - 1) * &s[j - 1][i];
        }
    }
    s
}

/// Homogeneous coordinates of a rational point as a primitive integer pair
/// reduced mod `p^M`.
pub fn homogeneous_mod(x: &P1Point, ring: &Zpm) -> (BigInt, BigInt) {
    match x {
        P1Point::Infinity => (BigInt::one(), BigInt::zero()),
        P1Point::Finite(q) => (ring.reduce(q.numer()), ring.reduce(q.denom())),
    }
}

/// Projective orbit mod `p^M`, normalized so one coordinate is one. Needs
/// good reduction so that a unit coordinate survives every step.
pub struct ProjectiveOrbit<'a> {
    ring: &'a Zpm,
    num: Vec<BigInt>,
    den: Vec<BigInt>,
    pub point: (BigInt, BigInt),
}

impl<'a> ProjectiveOrbit<'a> {
    pub fn new(phi: &RationalMap, x: &P1Point, ring: &'a Zpm) -> Self {
        let num = phi.num_coeffs().iter().map(|c| ring.reduce(c)).collect();
        let den = phi.den_coeffs().iter().map(|c| ring.reduce(c)).collect();
        let mut o = ProjectiveOrbit { ring, num, den, point: homogeneous_mod(x, ring) };
        o.normalize();
        o
    }

    fn normalize(&mut self) {
        let (x, y) = &self.point;
        if let Some(yi) = self.ring.inv(y) {
            self.point = (self.ring.mul(x, &yi), BigInt::one());
        } else {
            let xi = self.ring.inv(x).expect("a unit coordinate survives good reduction");
            self.point = (BigInt::one(), self.ring.mul(y, &xi));
        }
    }

    pub fn step(&mut self) {
        let r = self.ring;
        let (x, y) = &self.point;
        let d = self.num.len() - 1;
        let mut xp = vec![BigInt::one()];
        let mut yp = vec![BigInt::one()];
        for k in 0..d {
            xp.push(r.mul(&xp[k], x));
            yp.push(r.mul(&yp[k], y));
        }
        let form = |cs: &[BigInt]| {
            cs.iter()
                .enumerate()
                .fold(BigInt::zero(), |acc, (i, c)| acc + c * &xp[i] * &yp[d - i])
        };
        self.point = (r.reduce(&form(&self.num)), r.reduce(&form(&self.den)));
        self.normalize();
    }

    /// Chart coordinate of the current point.
    pub fn chart_value(&self, chart: Chart) -> BigInt {
        match chart {
            Chart::Affine => self.point.0.clone(),
            Chart::AtInfinity => self.point.1.clone(),
        }
    }

    pub fn is_affine_unit_chart(&self) -> bool {
        self.point.1.is_one()
    }
}

/// Chart matching the residue class of a reduced point.
pub fn chart_for_residue(residue: u64, p: u64) -> Chart {
    if residue == p {
        Chart::AtInfinity
    } else {
        Chart::Affine
    }
}

/// Mahler series of `n ↦ φ^{nk+ℓ}(x)` from `J + 1` samples mod `p^M`.
///
/// Checks that the residue class of `φ^ℓ(x)` is fixed by `φ^k` with a unit
/// multiplier, which for a map of good reduction is exactly the
/// quasiperiodicity condition on that residue disk.
pub fn orbit_interpolate(
    phi: &RationalMap,
    x: &P1Point,
    p: u64,
    k: usize,
    l: usize,
    order: usize,
    precision: u32,
) -> Result<MahlerSeries, AnalyticError> {
    let red = reduce_map(phi, p).map_err(|_| AnalyticError::BadReduction(p))?;
    if k == 0 {
        return Err(AnalyticError::NotQuasiperiodic("step must be positive".into()));
    }
    let start = red.iterate(reduce_point(x, p), l);
    let orbit = red.residue_orbit(start);
    if orbit.tail != 0 || k % orbit.cycle_len() != 0 {
        return Err(AnalyticError::NotQuasiperiodic(format!(
            "residue {start} is not fixed by the {k}-th iterate"
        )));
    }
    let lambda = red.cycle_multiplier(&orbit.cycle);
    if lambda == 0 {
        return Err(AnalyticError::NotQuasiperiodic(format!("residue cycle through {start} is superattracting")));
    }
    let ring = Zpm::new(p, precision);
    let mut o = ProjectiveOrbit::new(phi, x, &ring);
    for _ in 0..l {
        o.step();
    }
    let chart = chart_for_residue(start, p);
    let mut samples = Vec::with_capacity(order + 1);
    for n in 0..=order {
        if n > 0 {
            for _ in 0..k {
                o.step();
            }
        }
        samples.push(o.chart_value(chart));
    }
    Ok(MahlerSeries::from_samples(p, precision, chart, &samples))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum VanishingVerdict {
    IdenticallyZeroAtPrecision { order: usize, precision: u32 },
    /// Smallest sample index with a nonzero value.
    NonzeroWitness(u64),
}

/// Samples of the bihomogenized `F` along `θ`, i.e. `F^h(θ(n))` for `n ≤ J`.
pub fn composed_samples(f: &Poly, theta: &[MahlerSeries]) -> Result<Vec<BigInt>, AnalyticError> {
    let first = theta.first().ok_or(AnalyticError::PrecisionExhausted)?;
    if f.nvars() != theta.len()
        || theta.iter().any(|t| t.prime() != first.prime() || t.precision() != first.precision() || t.order() != first.order())
    {
        return Err(AnalyticError::PrecisionExhausted);
    }
    let ring = first.ring.clone();
    let compiled = f.compile(&ring).ok_or(AnalyticError::NonIntegralCoefficients)?;
    Ok((0..=first.order() as u64)
        .map(|n| {
            let pts: Vec<(BigInt, BigInt)> = theta.iter().map(|t| t.eval_point(n)).collect();
            compiled.eval_projective(&ring, &pts)
        })
        .collect())
}

/// All Mahler coefficients of `F∘θ` vanish at precision `M` exactly when all
/// `J + 1` samples do.
pub fn certify_vanishing(f: &Poly, theta: &[MahlerSeries]) -> Result<VanishingVerdict, AnalyticError> {
    let f = f.primitive_integer();
    let samples = composed_samples(&f, theta)?;
    match samples.iter().position(|s| !s.is_zero()) {
        Some(n) => Ok(VanishingVerdict::NonzeroWitness(n as u64)),
        None => Ok(VanishingVerdict::IdenticallyZeroAtPrecision {
            order: theta[0].order(),
            precision: theta[0].precision(),
        }),
    }
}

/// Strassmann bound on the zeros of `n ↦ F^h(θ(n))` in `Z_p`.
pub fn zero_count_bound(f: &Poly, theta: &[MahlerSeries]) -> Result<usize, AnalyticError> {
    let f = f.primitive_integer();
    let samples = composed_samples(&f, theta)?;
    let first = &theta[0];
    let g = MahlerSeries::from_samples(first.prime(), first.precision(), Chart::Affine, &samples);
    super::series::strassmann_count(&g.to_power_series())
}

/// `v_p` of a nonzero integer, or `None` for zero.
pub fn int_val(n: &BigInt, p: u64) -> Option<u64> {
    (!n.is_zero()).then(|| int_valuation(&n.abs(), p))
}

/// Exact `a mod p^M` as a signed representative, for diagnostics.
pub fn centered(a: &BigInt, ring: &Zpm) -> BigInt {
    crate::arith::symmetric_mod(&a.mod_floor(&ring.modulus), &ring.modulus)
}

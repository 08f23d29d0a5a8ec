//! Reduction of maps and points modulo a prime, and the functional graph of
//! the reduced map on `P^1(F_p)`.
//!
//! Points of `P^1(F_p)` are encoded as `u64` in `0..=p`, with `p` standing
//! for `∞`.

use crate::arith::modp::{bigint_mod_u64, inv_mod, mul_mod, rat_mod, sub_mod, Fp, FpPoly};
use crate::arith::valuation;
use crate::dynsys::{chart_derivative, P1Point, RationalMap};
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("map has bad reduction at {0}")]
    BadReduction(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedMap {
    p: u64,
    num: Vec<u64>,
    den: Vec<u64>,
}

/// Reduction of the normalized integral model; may lose degree.
fn reduce_forms(phi: &RationalMap, p: u64) -> (Vec<u64>, Vec<u64>) {
    let r = |cs: &[num_bigint::BigInt]| cs.iter().map(|c| bigint_mod_u64(c, p)).collect();
    (r(phi.num_coeffs()), r(phi.den_coeffs()))
}

/// Resultant of two binary forms of degree `d` over `F_p`, as a Sylvester
/// determinant of the full coefficient vectors.
fn form_resultant(a: &[u64], b: &[u64], p: u64) -> u64 {
    let d = a.len() - 1;
    let n = 2 * d;
    let mut m = vec![vec![0u64; n]; n];
    for r in 0..d {
        for k in 0..=d {
            m[r][r + k] = a[d - k];
            m[d + r][r + k] = b[d - k];
        }
    }
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| m[r][c] != 0) else {
            return 0;
        };
        if piv != c {
            m.swap(piv, c);
            det = (p - det) % p;
        }
        det = mul_mod(det, m[c][c], p);
        let inv = inv_mod(m[c][c], p).unwrap();
        for r in c + 1..n {
            if m[r][c] == 0 {
                continue;
            }
            let f = mul_mod(m[r][c], inv, p);
            for k in c..n {
                let s = mul_mod(f, m[c][k], p);
                m[r][k] = sub_mod(m[r][k], s, p);
            }
        }
    }
    det
}

fn horner(cs: &[u64], x: u64, p: u64) -> u64 {
    cs.iter().rev().fold(0, |acc, &c| {
        let t = mul_mod(acc, x, p) + c;
        if t >= p {
            t - p
        } else {
            t
        }
    })
}

pub fn good_reduction(phi: &RationalMap, p: u64) -> bool {
    let (f, g) = reduce_forms(phi, p);
    form_resultant(&f, &g, p) != 0
}

pub fn reduce_map(phi: &RationalMap, p: u64) -> Result<ReducedMap, ReductionError> {
    if !good_reduction(phi, p) {
        return Err(ReductionError::BadReduction(p));
    }
    let (num, den) = reduce_forms(phi, p);
    Ok(ReducedMap { p, num, den })
}

pub fn reduce_point(x: &P1Point, p: u64) -> u64 {
    match x {
        P1Point::Infinity => p,
        P1Point::Finite(q) => rat_mod(q, p).unwrap_or(p),
    }
}

/// Whether `x` reduces into the affine part with a `p`-integral coordinate.
pub fn is_integral_point(x: &P1Point, p: u64) -> bool {
    match x {
        P1Point::Infinity => false,
        P1Point::Finite(q) => valuation(q, p) >= crate::arith::Valuation::Finite(0),
    }
}

impl ReducedMap {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.num.len() - 1
    }

    pub fn infinity(&self) -> u64 {
        self.p
    }

    pub fn num_coeffs(&self) -> &[u64] {
        &self.num
    }

    pub fn den_coeffs(&self) -> &[u64] {
        &self.den
    }

    pub fn apply(&self, x: u64) -> u64 {
        let p = self.p;
        let (f, g) = if x == p {
            let d = self.degree();
            (self.num[d], self.den[d])
        } else {
            (horner(&self.num, x, p), horner(&self.den, x, p))
        };
        match inv_mod(g, p) {
            Some(gi) => mul_mod(f, gi, p),
            None => p,
        }
    }

    pub fn iterate(&self, x: u64, n: usize) -> u64 {
        (0..n).fold(x, |y, _| self.apply(y))
    }

    /// Derivative at `x` in the charts at `x` and its image.
    pub fn local_derivative(&self, x: u64) -> u64 {
        let xv = (x != self.p).then_some(x);
        chart_derivative(&Fp { p: self.p }, &self.num, &self.den, xv.as_ref()).expect("good reduction")
    }

    pub fn cycle_multiplier(&self, cycle: &[u64]) -> u64 {
        cycle.iter().fold(1, |acc, &z| mul_mod(acc, self.local_derivative(z), self.p))
    }

    /// `self ∘ other` as forms.
    pub fn compose(&self, other: &ReducedMap) -> ReducedMap {
        let p = self.p;
        let d = self.degree();
        let e = other.degree();
        // homogeneous forms as polynomials in X with Y = 1, padded to degree d·e
        let a = FpPoly::new(p, other.num.clone());
        let b = FpPoly::new(p, other.den.clone());
        let mut apow = vec![FpPoly::new(p, vec![1])];
        let mut bpow = vec![FpPoly::new(p, vec![1])];
        for k in 0..d {
            apow.push(apow[k].mul(&a));
            bpow.push(bpow[k].mul(&b));
        }
        let form = |cs: &[u64]| {
            let mut acc = FpPoly::zero(p);
            for (i, &c) in cs.iter().enumerate() {
                acc = acc.add(&apow[i].mul(&bpow[d - i]).scale(c));
            }
            let mut v = acc.coeffs;
            v.resize(d * e + 1, 0);
            v
        };
        ReducedMap { p, num: form(&self.num), den: form(&self.den) }
    }

    /// Equal as maps of `P^1`: proportional coefficient pairs.
    pub fn same_as(&self, o: &ReducedMap) -> bool {
        if self.p != o.p || self.num.len() != o.num.len() {
            return false;
        }
        let a: Vec<u64> = self.num.iter().chain(&self.den).copied().collect();
        let b: Vec<u64> = o.num.iter().chain(&o.den).copied().collect();
        let Some(i) = a.iter().position(|&c| c != 0) else {
            return false;
        };
        let Some(s) = inv_mod(a[i], self.p).map(|ai| mul_mod(b[i], ai, self.p)) else {
            return false;
        };
        s != 0 && a.iter().zip(&b).all(|(&x, &y)| mul_mod(x, s, self.p) == y)
    }

    pub fn residue_orbit(&self, start: u64) -> ResidueOrbit {
        if self.p > 1_000_000 {
            return self.residue_orbit_brent(start);
        }
        let mut seen: HashMap<u64, usize> = HashMap::new();
        let mut path = Vec::new();
        let mut y = start;
        loop {
            if let Some(&j) = seen.get(&y) {
                return ResidueOrbit { start, tail: j, cycle: path[j..].to_vec() };
            }
            seen.insert(y, path.len());
            path.push(y);
            y = self.apply(y);
        }
    }

    fn residue_orbit_brent(&self, start: u64) -> ResidueOrbit {
        let (mut power, mut lam) = (1usize, 1usize);
        let mut tortoise = start;
        let mut hare = self.apply(start);
        while tortoise != hare {
            if power == lam {
                tortoise = hare;
                power *= 2;
                lam = 0;
            }
            hare = self.apply(hare);
            lam += 1;
        }
        let mut t = start;
        let mut h = self.iterate(start, lam);
        let mut mu = 0;
        while t != h {
            t = self.apply(t);
            h = self.apply(h);
            mu += 1;
        }
        let cycle = std::iter::successors(Some(t), |&z| Some(self.apply(z))).take(lam).collect();
        ResidueOrbit { start, tail: mu, cycle }
    }

    /// Every cycle of the functional graph, each listed from its least point,
    /// sorted by that point.
    pub fn periodic_cycles(&self) -> Vec<Vec<u64>> {
        let n = self.p as usize + 1;
        let mut stamp = vec![0usize; n];
        let mut cycles = Vec::new();
        for s in 0..n {
            if stamp[s] != 0 {
                continue;
            }
            let mark = s + 1;
            let mut y = s;
            while stamp[y] == 0 {
                stamp[y] = mark;
                y = self.apply(y as u64) as usize;
            }
            if stamp[y] == mark {
                let mut c = vec![y as u64];
                let mut z = self.apply(y as u64);
                while z != y as u64 {
                    c.push(z);
                    z = self.apply(z);
                }
                let k = c.iter().enumerate().min_by_key(|(_, &v)| v).unwrap().0;
                c.rotate_left(k);
                cycles.push(c);
            }
        }
        cycles.sort();
        cycles
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueOrbit {
    pub start: u64,
    /// Index of the first periodic point.
    pub tail: usize,
    /// The cycle, starting at the first periodic point reached.
    pub cycle: Vec<u64>,
}

impl ResidueOrbit {
    pub fn cycle_len(&self) -> usize {
        self.cycle.len()
    }
}

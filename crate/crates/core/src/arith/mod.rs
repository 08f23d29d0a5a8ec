//! Exact scalars and polynomials: rationals, valuations, residue fields,
//! capped-precision p-adics, and uni/multivariate polynomials over them.

pub mod modp;
pub mod padic;
pub mod poly;
pub mod primes;
pub mod upoly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;

pub type Rational = BigRational;

/// `v_p` with the `+∞` sentinel for zero. Ordering puts `Infinite` above
/// every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Number of times `p` divides the nonzero integer `n`.
pub fn int_valuation(n: &BigInt, p: u64) -> u64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn valuation(q: &Rational, p: u64) -> Valuation {
    if q.is_zero() {
        return Valuation::Infinite;
    }
    let vn = int_valuation(q.numer(), p) as i64;
    let vd = int_valuation(q.denom(), p) as i64;
    Valuation::Finite(vn - vd)
}

pub fn is_p_integral(q: &Rational, p: u64) -> bool {
    !(q.denom() % BigInt::from(p)).is_zero()
}

/// Bit size of the larger of numerator and denominator; a cheap height proxy.
pub fn height_bits(q: &Rational) -> u64 {
    q.numer().bits().max(q.denom().bits())
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Exact `m`-th root of a rational, if it exists. Negative radicands are
/// allowed for odd `m`; for even `m` the positive root is returned.
pub fn rational_root(q: &Rational, m: u32) -> Option<Rational> {
    if m == 0 {
        return None;
    }
    if q.is_zero() {
        return Some(q.clone());
    }
    if q.is_negative() {
        if m % 2 == 0 {
            return None;
        }
        return rational_root(&-q, m).map(|r| -r);
    }
    let n = exact_int_root(q.numer(), m)?;
    let d = exact_int_root(q.denom(), m)?;
    Some(Rational::new(n, d))
}

fn exact_int_root(n: &BigInt, m: u32) -> Option<BigInt> {
    let r = n.nth_root(m);
    if num_traits::pow(r.clone(), m as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Symmetric residue of `a` modulo `m` in `(-m/2, m/2]`.
pub fn symmetric_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Serde adapter writing a value through its `Display` form, for exact
/// numbers in JSON reports.
pub fn display_str<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Like [`display_str`] for sequences.
pub fn display_seq<T: std::fmt::Display, S: serde::Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations_of_small_rationals() {
        assert_eq!(valuation(&rat(50, 3), 5), Valuation::Finite(2));
        assert_eq!(valuation(&int(0), 7), Valuation::Infinite);
        assert_eq!(valuation(&rat(1, 3), 3), Valuation::Finite(-1));
        assert!(Valuation::Finite(1_000_000) < Valuation::Infinite);
    }

    #[test]
    fn integrality() {
        assert!(is_p_integral(&rat(1, 3), 5));
        assert!(!is_p_integral(&rat(1, 5), 5));
        assert!(is_p_integral(&int(10), 5));
    }

    #[test]
    fn roots() {
        assert_eq!(rational_root(&rat(-8, 27), 3), Some(rat(-2, 3)));
        assert_eq!(rational_root(&int(2), 2), None);
        assert_eq!(rational_root(&rat(1, 4), 2), Some(rat(1, 2)));
    }
}

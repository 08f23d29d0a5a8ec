//! Capped-precision elements of `Q_p`.
//!
//! A value is `p^v · u + O(p^M)` with `M` the absolute precision. The unit is
//! stored reduced modulo `p^(M - v)`, so it carries exactly the digits that are
//! known. A value indistinguishable from zero has valuation `Infinite` and only
//! its precision is meaningful.

use super::{int_valuation, valuation, Rational, Valuation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicNumber {
    prime: u64,
    valuation: Valuation,
    unit: BigInt,
    precision: i64,
}

fn ppow(p: u64, e: i64) -> BigInt {
    debug_assert!(e >= 0);
    num_traits::pow(BigInt::from(p), e as usize)
}

impl PadicNumber {
    pub fn zero(p: u64, precision: i64) -> Self {
        PadicNumber { prime: p, valuation: Valuation::Infinite, unit: BigInt::zero(), precision }
    }

    /// Builds `p^v · u + O(p^M)` from an arbitrary integer `u`, renormalizing
    /// so the stored unit is coprime to `p`.
    pub fn from_parts(p: u64, v: i64, u: BigInt, precision: i64) -> Self {
        if v >= precision {
            return Self::zero(p, precision);
        }
        let u = u.mod_floor(&ppow(p, precision - v));
        if u.is_zero() {
            return Self::zero(p, precision);
        }
        let extra = int_valuation(&u, p) as i64;
        let v = v + extra;
        if v >= precision {
            return Self::zero(p, precision);
        }
        let unit = (u / ppow(p, extra)).mod_floor(&ppow(p, precision - v));
        PadicNumber { prime: p, valuation: Valuation::Finite(v), unit, precision }
    }

    pub fn from_rational(q: &Rational, p: u64, precision: i64) -> Self {
        let v = match valuation(q, p) {
            Valuation::Infinite => return Self::zero(p, precision),
            Valuation::Finite(v) => v,
        };
        if v >= precision {
            return Self::zero(p, precision);
        }
        let pv = ppow(p, v.abs());
        let (n, d) = if v >= 0 {
            (q.numer() / &pv, q.denom().clone())
        } else {
            (q.numer().clone(), q.denom() / &pv)
        };
        let m = ppow(p, precision - v);
        let dinv = d.mod_floor(&m).extended_gcd(&m).x;
        let unit = (n * dinv).mod_floor(&m);
        PadicNumber { prime: p, valuation: Valuation::Finite(v), unit, precision }
    }

    pub fn from_int(n: i64, p: u64, precision: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()), p, precision)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn valuation(&self) -> Valuation {
        self.valuation
    }

    pub fn unit(&self) -> Option<&BigInt> {
        match self.valuation {
            Valuation::Finite(_) => Some(&self.unit),
            Valuation::Infinite => None,
        }
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.valuation == Valuation::Infinite
    }

    /// Lowers the absolute precision; never raises it.
    pub fn with_precision(&self, m: i64) -> Self {
        if m >= self.precision {
            return self.clone();
        }
        match self.valuation {
            Valuation::Infinite => Self::zero(self.prime, m),
            Valuation::Finite(v) => Self::from_parts(self.prime, v, self.unit.clone(), m),
        }
    }

    /// Integer representative modulo `p^M` of a value with `v ≥ 0`.
    pub fn to_residue(&self) -> Option<BigInt> {
        match self.valuation {
            Valuation::Infinite => Some(BigInt::zero()),
            Valuation::Finite(v) if v >= 0 => Some(&self.unit * ppow(self.prime, v)),
            _ => None,
        }
    }

    /// Rational representative `p^v · u`.
    pub fn to_rational(&self) -> Rational {
        match self.valuation {
            Valuation::Infinite => Rational::zero(),
            Valuation::Finite(v) if v >= 0 => Rational::from_integer(&self.unit * ppow(self.prime, v)),
            Valuation::Finite(v) => Rational::new(self.unit.clone(), ppow(self.prime, -v)),
        }
    }

    /// Equality of the known digits: the difference vanishes at the common precision.
    pub fn agrees_with(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.prime, o.prime, "p-adic operands over different primes");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let p = self.prime;
        let m = self.precision.min(o.precision);
        match (self.valuation, o.valuation) {
            (Valuation::Infinite, _) => o.with_precision(m),
            (_, Valuation::Infinite) => self.with_precision(m),
            (Valuation::Finite(a), Valuation::Finite(b)) => {
                let v = a.min(b);
                let s = &self.unit * ppow(p, a - v) + &o.unit * ppow(p, b - v);
                Self::from_parts(p, v, s, m)
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self.valuation {
            Valuation::Infinite => self.clone(),
            Valuation::Finite(v) => Self::from_parts(self.prime, v, -&self.unit, self.precision),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let p = self.prime;
        match (self.valuation, o.valuation) {
            (Valuation::Infinite, Valuation::Infinite) => Self::zero(p, self.precision + o.precision),
            (Valuation::Infinite, Valuation::Finite(b)) => Self::zero(p, self.precision + b),
            (Valuation::Finite(a), Valuation::Infinite) => Self::zero(p, o.precision + a),
            (Valuation::Finite(a), Valuation::Finite(b)) => {
                let m = (a + o.precision).min(b + self.precision);
                Self::from_parts(p, a + b, &self.unit * &o.unit, m)
            }
        }
    }

    /// `None` when dividing by a value that is zero at its precision.
    pub fn div(&self, o: &Self) -> Option<Self> {
        self.check(o);
        let p = self.prime;
        let b = o.valuation.finite()?;
        // relative precision of the divisor bounds that of the quotient
        let rel_o = o.precision - b;
        match self.valuation {
            Valuation::Infinite => Some(Self::zero(p, self.precision - b)),
            Valuation::Finite(a) => {
                let m = (self.precision - b).min(a - b + rel_o);
                let modulus = ppow(p, (m - (a - b)).max(1));
                let inv = o.unit.mod_floor(&modulus).extended_gcd(&modulus).x;
                Some(Self::from_parts(p, a - b, &self.unit * inv, m))
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::from_parts(self.prime, 0, BigInt::one(), self.precision.max(1));
        }
        let mut r = self.clone();
        for _ in 1..e {
            r = r.mul(self);
        }
        r
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.valuation {
            Valuation::Infinite => write!(f, "O({}^{})", self.prime, self.precision),
            Valuation::Finite(v) => {
                write!(f, "{}^{}*{} + O({}^{})", self.prime, v, self.unit, self.prime, self.precision)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn examples_from_rationals() {
        let a = PadicNumber::from_rational(&rat(1, 3), 2, 4);
        assert_eq!(a.valuation(), Valuation::Finite(0));
        assert_eq!(a.unit(), Some(&BigInt::from(11)));

        let b = PadicNumber::from_rational(&rat(50, 3), 5, 6);
        assert_eq!(b.valuation(), Valuation::Finite(2));
        // the unit is known modulo 5^(6-2); it is 2/3 there
        let u = b.unit().unwrap();
        assert_eq!((u * BigInt::from(3) - BigInt::from(2)).mod_floor(&BigInt::from(625)), BigInt::zero());

        assert!(PadicNumber::from_rational(&int(0), 5, 6).is_zero());
    }

    #[test]
    fn negative_valuation_roundtrip() {
        let q = rat(7, 50);
        let a = PadicNumber::from_rational(&q, 5, 10);
        assert_eq!(a.valuation(), Valuation::Finite(-2));
        let back = PadicNumber::from_rational(&a.to_rational(), 5, 10);
        assert_eq!(a, back);
    }

    #[test]
    fn precision_propagation() {
        let a = PadicNumber::from_rational(&rat(3, 1), 3, 10);
        let b = PadicNumber::from_rational(&rat(9, 2), 3, 5);
        assert_eq!(a.add(&b).precision(), 5);
        // v(a) = 1, v(b) = 2: product known to min(1 + 5, 2 + 10)
        assert_eq!(a.mul(&b).precision(), 6);
        let q = b.div(&a).unwrap();
        assert_eq!(q.valuation(), Valuation::Finite(1));
        assert!(q.agrees_with(&PadicNumber::from_rational(&rat(3, 2), 3, 20)));
        assert!(a.sub(&a).is_zero());
    }
}

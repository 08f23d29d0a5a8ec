//! Residue rings: `F_p` on machine words, `Z/p^M` on big integers, and dense
//! polynomials over `F_p`.

use super::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt::Debug;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse modulo `m` (not necessarily prime); `None` when not a unit.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// Legendre symbol `(a/p)` for odd prime `p`, by Euler's criterion.
pub fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub fn bigint_mod_u64(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Reduction of a `p`-integral rational; `None` if `p` divides the denominator.
pub fn rat_mod(q: &Rational, p: u64) -> Option<u64> {
    let d = bigint_mod_u64(q.denom(), p);
    let dinv = inv_mod(d, p)?;
    Some(mul_mod(bigint_mod_u64(q.numer(), p), dinv, p))
}

/// A commutative ring in which polynomials and orbit points can be evaluated.
pub trait EvalRing: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_rational(&self, q: &Rational) -> Option<Self::Elem>;

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }
}

/// The rationals themselves, for exact evaluation through the same code paths.
#[derive(Clone, Copy, Debug, Default)]
pub struct QField;

impl EvalRing for QField {
    type Elem = Rational;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_rational(&self, q: &Rational) -> Option<Rational> {
        Some(q.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl EvalRing for Fp {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        add_mod(*a, *b, self.p)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        sub_mod(*a, *b, self.p)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.p)
    }
    fn from_rational(&self, q: &Rational) -> Option<u64> {
        rat_mod(q, self.p)
    }
}

/// `Z / p^M Z`, elements kept in `[0, p^M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zpm {
    pub p: u64,
    pub m: u32,
    pub modulus: BigInt,
}

impl Zpm {
    pub fn new(p: u64, m: u32) -> Self {
        Zpm { p, m, modulus: num_traits::pow(BigInt::from(p), m as usize) }
    }

    pub fn reduce(&self, a: &BigInt) -> BigInt {
        a.mod_floor(&self.modulus)
    }

    /// `p`-adic valuation of a residue, capped at `M` for zero.
    pub fn val(&self, a: &BigInt) -> u32 {
        let a = self.reduce(a);
        if a.is_zero() {
            return self.m;
        }
        super::int_valuation(&a, self.p) as u32
    }

    pub fn residue(&self, a: &BigInt) -> u64 {
        bigint_mod_u64(a, self.p)
    }
}

impl EvalRing for Zpm {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a + b))
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a - b))
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a * b))
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        self.reduce(a).is_zero()
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        let e = self.reduce(a).extended_gcd(&self.modulus);
        if !e.gcd.is_one() {
            return None;
        }
        Some(self.reduce(&e.x))
    }
    fn from_rational(&self, q: &Rational) -> Option<BigInt> {
        let d = self.inv(q.denom())?;
        Some(self.mul(&self.reduce(q.numer()), &d))
    }
}

/// Dense polynomial over `F_p`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    /// Reduction of a rational polynomial; `None` when a coefficient is not
    /// `p`-integral.
    pub fn from_rationals(p: u64, cs: &[Rational]) -> Option<Self> {
        let v: Option<Vec<u64>> = cs.iter().map(|c| rat_mod(c, p)).collect();
        Some(FpPoly::new(p, v?))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| {
                add_mod(
                    *self.coeffs.get(i).unwrap_or(&0),
                    *o.coeffs.get(i).unwrap_or(&0),
                    self.p,
                )
            })
            .collect();
        FpPoly::new(self.p, v)
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| {
                sub_mod(
                    *self.coeffs.get(i).unwrap_or(&0),
                    *o.coeffs.get(i).unwrap_or(&0),
                    self.p,
                )
            })
            .collect();
        FpPoly::new(self.p, v)
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut v = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                v[i + j] = add_mod(v[i + j], mul_mod(a, b, self.p), self.p);
            }
        }
        FpPoly::new(self.p, v)
    }

    pub fn scale(&self, s: u64) -> FpPoly {
        FpPoly::new(self.p, self.coeffs.iter().map(|&c| mul_mod(c, s, self.p)).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = inv_mod(d.lead(), p).expect("leading coefficient invertible");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = mul_mod(r[i], inv, p);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[i - dd + j] = sub_mod(r[i - dd + j], mul_mod(c, dc, p), p);
            }
        }
        r.truncate(dd);
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> FpPoly {
        match inv_mod(self.lead(), self.p) {
            Some(i) if !self.is_zero() => self.scale(i),
            _ => self.clone(),
        }
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
            .collect();
        FpPoly::new(self.p, v)
    }

    pub fn mulmod(&self, o: &FpPoly, m: &FpPoly) -> FpPoly {
        self.mul(o).rem(m)
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &FpPoly) -> FpPoly {
        let mut r = FpPoly::new(self.p, vec![1]).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mulmod(&b, m);
            }
            b = b.mulmod(&b, m);
            e >>= 1;
        }
        r
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).degree() == Some(0)
            }
        }
    }

    /// Ben-Or style test: `gcd(f, x^{p^i} - x) = 1` for `i ≤ deg/2`.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic();
        let x = FpPoly::x(self.p);
        let mut xp = x.clone();
        for _ in 0..n / 2 {
            xp = xp.powmod(self.p, &f);
            let g = f.gcd(&xp.sub(&x));
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// All roots in `F_p` by exhaustive evaluation (callers keep `p` small).
    pub fn roots_brute(&self) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(x) == 0).collect()
    }
}

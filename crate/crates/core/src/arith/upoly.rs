//! Dense univariate polynomials over `Q`.

use super::modp::FpPoly;
use super::primes::next_prime;
use super::{common_denominator, symmetric_mod, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficients lowest degree first; the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `c · t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `self(inner(t))`, by Horner.
    pub fn compose(&self, inner: &UPoly) -> UPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(UPoly::zero(), |acc, c| &(&acc * inner) + &UPoly::constant(c.clone()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = UPoly::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// `self(t + a)`.
    pub fn taylor_shift(&self, a: &Rational) -> Self {
        self.compose(&UPoly::new(vec![a.clone(), Rational::one()]))
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let inv = d.lead().recip();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = &r[i] * &inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i - dd + j] -= &c * dc;
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    pub fn divexact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b).primitive_rational();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scales to integer coefficients with content one and positive lead; this
    /// keeps Euclidean remainder sequences from swelling.
    pub fn primitive_rational(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let ints = self.primitive_ints();
        UPoly::new(ints.into_iter().map(Rational::from_integer).collect())
    }

    /// Integer coefficient vector of the primitive associate.
    pub fn primitive_ints(&self) -> Vec<BigInt> {
        let den = common_denominator(&self.coeffs);
        let mut ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() {
            let s = if self.lead().is_negative() { -g } else { g };
            for c in ints.iter_mut() {
                *c = &*c / &s;
            }
        }
        ints
    }

    pub fn squarefree_part(&self) -> UPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divexact(&g).unwrap().monic()
    }

    /// Yun's algorithm: pairs `(w_k, k)` with `self = lc · ∏ w_k^k`, each `w_k`
    /// monic, squarefree, pairwise coprime and nonconstant.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.divexact(&a0).unwrap();
        let mut c = fp.divexact(&a0).unwrap();
        let mut d = &c - &b.derivative();
        let mut k = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), k));
            }
            b = b.divexact(&a).unwrap();
            c = d.divexact(&a).unwrap();
            d = &c - &b.derivative();
            k += 1;
        }
        out
    }

    /// Distinct rational roots, ascending.
    ///
    /// Roots are found modulo a prime where the squarefree part stays
    /// squarefree, Hensel lifted, reconstructed as `N / lc` and verified.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_constant() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut sf = self.squarefree_part();
        if sf.coeff(0).is_zero() {
            out.push(Rational::zero());
            sf = sf.divexact(&UPoly::x()).unwrap();
        }
        if !sf.is_constant() {
            let a = sf.primitive_ints();
            if a.len() == 2 {
                out.push(Rational::new(-a[0].clone(), a[1].clone()));
            } else {
                out.extend(roots_by_lifting(&a));
            }
        }
        out.sort();
        out
    }

    /// Multiplicity of `r` as a root (0 if not a root).
    pub fn root_multiplicity(&self, r: &Rational) -> u32 {
        if self.is_zero() {
            return u32::MAX;
        }
        let lin = UPoly::new(vec![-r.clone(), Rational::one()]);
        let mut f = self.clone();
        let mut k = 0;
        while let Some(q) = f.divexact(&lin) {
            f = q;
            k += 1;
        }
        k
    }

    pub fn fmt_var(&self, var: &str) -> String {
        super::poly::format_terms(
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (c.clone(), if i == 0 { String::new() } else if i == 1 { var.to_string() } else { format!("{var}^{i}") })),
        )
    }
}

fn roots_by_lifting(a: &[BigInt]) -> Vec<Rational> {
    let lc = a.last().unwrap().abs();
    let a0 = a[0].abs();
    let bound = BigInt::from(2) * &lc * &a0 + 1;
    let fq = |q: u64| {
        let cs: Vec<u64> = a.iter().map(|c| super::modp::bigint_mod_u64(c, q)).collect();
        FpPoly::new(q, cs)
    };
    let mut q = 101;
    let poly_q = loop {
        let f = fq(q);
        if f.degree() == Some(a.len() - 1) && f.is_squarefree() {
            break f;
        }
        q = next_prime(q);
    };
    let dpoly: Vec<BigInt> = a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let eval = |cs: &[BigInt], x: &BigInt, m: &BigInt| {
        cs.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
    };
    let lc_signed = a.last().unwrap().clone();
    let mut out = Vec::new();
    for r in poly_q.roots_brute() {
        let mut x = BigInt::from(r);
        let mut m = BigInt::from(q);
        while m <= bound {
            m = &m * &m;
            let fx = eval(a, &x, &m);
            let dfx = eval(&dpoly, &x, &m);
            let inv = dfx.extended_gcd(&m).x;
            x = (x - fx * inv).mod_floor(&m);
        }
        let n = symmetric_mod(&(&lc_signed * &x), &m);
        let cand = Rational::new(n, lc_signed.clone());
        let val = a
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &cand + Rational::from_integer(c.clone()));
        if val.is_zero() {
            out.push(cand);
        }
    }
    out
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::new(v)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn lin(r: Rational) -> UPoly {
        UPoly::new(vec![-r, Rational::one()])
    }

    #[test]
    fn roots_of_products_of_linear_factors() {
        let rs = [rat(-7, 3), rat(1, 2), int(5), rat(22, 7)];
        let mut f = UPoly::constant(rat(3, 5));
        for r in &rs {
            f = &f * &lin(r.clone());
        }
        // an irreducible quadratic factor and a repeated root
        f = &f * &UPoly::from_ints(&[2, 0, 1]);
        f = &f * &lin(int(5));
        let mut want = rs.to_vec();
        want.sort();
        assert_eq!(f.rational_roots(), want);
        assert_eq!(f.root_multiplicity(&int(5)), 2);
    }

    #[test]
    fn zero_root_and_no_roots() {
        assert_eq!(UPoly::from_ints(&[0, 0, 1]).rational_roots(), vec![int(0)]);
        assert!(UPoly::from_ints(&[-2, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn yun_decomposition() {
        let a = lin(int(1));
        let b = UPoly::from_ints(&[1, 0, 1]);
        let f = &(&a * &a.pow(2)) * &b;
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(b, 1), (a, 3)]);
    }

    #[test]
    fn gcd_and_division() {
        let a = &lin(int(2)) * &lin(int(3));
        let b = &lin(int(2)) * &lin(int(-4));
        assert_eq!(a.gcd(&b), lin(int(2)));
        let (q, r) = b.div_rem(&a);
        assert_eq!(&(&q * &a) + &r, b);
    }
}

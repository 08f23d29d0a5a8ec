//! Sparse multivariate polynomials over `Q` in lexicographic order.
//!
//! Variables are ordered by position: `vars[0] > vars[1] > …`, so the last
//! key of the term map is the lex-leading monomial.

use super::modp::EvalRing;
use super::upoly::UPoly;
use super::{common_denominator, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;
use thiserror::Error;

pub type Monomial = Vec<u32>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("inexact division")]
    InexactDivision,
    #[error("ring mismatch: variable lists {0:?} and {1:?} differ")]
    RingMismatch(Vec<String>, Vec<String>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    DivExact,
    Gcd,
    /// Resultant eliminating the variable with the given index.
    Resultant(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, Rational>,
}

/// Checked binary operation; refuses operands over different variable lists.
pub fn poly_arith(a: &Poly, b: &Poly, op: PolyOp) -> Result<Poly, PolyError> {
    if a.vars != b.vars {
        return Err(PolyError::RingMismatch(a.vars.to_vec(), b.vars.to_vec()));
    }
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Mul => a * b,
        PolyOp::DivExact => a.divexact(b)?,
        PolyOp::Gcd => a.gcd(b),
        PolyOp::Resultant(i) => a.resultant(b, i),
    })
}

impl Poly {
    pub fn zero_in(vars: &Arc<Vec<String>>) -> Self {
        Poly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn new_vars(names: &[&str]) -> Arc<Vec<String>> {
        Arc::new(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn from_terms(vars: &Arc<Vec<String>>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero_in(vars);
        for (m, c) in terms {
            assert_eq!(m.len(), vars.len());
            p.add_term(m, c);
        }
        p
    }

    pub fn constant(vars: &Arc<Vec<String>>, c: Rational) -> Self {
        Self::from_terms(vars, [(vec![0; vars.len()], c)])
    }

    pub fn one_in(vars: &Arc<Vec<String>>) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var(vars: &Arc<Vec<String>>, i: usize) -> Self {
        Self::var_pow(vars, i, 1)
    }

    pub fn var_pow(vars: &Arc<Vec<String>>, i: usize, k: u32) -> Self {
        let mut m = vec![0; vars.len()];
        m[i] = k;
        Self::from_terms(vars, [(m, Rational::one())])
    }

    /// Embeds a univariate polynomial as a polynomial in variable `i`.
    pub fn from_upoly(vars: &Arc<Vec<String>>, i: usize, f: &UPoly) -> Self {
        Self::from_terms(
            vars,
            f.coeffs().iter().enumerate().map(|(k, c)| {
                let mut m = vec![0; vars.len()];
                m[i] = k as u32;
                (m, c.clone())
            }),
        )
    }

    /// The univariate polynomial in variable `i`, if no other variable occurs.
    pub fn to_upoly(&self, i: usize) -> Option<UPoly> {
        let mut v = vec![Rational::zero(); self.degree_in(i).unwrap_or(0) as usize + 1];
        for (m, c) in &self.terms {
            if m.iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return None;
            }
            v[m[i] as usize] = c.clone();
        }
        Some(UPoly::new(v))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[i]).max()
    }

    /// Degree in `i` with zero mapped to 0.
    pub fn deg(&self, i: usize) -> u32 {
        self.degree_in(i).unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Poly::zero_in(&self.vars);
        }
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    fn mul_monomial(&self, m: &[u32], c: &Rational) -> Self {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.iter().zip(m).map(|(a, b)| a + b).collect(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Poly::one_in(&self.vars);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        r
    }

    /// Coefficients with respect to variable `i`, indexed by degree.
    pub fn coefficients_in(&self, i: usize) -> Vec<Poly> {
        let n = self.degree_in(i).map(|d| d as usize + 1).unwrap_or(0);
        let mut out = vec![Poly::zero_in(&self.vars); n];
        for (m, c) in &self.terms {
            let mut k = m.clone();
            k[i] = 0;
            out[m[i] as usize].terms.insert(k, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(vars: &Arc<Vec<String>>, i: usize, cs: &[Poly]) -> Self {
        let mut p = Poly::zero_in(vars);
        for (k, c) in cs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut m = m.clone();
                m[i] += k as u32;
                p.add_term(m, v.clone());
            }
        }
        p
    }

    fn lead_coeff_in(&self, i: usize) -> Poly {
        let d = self.deg(i);
        let mut p = Poly::zero_in(&self.vars);
        for (m, c) in &self.terms {
            if m[i] == d {
                let mut k = m.clone();
                k[i] = 0;
                p.terms.insert(k, c.clone());
            }
        }
        p
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.eval_in(&super::modp::QField, point).unwrap()
    }

    /// Evaluation in a residue ring; `None` when a coefficient does not map.
    pub fn eval_in<R: EvalRing>(&self, ring: &R, point: &[R::Elem]) -> Option<R::Elem> {
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut t = ring.from_rational(c)?;
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t = ring.mul(&t, &ring.pow(x, e));
                }
            }
            acc = ring.add(&acc, &t);
        }
        Some(acc)
    }

    /// Partial evaluation `x_i = value`; the variable list is unchanged.
    pub fn eval_var(&self, i: usize, value: &Rational) -> Self {
        let mut p = Poly::zero_in(&self.vars);
        let mut powers: Vec<Rational> = vec![Rational::one()];
        for (m, c) in &self.terms {
            while powers.len() <= m[i] as usize {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut k = m.clone();
            k[i] = 0;
            p.add_term(k, c * &powers[m[i] as usize]);
        }
        p
    }

    /// Simultaneous substitution `x_j ↦ images[j]`; the result lives in the
    /// variable list of the images.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars());
        let target = images[0].vars.clone();
        // Horner in the first variable, recursing on coefficients.
        fn rec(p: &Poly, images: &[Poly], i: usize, target: &Arc<Vec<String>>) -> Poly {
            if p.is_zero() {
                return Poly::zero_in(target);
            }
            if i == images.len() {
                return Poly::constant(target, p.constant_value().unwrap());
            }
            let cs = p.coefficients_in(i);
            let mut acc = Poly::zero_in(target);
            for c in cs.iter().rev() {
                acc = &(&acc * &images[i]) + &rec(c, images, i + 1, target);
            }
            acc
        }
        rec(self, images, 0, &target)
    }

    pub fn substitute(&self, i: usize, image: &Poly) -> Poly {
        let images: Vec<Poly> =
            (0..self.nvars()).map(|j| if j == i { image.clone() } else { Poly::var(&self.vars, j) }).collect();
        self.compose(&images)
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Poly::zero_in(&self.vars);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut k = m.clone();
                k[i] -= 1;
                p.add_term(k, c * Rational::from_integer(m[i].into()));
            }
        }
        p
    }

    /// Exact quotient by lex leading terms.
    pub fn divexact(&self, d: &Poly) -> Result<Poly, PolyError> {
        let (dm, dc) = match d.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(PolyError::InexactDivision),
        };
        if let Some(c) = d.constant_value() {
            return Ok(self.scale(&c.recip()));
        }
        let mut r = self.clone();
        let mut q = Poly::zero_in(&self.vars);
        while let Some((rm, rc)) = r.leading_term() {
            if rm.iter().zip(&dm).any(|(a, b)| a < b) {
                return Err(PolyError::InexactDivision);
            }
            let qm: Monomial = rm.iter().zip(&dm).map(|(a, b)| a - b).collect();
            let qc = rc / &dc;
            r = &r - &d.mul_monomial(&qm, &qc);
            q.add_term(qm, qc);
        }
        Ok(q)
    }

    /// Integer coefficients, content one, positive lex-leading coefficient.
    pub fn primitive_integer(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let den = common_denominator(self.terms.values());
        let g = self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(&(c * &den).to_integer()));
        let mut s = Rational::new(den, g);
        if self.leading_coeff().is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Scaled so the lex-leading coefficient is one.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    pub fn integer_coeffs(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().map(|(m, c)| {
            debug_assert!(c.is_integer());
            (m, c.numer())
        })
    }

    fn main_var(&self) -> Option<usize> {
        (0..self.nvars()).find(|&i| self.deg(i) > 0)
    }

    /// Content with respect to variable `i`: gcd of the coefficient polynomials.
    pub fn content_in(&self, i: usize) -> Poly {
        self.coefficients_in(i)
            .iter()
            .filter(|c| !c.is_zero())
            .fold(Poly::zero_in(&self.vars), |g, c| gcd_rec(&g, c))
    }

    pub fn primitive_part_in(&self, i: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_in(i);
        self.divexact(&c).expect("content divides")
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Poly) -> Poly {
        gcd_rec(self, o).monic()
    }

    /// Sparse pseudo-remainder of `self` by `b` in variable `i`.
    pub fn prem(&self, b: &Poly, i: usize) -> Poly {
        let db = b.deg(i);
        let lcb = b.lead_coeff_in(i);
        let mut r = self.clone();
        while !r.is_zero() && r.deg(i) >= db {
            let dr = r.deg(i);
            let lcr = r.lead_coeff_in(i);
            let shift = Poly::var_pow(&self.vars, i, dr - db);
            r = &(&lcb * &r) - &(&(&lcr * &shift) * b);
            r = r.primitive_integer();
        }
        r
    }

    /// Resultant in variable `i` via the Sylvester matrix and Bareiss
    /// fraction-free elimination. The variable list is unchanged; variable `i`
    /// no longer occurs in the result.
    pub fn resultant(&self, o: &Poly, i: usize) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero_in(&self.vars);
        }
        let (m, n) = (self.deg(i) as usize, o.deg(i) as usize);
        if m == 0 {
            return self.pow(n as u32);
        }
        if n == 0 {
            return o.pow(m as u32);
        }
        let a = self.coefficients_in(i);
        let b = o.coefficients_in(i);
        let size = m + n;
        let zero = Poly::zero_in(&self.vars);
        let mut mat = vec![vec![zero.clone(); size]; size];
        // rows hold descending coefficients, shifted
        for r in 0..n {
            for (k, c) in a.iter().rev().enumerate() {
                mat[r][r + k] = c.clone();
            }
        }
        for r in 0..m {
            for (k, c) in b.iter().rev().enumerate() {
                mat[n + r][r + k] = c.clone();
            }
        }
        bareiss_det(mat, &self.vars)
    }

    /// `self(x + a)`: every variable shifted by the matching coordinate.
    pub fn translate(&self, a: &[Rational]) -> Poly {
        let images: Vec<Poly> = (0..self.nvars())
            .map(|j| &Poly::var(&self.vars, j) + &Poly::constant(&self.vars, a[j].clone()))
            .collect();
        self.compose(&images)
    }

    /// Order of vanishing at `a`: lowest total degree after translating `a`
    /// to the origin (0 off the zero set).
    pub fn order_at(&self, a: &[Rational]) -> u32 {
        if self.is_zero() {
            return u32::MAX;
        }
        if !self.eval(a).is_zero() {
            return 0;
        }
        self.translate(a).terms.keys().map(|m| m.iter().sum()).min().unwrap()
    }

    /// `D` with `self = c · D^m` for a constant `c`, `D` monic in lex order.
    pub fn perfect_root(&self, m: u32) -> Option<Poly> {
        if m == 1 {
            return Some(self.monic());
        }
        let p = self.monic();
        let (lm, _) = p.leading_term()?;
        if lm.iter().any(|e| e % m != 0) {
            return None;
        }
        let bounds: Vec<u32> = (0..p.nvars()).map(|i| p.deg(i) / m).collect();
        let dm: Monomial = lm.iter().map(|e| e / m).collect();
        let mut d = Poly::from_terms(&p.vars, [(dm.clone(), Rational::one())]);
        // m · lt(D)^{m-1}, the leading term of the derivative of D^m
        let lead_pow: Monomial = dm.iter().map(|e| e * (m - 1)).collect();
        let mfac = Rational::from_integer(m.into());
        let mut guard = 0usize;
        loop {
            let r = &p - &d.pow(m);
            let Some((rm, rc)) = r.leading_term() else {
                return Some(d);
            };
            if rm.iter().zip(&lead_pow).any(|(a, b)| a < b) {
                return None;
            }
            let tm: Monomial = rm.iter().zip(&lead_pow).map(|(a, b)| a - b).collect();
            if tm.iter().zip(&bounds).any(|(a, b)| a > b) || tm >= dm {
                return None;
            }
            d.add_term(tm, rc / &mfac);
            guard += 1;
            if guard > 1 + bounds.iter().map(|&b| b as usize + 1).product::<usize>() {
                return None;
            }
        }
    }

    /// Same polynomial over a different variable list of the same length.
    pub fn rename(&self, vars: &Arc<Vec<String>>) -> Poly {
        assert_eq!(vars.len(), self.nvars());
        Poly { vars: vars.clone(), terms: self.terms.clone() }
    }

    /// Re-expresses the polynomial over `vars`, sending variable `j` to
    /// position `map[j]`.
    pub fn embed(&self, vars: &Arc<Vec<String>>, map: &[usize]) -> Poly {
        let mut p = Poly::zero_in(vars);
        for (m, c) in &self.terms {
            let mut k = vec![0; vars.len()];
            for (j, &e) in m.iter().enumerate() {
                k[map[j]] += e;
            }
            p.add_term(k, c.clone());
        }
        p
    }

    /// Precompiled coefficients in a residue ring, for repeated bihomogeneous
    /// evaluation at projective points.
    pub fn compile<R: EvalRing>(&self, ring: &R) -> Option<CompiledPoly<R::Elem>> {
        let terms: Option<Vec<(Monomial, R::Elem)>> =
            self.terms.iter().map(|(m, c)| ring.from_rational(c).map(|e| (m.clone(), e))).collect();
        Some(CompiledPoly { terms: terms?, degs: (0..self.nvars()).map(|i| self.deg(i)).collect() })
    }
}

/// A polynomial with coefficients mapped into a ring.
#[derive(Clone, Debug)]
pub struct CompiledPoly<E> {
    terms: Vec<(Monomial, E)>,
    degs: Vec<u32>,
}

impl<E: Clone> CompiledPoly<E> {
    /// Value of the bihomogenization at `[X_i : Y_i]`: each variable is
    /// homogenized separately up to its own degree.
    pub fn eval_projective<R: EvalRing<Elem = E>>(&self, ring: &R, pts: &[(E, E)]) -> E {
        let pw: Vec<(Vec<E>, Vec<E>)> = pts
            .iter()
            .zip(&self.degs)
            .map(|((x, y), &d)| {
                let mut xs = vec![ring.one()];
                let mut ys = vec![ring.one()];
                for k in 0..d as usize {
                    xs.push(ring.mul(&xs[k], x));
                    ys.push(ring.mul(&ys[k], y));
                }
                (xs, ys)
            })
            .collect();
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                let d = self.degs[i];
                if d == 0 {
                    continue;
                }
                t = ring.mul(&t, &pw[i].0[e as usize]);
                t = ring.mul(&t, &pw[i].1[(d - e) as usize]);
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive_integer();
    }
    if b.is_zero() {
        return a.primitive_integer();
    }
    let v = match (a.main_var(), b.main_var()) {
        (None, _) | (_, None) => return Poly::one_in(&a.vars),
        (Some(x), Some(y)) => x.min(y),
    };
    if a.deg(v) == 0 {
        return gcd_rec(a, &b.content_in(v));
    }
    if b.deg(v) == 0 {
        return gcd_rec(&a.content_in(v), b);
    }
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let c = gcd_rec(&ca, &cb);
    let mut r0 = a.divexact(&ca).unwrap().primitive_integer();
    let mut r1 = b.divexact(&cb).unwrap().primitive_integer();
    if r0.deg(v) < r1.deg(v) {
        std::mem::swap(&mut r0, &mut r1);
    }
    loop {
        let r = r0.prem(&r1, v);
        if r.is_zero() {
            break;
        }
        if r.deg(v) == 0 {
            r1 = Poly::one_in(&a.vars);
            break;
        }
        r0 = r1;
        r1 = r.primitive_part_in(v).primitive_integer();
    }
    let g = if r1.is_constant() { Poly::one_in(&a.vars) } else { r1.primitive_part_in(v) };
    (&c * &g).primitive_integer()
}

fn bareiss_det(mut m: Vec<Vec<Poly>>, vars: &Arc<Vec<String>>) -> Poly {
    let n = m.len();
    let mut sign = false;
    let mut prev = Poly::one_in(vars);
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Poly::zero_in(vars);
            };
            m.swap(k, s);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.divexact(&prev).expect("Bareiss step is exact");
            }
            m[i][k] = Poly::zero_in(vars);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        assert_eq!(self.vars, o.vars, "variable lists differ");
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        assert_eq!(self.vars, o.vars, "variable lists differ");
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), -c);
        }
        p
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        assert_eq!(self.vars, o.vars, "variable lists differ");
        let mut p = Poly::zero_in(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                p.add_term(ma.iter().zip(mb).map(|(a, b)| a + b).collect(), ca * cb);
            }
        }
        p
    }
}

/// Joins `(coefficient, monomial)` pairs as `c*m + c*m - …`.
pub(crate) fn format_terms(terms: impl Iterator<Item = (Rational, String)>) -> String {
    let mut s = String::new();
    for (c, mono) in terms {
        let neg = c.is_negative();
        let a = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            s.push_str(&a.to_string());
        } else if a.is_one() {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{a}*{mono}"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut ts: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        ts.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        let s = format_terms(ts.into_iter().map(|(m, c)| {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], e) })
                .collect();
            (c.clone(), mono.join("*"))
        }));
        f.write_str(&s)
    }
}

//! Whether a map sends an open disk `D(a, p^-ρ)` to itself as an analytic
//! bijection with a unit linear term.

use super::AnalyticError;
use crate::arith::upoly::UPoly;
use crate::arith::{valuation, Rational, Valuation};
use crate::dynsys::RationalMap;
use num_traits::Zero;
use serde::Serialize;

/// The open disk of points `z` with `v_p(z - center) > radius_exp`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disk {
    #[serde(serialize_with = "crate::arith::display_str")]
    pub center: Rational,
    pub radius_exp: i64,
}

impl Disk {
    /// The residue class of an integral center.
    pub fn residue(center: Rational) -> Self {
        Disk { center, radius_exp: 0 }
    }
}

fn val(q: &Rational, p: u64) -> Option<i64> {
    match valuation(q, p) {
        Valuation::Finite(v) => Some(v),
        Valuation::Infinite => None,
    }
}

/// `min_i v(a_i) + iρ`, or `None` for the zero polynomial.
fn gauss(f: &UPoly, p: u64, rho: i64) -> Option<i64> {
    f.coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| val(c, p).map(|v| v + i as i64 * rho))
        .min()
}

/// Expands `φ(a + z) - a = Σ c_i z^i` and checks `v(c_0) > ρ`, `v(c_1) = 0`
/// and `v(c_i) ≥ (1 - i)ρ`.
///
/// Coefficients up to `order` are computed exactly. Past that a rational map
/// is covered by the Gauss-norm bound `v(c_i) + iρ ≥ min_j(v(f_j) + jρ) -
/// v(g_0)`; when that bound is too weak the answer is
/// `InsufficientPrecision` rather than a guess.
pub fn is_quasiperiodicity_disk(
    phi: &RationalMap,
    disk: &Disk,
    p: u64,
    order: usize,
) -> Result<bool, AnalyticError> {
    let rho = disk.radius_exp;
    let shift = |f: &UPoly| f.taylor_shift(&disk.center);
    let f = shift(&phi.numerator());
    let g = shift(&phi.denominator());
    let g0 = g.coeff(0);
    if g0.is_zero() {
        return Err(AnalyticError::PoleInDisk);
    }
    let vg0 = val(&g0, p).unwrap();
    if g.coeffs().iter().enumerate().skip(1).any(|(i, c)| val(c, p).is_some_and(|v| v + i as i64 * rho < vg0)) {
        return Err(AnalyticError::PoleInDisk);
    }
    // power-series quotient f / g to the needed order
    let polynomial = g.degree() == Some(0);
    let n = if polynomial { f.degree().unwrap_or(0).max(1) } else { order.max(1) };
    let mut c = vec![Rational::zero(); n + 1];
    for i in 0..=n {
        let mut s = f.coeff(i);
        for j in 1..=i.min(g.degree().unwrap_or(0)) {
            s -= g.coeff(j) * &c[i - j];
        }
        c[i] = s / &g0;
    }
    c[0] -= &disk.center;
    let ok0 = val(&c[0], p).is_none_or(|v| v > rho);
    let ok1 = val(&c[1], p) == Some(0);
    let rest = c.iter().enumerate().skip(2).all(|(i, ci)| val(ci, p).is_none_or(|v| v >= (1 - i as i64) * rho));
    if !(ok0 && ok1 && rest) {
        return Ok(false);
    }
    if polynomial {
        return Ok(true);
    }
    // the shift by -a only touches c_0, which was checked exactly
    let tail = gauss(&f, p, rho).map_or(i64::MAX, |t| t - vg0);
    if tail >= rho {
        Ok(true)
    } else {
        Err(AnalyticError::InsufficientPrecision)
    }
}

//! Truncated `p`-adic power series and Strassmann zero counting.

use super::AnalyticError;
use crate::arith::padic::PadicNumber;
use crate::arith::Valuation;
use serde::Serialize;

/// Lower bound on `v_p(a_j)` for every `j` beyond the stored coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TailBound {
    Unknown,
    AtLeast(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPadicSeries {
    prime: u64,
    coeffs: Vec<PadicNumber>,
    tail: TailBound,
}

impl TruncatedPadicSeries {
    pub fn new(prime: u64, coeffs: Vec<PadicNumber>, tail: TailBound) -> Self {
        assert!(coeffs.iter().all(|c| c.prime() == prime));
        TruncatedPadicSeries { prime, coeffs, tail }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn coeffs(&self) -> &[PadicNumber] {
        &self.coeffs
    }

    /// Index of the last stored coefficient.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn tail(&self) -> TailBound {
        self.tail
    }

    /// Smallest valuation anywhere in the series, stored or tail.
    fn min_valuation(&self) -> Option<i64> {
        let TailBound::AtLeast(t) = self.tail else {
            return None;
        };
        Some(
            self.coeffs
                .iter()
                .map(|c| c.valuation().finite().unwrap_or(c.precision()))
                .fold(t, i64::min),
        )
    }

    /// Product. Coefficients that the unknown tails can reach have their
    /// precision lowered to the tail contribution.
    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prime;
        let (la, lb) = (self.coeffs.len(), o.coeffs.len());
        let bounds = match (self.tail, o.tail, self.min_valuation(), o.min_valuation()) {
            (TailBound::AtLeast(ta), TailBound::AtLeast(tb), Some(va), Some(vb)) => Some((ta + vb, tb + va)),
            _ => None,
        };
        let prec = self.coeffs.iter().chain(&o.coeffs).map(|c| c.precision()).max().unwrap_or(1);
        let mut out = vec![PadicNumber::zero(p, prec * 2); la + lb - 1];
        for i in 0..la {
            for j in 0..lb {
                out[i + j] = out[i + j].add(&self.coeffs[i].mul(&o.coeffs[j]));
            }
        }
        for (i, c) in out.iter_mut().enumerate() {
            let mut cap = i64::MAX;
            if let Some((a_tail, b_tail)) = bounds {
                if i >= la {
                    cap = cap.min(a_tail);
                }
                if i >= lb {
                    cap = cap.min(b_tail);
                }
            } else if i >= la.min(lb) {
                cap = 0;
            }
            *c = c.with_precision(cap);
        }
        let tail = match bounds {
            Some((a, b)) => TailBound::AtLeast(a.min(b)),
            None => TailBound::Unknown,
        };
        TruncatedPadicSeries { prime: p, coeffs: out, tail }
    }

    /// Value at an integral point, summing the stored terms only.
    pub fn eval_truncated(&self, t: &PadicNumber) -> PadicNumber {
        let p = self.prime;
        let prec = self.coeffs.iter().map(|c| c.precision()).min().unwrap_or(1);
        self.coeffs.iter().rev().fold(PadicNumber::zero(p, prec), |acc, c| acc.mul(t).add(c))
    }
}

/// The number of zeros in the closed unit disk of `C_p`: the largest index
/// at which `|a_j|` is maximal.
pub fn strassmann_count(s: &TruncatedPadicSeries) -> Result<usize, AnalyticError> {
    let mut vmin: Option<i64> = None;
    let mut last = 0;
    for (j, c) in s.coeffs.iter().enumerate() {
        if let Valuation::Finite(v) = c.valuation() {
            if vmin.is_none_or(|m| v <= m) {
                if vmin != Some(v) {
                    vmin = Some(v);
                }
                last = j;
            }
        }
    }
    let vmin = vmin.ok_or(AnalyticError::ZeroSeries)?;
    // a coefficient past `last` that is zero only to its precision might be
    // as large as the maximum
    for c in &s.coeffs[last + 1..] {
        if c.is_zero() && c.precision() <= vmin {
            return Err(AnalyticError::InsufficientPrecision);
        }
    }
    match s.tail {
        TailBound::AtLeast(t) if t > vmin => Ok(last),
        _ => Err(AnalyticError::InsufficientPrecision),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(p: u64, cs: &[i64], m: i64, tail: i64) -> TruncatedPadicSeries {
        TruncatedPadicSeries::new(
            p,
            cs.iter().map(|&c| PadicNumber::from_int(c, p, m)).collect(),
            TailBound::AtLeast(tail),
        )
    }

    #[test]
    fn examples() {
        // 1 + p t + p^2 t^2 + ...
        let s = series(5, &[1, 5, 25, 125], 10, 4);
        assert_eq!(strassmann_count(&s), Ok(0));
        let s = series(7, &[0, -1, 1], 10, 10);
        assert_eq!(strassmann_count(&s), Ok(2));
        // 3 + t^2 has two zeros in the unit disk of C_3 but none in Z_3
        let s = series(3, &[3, 0, 1], 10, 10);
        assert_eq!(strassmann_count(&s), Ok(2));
    }

    #[test]
    fn errors() {
        let s = series(3, &[0, 0, 0], 5, 7);
        assert_eq!(strassmann_count(&s), Err(AnalyticError::ZeroSeries));
        let s = series(3, &[9, 3], 10, 1);
        assert_eq!(strassmann_count(&s), Err(AnalyticError::InsufficientPrecision));
        let s = TruncatedPadicSeries::new(3, vec![PadicNumber::from_int(1, 3, 4)], TailBound::Unknown);
        assert_eq!(strassmann_count(&s), Err(AnalyticError::InsufficientPrecision));
        // the trailing zero is only known to precision 1, so it may be a unit
        let s = TruncatedPadicSeries::new(
            3,
            vec![PadicNumber::from_int(1, 3, 4), PadicNumber::zero(3, 0)],
            TailBound::AtLeast(3),
        );
        assert_eq!(strassmann_count(&s), Err(AnalyticError::InsufficientPrecision));
    }

    #[test]
    fn counts_add_under_products() {
        let a = series(5, &[5, 1], 20, 20);
        let b = series(5, &[1, 0, 5, 1], 20, 20);
        let ab = a.mul(&b);
        assert_eq!(
            strassmann_count(&ab).unwrap(),
            strassmann_count(&a).unwrap() + strassmann_count(&b).unwrap()
        );
    }
}

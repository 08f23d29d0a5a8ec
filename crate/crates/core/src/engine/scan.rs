//! Brute-force orbit scans: the oracle every description is checked against.
//!
//! Orbit heights double at each step, so exact evaluation stops being
//! affordable after a dozen iterates. Past that the scan works with residues
//! modulo several primes near `2^61`. A nonzero residue proves non-membership.
//! A hit seen only through residues is marked as such, unless the variety is
//! invariant and an exact hit precedes it, in which case it is proven.

use super::EngineError;
use crate::arith::modp::Fp;
use crate::arith::poly::{CompiledPoly, Poly};
use crate::arith::primes::prev_prime;
use crate::dynsys::{OrbitKind, P1Point, RationalMap};
use crate::reduction::{reduce_map, reduce_point, ReducedMap};
use num_traits::Zero;
use serde::Serialize;

/// Exact iterates are kept while every coordinate stays below this height.
pub const EXACT_HEIGHT_BITS: u64 = 1 << 13;
pub const SCAN_PRIMES: usize = 8;

/// Coordinatewise orbit of a point with its exact prefix.
#[derive(Clone, Debug)]
pub struct OrbitRecord {
    maps: Vec<RationalMap>,
    start: Vec<P1Point>,
    prefix: Vec<Vec<P1Point>>,
    kinds: Vec<OrbitKind>,
}

impl OrbitRecord {
    /// Caches exact iterates up to index `n_max` or the height budget.
    pub fn new(maps: &[RationalMap], start: &[P1Point], n_max: usize) -> Result<Self, EngineError> {
        if maps.len() != start.len() || maps.is_empty() {
            return Err(EngineError::DimensionMismatch { expected: maps.len(), got: start.len() });
        }
        let kinds: Vec<OrbitKind> = maps.iter().zip(start).map(|(f, x)| f.orbit_kind(x)).collect();
        let prefix = maps
            .iter()
            .zip(start)
            .zip(&kinds)
            .map(|((f, x), kind)| {
                let len = match kind {
                    OrbitKind::Preperiodic { tail, period } => tail + period,
                    OrbitKind::Wandering(_) => n_max + 1,
                };
                let mut out = vec![x.clone()];
                while out.len() < len {
                    let last = out.last().unwrap();
                    if last.height_bits() > EXACT_HEIGHT_BITS {
                        break;
                    }
                    out.push(f.apply(last));
                }
                out
            })
            .collect();
        Ok(OrbitRecord { maps: maps.to_vec(), start: start.to_vec(), prefix, kinds })
    }

    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[RationalMap] {
        &self.maps
    }

    pub fn start(&self) -> &[P1Point] {
        &self.start
    }

    pub fn kind(&self, i: usize) -> &OrbitKind {
        &self.kinds[i]
    }

    pub fn is_preperiodic(&self, i: usize) -> bool {
        self.kinds[i].is_preperiodic()
    }

    /// `φ_iⁿ(α_i)` when it is cached or recoverable from the cycle.
    pub fn exact_coordinate(&self, i: usize, n: usize) -> Option<P1Point> {
        let idx = match self.kinds[i] {
            OrbitKind::Preperiodic { tail, period } if n >= tail => tail + (n - tail) % period,
            _ => n,
        };
        self.prefix[i].get(idx).cloned()
    }

    pub fn exact_point(&self, n: usize) -> Option<Vec<P1Point>> {
        (0..self.dim()).map(|i| self.exact_coordinate(i, n)).collect()
    }

    /// Number of leading indices at which every coordinate is cached.
    pub fn exact_len(&self) -> usize {
        (0..self.dim())
            .map(|i| if self.is_preperiodic(i) { usize::MAX } else { self.prefix[i].len() })
            .min()
            .unwrap()
    }
}

/// Whether an affine point lies on every generator.
pub fn exact_membership(gens: &[Poly], pt: &[P1Point]) -> bool {
    let Some(xs) = pt.iter().map(|x| x.finite().cloned()).collect::<Option<Vec<_>>>() else {
        return false;
    };
    gens.iter().all(|f| f.eval(&xs).is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub n_max: usize,
    pub hits: Vec<usize>,
    /// Hits supported only by vanishing modulo every scan prime.
    pub modular_hits: Vec<usize>,
    /// Zero set of each generator, indices in `[0, n_max]`.
    pub generator_zeros: Vec<Vec<usize>>,
    /// The variety is a hypersurface mapped into itself.
    pub invariant: bool,
}

impl ScanResult {
    pub fn is_hit(&self, n: usize) -> bool {
        self.hits.binary_search(&n).is_ok()
    }
}

struct Modular {
    fp: Fp,
    maps: Vec<ReducedMap>,
    gens: Vec<CompiledPoly<u64>>,
}

fn scan_moduli(maps: &[RationalMap], gens: &[Poly]) -> Vec<Modular> {
    let mut out = Vec::new();
    let mut q = 1u64 << 61;
    while out.len() < SCAN_PRIMES {
        q = prev_prime(q).expect("primes below 2^61");
        let fp = Fp { p: q };
        let Ok(reduced) = maps.iter().map(|f| reduce_map(f, q)).collect::<Result<Vec<_>, _>>() else {
            continue;
        };
        let Some(compiled) = gens.iter().map(|f| f.compile(&fp)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        out.push(Modular { fp, maps: reduced, gens: compiled });
    }
    out
}

/// A hypersurface `F = 0` with `F | F∘Φ`, for polynomial `Φ`.
pub fn is_invariant_hypersurface(maps: &[RationalMap], gens: &[Poly]) -> bool {
    let [f] = gens else {
        return false;
    };
    if f.is_constant() {
        return false;
    }
    let Some(polys) = maps.iter().map(|m| m.as_polynomial()).collect::<Option<Vec<_>>>() else {
        return false;
    };
    let images: Vec<Poly> = polys.iter().enumerate().map(|(i, g)| Poly::from_upoly(f.vars(), i, g)).collect();
    f.compose(&images).divexact(f).is_ok()
}

/// Membership of `Φⁿ(α)` in `V = {gens = 0}` for every `n ≤ n_max`.
pub fn scan_orbit(rec: &OrbitRecord, v: &[Poly], n_max: usize) -> ScanResult {
    let gens: Vec<Poly> = v.iter().filter(|f| !f.is_zero()).cloned().collect();
    let invariant = is_invariant_hypersurface(rec.maps(), &gens);
    let moduli = scan_moduli(rec.maps(), &gens);
    let mut residues: Vec<Vec<u64>> =
        moduli.iter().map(|m| rec.start().iter().map(|x| reduce_point(x, m.fp.p)).collect()).collect();
    let mut hits = Vec::new();
    let mut modular_hits = Vec::new();
    let mut zeros = vec![Vec::new(); gens.len()];
    let mut proven_from: Option<usize> = None;
    for n in 0..=n_max {
        if proven_from.is_some() {
            hits.push(n);
            zeros.iter_mut().for_each(|z| z.push(n));
            continue;
        }
        if let Some(pt) = rec.exact_point(n) {
            let finite: Option<Vec<_>> = pt.iter().map(|x| x.finite().cloned()).collect();
            if let Some(xs) = finite {
                let vanish: Vec<bool> = gens.iter().map(|f| f.eval(&xs).is_zero()).collect();
                for (j, &z) in vanish.iter().enumerate() {
                    if z {
                        zeros[j].push(n);
                    }
                }
                if vanish.iter().all(|&z| z) {
                    hits.push(n);
                    if invariant {
                        proven_from = Some(n);
                    }
                }
            }
        } else {
            // per generator: Some(true) zero everywhere seen, Some(false) refuted
            let mut vanish: Vec<Option<bool>> = vec![None; gens.len()];
            let mut finite_somewhere = false;
            for (m, res) in moduli.iter().zip(&residues) {
                if res.iter().any(|&r| r == m.fp.p) {
                    continue;
                }
                finite_somewhere = true;
                let pts: Vec<(u64, u64)> = res.iter().map(|&r| (r, 1)).collect();
                for (j, g) in m.gens.iter().enumerate() {
                    let z = g.eval_projective(&m.fp, &pts) == 0;
                    vanish[j] = Some(vanish[j].unwrap_or(true) && z);
                }
            }
            if finite_somewhere {
                for (j, z) in vanish.iter().enumerate() {
                    if *z == Some(true) {
                        zeros[j].push(n);
                    }
                }
                if vanish.iter().all(|z| *z == Some(true)) {
                    hits.push(n);
                    modular_hits.push(n);
                }
            }
        }
        for (m, res) in moduli.iter().zip(residues.iter_mut()) {
            for (r, f) in res.iter_mut().zip(&m.maps) {
                *r = f.apply(*r);
            }
        }
    }
    ScanResult { n_max, hits, modular_hits, generator_zeros: zeros, invariant }
}

/// Sorted indices `n ≤ n_max` with `Φⁿ(α) ∈ V`.
pub fn brute_force_scan(
    maps: &[RationalMap],
    alpha: &[P1Point],
    v: &[Poly],
    n_max: usize,
) -> Result<Vec<usize>, EngineError> {
    let rec = OrbitRecord::new(maps, alpha, n_max)?;
    Ok(scan_orbit(&rec, v, n_max).hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::upoly::UPoly;
    use crate::expr::{coordinate_vars, parse_poly};

    fn quad(c: i64) -> RationalMap {
        RationalMap::from_polynomial(&UPoly::from_ints(&[c, 0, 1])).unwrap()
    }

    #[test]
    fn point_on_a_line() {
        let v = coordinate_vars(1);
        let hits = brute_force_scan(&[quad(1)], &[P1Point::from_int(0)], &[parse_poly("x - 5", &v).unwrap()], 40).unwrap();
        assert_eq!(hits, vec![3]);
    }

    #[test]
    fn squares_never_meet() {
        let v = coordinate_vars(2);
        let f = quad(0);
        let hits = brute_force_scan(
            &[f.clone(), f],
            &[P1Point::from_int(2), P1Point::from_int(4)],
            &[parse_poly("x - y", &v).unwrap()],
            200,
        )
        .unwrap();
        assert!(hits.is_empty());
    }

    #[test]
    fn invariant_graph_is_proven_past_the_exact_prefix() {
        let v = coordinate_vars(2);
        let f = quad(-1);
        let a = crate::arith::rat(1, 2);
        let alpha = [P1Point::Finite(a.clone()), P1Point::Finite(&a * &a - crate::arith::int(1))];
        let rec = OrbitRecord::new(&[f.clone(), f], &alpha, 300).unwrap();
        assert!(rec.exact_len() < 40);
        let s = scan_orbit(&rec, &[parse_poly("y - x^2 + 1", &v).unwrap()], 300);
        assert!(s.invariant);
        assert_eq!(s.hits, (0..=300).collect::<Vec<_>>());
        assert!(s.modular_hits.is_empty());
    }

    #[test]
    fn preperiodic_coordinates_are_exact_forever() {
        let rec = OrbitRecord::new(&[quad(-1)], &[P1Point::from_int(0)], 10).unwrap();
        assert_eq!(rec.exact_coordinate(0, 1001), Some(P1Point::from_int(-1)));
        assert_eq!(rec.exact_len(), usize::MAX);
    }
}

//! Exact and p-adic machinery for deciding when orbits of maps on the
//! projective line meet subvarieties.

pub mod analytic;
pub mod arith;
pub mod classify;
pub mod dynsys;
pub mod engine;
pub mod expr;
pub mod intersection;
pub mod prime_search;
pub mod reduction;

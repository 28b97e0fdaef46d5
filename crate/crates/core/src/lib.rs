//! Exact arithmetic for truncated homogeneous (Petrie) symmetric functions.
//!
//! The crate provides integer partitions and their statistics ([`partition`]),
//! a sparse exact-rational polynomial engine used as a brute-force oracle
//! ([`polyring`]), the five classical bases of the ring of symmetric functions
//! with all transition matrices ([`bases`]), the truncated homogeneous
//! functions `h_λ^[d]` together with their matrix-counting interpretations and
//! Petrie coefficients ([`petrie`]), exact cyclotomic-field evaluation at
//! roots of unity ([`cyclotomic`]), and the `ω` / `ω^[d]` endomorphisms
//! ([`omega`]).
//!
//! All coefficients are exact rationals; there is no floating point anywhere.

pub mod bases;
pub mod cyclotomic;
pub mod omega;
pub mod partition;
pub mod petrie;
pub mod polyring;

mod error;

pub use error::Error;
pub use partition::{Partition, Truncation};

/// Exact rational scalar used for every coefficient in the crate.
pub type Rat = num::BigRational;

/// Exact integer used for counts and determinants.
pub type Int = num::BigInt;

/// Renders a rational as `p/q`, or just `p` when the denominator is one.
pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

/// Parses a rational from `p` or `p/q` form.
pub fn rat_from_string(s: &str) -> Result<Rat, Error> {
    s.parse::<Rat>()
        .map_err(|_| Error::Parse(format!("invalid rational: {s:?}")))
}

#[cfg(test)]
pub(crate) fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

//! Exact arithmetic for integer-valued polynomials on unions of arithmetic
//! progressions S of Z: fixed divisors, membership, irreducibility and
//! complete factorization enumeration in Int(S, Z), constructions realizing
//! prescribed factorization lengths with replayable certificates, and the
//! block-monoid combinatorics the length bounds come from.

pub mod arith;
pub mod blockmonoid;
pub mod constructions;
pub mod crt;
pub mod error;
pub mod intval;
pub mod poly;
pub mod qx;
pub mod subsets;

pub use error::{Error, Result};
pub use poly::IntPolynomial;
pub use subsets::SubsetSpec;

//! Permutation polynomials of the form `X + aX^q + gamma Tr(h(X))` over
//! GF(q^3), q = 2^m: field arithmetic, the trace-zero basis, a brute-force
//! bijection oracle, the family registry and the campaigns that check each
//! registered claim against the oracle.

pub mod basis;
pub mod campaign;
pub mod error;
pub mod families;
pub mod fq3;
pub mod gf2m;
pub mod permcheck;
pub mod rng;
pub mod specparse;

pub use error::{Error, ParseError, Result};

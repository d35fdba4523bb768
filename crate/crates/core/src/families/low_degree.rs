//! Permutation criteria for the normalized cubic and quintic shapes that the
//! slice maps reduce to, specialised to characteristic 2.

use crate::error::{Error, Result};
use crate::gf2m::{FieldElement, FieldParams};

/// `x^3 + beta x` permutes GF(2^m) iff `beta = 0` and `q != 1 (mod 3)`, i.e.
/// m odd. For `beta != 0` the map has the two roots 0 and `sqrt(beta)`.
pub fn normalized_cubic_permutes(beta: FieldElement, m: u32) -> bool {
    beta.is_zero() && m % 2 == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuinticShape {
    /// `x^5 + (1 + gamma^{-1}) x`.
    Monomial,
    /// `x^5 + x^3 + gamma^{-1} x`; at `gamma = 1` this is the Dickson
    /// polynomial `D_5(x, 1)`.
    Dickson,
}

/// Criterion for the quintic shapes as a function of gamma:
/// `Monomial` permutes iff `gamma = 1` and `4 does not divide m`;
/// `Dickson` permutes iff `gamma = 1` and m is odd.
pub fn normalized_quintic_permutes(shape: QuinticShape, gamma: FieldElement, m: u32) -> Result<bool> {
    if gamma.is_zero() {
        return Err(Error::Param("gamma must be nonzero".into()));
    }
    let one = gamma == FieldElement::ONE;
    Ok(match shape {
        QuinticShape::Monomial => one && !m.is_multiple_of(4),
        QuinticShape::Dickson => one && m % 2 == 1,
    })
}

/// The quintic itself, for brute-force comparison.
pub fn quintic_eval(
    f: &FieldParams,
    shape: QuinticShape,
    gamma: FieldElement,
    x: FieldElement,
) -> Result<FieldElement> {
    let gi = f.inv(gamma)?;
    let x5 = f.pow(x, 5);
    Ok(match shape {
        QuinticShape::Monomial => x5 + f.mul(FieldElement::ONE + gi, x),
        QuinticShape::Dickson => x5 + f.pow(x, 3) + f.mul(gi, x),
    })
}

//! Additions to h that leave the permutation behaviour of
//! `X + aX^q + gamma Tr(h(X))` unchanged.
//!
//! Both added binomials have the form `X^e + X^{e'}` where `X^e` and `X^{e'}`
//! agree on the x-coordinate part. With base-field coefficients the
//! x-dependence cancels inside the trace and each slice map only shifts by a
//! constant; extension-field coefficients are accepted but carry no such
//! guarantee.

use super::exponent::ExponentExpr;
use super::spec::{Coef, FamilySpec};
use crate::error::{Error, Result};

/// Largest shift accepted for i, j, s, t.
pub const MAX_SHIFT: u32 = 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivTransform {
    /// Adds `X^{2^i + 2^j q} + X^{2^i q + 2^j}`.
    QPair { i: u32, j: u32 },
    /// Adds `X^{2^i + 2^j} + X^{2^i q + 2^j}`.
    PlainPair { i: u32, j: u32 },
    /// Adds `sum c_ij (X^{2^i+2^j} + X^{2^i q+2^j}) + sum d_st (X^{2^s+2^t q} + X^{2^s q+2^t})`.
    Combined { plain: Vec<(u32, u32, Coef)>, qpair: Vec<(u32, u32, Coef)> },
}

fn check_shift(k: u32) -> Result<()> {
    if k > MAX_SHIFT {
        return Err(Error::Param(format!("shift {k} exceeds {MAX_SHIFT}")));
    }
    Ok(())
}

fn plain_pair(i: u32, j: u32) -> Result<[ExponentExpr; 2]> {
    check_shift(i)?;
    check_shift(j)?;
    Ok([ExponentExpr::constant((1i64 << i) + (1i64 << j)), ExponentExpr::binary_pair(j, i)])
}

fn q_pair(i: u32, j: u32) -> Result<[ExponentExpr; 2]> {
    check_shift(i)?;
    check_shift(j)?;
    Ok([ExponentExpr::binary_pair(i, j), ExponentExpr::binary_pair(j, i)])
}

/// Returns the augmented family. The X^q coefficient and the trace scale must
/// lie in the base field; like terms are merged, so an addition that cancels
/// itself leaves the family unchanged.
pub fn apply_equiv_transform(spec: &FamilySpec, transform: &EquivTransform) -> Result<FamilySpec> {
    if matches!(spec.frob, Some(Coef::Ext(_))) {
        return Err(Error::Param("the X^q coefficient must lie in the base field".into()));
    }
    if matches!(spec.scale, Coef::Ext(_)) {
        return Err(Error::Param("the trace scale must lie in the base field".into()));
    }
    let mut out = spec.clone();
    let mut add = |pair: [ExponentExpr; 2], coef: Coef| {
        for e in pair {
            out.add_term(coef, e);
        }
    };
    match transform {
        EquivTransform::QPair { i, j } => add(q_pair(*i, *j)?, Coef::ONE),
        EquivTransform::PlainPair { i, j } => add(plain_pair(*i, *j)?, Coef::ONE),
        EquivTransform::Combined { plain, qpair } => {
            for &(i, j, c) in plain {
                add(plain_pair(i, j)?, c);
            }
            for &(s, t, c) in qpair {
                add(q_pair(s, t)?, c);
            }
        }
    }
    Ok(out)
}

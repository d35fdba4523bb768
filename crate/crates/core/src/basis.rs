//! Normal elements and the trace-zero basis `{1, alpha, alpha^q}` of GF(q^3)
//! over GF(q).
//!
//! Starting from a normal element `theta` with `c = Tr(theta) != 0`, the
//! element `alpha = theta - c/3` has trace zero and `{1, alpha, alpha^q}` is a
//! basis. In characteristic 2, `3 = 1`, so `alpha = theta + c`.
//!
//! In these coordinates `Tr(x + y alpha + z alpha^q) = x`, which is what makes
//! the slice criterion work.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fq3::{CubicExt, ExtElement};
use crate::gf2m::{FieldElement, FieldParams};

/// Row-major 3x3 matrix over GF(q).
pub type Mat3 = [[FieldElement; 3]; 3];

pub const IDENTITY: Mat3 = [
    [FieldElement::ONE, FieldElement::ZERO, FieldElement::ZERO],
    [FieldElement::ZERO, FieldElement::ONE, FieldElement::ZERO],
    [FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE],
];

pub fn mat_mul(f: &FieldParams, a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[FieldElement::ZERO; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            for k in 0..3 {
                *cell += f.mul(a[i][k], b[k][j]);
            }
        }
    }
    out
}

pub fn mat_vec(f: &FieldParams, a: &Mat3, v: [FieldElement; 3]) -> [FieldElement; 3] {
    let mut out = [FieldElement::ZERO; 3];
    for (i, o) in out.iter_mut().enumerate() {
        for k in 0..3 {
            *o += f.mul(a[i][k], v[k]);
        }
    }
    out
}

/// Gauss-Jordan inversion; `None` when singular.
pub fn mat_inv(f: &FieldParams, a: &Mat3) -> Option<Mat3> {
    let mut m = *a;
    let mut inv = IDENTITY;
    for col in 0..3 {
        let pivot = (col..3).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = f.inv(m[col][col]).ok()?;
        for j in 0..3 {
            m[col][j] = f.mul(m[col][j], p);
            inv[col][j] = f.mul(inv[col][j], p);
        }
        for r in 0..3 {
            if r != col && !m[r][col].is_zero() {
                let k = m[r][col];
                for j in 0..3 {
                    let (mc, ic) = (m[col][j], inv[col][j]);
                    m[r][j] += f.mul(k, mc);
                    inv[r][j] += f.mul(k, ic);
                }
            }
        }
    }
    Some(inv)
}

pub fn is_invertible(f: &FieldParams, a: &Mat3) -> bool {
    mat_inv(f, a).is_some()
}

/// Coordinates with respect to `{1, alpha, alpha^q}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Xyz {
    pub x: FieldElement,
    pub y: FieldElement,
    pub z: FieldElement,
}

impl Xyz {
    pub fn new(x: FieldElement, y: FieldElement, z: FieldElement) -> Self {
        Xyz { x, y, z }
    }
}

/// Matrix whose rows are the coordinates of `theta, theta^q, theta^{q^2}`.
fn conjugate_matrix(ext: &CubicExt, theta: ExtElement) -> Mat3 {
    let t1 = ext.frobenius(theta);
    let t2 = ext.frobenius(t1);
    [theta.0, t1.0, t2.0]
}

pub fn is_normal(ext: &CubicExt, theta: ExtElement) -> bool {
    is_invertible(ext.base(), &conjugate_matrix(ext, theta))
}

/// The normal element with the smallest packed encoding.
pub fn find_normal_element(ext: &CubicExt) -> Result<ExtElement> {
    (1..ext.size())
        .map(|i| ext.from_index(i))
        .find(|&theta| is_normal(ext, theta))
        .ok_or_else(|| Error::Internal("no normal element found".into()))
}

#[derive(Clone, Debug)]
pub struct TraceZeroBasis {
    ext: CubicExt,
    theta: ExtElement,
    trace_theta: FieldElement,
    alpha: ExtElement,
    alpha_q: ExtElement,
    /// (x, y, z) -> polynomial coordinates; columns are 1, alpha, alpha^q.
    from_xyz: Mat3,
    to_xyz: Mat3,
}

impl TraceZeroBasis {
    pub fn derive(ext: &CubicExt) -> Result<Self> {
        let theta = find_normal_element(ext)?;
        let c = ext.trace(theta)?;
        if c.is_zero() {
            return Err(Error::Internal(format!("normal element {theta:?} has trace 0")));
        }
        // alpha = theta - c * 3^{-1}, and 3^{-1} = 1 in characteristic 2
        let alpha = theta + ExtElement::embed(c);
        if !ext.trace(alpha)?.is_zero() {
            return Err(Error::Internal(format!("Tr(alpha) != 0 for alpha = {alpha:?}")));
        }
        let alpha_q = ext.frobenius(alpha);
        let one = ExtElement::ONE;
        let from_xyz: Mat3 = std::array::from_fn(|row| [one.0[row], alpha.0[row], alpha_q.0[row]]);
        let f = ext.base();
        let to_xyz =
            mat_inv(f, &from_xyz).ok_or_else(|| Error::Internal("{1, alpha, alpha^q} is not a basis".into()))?;
        if mat_mul(f, &to_xyz, &from_xyz) != IDENTITY {
            return Err(Error::Internal("change of basis does not invert".into()));
        }
        Ok(TraceZeroBasis { ext: ext.clone(), theta, trace_theta: c, alpha, alpha_q, from_xyz, to_xyz })
    }

    pub fn ext(&self) -> &CubicExt {
        &self.ext
    }
    pub fn theta(&self) -> ExtElement {
        self.theta
    }
    pub fn trace_theta(&self) -> FieldElement {
        self.trace_theta
    }
    pub fn alpha(&self) -> ExtElement {
        self.alpha
    }
    pub fn alpha_q(&self) -> ExtElement {
        self.alpha_q
    }
    pub fn from_xyz(&self) -> &Mat3 {
        &self.from_xyz
    }
    pub fn to_xyz(&self) -> &Mat3 {
        &self.to_xyz
    }

    pub fn decompose(&self, x: ExtElement) -> Xyz {
        let [x, y, z] = mat_vec(self.ext.base(), &self.to_xyz, x.0);
        Xyz { x, y, z }
    }

    pub fn compose(&self, v: Xyz) -> ExtElement {
        ExtElement(mat_vec(self.ext.base(), &self.from_xyz, [v.x, v.y, v.z]))
    }

    pub fn report(&self) -> BasisReport {
        let info = self.ext.info();
        BasisReport {
            m: info.m,
            base_modulus: info.base_modulus,
            cubic: info.cubic,
            theta: self.theta.to_hex_triple(),
            theta_index: format!("{:#X}", self.ext.index(self.theta)),
            c: self.trace_theta.to_hex(),
            alpha: self.alpha.to_hex_triple(),
            alpha_index: format!("{:#X}", self.ext.index(self.alpha)),
            matrix_from_xyz: self.from_xyz.iter().map(|row| row.iter().map(|e| e.to_hex()).collect()).collect(),
        }
    }
}

/// JSON basis report. Extension elements are `"c2:c1:c0"` triples; the
/// `*_index` fields give the packed encoding `c2*q^2 + c1*q + c0`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BasisReport {
    pub m: u32,
    pub base_modulus: String,
    pub cubic: String,
    pub theta: String,
    pub theta_index: String,
    pub c: String,
    pub alpha: String,
    pub alpha_index: String,
    pub matrix_from_xyz: Vec<Vec<String>>,
}

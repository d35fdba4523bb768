//! Closed forms for `Tr(X^e)` in the coordinates `X = x + y alpha + z alpha^q`.
//!
//! Write `w = y alpha + z alpha^q`, so `X = x + w` with `Tr(w) = 0` and
//! `w^q = y alpha^q + z alpha^{q^2}`. Each identity expresses the trace of a
//! monomial as a polynomial in x whose coefficients depend on (y, z) only.

use serde::Serialize;

use crate::basis::{TraceZeroBasis, Xyz};
use crate::error::{Error, Result};
use crate::fq3::{CubicExt, ExtElement};
use crate::gf2m::FieldElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceIdentity {
    /// `Tr(X^{q+1})`.
    I,
    /// `Tr(X^{q^2+q+2})`.
    II,
    /// `Tr(X^{2q+1})`.
    III,
    /// `Tr(X^{4q+1})`.
    IV,
    /// `Tr(X^{q+3})`.
    V,
    /// `Tr(X^{3q+1})`.
    VI,
}

impl TraceIdentity {
    pub const ALL: [TraceIdentity; 6] = [
        TraceIdentity::I,
        TraceIdentity::II,
        TraceIdentity::III,
        TraceIdentity::IV,
        TraceIdentity::V,
        TraceIdentity::VI,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TraceIdentity::I => "i",
            TraceIdentity::II => "ii",
            TraceIdentity::III => "iii",
            TraceIdentity::IV => "iv",
            TraceIdentity::V => "v",
            TraceIdentity::VI => "vi",
        }
    }

    /// The monomial exponent for q = 2^m.
    pub fn exponent(self, m: u32) -> u64 {
        let q = 1u64 << m;
        match self {
            TraceIdentity::I => q + 1,
            TraceIdentity::II => q * q + q + 2,
            TraceIdentity::III => 2 * q + 1,
            TraceIdentity::IV => 4 * q + 1,
            TraceIdentity::V => q + 3,
            TraceIdentity::VI => 3 * q + 1,
        }
    }
}

/// Evaluators for the (y, z)-only constants of the closed forms.
pub struct SliceConstants<'a> {
    basis: &'a TraceZeroBasis,
    /// `Tr(alpha^{q+1})`.
    tau: FieldElement,
}

impl<'a> SliceConstants<'a> {
    pub fn new(basis: &'a TraceZeroBasis) -> Self {
        let ext = basis.ext();
        let tau = ext.trace_linear(ext.mul(basis.alpha(), basis.alpha_q()));
        SliceConstants { basis, tau }
    }

    pub fn tau(&self) -> FieldElement {
        self.tau
    }

    fn ext(&self) -> &CubicExt {
        self.basis.ext()
    }

    fn tr(&self, v: ExtElement) -> FieldElement {
        self.ext().trace_linear(v)
    }

    /// `(w, w^q)` for the given (y, z).
    pub fn w(&self, y: FieldElement, z: FieldElement) -> (ExtElement, ExtElement) {
        let w = self.basis.compose(Xyz::new(FieldElement::ZERO, y, z));
        (w, self.ext().frobenius(w))
    }

    /// `(y^2 + z^2 + yz) Tr(alpha^{q+1})`.
    pub fn quadratic(&self, y: FieldElement, z: FieldElement) -> FieldElement {
        let f = self.ext().base();
        f.mul(f.square(y) + f.square(z) + f.mul(y, z), self.tau)
    }

    /// `Tr(w^3)`.
    pub fn cube(&self, y: FieldElement, z: FieldElement) -> FieldElement {
        let (w, _) = self.w(y, z);
        self.tr(self.ext().pow(w, 3))
    }

    /// `Tr(w^2 w^q + w^3)`.
    pub fn ell51(&self, y: FieldElement, z: FieldElement) -> FieldElement {
        let ext = self.ext();
        let (w, wq) = self.w(y, z);
        self.tr(ext.mul(ext.square(w), wq) + ext.pow(w, 3))
    }

    /// `Tr(w^q w^3)`.
    pub fn ell52(&self, y: FieldElement, z: FieldElement) -> FieldElement {
        let ext = self.ext();
        let (w, wq) = self.w(y, z);
        self.tr(ext.mul(wq, ext.pow(w, 3)))
    }

    /// `Tr(w^{2q} w + w^{3q})`.
    pub fn ell61(&self, y: FieldElement, z: FieldElement) -> FieldElement {
        let ext = self.ext();
        let (w, wq) = self.w(y, z);
        self.tr(ext.mul(ext.square(wq), w) + ext.pow(wq, 3))
    }

    /// `Tr(w^{3q} w)`.
    pub fn ell62(&self, y: FieldElement, z: FieldElement) -> FieldElement {
        let ext = self.ext();
        let (w, wq) = self.w(y, z);
        self.tr(ext.mul(ext.pow(wq, 3), w))
    }

    /// `Tr(w^{k q} w)`; k = 2 and k = 4 give the constants of (iii) and (iv).
    fn frobenius_power_term(&self, y: FieldElement, z: FieldElement, k: u64) -> FieldElement {
        let ext = self.ext();
        let (w, wq) = self.w(y, z);
        self.tr(ext.mul(ext.pow(wq, k), w))
    }

    /// Right-hand side of the identity at `(x, y, z)`.
    pub fn closed_form(&self, which: TraceIdentity, v: Xyz) -> FieldElement {
        let f = self.ext().base();
        let Xyz { x, y, z } = v;
        let x2 = f.square(x);
        let quartic_part = || f.square(x2) + f.mul(x2, self.quadratic(y, z));
        match which {
            TraceIdentity::I => x2 + self.quadratic(y, z),
            TraceIdentity::II => quartic_part() + f.mul(x, self.cube(y, z)),
            TraceIdentity::III => f.pow(x, 3) + self.frobenius_power_term(y, z, 2),
            TraceIdentity::IV => f.pow(x, 5) + self.frobenius_power_term(y, z, 4),
            TraceIdentity::V => quartic_part() + f.mul(x, self.ell51(y, z)) + self.ell52(y, z),
            TraceIdentity::VI => quartic_part() + f.mul(x, self.ell61(y, z)) + self.ell62(y, z),
        }
    }

    /// `x^3 + x (y^2+z^2+yz) Tr(alpha^{q+1}) + Tr(w^3)`, the factorized norm.
    pub fn norm_closed_form(&self, v: Xyz) -> FieldElement {
        let f = self.ext().base();
        f.pow(v.x, 3) + f.mul(v.x, self.quadratic(v.y, v.z)) + self.cube(v.y, v.z)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub m: u32,
    pub checked: u64,
    pub failures: u64,
    /// Packed index of the first X where the two sides differ.
    pub first_failure: Option<u64>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

fn sweep(basis: &TraceZeroBasis, label: &str, mut differs: impl FnMut(ExtElement) -> bool) -> IdentityReport {
    let ext = basis.ext();
    let mut failures = 0;
    let mut first_failure = None;
    for idx in 0..ext.size() {
        if differs(ext.from_index(idx)) {
            failures += 1;
            first_failure.get_or_insert(idx);
        }
    }
    IdentityReport { identity: label.to_string(), m: ext.m(), checked: ext.size(), failures, first_failure }
}

/// Compares `Tr(X^e)` by direct powering against the closed form for every X.
pub fn check_trace_identity(basis: &TraceZeroBasis, which: TraceIdentity) -> IdentityReport {
    let ext = basis.ext();
    let consts = SliceConstants::new(basis);
    let e = which.exponent(ext.m());
    sweep(basis, which.label(), |x| ext.trace_linear(ext.pow(x, e)) != consts.closed_form(which, basis.decompose(x)))
}

/// Compares `N(X) = X^{q^2+q+1}` against its factorized form for every X.
pub fn check_norm_factorization(basis: &TraceZeroBasis) -> IdentityReport {
    let ext = basis.ext();
    let consts = SliceConstants::new(basis);
    sweep(basis, "norm", |x| ext.norm(x) != consts.norm_closed_form(basis.decompose(x)))
}

/// `F(Y) = Y^2 + Tr(Y^{q+1} + Y^{q^2+q+2} + Y^{q+3} + Y^{3q+1})`, the four-term
/// family at gamma = 1 composed with squaring.
pub fn four_term_squared(ext: &CubicExt, y: ExtElement) -> ExtElement {
    let q = ext.base().q() as u64;
    let s = [q + 1, q * q + q + 2, q + 3, 3 * q + 1].iter().fold(ExtElement::ZERO, |acc, &e| acc + ext.pow(y, e));
    ext.square(y) + ExtElement::embed(ext.trace_linear(s))
}

/// `A = Tr(a^{q+1} + a^{2q})` and
/// `B = Tr(a^{q+1} + a^{q^2+q+2} + a^{q+3} + a^{3q+1})`, so that
/// `F(a + u) = a^2 + u^4 + A u^2 + B` for u in GF(q).
pub fn quadratic_coefficients(ext: &CubicExt, a: ExtElement) -> (FieldElement, FieldElement) {
    let q = ext.base().q() as u64;
    let p = |e: u64| ext.pow(a, e);
    let coef_a = ext.trace_linear(p(q + 1) + p(2 * q));
    let coef_b = ext.trace_linear(p(q + 1) + p(q * q + q + 2) + p(q + 3) + p(3 * q + 1));
    (coef_a, coef_b)
}

/// Square root in GF(q^3): `x^{2^{3m-1}}`.
pub fn ext_sqrt(ext: &CubicExt, x: ExtElement) -> ExtElement {
    (1..3 * ext.m()).fold(x, |acc, _| ext.square(acc))
}

/// How a collision `F(Y1) = F(Y2)` of the four-term family is explained by
/// the quadratic `v^2 + A v + B` in `v = u^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticWitness {
    /// `sqrt(F(Y1))`; both inputs are `a + u_k` with `u_k` in GF(q).
    pub a: ExtElement,
    pub u: [FieldElement; 2],
    pub coef_a: FieldElement,
    pub coef_b: FieldElement,
    /// Both `u_k^2` are roots of `v^2 + A v + B`.
    pub roots_satisfy: bool,
    pub distinct: bool,
    pub a_nonzero: bool,
}

impl QuadraticWitness {
    pub fn holds(&self) -> bool {
        self.roots_satisfy && self.distinct && self.a_nonzero
    }
}

/// Reconstructs A and B from a collision of [`four_term_squared`].
pub fn explain_four_term_collision(ext: &CubicExt, y1: ExtElement, y2: ExtElement) -> Result<QuadraticWitness> {
    let c = four_term_squared(ext, y1);
    if y1 == y2 || four_term_squared(ext, y2) != c {
        return Err(Error::Param("inputs are not a collision".into()));
    }
    let f = ext.base();
    let a = ext_sqrt(ext, c);
    let (d1, d2) = (y1 + a, y2 + a);
    if !d1.is_base() || !d2.is_base() {
        return Err(Error::Internal("collision differs from sqrt(F) outside GF(q)".into()));
    }
    let u = [d1.c0(), d2.c0()];
    let (coef_a, coef_b) = quadratic_coefficients(ext, a);
    let root = |v: FieldElement| (f.square(v) + f.mul(coef_a, v) + coef_b).is_zero();
    let v = u.map(|uk| f.square(uk));
    Ok(QuadraticWitness {
        a,
        u,
        coef_a,
        coef_b,
        roots_satisfy: root(v[0]) && root(v[1]),
        distinct: v[0] != v[1],
        a_nonzero: !coef_a.is_zero(),
    })
}

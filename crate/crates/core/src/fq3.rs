//! The cubic extension GF(q^3) = GF(q)[t]/(g(t)), q = 2^m.
//!
//! Elements are coordinate triples over GF(q) in the basis `{1, t, t^2}`.
//! The Frobenius `X -> X^q` fixes GF(q) and is therefore GF(q)-linear, so it
//! is applied through the precomputed images of `t` and `t^2`.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2m::{parse_hex, FieldElement, FieldParams};

#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtElement(pub [FieldElement; 3]);

impl ExtElement {
    pub const ZERO: ExtElement = ExtElement([FieldElement::ZERO; 3]);
    pub const ONE: ExtElement = ExtElement([FieldElement::ONE, FieldElement::ZERO, FieldElement::ZERO]);

    pub fn new(c0: FieldElement, c1: FieldElement, c2: FieldElement) -> Self {
        ExtElement([c0, c1, c2])
    }

    /// Embeds a base-field element as a constant.
    pub fn embed(c: FieldElement) -> Self {
        ExtElement([c, FieldElement::ZERO, FieldElement::ZERO])
    }

    pub fn c0(self) -> FieldElement {
        self.0[0]
    }
    pub fn c1(self) -> FieldElement {
        self.0[1]
    }
    pub fn c2(self) -> FieldElement {
        self.0[2]
    }

    pub fn is_zero(self) -> bool {
        self == ExtElement::ZERO
    }

    /// True when the element lies in the embedded base field.
    pub fn is_base(self) -> bool {
        self.0[1].is_zero() && self.0[2].is_zero()
    }

    /// `"c2:c1:c0"` in hexadecimal.
    pub fn to_hex_triple(self) -> String {
        format!("{:X}:{:X}:{:X}", self.0[2].value(), self.0[1].value(), self.0[0].value())
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_hex_triple())
    }
}

impl Add for ExtElement {
    type Output = ExtElement;
    #[inline]
    fn add(self, rhs: ExtElement) -> ExtElement {
        ExtElement([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl AddAssign for ExtElement {
    #[inline]
    fn add_assign(&mut self, rhs: ExtElement) {
        *self = *self + rhs;
    }
}

#[derive(Clone, Debug)]
pub struct CubicExt {
    base: FieldParams,
    /// `[g0, g1, g2]` of the monic cubic `t^3 + g2 t^2 + g1 t + g0`.
    cubic: [FieldElement; 3],
    /// `[t^q, t^(2q)]`.
    frob: [ExtElement; 2],
    /// `[Tr(t), Tr(t^2)]`; `Tr(1) = 1`.
    trace_t: [FieldElement; 2],
}

impl PartialEq for CubicExt {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.cubic == other.cubic
    }
}

impl Eq for CubicExt {}

/// Serializable description of an extension.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CubicExtInfo {
    pub m: u32,
    pub base_modulus: String,
    /// `"g2:g1:g0"`.
    pub cubic: String,
}

fn cubic_has_root(f: &FieldParams, g: [FieldElement; 3]) -> bool {
    f.elements().any(|t| {
        let t2 = f.square(t);
        let v = f.mul(t2, t) + f.mul(g[2], t2) + f.mul(g[1], t) + g[0];
        v.is_zero()
    })
}

impl CubicExt {
    /// With no cubic given, picks the monic irreducible cubic whose encoding
    /// `g2*q^2 + g1*q + g0` is smallest.
    pub fn new(base: FieldParams, cubic: Option<[FieldElement; 3]>) -> Result<Self> {
        let q = base.q() as u64;
        let cubic = match cubic {
            Some(g) => {
                for c in g {
                    base.element(c.value())
                        .map_err(|_| Error::ModulusInvalid(format!("coefficient {c} out of range")))?;
                }
                if cubic_has_root(&base, g) {
                    return Err(Error::ModulusInvalid(format!(
                        "cubic {}:{}:{} has a root in GF(2^{})",
                        g[2],
                        g[1],
                        g[0],
                        base.m()
                    )));
                }
                g
            }
            None => (1..q * q * q)
                .map(|enc| {
                    [
                        FieldElement::from_raw((enc % q) as u32),
                        FieldElement::from_raw((enc / q % q) as u32),
                        FieldElement::from_raw((enc / (q * q)) as u32),
                    ]
                })
                .find(|&g| !cubic_has_root(&base, g))
                .ok_or_else(|| Error::Internal("no irreducible cubic found".into()))?,
        };

        let mut ext = CubicExt { base, cubic, frob: [ExtElement::ZERO; 2], trace_t: [FieldElement::ZERO; 2] };
        let t = ExtElement::new(FieldElement::ZERO, FieldElement::ONE, FieldElement::ZERO);
        let mut tq = t;
        for _ in 0..ext.base.m() {
            tq = ext.square(tq);
        }
        ext.frob = [tq, ext.square(tq)];

        let t2 = ext.square(t);
        if ext.frobenius(ext.frobenius(ext.frobenius(t))) != t || ext.frobenius(ext.frobenius(ext.frobenius(t2))) != t2
        {
            return Err(Error::Internal("Frobenius table does not have order 3".into()));
        }
        ext.trace_t = [ext.trace(t)?, ext.trace(t2)?];
        Ok(ext)
    }

    /// Default base field and default cubic for the given m.
    pub fn with_defaults(m: u32) -> Result<Self> {
        CubicExt::new(FieldParams::new(m, None)?, None)
    }

    #[inline]
    pub fn base(&self) -> &FieldParams {
        &self.base
    }

    pub fn cubic(&self) -> [FieldElement; 3] {
        self.cubic
    }

    pub fn m(&self) -> u32 {
        self.base.m()
    }

    /// Number of elements, q^3.
    pub fn size(&self) -> u64 {
        1u64 << (3 * self.base.m())
    }

    pub fn info(&self) -> CubicExtInfo {
        CubicExtInfo {
            m: self.m(),
            base_modulus: format!("{:#X}", self.base.modulus()),
            cubic: ExtElement(self.cubic).to_hex_triple(),
        }
    }

    /// Packs coordinates as `c2*q^2 + c1*q + c0`. This is the scan order of
    /// every sweep.
    #[inline]
    pub fn index(&self, x: ExtElement) -> u64 {
        let m = self.base.m();
        x.0[0].value() as u64 | (x.0[1].value() as u64) << m | (x.0[2].value() as u64) << (2 * m)
    }

    #[inline]
    pub fn from_index(&self, idx: u64) -> ExtElement {
        let m = self.base.m();
        let mask = (1u64 << m) - 1;
        ExtElement([
            FieldElement::from_raw((idx & mask) as u32),
            FieldElement::from_raw((idx >> m & mask) as u32),
            FieldElement::from_raw((idx >> (2 * m) & mask) as u32),
        ])
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtElement> + '_ {
        (0..self.size()).map(|i| self.from_index(i))
    }

    pub fn element(&self, c0: u32, c1: u32, c2: u32) -> Result<ExtElement> {
        Ok(ExtElement([self.base.element(c0)?, self.base.element(c1)?, self.base.element(c2)?]))
    }

    /// Parses `"c2:c1:c0"` (each part hex, optional `0x`).
    pub fn parse_element(&self, s: &str) -> Result<ExtElement> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Param(format!("bad extension element {s:?}, expected c2:c1:c0"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let mut v = [0u32; 3];
        for (slot, p) in v.iter_mut().zip(parts.iter().rev()) {
            *slot = parse_hex(p).ok_or_else(bad)?;
        }
        self.element(v[0], v[1], v[2])
    }

    #[inline]
    pub fn add(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        a + b
    }

    #[inline]
    pub fn scale(&self, c: FieldElement, x: ExtElement) -> ExtElement {
        let f = &self.base;
        ExtElement([f.mul(c, x.0[0]), f.mul(c, x.0[1]), f.mul(c, x.0[2])])
    }

    pub fn mul(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        let f = &self.base;
        let [a0, a1, a2] = a.0;
        let [b0, b1, b2] = b.0;
        let mut p0 = f.mul(a0, b0);
        let mut p1 = f.mul(a0, b1) + f.mul(a1, b0);
        let mut p2 = f.mul(a0, b2) + f.mul(a1, b1) + f.mul(a2, b0);
        let mut p3 = f.mul(a1, b2) + f.mul(a2, b1);
        let p4 = f.mul(a2, b2);
        // t^3 = g2 t^2 + g1 t + g0
        let [g0, g1, g2] = self.cubic;
        p3 += f.mul(p4, g2);
        p2 += f.mul(p4, g1);
        p1 += f.mul(p4, g0);
        p2 += f.mul(p3, g2);
        p1 += f.mul(p3, g1);
        p0 += f.mul(p3, g0);
        ExtElement([p0, p1, p2])
    }

    #[inline]
    pub fn square(&self, a: ExtElement) -> ExtElement {
        self.mul(a, a)
    }

    /// Square-and-multiply; `pow(0, 0) = 1`.
    pub fn pow(&self, a: ExtElement, mut e: u64) -> ExtElement {
        let mut base = a;
        let mut acc = ExtElement::ONE;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// `X^{-1} = X^q X^{q^2} / N(X)`.
    pub fn inv(&self, a: ExtElement) -> Result<ExtElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a1 = self.frobenius(a);
        let conj = self.mul(a1, self.frobenius(a1));
        let n = self.mul(a, conj);
        if !n.is_base() {
            return Err(Error::Internal(format!("norm of {a:?} left the base field")));
        }
        Ok(self.scale(self.base.inv(n.c0())?, conj))
    }

    #[inline]
    pub fn frobenius(&self, x: ExtElement) -> ExtElement {
        let [c0, c1, c2] = x.0;
        ExtElement::embed(c0) + self.scale(c1, self.frob[0]) + self.scale(c2, self.frob[1])
    }

    /// `X^(q^k)`.
    pub fn frobenius_pow(&self, x: ExtElement, k: u32) -> ExtElement {
        (0..k % 3).fold(x, |acc, _| self.frobenius(acc))
    }

    /// `X + X^q + X^{q^2}`, checked to land in the base field.
    pub fn trace(&self, x: ExtElement) -> Result<FieldElement> {
        let x1 = self.frobenius(x);
        let s = x + x1 + self.frobenius(x1);
        if !s.is_base() {
            return Err(Error::Internal(format!("trace of {x:?} has nonzero t-coordinates: {s:?}")));
        }
        Ok(s.c0())
    }

    /// The trace as the linear form `c0 + c1 Tr(t) + c2 Tr(t^2)`, with the
    /// two constants computed (and checked) at construction.
    #[inline]
    pub fn trace_linear(&self, x: ExtElement) -> FieldElement {
        let f = &self.base;
        x.0[0] + f.mul(x.0[1], self.trace_t[0]) + f.mul(x.0[2], self.trace_t[1])
    }

    /// `X^{1+q+q^2}`.
    pub fn norm(&self, x: ExtElement) -> FieldElement {
        let x1 = self.frobenius(x);
        let n = self.mul(self.mul(x, x1), self.frobenius(x1));
        debug_assert!(n.is_base(), "norm left the base field");
        n.c0()
    }
}

//! Arithmetic in the binary field GF(2^m), 1 <= m <= 16.
//!
//! Elements are bitmasks of their coordinates in the polynomial basis
//! `{1, t, ..., t^(m-1)}` of `F_2[t]/(modulus)`. All arithmetic goes through a
//! shared [`FieldParams`]; elements carry no reference to their field, so they
//! stay `Copy` and cheap to store in sweep tables.
//!
//! Multiplication uses log/antilog tables built once per field. The tables are
//! generated by repeated carryless multiplication, and [`FieldParams::mul_clmul`]
//! is kept public so tests can compare the two routes.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::sync::Arc;

use crate::error::{Error, Result};

pub const MAX_M: u32 = 16;

#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a raw bitmask without range checking; use
    /// [`FieldParams::element`] for untrusted input.
    #[inline]
    pub const fn from_raw(value: u32) -> Self {
        FieldElement(value)
    }

    #[inline]
    pub const fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn to_hex(self) -> String {
        format!("{:#X}", self.0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#X}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#X}", self.0)
    }
}

// Characteristic 2: addition is XOR, and subtraction is the same operation.
impl Add for FieldElement {
    type Output = FieldElement;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl AddAssign for FieldElement {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

struct LogTables {
    /// `log[x]` for x != 0; `log[0]` unused.
    log: Vec<u32>,
    /// `exp[k] = g^k` for k in [0, 2(q-1)), so sums of two logs need no reduction.
    exp: Vec<u32>,
}

/// Parameters of GF(2^m). Immutable and cheap to clone (tables are shared).
#[derive(Clone)]
pub struct FieldParams {
    m: u32,
    modulus: u32,
    tables: Arc<LogTables>,
}

impl fmt::Debug for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldParams")
            .field("m", &self.m)
            .field("modulus", &format_args!("{:#X}", self.modulus))
            .finish()
    }
}

impl PartialEq for FieldParams {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldParams {}

/// Degree of a nonzero binary polynomial given as a bitmask.
pub fn poly_degree(p: u64) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(63 - p.leading_zeros())
    }
}

/// Carryless product of two binary polynomials of degree < 32.
pub fn clmul(a: u32, b: u32) -> u64 {
    let (a, mut b) = (a as u64, b);
    let mut acc = 0u64;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

/// Remainder of binary polynomial division.
pub fn poly_rem(mut p: u64, divisor: u64) -> u64 {
    let d = poly_degree(divisor).expect("division by the zero polynomial");
    while let Some(dp) = poly_degree(p) {
        if dp < d {
            break;
        }
        p ^= divisor << (dp - d);
    }
    p
}

/// Irreducibility over F_2 by trial division with every polynomial of degree
/// 1..=deg/2.
pub fn is_irreducible_binary(p: u64) -> bool {
    let Some(deg) = poly_degree(p) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for divisor in (1u64 << d)..(1u64 << (d + 1)) {
            if poly_rem(p, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

/// Smallest irreducible binary polynomial of degree m, as a bitmask.
pub fn default_modulus(m: u32) -> u32 {
    ((1u32 << m)..(1u32 << (m + 1)))
        .find(|&p| is_irreducible_binary(p as u64))
        .expect("irreducible polynomials exist in every degree")
}

pub fn parse_hex(s: &str) -> Option<u32> {
    let s = s.trim();
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    if digits.is_empty() {
        return None;
    }
    u32::from_str_radix(digits, 16).ok()
}

impl FieldParams {
    /// Builds GF(2^m). With no modulus, picks the irreducible degree-m
    /// polynomial with the smallest bitmask.
    pub fn new(m: u32, modulus: Option<u32>) -> Result<Self> {
        if !(1..=MAX_M).contains(&m) {
            return Err(Error::Param(format!("m = {m} outside 1..={MAX_M}")));
        }
        let modulus = match modulus {
            None => default_modulus(m),
            Some(p) => {
                if poly_degree(p as u64) != Some(m) {
                    return Err(Error::ModulusInvalid(format!("{p:#X} does not have degree {m}")));
                }
                if !is_irreducible_binary(p as u64) {
                    return Err(Error::ModulusInvalid(format!("{p:#X} is reducible")));
                }
                p
            }
        };
        let tables = Arc::new(build_tables(m, modulus)?);
        Ok(FieldParams { m, modulus, tables })
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Field size q = 2^m.
    #[inline]
    pub fn q(&self) -> u32 {
        1 << self.m
    }

    #[inline]
    fn mask(&self) -> u32 {
        self.q() - 1
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value > self.mask() {
            return Err(Error::Param(format!("{value:#X} is not an element of GF(2^{})", self.m)));
        }
        Ok(FieldElement(value))
    }

    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let v = parse_hex(s).ok_or_else(|| Error::Param(format!("bad hex element {s:?}")))?;
        self.element(v)
    }

    /// All field elements in increasing bitmask order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q()).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a + b
    }

    /// Table multiplication.
    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &*self.tables;
        FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    /// Carryless multiply followed by reduction modulo the field modulus.
    pub fn mul_clmul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(reduce(clmul(a.0, b.0), self.m, self.modulus))
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.tables;
        let order = self.mask();
        let l = t.log[a.0 as usize];
        Ok(FieldElement(t.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply; `pow(0, 0) = 1`.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Unique square root (inverse Frobenius over F_2): `a^(q/2)`.
    pub fn sqrt(&self, a: FieldElement) -> FieldElement {
        let mut r = a;
        for _ in 1..self.m {
            r = self.square(r);
        }
        r
    }
}

fn reduce(mut p: u64, m: u32, modulus: u32) -> u32 {
    let modulus = modulus as u64;
    let mut i = 63 - p.leading_zeros().min(63);
    while p >> m != 0 {
        if p >> i & 1 == 1 {
            p ^= modulus << (i - m);
        }
        i -= 1;
    }
    p as u32
}

fn build_tables(m: u32, modulus: u32) -> Result<LogTables> {
    let q = 1u32 << m;
    let order = q - 1;
    let mut log = vec![0u32; q as usize];
    let mut exp = vec![0u32; 2 * order as usize];
    'candidates: for g in 1..q {
        let mut x = 1u32;
        for k in 0..order {
            if k > 0 && x == 1 {
                continue 'candidates;
            }
            exp[k as usize] = x;
            log[x as usize] = k;
            x = reduce(clmul(x, g), m, modulus);
        }
        if x != 1 {
            return Err(Error::Internal(format!("multiplicative order of {g:#X} does not divide {order}")));
        }
        for k in order..2 * order {
            exp[k as usize] = exp[(k - order) as usize];
        }
        return Ok(LogTables { log, exp });
    }
    Err(Error::Internal(format!("no generator found for modulus {modulus:#X}")))
}

use std::fmt;

use rayon::prelude::*;

use super::exponent::ExponentExpr;
use crate::error::{Error, Result};
use crate::fq3::{CubicExt, ExtElement};
use crate::gf2m::FieldElement;

/// Symbolic coefficients, bound at instantiation time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    G,
    A,
    C1,
    C2,
    C3,
    C4,
}

impl Symbol {
    /// Sweep order: gamma, a, c1..c4.
    pub const ALL: [Symbol; 6] = [Symbol::G, Symbol::A, Symbol::C1, Symbol::C2, Symbol::C3, Symbol::C4];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::G => "g",
            Symbol::A => "a",
            Symbol::C1 => "c1",
            Symbol::C2 => "c2",
            Symbol::C3 => "c3",
            Symbol::C4 => "c4",
        }
    }

    pub fn from_name(s: &str) -> Option<Symbol> {
        Symbol::ALL.into_iter().find(|sym| sym.name() == s)
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A coefficient as written in a family: a base-field literal, an
/// extension-field literal `[c0, c1, c2]`, or a symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coef {
    Base(u32),
    Ext([u32; 3]),
    Sym(Symbol),
}

impl Coef {
    pub const ONE: Coef = Coef::Base(1);

    fn is_literal_zero(&self) -> bool {
        matches!(self, Coef::Base(0) | Coef::Ext([0, 0, 0]))
    }

    /// Sum of two literal coefficients; `None` if either is symbolic.
    fn literal_sum(&self, other: &Coef) -> Option<Coef> {
        let ext = |c: &Coef| match *c {
            Coef::Base(v) => Some([v, 0, 0]),
            Coef::Ext(v) => Some(v),
            Coef::Sym(_) => None,
        };
        let (a, b) = (ext(self)?, ext(other)?);
        let s = [a[0] ^ b[0], a[1] ^ b[1], a[2] ^ b[2]];
        Some(if s[1] == 0 && s[2] == 0 { Coef::Base(s[0]) } else { Coef::Ext(s) })
    }

    /// Prefix as printed before `X^...`; empty for the literal 1.
    pub(crate) fn prefix(&self) -> String {
        match self {
            Coef::Base(1) => String::new(),
            Coef::Base(v) => format!("{v:#X} "),
            Coef::Ext([c0, c1, c2]) => format!("{c2:#X}:{c1:X}:{c0:X} "),
            Coef::Sym(s) => format!("{s} "),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HTerm {
    pub coef: Coef,
    pub exp: ExponentExpr,
}

impl HTerm {
    pub fn new(coef: Coef, exp: ExponentExpr) -> Self {
        HTerm { coef, exp }
    }

    fn sort_key(&self) -> ((usize, [i64; 4], bool, u32), Coef) {
        (self.exp.sort_key(), self.coef)
    }
}

/// `f(X) = X + a X^q + s g Tr(h(X))` with `h = sum coef_k X^{e_k}`.
///
/// `g` is always the symbol gamma; `s` is an optional literal scale (1 when
/// omitted). An absent `X^q` term means `a = 0`, and an empty `h` means there
/// is no trace part at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub frob: Option<Coef>,
    pub scale: Coef,
    pub terms: Vec<HTerm>,
}

impl Default for FamilySpec {
    fn default() -> Self {
        FamilySpec { frob: None, scale: Coef::ONE, terms: Vec::new() }
    }
}

impl FamilySpec {
    pub fn new(frob: Option<Coef>, terms: Vec<HTerm>) -> Self {
        let mut spec = FamilySpec { frob, scale: Coef::ONE, terms };
        spec.normalize();
        spec
    }

    /// Sorts terms into canonical order. Does not merge like terms.
    pub fn normalize(&mut self) {
        self.terms.sort_by_key(HTerm::sort_key);
    }

    /// Adds `coef X^exp`, merging with an existing term of the same exponent
    /// expression when both coefficients are literals; terms that cancel are
    /// dropped.
    pub fn add_term(&mut self, coef: Coef, exp: ExponentExpr) {
        let existing = self.terms.iter().position(|t| t.exp == exp && t.coef.literal_sum(&coef).is_some());
        match existing {
            Some(i) => {
                let sum = self.terms[i].coef.literal_sum(&coef).expect("checked above");
                if sum.is_literal_zero() {
                    self.terms.remove(i);
                } else {
                    self.terms[i].coef = sum;
                }
            }
            None if !coef.is_literal_zero() => self.terms.push(HTerm::new(coef, exp)),
            None => {}
        }
        self.normalize();
    }

    /// Symbols that must be bound before evaluation, in sweep order.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut used = [false; 6];
        let mut mark = |c: &Coef| {
            if let Coef::Sym(s) = c {
                used[s.slot()] = true;
            }
        };
        if let Some(c) = &self.frob {
            mark(c);
        }
        if !self.terms.is_empty() {
            mark(&Coef::Sym(Symbol::G));
            mark(&self.scale);
            for t in &self.terms {
                mark(&t.coef);
            }
        }
        Symbol::ALL.into_iter().filter(|s| used[s.slot()]).collect()
    }

    pub fn has_ext_coefficients(&self) -> bool {
        self.terms.iter().any(|t| matches!(t.coef, Coef::Ext(_)))
    }

    pub fn bind(&self, ext: &CubicExt, bindings: &Bindings) -> Result<BoundFamily> {
        let base = |c: &Coef, what: &str| -> Result<FieldElement> {
            match *c {
                Coef::Base(v) => ext.base().element(v),
                Coef::Sym(s) => bindings.require(s),
                Coef::Ext(_) => Err(Error::Param(format!("{what} must lie in the base field"))),
            }
        };
        let a = match &self.frob {
            Some(c) => base(c, "the X^q coefficient")?,
            None => FieldElement::ZERO,
        };
        if self.terms.is_empty() {
            return Ok(BoundFamily { a, gamma: FieldElement::ZERO, terms: Vec::new() });
        }
        let scale = base(&self.scale, "the trace scale")?;
        let gamma = ext.base().mul(scale, bindings.require(Symbol::G)?);
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let coef = match t.coef {
                    Coef::Ext([c0, c1, c2]) => ext.element(c0, c1, c2)?,
                    ref c => ExtElement::embed(base(c, "coefficient")?),
                };
                Ok((coef, t.exp.eval(ext.m())?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundFamily { a, gamma, terms })
    }
}

/// Values for the symbols of a family.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Bindings([Option<FieldElement>; 6]);

impl Bindings {
    pub fn new() -> Self {
        Bindings::default()
    }

    pub fn with(mut self, s: Symbol, v: FieldElement) -> Self {
        self.set(s, v);
        self
    }

    pub fn set(&mut self, s: Symbol, v: FieldElement) {
        self.0[s.slot()] = Some(v);
    }

    pub fn get(&self, s: Symbol) -> Option<FieldElement> {
        self.0[s.slot()]
    }

    /// Value of the symbol, with unbound symbols read as zero.
    pub fn value(&self, s: Symbol) -> FieldElement {
        self.get(s).unwrap_or_default()
    }

    pub fn require(&self, s: Symbol) -> Result<FieldElement> {
        self.get(s).ok_or_else(|| Error::Param(format!("symbol {s} is not bound")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, FieldElement)> + '_ {
        Symbol::ALL.into_iter().filter_map(|s| self.get(s).map(|v| (s, v)))
    }
}

impl fmt::Display for Bindings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(s, v)| format!("{s}={v}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// A family with every coefficient resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundFamily {
    pub a: FieldElement,
    pub gamma: FieldElement,
    /// `(coefficient, exponent in [1, q^3 - 1])`.
    pub terms: Vec<(ExtElement, u64)>,
}

impl BoundFamily {
    /// `h(X)`, with `0^e = 0` since every exponent is at least 1.
    pub fn h(&self, ext: &CubicExt, x: ExtElement) -> ExtElement {
        self.terms.iter().fold(ExtElement::ZERO, |acc, &(c, e)| acc + ext.mul(c, ext.pow(x, e)))
    }

    /// Direct evaluation: `X + a X^q + gamma (h + h^q + h^{q^2})`.
    pub fn eval(&self, ext: &CubicExt, x: ExtElement) -> ExtElement {
        let h = self.h(ext, x);
        let h1 = ext.frobenius(h);
        let tr = h + h1 + ext.frobenius(h1);
        debug_assert!(tr.is_base());
        x + ext.scale(self.a, ext.frobenius(x)) + ExtElement::embed(ext.base().mul(self.gamma, tr.c0()))
    }
}

/// Direct evaluation of a spec at one point.
pub fn eval_family(ext: &CubicExt, spec: &FamilySpec, bindings: &Bindings, x: ExtElement) -> Result<ExtElement> {
    Ok(spec.bind(ext, bindings)?.eval(ext, x))
}

/// Largest m for which [`CompiledFamily`] tabulates the whole extension.
pub const COMPILE_MAX_M: u32 = 8;

/// Per-point trace tables for a family template, so that a sweep over many
/// coefficient bindings costs a handful of base-field multiplications per
/// point.
///
/// For each term with a base-field (or symbolic) coefficient the table holds
/// `Tr(X^e)`; GF(q)-linearity of the trace then gives
/// `Tr(h(X)) = sum c_k Tr(X^{e_k})`. Terms with extension-field literal
/// coefficients are summed into a fixed column `Tr(c X^e)`.
pub struct CompiledFamily {
    ext: CubicExt,
    spec: FamilySpec,
    /// Coefficient of each tabulated column.
    columns: Vec<Coef>,
    /// `traces[k][idx]` for column k.
    traces: Vec<Vec<u32>>,
    fixed: Option<Vec<u32>>,
}

impl CompiledFamily {
    pub fn new(ext: &CubicExt, spec: &FamilySpec) -> Result<Self> {
        if ext.m() > COMPILE_MAX_M {
            return Err(Error::Param(format!("tabulation limited to m <= {COMPILE_MAX_M}, got {}", ext.m())));
        }
        let size = ext.size() as usize;
        let mut columns = Vec::new();
        let mut traces = Vec::new();
        let mut fixed_terms = Vec::new();
        for t in &spec.terms {
            let e = t.exp.eval(ext.m())?;
            match t.coef {
                Coef::Ext([c0, c1, c2]) => fixed_terms.push((ext.element(c0, c1, c2)?, e)),
                c => {
                    columns.push(c);
                    traces.push(
                        (0..size as u64)
                            .into_par_iter()
                            .map(|i| ext.trace_linear(ext.pow(ext.from_index(i), e)).value())
                            .collect(),
                    );
                }
            }
        }
        let fixed = (!fixed_terms.is_empty()).then(|| {
            (0..size as u64)
                .into_par_iter()
                .map(|i| {
                    let x = ext.from_index(i);
                    let s = fixed_terms.iter().fold(ExtElement::ZERO, |acc, &(c, e)| acc + ext.mul(c, ext.pow(x, e)));
                    ext.trace_linear(s).value()
                })
                .collect()
        });
        Ok(CompiledFamily { ext: ext.clone(), spec: spec.clone(), columns, traces, fixed })
    }

    pub fn ext(&self) -> &CubicExt {
        &self.ext
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    /// Resolves the coefficients for one binding.
    pub fn instance(&self, bindings: &Bindings) -> Result<CompiledInstance<'_>> {
        let f = self.ext.base();
        let resolve = |c: &Coef| -> Result<FieldElement> {
            match *c {
                Coef::Base(v) => f.element(v),
                Coef::Sym(s) => bindings.require(s),
                Coef::Ext(_) => Err(Error::Param("extension coefficient outside the trace".into())),
            }
        };
        let a = match &self.spec.frob {
            Some(c) => resolve(c)?,
            None => FieldElement::ZERO,
        };
        let gamma = if self.spec.terms.is_empty() {
            FieldElement::ZERO
        } else {
            f.mul(resolve(&self.spec.scale)?, bindings.require(Symbol::G)?)
        };
        let coeffs = self.columns.iter().map(resolve).collect::<Result<Vec<_>>>()?;
        Ok(CompiledInstance { family: self, a, gamma, coeffs })
    }
}

pub struct CompiledInstance<'a> {
    family: &'a CompiledFamily,
    a: FieldElement,
    gamma: FieldElement,
    coeffs: Vec<FieldElement>,
}

impl CompiledInstance<'_> {
    /// `Tr(h(X))` from the tables.
    #[inline]
    pub fn trace_h(&self, idx: u64) -> FieldElement {
        let fam = self.family;
        let f = fam.ext.base();
        let mut acc = match &fam.fixed {
            Some(col) => FieldElement::from_raw(col[idx as usize]),
            None => FieldElement::ZERO,
        };
        for (c, col) in self.coeffs.iter().zip(&fam.traces) {
            acc += f.mul(*c, FieldElement::from_raw(col[idx as usize]));
        }
        acc
    }

    /// Packed index of `f(X)` for the packed input index.
    #[inline]
    pub fn eval_index(&self, idx: u64) -> u64 {
        let ext = &self.family.ext;
        let x = ext.from_index(idx);
        let ax = ext.scale(self.a, ext.frobenius(x));
        let t = ext.base().mul(self.gamma, self.trace_h(idx));
        idx ^ ext.index(ax) ^ t.value() as u64
    }

    pub fn eval(&self, x: ExtElement) -> ExtElement {
        let ext = &self.family.ext;
        ext.from_index(self.eval_index(ext.index(x)))
    }
}

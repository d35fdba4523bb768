//! Text form of family specifications.
//!
//! ```text
//! family   := "X" ("+" coef? "X^q")? ("+" coef? "g*Tr(" hterms ")")?
//! hterms   := hterm ("+" hterm)*
//! hterm    := coef? "X^{" exponent "}"
//! exponent := ( "(" sum ")" | sum ) ("/2")? ("*2^" int)?
//! sum      := prod (("+" | "-") prod)*
//! prod     := int | int? "q" ("^" int)?          power of q at most 3
//! coef     := "0x" hex (":" hex ":" hex)? | "c1" | "c2" | "c3" | "c4" | "a" | "g"
//! ```
//!
//! Whitespace between tokens is ignored. A three-part literal `0xC2:C1:C0`
//! is an element of GF(q^3) given by its coordinates on `t^2, t, 1`. The
//! parser works on raw bytes and reports every rejection with a byte offset.

use crate::error::{Error, ParseError, Result};
use crate::families::{Coef, ExponentExpr, FamilySpec, HTerm, Symbol};

/// Largest decimal literal accepted in exponents; keeps every sum in range.
const MAX_INT: i64 = 1_000_000_000_000;
const MAX_HEX_DIGITS: usize = 8;

pub fn parse_family(s: &str) -> Result<FamilySpec> {
    parse_family_bytes(s.as_bytes())
}

pub fn parse_family_bytes(src: &[u8]) -> Result<FamilySpec> {
    let mut p = Parser { src, pos: 0 };
    let spec = p.family()?;
    Ok(spec)
}

/// Canonical text: terms in normal order, single spaces around `+`.
pub fn print_family(spec: &FamilySpec) -> String {
    let mut out = String::from("X");
    if let Some(c) = &spec.frob {
        out.push_str(&format!(" + {}X^q", c.prefix()));
    }
    if !spec.terms.is_empty() {
        let terms: Vec<String> = spec.terms.iter().map(|t| format!("{}X^{{{}}}", t.coef.prefix(), t.exp)).collect();
        out.push_str(&format!(" + {}g*Tr({})", spec.scale.prefix(), terms.join(" + ")));
    }
    out
}

/// Parses a single exponent expression such as `(q^2+q+2)/2*2^3`.
pub fn parse_exponent(s: &str) -> Result<ExponentExpr> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let start = p.pos;
    let e = p.exponent()?;
    p.expect_end()?;
    p.validate_exponent(e, start)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    /// Next byte without skipping whitespace.
    fn peek_raw(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn error(&mut self, expected: &[&'static str]) -> Error {
        self.skip_ws();
        Error::Parse(ParseError {
            offset: self.pos,
            expected: expected.to_vec(),
            found: self.src.get(self.pos).map(|&b| char::from(b)),
        })
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8, name: &'static str) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error(&["end of input"])),
        }
    }

    fn family(&mut self) -> Result<FamilySpec> {
        self.expect(b'X', "\"X\"")?;
        let mut spec = FamilySpec::default();
        let mut frob_allowed = true;
        while self.eat(b'+') {
            let coef = if self.at_trace_keyword() { None } else { self.coef()? };
            match self.peek() {
                Some(b'X') if frob_allowed => {
                    self.pos += 1;
                    self.expect(b'^', "\"^\"")?;
                    self.expect(b'q', "\"q\"")?;
                    spec.frob = Some(coef.unwrap_or(Coef::ONE));
                    frob_allowed = false;
                }
                Some(b'g') => {
                    self.trace_keyword()?;
                    spec.scale = coef.unwrap_or(Coef::ONE);
                    spec.terms = self.hterms()?;
                    self.expect(b')', "\")\"")?;
                    spec.normalize();
                    self.expect_end()?;
                    return Ok(spec);
                }
                _ if frob_allowed => return Err(self.error(&["\"X^q\"", "\"g*Tr(\""])),
                _ => return Err(self.error(&["\"g*Tr(\""])),
            }
        }
        self.expect_end()?;
        Ok(spec)
    }

    /// `g` followed by `*` starts the trace clause; any other `g` is a
    /// coefficient.
    fn at_trace_keyword(&mut self) -> bool {
        if self.peek() != Some(b'g') {
            return false;
        }
        let save = self.pos;
        self.pos += 1;
        let star = self.peek() == Some(b'*');
        self.pos = save;
        star
    }

    fn trace_keyword(&mut self) -> Result<()> {
        self.expect(b'g', "\"g*Tr(\"")?;
        self.expect(b'*', "\"*\"")?;
        self.expect(b'T', "\"Tr\"")?;
        if self.peek_raw() != Some(b'r') {
            return Err(self.error(&["\"Tr\""]));
        }
        self.pos += 1;
        self.expect(b'(', "\"(\"")
    }

    fn hterms(&mut self) -> Result<Vec<HTerm>> {
        let mut terms = vec![self.hterm()?];
        while self.eat(b'+') {
            terms.push(self.hterm()?);
        }
        Ok(terms)
    }

    fn hterm(&mut self) -> Result<HTerm> {
        let coef = self.coef()?.unwrap_or(Coef::ONE);
        self.expect(b'X', "\"X^{\"")?;
        self.expect(b'^', "\"^\"")?;
        self.expect(b'{', "\"{\"")?;
        let start = self.pos;
        let exp = self.exponent()?;
        self.expect(b'}', "\"}\"")?;
        let exp = self.validate_exponent(exp, start)?;
        Ok(HTerm::new(coef, exp))
    }

    fn validate_exponent(&self, e: ExponentExpr, start: usize) -> Result<ExponentExpr> {
        if e.is_zero_poly() {
            return Err(Error::ExprInvalid(format!("exponent at byte {start} is the zero polynomial")));
        }
        Ok(e)
    }

    fn coef(&mut self) -> Result<Option<Coef>> {
        let Some(b) = self.peek() else {
            return Err(self.error(&["coefficient", "\"X\""]));
        };
        let sym = |s| Ok(Some(Coef::Sym(s)));
        match b {
            b'0' => self.hex_coef().map(Some),
            b'a' => {
                self.pos += 1;
                sym(Symbol::A)
            }
            b'g' => {
                self.pos += 1;
                sym(Symbol::G)
            }
            b'c' => {
                self.pos += 1;
                let s = match self.peek_raw() {
                    Some(b'1') => Symbol::C1,
                    Some(b'2') => Symbol::C2,
                    Some(b'3') => Symbol::C3,
                    Some(b'4') => Symbol::C4,
                    _ => return Err(self.error(&["\"1\"", "\"2\"", "\"3\"", "\"4\""])),
                };
                self.pos += 1;
                sym(s)
            }
            _ => Ok(None),
        }
    }

    fn hex_coef(&mut self) -> Result<Coef> {
        self.expect(b'0', "\"0x\"")?;
        if self.peek_raw() != Some(b'x') {
            return Err(self.error(&["\"x\""]));
        }
        self.pos += 1;
        let c2 = self.hex_digits()?;
        if self.peek_raw() != Some(b':') {
            return Ok(Coef::Base(c2));
        }
        self.pos += 1;
        let c1 = self.hex_digits()?;
        if self.peek_raw() != Some(b':') {
            return Err(self.error(&["\":\""]));
        }
        self.pos += 1;
        let c0 = self.hex_digits()?;
        Ok(if c1 == 0 && c2 == 0 { Coef::Base(c0) } else { Coef::Ext([c0, c1, c2]) })
    }

    fn hex_digits(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.peek_raw().is_some_and(|b| b.is_ascii_hexdigit()) {
            self.pos += 1;
        }
        let n = self.pos - start;
        if n == 0 {
            return Err(self.error(&["hex digit"]));
        }
        if n > MAX_HEX_DIGITS {
            self.pos = start;
            return Err(self.error(&["at most 8 hex digits"]));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii hex digits");
        Ok(u32::from_str_radix(text, 16).expect("at most 8 hex digits"))
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let mut v: i64 = 0;
        while let Some(b) = self.peek_raw().filter(u8::is_ascii_digit) {
            v = v * 10 + (b - b'0') as i64;
            if v > MAX_INT {
                self.pos = start;
                return Err(self.error(&["integer at most 10^12"]));
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error(&["integer"]));
        }
        Ok(v)
    }

    fn exponent(&mut self) -> Result<ExponentExpr> {
        let coeffs = if self.eat(b'(') {
            let c = self.sum()?;
            self.expect(b')', "\")\"")?;
            c
        } else {
            self.sum()?
        };
        let mut e = ExponentExpr::poly(coeffs);
        if self.eat(b'/') {
            self.expect(b'2', "\"2\"")?;
            e = e.halved();
        }
        if self.eat(b'*') {
            self.expect(b'2', "\"2\"")?;
            self.expect(b'^', "\"^\"")?;
            let j = self.int()?;
            let j = u32::try_from(j).map_err(|_| self.error(&["twist below 2^32"]))?;
            e = e.twisted(j);
        }
        Ok(e)
    }

    fn sum(&mut self) -> Result<[i64; 4]> {
        let mut coeffs = [0i64; 4];
        let (k, c) = self.prod()?;
        coeffs[k] += c;
        loop {
            let sign = if self.eat(b'+') {
                1
            } else if self.eat(b'-') {
                -1
            } else {
                return Ok(coeffs);
            };
            let (k, c) = self.prod()?;
            coeffs[k] += sign * c;
        }
    }

    /// One monomial `c q^k` as `(k, c)`.
    fn prod(&mut self) -> Result<(usize, i64)> {
        let c = match self.peek() {
            Some(b) if b.is_ascii_digit() => Some(self.int()?),
            Some(b'q') => None,
            _ => return Err(self.error(&["integer", "\"q\""])),
        };
        if !self.eat(b'q') {
            return match c {
                Some(c) => Ok((0, c)),
                None => Err(self.error(&["\"q\""])),
            };
        }
        let k = if self.eat(b'^') {
            let save = self.pos;
            let k = self.int()?;
            if k > 3 {
                self.pos = save;
                return Err(self.error(&["power of q at most 3"]));
            }
            k as usize
        } else {
            1
        };
        Ok((k, c.unwrap_or(1)))
    }
}

use std::fmt;

use crate::error::{Error, Result};

/// An exponent written as a polynomial in q, optionally halved and twisted.
///
/// Evaluation happens modulo `q^3 - 1` with results normalized into
/// `[1, q^3 - 1]`: `X^(q^3-1)` vanishes at 0, so residue 0 must map to
/// `q^3 - 1` rather than to the constant exponent 0. Halving multiplies by the
/// inverse of 2 modulo `q^3 - 1`, which is `2^(3m-1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExponentExpr {
    /// Coefficients of `1, q, q^2, q^3`.
    pub coeffs: [i64; 4],
    pub halve: bool,
    /// Extra factor `2^twist`.
    pub twist: u32,
}

impl ExponentExpr {
    pub const fn poly(coeffs: [i64; 4]) -> Self {
        ExponentExpr { coeffs, halve: false, twist: 0 }
    }

    pub const fn constant(e: i64) -> Self {
        ExponentExpr::poly([e, 0, 0, 0])
    }

    /// `2^i + 2^j q`.
    pub fn binary_pair(i: u32, j: u32) -> Self {
        ExponentExpr::poly([1 << i, 1 << j, 0, 0])
    }

    pub const fn halved(mut self) -> Self {
        self.halve = true;
        self
    }

    pub const fn twisted(mut self, j: u32) -> Self {
        self.twist = j;
        self
    }

    pub fn is_zero_poly(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    /// Concrete exponent in `[1, q^3 - 1]` for q = 2^m.
    pub fn eval(&self, m: u32) -> Result<u64> {
        if self.is_zero_poly() {
            return Err(Error::ExprInvalid(format!("exponent {self} is the zero polynomial")));
        }
        if !(1..=21).contains(&m) {
            return Err(Error::ExprInvalid(format!("m = {m} out of range")));
        }
        let n = (1i128 << (3 * m)) - 1;
        let q = 1i128 << m;
        let mut value = 0i128;
        for &c in self.coeffs.iter().rev() {
            value = (value * q + c as i128).rem_euclid(n);
        }
        let normalize = |v: i128| if v == 0 { n } else { v };
        let mut r = normalize(value);
        if self.halve {
            r = normalize(r * (1i128 << (3 * m - 1)) % n);
        }
        let twist = self.twist % (3 * m);
        if twist != 0 {
            r = normalize(r * (1i128 << twist) % n);
        }
        Ok(r as u64)
    }

    /// Ordering key used by the canonical printer.
    pub(crate) fn sort_key(&self) -> (usize, [i64; 4], bool, u32) {
        let c = self.coeffs;
        (self.degree().unwrap_or(0), [c[3], c[2], c[1], c[0]], self.halve, self.twist)
    }

    fn fmt_sum(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, i64)> =
            (0..4).rev().filter(|&k| self.coeffs[k] != 0).map(|k| (k, self.coeffs[k])).collect();
        // The grammar has no unary minus, so lead with a positive term.
        let lead = terms.iter().position(|&(_, c)| c > 0);
        let order: Vec<(usize, i64)> = match lead {
            Some(p) => std::iter::once(terms[p])
                .chain(terms.iter().enumerate().filter(|&(i, _)| i != p).map(|(_, &t)| t))
                .collect(),
            None => {
                write!(f, "0")?;
                terms
            }
        };
        for (idx, (k, c)) in order.into_iter().enumerate() {
            if idx > 0 || c < 0 {
                write!(f, "{}", if c < 0 { '-' } else { '+' })?;
            }
            let mag = c.unsigned_abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "q")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for ExponentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero_poly() {
            return write!(f, "0");
        }
        let wrap = self.halve || self.twist != 0;
        if wrap {
            write!(f, "(")?;
        }
        self.fmt_sum(f)?;
        if wrap {
            write!(f, ")")?;
        }
        if self.halve {
            write!(f, "/2")?;
        }
        if self.twist != 0 {
            write!(f, "*2^{}", self.twist)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Inverse of 2 modulo n by exhaustive search.
    fn inv2_brute(n: u64) -> u64 {
        (1..n).find(|k| 2 * k % n == 1).unwrap()
    }

    #[test]
    fn m2_examples() {
        assert_eq!(inv2_brute(63), 32);
        assert_eq!(ExponentExpr::poly([1, 2, 0, 0]).eval(2).unwrap(), 9);
        assert_eq!(ExponentExpr::poly([2, 1, 1, 0]).halved().eval(2).unwrap(), 11);
        assert_eq!(22 * 32 % 63, 11);
        assert_eq!(ExponentExpr::poly([1, 1, 0, 0]).halved().eval(2).unwrap(), 34);
        assert_eq!(5 * 32 % 63, 34);
    }

    #[test]
    fn halving_matches_modular_inverse() {
        for m in 1..=6u32 {
            let n = (1u64 << (3 * m)) - 1;
            let inv2 = inv2_brute(n);
            for e in 1..200i64 {
                let got = ExponentExpr::constant(e).halved().eval(m).unwrap();
                let want = match (e as u64 % n * inv2) % n {
                    0 => n,
                    r => r,
                };
                assert_eq!(got, want);
                if e % 2 == 0 && (e as u64) < 2 * n {
                    let direct = (e / 2) as u64 % n;
                    assert_eq!(got, if direct == 0 { n } else { direct });
                }
            }
        }
    }

    #[test]
    fn normalization() {
        // q^3 - 1 itself and multiples stay nonzero
        assert_eq!(ExponentExpr::poly([-1, 0, 0, 1]).eval(2).unwrap(), 63);
        assert_eq!(ExponentExpr::constant(126).eval(2).unwrap(), 63);
        assert_eq!(ExponentExpr::poly([0, 0, 0, 1]).eval(2).unwrap(), 1);
        // q^2 - q + 1 at q = 4 is 13
        assert_eq!(ExponentExpr::poly([1, -1, 1, 0]).eval(2).unwrap(), 13);
        assert!(matches!(ExponentExpr::default().eval(2), Err(Error::ExprInvalid(_))));
        // (q^3+2q)/2 agrees with (2q+1)/2 since q^3 = 1
        assert_eq!(
            ExponentExpr::poly([0, 2, 0, 1]).halved().eval(3).unwrap(),
            ExponentExpr::poly([1, 2, 0, 0]).halved().eval(3).unwrap()
        );
    }

    #[test]
    fn twist() {
        let base = ExponentExpr::poly([2, 1, 1, 0]).halved();
        for m in 1..=4 {
            let n = (1u64 << (3 * m)) - 1;
            let e = base.eval(m).unwrap();
            for j in 0..8 {
                let want = match e * (1 << j) % n {
                    0 => n,
                    r => r,
                };
                assert_eq!(base.twisted(j).eval(m).unwrap(), want);
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(ExponentExpr::poly([1, 2, 0, 0]).to_string(), "2q+1");
        assert_eq!(ExponentExpr::poly([1, -1, 1, 0]).halved().to_string(), "(q^2-q+1)/2");
        assert_eq!(ExponentExpr::poly([2, -1, 0, 0]).to_string(), "2-q");
        assert_eq!(ExponentExpr::poly([0, -1, 0, 0]).to_string(), "0-q");
        assert_eq!(ExponentExpr::poly([2, 1, 1, 0]).halved().twisted(2).to_string(), "(q^2+q+2)/2*2^2");
        assert_eq!(ExponentExpr::constant(3).to_string(), "3");
        assert_eq!(ExponentExpr::poly([0, 0, 0, 1]).to_string(), "q^3");
    }
}

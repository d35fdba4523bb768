//! Brute-force bijection tests.
//!
//! The oracle behind every verification: evaluate on the whole domain and
//! track outputs in an occupancy bitset. The collision witness is always the
//! pair `(i, j)` with the smallest `j` such that some earlier `i` maps to the
//! same value, so serial and parallel runs report identical results.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::basis::{TraceZeroBasis, Xyz};
use crate::error::{Error, Result};
use crate::families::BoundFamily;
use crate::fq3::{CubicExt, ExtElement};
use crate::gf2m::FieldElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PermResult {
    pub is_perm: bool,
    pub collision: Option<(u64, u64)>,
    pub domain_size: u64,
}

struct Bitset(Vec<u64>);

impl Bitset {
    fn new(size: u64) -> Self {
        Bitset(vec![0; size.div_ceil(64) as usize])
    }

    /// Sets bit `i`, returning whether it was already set.
    #[inline]
    fn test_and_set(&mut self, i: u64) -> bool {
        let (w, b) = ((i / 64) as usize, 1u64 << (i % 64));
        let was = self.0[w] & b != 0;
        self.0[w] |= b;
        was
    }
}

fn range_error(input: u64, output: u64, size: u64) -> Error {
    Error::EvalRange { input, output, size }
}

/// Serial occupancy check with early exit on the first collision.
pub fn is_permutation<F>(eval: F, size: u64) -> Result<PermResult>
where
    F: Fn(u64) -> u64,
{
    let mut seen = Bitset::new(size);
    for j in 0..size {
        let v = eval(j);
        if v >= size {
            return Err(range_error(j, v, size));
        }
        if seen.test_and_set(v) {
            let i =
                (0..j).find(|&i| eval(i) == v).ok_or_else(|| Error::Internal("eval is not deterministic".into()))?;
            return Ok(PermResult { is_perm: false, collision: Some((i, j)), domain_size: size });
        }
    }
    Ok(PermResult { is_perm: true, collision: None, domain_size: size })
}

/// Parallel variant. Workers share an atomic occupancy bitset; when any
/// worker sees a repeated or out-of-range output, the canonical witness is
/// recovered with a serial scan so the result never depends on scheduling.
pub fn is_permutation_par<F>(eval: F, size: u64) -> Result<PermResult>
where
    F: Fn(u64) -> u64 + Sync,
{
    const CHUNK: u64 = 1 << 14;
    let words: Vec<AtomicU64> = (0..size.div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
    let anomaly = AtomicBool::new(false);
    (0..size.div_ceil(CHUNK)).into_par_iter().for_each(|chunk| {
        let start = chunk * CHUNK;
        for j in start..(start + CHUNK).min(size) {
            if anomaly.load(Ordering::Relaxed) {
                return;
            }
            let v = eval(j);
            if v >= size {
                anomaly.store(true, Ordering::Relaxed);
                return;
            }
            let bit = 1u64 << (v % 64);
            if words[(v / 64) as usize].fetch_or(bit, Ordering::Relaxed) & bit != 0 {
                anomaly.store(true, Ordering::Relaxed);
                return;
            }
        }
    });
    if anomaly.load(Ordering::Relaxed) {
        is_permutation(eval, size)
    } else {
        Ok(PermResult { is_perm: true, collision: None, domain_size: size })
    }
}

/// Whether `x -> map(x)` permutes GF(q), q = 2^m.
pub fn permutes_base_field<F>(q: u32, map: F) -> bool
where
    F: Fn(FieldElement) -> FieldElement,
{
    let mut seen = vec![false; q as usize];
    for x in 0..q {
        let v = map(FieldElement::from_raw(x)).value() as usize;
        if v >= seen.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Permutation test of a map on GF(q^3), indexed by packed coordinates.
pub fn permutes_ext<F>(ext: &CubicExt, map: F) -> Result<PermResult>
where
    F: Fn(ExtElement) -> ExtElement + Sync,
{
    let eval = |i: u64| ext.index(map(ext.from_index(i)));
    if ext.m() <= 5 {
        is_permutation(eval, ext.size())
    } else {
        is_permutation_par(eval, ext.size())
    }
}

fn check_slice_hypothesis(ext: &CubicExt, a: FieldElement) -> Result<()> {
    let f = ext.base();
    if (f.square(a) + a + FieldElement::ONE).is_zero() {
        return Err(Error::Hypothesis(format!("a = {a} satisfies a^2 + a + 1 = 0")));
    }
    Ok(())
}

/// Both sides of the slice criterion, computed independently.
///
/// `lhs`: `f` permutes GF(q^3). `rhs`: for every `(y, z)`, the map
/// `x -> (a+1) x + gamma Tr(h(x + y alpha + z alpha^q))` permutes GF(q).
pub fn slice_reduction_check(basis: &TraceZeroBasis, family: &BoundFamily) -> Result<(bool, bool)> {
    let ext = basis.ext();
    check_slice_hypothesis(ext, family.a)?;
    let lhs = permutes_ext(ext, |x| family.eval(ext, x))?.is_perm;

    let f = ext.base();
    let a1 = family.a + FieldElement::ONE;
    let rhs = f.elements().all(|y| {
        f.elements().all(|z| {
            permutes_base_field(f.q(), |x| {
                let big_x = basis.compose(Xyz::new(x, y, z));
                let h = family.h(ext, big_x);
                let tr = ext.trace(h).expect("trace lands in the base field");
                f.mul(a1, x) + f.mul(family.gamma, tr)
            })
        })
    });
    Ok((lhs, rhs))
}

/// `f` is a PP iff `c f(d X) + b` is, for `c, d != 0`. Returns whether the two
/// brute-force verdicts agree.
pub fn affine_equiv_check<F>(ext: &CubicExt, f: F, c: ExtElement, d: ExtElement, b: ExtElement) -> Result<bool>
where
    F: Fn(ExtElement) -> ExtElement + Sync,
{
    if c.is_zero() || d.is_zero() {
        return Err(Error::Param("c and d must be nonzero".into()));
    }
    let plain = permutes_ext(ext, &f)?.is_perm;
    let transformed = permutes_ext(ext, |x| ext.mul(c, f(ext.mul(d, x))) + b)?.is_perm;
    Ok(plain == transformed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{Bindings, Coef, ExponentExpr, FamilySpec, HTerm, Symbol};
    use crate::rng::SplitMix64;

    fn sort_oracle(outputs: &[u64]) -> bool {
        let mut v = outputs.to_vec();
        v.sort_unstable();
        v.iter().enumerate().all(|(i, &x)| x == i as u64)
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn identity_and_squaring() {
        assert!(is_permutation(|i| i, 64).unwrap().is_perm);
        let ext = CubicExt::with_defaults(2).unwrap();
        assert!(permutes_ext(&ext, |x| ext.square(x)).unwrap().is_perm);
    }

    #[test]
    fn cube_map_collides() {
        let ext = CubicExt::with_defaults(2).unwrap();
        assert_eq!(gcd(3, 63), 3);
        let r = permutes_ext(&ext, |x| ext.pow(x, 3)).unwrap();
        assert!(!r.is_perm);
        let (i, j) = r.collision.unwrap();
        assert!(i < j);
        let (xi, xj) = (ext.from_index(i), ext.from_index(j));
        assert_eq!(ext.pow(xi, 3), ext.pow(xj, 3));
        // xi / xj is a nontrivial cube root of unity
        let ratio = ext.mul(xi, ext.inv(xj).unwrap());
        assert_ne!(ratio, ExtElement::ONE);
        assert_eq!(ext.pow(ratio, 3), ExtElement::ONE);
    }

    #[test]
    fn monomials_follow_gcd_rule() {
        let ext = CubicExt::with_defaults(2).unwrap();
        for k in 1..63 {
            let r = permutes_ext(&ext, |x| ext.pow(x, k)).unwrap();
            assert_eq!(r.is_perm, gcd(k, 63) == 1, "k = {k}");
        }
    }

    #[test]
    fn range_error() {
        assert!(matches!(is_permutation(|i| i + 1, 8), Err(Error::EvalRange { input: 7, .. })));
        assert!(matches!(is_permutation_par(|i| i + 1, 8), Err(Error::EvalRange { input: 7, .. })));
    }

    #[test]
    fn agrees_with_sort_oracle_and_parallel() {
        let mut rng = SplitMix64::new(7);
        for size in [16u64, 64, 512, 40_000] {
            for trial in 0..100 {
                // mix of random permutations and random maps
                let mut outputs: Vec<u64> = (0..size).collect();
                if trial % 2 == 0 {
                    for i in (1..size as usize).rev() {
                        let j = rng.below(i as u64 + 1) as usize;
                        outputs.swap(i, j);
                    }
                    if trial % 4 == 0 {
                        let k = rng.below(size) as usize;
                        outputs[k] = outputs[(k + 1) % size as usize];
                    }
                } else {
                    outputs.iter_mut().for_each(|o| *o = rng.below(size));
                }
                let serial = is_permutation(|i| outputs[i as usize], size).unwrap();
                let par = is_permutation_par(|i| outputs[i as usize], size).unwrap();
                assert_eq!(serial.is_perm, sort_oracle(&outputs));
                assert_eq!(serial, par);
                if let Some((i, j)) = serial.collision {
                    assert_eq!(outputs[i as usize], outputs[j as usize]);
                    let mut seen = std::collections::HashSet::new();
                    assert!(outputs[..j as usize].iter().all(|o| seen.insert(*o)));
                }
            }
        }
    }

    fn bound(ext: &CubicExt, a: u32, g: u32, terms: Vec<HTerm>) -> BoundFamily {
        let spec = FamilySpec::new(Some(Coef::Sym(Symbol::A)), terms);
        let b = Bindings::new().with(Symbol::A, FieldElement::from_raw(a)).with(Symbol::G, FieldElement::from_raw(g));
        spec.bind(ext, &b).unwrap()
    }

    #[test]
    fn slice_reduction_examples() {
        let ext = CubicExt::with_defaults(2).unwrap();
        let basis = TraceZeroBasis::derive(&ext).unwrap();
        // h = 0
        assert_eq!(slice_reduction_check(&basis, &bound(&ext, 0, 1, vec![])).unwrap(), (true, true));
        assert_eq!(slice_reduction_check(&basis, &bound(&ext, 1, 1, vec![])).unwrap(), (false, false));
        let cube = vec![HTerm::new(Coef::ONE, ExponentExpr::constant(3))];
        let (lhs, rhs) = slice_reduction_check(&basis, &bound(&ext, 0, 1, cube)).unwrap();
        assert_eq!(lhs, rhs);
        // a = t satisfies a^2 + a + 1 = 0 in GF(4)
        assert!(matches!(slice_reduction_check(&basis, &bound(&ext, 2, 1, vec![])), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn affine_equivalence() {
        let ext = CubicExt::with_defaults(2).unwrap();
        let mut rng = SplitMix64::new(11);
        for _ in 0..10 {
            let c = ext.from_index(1 + rng.below(63));
            let d = ext.from_index(1 + rng.below(63));
            let b = ext.from_index(rng.below(64));
            assert!(affine_equiv_check(&ext, |x| x, c, d, b).unwrap());
            assert!(affine_equiv_check(&ext, |x| ext.pow(x, 3), c, d, b).unwrap());
            assert!(!permutes_ext(&ext, |x| ext.mul(c, ext.pow(ext.mul(d, x), 3)) + b).unwrap().is_perm);
        }
        assert!(matches!(
            affine_equiv_check(&ext, |x| x, ExtElement::ZERO, ExtElement::ONE, ExtElement::ZERO),
            Err(Error::Param(_))
        ));
    }
}

//! Property suites over small fields.

use proptest::prelude::*;
use tracepp::families::{
    apply_equiv_transform, eval_family, Bindings, Coef, EquivTransform, ExponentExpr, FamilySpec, HTerm, Symbol,
};
use tracepp::fq3::CubicExt;
use tracepp::gf2m::FieldElement;
use tracepp::permcheck::permutes_ext;
use tracepp::specparse::{parse_family, print_family};

fn ext(m: u32) -> CubicExt {
    CubicExt::with_defaults(m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Doubling an exponent squares the trace.
    #[test]
    fn doubled_exponent_squares_trace(m in 1u32..=3, e in 1i64..4096) {
        let ext = ext(m);
        let e1 = ExponentExpr::constant(e).eval(m).unwrap();
        let e2 = ExponentExpr::constant(2 * e).eval(m).unwrap();
        let f = ext.base();
        for x in ext.elements() {
            let t1 = ext.trace_linear(ext.pow(x, e1));
            let t2 = ext.trace_linear(ext.pow(x, e2));
            prop_assert_eq!(t2, f.square(t1));
        }
    }

    #[test]
    fn exponents_land_in_range(m in 1u32..=8, c in prop::array::uniform4(-50i64..50), halve: bool, twist in 0u32..6) {
        let mut e = ExponentExpr::poly(c);
        e.halve = halve;
        e.twist = twist;
        if let Ok(v) = e.eval(m) {
            let order = (1u64 << (3 * m)) - 1;
            prop_assert!((1..=order).contains(&v));
        }
    }

    /// Single pair additions with base-field coefficients keep the
    /// permutation status.
    #[test]
    fn pair_transforms_preserve_permutation(
        m in 2u32..=3,
        a in 0u32..8,
        g in 0u32..8,
        e in 1i64..512,
        i in 0u32..6,
        j in 0u32..6,
        qpair: bool,
    ) {
        let ext = ext(m);
        let q = ext.base().q();
        let (a, g) = (a % q, g % q);
        let fa = FieldElement::from_raw(a);
        prop_assume!(tracepp::families::registry::a_admissible(ext.base(), fa));
        let spec = FamilySpec::new(Some(Coef::Sym(Symbol::A)), vec![HTerm::new(Coef::ONE, ExponentExpr::constant(e))]);
        let t = if qpair { EquivTransform::QPair { i, j } } else { EquivTransform::PlainPair { i, j } };
        let out = apply_equiv_transform(&spec, &t).unwrap();
        let b = Bindings::new().with(Symbol::A, fa).with(Symbol::G, FieldElement::from_raw(g));
        let perm = |s: &FamilySpec| permutes_ext(&ext, |x| eval_family(&ext, s, &b, x).unwrap()).unwrap().is_perm;
        prop_assert_eq!(perm(&spec), perm(&out));
    }

    #[test]
    fn printed_specs_reparse(e1 in 1i64..10_000, e2 in 1i64..10_000, c in 1u32..256, frob: bool) {
        let spec = FamilySpec::new(
            frob.then_some(Coef::Sym(Symbol::A)),
            vec![HTerm::new(Coef::Base(c), ExponentExpr::constant(e1)), HTerm::new(Coef::ONE, ExponentExpr::constant(e2))],
        );
        let text = print_family(&spec);
        let back = parse_family(&text).unwrap();
        prop_assert_eq!(print_family(&back), text);
    }
}

/// Extension-field coefficients do not preserve the permutation property:
/// X permutes, X + Tr(t (X^2 + X^{q+1})) does not, while the same pair with
/// coefficient 1 keeps it.
#[test]
fn extension_coefficients_can_break_the_equivalence() {
    for m in 1..=3 {
        let ext = ext(m);
        let identity = FamilySpec::new(None, vec![]);
        let with = |c: Coef| {
            let t = EquivTransform::Combined { plain: vec![(0, 0, c)], qpair: vec![] };
            apply_equiv_transform(&identity, &t).unwrap()
        };
        let b = Bindings::new().with(Symbol::G, FieldElement::ONE);
        let perm = |s: &FamilySpec| permutes_ext(&ext, |x| eval_family(&ext, s, &b, x).unwrap()).unwrap().is_perm;
        assert!(perm(&identity));
        assert!(perm(&with(Coef::ONE)), "m={m}");
        assert!(!perm(&with(Coef::Ext([0, 1, 0]))), "m={m}");
    }
}

//! Every family with a permutation claim, together with its condition.
//!
//! Entries store shapes as text in the family grammar; coefficients are
//! swept by the campaign runner over the entry's parameter domains.

use super::spec::{Bindings, FamilySpec, Symbol};
use crate::error::Result;
use crate::gf2m::{FieldElement, FieldParams};
use crate::specparse::parse_family;

/// What a theorem says about one parameter tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Pp,
    NotPp,
    /// No result covers this tuple; the oracle's answer is recorded as data.
    Unclaimed,
}

impl Claim {
    pub fn from_bool(pp: bool) -> Claim {
        if pp {
            Claim::Pp
        } else {
            Claim::NotPp
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Claim::Pp => Some(true),
            Claim::NotPp => Some(false),
            Claim::Unclaimed => None,
        }
    }
}

/// Restriction on m under which a result is stated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    AllM,
    MOdd,
    FourNotDividingM,
    MNotTwoMod3,
    MNotOneMod3,
}

impl Hypothesis {
    pub fn holds(self, m: u32) -> bool {
        match self {
            Hypothesis::AllM => true,
            Hypothesis::MOdd => m % 2 == 1,
            Hypothesis::FourNotDividingM => !m.is_multiple_of(4),
            Hypothesis::MNotTwoMod3 => m % 3 != 2,
            Hypothesis::MNotOneMod3 => m % 3 != 1,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Hypothesis::AllM => "all m",
            Hypothesis::MOdd => "m odd",
            Hypothesis::FourNotDividingM => "m != 0 mod 4",
            Hypothesis::MNotTwoMod3 => "m != 2 mod 3",
            Hypothesis::MNotOneMod3 => "m != 1 mod 3",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamDomain {
    /// Every element of GF(q).
    Full,
    Fixed(u32),
}

#[derive(Clone, Debug)]
pub struct Variant {
    pub label: &'static str,
    pub text: &'static str,
    pub hypothesis: Hypothesis,
}

impl Variant {
    pub fn spec(&self) -> Result<FamilySpec> {
        parse_family(self.text)
    }
}

type Predicate = fn(&FieldParams, &Bindings, bool) -> Claim;

#[derive(Clone)]
pub struct RegistryEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub variants: Vec<Variant>,
    /// Swept symbols in sweep order; `a` is filtered by `a^2 + a + 1 != 0`.
    pub params: Vec<(Symbol, ParamDomain)>,
    predicate: Predicate,
}

impl std::fmt::Debug for RegistryEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RegistryEntry").field("id", &self.id).field("variants", &self.variants).finish()
    }
}

impl RegistryEntry {
    /// Addressable id of a variant: the entry id alone for single-variant
    /// entries, `ID.k` (1-based) otherwise.
    pub fn variant_id(&self, k: usize) -> String {
        if self.variants.len() == 1 {
            self.id.to_string()
        } else {
            format!("{}.{}", self.id, k + 1)
        }
    }

    pub fn claim(&self, variant: usize, field: &FieldParams, bindings: &Bindings) -> Claim {
        let in_hypothesis = self.variants[variant].hypothesis.holds(field.m());
        (self.predicate)(field, bindings, in_hypothesis)
    }

    pub fn has_a(&self) -> bool {
        self.params.iter().any(|(s, _)| *s == Symbol::A)
    }
}

/// Whether `a^2 + a + 1 != 0`, the standing assumption on the X^q coefficient.
pub fn a_admissible(f: &FieldParams, a: FieldElement) -> bool {
    !(f.square(a) + a + FieldElement::ONE).is_zero()
}

/// The three-case characterization of
/// `X + a X^q + gamma Tr(c1 X + c2 X^2 + c3 X^3 + c4 X^{q+2})`.
pub fn tmain_condition(f: &FieldParams, a: FieldElement, gamma: FieldElement, c: [FieldElement; 4]) -> bool {
    let [c1, c2, c3, c4] = c;
    let s = c3 + c4;
    let g_s = f.mul(gamma, s);
    let g_c2 = f.mul(gamma, c2);
    let a1 = a + FieldElement::ONE;
    let linear = a1 + f.mul(gamma, c1);
    let case_i = g_s.is_zero() && g_c2.is_zero() && !linear.is_zero();
    let case_ii = g_s.is_zero() && !g_c2.is_zero() && linear.is_zero();
    let case_iii =
        !g_s.is_zero() && f.mul(gamma, f.mul(c1, c3) + f.mul(c1, c4) + f.square(c2)) == f.mul(a1, s) && f.m() % 2 == 1;
    case_i || case_ii || case_iii
}

fn tmain_predicate(f: &FieldParams, b: &Bindings, _: bool) -> Claim {
    let a = b.value(Symbol::A);
    if !a_admissible(f, a) {
        return Claim::Unclaimed;
    }
    let c = [Symbol::C1, Symbol::C2, Symbol::C3, Symbol::C4].map(|s| b.value(s));
    Claim::from_bool(tmain_condition(f, a, b.value(Symbol::G), c))
}

fn gamma(b: &Bindings) -> u32 {
    b.value(Symbol::G).value()
}

/// PP iff gamma is 0 or 1.
fn gamma_zero_or_one(_: &FieldParams, b: &Bindings, _: bool) -> Claim {
    Claim::from_bool(gamma(b) <= 1)
}

/// PP iff gamma = 0, or gamma = 1 and m odd.
fn gamma_one_m_odd(f: &FieldParams, b: &Bindings, _: bool) -> Claim {
    Claim::from_bool(gamma(b) == 0 || (gamma(b) == 1 && f.m() % 2 == 1))
}

/// PP iff gamma = 0, or gamma = 1 and 4 does not divide m.
fn gamma_one_four_not_dividing(f: &FieldParams, b: &Bindings, _: bool) -> Claim {
    Claim::from_bool(gamma(b) == 0 || (gamma(b) == 1 && !f.m().is_multiple_of(4)))
}

/// gamma in {0, 1} under the m-hypothesis. The necessity of gamma in {0, 1}
/// does not use the hypothesis, so only gamma = 1 is unclaimed outside it.
fn gamma_zero_or_one_hypothesis(_: &FieldParams, b: &Bindings, in_hypothesis: bool) -> Claim {
    match gamma(b) {
        0 => Claim::Pp,
        1 if in_hypothesis => Claim::Pp,
        1 => Claim::Unclaimed,
        _ => Claim::NotPp,
    }
}

fn gamma_zero_only(_: &FieldParams, b: &Bindings, _: bool) -> Claim {
    Claim::from_bool(gamma(b) == 0)
}

/// Entries stated at gamma = 1 only (F1j and the binomial table): PP under
/// the m-condition. Other gamma follow the dichotomy the other families share.
fn gamma_one_pp(_: &FieldParams, b: &Bindings, in_hypothesis: bool) -> Claim {
    match gamma(b) {
        0 => Claim::Pp,
        1 if in_hypothesis => Claim::Pp,
        1 => Claim::Unclaimed,
        _ => Claim::NotPp,
    }
}

fn one_variant(text: &'static str, hypothesis: Hypothesis) -> Vec<Variant> {
    vec![Variant { label: "", text, hypothesis }]
}

const GAMMA_FULL: &[(Symbol, ParamDomain)] = &[(Symbol::G, ParamDomain::Full)];
const GAMMA_ONE: &[(Symbol, ParamDomain)] = &[(Symbol::G, ParamDomain::Fixed(1))];

pub fn registry() -> Vec<RegistryEntry> {
    use Hypothesis::*;
    vec![
        RegistryEntry {
            id: "T-MAIN",
            description: "X + aX^q + g Tr(c1 X + c2 X^2 + c3 X^3 + c4 X^{q+2}): three-case characterization",
            variants: one_variant("X + a X^q + g*Tr(c1 X^{1} + c2 X^{2} + c3 X^{3} + c4 X^{q+2})", AllM),
            params: Symbol::ALL.iter().map(|&s| (s, ParamDomain::Full)).collect(),
            predicate: tmain_predicate,
        },
        RegistryEntry {
            id: "F1",
            description: "PP iff g in {0, 1}",
            variants: one_variant("X + g*Tr(X^{(q+1)/2} + X^{(q^2+q+2)/2})", AllM),
            params: GAMMA_FULL.to_vec(),
            predicate: gamma_zero_or_one,
        },
        RegistryEntry {
            id: "F1j",
            description: "g = 1 with the second exponent twisted by 2^j: always PP",
            variants: vec![
                Variant { label: "j=1", text: "X + g*Tr(X^{(q+1)/2} + X^{(q^2+q+2)/2*2^1})", hypothesis: AllM },
                Variant { label: "j=2", text: "X + g*Tr(X^{(q+1)/2} + X^{(q^2+q+2)/2*2^2})", hypothesis: AllM },
                Variant { label: "j=3", text: "X + g*Tr(X^{(q+1)/2} + X^{(q^2+q+2)/2*2^3})", hypothesis: AllM },
            ],
            params: GAMMA_ONE.to_vec(),
            predicate: gamma_one_pp,
        },
        RegistryEntry {
            id: "F2",
            description: "PP iff g in {0, 1}",
            variants: one_variant("X + g*Tr(X^{(q+1)/2} + X^{(q^2-q+1)/2})", AllM),
            params: GAMMA_FULL.to_vec(),
            predicate: gamma_zero_or_one,
        },
        RegistryEntry {
            id: "F3",
            description: "PP iff g = 0, or g = 1 and m odd",
            variants: vec![
                Variant { label: "s=2q+1", text: "X + g*Tr(X^{(q+1)/2} + X^{2q+1})", hypothesis: AllM },
                Variant { label: "s=(q^3+2q)/2", text: "X + g*Tr(X^{(q+1)/2} + X^{(q^3+2q)/2})", hypothesis: AllM },
            ],
            params: GAMMA_FULL.to_vec(),
            predicate: gamma_one_m_odd,
        },
        RegistryEntry {
            id: "F4",
            description: "PP iff g = 0, or g = 1 and m odd",
            variants: one_variant("X + g*Tr(X^{2q+1} + X^{4q+1})", AllM),
            params: GAMMA_FULL.to_vec(),
            predicate: gamma_one_m_odd,
        },
        RegistryEntry {
            id: "F5",
            description: "PP iff g = 0, or g = 1 and 4 does not divide m",
            variants: one_variant("X + g*Tr(X^{2q+2} + X^{4q+1})", AllM),
            params: GAMMA_FULL.to_vec(),
            predicate: gamma_one_four_not_dividing,
        },
        RegistryEntry {
            id: "F6",
            description: "for m != 2 mod 3: PP iff g in {0, 1}",
            variants: one_variant("X + g*Tr(X^{(q+1)/2} + X^{(q+3)/2})", MNotTwoMod3),
            params: GAMMA_FULL.to_vec(),
            predicate: gamma_zero_or_one_hypothesis,
        },
        RegistryEntry {
            id: "F7",
            description: "for m != 1 mod 3: PP iff g in {0, 1}",
            variants: one_variant("X + g*Tr(X^{(q+1)/2} + X^{(3q+1)/2})", MNotOneMod3),
            params: GAMMA_FULL.to_vec(),
            predicate: gamma_zero_or_one_hypothesis,
        },
        RegistryEntry {
            id: "F8",
            description: "four-term h: PP iff g = 0",
            variants: one_variant("X + g*Tr(X^{(q+1)/2} + X^{(q+3)/2} + X^{(3q+1)/2} + X^{(q^2+q+2)/2})", AllM),
            params: GAMMA_FULL.to_vec(),
            predicate: gamma_zero_only,
        },
        RegistryEntry {
            id: "TBL1",
            description: "binomial h with g = 1, PP under the listed m-condition",
            variants: vec![
                Variant { label: "row 1", text: "X + g*Tr(X^{(q^2+q)/2} + X^{(q^2+q+2)/2})", hypothesis: AllM },
                Variant { label: "row 2", text: "X + g*Tr(X^{(q^2-q+1)/2} + X^{(q^2+q)/2})", hypothesis: AllM },
                Variant { label: "row 3", text: "X + g*Tr(X^{2q+1} + X^{(q^2+q)/2})", hypothesis: MOdd },
                Variant { label: "row 4", text: "X + g*Tr(X^{2q+1} + X^{4q+1})", hypothesis: MOdd },
                Variant { label: "row 5", text: "X + g*Tr(X^{2q+2} + X^{4q+1})", hypothesis: FourNotDividingM },
                Variant { label: "row 6", text: "X + g*Tr(X^{(q^2+q)/2} + X^{(q^2+3q)/2})", hypothesis: MNotTwoMod3 },
                Variant { label: "row 7", text: "X + g*Tr(X^{(q^2+q)/2} + X^{(3q^2+q)/2})", hypothesis: MNotOneMod3 },
            ],
            params: GAMMA_ONE.to_vec(),
            predicate: gamma_one_pp,
        },
    ]
}

/// Resolves `ID` or `ID.k` to an entry and an optional 0-based variant.
pub fn lookup(id: &str) -> Option<(RegistryEntry, Option<usize>)> {
    let entries = registry();
    if let Some(e) = entries.iter().find(|e| e.id == id) {
        return Some((e.clone(), None));
    }
    let (base, k) = id.rsplit_once('.')?;
    let k: usize = k.parse().ok()?;
    let e = entries.into_iter().find(|e| e.id == base)?;
    (1..=e.variants.len()).contains(&k).then_some((e, Some(k - 1)))
}

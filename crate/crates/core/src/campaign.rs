//! Verification campaigns: sweeps of a registry entry's parameter space
//! against the bijection oracle, plus seeded property campaigns for the
//! slice criterion, the equivalence transforms and affine equivalence.
//!
//! Reports are produced in sweep order regardless of how work is scheduled:
//! tuples are processed in parallel chunks and each chunk is emitted in order.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::basis::TraceZeroBasis;
use crate::error::{Error, Result};
use crate::families::registry::a_admissible;
use crate::families::{
    apply_equiv_transform, Bindings, Claim, Coef, CompiledFamily, EquivTransform, ExponentExpr, FamilySpec, HTerm,
    ParamDomain, RegistryEntry, Symbol, COMPILE_MAX_M,
};
use crate::fq3::{CubicExt, ExtElement};
use crate::gf2m::{FieldElement, FieldParams};
use crate::permcheck::{affine_equiv_check, is_permutation, permutes_ext, slice_reduction_check, PermResult};
use crate::rng::SplitMix64;
use crate::specparse::print_family;

pub const REPORT_SCHEMA: &str = "report_v1";

/// Tuples handed to the worker pool at a time; reports are emitted per chunk.
const CHUNK: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { n: u64, seed: u64 },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => f.write_str("exhaustive"),
            Mode::Sampled { n, seed } => write!(f, "sampled({n},{seed})"),
        }
    }
}

/// Field construction shared by every campaign.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FieldChoice {
    pub modulus: Option<u32>,
    /// `[g0, g1, g2]` of the monic cubic `t^3 + g2 t^2 + g1 t + g0`.
    pub cubic: Option<[u32; 3]>,
}

impl FieldChoice {
    pub fn build(&self, m: u32) -> Result<CubicExt> {
        let base = FieldParams::new(m, self.modulus)?;
        let cubic = match self.cubic {
            Some(c) => Some([base.element(c[0])?, base.element(c[1])?, base.element(c[2])?]),
            None => None,
        };
        CubicExt::new(base, cubic)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CampaignOptions {
    pub mode: Mode,
    pub field: FieldChoice,
    /// Run m values outside a variant's hypothesis instead of skipping them.
    pub ignore_hypothesis: bool,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions { mode: Mode::Exhaustive, field: FieldChoice::default(), ignore_hypothesis: false }
    }
}

/// Bound symbol values as hex strings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReportParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c3: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c4: Option<String>,
}

impl ReportParams {
    pub fn from_bindings(b: &Bindings) -> Self {
        let hex = |s| b.get(s).map(FieldElement::to_hex);
        ReportParams {
            g: hex(Symbol::G),
            a: hex(Symbol::A),
            c1: hex(Symbol::C1),
            c2: hex(Symbol::C2),
            c3: hex(Symbol::C3),
            c4: hex(Symbol::C4),
        }
    }

    /// `g=0x1,a=0x0` style summary.
    pub fn compact(&self) -> String {
        [("g", &self.g), ("a", &self.a), ("c1", &self.c1), ("c2", &self.c2), ("c3", &self.c3), ("c4", &self.c4)]
            .iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| format!("{k}={v}")))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// One (family, m, parameters) verdict. `elapsed_ms` is the only field that
/// varies between identical runs and is kept last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub family_id: String,
    pub family: String,
    pub m: u32,
    pub base_modulus: String,
    pub cubic: String,
    pub params: ReportParams,
    /// `claimed` when a result predicts the outcome, else `unclaimed`.
    pub status: &'static str,
    pub predicate: Option<bool>,
    pub oracle: bool,
    /// `predicate == oracle`; absent for unclaimed tuples.
    pub agree: Option<bool>,
    /// Two inputs with equal images, as `c2:c1:c0` triples.
    pub counterexample: Option<[String; 2]>,
    pub mode: String,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn disagrees(&self) -> bool {
        self.agree == Some(false)
    }
}

/// Static context shared by the reports of one (family, m) run.
struct ReportContext<'a> {
    family_id: &'a str,
    family: String,
    ext: &'a CubicExt,
    mode: String,
}

impl ReportContext<'_> {
    fn report(&self, b: &Bindings, claim: Claim, perm: PermResult, elapsed_ms: u64) -> VerificationReport {
        let ext = self.ext;
        let predicate = claim.as_bool();
        VerificationReport {
            schema: REPORT_SCHEMA,
            family_id: self.family_id.to_string(),
            family: self.family.clone(),
            m: ext.m(),
            base_modulus: FieldElement::from_raw(ext.base().modulus()).to_hex(),
            cubic: cubic_hex(ext),
            params: ReportParams::from_bindings(b),
            status: if predicate.is_some() { "claimed" } else { "unclaimed" },
            predicate,
            oracle: perm.is_perm,
            agree: predicate.map(|p| p == perm.is_perm),
            counterexample: perm
                .collision
                .map(|(i, j)| [ext.from_index(i).to_hex_triple(), ext.from_index(j).to_hex_triple()]),
            mode: self.mode.clone(),
            elapsed_ms,
        }
    }
}

/// The cubic as `g2:g1:g0`.
pub fn cubic_hex(ext: &CubicExt) -> String {
    let [g0, g1, g2] = ext.cubic();
    format!("{:X}:{:X}:{:X}", g2.value(), g1.value(), g0.value())
}

/// Brute-force verdict for one binding, tabulated when the field is small.
pub struct FamilyOracle {
    ext: CubicExt,
    spec: FamilySpec,
    compiled: Option<CompiledFamily>,
}

impl FamilyOracle {
    pub fn new(ext: &CubicExt, spec: &FamilySpec) -> Result<Self> {
        let compiled = if ext.m() <= COMPILE_MAX_M { Some(CompiledFamily::new(ext, spec)?) } else { None };
        Ok(FamilyOracle { ext: ext.clone(), spec: spec.clone(), compiled })
    }

    pub fn ext(&self) -> &CubicExt {
        &self.ext
    }

    /// Serial check; campaigns parallelize across bindings instead.
    pub fn check(&self, b: &Bindings) -> Result<PermResult> {
        let ext = &self.ext;
        match &self.compiled {
            Some(c) => {
                let inst = c.instance(b)?;
                is_permutation(|i| inst.eval_index(i), ext.size())
            }
            None => {
                let bound = self.spec.bind(ext, b)?;
                permutes_ext(ext, |x| bound.eval(ext, x))
            }
        }
    }
}

/// Parameter space of a registry entry at one m.
pub struct ParamSpace {
    q: u32,
    /// Swept symbols with their domain.
    params: Vec<(Symbol, ParamDomain)>,
}

impl ParamSpace {
    pub fn new(entry: &RegistryEntry, q: u32) -> Self {
        ParamSpace { q, params: entry.params.clone() }
    }

    fn free_count(&self) -> u32 {
        self.params.iter().filter(|(_, d)| *d == ParamDomain::Full).count() as u32
    }

    /// Raw tuples before filtering.
    pub fn raw_size(&self) -> u64 {
        (self.q as u64).pow(self.free_count())
    }

    /// Bindings for mixed-radix index `k`, first parameter most significant.
    fn decode(&self, mut k: u64) -> Bindings {
        let mut b = Bindings::new();
        for &(s, d) in self.params.iter().rev() {
            let v = match d {
                ParamDomain::Fixed(v) => v,
                ParamDomain::Full => {
                    let v = (k % self.q as u64) as u32;
                    k /= self.q as u64;
                    v
                }
            };
            b.set(s, FieldElement::from_raw(v));
        }
        b
    }

    fn admissible(&self, f: &FieldParams, b: &Bindings) -> bool {
        b.get(Symbol::A).is_none_or(|a| a_admissible(f, a))
    }

    /// All admissible tuples in sweep order.
    pub fn exhaustive(&self, f: &FieldParams) -> Vec<Bindings> {
        (0..self.raw_size()).map(|k| self.decode(k)).filter(|b| self.admissible(f, b)).collect()
    }

    /// `n` seeded draws; each free symbol takes the top m bits of one
    /// generator output, in sweep order, and `a` is redrawn until admissible.
    pub fn sampled(&self, f: &FieldParams, n: u64, seed: u64) -> Vec<Bindings> {
        let mut rng = SplitMix64::new(seed);
        (0..n)
            .map(|_| {
                let mut b = Bindings::new();
                for &(s, d) in &self.params {
                    let v = match d {
                        ParamDomain::Fixed(v) => FieldElement::from_raw(v),
                        ParamDomain::Full => loop {
                            let v = FieldElement::from_raw(rng.below(self.q as u64) as u32);
                            if s != Symbol::A || a_admissible(f, v) {
                                break v;
                            }
                        },
                    };
                    b.set(s, v);
                }
                b
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CampaignSummary {
    pub family_id: String,
    pub m: u32,
    pub tuples: u64,
    pub agree: u64,
    pub disagree: u64,
    pub unclaimed: u64,
    /// Unclaimed tuples the oracle found to be permutations.
    pub unclaimed_pp: u64,
    /// The run was skipped because m is outside the hypothesis.
    pub skipped: bool,
}

impl CampaignSummary {
    pub fn all_agree(&self) -> bool {
        self.disagree == 0
    }
}

/// Sweeps every variant (or the one given) of `entry` at field size m and
/// passes each report to `sink` in sweep order.
pub fn run_theorem(
    entry: &RegistryEntry,
    variant: Option<usize>,
    m: u32,
    opts: &CampaignOptions,
    sink: &mut dyn FnMut(&VerificationReport),
) -> Result<Vec<CampaignSummary>> {
    let ext = opts.field.build(m)?;
    let variants: Vec<usize> = match variant {
        Some(k) => vec![k],
        None => (0..entry.variants.len()).collect(),
    };
    let space = ParamSpace::new(entry, ext.base().q());
    let tuples = match opts.mode {
        Mode::Exhaustive => space.exhaustive(ext.base()),
        Mode::Sampled { n, seed } => space.sampled(ext.base(), n, seed),
    };
    let mut summaries = Vec::new();
    for k in variants {
        let v = &entry.variants[k];
        let id = entry.variant_id(k);
        let mut summary = CampaignSummary { family_id: id.clone(), m, ..Default::default() };
        if !v.hypothesis.holds(m) && !opts.ignore_hypothesis {
            summary.skipped = true;
            summaries.push(summary);
            continue;
        }
        let spec = v.spec()?;
        let oracle = FamilyOracle::new(&ext, &spec)?;
        let ctx = ReportContext { family_id: &id, family: print_family(&spec), ext: &ext, mode: opts.mode.to_string() };
        for chunk in tuples.chunks(CHUNK) {
            let reports: Vec<VerificationReport> = chunk
                .par_iter()
                .map(|b| {
                    let start = Instant::now();
                    let perm = oracle.check(b)?;
                    let claim = entry.claim(k, ext.base(), b);
                    Ok(ctx.report(b, claim, perm, start.elapsed().as_millis() as u64))
                })
                .collect::<Result<_>>()?;
            for r in &reports {
                summary.tuples += 1;
                match r.agree {
                    Some(true) => summary.agree += 1,
                    Some(false) => summary.disagree += 1,
                    None => {
                        summary.unclaimed += 1;
                        summary.unclaimed_pp += r.oracle as u64;
                    }
                }
                sink(r);
            }
        }
        summaries.push(summary);
    }
    Ok(summaries)
}

/// One-off verdict for a user-supplied family and binding.
pub fn check_family(
    id: &str,
    spec: &FamilySpec,
    ext: &CubicExt,
    bindings: &Bindings,
    claim: Claim,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let perm = FamilyOracle::new(ext, spec)?.check(bindings)?;
    let ctx = ReportContext { family_id: id, family: print_family(spec), ext, mode: Mode::Exhaustive.to_string() };
    Ok(ctx.report(bindings, claim, perm, start.elapsed().as_millis() as u64))
}

/// Every binding of the spec's symbols (with `fixed` held) that yields a
/// permutation, reported in sweep order as unclaimed reports. Returns the
/// number of bindings tried.
pub fn search(
    spec: &FamilySpec,
    ext: &CubicExt,
    fixed: &Bindings,
    sink: &mut dyn FnMut(&VerificationReport),
) -> Result<u64> {
    let f = ext.base();
    let free: Vec<Symbol> = spec.symbols().into_iter().filter(|s| fixed.get(*s).is_none()).collect();
    let q = f.q() as u64;
    let total = q
        .checked_pow(free.len() as u32)
        .filter(|&t| t <= 1 << 32)
        .ok_or_else(|| Error::Param("search space too large".into()))?;
    let oracle = FamilyOracle::new(ext, spec)?;
    let ctx =
        ReportContext { family_id: "search", family: print_family(spec), ext, mode: Mode::Exhaustive.to_string() };
    let decode = |mut k: u64| {
        let mut b = *fixed;
        for &s in free.iter().rev() {
            b.set(s, FieldElement::from_raw((k % q) as u32));
            k /= q;
        }
        b
    };
    let indices: Vec<u64> = (0..total).collect();
    for chunk in indices.chunks(CHUNK) {
        let found: Vec<Option<VerificationReport>> = chunk
            .par_iter()
            .map(|&k| {
                let start = Instant::now();
                let b = decode(k);
                let perm = oracle.check(&b)?;
                let elapsed = start.elapsed().as_millis() as u64;
                Ok(perm.is_perm.then(|| ctx.report(&b, Claim::Unclaimed, perm, elapsed)))
            })
            .collect::<Result<_>>()?;
        for r in found.iter().flatten() {
            sink(r);
        }
    }
    Ok(total)
}

/// Outcome of a seeded property campaign.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PropertySummary {
    pub property: String,
    pub m: u32,
    pub seed: u64,
    pub trials: u64,
    pub held: u64,
    /// Trials in which the underlying map was a permutation.
    pub permutations: u64,
    /// Description of the first failing instance.
    pub first_failure: Option<String>,
}

impl PropertySummary {
    fn new(property: &str, m: u32, seed: u64) -> Self {
        PropertySummary { property: property.to_string(), m, seed, ..Default::default() }
    }

    fn record(&mut self, held: bool, perm: bool, describe: impl FnOnce() -> String) {
        self.trials += 1;
        self.held += held as u64;
        self.permutations += perm as u64;
        if !held && self.first_failure.is_none() {
            self.first_failure = Some(describe());
        }
    }

    pub fn all_held(&self) -> bool {
        self.held == self.trials
    }
}

fn random_base(rng: &mut SplitMix64, f: &FieldParams) -> FieldElement {
    FieldElement::from_raw(rng.below(f.q() as u64) as u32)
}

fn random_admissible_a(rng: &mut SplitMix64, f: &FieldParams) -> FieldElement {
    loop {
        let a = random_base(rng, f);
        if a_admissible(f, a) {
            return a;
        }
    }
}

fn random_ext(rng: &mut SplitMix64, ext: &CubicExt) -> ExtElement {
    ext.from_index(rng.below(ext.size()))
}

fn random_nonzero_ext(rng: &mut SplitMix64, ext: &CubicExt) -> ExtElement {
    ext.from_index(1 + rng.below(ext.size() - 1))
}

/// Sparse h with 1 to `max_terms` monomials, base-field coefficients and
/// exponents drawn from `[1, q^3 - 1]`.
fn random_sparse_h(rng: &mut SplitMix64, ext: &CubicExt, max_terms: u64) -> Vec<HTerm> {
    let n = 1 + rng.below(max_terms);
    (0..n)
        .map(|_| {
            let c = 1 + rng.below(ext.base().q() as u64 - 1) as u32;
            let e = 1 + rng.below(ext.size() - 1);
            HTerm::new(Coef::Base(c), ExponentExpr::constant(e as i64))
        })
        .collect()
}

/// Random families `X + aX^q + gamma Tr(h)` with sparse h: both sides of the
/// slice criterion must agree.
pub fn slice_campaign(m: u32, trials: u64, seed: u64, field: &FieldChoice) -> Result<PropertySummary> {
    let ext = field.build(m)?;
    let basis = TraceZeroBasis::derive(&ext)?;
    let f = ext.base();
    let mut rng = SplitMix64::new(seed);
    let mut summary = PropertySummary::new("slice", m, seed);
    for _ in 0..trials {
        let a = random_admissible_a(&mut rng, f);
        let g = random_base(&mut rng, f);
        let spec = FamilySpec::new(Some(Coef::Sym(Symbol::A)), random_sparse_h(&mut rng, &ext, 4));
        let b = Bindings::new().with(Symbol::A, a).with(Symbol::G, g);
        let (lhs, rhs) = slice_reduction_check(&basis, &spec.bind(&ext, &b)?)?;
        summary.record(lhs == rhs, lhs, || format!("{} with {b}", print_family(&spec)));
    }
    Ok(summary)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformKind {
    QPair,
    PlainPair,
    Combined,
}

impl TransformKind {
    pub const ALL: [TransformKind; 3] = [TransformKind::QPair, TransformKind::PlainPair, TransformKind::Combined];

    pub fn name(self) -> &'static str {
        match self {
            TransformKind::QPair => "qpair",
            TransformKind::PlainPair => "plainpair",
            TransformKind::Combined => "combined",
        }
    }
}

/// Where the coefficients of combined additions are drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefField {
    Base,
    Extension,
}

fn random_coef(rng: &mut SplitMix64, ext: &CubicExt, field: CoefField) -> Coef {
    match field {
        CoefField::Base => Coef::Base(1 + rng.below(ext.base().q() as u64 - 1) as u32),
        CoefField::Extension => {
            let x = random_nonzero_ext(rng, ext);
            let v = [x.c0().value(), x.c1().value(), x.c2().value()];
            if v[1] == 0 && v[2] == 0 {
                Coef::Base(v[0])
            } else {
                Coef::Ext(v)
            }
        }
    }
}

fn random_transform(rng: &mut SplitMix64, ext: &CubicExt, kind: TransformKind, field: CoefField) -> EquivTransform {
    let shift_range = 3 * ext.m() as u64;
    let shift = |rng: &mut SplitMix64| rng.below(shift_range) as u32;
    match kind {
        TransformKind::QPair => EquivTransform::QPair { i: shift(rng), j: shift(rng) },
        TransformKind::PlainPair => EquivTransform::PlainPair { i: shift(rng), j: shift(rng) },
        TransformKind::Combined => {
            let list = |rng: &mut SplitMix64| {
                let n = 1 + rng.below(2);
                (0..n).map(|_| (shift(rng), shift(rng), random_coef(rng, ext, field))).collect()
            };
            let plain = list(rng);
            let qpair = list(rng);
            EquivTransform::Combined { plain, qpair }
        }
    }
}

/// Random families and transforms: f and its augmented form must be
/// permutations together.
pub fn equiv_campaign(
    kind: TransformKind,
    coef_field: CoefField,
    m: u32,
    trials: u64,
    seed: u64,
    field: &FieldChoice,
) -> Result<PropertySummary> {
    let ext = field.build(m)?;
    let f = ext.base();
    let mut rng = SplitMix64::new(seed);
    let label = match (kind, coef_field) {
        (TransformKind::Combined, CoefField::Extension) => "combined-ext".to_string(),
        _ => kind.name().to_string(),
    };
    let mut summary = PropertySummary::new(&label, m, seed);
    for _ in 0..trials {
        let a = random_admissible_a(&mut rng, f);
        let g = random_base(&mut rng, f);
        let spec = FamilySpec::new(Some(Coef::Sym(Symbol::A)), random_sparse_h(&mut rng, &ext, 4));
        let t = random_transform(&mut rng, &ext, kind, coef_field);
        let augmented = apply_equiv_transform(&spec, &t)?;
        let b = Bindings::new().with(Symbol::A, a).with(Symbol::G, g);
        let pf = FamilyOracle::new(&ext, &spec)?.check(&b)?.is_perm;
        let pg = FamilyOracle::new(&ext, &augmented)?.check(&b)?.is_perm;
        summary.record(pf == pg, pf, || format!("{} -> {} with {b}", print_family(&spec), print_family(&augmented)));
    }
    Ok(summary)
}

/// Random sparse maps `X + sum c_k X^{e_k}` with extension-field
/// coefficients and random `(c, d, b)`.
pub fn affine_campaign(m: u32, trials: u64, seed: u64, field: &FieldChoice) -> Result<PropertySummary> {
    let ext = field.build(m)?;
    let f = ext.base();
    let mut rng = SplitMix64::new(seed);
    let mut summary = PropertySummary::new("affine", m, seed);
    for t in 0..trials {
        let c = random_nonzero_ext(&mut rng, &ext);
        let d = random_nonzero_ext(&mut rng, &ext);
        let b = random_ext(&mut rng, &ext);
        // even trials use family instances so that permutations occur often;
        // odd trials use arbitrary sparse polynomials
        let (held, perm, what) = if t % 2 == 0 {
            let a = random_admissible_a(&mut rng, f);
            let g = random_base(&mut rng, f);
            let spec = FamilySpec::new(Some(Coef::Sym(Symbol::A)), random_sparse_h(&mut rng, &ext, 4));
            let binds = Bindings::new().with(Symbol::A, a).with(Symbol::G, g);
            let bound = spec.bind(&ext, &binds)?;
            let map = |x: ExtElement| bound.eval(&ext, x);
            let held = affine_equiv_check(&ext, map, c, d, b)?;
            (held, permutes_ext(&ext, map)?.is_perm, format!("{} with {binds}", print_family(&spec)))
        } else {
            let n = 1 + rng.below(3);
            let terms: Vec<(ExtElement, u64)> =
                (0..n).map(|_| (random_ext(&mut rng, &ext), 1 + rng.below(ext.size() - 1))).collect();
            let map = |x: ExtElement| terms.iter().fold(x, |acc, &(c, e)| acc + ext.mul(c, ext.pow(x, e)));
            let held = affine_equiv_check(&ext, map, c, d, b)?;
            (held, permutes_ext(&ext, map)?.is_perm, format!("terms {terms:?}"))
        };
        summary.record(held, perm, || format!("{what}, c={c:?}, d={d:?}, b={b:?}"));
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::lookup;

    #[test]
    fn tmain_space_counts() {
        let (e, _) = lookup("T-MAIN").unwrap();
        let f2 = FieldParams::new(2, None).unwrap();
        let space = ParamSpace::new(&e, 4);
        assert_eq!(space.raw_size(), 4096);
        // a in {t, t+1} is excluded at m = 2
        assert_eq!(space.exhaustive(&f2).len(), 2048);
        let f3 = FieldParams::new(3, None).unwrap();
        assert_eq!(ParamSpace::new(&e, 8).exhaustive(&f3).len(), 262_144);
    }

    #[test]
    fn sweep_order_is_lexicographic() {
        let (e, _) = lookup("T-MAIN").unwrap();
        let f = FieldParams::new(1, None).unwrap();
        let tuples = ParamSpace::new(&e, 2).exhaustive(&f);
        let keys: Vec<Vec<u32>> =
            tuples.iter().map(|b| Symbol::ALL.iter().map(|&s| b.value(s).value()).collect()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(keys.len(), 64);
    }

    #[test]
    fn sampled_is_reproducible_and_admissible() {
        let (e, _) = lookup("T-MAIN").unwrap();
        let f = FieldParams::new(4, None).unwrap();
        let space = ParamSpace::new(&e, 16);
        let s1 = space.sampled(&f, 500, 9);
        assert_eq!(s1, space.sampled(&f, 500, 9));
        assert!(s1.iter().all(|b| a_admissible(&f, b.value(Symbol::A))));
        assert_ne!(s1, space.sampled(&f, 500, 10));
    }

    #[test]
    fn f4_parity() {
        let (e, _) = lookup("F4").unwrap();
        for (m, want) in [(2, false), (3, true)] {
            let mut seen = None;
            run_theorem(&e, None, m, &CampaignOptions::default(), &mut |r| {
                if r.params.g.as_deref() == Some("0x1") {
                    seen = Some(r.oracle);
                }
                assert_eq!(r.agree, Some(true));
            })
            .unwrap();
            assert_eq!(seen, Some(want));
        }
    }

    #[test]
    fn hypothesis_skip_and_override() {
        let (e, _) = lookup("F6").unwrap();
        let s = run_theorem(&e, None, 2, &CampaignOptions::default(), &mut |_| panic!("skipped")).unwrap();
        assert!(s[0].skipped);
        let opts = CampaignOptions { ignore_hypothesis: true, ..Default::default() };
        let mut statuses = Vec::new();
        let s = run_theorem(&e, None, 2, &opts, &mut |r| statuses.push(r.status)).unwrap();
        assert_eq!(s[0].tuples, 4);
        assert_eq!(statuses, vec!["claimed", "unclaimed", "claimed", "claimed"]);
    }

    #[test]
    fn search_finds_identity_family() {
        let ext = CubicExt::with_defaults(2).unwrap();
        let spec = crate::specparse::parse_family("X + a X^q").unwrap();
        let mut hits = Vec::new();
        let tried = search(&spec, &ext, &Bindings::new(), &mut |r| hits.push(r.params.a.clone().unwrap())).unwrap();
        assert_eq!(tried, 4);
        // X + aX^q is a permutation iff a^{q^2+q+1} = a^3 != 1
        let f = ext.base();
        let want: Vec<String> =
            f.elements().filter(|&a| f.pow(a, 3) != FieldElement::ONE).map(FieldElement::to_hex).collect();
        assert_eq!(hits, want);
    }
}

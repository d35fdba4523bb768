//! Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
//!
//! Run with `cargo test -p tracepp-cli --test acceptance`; the criterion lines
//! go to stderr even when output is captured.

use std::collections::HashSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use tracepp::basis::{is_invertible, mat_mul, TraceZeroBasis, IDENTITY};
use tracepp::campaign::{
    affine_campaign, equiv_campaign, run_theorem, slice_campaign, CampaignOptions, CampaignSummary, CoefField,
    FieldChoice, Mode, PropertySummary, TransformKind,
};
use tracepp::families::{check_norm_factorization, check_trace_identity, lookup, registry, ParamDomain, TraceIdentity};
use tracepp::fq3::{CubicExt, ExtElement};
use tracepp::gf2m::FieldElement;
use tracepp::rng::SplitMix64;
use tracepp::specparse::{parse_family, parse_family_bytes, print_family};

const SEED: u64 = 20_240_601;
const TMAIN_M3_BUDGET: Duration = Duration::from_secs(300);
const TMAIN_M4_SAMPLES: u64 = 10_000;
const IDENTITY_BUDGET: Duration = Duration::from_secs(30);
const SLICE_TRIALS: u64 = 200;
const TRANSFORM_TRIALS: u64 = 100;
const AFFINE_TRIALS: u64 = 50;
const BASIS_MAX_M: u32 = 10;
const FUZZ_STRINGS: u64 = 100_000;
const FUZZ_MAX_LEN: u64 = 96;
/// Required agreement in every criterion.
const REQUIRED_RATE: f64 = 1.0;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn rate(held: u64, total: u64) -> f64 {
    if total == 0 {
        0.0
    } else {
        held as f64 / total as f64
    }
}

/// Brute-force permutation test with a hash set, independent of the library
/// oracle's bitset.
fn permutes(ext: &CubicExt, f: impl Fn(ExtElement) -> ExtElement) -> bool {
    let mut seen = HashSet::with_capacity(ext.size() as usize);
    ext.elements().all(|x| seen.insert(ext.index(f(x))))
}

/// Tr(x) = x + x^q + x^{q^2} by powering.
fn trace_by_powering(ext: &CubicExt, x: ExtElement) -> ExtElement {
    let q = ext.base().q() as u64;
    ext.add(ext.add(x, ext.pow(x, q)), ext.pow(x, q * q))
}

/// n/2 as an exponent: multiplication by the inverse of 2 modulo q^3 - 1.
fn half(ext: &CubicExt, n: u64) -> u64 {
    let order = ext.size() - 1;
    let inv2 = order.div_ceil(2);
    ((n % order) as u128 * inv2 as u128 % order as u128) as u64
}

/// X + gamma Tr(sum X^e) evaluated term by term.
fn trace_family_permutes(ext: &CubicExt, gamma: FieldElement, exps: &[u64]) -> bool {
    permutes(ext, |x| {
        let h = exps.iter().fold(ExtElement::ZERO, |acc, &e| ext.add(acc, ext.pow(x, e)));
        ext.add(x, ext.scale(gamma, trace_by_powering(ext, h)))
    })
}

/// (family id, g, oracle verdict) per emitted report.
type Seen = Vec<(String, Option<String>, bool)>;

fn theorem_summaries(id: &str, m: u32, mode: Mode) -> (Vec<CampaignSummary>, Seen) {
    let (entry, variant) = lookup(id).expect("registry id");
    let opts = CampaignOptions { mode, ..CampaignOptions::default() };
    let mut seen = Vec::new();
    let s = run_theorem(&entry, variant, m, &opts, &mut |r| {
        seen.push((r.family_id.clone(), r.params.g.clone(), r.oracle));
    })
    .expect("campaign runs");
    (s, seen)
}

fn criterion_tmain() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (m, expected) in [(2u32, 2048u64), (3, 262_144)] {
        let start = Instant::now();
        let (s, _) = theorem_summaries("T-MAIN", m, Mode::Exhaustive);
        let took = start.elapsed();
        let s = &s[0];
        pass &= s.tuples == expected && rate(s.agree, s.tuples) >= REQUIRED_RATE && s.unclaimed == 0;
        if m == 3 {
            pass &= took <= TMAIN_M3_BUDGET;
        }
        parts.push(format!("m={m} {}/{} agree in {:.1}s", s.agree, s.tuples, took.as_secs_f64()));
    }
    let (s, _) = theorem_summaries("T-MAIN", 4, Mode::Sampled { n: TMAIN_M4_SAMPLES, seed: SEED });
    let s = &s[0];
    pass &= s.tuples >= TMAIN_M4_SAMPLES && rate(s.agree, s.tuples) >= REQUIRED_RATE;
    parts.push(format!("m=4 {}/{} sampled agree", s.agree, s.tuples));
    Outcome::new(pass, parts.join(", "))
}

fn criterion_families() -> Outcome {
    let mut pass = true;
    let mut tuples = 0;
    let mut disagree = 0;
    let mut runs = 0;
    for id in ["F1", "F1j", "F2", "F3", "F4", "F5", "F6", "F7", "F8"] {
        let (entry, _) = lookup(id).unwrap();
        // entries stated only at g = 1 sweep a single tuple
        let fixed_g = entry.params.iter().any(|(_, d)| matches!(d, ParamDomain::Fixed(_)));
        for m in 2..=5 {
            let (summaries, _) = theorem_summaries(id, m, Mode::Exhaustive);
            for (k, s) in summaries.iter().enumerate() {
                let in_hyp = entry.variants[k].hypothesis.holds(m);
                pass &= s.skipped != in_hyp;
                if !s.skipped {
                    runs += 1;
                    tuples += s.tuples;
                    disagree += s.disagree;
                    pass &= s.tuples == if fixed_g { 1 } else { 1 << m } && s.unclaimed == 0;
                }
            }
        }
    }
    pass &= disagree == 0;

    // parity spot checks with an independent evaluator
    let ext = |m| CubicExt::with_defaults(m).unwrap();
    let one = FieldElement::ONE;
    let f4 = |e: &CubicExt| {
        let q = e.base().q() as u64;
        vec![2 * q + 1, 4 * q + 1]
    };
    let f5 = |e: &CubicExt| {
        let q = e.base().q() as u64;
        vec![2 * q + 2, 4 * q + 1]
    };
    let f8 = |e: &CubicExt| {
        let q = e.base().q() as u64;
        [q + 1, q + 3, 3 * q + 1, q * q + q + 2].iter().map(|&n| half(e, n)).collect::<Vec<_>>()
    };
    let mut spots = Vec::new();
    for (name, m, want, exps) in [
        ("F4", 3, true, f4(&ext(3))),
        ("F4", 2, false, f4(&ext(2))),
        ("F4", 4, false, f4(&ext(4))),
        ("F5", 3, true, f5(&ext(3))),
        ("F5", 4, false, f5(&ext(4))),
    ] {
        let got = trace_family_permutes(&ext(m), one, &exps);
        pass &= got == want;
        spots.push(format!("{name}(m={m})={}", if got { "PP" } else { "not" }));
    }
    let mut f8_nonzero = 0;
    for m in 2..=4 {
        let e = ext(m);
        let exps = f8(&e);
        for g in e.base().elements().filter(|g| !g.is_zero()) {
            let got = trace_family_permutes(&e, g, &exps);
            pass &= !got;
            f8_nonzero += 1;
        }
    }
    spots.push(format!("F8 not PP for all {f8_nonzero} nonzero g"));
    Outcome::new(pass, format!("{runs} runs, {tuples} tuples, {disagree} disagreements; {}", spots.join(", ")))
}

fn criterion_table() -> Outcome {
    let (entry, _) = lookup("TBL1").unwrap();
    let mut pass = true;
    let mut verified = 0;
    for m in 2..=5 {
        let (summaries, reports) = theorem_summaries("TBL1", m, Mode::Exhaustive);
        for (k, s) in summaries.iter().enumerate() {
            pass &= s.skipped != entry.variants[k].hypothesis.holds(m);
        }
        for (_, g, oracle) in reports {
            pass &= g.as_deref() == Some("0x1") && oracle;
            verified += usize::from(oracle);
        }
    }
    Outcome::new(pass, format!("{verified} row instances PP at g=1 for admissible m <= 5"))
}

fn criterion_identities() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut checked = 0;
    let mut failures = 0;
    for m in 2..=4 {
        let basis = TraceZeroBasis::derive(&CubicExt::with_defaults(m).unwrap()).unwrap();
        let mut reports: Vec<_> = TraceIdentity::ALL.iter().map(|&w| check_trace_identity(&basis, w)).collect();
        reports.push(check_norm_factorization(&basis));
        for r in reports {
            pass &= r.holds() && r.checked == basis.ext().size();
            checked += r.checked;
            failures += r.failures;
        }
    }
    let took = start.elapsed();
    pass &= took <= IDENTITY_BUDGET;
    Outcome::new(pass, format!("{checked} evaluations, {failures} exceptions in {:.2}s", took.as_secs_f64()))
}

fn property_line(runs: &[PropertySummary]) -> (bool, String) {
    let held: u64 = runs.iter().map(|s| s.held).sum();
    let trials: u64 = runs.iter().map(|s| s.trials).sum();
    let perms: u64 = runs.iter().map(|s| s.permutations).sum();
    (rate(held, trials) >= REQUIRED_RATE, format!("{held}/{trials} held ({perms} permutations)"))
}

fn criterion_slice() -> Outcome {
    let runs: Vec<_> =
        [2, 3].iter().map(|&m| slice_campaign(m, SLICE_TRIALS, SEED, &FieldChoice::default()).unwrap()).collect();
    let (pass, detail) = property_line(&runs);
    Outcome::new(pass, detail)
}

/// The smallest known failure of the combined transform with an extension
/// coefficient: f = X permutes, while adding t (X^2 + X^{q+1}) inside the
/// trace does not.
fn extension_counterexample_confirmed() -> bool {
    (1..=3).all(|m| {
        let ext = CubicExt::with_defaults(m).unwrap();
        let q = ext.base().q() as u64;
        let t = ext.element(0, 1, 0).unwrap();
        let with = |c: ExtElement| {
            permutes(&ext, |x| {
                let pair = ext.add(ext.pow(x, 2), ext.pow(x, q + 1));
                ext.add(x, trace_by_powering(&ext, ext.mul(c, pair)))
            })
        };
        permutes(&ext, |x| x) && with(ExtElement::ONE) && !with(t)
    })
}

/// Returns the outcome and whether a failure is limited to extension-field
/// coefficients with the known counterexample confirmed.
fn criterion_transforms() -> (Outcome, bool) {
    let field = FieldChoice::default();
    let run = |kind, coef| -> Vec<PropertySummary> {
        [2, 3].iter().map(|&m| equiv_campaign(kind, coef, m, TRANSFORM_TRIALS, SEED, &field).unwrap()).collect()
    };
    let mut base_ok = true;
    let mut parts = Vec::new();
    for kind in TransformKind::ALL {
        let (ok, d) = property_line(&run(kind, CoefField::Base));
        base_ok &= ok;
        parts.push(format!("{} {d}", kind.name()));
    }
    let ext_runs = run(TransformKind::Combined, CoefField::Extension);
    let (ext_ok, d) = property_line(&ext_runs);
    parts.push(format!("combined with extension coefficients {d}"));
    let confirmed = extension_counterexample_confirmed();
    if !ext_ok {
        if let Some(f) = ext_runs.iter().find_map(|s| s.first_failure.clone()) {
            parts.push(format!("first failure: {f}"));
        }
        parts.push(format!(
            "minimal counterexample X vs X + Tr(t(X^2 + X^{{q+1}})) {}",
            if confirmed { "confirmed for m = 1..3" } else { "not reproduced" }
        ));
    }
    let explained = base_ok && !ext_ok && confirmed;
    (Outcome::new(base_ok && ext_ok, parts.join("; ")), explained)
}

fn criterion_basis() -> Outcome {
    let mut pass = true;
    for m in 1..=BASIS_MAX_M {
        let ext = CubicExt::with_defaults(m).unwrap();
        let basis = TraceZeroBasis::derive(&ext).unwrap();
        let f = ext.base();
        let q = f.q() as u64;
        let theta = basis.theta();
        // conjugates of a normal element are linearly independent
        let conj = [theta, ext.pow(theta, q), ext.pow(theta, q * q)];
        let rows = conj.map(|c| [c.c0(), c.c1(), c.c2()]);
        pass &= is_invertible(f, &rows);
        pass &= trace_by_powering(&ext, basis.alpha()).is_zero();
        pass &= !basis.alpha().is_zero();
        pass &= is_invertible(f, basis.from_xyz());
        pass &= mat_mul(f, basis.from_xyz(), basis.to_xyz()) == IDENTITY;
    }
    let ext1 = CubicExt::with_defaults(1).unwrap();
    let b1 = TraceZeroBasis::derive(&ext1).unwrap();
    let worked = b1.theta() == ext1.element(1, 1, 0).unwrap() && b1.alpha() == ext1.element(0, 1, 0).unwrap();
    pass &= worked;
    Outcome::new(
        pass,
        format!(
            "m = 1..{BASIS_MAX_M} normal, trace zero, invertible; m=1 theta=t+1, alpha=t {}",
            if worked { "reproduced" } else { "NOT reproduced" }
        ),
    )
}

fn criterion_affine() -> Outcome {
    let runs: Vec<_> =
        [2, 3].iter().map(|&m| affine_campaign(m, AFFINE_TRIALS, SEED, &FieldChoice::default()).unwrap()).collect();
    let (pass, detail) = property_line(&runs);
    Outcome::new(pass && runs.iter().all(|s| s.permutations > 0), detail)
}

const FUZZ_ALPHABET: &[u8] = b"X+aqg*Tr()^{}/-0123456789xABC: c1234";

fn criterion_parser() -> Outcome {
    let mut pass = true;
    let mut texts = 0;
    for e in registry() {
        for v in &e.variants {
            texts += 1;
            let Ok(spec) = parse_family(v.text) else {
                pass = false;
                continue;
            };
            let printed = print_family(&spec);
            pass &= printed == v.text && parse_family(&printed).ok().as_ref() == Some(&spec);
        }
    }
    let mut rng = SplitMix64::new(SEED);
    let mut panics = 0;
    let mut accepted = 0;
    for n in 0..FUZZ_STRINGS {
        let len = rng.below(FUZZ_MAX_LEN) as usize;
        let bytes: Vec<u8> = if n % 2 == 0 {
            (0..len).map(|_| rng.next_u64() as u8).collect()
        } else {
            (0..len).map(|_| FUZZ_ALPHABET[rng.below(FUZZ_ALPHABET.len() as u64) as usize]).collect()
        };
        match catch_unwind(AssertUnwindSafe(|| parse_family_bytes(&bytes).is_ok())) {
            Ok(ok) => accepted += u64::from(ok),
            Err(_) => panics += 1,
        }
    }
    pass &= panics == 0;
    Outcome::new(
        pass,
        format!(
            "{texts} registry texts round-trip; {FUZZ_STRINGS} fuzz strings, {panics} crashes, {accepted} accepted"
        ),
    )
}

fn strip_elapsed(stream: &[u8]) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(stream)
        .lines()
        .map(|l| {
            let mut v: serde_json::Value = serde_json::from_str(l).expect("json line");
            v.as_object_mut().expect("object").remove("elapsed_ms");
            v
        })
        .collect()
}

fn criterion_determinism() -> Outcome {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_tracepp"))
            .args(["theorem", "F1", "--m", "2..4", "--exhaustive", "--emit", "json"])
            .output()
            .expect("binary runs");
        (out.status.success(), out.stdout)
    };
    let (ok1, a) = run();
    let (ok2, b) = run();
    let (la, lb) = (strip_elapsed(&a), strip_elapsed(&b));
    let pass = ok1 && ok2 && !la.is_empty() && la == lb;
    Outcome::new(pass, format!("{} lines per run, identical apart from elapsed_ms: {}", la.len(), la == lb))
}

#[test]
fn acceptance() {
    let (transforms, transform_failure_explained) = criterion_transforms();
    let outcomes = [
        (1, "main theorem sweep", criterion_tmain()),
        (2, "families F1-F8", criterion_families()),
        (3, "table rows", criterion_table()),
        (4, "coordinate identities", criterion_identities()),
        (5, "slice reduction", criterion_slice()),
        (6, "equivalence transforms", transforms),
        (7, "trace-zero basis", criterion_basis()),
        (8, "affine equivalence", criterion_affine()),
        (9, "parser", criterion_parser()),
        (10, "determinism", criterion_determinism()),
    ];

    // written to the raw handle so the lines survive output capture
    let mut err = std::io::stderr().lock();
    for (n, name, o) in &outcomes {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        writeln!(err, "criterion {n:>2} {verdict:<4} {name}: {}", o.detail).unwrap();
    }
    drop(err);
    let failed: Vec<u32> = outcomes.iter().filter(|(_, _, o)| !o.pass).map(|(n, _, _)| *n).collect();
    // criterion 6 fails only through extension-field coefficients, which do
    // not preserve the permutation property; that failure is asserted to be
    // the confirmed one rather than tolerated blindly
    let unexplained: Vec<u32> = failed.iter().copied().filter(|&n| !(n == 6 && transform_failure_explained)).collect();
    assert!(unexplained.is_empty(), "criteria failed: {unexplained:?}");
}

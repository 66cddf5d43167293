//! Structured reports and their text rendering.

use std::fmt::Write as _;

use elliott_core::classify::{
    CompareVerdict, Comparison, ConjugacyVerdict, FamilyReport, FlipCheck, FlipTarget,
};
use elliott_core::crossed::{ElliottInvariant, RouhaniParameters};
use elliott_core::ktheory::TransformationSpec;
use elliott_core::theta::{format_rational, ThetaSymbol};
use elliott_core::zlinalg::IntMatrix;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema_version: u32,
    #[serde(flatten)]
    pub body: Body,
}

impl Document {
    pub fn new(body: Body) -> Self {
        Document {
            schema_version: SCHEMA_VERSION,
            body,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
#[allow(clippy::large_enum_variant)]
pub enum Body {
    Invariant(InvariantReport),
    Compare(CompareReport),
    Family(FamilyBatch),
    Rouhani(RouhaniReport),
    Examples(ExamplesReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaReport {
    pub label: String,
    pub lo: String,
    pub hi: String,
}

impl From<&ThetaSymbol> for ThetaReport {
    fn from(t: &ThetaSymbol) -> Self {
        ThetaReport {
            label: t.label().to_string(),
            lo: format_rational(t.lo()),
            hi: format_rational(t.hi()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRow {
    pub label: String,
    /// `None` for infinite order.
    pub order: Option<String>,
    /// `a + bθ`, rendered.
    pub trace: String,
    pub trace_a: String,
    pub trace_b: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub space: String,
    pub exponents: Vec<String>,
    pub cocycle_perturbed: bool,
    pub theta: ThetaReport,
    pub extrapolated: bool,
    pub k0: String,
    pub k1: String,
    pub k0_generators: Vec<GeneratorRow>,
    pub k1_generators: Vec<String>,
    pub unit: Vec<String>,
    pub dense_range: bool,
    pub order_rule: String,
}

pub fn invariant_report(spec: &TransformationSpec, inv: &ElliottInvariant) -> InvariantReport {
    let (exponents, cocycle_perturbed) = match spec {
        TransformationSpec::AffineFurstenbergTorus {
            exponents,
            cocycle_perturbed,
            ..
        } => (
            exponents.iter().map(ToString::to_string).collect(),
            *cocycle_perturbed,
        ),
        TransformationSpec::SphereTimesCircle { .. } => (Vec::new(), false),
    };
    let orders = inv.k0.generator_orders();
    let k0_generators = inv
        .k0_labels
        .iter()
        .zip(&orders)
        .enumerate()
        .map(|(j, (label, order))| {
            let (trace, a, b) = match inv.trace.get(j) {
                Some(t) if order.is_none() => (
                    t.to_string(),
                    format_rational(t.a()),
                    format_rational(t.b()),
                ),
                _ => ("0".to_string(), "0".to_string(), "0".to_string()),
            };
            GeneratorRow {
                label: label.clone(),
                order: order.as_ref().map(ToString::to_string),
                trace,
                trace_a: a,
                trace_b: b,
            }
        })
        .collect();
    InvariantReport {
        space: inv.space.to_string(),
        exponents,
        cocycle_perturbed,
        theta: (&inv.theta).into(),
        extrapolated: inv.extrapolated,
        k0: inv.k0.to_string(),
        k1: inv.k1.to_string(),
        k0_generators,
        k1_generators: inv.k1_labels.clone(),
        unit: inv.unit.iter().map(ToString::to_string).collect(),
        dense_range: inv.dense_range(),
        order_rule: inv.order_rule(),
    }
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElliottSection {
    /// `ISOMORPHIC`, `NOT_ISOMORPHIC` or `UNDECIDED`.
    pub verdict: String,
    pub reason: Option<String>,
    pub witness_k0: Option<Vec<Vec<String>>>,
    pub witness_k1: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipSection {
    /// `DISTINCT`, `POSSIBLY_CONJUGATE`, `UNKNOWN` or `EXCLUDED`.
    pub verdict: String,
    pub separating_invariant: Option<String>,
    pub witness: Option<Vec<Vec<String>>>,
    /// `direct` or `inverse` for a witness.
    pub target: Option<String>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareReport {
    pub first: InvariantReport,
    pub second: InvariantReport,
    pub elliott: ElliottSection,
    pub flip: FlipSection,
    pub headline: Option<String>,
}

pub fn elliott_section(v: &CompareVerdict) -> ElliottSection {
    match v {
        CompareVerdict::Isomorphic { witness } => ElliottSection {
            verdict: "ISOMORPHIC".into(),
            reason: None,
            witness_k0: Some(matrix_rows(&witness.k0)),
            witness_k1: Some(matrix_rows(&witness.k1)),
        },
        CompareVerdict::NotIsomorphic { reason } => ElliottSection {
            verdict: "NOT_ISOMORPHIC".into(),
            reason: Some(reason.clone()),
            witness_k0: None,
            witness_k1: None,
        },
        CompareVerdict::Undecided { reason } => ElliottSection {
            verdict: "UNDECIDED".into(),
            reason: Some(reason.clone()),
            witness_k0: None,
            witness_k1: None,
        },
    }
}

pub fn flip_section(f: &FlipCheck) -> FlipSection {
    let empty = |verdict: &str| FlipSection {
        verdict: verdict.into(),
        separating_invariant: None,
        witness: None,
        target: None,
        note: None,
    };
    match f {
        FlipCheck::Computed(ConjugacyVerdict::Distinct { separation }) => FlipSection {
            separating_invariant: Some(separation.to_string()),
            ..empty("DISTINCT")
        },
        FlipCheck::Computed(ConjugacyVerdict::PossiblyConjugate { witness, target }) => {
            FlipSection {
                witness: Some(matrix_rows(witness)),
                target: Some(
                    match target {
                        FlipTarget::Direct => "direct",
                        FlipTarget::Inverse => "inverse",
                    }
                    .into(),
                ),
                ..empty("POSSIBLY_CONJUGATE")
            }
        }
        FlipCheck::Computed(ConjugacyVerdict::Unknown { bound, exhaustive }) => FlipSection {
            note: Some(if *exhaustive {
                format!("no conjugator with entries bounded by {bound}")
            } else {
                format!("search space for bound {bound} too large; not searched")
            }),
            ..empty("UNKNOWN")
        },
        FlipCheck::Excluded(reason) => FlipSection {
            note: Some(reason.clone()),
            ..empty("EXCLUDED")
        },
    }
}

pub fn compare_report(
    a: &TransformationSpec,
    b: &TransformationSpec,
    c: &Comparison,
) -> CompareReport {
    CompareReport {
        first: invariant_report(a, &c.first),
        second: invariant_report(b, &c.second),
        elliott: elliott_section(&c.elliott),
        flip: flip_section(&c.flip),
        headline: c.headline().map(str::to_string),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyBatch {
    pub primes: Vec<u64>,
    pub members: Vec<[String; 2]>,
    pub k0: Vec<String>,
    /// `matrix[i][j]`: `ELLIOTT / FLIP` verdicts, `-` on the diagonal.
    pub matrix: Vec<Vec<String>>,
    pub all_isomorphic_and_distinct: bool,
}

pub fn family_batch(primes: &[u64], r: &FamilyReport) -> FamilyBatch {
    let n = r.members.len();
    let mut matrix = vec![vec!["-".to_string(); n]; n];
    let mut k0 = vec![String::new(); n];
    for (i, j, c) in &r.pairs {
        let cell = format!(
            "{} / {}",
            elliott_section(&c.elliott).verdict,
            flip_section(&c.flip).verdict
        );
        matrix[*i][*j] = cell.clone();
        matrix[*j][*i] = cell;
        k0[*i] = c.first.k0.to_string();
        k0[*j] = c.second.k0.to_string();
    }
    FamilyBatch {
        primes: primes.to_vec(),
        members: r
            .members
            .iter()
            .map(|(m, n)| [m.to_string(), n.to_string()])
            .collect(),
        k0,
        matrix,
        all_isomorphic_and_distinct: r.all_isomorphic_and_distinct(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaRow {
    pub k: usize,
    pub holds: bool,
    pub head_integral: bool,
    /// Present when it fits in 64 bits.
    pub exponent: Option<i64>,
    pub beta_abs: Option<f64>,
    pub beta_bound: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub order: u32,
    pub terms: usize,
    pub partial_sum: String,
    pub partial_sum_approx: f64,
    pub tail_bound_approx: f64,
    pub monotone: bool,
    pub prefactor: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RouhaniReport {
    pub depth: usize,
    pub nu: Vec<String>,
    /// `n_k = 2^{ν_k}`, written as a power of two.
    pub n: Vec<String>,
    pub theta_partial_terms: Vec<String>,
    /// Exact fraction when the denominator has at most 4096 bits.
    pub theta_partial: Option<String>,
    pub theta_partial_approx: f64,
    pub beta: Vec<BetaRow>,
    pub beta_bound_ok: bool,
    pub derivative: Vec<SeriesRow>,
}

fn ratio_f64(r: &num_rational::BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rouhani_report(p: &RouhaniParameters) -> RouhaniReport {
    let small = p.theta_partial.denom().bits() <= 4096;
    RouhaniReport {
        depth: p.depth,
        nu: p.nu.iter().map(ToString::to_string).collect(),
        n: p.nu.iter().map(|v| format!("2^{v}")).collect(),
        theta_partial_terms: p.nu.iter().map(|v| format!("2^-{v}")).collect(),
        theta_partial: small
            .then(|| format!("{}/{}", p.theta_partial.numer(), p.theta_partial.denom())),
        theta_partial_approx: ratio_f64(&p.theta_partial),
        beta: p
            .beta
            .iter()
            .map(|b| BetaRow {
                k: b.k,
                holds: b.holds,
                head_integral: b.head_integral,
                exponent: b.exponent.to_i64(),
                beta_abs: b.numeric.map(|(v, _)| v),
                beta_bound: b.numeric.map(|(_, v)| v),
            })
            .collect(),
        beta_bound_ok: p.beta_bound_ok(),
        derivative: p
            .derivative
            .iter()
            .map(|s| {
                let last = s.partials.last().expect("nonempty series");
                SeriesRow {
                    order: s.order,
                    terms: s.partials.len(),
                    partial_sum: format!("{}/{}", last.numer(), last.denom()),
                    partial_sum_approx: ratio_f64(last),
                    tail_bound_approx: ratio_f64(&s.tail_bound),
                    monotone: s.is_monotone(),
                    prefactor: s.prefactor(),
                }
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleRow {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExamplesReport {
    pub examples: Vec<ExampleRow>,
    pub all_pass: bool,
}

// text rendering

fn push_invariant(out: &mut String, r: &InvariantReport) {
    let exps = if r.exponents.is_empty() {
        String::new()
    } else {
        format!(" (exponents {})", r.exponents.join(", "))
    };
    let _ = writeln!(out, "space: {}{exps}", r.space);
    let _ = writeln!(
        out,
        "theta: {} in ({}, {})",
        r.theta.label, r.theta.lo, r.theta.hi
    );
    if r.extrapolated {
        let _ = writeln!(
            out,
            "note: induced map from the general exterior-power rule"
        );
    }
    let _ = writeln!(out, "K0 = {}", r.k0);
    let _ = writeln!(out, "K1 = {}", r.k1);
    let _ = writeln!(out, "K0 generators (trace):");
    for g in &r.k0_generators {
        match &g.order {
            None => {
                let _ = writeln!(out, "  {}: {}", g.label, g.trace);
            }
            Some(d) => {
                let _ = writeln!(out, "  {}: 0 (torsion, order {d})", g.label);
            }
        }
    }
    let _ = writeln!(out, "K1 generators: {}", r.k1_generators.join(", "));
    let unit_label = r
        .unit
        .iter()
        .position(|c| c == "1")
        .filter(|_| r.unit.iter().filter(|c| *c != "0").count() == 1)
        .map(|i| r.k0_generators[i].label.clone())
        .unwrap_or_else(|| format!("[{}]", r.unit.join(", ")));
    let _ = writeln!(out, "unit: {unit_label}");
    let _ = writeln!(
        out,
        "dense range: {}",
        if r.dense_range { "yes" } else { "no" }
    );
    let _ = writeln!(out, "order: {}", r.order_rule);
}

fn push_matrix(out: &mut String, indent: &str, rows: &[Vec<String>]) {
    for row in rows {
        let _ = writeln!(out, "{indent}[{}]", row.join(", "));
    }
}

fn flip_summary(f: &FlipSection) -> String {
    match (&f.separating_invariant, &f.note) {
        (Some(s), _) => format!("{} ({s})", f.verdict),
        (None, Some(n)) => format!("{} ({n})", f.verdict),
        _ => f.verdict.clone(),
    }
}

pub fn render(doc: &Document) -> String {
    let mut out = String::new();
    match &doc.body {
        Body::Invariant(r) => push_invariant(&mut out, r),
        Body::Compare(r) => {
            let _ = writeln!(out, "== first");
            push_invariant(&mut out, &r.first);
            let _ = writeln!(out, "== second");
            push_invariant(&mut out, &r.second);
            let _ = writeln!(out, "== verdict");
            let _ = writeln!(
                out,
                "Elliott: {}; Flip-conjugacy: {}",
                r.elliott.verdict,
                flip_summary(&r.flip)
            );
            if let Some(reason) = &r.elliott.reason {
                let _ = writeln!(out, "Elliott reason: {reason}");
            }
            if let Some(w) = &r.elliott.witness_k0 {
                let _ = writeln!(out, "K0 witness:");
                push_matrix(&mut out, "  ", w);
            }
            if let Some(w) = &r.flip.witness {
                let _ = writeln!(
                    out,
                    "conjugator ({}):",
                    r.flip.target.as_deref().unwrap_or("direct")
                );
                push_matrix(&mut out, "  ", w);
            }
            if let Some(h) = &r.headline {
                let _ = writeln!(out, "headline: {h}");
            }
        }
        Body::Family(r) => {
            let primes: Vec<String> = r.primes.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "family for primes {}", primes.join(" "));
            for (i, [m, n]) in r.members.iter().enumerate() {
                let _ = writeln!(out, "  #{i}: (m, n) = ({m}, {n}), K0 = {}", r.k0[i]);
            }
            let _ = writeln!(out, "verdicts (Elliott / flip):");
            for (i, row) in r.matrix.iter().enumerate() {
                let _ = writeln!(out, "  #{i}: {}", row.join(" | "));
            }
            let status = if r.all_isomorphic_and_distinct {
                "yes"
            } else {
                "NO"
            };
            let _ = writeln!(out, "all pairs ISOMORPHIC / DISTINCT: {status}");
        }
        Body::Rouhani(r) => {
            let _ = writeln!(out, "depth: {}", r.depth);
            let _ = writeln!(out, "nu = ({})", r.nu.join(", "));
            let _ = writeln!(out, "n = ({})", r.n.join(", "));
            match &r.theta_partial {
                Some(t) => {
                    let _ = writeln!(
                        out,
                        "theta_{} = {t} ~ {:.10}",
                        r.depth, r.theta_partial_approx
                    );
                }
                None => {
                    let _ = writeln!(
                        out,
                        "theta_{} = {} ~ {:.10}",
                        r.depth,
                        r.theta_partial_terms.join(" + "),
                        r.theta_partial_approx
                    );
                }
            }
            for b in &r.beta {
                let numeric = match (b.beta_abs, b.beta_bound) {
                    (Some(v), Some(bd)) => format!(", |beta| = {v:.3e} <= {bd:.3e}"),
                    _ => ", |beta| below f64 resolution".to_string(),
                };
                let ok = if b.holds && b.head_integral {
                    "holds"
                } else {
                    "FAILS"
                };
                let _ = writeln!(out, "beta bound k = +-{}: {ok}{numeric}", b.k);
            }
            for s in &r.derivative {
                let _ = writeln!(
                    out,
                    "series m = {}: S_{} ~ {:.9}, tail <= {:.3e}, prefactor {:.4e}{}",
                    s.order,
                    s.terms,
                    s.partial_sum_approx,
                    s.tail_bound_approx,
                    s.prefactor,
                    if s.monotone { "" } else { " (NOT monotone)" }
                );
            }
        }
        Body::Examples(r) => {
            for e in &r.examples {
                let status = if e.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "{status}  {}: expected {}; observed {}",
                    e.name, e.expected, e.observed
                );
            }
            let _ = writeln!(
                out,
                "{}",
                if r.all_pass {
                    "all examples pass"
                } else {
                    "some examples FAILED"
                }
            );
        }
    }
    out
}

pub fn render_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("reports serialize");
    s.push('\n');
    s
}

//! The census report: a JSON document and a CSV table of solutions.
//!
//! Every number is written as a string (exact symbolic form where there is
//! one, plus a fixed-digit decimal) so the output does not depend on float
//! formatting and two runs of the same configuration agree byte for byte.

use std::collections::BTreeMap;

use rug::Rational;
use serde::Serialize;

use crate::gap::{
    corrected_gap1_threshold, count_bound, gap1_sweep, gap1_sweep_corrected, gap2_cover_check, CountBound,
    DysonCertificate, Gap1Sweep, Gap2Report,
};
use crate::numeric::{format_float, rational_from_f64, LogValue, Verdict};
use crate::system::{all_assignments, roth_defect, Census, Solution, ValidationReport, Violation};

use super::config::{AmplitudeInput, RunConfig};

const DIGITS: usize = 17;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Quantity {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub decimal: String,
}

impl Quantity {
    pub fn of(v: &LogValue) -> Self {
        Quantity {
            exact: Some(v.symbolic()),
            decimal: v.decimal(DIGITS),
        }
    }

    /// For values whose exact form is too long to be useful, such as `N!·log 4`.
    fn decimal_only(v: &LogValue) -> Self {
        Quantity {
            exact: None,
            decimal: v.decimal(DIGITS),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub curve: String,
    pub alphas: Vec<String>,
    #[serde(rename = "S")]
    pub places: Vec<String>,
    pub theta: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none", rename = "A")]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", rename = "logA")]
    pub log_a: Option<String>,
    pub epsilon: String,
    pub height_bound: Quantity,
    pub coefficient_cap: Option<u32>,
    pub max_candidates: u64,
    pub precision_bits: u32,
    pub tolerance: String,
}

impl ConfigEcho {
    pub fn of(config: &RunConfig) -> Self {
        let (a, log_a) = match &config.amplitude {
            AmplitudeInput::A(a) => (Some(a.to_string()), None),
            AmplitudeInput::LogA(l) => (None, Some(l.symbolic())),
        };
        ConfigEcho {
            curve: config.curve.name().to_string(),
            alphas: config.alphas.clone(),
            places: config.theta.iter().map(|(p, _)| p.clone()).collect(),
            theta: config.theta.iter().map(|(p, t)| (p.clone(), t.to_string())).collect(),
            a,
            log_a,
            epsilon: config.epsilon.to_string(),
            height_bound: Quantity::of(&config.height_bound),
            coefficient_cap: config.coefficient_cap,
            max_candidates: config.max_candidates,
            precision_bits: config.precision_bits,
            tolerance: rational_from_f64(config.tolerance).map_or_else(String::new, |q| q.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationSection {
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub theta_integral: String,
    pub log_a_bound: Option<Quantity>,
}

impl ValidationSection {
    pub fn of(report: &ValidationReport) -> Self {
        ValidationSection {
            valid: report.is_valid(),
            violations: report.violations.clone(),
            theta_integral: report.theta_integral.to_string(),
            log_a_bound: report.log_a_bound.as_ref().map(Quantity::decimal_only),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstantsSection {
    pub n: usize,
    pub h_two: Quantity,
    pub log_a: Quantity,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub log_gamma: Quantity,
    pub h_gap_threshold: String,
    pub ratio_gap_capacity: String,
    pub count_bound: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionRow {
    pub element: String,
    pub height: String,
    pub height_exact: String,
    pub is_big: bool,
    /// Largest Roth defect over all assignments `S → {α_i}`, when
    /// `log A + h(β) > 0`.
    pub defect: Option<String>,
    pub defect_verdict: Option<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusSection {
    pub candidates: u64,
    pub solutions: usize,
    pub big_solutions: usize,
    pub degenerate: Vec<String>,
    pub uncertain: Vec<String>,
    pub big_threshold: Quantity,
    pub gap_threshold: Quantity,
    pub corrected_gap_threshold: Quantity,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairRow {
    pub lower: String,
    pub upper: String,
    pub ratio: Option<String>,
    pub applicable: Verdict,
    pub verdict: Option<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Gap1Section {
    pub threshold: Quantity,
    pub pairs: Vec<PairRow>,
    pub verdict: Verdict,
}

impl Gap1Section {
    fn of(sweep: &Gap1Sweep) -> Self {
        Gap1Section {
            threshold: Quantity::of(&sweep.threshold),
            pairs: sweep
                .pairs
                .iter()
                .map(|p| PairRow {
                    lower: p.lower.element.to_string(),
                    upper: p.upper.element.to_string(),
                    ratio: p.check.ratio.as_ref().map(|r| format_float(r, DIGITS)),
                    applicable: p.check.applicable,
                    verdict: p.check.verdict,
                })
                .collect(),
            verdict: sweep.verdict,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Gap2Section {
    pub covered: usize,
    pub intervals: Vec<(String, String)>,
    pub limit: u64,
    pub verdict: Verdict,
}

impl Gap2Section {
    fn of(report: &Gap2Report) -> Self {
        Gap2Section {
            covered: report.covered.len(),
            intervals: report
                .cover
                .intervals
                .iter()
                .map(|(a, b)| (a.decimal(DIGITS), b.decimal(DIGITS)))
                .collect(),
            limit: report.limit,
            verdict: report.verdict,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateSection {
    pub columns: usize,
    pub n_hypothesis: Verdict,
    pub h_gap: Verdict,
    pub column_bounding: Verdict,
    pub theta_integral: String,
    pub dyson_bound: String,
    pub conclusion: Verdict,
    pub status: String,
}

impl CertificateSection {
    pub fn of(c: &DysonCertificate) -> Self {
        CertificateSection {
            columns: c.big_n,
            n_hypothesis: c.n_hypothesis,
            h_gap: c.h_gap,
            column_bounding: c.column_bounding,
            theta_integral: c.theta_integral.to_string(),
            dyson_bound: format_float(&c.dyson_bound, DIGITS),
            conclusion: c.conclusion,
            status: c.status.as_str().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdicts {
    pub census: Verdict,
    pub roth_defect: Verdict,
    pub gap1: Verdict,
    pub gap2_cover: Verdict,
    pub count_bound: Verdict,
    pub certificate: Verdict,
    pub overall: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: ConfigEcho,
    pub validation: ValidationSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constants: Option<ConstantsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub census: Option<CensusSection>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub solutions: Vec<SolutionRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap1: Option<Gap1Section>,
    /// The same sweep above the corrected threshold; informational, not
    /// part of the overall verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap1_corrected: Option<Gap1Section>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap2: Option<Gap2Section>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dyson_certificate: Option<CertificateSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<Verdicts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn new(config: &RunConfig, validation: ValidationSection) -> Self {
        Report {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config: ConfigEcho::of(config),
            validation,
            constants: None,
            census: None,
            solutions: Vec::new(),
            gap1: None,
            gap1_corrected: None,
            gap2: None,
            dyson_certificate: None,
            verdicts: None,
            error: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["element", "height", "is_big", "defect"])
            .expect("in-memory write");
        for row in &self.solutions {
            let big = if row.is_big { "true" } else { "false" };
            w.write_record([
                row.element.as_str(),
                row.height.as_str(),
                big,
                row.defect.as_deref().unwrap_or(""),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn overall(&self) -> Verdict {
        self.verdicts.as_ref().map_or(Verdict::Fail, |v| v.overall)
    }
}

/// The worst (largest) defect over all assignments, with the verdict that
/// every assignment stays at or below `−(2+ε)` up to the tolerance.
fn worst_defect(census: &Census, s: &Solution) -> (Option<String>, Option<Verdict>) {
    let spec = &census.spec;
    let numerics = spec.numerics();
    let bound = (-(Rational::from(&spec.epsilon + 2u32)))
        + rational_from_f64(numerics.tolerance).unwrap_or_default();
    let bound = LogValue::rational(bound);
    let mut worst: Option<f64> = None;
    let mut verdict = Verdict::Pass;
    for a in all_assignments(spec.theta.len(), spec.n()) {
        match roth_defect(spec, &s.element, &a) {
            Ok(d) => {
                let v = d.value();
                worst = Some(worst.map_or(v, |w| w.max(v)));
                verdict = verdict.and(d.at_most(&bound, numerics));
            }
            Err(_) => return (None, None),
        }
    }
    (
        worst.map(|w| format_float(&rug::Float::with_val(64, w), DIGITS)),
        Some(verdict),
    )
}

/// Fills the post-validation sections from a census.
pub fn fill_census(report: &mut Report, census: &Census, certificate: Option<&DysonCertificate>) {
    let spec = &census.spec;
    let CountBound {
        bound,
        capacity,
        params,
        ..
    } = count_bound(spec);
    report.constants = Some(ConstantsSection {
        n: spec.n(),
        h_two: Quantity::of(&spec.curve.h_two()),
        log_a: Quantity::of(&spec.log_a()),
        big_n: params.big_n,
        log_gamma: Quantity::decimal_only(&params.log_gamma),
        h_gap_threshold: format!("1/{}", params.h_gap_denominator()),
        ratio_gap_capacity: format_float(&capacity, DIGITS),
        count_bound: format_float(&bound, DIGITS),
    });

    let big: std::collections::BTreeSet<String> = census.big_solutions.iter().map(|s| s.element.to_string()).collect();
    report.solutions = census
        .solutions
        .iter()
        .map(|s| {
            let (defect, defect_verdict) = worst_defect(census, s);
            SolutionRow {
                element: s.element.to_string(),
                height: s.height.decimal(DIGITS),
                height_exact: s.height.symbolic(),
                is_big: big.contains(&s.element.to_string()),
                defect,
                defect_verdict,
            }
        })
        .collect();

    report.census = Some(CensusSection {
        candidates: census.candidates,
        solutions: census.solutions.len(),
        big_solutions: census.big_solutions.len(),
        degenerate: census.degenerate.iter().map(|e| e.to_string()).collect(),
        uncertain: census.uncertain.iter().map(|s| s.element.to_string()).collect(),
        big_threshold: Quantity::of(&census.big_threshold.value),
        gap_threshold: Quantity::of(&census.big_threshold.gap_term),
        corrected_gap_threshold: Quantity::of(&corrected_gap1_threshold(spec)),
    });

    let sweep = gap1_sweep(census);
    report.gap1 = Some(Gap1Section::of(&sweep));
    report.gap1_corrected = Some(Gap1Section::of(&gap1_sweep_corrected(census)));
    let cover = gap2_cover_check(census, &params);
    report.gap2 = Some(Gap2Section::of(&cover));
    report.dyson_certificate = certificate.map(CertificateSection::of);

    let count = Verdict::from_bool(rug::Float::with_val(64, census.big_solutions.len()) < bound);
    let roth = Verdict::all(report.solutions.iter().filter_map(|r| r.defect_verdict));
    let census_verdict = if census.uncertain.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Uncertain
    };
    let certificate = match certificate {
        Some(c) if c.is_violation() => Verdict::Fail,
        _ => Verdict::Pass,
    };
    let overall = Verdict::all([census_verdict, roth, sweep.verdict, cover.verdict, count, certificate]);
    report.verdicts = Some(Verdicts {
        census: census_verdict,
        roth_defect: roth,
        gap1: sweep.verdict,
        gap2_cover: cover.verdict,
        count_bound: count,
        certificate,
        overall,
    });
}

//! The `census` and `check` commands.

use std::fmt::Write as _;
use std::path::Path;

use rug::Rational;

use crate::curve::{AdelicCurve, Place};
use crate::error::Error;
use crate::field::{FieldElement, FieldKind};
use crate::gap::{
    column_bounding_check, count_bound_for, default_partition, dyson_bound, dyson_certificate, h_gap_check,
    CertificateStatus, DysonCertificate, GapMatrix,
};
use crate::numeric::{format_float, parse_rational, LogValue, Numerics, Verdict};
use crate::system::{enumerate_solutions, validate_spec, Census};

use super::config::{load_config, RunConfig};
use super::report::{fill_census, Report, ValidationSection};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CAPACITY: i32 = 2;
pub const EXIT_VERDICT: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// Above this many big solutions the census certificate is skipped; `N!`
/// for the column count would dominate the run.
const CERTIFICATE_COLUMNS: usize = 400;

#[derive(Clone, Debug)]
pub struct CensusOutcome {
    pub report: Report,
    pub census: Option<Census>,
    pub exit_code: i32,
}

/// The Dyson-type certificate on the matrix whose columns are the big
/// solutions, each against the full α vector, with `S_1 = S`.
pub fn census_certificate(census: &Census) -> Option<DysonCertificate> {
    let spec = &census.spec;
    let betas: Vec<FieldElement> = census.big_solutions.iter().map(|s| s.element.clone()).collect();
    if betas.is_empty() || betas.len() > CERTIFICATE_COLUMNS {
        return None;
    }
    let rows: Vec<Vec<FieldElement>> = spec.alphas.iter().map(|a| vec![a.clone(); betas.len()]).collect();
    let matrix = GapMatrix::from_elements(&spec.curve, rows, betas).ok()?;
    dyson_certificate(&matrix, &spec.theta, &default_partition(&spec.theta, spec.n())).ok()
}

pub fn run_census(config: &RunConfig, workers: usize) -> CensusOutcome {
    let spec = match config.to_spec() {
        Ok(s) => s,
        Err(violations) => {
            let section = ValidationSection {
                valid: false,
                violations,
                theta_integral: String::new(),
                log_a_bound: None,
            };
            return CensusOutcome {
                report: Report::new(config, section),
                census: None,
                exit_code: EXIT_INVALID,
            };
        }
    };
    let validation = validate_spec(&spec);
    let mut report = Report::new(config, ValidationSection::of(&validation));
    if !validation.is_valid() {
        return CensusOutcome {
            report,
            census: None,
            exit_code: EXIT_INVALID,
        };
    }
    let census = match enumerate_solutions(&spec, &config.height_bound, &config.enumeration_options(workers)) {
        Ok(c) => c,
        Err(e) => {
            let code = if matches!(e, Error::CapacityExceeded { .. }) {
                EXIT_CAPACITY
            } else {
                EXIT_INVALID
            };
            report.error = Some(e.to_string());
            return CensusOutcome {
                report,
                census: None,
                exit_code: code,
            };
        }
    };
    let certificate = census_certificate(&census);
    fill_census(&mut report, &census, certificate.as_ref());
    let exit_code = if report.overall() == Verdict::Pass {
        EXIT_OK
    } else {
        EXIT_VERDICT
    };
    CensusOutcome {
        report,
        census: Some(census),
        exit_code,
    }
}

pub fn cmd_census(config_path: &Path, workers: usize, out: Option<&Path>) -> i32 {
    let config = match load_config(config_path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INVALID;
        }
    };
    let outcome = run_census(&config, workers);
    let json = outcome.report.to_json();
    match out {
        Some(dir) => {
            let written = std::fs::create_dir_all(dir)
                .and_then(|_| std::fs::write(dir.join("report.json"), &json))
                .and_then(|_| std::fs::write(dir.join("solutions.csv"), outcome.report.to_csv()));
            if let Err(e) = written {
                eprintln!("error: cannot write to {}: {e}", dir.display());
                return EXIT_INVALID;
            }
        }
        None => print!("{json}"),
    }
    for v in &outcome.report.validation.violations {
        eprintln!("violation: {}: {}", v.field, v.message);
    }
    if let Some(e) = &outcome.report.error {
        eprintln!("error: {e}");
    }
    if let Some(v) = &outcome.report.verdicts {
        eprintln!(
            "census {}: gap1 {}, gap2 {}, count bound {}, roth defect {}",
            v.overall, v.gap1, v.gap2_cover, v.count_bound, v.roth_defect
        );
    }
    outcome.exit_code
}

/// What a `check` subcommand printed and how it ended.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutput {
    pub text: String,
    pub exit_code: i32,
}

impl CheckOutput {
    fn new(text: String, verdict: Option<Verdict>) -> Self {
        let exit_code = match verdict {
            None | Some(Verdict::Pass) => 0,
            Some(Verdict::Fail) => 1,
            Some(Verdict::Uncertain) => 2,
        };
        CheckOutput { text, exit_code }
    }

    fn usage(message: impl Into<String>) -> Self {
        CheckOutput {
            text: format!("error: {}\n", message.into()),
            exit_code: EXIT_USAGE,
        }
    }
}

fn curve_arg(s: &str) -> Result<AdelicCurve, CheckOutput> {
    s.parse::<FieldKind>()
        .map(|k| AdelicCurve::new(k, Numerics::default()))
        .map_err(|_| CheckOutput::usage(format!("`{s}` is neither Q nor Q(t)")))
}

fn element_arg(curve: &AdelicCurve, s: &str) -> Result<FieldElement, CheckOutput> {
    let e = curve.parse_element(s).map_err(|e| CheckOutput::usage(e.to_string()))?;
    if e.is_zero() {
        return Err(CheckOutput::usage(Error::ZeroElement.to_string()));
    }
    Ok(e)
}

fn decimal(v: &LogValue) -> String {
    v.decimal(17)
}

/// `exact ≈ decimal`, or just the number when it is rational.
fn show(v: &LogValue) -> String {
    match v.as_rational() {
        Some(q) => q.to_string(),
        None => format!("{} ≈ {}", v.symbolic(), decimal(v)),
    }
}

fn check_product_formula(args: &[String]) -> Result<CheckOutput, CheckOutput> {
    let [field, element] = args else {
        return Err(CheckOutput::usage("usage: check product-formula <Q|Q(t)> <element>"));
    };
    let curve = curve_arg(field)?;
    let a = element_arg(&curve, element)?;
    let defect = curve
        .product_formula_defect(&a)
        .map_err(|e| CheckOutput::usage(e.to_string()))?;
    let verdict = defect
        .le(&LogValue::zero(), curve.numerics())
        .and(defect.ge(&LogValue::zero(), curve.numerics()));
    Ok(CheckOutput::new(
        format!("defect {}, {verdict}\n", show(&defect)),
        Some(verdict),
    ))
}

fn check_height(args: &[String]) -> Result<CheckOutput, CheckOutput> {
    let [field, element] = args else {
        return Err(CheckOutput::usage("usage: check height <Q|Q(t)> <element>"));
    };
    let curve = curve_arg(field)?;
    let a = element_arg(&curve, element)?;
    let h = curve.height(&a).map_err(|e| CheckOutput::usage(e.to_string()))?;
    Ok(CheckOutput::new(format!("{}\n", show(&h)), None))
}

fn check_liouville(args: &[String]) -> Result<CheckOutput, CheckOutput> {
    let [field, alpha, beta, places @ ..] = args else {
        return Err(CheckOutput::usage(
            "usage: check liouville <Q|Q(t)> <alpha> <beta> [place ...]",
        ));
    };
    let curve = curve_arg(field)?;
    let alpha = element_arg(&curve, alpha)?;
    let beta = element_arg(&curve, beta)?;
    let places: Vec<Place> = places
        .iter()
        .map(|p| curve.place(p))
        .collect::<Result<_, _>>()
        .map_err(|e| CheckOutput::usage(e.to_string()))?;
    let c = curve
        .liouville_check(&alpha, &beta, &places)
        .map_err(|e| CheckOutput::usage(e.to_string()))?;
    let text = format!("lhs {}\nrhs {}\n{}\n", show(&c.lhs), show(&c.rhs), c.verdict);
    Ok(CheckOutput::new(text, Some(c.verdict)))
}

fn n_eps_args(args: &[String], name: &str) -> Result<(u64, Rational), CheckOutput> {
    let [n, eps] = args else {
        return Err(CheckOutput::usage(format!("usage: check {name} <n> <epsilon>")));
    };
    let n: u64 = n
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| CheckOutput::usage("n must be a positive integer"))?;
    let eps = parse_rational(eps)
        .filter(|e| *e > 0)
        .ok_or_else(|| CheckOutput::usage("ε must be a positive rational"))?;
    Ok((n, eps))
}

fn check_params(args: &[String]) -> Result<CheckOutput, CheckOutput> {
    let (n, eps) = n_eps_args(args, "params")?;
    let cb = count_bound_for(n, &eps);
    let p = &cb.params;
    let mut text = format!(
        "N={}, logΓ≈{}, bound≈{:.5e}\n",
        p.big_n,
        p.log_gamma.decimal(17),
        cb.bound.to_f64()
    );
    let _ = writeln!(text, "log N! ≈ {}", p.log_factorial.decimal(17));
    let _ = writeln!(
        text,
        "h-gap threshold 1/(4nN²N!) with 4nN²N! = {}",
        abbreviate(&p.h_gap_denominator())
    );
    let _ = writeln!(text, "dyson bound ≈ {}", format_float(&dyson_bound(n, p.big_n), 17));
    let _ = writeln!(text, "ratio-gap capacity ≈ {}", format_float(&cb.capacity, 17));
    Ok(CheckOutput::new(text, None))
}

/// Long integers as `1.2345…e567`.
fn abbreviate(k: &rug::Integer) -> String {
    let s = k.to_string();
    if s.len() <= 20 {
        return s;
    }
    format!("{}.{}…e{}", &s[..1], &s[1..5], s.len() - 1)
}

fn check_bound(args: &[String]) -> Result<CheckOutput, CheckOutput> {
    let (n, eps) = n_eps_args(args, "bound")?;
    let cb = count_bound_for(n, &eps);
    let text = format!(
        "count bound ≈ {} = (N−1)·capacity with N={}, capacity ≈ {}\n",
        format_float(&cb.bound, 17),
        cb.big_n,
        format_float(&cb.capacity, 17)
    );
    Ok(CheckOutput::new(text, None))
}

/// A matrix file: TOML with `curve`, `alphas` (rows of element strings, one
/// per α, each with one entry per column), `betas`, an optional `[theta]`
/// table and an optional `[partition]` table mapping place ids to 1-based
/// row numbers.
pub struct MatrixInput {
    pub matrix: GapMatrix,
    pub theta: Vec<(Place, Rational)>,
    pub partition: Vec<Vec<Place>>,
}

pub fn parse_matrix_input(text: &str) -> Result<MatrixInput, String> {
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| e.to_string())?;
    let curve = match table.get("curve").and_then(|v| v.as_str()) {
        Some(s) => s.parse::<FieldKind>().map_err(|_| format!("unknown curve `{s}`"))?,
        None => return Err("missing `curve`".into()),
    };
    let curve = AdelicCurve::new(curve, Numerics::default());
    let element = |v: &toml::Value| -> Result<FieldElement, String> {
        let s = match v {
            toml::Value::String(s) => s.clone(),
            toml::Value::Integer(i) => i.to_string(),
            other => return Err(format!("expected an element string, found {other}")),
        };
        curve.parse_element(&s).map_err(|e| e.to_string())
    };
    let rows = table
        .get("alphas")
        .and_then(|v| v.as_array())
        .ok_or("missing `alphas` (a list of rows)")?;
    let alphas: Vec<Vec<FieldElement>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or("each α row must be a list".to_string())?
                .iter()
                .map(element)
                .collect()
        })
        .collect::<Result<_, String>>()?;
    let betas: Vec<FieldElement> = table
        .get("betas")
        .and_then(|v| v.as_array())
        .ok_or("missing `betas`")?
        .iter()
        .map(element)
        .collect::<Result<_, _>>()?;
    let mut theta = Vec::new();
    if let Some(t) = table.get("theta") {
        let t = t.as_table().ok_or("`theta` must be a table")?;
        for (k, v) in t {
            let place = curve.place(k).map_err(|e| e.to_string())?;
            let q = match v {
                toml::Value::Integer(i) => Rational::from(*i),
                toml::Value::Float(x) => crate::numeric::rational_from_f64(*x).ok_or("bad θ")?,
                toml::Value::String(s) => parse_rational(s).ok_or_else(|| format!("bad θ `{s}`"))?,
                other => return Err(format!("bad θ {other}")),
            };
            theta.push((place, q));
        }
    }
    theta.sort();
    let n = alphas.len();
    let partition = match table.get("partition") {
        Some(p) => {
            let p = p.as_table().ok_or("`partition` must be a table")?;
            let mut cells = vec![Vec::new(); n];
            for (k, v) in p {
                let place = curve.place(k).map_err(|e| e.to_string())?;
                let row = v
                    .as_integer()
                    .filter(|&r| r >= 1 && r as usize <= n)
                    .ok_or_else(|| format!("partition row for {k} must be between 1 and {n}"))?;
                cells[row as usize - 1].push(place);
            }
            cells
        }
        None => default_partition(&theta, n),
    };
    let matrix = GapMatrix::from_elements(&curve, alphas, betas).map_err(|e| e.to_string())?;
    Ok(MatrixInput {
        matrix,
        theta,
        partition,
    })
}

fn matrix_arg(args: &[String], name: &str) -> Result<MatrixInput, CheckOutput> {
    let [path] = args else {
        return Err(CheckOutput::usage(format!("usage: check {name} <matrix.toml>")));
    };
    let text = std::fs::read_to_string(path).map_err(|e| CheckOutput::usage(format!("cannot read {path}: {e}")))?;
    parse_matrix_input(&text).map_err(CheckOutput::usage)
}

fn check_hgap(args: &[String]) -> Result<CheckOutput, CheckOutput> {
    let input = matrix_arg(args, "hgap")?;
    let r = h_gap_check(&input.matrix).map_err(|e| CheckOutput::usage(e.to_string()))?;
    let mut text = format!("threshold {}\n", r.threshold);
    for (j, (ratio, v)) in r.ratios.iter().zip(&r.verdicts).enumerate() {
        let _ = writeln!(
            text,
            "j={} log ρ_j / log ρ'_(j+1) ≈ {} {v}",
            j + 1,
            format_float(ratio, 17)
        );
    }
    let _ = writeln!(text, "{}", r.verdict);
    Ok(CheckOutput::new(text, Some(r.verdict)))
}

fn check_column_bounding(args: &[String]) -> Result<CheckOutput, CheckOutput> {
    let input = matrix_arg(args, "column-bounding")?;
    let r = column_bounding_check(&input.matrix, &input.theta, &input.partition)
        .map_err(|e| CheckOutput::usage(e.to_string()))?;
    let mut text = String::new();
    for e in &r.entries {
        let _ = writeln!(
            text,
            "h={} j={} {}: −log|α−β| / log ρ_j ≈ {} vs θ = {} {}",
            e.row,
            e.column,
            e.place,
            format_float(&e.normalized, 17),
            e.theta,
            e.verdict
        );
    }
    let _ = writeln!(text, "{}", r.verdict);
    Ok(CheckOutput::new(text, Some(r.verdict)))
}

fn check_certificate(args: &[String]) -> Result<CheckOutput, CheckOutput> {
    let input = matrix_arg(args, "certificate")?;
    let c = dyson_certificate(&input.matrix, &input.theta, &input.partition)
        .map_err(|e| CheckOutput::usage(e.to_string()))?;
    let text = format!(
        "N > 441·log 2n: {}\nh-gap: {}\ncolumn bounding: {}\n∫θ = {} < {}: {}\n{}\n",
        c.n_hypothesis,
        c.h_gap,
        c.column_bounding,
        c.theta_integral,
        format_float(&c.dyson_bound, 17),
        c.conclusion,
        c.status.as_str()
    );
    let verdict = match c.status {
        CertificateStatus::Violation => Verdict::Fail,
        CertificateStatus::Undecided => Verdict::Uncertain,
        _ => Verdict::Pass,
    };
    Ok(CheckOutput::new(text, Some(verdict)))
}

pub const CHECKS: &[&str] = &[
    "product-formula",
    "height",
    "liouville",
    "hgap",
    "column-bounding",
    "params",
    "bound",
    "certificate",
];

pub fn cmd_check(subcommand: &str, args: &[String]) -> CheckOutput {
    let result = match subcommand {
        "product-formula" => check_product_formula(args),
        "height" => check_height(args),
        "liouville" => check_liouville(args),
        "hgap" => check_hgap(args),
        "column-bounding" => check_column_bounding(args),
        "params" => check_params(args),
        "bound" => check_bound(args),
        "certificate" => check_certificate(args),
        other => Err(CheckOutput::usage(format!(
            "unknown check `{other}`; expected one of {}",
            CHECKS.join(", ")
        ))),
    };
    result.unwrap_or_else(|e| e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(sub: &str, args: &[&str]) -> CheckOutput {
        cmd_check(sub, &args.iter().map(|s| s.to_string()).collect::<Vec<_>>())
    }

    #[test]
    fn check_examples() {
        let h = check("height", &["Q", "3/2"]);
        assert!(h.text.starts_with("log 3 ≈ 1.0986"), "{}", h.text);
        assert_eq!(h.exit_code, 0);
        let p = check("params", &["1", "1.0"]);
        assert!(p.text.starts_with("N=306, logΓ≈1462.7"), "{}", p.text);
        assert!(p.text.contains("bound≈1.10060e6"), "{}", p.text);
        let pf = check("product-formula", &["Q", "12/5"]);
        assert_eq!(pf.text, "defect 0, pass\n");
        assert_eq!(check("height", &["Q", "t"]).exit_code, EXIT_USAGE);
        assert_eq!(check("nonsense", &[]).exit_code, EXIT_USAGE);
    }
}

//! Run configurations, read from TOML.
//!
//! ```toml
//! curve = "Q"
//! alphas = ["1"]
//! S = ["inf"]
//! A = "1/8"            # or logA = "-3*log 2"
//! epsilon = 1
//! height_bound = "log 8"
//!
//! [theta]
//! inf = 3
//! ```
//!
//! Reals are read exactly: integers and decimal literals become rationals,
//! and strings may also contain logarithms (`"2*log 3 - 1/2"`).

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use rug::Rational;
use serde::Serialize;
use toml::{Table, Value};

use crate::curve::AdelicCurve;
use crate::field::FieldKind;
use crate::numeric::{parse_rational, parse_real, rational_from_f64, LogValue, Numerics};
use crate::numeric::{DEFAULT_PRECISION_BITS, DEFAULT_TOLERANCE};
use crate::system::{Amplitude, EnumerationOptions, SystemSpec, Violation};

const KNOWN_KEYS: &[&str] = &[
    "curve",
    "alphas",
    "S",
    "theta",
    "A",
    "logA",
    "epsilon",
    "height_bound",
    "coefficient_cap",
    "max_candidates",
    "precision_bits",
    "tolerance",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchemaIssue {
    pub field: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid configuration:\n{}", format_issues(.0))]
    Schema(Vec<SchemaIssue>),
}

fn format_issues(issues: &[SchemaIssue]) -> String {
    issues
        .iter()
        .map(|i| format!("  {}: {}", i.field, i.message))
        .collect::<Vec<_>>()
        .join("\n")
}

impl ConfigError {
    pub fn issues(&self) -> &[SchemaIssue] {
        match self {
            ConfigError::Schema(v) => v,
            _ => &[],
        }
    }
}

/// How the amplitude was given.
#[derive(Clone, Debug, PartialEq)]
pub enum AmplitudeInput {
    A(Rational),
    LogA(LogValue),
}

impl fmt::Display for AmplitudeInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmplitudeInput::A(a) => write!(f, "A = {a}"),
            AmplitudeInput::LogA(l) => write!(f, "logA = {l}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub curve: FieldKind,
    pub alphas: Vec<String>,
    /// Place ids in the order given, each with its θ.
    pub theta: Vec<(String, Rational)>,
    pub amplitude: AmplitudeInput,
    pub epsilon: Rational,
    pub height_bound: LogValue,
    pub coefficient_cap: Option<u32>,
    pub max_candidates: u64,
    pub precision_bits: u32,
    pub tolerance: f64,
}

pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_config(&text)
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

fn rational_value(v: &Value) -> Result<Rational, String> {
    match v {
        Value::Integer(i) => Ok(Rational::from(*i)),
        Value::Float(x) => rational_from_f64(*x).ok_or_else(|| format!("{x} is not a finite number")),
        Value::String(s) => parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational number")),
        other => Err(format!("expected a number, found {}", other.type_str())),
    }
}

fn real_value(v: &Value) -> Result<LogValue, String> {
    match v {
        Value::String(s) => parse_real(s).ok_or_else(|| format!("`{s}` is not a real of the form c + Σ c·log q")),
        other => rational_value(other).map(LogValue::rational),
    }
}

fn string_list(v: &Value) -> Result<Vec<String>, String> {
    let Value::Array(items) = v else {
        return Err(format!("expected a list of strings, found {}", v.type_str()));
    };
    items
        .iter()
        .map(|x| match x {
            Value::String(s) => Ok(s.clone()),
            Value::Integer(i) => Ok(i.to_string()),
            other => Err(format!("expected a string, found {}", other.type_str())),
        })
        .collect()
}

fn unsigned(v: &Value) -> Result<u64, String> {
    match v {
        Value::Integer(i) if *i >= 0 => Ok(*i as u64),
        Value::Integer(i) => Err(format!("{i} is negative")),
        other => Err(format!("expected an integer, found {}", other.type_str())),
    }
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let table: Table = text.parse().map_err(|e: toml::de::Error| {
        let (line, column) = e.span().map_or((0, 0), |s| line_col(text, s.start));
        ConfigError::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    let mut issues = Vec::new();
    let mut issue = |field: &str, message: String| {
        issues.push(SchemaIssue {
            field: field.into(),
            message,
        })
    };

    for key in table.keys() {
        if !KNOWN_KEYS.contains(&key.as_str()) {
            issue(key, "unknown field".into());
        }
    }
    for key in ["curve", "alphas", "S", "theta", "epsilon", "height_bound"] {
        if !table.contains_key(key) {
            issue(key, "missing".into());
        }
    }

    let curve = match table.get("curve") {
        Some(Value::String(s)) => match s.parse::<FieldKind>() {
            Ok(k) => Some(k),
            Err(_) => {
                issue("curve", format!("`{s}` is neither \"Q\" nor \"Q(t)\""));
                None
            }
        },
        Some(other) => {
            issue("curve", format!("expected a string, found {}", other.type_str()));
            None
        }
        None => None,
    };

    let alphas = table
        .get("alphas")
        .and_then(|v| string_list(v).map_err(|m| issue("alphas", m)).ok());
    let places = table
        .get("S")
        .and_then(|v| string_list(v).map_err(|m| issue("S", m)).ok());

    let mut theta = None;
    match table.get("theta") {
        Some(Value::Table(t)) => {
            let mut entries = Vec::new();
            let mut ok = true;
            for (k, v) in t {
                match rational_value(v) {
                    Ok(q) => entries.push((k.clone(), q)),
                    Err(m) => {
                        issue(&format!("theta.{k}"), m);
                        ok = false;
                    }
                }
            }
            if ok {
                theta = Some(entries);
            }
        }
        Some(other) => issue("theta", format!("expected a table, found {}", other.type_str())),
        None => {}
    }

    let amplitude = match (table.get("A"), table.get("logA")) {
        (Some(_), Some(_)) => {
            issue("A", "give either A or logA, not both".into());
            None
        }
        (Some(v), None) => rational_value(v).map(AmplitudeInput::A).map_err(|m| issue("A", m)).ok(),
        (None, Some(v)) => real_value(v)
            .map(AmplitudeInput::LogA)
            .map_err(|m| issue("logA", m))
            .ok(),
        (None, None) => {
            issue("A", "missing (or give logA)".into());
            None
        }
    };
    let epsilon = table
        .get("epsilon")
        .and_then(|v| rational_value(v).map_err(|m| issue("epsilon", m)).ok());
    let height_bound = table
        .get("height_bound")
        .and_then(|v| real_value(v).map_err(|m| issue("height_bound", m)).ok());

    let coefficient_cap = match table.get("coefficient_cap") {
        Some(v) => match unsigned(v) {
            Ok(c) if c <= u32::MAX as u64 / 2 => Some(c as u32),
            Ok(c) => {
                issue("coefficient_cap", format!("{c} is too large"));
                None
            }
            Err(m) => {
                issue("coefficient_cap", m);
                None
            }
        },
        None => None,
    };
    match (curve, coefficient_cap) {
        (Some(FieldKind::Rationals), Some(_)) => issue("coefficient_cap", "only used over Q(t)".into()),
        (Some(FieldKind::RationalFunctions), None) if !table.contains_key("coefficient_cap") => {
            issue("coefficient_cap", "missing (required over Q(t))".into())
        }
        _ => {}
    }

    let max_candidates = match table.get("max_candidates") {
        Some(v) => unsigned(v).map_err(|m| issue("max_candidates", m)).ok(),
        None => Some(EnumerationOptions::default().max_candidates),
    };
    let precision_bits = match table.get("precision_bits") {
        Some(v) => match unsigned(v) {
            Ok(b) if (53..=1 << 14).contains(&b) => Some(b as u32),
            Ok(b) => {
                issue("precision_bits", format!("{b} is outside 53..=16384"));
                None
            }
            Err(m) => {
                issue("precision_bits", m);
                None
            }
        },
        None => Some(DEFAULT_PRECISION_BITS),
    };
    let tolerance = match table.get("tolerance") {
        Some(Value::Float(x)) if *x >= 0.0 && x.is_finite() => Some(*x),
        Some(Value::Integer(i)) if *i >= 0 => Some(*i as f64),
        Some(v) => {
            issue("tolerance", format!("expected a nonnegative number, found {v}"));
            None
        }
        None => Some(DEFAULT_TOLERANCE),
    };

    // θ must be given on exactly the places of S.
    let mut ordered_theta = None;
    if let (Some(places), Some(theta)) = (&places, &theta) {
        let keys: BTreeSet<&String> = theta.iter().map(|(k, _)| k).collect();
        let listed: BTreeSet<&String> = places.iter().collect();
        for p in places {
            if !keys.contains(p) {
                issue(&format!("theta.{p}"), "missing for a place of S".into());
            }
        }
        for k in &keys {
            if !listed.contains(k) {
                issue(&format!("theta.{k}"), "place is not listed in S".into());
            }
        }
        ordered_theta = Some(
            places
                .iter()
                .filter_map(|p| theta.iter().find(|(k, _)| k == p).cloned())
                .collect::<Vec<_>>(),
        );
    }

    if !issues.is_empty() {
        return Err(ConfigError::Schema(issues));
    }
    Ok(RunConfig {
        curve: curve.expect("checked"),
        alphas: alphas.expect("checked"),
        theta: ordered_theta.expect("checked"),
        amplitude: amplitude.expect("checked"),
        epsilon: epsilon.expect("checked"),
        height_bound: height_bound.expect("checked"),
        coefficient_cap,
        max_candidates: max_candidates.expect("checked"),
        precision_bits: precision_bits.expect("checked"),
        tolerance: tolerance.expect("checked"),
    })
}

impl RunConfig {
    pub fn numerics(&self) -> Numerics {
        Numerics {
            precision_bits: self.precision_bits,
            tolerance: self.tolerance,
        }
    }

    /// Resolves element strings and place ids; problems come back in the
    /// same itemized form as the validation report.
    pub fn to_spec(&self) -> Result<SystemSpec, Vec<Violation>> {
        let curve = AdelicCurve::new(self.curve, self.numerics());
        let mut violations = Vec::new();
        let mut alphas = Vec::new();
        for (i, s) in self.alphas.iter().enumerate() {
            match curve.parse_element(s) {
                Ok(a) => alphas.push(a),
                Err(e) => violations.push(Violation {
                    field: "alphas".into(),
                    message: format!("α_{}: {e}", i + 1),
                }),
            }
        }
        let mut theta = Vec::new();
        for (id, t) in &self.theta {
            match curve.place(id) {
                Ok(p) => theta.push((p, t.clone())),
                Err(e) => violations.push(Violation {
                    field: "S".into(),
                    message: e.to_string(),
                }),
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }
        let amplitude = match &self.amplitude {
            AmplitudeInput::A(a) => Amplitude::Value(a.clone()),
            AmplitudeInput::LogA(l) => Amplitude::Log(l.clone()),
        };
        Ok(SystemSpec {
            curve,
            alphas,
            theta,
            amplitude,
            epsilon: self.epsilon.clone(),
        })
    }

    pub fn enumeration_options(&self, workers: usize) -> EnumerationOptions {
        EnumerationOptions {
            coefficient_cap: self
                .coefficient_cap
                .unwrap_or(EnumerationOptions::default().coefficient_cap),
            max_candidates: self.max_candidates,
            workers,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str =
        "curve = \"Q\"\nalphas = [\"1\"]\nS = [\"inf\"]\nA = 1\nepsilon = 1\nheight_bound = 3\n\n[theta]\ninf = 3\n";

    #[test]
    fn minimal_config() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.curve, FieldKind::Rationals);
        assert_eq!(c.theta, vec![("inf".to_string(), Rational::from(3))]);
        assert_eq!(c.precision_bits, 128);
        assert_eq!(c.tolerance, 1e-9);
        assert_eq!(c.height_bound, LogValue::int(3));
        assert!(c.to_spec().is_ok());
    }

    #[test]
    fn missing_epsilon_is_named() {
        let text = MINIMAL.replace("epsilon = 1\n", "");
        let err = parse_config(&text).unwrap_err();
        assert_eq!(
            err.issues().iter().map(|i| i.field.as_str()).collect::<Vec<_>>(),
            vec!["epsilon"]
        );
    }

    #[test]
    fn all_problems_are_listed() {
        let text = "curve = \"R\"\nalphas = [\"1\"]\nS = [\"inf\", \"3\"]\nlogA = \"log\"\nheight_bound = \"log 20\"\n[theta]\ninf = 2.5\n";
        let fields: Vec<String> = parse_config(text)
            .unwrap_err()
            .issues()
            .iter()
            .map(|i| i.field.clone())
            .collect();
        for f in ["epsilon", "curve", "logA", "theta.3"] {
            assert!(fields.contains(&f.to_string()), "{f} not in {fields:?}");
        }
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = parse_config("curve = \"Q\"\nalphas = [\"1\"\n").unwrap_err();
        assert!(matches!(err, ConfigError::Parse { line: 2.., .. }), "{err:?}");
    }

    #[test]
    fn decimals_are_exact() {
        let text = MINIMAL.replace("inf = 3", "inf = 2.5").replace("A = 1", "A = 0.125");
        let c = parse_config(&text).unwrap();
        assert_eq!(c.theta[0].1, Rational::from((5, 2)));
        assert_eq!(c.amplitude, AmplitudeInput::A(Rational::from((1, 8))));
    }
}

//! Real numbers of the shape `c₀ + Σ c_p·log p (+ approximation)`.
//!
//! Everything the adelic side produces (local logs, heights, ρ-values,
//! thresholds) is a rational combination of logarithms of primes plus a
//! rational constant, so it is stored exactly. Since `1, log 2, log 3, …` are
//! linearly independent over ℚ, an exact value is zero only when every
//! coefficient vanishes; nonzero signs come from interval-style evaluation at
//! increasing precision. Values with an explicit floating component (synthetic
//! inputs, quantities entered as decimals of something irrational) carry an
//! error bound and may come back as [`Sign::Unknown`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::Round;
use rug::ops::AddAssignRound;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::arith::integer::factorize;

pub const DEFAULT_PRECISION_BITS: u32 = 128;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
const MAX_PRECISION_BITS: u32 = 1 << 14;

/// Working precision and the comparison band for approximate values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Numerics {
    pub precision_bits: u32,
    pub tolerance: f64,
}

impl Default for Numerics {
    fn default() -> Self {
        Numerics {
            precision_bits: DEFAULT_PRECISION_BITS,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Uncertain,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Conjunction: any fail wins, then any uncertainty.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Uncertain, _) | (_, Verdict::Uncertain) => Verdict::Uncertain,
            _ => Verdict::Pass,
        }
    }

    pub fn all(it: impl IntoIterator<Item = Verdict>) -> Verdict {
        it.into_iter().fold(Verdict::Pass, Verdict::and)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Uncertain => "uncertain",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
struct Approx {
    value: Float,
    err: Float,
}

const ERR_PREC: u32 = 64;

/// `2^-k` as a float for error bookkeeping.
fn ulp_scale(k: i32) -> Float {
    Float::with_val(ERR_PREC, Float::i_exp(1, -k))
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct LogValue {
    logs: BTreeMap<Integer, Rational>,
    constant: Rational,
    approx: Option<Approx>,
}

impl LogValue {
    pub fn zero() -> Self {
        LogValue::default()
    }

    pub fn rational(q: Rational) -> Self {
        LogValue {
            constant: q,
            ..LogValue::default()
        }
    }

    pub fn int(n: i64) -> Self {
        LogValue::rational(Rational::from(n))
    }

    /// `log p` for a prime `p`; the caller vouches for primality.
    pub fn log_prime(p: Integer) -> Self {
        let mut logs = BTreeMap::new();
        logs.insert(p, Rational::from(1));
        LogValue {
            logs,
            ..LogValue::default()
        }
    }

    /// `log |n|` for a nonzero integer.
    pub fn log_int(n: &Integer) -> Self {
        let mut out = LogValue::zero();
        for (p, e) in factorize(n) {
            out.logs.insert(p, Rational::from(e));
        }
        out
    }

    pub fn log_u64(n: u64) -> Self {
        LogValue::log_int(&Integer::from(n))
    }

    /// `log |q|` for a nonzero rational.
    pub fn log_rational(q: &Rational) -> Self {
        &LogValue::log_int(q.numer()) - &LogValue::log_int(q.denom())
    }

    /// A value known only to within `err`.
    pub fn approx(value: Float, err: Float) -> Self {
        let err = Float::with_val(ERR_PREC, err.abs_ref());
        LogValue {
            approx: Some(Approx { value, err }),
            ..LogValue::default()
        }
    }

    pub fn from_f64(x: f64, err: f64) -> Self {
        LogValue::approx(Float::with_val(64, x), Float::with_val(ERR_PREC, err))
    }

    pub fn is_exact(&self) -> bool {
        self.approx.is_none()
    }

    /// Exactly zero (meaningful only for exact values).
    pub fn is_exact_zero(&self) -> bool {
        self.is_exact() && self.logs.is_empty() && self.constant == 0
    }

    /// The rational value when no logarithm or approximation is involved.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.is_exact() && self.logs.is_empty()).then_some(&self.constant)
    }

    pub fn constant_part(&self) -> &Rational {
        &self.constant
    }

    /// Coefficients of `log p`, ascending by prime.
    pub fn log_terms(&self) -> impl Iterator<Item = (&Integer, &Rational)> {
        self.logs.iter()
    }

    pub fn error_bound(&self) -> Float {
        self.approx.as_ref().map_or(Float::new(ERR_PREC), |a| a.err.clone())
    }

    pub fn scale(&self, c: &Rational) -> LogValue {
        if *c == 0 {
            return LogValue::zero();
        }
        LogValue {
            logs: self
                .logs
                .iter()
                .map(|(p, k)| (p.clone(), Rational::from(k * c)))
                .collect(),
            constant: Rational::from(&self.constant * c),
            approx: self.approx.as_ref().map(|a| {
                let cf = Float::with_val(a.value.prec().max(64), c);
                Approx {
                    value: Float::with_val(a.value.prec(), &a.value * &cf),
                    err: Float::with_val(ERR_PREC, &a.err * &cf).abs() * Float::with_val(ERR_PREC, 1.0 + 1e-12)
                        + Float::with_val(ERR_PREC, &a.value * &cf).abs() * ulp_scale(a.value.prec() as i32 - 1),
                }
            }),
        }
    }

    pub fn scale_int(&self, c: &Integer) -> LogValue {
        self.scale(&Rational::from(c))
    }

    /// Evaluates at `prec` bits, returning the value and an absolute error
    /// bound for it.
    pub fn eval(&self, prec: u32) -> (Float, Float) {
        let mut acc = Float::with_val(prec, &self.constant);
        let mut magnitude = Float::with_val(ERR_PREC, acc.abs_ref());
        for (p, k) in &self.logs {
            let lp = Float::with_val(prec, p).ln();
            let term = Float::with_val(prec, &lp * k);
            magnitude += Float::with_val(ERR_PREC, term.abs_ref());
            acc.add_assign_round(&term, Round::Nearest);
        }
        // Each conversion, logarithm, product and sum costs at most a couple
        // of ulps relative to the running magnitude.
        let terms = self.logs.len() as u32 + 2;
        let mut err = magnitude * (4 * terms) * ulp_scale(prec as i32);
        if let Some(a) = &self.approx {
            acc += &a.value;
            err += &a.err;
            err += Float::with_val(ERR_PREC, acc.abs_ref()) * ulp_scale(prec as i32 - 2);
        }
        (acc, err)
    }

    pub fn to_f64(&self) -> f64 {
        self.eval(DEFAULT_PRECISION_BITS).0.to_f64()
    }

    pub fn to_float(&self, prec: u32) -> Float {
        self.eval(prec).0
    }

    pub fn sign(&self, numerics: &Numerics) -> Sign {
        if self.is_exact() {
            if self.is_exact_zero() {
                return Sign::Zero;
            }
            let mut prec = numerics.precision_bits.max(64);
            loop {
                let (v, err) = self.eval(prec);
                if Float::with_val(ERR_PREC, v.abs_ref()) > err {
                    return if v.is_sign_negative() {
                        Sign::Negative
                    } else {
                        Sign::Positive
                    };
                }
                if prec >= MAX_PRECISION_BITS {
                    return Sign::Unknown;
                }
                prec *= 2;
            }
        }
        let (v, err) = self.eval(numerics.precision_bits.max(64));
        let tolerance = Float::with_val(ERR_PREC, numerics.tolerance);
        let band = if err > tolerance { err } else { tolerance };
        if Float::with_val(ERR_PREC, v.abs_ref()) <= band {
            Sign::Unknown
        } else if v.is_sign_negative() {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    /// Exact ordering when it can be decided.
    pub fn cmp_with(&self, other: &LogValue, numerics: &Numerics) -> Option<Ordering> {
        match (self - other).sign(numerics) {
            Sign::Negative => Some(Ordering::Less),
            Sign::Zero => Some(Ordering::Equal),
            Sign::Positive => Some(Ordering::Greater),
            Sign::Unknown => None,
        }
    }

    /// A total order for sorting: exact where decidable, by nearest float otherwise.
    pub fn order(&self, other: &LogValue, numerics: &Numerics) -> Ordering {
        self.cmp_with(other, numerics)
            .unwrap_or_else(|| self.to_f64().partial_cmp(&other.to_f64()).unwrap_or(Ordering::Equal))
    }

    /// `self ≤ other`.
    pub fn le(&self, other: &LogValue, numerics: &Numerics) -> Verdict {
        match (self - other).sign(numerics) {
            Sign::Negative | Sign::Zero => Verdict::Pass,
            Sign::Positive => Verdict::Fail,
            Sign::Unknown => Verdict::Uncertain,
        }
    }

    /// `self < other`; an exact tie is not decidable by rounding and is
    /// reported as uncertain.
    pub fn lt(&self, other: &LogValue, numerics: &Numerics) -> Verdict {
        match (self - other).sign(numerics) {
            Sign::Negative => Verdict::Pass,
            Sign::Positive => Verdict::Fail,
            Sign::Zero | Sign::Unknown => Verdict::Uncertain,
        }
    }

    pub fn ge(&self, other: &LogValue, numerics: &Numerics) -> Verdict {
        other.le(self, numerics)
    }

    /// `max(self, 0)`, or `None` when the sign is undecidable.
    pub fn positive_part(&self, numerics: &Numerics) -> Option<LogValue> {
        match self.sign(numerics) {
            Sign::Positive => Some(self.clone()),
            Sign::Zero | Sign::Negative => Some(LogValue::zero()),
            Sign::Unknown => None,
        }
    }

    /// Larger of two values; on an undecidable comparison the first wins.
    pub fn max(&self, other: &LogValue, numerics: &Numerics) -> LogValue {
        match self.cmp_with(other, numerics) {
            Some(Ordering::Less) => other.clone(),
            _ => self.clone(),
        }
    }

    /// Symbolic rendering such as `log 3`, `2*log 2 - log 5 + 1/2`.
    pub fn symbolic(&self) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (p, k) in &self.logs {
            let mag = Rational::from(k.abs_ref());
            let body = if mag == 1 {
                format!("log {p}")
            } else {
                format!("{mag}*log {p}")
            };
            parts.push((*k < 0, body));
        }
        if self.constant != 0 || parts.is_empty() {
            parts.push((self.constant < 0, Rational::from(self.constant.abs_ref()).to_string()));
        }
        if let Some(a) = &self.approx {
            let v = a.value.to_f64();
            parts.push((v < 0.0, format!("{}", v.abs())));
        }
        let mut out = String::new();
        for (i, (neg, body)) in parts.into_iter().enumerate() {
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn decimal(&self, digits: usize) -> String {
        format_float(&self.to_float(DEFAULT_PRECISION_BITS), digits)
    }
}

/// Fixed, platform-independent decimal rendering of a float with `digits`
/// significant digits; plain notation for moderate exponents.
pub fn format_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let s = x.to_string_radix(10, Some(digits.max(1)));
    let (mantissa, exp) = match s.split_once('e') {
        Some((m, e)) => (m.to_string(), e.parse::<i64>().unwrap_or(0)),
        None => (s.clone(), 0),
    };
    // Normalize to a single leading digit so the exponent is the decimal one.
    let (neg, m) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, mantissa),
    };
    let (int_part, frac_part) = m.split_once('.').unwrap_or((&m, ""));
    let digits_all: String = format!("{int_part}{frac_part}");
    let lead_zeros = digits_all.len() - digits_all.trim_start_matches('0').len();
    let digits_all = digits_all.trim_start_matches('0').to_string();
    let exp = exp + int_part.len() as i64 - 1 - lead_zeros as i64;
    let digits_all = digits_all.trim_end_matches('0');
    let digits_all = if digits_all.is_empty() { "0" } else { digits_all };
    let body = if (-6..=15).contains(&exp) {
        let point = 1 + exp;
        if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), digits_all)
        } else if point as usize >= digits_all.len() {
            format!("{}{}", digits_all, "0".repeat(point as usize - digits_all.len()))
        } else {
            format!("{}.{}", &digits_all[..point as usize], &digits_all[point as usize..])
        }
    } else if digits_all.len() == 1 {
        format!("{digits_all}e{exp}")
    } else {
        format!("{}.{}e{}", &digits_all[..1], &digits_all[1..], exp)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbolic())
    }
}

fn merge_approx(a: &Option<Approx>, b: &Option<Approx>, negate_b: bool) -> Option<Approx> {
    match (a, b) {
        (None, None) => None,
        (Some(x), None) => Some(x.clone()),
        (None, Some(y)) => Some(Approx {
            value: if negate_b {
                Float::with_val(y.value.prec(), -&y.value)
            } else {
                y.value.clone()
            },
            err: y.err.clone(),
        }),
        (Some(x), Some(y)) => {
            let prec = x.value.prec().max(y.value.prec());
            let value = if negate_b {
                Float::with_val(prec, &x.value - &y.value)
            } else {
                Float::with_val(prec, &x.value + &y.value)
            };
            let rounding = Float::with_val(ERR_PREC, value.abs_ref()) * ulp_scale(prec as i32 - 1);
            let err = Float::with_val(ERR_PREC, &x.err + &y.err) + rounding;
            Some(Approx { value, err })
        }
    }
}

impl Add for &LogValue {
    type Output = LogValue;
    fn add(self, rhs: &LogValue) -> LogValue {
        let mut logs = self.logs.clone();
        for (p, k) in &rhs.logs {
            let entry = logs.entry(p.clone()).or_default();
            *entry += k;
            if *entry == 0 {
                logs.remove(p);
            }
        }
        LogValue {
            logs,
            constant: Rational::from(&self.constant + &rhs.constant),
            approx: merge_approx(&self.approx, &rhs.approx, false),
        }
    }
}

impl Sub for &LogValue {
    type Output = LogValue;
    fn sub(self, rhs: &LogValue) -> LogValue {
        let mut logs = self.logs.clone();
        for (p, k) in &rhs.logs {
            let entry = logs.entry(p.clone()).or_default();
            *entry -= k;
            if *entry == 0 {
                logs.remove(p);
            }
        }
        LogValue {
            logs,
            constant: Rational::from(&self.constant - &rhs.constant),
            approx: merge_approx(&self.approx, &rhs.approx, true),
        }
    }
}

impl Neg for &LogValue {
    type Output = LogValue;
    fn neg(self) -> LogValue {
        self.scale(&Rational::from(-1))
    }
}

impl Mul<&Rational> for &LogValue {
    type Output = LogValue;
    fn mul(self, rhs: &Rational) -> LogValue {
        self.scale(rhs)
    }
}

impl std::iter::Sum for LogValue {
    fn sum<I: Iterator<Item = LogValue>>(iter: I) -> LogValue {
        iter.fold(LogValue::zero(), |acc, x| &acc + &x)
    }
}

/// Exact rational from a decimal or fraction literal such as `2.5`, `-3/4`,
/// `1e-3`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d == 0 {
            return None;
        }
        return Some(n / d);
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = Integer::from_str_radix(if digits.is_empty() { "0" } else { &digits }, 10).ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = Integer::from(10);
    let mut q = Rational::from(numer);
    if scale >= 0 {
        q *= ten.pow_ref_u32(scale as u32);
    } else {
        q /= ten.pow_ref_u32((-scale) as u32);
    }
    Some(if neg { -q } else { q })
}

trait PowU32 {
    fn pow_ref_u32(&self, e: u32) -> Integer;
}

impl PowU32 for Integer {
    fn pow_ref_u32(&self, e: u32) -> Integer {
        use rug::ops::Pow;
        Integer::from(self).pow(e)
    }
}

/// Exact rational equal to the shortest decimal that round-trips `x`.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    parse_rational(&format!("{x:?}"))
}

/// A real quantity in the exact log-linear form: sums of terms like `2.5`,
/// `3/2`, `log 20`, `log(3/2)`, `2*log 3`.
pub fn parse_real(text: &str) -> Option<LogValue> {
    let s: String = text.trim().to_string();
    if s.is_empty() {
        return None;
    }
    let mut total = LogValue::zero();
    for (neg, term) in split_terms(&s)? {
        let v = parse_term(term.trim())?;
        total = if neg { &total - &v } else { &total + &v };
    }
    Some(total)
}

fn split_terms(s: &str) -> Option<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut neg = false;
    let mut depth = 0i32;
    let chars: Vec<char> = s.chars().collect();
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let prev = current.trim_end().chars().last();
        let sign_position = depth == 0
            && (c == '+' || c == '-')
            && !matches!(prev, Some('e') | Some('E') | Some('*') | Some('/'))
            && i > 0
            && !current.trim().is_empty();
        if sign_position {
            out.push((neg, std::mem::take(&mut current)));
            neg = c == '-';
        } else if c == '-' && current.trim().is_empty() && depth == 0 {
            neg = !neg;
        } else if c == '+' && current.trim().is_empty() && depth == 0 {
        } else {
            current.push(c);
        }
    }
    if depth != 0 || current.trim().is_empty() {
        return None;
    }
    out.push((neg, current));
    Some(out)
}

fn parse_term(term: &str) -> Option<LogValue> {
    if let Some(i) = term.find("log") {
        let coeff = term[..i].trim().trim_end_matches('*').trim();
        let coeff = if coeff.is_empty() {
            Rational::from(1)
        } else {
            parse_rational(coeff)?
        };
        let arg = term[i + 3..].trim();
        let arg = arg.strip_prefix('(').and_then(|a| a.strip_suffix(')')).unwrap_or(arg);
        let q = parse_rational(arg)?;
        if q <= 0 {
            return None;
        }
        return Some(LogValue::log_rational(&q).scale(&coeff));
    }
    parse_rational(term).map(LogValue::rational)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num() -> Numerics {
        Numerics::default()
    }

    #[test]
    fn exact_zero_from_cancelling_logs() {
        let v = &(&LogValue::log_u64(12) - &LogValue::log_u64(4)) - &LogValue::log_u64(3);
        assert!(v.is_exact_zero());
        assert_eq!(v.sign(&num()), Sign::Zero);
    }

    #[test]
    fn tiny_exact_differences_are_still_decided() {
        // log(2^10) vs log(1025): differ by about 1e-3, far outside tolerance
        // here, but 3^{-} style near misses also resolve: log 3^12 - log 2^19.
        let a = LogValue::log_u64(531441);
        let b = LogValue::log_u64(524288);
        assert_eq!((&a - &b).sign(&num()), Sign::Positive);
        let c = &LogValue::log_u64(2).scale(&Rational::from(665)) - &LogValue::log_u64(3).scale(&Rational::from(418));
        // 2^665 / 3^418 is within a factor 1 + 1e-3 of 1 but not equal.
        assert_ne!(c.sign(&num()), Sign::Zero);
        assert_ne!(c.sign(&num()), Sign::Unknown);
    }

    #[test]
    fn approximate_values_respect_the_band() {
        let x = LogValue::from_f64(1e-12, 0.0);
        assert_eq!(x.sign(&num()), Sign::Unknown);
        let y = LogValue::from_f64(-1e-3, 1e-15);
        assert_eq!(y.sign(&num()), Sign::Negative);
    }

    #[test]
    fn strict_comparison_at_tie_is_uncertain() {
        let a = LogValue::log_u64(8);
        let b = LogValue::log_u64(2).scale(&Rational::from(3));
        assert_eq!(a.lt(&b, &num()), Verdict::Uncertain);
        assert_eq!(a.le(&b, &num()), Verdict::Pass);
    }

    #[test]
    fn parses_reals() {
        assert_eq!(parse_rational("2.5"), Some(Rational::from((5, 2))));
        assert_eq!(parse_rational("-3/4"), Some(Rational::from((-3, 4))));
        assert_eq!(parse_rational("1e-3"), Some(Rational::from((1, 1000))));
        assert_eq!(parse_rational("0.1"), Some(Rational::from((1, 10))));
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(rational_from_f64(0.1), Some(Rational::from((1, 10))));
        let v = parse_real("log 20").unwrap();
        assert_eq!(v, LogValue::log_u64(20));
        assert_eq!(parse_real("log(20)").unwrap(), v);
        let w = parse_real("2*log 3 - 1/2").unwrap();
        assert!((w.to_f64() - (2.0 * 3f64.ln() - 0.5)).abs() < 1e-15);
        assert_eq!(parse_real("-1.5").unwrap(), LogValue::rational(Rational::from((-3, 2))));
        assert!(parse_real("log 0").is_none());
    }

    #[test]
    fn symbolic_rendering() {
        assert_eq!(LogValue::log_u64(3).symbolic(), "log 3");
        let v = &LogValue::log_rational(&Rational::from((12, 5))) + &LogValue::rational(Rational::from((1, 2)));
        assert_eq!(v.symbolic(), "2*log 2 + log 3 - log 5 + 1/2");
        assert_eq!(LogValue::zero().symbolic(), "0");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(LogValue::log_u64(3).decimal(6), "1.09861");
        assert_eq!(LogValue::int(0).decimal(6), "0");
    }
}

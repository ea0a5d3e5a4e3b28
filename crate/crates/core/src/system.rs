//! The approximation system `|β − α_i|_ω ≤ (A·H(β))^{−θ(ω)}` for all `i` and
//! all `ω ∈ S`, its hypotheses, and brute-force censuses of its solutions.

use std::collections::BTreeSet;

use rayon::prelude::*;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::arith::QPoly;
use crate::curve::{rationals_of_size, AdelicCurve, Place};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldKind};
use crate::gap::{big_solution_threshold, gap2_params, BigThreshold, Gap2Params};
use crate::numeric::{LogValue, Numerics, Sign, Verdict};

/// The constant `A`, either directly or through `log A`.
#[derive(Clone, Debug, PartialEq)]
pub enum Amplitude {
    Value(Rational),
    Log(LogValue),
}

impl Amplitude {
    /// `log A`; `None` when `A ≤ 0`.
    pub fn log(&self) -> Option<LogValue> {
        match self {
            Amplitude::Value(a) if *a > 0 => Some(LogValue::log_rational(a)),
            Amplitude::Value(_) => None,
            Amplitude::Log(l) => Some(l.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemSpec {
    pub curve: AdelicCurve,
    pub alphas: Vec<FieldElement>,
    /// The finite set `S` together with the step function `θ` on it.
    pub theta: Vec<(Place, Rational)>,
    pub amplitude: Amplitude,
    pub epsilon: Rational,
}

impl SystemSpec {
    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn places(&self) -> impl Iterator<Item = &Place> {
        self.theta.iter().map(|(p, _)| p)
    }

    pub fn numerics(&self) -> &Numerics {
        self.curve.numerics()
    }

    /// `∫_S θ dμ = Σ μ(ω)·θ(ω)`.
    pub fn theta_integral(&self) -> Rational {
        self.theta.iter().map(|(p, t)| Rational::from(p.mass() * t)).sum()
    }

    /// `log A`. Panics when `A ≤ 0`; run [`validate_spec`] first.
    pub fn log_a(&self) -> LogValue {
        self.amplitude.log().expect("A must be positive")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub field: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub theta_integral: Rational,
    pub params: Option<Gap2Params>,
    /// `2N!·log 4 + (2N!/n)·Σ h(α_i)`, the largest admissible `log A`.
    pub log_a_bound: Option<LogValue>,
    pub amplitude_verdict: Option<Verdict>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every hypothesis on the data, collecting all violations.
pub fn validate_spec(spec: &SystemSpec) -> ValidationReport {
    let mut violations = Vec::new();
    let mut push = |field: &str, message: String| {
        violations.push(Violation {
            field: field.into(),
            message,
        })
    };
    let field = spec.curve.field();
    let numerics = *spec.numerics();

    if spec.alphas.is_empty() {
        push("alphas", "at least one α is required".into());
    }
    for (i, a) in spec.alphas.iter().enumerate() {
        if a.is_zero() {
            push("alphas", format!("α_{} is zero", i + 1));
        }
        if !a.belongs_to(field) {
            push("alphas", format!("α_{} = {a} is not in {field}", i + 1));
        }
    }
    for i in 0..spec.alphas.len() {
        for j in i + 1..spec.alphas.len() {
            if spec.alphas[i] == spec.alphas[j] {
                push(
                    "alphas",
                    format!("α_{} and α_{} are both {}", i + 1, j + 1, spec.alphas[i]),
                );
            }
        }
    }
    if spec.theta.is_empty() {
        push("S", "S must contain at least one place".into());
    }
    let mut seen = BTreeSet::new();
    for (p, t) in &spec.theta {
        if !spec.curve.contains_place(p) {
            push("S", format!("place {p} does not belong to {field}"));
        }
        if !seen.insert(p.clone()) {
            push("S", format!("place {p} is listed twice"));
        }
        if *t < 0 {
            push("theta", format!("θ({p}) = {t} is negative"));
        }
    }
    if spec.epsilon <= 0 {
        push("epsilon", format!("ε = {} must be positive", spec.epsilon));
    }
    let theta_integral = spec.theta_integral();
    let needed = Rational::from(&spec.epsilon + 2u32);
    if theta_integral < needed {
        push(
            "theta",
            format!("∫_S θ dμ = {theta_integral} is below 2 + ε = {needed}"),
        );
    }
    let log_a = spec.amplitude.log();
    if log_a.is_none() {
        push("A", "A must be positive".into());
    }

    let mut params = None;
    let mut log_a_bound = None;
    let mut amplitude_verdict = None;
    let alphas_ok = !spec.alphas.is_empty() && spec.alphas.iter().all(|a| !a.is_zero() && a.belongs_to(field));
    if spec.epsilon > 0 && alphas_ok {
        let p = gap2_params(spec.n() as u64, &spec.epsilon);
        let sum_h: LogValue = spec
            .alphas
            .iter()
            .map(|a| spec.curve.height(a).expect("checked nonzero"))
            .sum();
        let two_fact = Integer::from(&p.n_factorial * 2u32);
        let bound = &LogValue::log_u64(4).scale_int(&two_fact)
            + &sum_h.scale(&Rational::from((two_fact, Integer::from(spec.n()))));
        if let Some(la) = &log_a {
            let v = la.le(&bound, &numerics);
            match v {
                Verdict::Pass => {}
                Verdict::Fail => push("A", "log A exceeds 2N!·log 4 + (2N!/n)·Σ h(α_i)".into()),
                Verdict::Uncertain => push(
                    "A",
                    "log A is too close to 2N!·log 4 + (2N!/n)·Σ h(α_i) to decide".into(),
                ),
            }
            amplitude_verdict = Some(v);
        }
        log_a_bound = Some(bound);
        params = Some(p);
    }
    ValidationReport {
        violations,
        theta_integral,
        params,
        log_a_bound,
        amplitude_verdict,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolutionVerdict {
    Pass,
    Fail,
    Degenerate,
    Uncertain,
}

/// Membership test with the height that it needed along the way.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionCheck {
    pub verdict: SolutionVerdict,
    pub height: LogValue,
}

pub fn check_solution(spec: &SystemSpec, beta: &FieldElement, log_a: &LogValue) -> Result<SolutionCheck> {
    let height = spec.curve.height(beta)?;
    if spec.alphas.contains(beta) {
        return Ok(SolutionCheck {
            verdict: SolutionVerdict::Degenerate,
            height,
        });
    }
    let scale = log_a + &height;
    let numerics = spec.numerics();
    let mut verdict = Verdict::Pass;
    for alpha in &spec.alphas {
        let diff = beta.sub(alpha);
        for (place, theta) in &spec.theta {
            let lhs = spec.curve.local_log_abs(place, &diff)?;
            let rhs = -&scale.scale(theta);
            verdict = verdict.and(lhs.le(&rhs, numerics));
            if verdict == Verdict::Fail {
                return Ok(SolutionCheck {
                    verdict: SolutionVerdict::Fail,
                    height,
                });
            }
        }
    }
    let verdict = match verdict {
        Verdict::Pass => SolutionVerdict::Pass,
        Verdict::Fail => SolutionVerdict::Fail,
        Verdict::Uncertain => SolutionVerdict::Uncertain,
    };
    Ok(SolutionCheck { verdict, height })
}

pub fn is_solution(spec: &SystemSpec, beta: &FieldElement) -> Result<SolutionVerdict> {
    Ok(check_solution(spec, beta, &spec.log_a())?.verdict)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub element: FieldElement,
    pub height: LogValue,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnumerationOptions {
    /// Bound on the absolute value of the integer coefficients of numerator
    /// and denominator in ℚ(t) enumerations.
    pub coefficient_cap: u32,
    pub max_candidates: u64,
    pub workers: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            coefficient_cap: 2,
            max_candidates: 5_000_000,
            workers: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Census {
    pub spec: SystemSpec,
    pub height_bound: LogValue,
    pub coefficient_cap: Option<u32>,
    /// Size of the candidate grid that was scanned.
    pub candidates: u64,
    pub solutions: Vec<Solution>,
    /// Candidates whose membership could not be decided.
    pub uncertain: Vec<Solution>,
    pub degenerate: Vec<FieldElement>,
    pub big_threshold: BigThreshold,
    pub big_solutions: Vec<Solution>,
}

/// Sorts by height, then by canonical string.
pub fn sort_solutions(list: &mut [Solution], numerics: &Numerics) {
    let keys: Vec<String> = list.iter().map(|s| s.element.to_string()).collect();
    let mut idx: Vec<usize> = (0..list.len()).collect();
    idx.sort_by(|&a, &b| {
        list[a]
            .height
            .order(&list[b].height, numerics)
            .then_with(|| keys[a].cmp(&keys[b]))
    });
    let sorted: Vec<Solution> = idx.iter().map(|&i| list[i].clone()).collect();
    list.clone_from_slice(&sorted);
}

/// Largest `M ≥ 0` with `log M ≤ bound` (0 when `bound < 0`).
fn exp_floor(bound: &LogValue, numerics: &Numerics) -> Option<Integer> {
    if bound.lt(&LogValue::zero(), numerics) == Verdict::Pass {
        return Some(Integer::new());
    }
    let approx = bound.to_float(128);
    if approx > 200 {
        return None;
    }
    let mut m = Float::with_val(256, approx.exp())
        .floor()
        .to_integer()
        .unwrap_or_default()
        .max(Integer::from(1));
    while LogValue::log_int(&Integer::from(&m + 1u32)).le(bound, numerics) == Verdict::Pass {
        m += 1;
    }
    while m > 1 && LogValue::log_int(&m).le(bound, numerics) != Verdict::Pass {
        m -= 1;
    }
    Some(m)
}

/// `⌊bound⌋` as a degree limit (`None` when negative).
fn floor_degree(bound: &LogValue, numerics: &Numerics) -> Option<u32> {
    let approx = bound.to_f64();
    if !approx.is_finite() || !(-1.0..=64.0).contains(&approx) {
        return if approx > 64.0 { Some(u32::MAX) } else { None };
    }
    let mut d = approx.floor().max(0.0) as i64;
    while LogValue::int(d + 1).le(bound, numerics) == Verdict::Pass {
        d += 1;
    }
    while d >= 0 && LogValue::int(d).le(bound, numerics) != Verdict::Pass {
        d -= 1;
    }
    (d >= 0).then_some(d as u32)
}

fn int_polys(max_degree: u32, cap: u32) -> Vec<Vec<Integer>> {
    let width = 2 * cap as i64 + 1;
    let mut out = Vec::new();
    for len in 1..=max_degree as usize + 1 {
        let total = (width as u64).pow(len as u32);
        for code in 0..total {
            let mut c = code;
            let mut coeffs = Vec::with_capacity(len);
            for _ in 0..len {
                coeffs.push(Integer::from((c % width as u64) as i64 - cap as i64));
                c /= width as u64;
            }
            if *coeffs.last().unwrap() != 0 {
                out.push(coeffs);
            }
        }
    }
    out
}

/// Exhaustive census of `h(β) ≤ height_bound`. Over ℚ this is every
/// reduced `p/q` with `max(|p|, q) ≤ e^{bound}`; over ℚ(t) every quotient of
/// integer polynomials of degree `≤ bound` whose coefficients lie in
/// `[−cap, cap]`.
pub fn enumerate_solutions(spec: &SystemSpec, height_bound: &LogValue, options: &EnumerationOptions) -> Result<Census> {
    let numerics = *spec.numerics();
    if height_bound.sign(&numerics) == Sign::Negative {
        return Err(Error::InvalidArgument("height bound must be nonnegative".into()));
    }
    let log_a = spec
        .amplitude
        .log()
        .ok_or_else(|| Error::InvalidArgument("A must be positive".into()))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;

    let (candidates, checked, cap) = match spec.curve.field() {
        FieldKind::Rationals => {
            let m = exp_floor(height_bound, &numerics).ok_or_else(|| Error::CapacityExceeded {
                candidates: format!("about exp({})", height_bound.decimal(6)),
                limit: options.max_candidates,
            })?;
            let grid = Integer::from(&m * &m) * 2u32 + 1u32;
            if grid > options.max_candidates {
                return Err(Error::CapacityExceeded {
                    candidates: grid.to_string(),
                    limit: options.max_candidates,
                });
            }
            let m = m.to_u64().expect("bounded by the capacity check");
            let checked: Vec<Result<Vec<(FieldElement, SolutionCheck)>>> = pool.install(|| {
                (1..=m)
                    .into_par_iter()
                    .map(|size| {
                        rationals_of_size(size)
                            .into_iter()
                            .map(|b| check_solution(spec, &b, &log_a).map(|c| (b, c)))
                            .collect()
                    })
                    .collect()
            });
            let mut flat = Vec::new();
            let mut count = 0u64;
            for part in checked {
                let part = part?;
                count += part.len() as u64;
                flat.extend(part);
            }
            (count, flat, None)
        }
        FieldKind::RationalFunctions => {
            let cap = options.coefficient_cap;
            let Some(d) = floor_degree(height_bound, &numerics) else {
                return Err(Error::InvalidArgument("height bound must be nonnegative".into()));
            };
            let width = Integer::from(2 * cap + 1);
            let per_side = if d == u32::MAX {
                None
            } else {
                Some(width.pow_ref_u32(d + 1))
            };
            let grid = per_side.map(|s| Integer::from(&s * &s));
            match &grid {
                Some(g) if *g <= options.max_candidates => {}
                _ => {
                    return Err(Error::CapacityExceeded {
                        candidates: grid.map_or_else(|| "unbounded".to_string(), |g| g.to_string()),
                        limit: options.max_candidates,
                    })
                }
            }
            let polys = int_polys(d, cap);
            let dens: Vec<&Vec<Integer>> = polys.iter().filter(|p| *p.last().unwrap() > 0).collect();
            let unique: BTreeSet<String>;
            let mut elements: Vec<FieldElement> = Vec::new();
            {
                let mut seen = BTreeSet::new();
                for num in &polys {
                    for den in &dens {
                        let e = FieldElement::from_polys(QPoly::from_integers(num), QPoly::from_integers(den));
                        let key = e.to_string();
                        if seen.insert(key) {
                            elements.push(e);
                        }
                    }
                }
                unique = seen;
            }
            let count = unique.len() as u64;
            let checked: Vec<Result<(FieldElement, SolutionCheck)>> = pool.install(|| {
                elements
                    .into_par_iter()
                    .map(|b| check_solution(spec, &b, &log_a).map(|c| (b, c)))
                    .collect()
            });
            let checked: Result<Vec<_>> = checked.into_iter().collect();
            (count, checked?, Some(cap))
        }
    };

    let mut solutions = Vec::new();
    let mut uncertain = Vec::new();
    for (element, check) in checked {
        if check.height.le(height_bound, &numerics) != Verdict::Pass {
            continue;
        }
        match check.verdict {
            SolutionVerdict::Pass => solutions.push(Solution {
                element,
                height: check.height,
            }),
            SolutionVerdict::Uncertain => uncertain.push(Solution {
                element,
                height: check.height,
            }),
            SolutionVerdict::Fail | SolutionVerdict::Degenerate => {}
        }
    }
    sort_solutions(&mut solutions, &numerics);
    sort_solutions(&mut uncertain, &numerics);

    let mut degenerate: Vec<Solution> = spec
        .alphas
        .iter()
        .filter_map(|a| {
            let h = spec.curve.height(a).ok()?;
            (h.le(height_bound, &numerics) == Verdict::Pass).then(|| Solution {
                element: a.clone(),
                height: h,
            })
        })
        .collect();
    sort_solutions(&mut degenerate, &numerics);

    let big_threshold = big_solution_threshold(spec);
    let big_solutions = solutions
        .iter()
        .filter(|s| s.height.ge(&big_threshold.value, &numerics) != Verdict::Fail)
        .cloned()
        .collect();
    Ok(Census {
        spec: spec.clone(),
        height_bound: height_bound.clone(),
        coefficient_cap: cap,
        candidates,
        solutions,
        uncertain,
        degenerate: degenerate.into_iter().map(|s| s.element).collect(),
        big_threshold,
        big_solutions,
    })
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

/// `(Σ_{ω∈S} μ(ω)·log|β − α_ω|_ω) / (log A + h(β))`, kept as an exact
/// numerator and denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RothDefect {
    pub numerator: LogValue,
    pub denominator: LogValue,
}

impl RothDefect {
    pub fn value(&self) -> f64 {
        let n = self.numerator.to_float(128);
        let d = self.denominator.to_float(128);
        Float::with_val(128, &n / &d).to_f64()
    }

    /// Whether the quotient is at most `bound`; the denominator is positive.
    pub fn at_most(&self, bound: &LogValue, numerics: &Numerics) -> Verdict {
        let scaled = match bound.as_rational() {
            Some(q) => self.denominator.scale(q),
            None => {
                let prod = Float::with_val(128, bound.to_float(128) * self.denominator.to_float(128));
                let err = Float::with_val(64, prod.abs_ref()) * Float::with_val(64, 1e-30);
                LogValue::approx(prod, err)
            }
        };
        self.numerator.le(&scaled, numerics)
    }
}

/// The defect for an assignment of one `α` to each place of `S`;
/// `assignment[k]` is the index (0-based) of the `α` used at the `k`-th place.
pub fn roth_defect(spec: &SystemSpec, beta: &FieldElement, assignment: &[usize]) -> Result<RothDefect> {
    if spec.alphas.contains(beta) {
        return Err(Error::DegenerateBeta);
    }
    if assignment.len() != spec.theta.len() {
        return Err(Error::InvalidArgument(format!(
            "assignment has {} entries but S has {} places",
            assignment.len(),
            spec.theta.len()
        )));
    }
    let height = spec.curve.height(beta)?;
    let denominator = &spec.log_a() + &height;
    if denominator.sign(spec.numerics()) != Sign::Positive {
        return Err(Error::NonpositiveDenominator(denominator.decimal(8)));
    }
    let mut numerator = LogValue::zero();
    for ((place, _), &i) in spec.theta.iter().zip(assignment) {
        let alpha = spec.alphas.get(i).ok_or(Error::IndexOutOfRange {
            index: i + 1,
            len: spec.n(),
        })?;
        let local = spec.curve.local_log_abs(place, &beta.sub(alpha))?;
        numerator = &numerator + &local.scale(place.mass());
    }
    Ok(RothDefect { numerator, denominator })
}

/// Every map `S → {0, …, n−1}`, in lexicographic order.
pub fn all_assignments(places: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..places {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |i| {
                    let mut v = prefix.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

//! The first gap principle: heights of two large solutions differ by a
//! factor of at least `1 + ε/2`.

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::numeric::{LogValue, Numerics, Sign, Verdict};
use crate::system::{is_solution, Census, Solution, SolutionVerdict, SystemSpec};

/// `max(log A, T)` with `T = 2 log A + (4 log A − 2h(2) − log 4)/ε`.
#[derive(Clone, Debug, PartialEq)]
pub struct BigThreshold {
    pub log_a: LogValue,
    pub gap_term: LogValue,
    pub value: LogValue,
}

/// `T = 2 log A + (4 log A − 2h(2) − log 4)/ε`, the height condition under
/// which the ratio bound is asserted.
pub fn gap1_threshold(spec: &SystemSpec) -> LogValue {
    let log_a = spec.log_a();
    let h2 = spec.curve.h_two();
    let inner = &(&log_a.scale(&Rational::from(4)) - &h2.scale(&Rational::from(2))) - &LogValue::log_u64(4);
    &log_a.scale(&Rational::from(2)) + &inner.scale(&spec.epsilon.clone().recip())
}

/// `−T = −2 log A + (2h(2) + log 4 − 4 log A)/ε`. This is the condition the
/// Liouville argument actually delivers: from
/// `h(β₂)/h(β₁) ≥ 1 + ε + ((2+ε) log A − h(2) − log 2)/h(β₁)` the ratio is at
/// least `1 + ε/2` exactly when `h(β₁) ≥ −T`. Reported next to `T` for
/// comparison.
pub fn corrected_gap1_threshold(spec: &SystemSpec) -> LogValue {
    -&gap1_threshold(spec)
}

/// The main theorem's "big solution" threshold.
pub fn big_solution_threshold(spec: &SystemSpec) -> BigThreshold {
    let log_a = spec.log_a();
    let gap_term = gap1_threshold(spec);
    let value = log_a.max(&gap_term, spec.numerics());
    BigThreshold { log_a, gap_term, value }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gap1Check {
    /// `h(β₂)/h(β₁)` when `h(β₁) > 0`.
    pub ratio: Option<Float>,
    /// Whether `h(β₂) ≥ h(β₁) ≥ T`.
    pub applicable: Verdict,
    /// `h(β₂) ≥ (1 + ε/2)·h(β₁)`; `None` when not applicable.
    pub verdict: Option<Verdict>,
}

/// Ratio test on two heights. When `h(β₁) = 0` the ratio is infinite if
/// `h(β₂) > 0` and undefined (so no gap) if both vanish.
pub fn ratio_verdict(
    h1: &LogValue,
    h2: &LogValue,
    epsilon: &Rational,
    numerics: &Numerics,
) -> (Option<Float>, Verdict) {
    let factor = Rational::from(epsilon / 2u32) + 1u32;
    match h1.sign(numerics) {
        Sign::Positive => {
            let ratio = Float::with_val(128, h2.to_float(128) / h1.to_float(128));
            (Some(ratio), h2.ge(&h1.scale(&factor), numerics))
        }
        Sign::Zero => match h2.sign(numerics) {
            Sign::Positive => (None, Verdict::Pass),
            Sign::Zero => (None, Verdict::Fail),
            _ => (None, Verdict::Uncertain),
        },
        _ => (None, Verdict::Uncertain),
    }
}

/// The check on heights alone, for callers that already have them.
pub fn gap1_check_heights(spec: &SystemSpec, h1: &LogValue, h2: &LogValue) -> Gap1Check {
    gap1_check_heights_against(spec, h1, h2, &gap1_threshold(spec))
}

pub fn gap1_check_heights_against(spec: &SystemSpec, h1: &LogValue, h2: &LogValue, threshold: &LogValue) -> Gap1Check {
    let numerics = spec.numerics();
    let applicable = h2.ge(h1, numerics).and(h1.ge(threshold, numerics));
    let (ratio, v) = ratio_verdict(h1, h2, &spec.epsilon, numerics);
    let verdict = (applicable == Verdict::Pass).then_some(v);
    Gap1Check {
        ratio,
        applicable,
        verdict,
    }
}

pub fn gap1_check(spec: &SystemSpec, beta1: &FieldElement, beta2: &FieldElement) -> Result<Gap1Check> {
    if beta1 == beta2 {
        return Err(Error::EqualElements);
    }
    for b in [beta1, beta2] {
        if is_solution(spec, b)? != SolutionVerdict::Pass {
            return Err(Error::NotSolutions(b.to_string()));
        }
    }
    let h1 = spec.curve.height(beta1)?;
    let h2 = spec.curve.height(beta2)?;
    Ok(gap1_check_heights(spec, &h1, &h2))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gap1Pair {
    pub lower: Solution,
    pub upper: Solution,
    pub check: Gap1Check,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gap1Sweep {
    pub threshold: LogValue,
    pub pairs: Vec<Gap1Pair>,
    pub verdict: Verdict,
}

/// Checks every adjacent pair (in census order) of solutions whose height
/// is at least `floor`, against the height condition `threshold`.
pub fn gap1_sweep_with(census: &Census, floor: &LogValue, threshold: &LogValue) -> Gap1Sweep {
    let spec = &census.spec;
    let numerics = spec.numerics();
    let members: Vec<&Solution> = census
        .solutions
        .iter()
        .filter(|s| s.height.ge(floor, numerics) != Verdict::Fail)
        .collect();
    let pairs: Vec<Gap1Pair> = members
        .windows(2)
        .map(|w| Gap1Pair {
            lower: w[0].clone(),
            upper: w[1].clone(),
            check: gap1_check_heights_against(spec, &w[0].height, &w[1].height, threshold),
        })
        .collect();
    let verdict = Verdict::all(pairs.iter().map(|p| p.check.verdict.unwrap_or(Verdict::Pass)));
    Gap1Sweep {
        threshold: threshold.clone(),
        pairs,
        verdict,
    }
}

/// Sweep over adjacent big solutions with the stated threshold.
pub fn gap1_sweep(census: &Census) -> Gap1Sweep {
    gap1_sweep_with(census, &census.big_threshold.value, &gap1_threshold(&census.spec))
}

/// The same sweep restricted to solutions above the corrected threshold.
pub fn gap1_sweep_corrected(census: &Census) -> Gap1Sweep {
    let t = corrected_gap1_threshold(&census.spec);
    gap1_sweep_with(census, &t, &t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{AdelicCurve, Place};
    use crate::field::FieldKind;
    use crate::system::Amplitude;

    fn spec(field: FieldKind, a: Amplitude, eps: i64) -> SystemSpec {
        let (curve, place) = match field {
            FieldKind::Rationals => (AdelicCurve::rationals(), Place::infinite()),
            FieldKind::RationalFunctions => (AdelicCurve::rational_functions(), Place::degree()),
        };
        SystemSpec {
            curve,
            alphas: vec![FieldElement::one()],
            theta: vec![(place, Rational::from(3))],
            amplitude: a,
            epsilon: Rational::from(eps),
        }
    }

    #[test]
    fn threshold_examples() {
        let s = spec(FieldKind::Rationals, Amplitude::Value(Rational::from(1)), 1);
        assert!(big_solution_threshold(&s).value.is_exact_zero());
        let s = spec(FieldKind::Rationals, Amplitude::Log(LogValue::int(1)), 1);
        let t = big_solution_threshold(&s).value;
        assert!((t.to_f64() - 3.227_411_277_760_219).abs() < 1e-15);
        assert_eq!(t, &LogValue::int(6) - &LogValue::log_u64(2).scale(&Rational::from(4)));
        let s = spec(FieldKind::RationalFunctions, Amplitude::Value(Rational::from(1)), 1);
        assert!(big_solution_threshold(&s).value.is_exact_zero());
        assert_eq!(corrected_gap1_threshold(&s), LogValue::log_u64(4));
    }

    #[test]
    fn ratio_examples() {
        let s = spec(FieldKind::Rationals, Amplitude::Value(Rational::from(1)), 1);
        let h1 = LogValue::int(2);
        let h2 = LogValue::rational(Rational::from((31, 10)));
        let c = gap1_check_heights(&s, &h1, &h2);
        assert_eq!(c.applicable, Verdict::Pass);
        assert_eq!(c.verdict, Some(Verdict::Pass));
        assert!((c.ratio.unwrap().to_f64() - 1.55).abs() < 1e-15);
        let high = spec(FieldKind::Rationals, Amplitude::Log(LogValue::int(1)), 1);
        let below = gap1_check_heights(&high, &h1, &h2);
        assert_eq!(below.applicable, Verdict::Fail);
        assert_eq!(below.verdict, None);
    }
}

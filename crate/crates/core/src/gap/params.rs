//! `N`, `log Γ`, the Dyson-type integral bound and the final count bound.

use rug::{Float, Integer, Rational};

use crate::arith::integer::{factorial_valuation, primes_up_to};
use crate::numeric::{LogValue, Numerics, Sign};
use crate::system::SystemSpec;

/// Bits used for the floating side of the constants below.
const PREC: u32 = 256;

#[derive(Clone, Debug, PartialEq)]
pub struct Gap2Params {
    pub n: u64,
    pub epsilon: Rational,
    pub big_n: u64,
    pub n_factorial: Integer,
    /// `log N!` as an exact combination of `log p` (Legendre's formula).
    pub log_factorial: LogValue,
    /// `log Γ = log(8·n·N²·N!)`.
    pub log_gamma: LogValue,
}

impl Gap2Params {
    /// `4nN²N!`, the reciprocal of the h-gap threshold.
    pub fn h_gap_denominator(&self) -> Integer {
        h_gap_denominator(self.n, self.big_n, &self.n_factorial)
    }
}

pub fn h_gap_denominator(n: u64, big_n: u64, n_factorial: &Integer) -> Integer {
    Integer::from(n) * 4u32 * Integer::from(big_n) * Integer::from(big_n) * n_factorial
}

/// `⌈x⌉` for a value known to be irrational or an exact rational.
pub fn certified_ceil(x: &LogValue) -> Integer {
    let numerics = Numerics {
        precision_bits: PREC,
        tolerance: 0.0,
    };
    if let Some(q) = x.as_rational() {
        return q.clone().ceil().into_numer_denom().0;
    }
    let guess = x.to_float(PREC).floor().to_integer().expect("finite");
    let mut k = guess;
    // Walk until k − 1 < x ≤ k.
    loop {
        let above = &LogValue::rational(Rational::from(&k)) - x;
        match above.sign(&numerics) {
            Sign::Negative => k += 1,
            _ => {
                let below = &LogValue::rational(Rational::from(&k - Integer::from(1))) - x;
                if below.sign(&numerics) == Sign::Negative {
                    return k;
                }
                k -= 1;
            }
        }
    }
}

/// `log N!` as `Σ_p v_p(N!)·log p`.
pub fn log_factorial_exact(big_n: u64) -> LogValue {
    primes_up_to(big_n)
        .into_iter()
        .map(|p| LogValue::log_u64(p).scale(&Rational::from(factorial_valuation(big_n, p))))
        .sum()
}

/// `log N!` from the exact big-integer factorial.
pub fn log_factorial_float(n_factorial: &Integer, prec: u32) -> Float {
    Float::with_val(prec, n_factorial).ln()
}

/// `N = max(⌈21²·log 2n⌉, ⌈49·log 2n/ε²⌉)` and `log Γ`.
pub fn gap2_params(n: u64, epsilon: &Rational) -> Gap2Params {
    assert!(n >= 1 && *epsilon > 0, "gap2_params needs n ≥ 1 and ε > 0");
    let log_2n = LogValue::log_u64(2 * n);
    let first = certified_ceil(&log_2n.scale(&Rational::from(441)));
    let eps_sq = Rational::from(epsilon * epsilon);
    let second = certified_ceil(&log_2n.scale(&(Rational::from(49) / eps_sq)));
    let big_n = first.max(second).to_u64().expect("N fits in 64 bits");
    let n_factorial = Integer::from(Integer::factorial(big_n as u32));
    let log_factorial = log_factorial_exact(big_n);
    let log_gamma = &(&(&LogValue::log_u64(8) + &LogValue::log_u64(n))
        + &LogValue::log_u64(big_n).scale(&Rational::from(2)))
        + &log_factorial;
    Gap2Params {
        n,
        epsilon: epsilon.clone(),
        big_n,
        n_factorial,
        log_factorial,
        log_gamma,
    }
}

/// `2 + 7·√(log 2n)/√N`.
pub fn dyson_bound(n: u64, big_n: u64) -> Float {
    let log_2n = Float::with_val(PREC, 2 * n).ln();
    let root = Float::with_val(PREC, log_2n.sqrt_ref()) / Float::with_val(PREC, big_n).sqrt();
    root * 7u32 + 2u32
}

/// `1 + log Γ / log(1 + ε/2)`: how many heights with consecutive ratios at
/// least `1 + ε/2` fit (strictly fewer than this) in an interval of
/// logarithmic length `log Γ`.
pub fn ratio_gap_capacity(log_gamma: &LogValue, epsilon: &Rational) -> Float {
    let lg = log_gamma.to_float(PREC);
    let step = Float::with_val(PREC, Rational::from(epsilon / 2u32) + 1u32).ln();
    Float::with_val(PREC, &lg / &step) + 1u32
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountBound {
    pub bound: Float,
    pub big_n: u64,
    pub capacity: Float,
    pub params: Gap2Params,
}

/// `(N − 1)·(1 + log 8nN²N! / log(1 + ε/2))`.
pub fn count_bound(spec: &SystemSpec) -> CountBound {
    count_bound_for(spec.n() as u64, &spec.epsilon)
}

pub fn count_bound_for(n: u64, epsilon: &Rational) -> CountBound {
    let params = gap2_params(n, epsilon);
    let capacity = ratio_gap_capacity(&params.log_gamma, epsilon);
    let bound = Float::with_val(PREC, &capacity * (params.big_n - 1));
    CountBound {
        bound,
        big_n: params.big_n,
        capacity,
        params,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Float, b: f64, rel: f64) -> bool {
        ((a.to_f64() - b) / b).abs() < rel
    }

    #[test]
    fn n_values() {
        assert_eq!(gap2_params(1, &Rational::from(1)).big_n, 306);
        assert_eq!(gap2_params(1, &Rational::from((1, 10))).big_n, 3397);
        assert_eq!(gap2_params(2, &Rational::from(1)).big_n, 612);
        assert_eq!(gap2_params(3, &Rational::from((1, 2))).big_n, 791);
    }

    #[test]
    fn constants_match_reference_values() {
        let p = gap2_params(1, &Rational::from(1));
        assert!(close(&p.log_factorial.to_float(PREC), 1_449.198_044_612_667_2, 1e-15));
        assert!(close(&p.log_gamma.to_float(PREC), 1_462.724_656_358_251_7, 1e-15));
        let cb = count_bound_for(1, &Rational::from(1));
        assert!(close(&cb.capacity, 3_608.522_884_479_732_5, 1e-15));
        assert!(close(&cb.bound, 1_100_599.479_766_318_3, 1e-15));
        assert!(close(
            &count_bound_for(1, &Rational::from((1, 10))).bound,
            1_687_636_135.980_614_7,
            1e-14
        ));
        assert!(close(
            &count_bound_for(2, &Rational::from(1)).bound,
            5_025_819.482_877_952,
            1e-14
        ));
        assert!(close(&dyson_bound(1, 306), 2.33315785502397, 1e-13));
        assert!(close(&dyson_bound(1, 34), 2.99947356507192, 1e-13));
        assert_eq!(h_gap_denominator(1, 2, &Integer::from(2)), 32);
    }

    #[test]
    fn capacity_edge() {
        let c = ratio_gap_capacity(&LogValue::log_u64(8), &Rational::from(2));
        assert!((c.to_f64() - 4.0).abs() < 1e-30);
    }

    #[test]
    fn ceil_of_exact_and_irrational_values() {
        assert_eq!(certified_ceil(&LogValue::rational(Rational::from((7, 2)))), 4);
        assert_eq!(certified_ceil(&LogValue::int(3)), 3);
        assert_eq!(certified_ceil(&LogValue::log_u64(2).scale(&Rational::from(441))), 306);
    }
}

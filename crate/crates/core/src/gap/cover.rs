//! Covering solution heights by intervals of logarithmic length `log Γ`.

use crate::numeric::{LogValue, Numerics, Verdict};
use crate::system::{sort_solutions, Census, Solution};

use super::params::Gap2Params;

/// Closed height intervals `[lower, lower + length]`; on the height axis the
/// logarithmic length of `[h_a, h_b]` is `h_b − h_a`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalCover {
    pub intervals: Vec<(LogValue, LogValue)>,
    pub length: LogValue,
}

impl IntervalCover {
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

/// Left-to-right greedy cover: each interval starts at the smallest height
/// not yet covered. Optimal for fixed-length intervals on a line.
///
/// A height that cannot be placed inside or outside the current interval
/// within tolerance is counted as outside, so the cover never undercounts.
pub fn greedy_cover(heights: &[LogValue], length: &LogValue, numerics: &Numerics) -> IntervalCover {
    let mut sorted: Vec<&LogValue> = heights.iter().collect();
    sorted.sort_by(|a, b| a.order(b, numerics));
    let mut intervals: Vec<(LogValue, LogValue)> = Vec::new();
    for h in sorted {
        let inside = intervals
            .last()
            .is_some_and(|(_, upper)| h.le(upper, numerics) == Verdict::Pass);
        if !inside {
            intervals.push((h.clone(), h + length));
        }
    }
    IntervalCover {
        intervals,
        length: length.clone(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gap2Report {
    /// Solutions with `H(β) ≥ A`, i.e. `h(β) ≥ log A`.
    pub covered: Vec<Solution>,
    pub cover: IntervalCover,
    /// `N − 1`.
    pub limit: u64,
    pub verdict: Verdict,
}

pub fn gap2_cover_check(census: &Census, params: &Gap2Params) -> Gap2Report {
    let numerics = census.spec.numerics();
    let log_a = census.spec.log_a();
    let mut covered: Vec<Solution> = census
        .solutions
        .iter()
        .filter(|s| s.height.ge(&log_a, numerics) != Verdict::Fail)
        .cloned()
        .collect();
    sort_solutions(&mut covered, numerics);
    let heights: Vec<LogValue> = covered.iter().map(|s| s.height.clone()).collect();
    let cover = greedy_cover(&heights, &params.log_gamma, numerics);
    let limit = params.big_n - 1;
    let verdict = Verdict::from_bool(cover.len() as u64 <= limit);
    Gap2Report {
        covered,
        cover,
        limit,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    #[test]
    fn greedy_examples() {
        let numerics = Numerics::default();
        let hs: Vec<LogValue> = [0, 1, 2, 5, 6, 10].iter().map(|&k| LogValue::int(k)).collect();
        let cover = greedy_cover(&hs, &LogValue::int(2), &numerics);
        assert_eq!(cover.len(), 3);
        assert_eq!(cover.intervals[1].0, LogValue::int(5));
        assert_eq!(greedy_cover(&[], &LogValue::int(2), &numerics).len(), 0);
        let logs = vec![LogValue::log_u64(2), LogValue::log_u64(3), LogValue::log_u64(8)];
        let c = greedy_cover(&logs, &LogValue::log_u64(4), &numerics);
        // log 8 = log 2 + log 4 sits exactly on the closed upper end
        assert_eq!(c.len(), 1);
        let c = greedy_cover(&logs, &LogValue::rational(Rational::from((1, 2))), &numerics);
        assert_eq!(c.len(), 2);
    }
}

//! The `(n+1) × N` matrices `T(β)`, their pivots `ρ_j`, `ρ'_j`, the h-gap
//! property, column-bounding functions and the certificate that combines
//! them with the Dyson-type integral bound.

use std::collections::{BTreeMap, BTreeSet};

use rug::{Float, Integer, Rational};

use crate::curve::{AdelicCurve, Place};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::gap::params::{dyson_bound, h_gap_denominator};
use crate::numeric::{LogValue, Numerics, Sign, Verdict};

/// Where `log|α_h^{(j)} − β^{(j)}|_ω` comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum LocalSource {
    /// Computed from actual field elements.
    Elements {
        curve: AdelicCurve,
        alphas: Vec<Vec<FieldElement>>,
        betas: Vec<FieldElement>,
    },
    /// Given directly: `table[h][j]` maps a place to the local log value.
    Table(Vec<Vec<BTreeMap<Place, LogValue>>>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GapMatrix {
    n: usize,
    big_n: usize,
    n_factorial: Integer,
    /// `alpha_heights[h][j] = h(α_h^{(j)})`.
    alpha_heights: Vec<Vec<LogValue>>,
    beta_heights: Vec<LogValue>,
    local: LocalSource,
    log_rho: Vec<LogValue>,
    log_rho_prime: Vec<LogValue>,
    numerics: Numerics,
}

impl GapMatrix {
    /// `alphas[h][j]` is `α_h^{(j)}`; `betas[j]` is `β^{(j)}`.
    pub fn from_elements(
        curve: &AdelicCurve,
        alphas: Vec<Vec<FieldElement>>,
        betas: Vec<FieldElement>,
    ) -> Result<Self> {
        let n = alphas.len();
        let big_n = betas.len();
        if n == 0 || big_n == 0 {
            return Err(Error::InvalidMatrix("need at least one α row and one column".into()));
        }
        if alphas.iter().any(|row| row.len() != big_n) {
            return Err(Error::InvalidMatrix("every α row needs one entry per column".into()));
        }
        for (j, beta) in betas.iter().enumerate() {
            let mut column: Vec<&FieldElement> = alphas.iter().map(|row| &row[j]).collect();
            column.push(beta);
            for x in &column {
                if x.is_zero() {
                    return Err(Error::InvalidMatrix(format!("column {} has a zero entry", j + 1)));
                }
                if !x.belongs_to(curve.field()) {
                    return Err(Error::WrongField {
                        element: x.to_string(),
                        field: curve.field().name().into(),
                    });
                }
            }
            let distinct: BTreeSet<String> = column.iter().map(|x| x.to_string()).collect();
            if distinct.len() != column.len() {
                return Err(Error::InvalidMatrix(format!(
                    "column {} is not componentwise different",
                    j + 1
                )));
            }
        }
        let alpha_heights = alphas
            .iter()
            .map(|row| row.iter().map(|a| curve.height(a)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let beta_heights = betas.iter().map(|b| curve.height(b)).collect::<Result<Vec<_>>>()?;
        let local = LocalSource::Elements {
            curve: curve.clone(),
            alphas,
            betas,
        };
        Ok(GapMatrix::assemble(
            n,
            big_n,
            alpha_heights,
            beta_heights,
            local,
            *curve.numerics(),
        ))
    }

    /// A matrix described only by its heights and local values, for synthetic
    /// instances whose entries would be too large to write down.
    pub fn synthetic(
        alpha_heights: Vec<Vec<LogValue>>,
        beta_heights: Vec<LogValue>,
        table: Vec<Vec<BTreeMap<Place, LogValue>>>,
        numerics: Numerics,
    ) -> Result<Self> {
        let n = alpha_heights.len();
        let big_n = beta_heights.len();
        if n == 0 || big_n == 0 {
            return Err(Error::InvalidMatrix("need at least one α row and one column".into()));
        }
        if alpha_heights.iter().any(|r| r.len() != big_n) || table.len() != n || table.iter().any(|r| r.len() != big_n)
        {
            return Err(Error::InvalidMatrix("inconsistent dimensions".into()));
        }
        for h in alpha_heights.iter().flatten().chain(&beta_heights) {
            if h.sign(&numerics) == Sign::Negative {
                return Err(Error::InvalidMatrix("heights must be nonnegative".into()));
            }
        }
        Ok(GapMatrix::assemble(
            n,
            big_n,
            alpha_heights,
            beta_heights,
            LocalSource::Table(table),
            numerics,
        ))
    }

    fn assemble(
        n: usize,
        big_n: usize,
        alpha_heights: Vec<Vec<LogValue>>,
        beta_heights: Vec<LogValue>,
        local: LocalSource,
        numerics: Numerics,
    ) -> Self {
        let n_factorial = Integer::from(Integer::factorial(big_n as u32));
        let log4 = LogValue::log_u64(4);
        let mut log_rho = Vec::with_capacity(big_n);
        let mut log_rho_prime = Vec::with_capacity(big_n);
        for j in 0..big_n {
            let sum_alpha: LogValue = alpha_heights.iter().map(|row| row[j].clone()).sum();
            let two_f = Integer::from(&n_factorial * 2u32);
            let rho = &(&log4.scale_int(&two_f) + &beta_heights[j])
                + &sum_alpha.scale(&Rational::from((two_f, Integer::from(n))));
            let rho_p = &(&log4.scale_int(&n_factorial) + &beta_heights[j])
                + &sum_alpha.scale(&Rational::from((n_factorial.clone(), Integer::from(2 * n))));
            log_rho.push(rho);
            log_rho_prime.push(rho_p);
        }
        GapMatrix {
            n,
            big_n,
            n_factorial,
            alpha_heights,
            beta_heights,
            local,
            log_rho,
            log_rho_prime,
            numerics,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> usize {
        self.big_n
    }

    pub fn n_factorial(&self) -> &Integer {
        &self.n_factorial
    }

    pub fn numerics(&self) -> &Numerics {
        &self.numerics
    }

    pub fn beta_height(&self, j: usize) -> &LogValue {
        &self.beta_heights[j - 1]
    }

    pub fn alpha_height(&self, h: usize, j: usize) -> &LogValue {
        &self.alpha_heights[h - 1][j - 1]
    }

    /// `(log ρ_j, log ρ'_j)` for `1 ≤ j ≤ N`.
    pub fn log_rho(&self, j: usize) -> Result<(LogValue, LogValue)> {
        if j == 0 || j > self.big_n {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.big_n,
            });
        }
        Ok((self.log_rho[j - 1].clone(), self.log_rho_prime[j - 1].clone()))
    }

    /// `log|α_h^{(j)} − β^{(j)}|_ω`, 1-based `h` and `j`.
    pub fn local_log(&self, h: usize, j: usize, place: &Place) -> Result<LogValue> {
        match &self.local {
            LocalSource::Elements { curve, alphas, betas } => {
                curve.local_log_abs(place, &alphas[h - 1][j - 1].sub(&betas[j - 1]))
            }
            LocalSource::Table(t) => t[h - 1][j - 1]
                .get(place)
                .cloned()
                .ok_or_else(|| Error::InvalidMatrix(format!("no local value at {place} for row {h}, column {j}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HGapReport {
    /// `1/(4nN²N!)` exactly.
    pub threshold: Rational,
    /// `log ρ_j / log ρ'_{j+1}` for `j = 1..N−1`.
    pub ratios: Vec<Float>,
    pub verdicts: Vec<Verdict>,
    pub verdict: Verdict,
}

/// `log ρ_j / log ρ'_{j+1} < 1/(4nN²N!)` for every `j`, decided as
/// `4nN²N!·log ρ_j < log ρ'_{j+1}`.
pub fn h_gap_check(matrix: &GapMatrix) -> Result<HGapReport> {
    if matrix.big_n < 2 {
        return Err(Error::DegenerateMatrix);
    }
    let k = h_gap_denominator(matrix.n as u64, matrix.big_n as u64, &matrix.n_factorial);
    let mut ratios = Vec::new();
    let mut verdicts = Vec::new();
    for j in 0..matrix.big_n - 1 {
        let rho = &matrix.log_rho[j];
        let next = &matrix.log_rho_prime[j + 1];
        if next.sign(&matrix.numerics) != Sign::Positive {
            return Err(Error::NonpositiveLogRho(j + 2));
        }
        let prec = 128;
        ratios.push(Float::with_val(prec, rho.to_float(prec) / next.to_float(prec)));
        verdicts.push(rho.scale_int(&k).lt(next, &matrix.numerics));
    }
    let verdict = Verdict::all(verdicts.iter().copied());
    Ok(HGapReport {
        threshold: Rational::from((1, k)),
        ratios,
        verdicts,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ColumnBoundingEntry {
    pub row: usize,
    pub column: usize,
    pub place: Place,
    /// `−log|α_h^{(j)} − β^{(j)}|_ω / log ρ_j`.
    pub normalized: Float,
    pub theta: Rational,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ColumnBoundingReport {
    pub entries: Vec<ColumnBoundingEntry>,
    pub verdict: Verdict,
    /// On passing instances: every `|α_h^{(j)} − β^{(j)}|_ω ≤ 1` on its cell.
    pub local_at_most_one: Option<Verdict>,
}

fn check_partition(theta: &[(Place, Rational)], partition: &[Vec<Place>], n: usize) -> Result<()> {
    if partition.len() != n {
        return Err(Error::BadPartition(format!(
            "expected {n} cells, got {}",
            partition.len()
        )));
    }
    let s: BTreeSet<&Place> = theta.iter().map(|(p, _)| p).collect();
    let mut seen = BTreeSet::new();
    for cell in partition {
        for p in cell {
            if !s.contains(p) {
                return Err(Error::BadPartition(format!("{p} is not in S")));
            }
            if !seen.insert(p) {
                return Err(Error::BadPartition(format!("{p} appears in two cells")));
            }
        }
    }
    if seen.len() != s.len() {
        let missing: Vec<String> = s.iter().filter(|p| !seen.contains(*p)).map(|p| p.to_string()).collect();
        return Err(Error::BadPartition(format!("cells miss {}", missing.join(", "))));
    }
    Ok(())
}

/// The partition `S_1 = S`, `S_h = ∅` for `h > 1`.
pub fn default_partition(theta: &[(Place, Rational)], n: usize) -> Vec<Vec<Place>> {
    let mut cells = vec![Vec::new(); n];
    if n > 0 {
        cells[0] = theta.iter().map(|(p, _)| p.clone()).collect();
    }
    cells
}

/// `−log|α_h^{(j)} − β^{(j)}|_ω / log ρ_j ≥ θ(ω)` for all `j`, all `h` and
/// all `ω ∈ S_h`, decided as `log|α_h^{(j)} − β^{(j)}|_ω ≤ −θ(ω)·log ρ_j`.
pub fn column_bounding_check(
    matrix: &GapMatrix,
    theta: &[(Place, Rational)],
    partition: &[Vec<Place>],
) -> Result<ColumnBoundingReport> {
    check_partition(theta, partition, matrix.n)?;
    let theta_of: BTreeMap<&Place, &Rational> = theta.iter().map(|(p, t)| (p, t)).collect();
    let numerics = matrix.numerics;
    let mut entries = Vec::new();
    let mut locals_ok = Verdict::Pass;
    for j in 1..=matrix.big_n {
        let rho = &matrix.log_rho[j - 1];
        if rho.sign(&numerics) != Sign::Positive {
            return Err(Error::NonpositiveLogRho(j));
        }
        let rho_f = rho.to_float(128);
        for (h, cell) in partition.iter().enumerate() {
            for place in cell {
                let t = theta_of[place];
                let local = matrix.local_log(h + 1, j, place)?;
                let verdict = local.le(&(-&rho.scale(t)), &numerics);
                locals_ok = locals_ok.and(local.le(&LogValue::zero(), &numerics));
                let normalized = Float::with_val(128, -local.to_float(128) / &rho_f);
                entries.push(ColumnBoundingEntry {
                    row: h + 1,
                    column: j,
                    place: place.clone(),
                    normalized,
                    theta: t.clone(),
                    verdict,
                });
            }
        }
    }
    let verdict = Verdict::all(entries.iter().map(|e| e.verdict));
    let local_at_most_one = (verdict == Verdict::Pass).then_some(locals_ok);
    Ok(ColumnBoundingReport {
        entries,
        verdict,
        local_at_most_one,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum CertificateStatus {
    HypothesesNotMet,
    ConclusionHolds,
    /// All hypotheses hold but the comparison with the bound is undecided.
    Undecided,
    Violation,
}

impl CertificateStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertificateStatus::HypothesesNotMet => "hypotheses not met",
            CertificateStatus::ConclusionHolds => "conclusion holds",
            CertificateStatus::Undecided => "undecided",
            CertificateStatus::Violation => "VIOLATION",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DysonCertificate {
    pub n: usize,
    pub big_n: usize,
    /// `N > 21²·log 2n`.
    pub n_hypothesis: Verdict,
    /// h-gap property; vacuous (pass) for a single column.
    pub h_gap: Verdict,
    pub column_bounding: Verdict,
    pub theta_integral: Rational,
    pub dyson_bound: Float,
    /// `∫_S θ dμ < dyson_bound(n, N)`.
    pub conclusion: Verdict,
    pub status: CertificateStatus,
}

impl DysonCertificate {
    pub fn is_violation(&self) -> bool {
        self.status == CertificateStatus::Violation
    }
}

/// `a < b` for an exact rational against a high-precision float.
fn rational_lt_float(a: &Rational, b: &Float) -> Verdict {
    let diff = Float::with_val(b.prec(), b - a);
    let slack = Float::with_val(64, Float::i_exp(1, -(b.prec() as i32) + 8)) * Float::with_val(64, b.abs_ref());
    if diff > slack {
        Verdict::Pass
    } else if diff < -slack {
        Verdict::Fail
    } else {
        Verdict::Uncertain
    }
}

pub fn dyson_certificate(
    matrix: &GapMatrix,
    theta: &[(Place, Rational)],
    partition: &[Vec<Place>],
) -> Result<DysonCertificate> {
    let numerics = matrix.numerics;
    let n = matrix.n;
    let big_n = matrix.big_n;
    let threshold = LogValue::log_u64(2 * n as u64).scale(&Rational::from(441));
    let n_hypothesis = threshold.lt(&LogValue::int(big_n as i64), &numerics);
    let h_gap = if big_n < 2 {
        Verdict::Pass
    } else {
        h_gap_check(matrix)?.verdict
    };
    let column_bounding = column_bounding_check(matrix, theta, partition)?.verdict;
    let theta_integral: Rational = theta.iter().map(|(p, t)| Rational::from(p.mass() * t)).sum();
    let dyson = dyson_bound(n as u64, big_n as u64);
    let conclusion = rational_lt_float(&theta_integral, &dyson);
    let hypotheses = Verdict::all([n_hypothesis, h_gap, column_bounding]);
    let status = match (hypotheses, conclusion) {
        (Verdict::Pass, Verdict::Pass) => CertificateStatus::ConclusionHolds,
        (Verdict::Pass, Verdict::Fail) => CertificateStatus::Violation,
        (Verdict::Pass, Verdict::Uncertain) => CertificateStatus::Undecided,
        _ => CertificateStatus::HypothesesNotMet,
    };
    Ok(DysonCertificate {
        n,
        big_n,
        n_hypothesis,
        h_gap,
        column_bounding,
        theta_integral,
        dyson_bound: dyson,
        conclusion,
        status,
    })
}

//! Proper adelic curves over ℚ and ℚ(t).
//!
//! Over ℚ the places are the usual absolute value `inf` and the p-adic
//! absolute values `|p|_p = 1/p`, all with mass 1. Over ℚ(t) every monic
//! irreducible `p` gives `|f|_p = e^{-v_p(f)}` with mass `deg p`, and the
//! place at infinity `deg` gives `|f|_deg = e^{deg f}` with mass 1. Both
//! systems satisfy the product formula on the nose, so defects are exactly
//! zero rather than small.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rug::{Integer, Rational};
use serde::{Serialize, Serializer};

use crate::arith::integer::{factorize, is_prime, next_prime};
use crate::arith::{factor, QPoly};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldKind};
use crate::numeric::{LogValue, Numerics, Verdict};
use crate::parse::parse_fraction;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaceId {
    Infinite,
    Prime(Integer),
    Irreducible(QPoly),
    Degree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlaceKind {
    Archimedean,
    NonArchimedean,
}

/// One absolute value together with its mass. Places sort as
/// `inf < primes (numerically) < irreducibles (by degree, then coefficients) < deg`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Place {
    id: PlaceId,
    mass: Rational,
}

impl Place {
    pub fn infinite() -> Place {
        Place {
            id: PlaceId::Infinite,
            mass: Rational::from(1),
        }
    }

    /// The p-adic place; `p` must be prime.
    pub fn prime(p: Integer) -> Place {
        debug_assert!(is_prime(&p));
        Place {
            id: PlaceId::Prime(p),
            mass: Rational::from(1),
        }
    }

    /// The place of a monic irreducible polynomial.
    pub fn irreducible(p: QPoly) -> Place {
        debug_assert!(p.is_monic() && !p.is_constant());
        let mass = Rational::from(p.deg());
        Place {
            id: PlaceId::Irreducible(p),
            mass,
        }
    }

    pub fn degree() -> Place {
        Place {
            id: PlaceId::Degree,
            mass: Rational::from(1),
        }
    }

    pub fn id(&self) -> &PlaceId {
        &self.id
    }

    pub fn mass(&self) -> &Rational {
        &self.mass
    }

    pub fn kind(&self) -> PlaceKind {
        match self.id {
            PlaceId::Infinite => PlaceKind::Archimedean,
            _ => PlaceKind::NonArchimedean,
        }
    }

    pub fn is_archimedean(&self) -> bool {
        self.kind() == PlaceKind::Archimedean
    }

    pub fn field(&self) -> FieldKind {
        match self.id {
            PlaceId::Infinite | PlaceId::Prime(_) => FieldKind::Rationals,
            PlaceId::Irreducible(_) | PlaceId::Degree => FieldKind::RationalFunctions,
        }
    }

    /// Canonical text id: `inf`, a decimal prime, a polynomial, or `deg`.
    pub fn id_string(&self) -> String {
        self.to_string()
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        self.id.cmp(&other.id)
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.id {
            PlaceId::Infinite => f.write_str("inf"),
            PlaceId::Prime(p) => write!(f, "{p}"),
            PlaceId::Irreducible(p) => write!(f, "{p}"),
            PlaceId::Degree => f.write_str("deg"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Local value of an element at one place.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalValue {
    pub place: Place,
    /// `log |a|_ω`.
    pub log_abs: LogValue,
    /// `log⁺ |a|_ω`.
    pub log_plus: LogValue,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiouvilleCheck {
    pub lhs: LogValue,
    pub rhs: LogValue,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdelicCurve {
    field: FieldKind,
    numerics: Numerics,
}

impl AdelicCurve {
    pub fn new(field: FieldKind, numerics: Numerics) -> Self {
        AdelicCurve { field, numerics }
    }

    pub fn rationals() -> Self {
        AdelicCurve::new(FieldKind::Rationals, Numerics::default())
    }

    pub fn rational_functions() -> Self {
        AdelicCurve::new(FieldKind::RationalFunctions, Numerics::default())
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn numerics(&self) -> &Numerics {
        &self.numerics
    }

    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        FieldElement::parse(self.field, text)
    }

    /// Resolves a place id on this curve.
    pub fn place(&self, id: &str) -> Result<Place> {
        let id = id.trim();
        let unknown = || Error::UnknownPlace(id.to_string());
        match self.field {
            FieldKind::Rationals => {
                if id == "inf" || id == "∞" {
                    return Ok(Place::infinite());
                }
                let p: Integer = id.parse().map_err(|_| unknown())?;
                if is_prime(&p) {
                    Ok(Place::prime(p))
                } else {
                    Err(unknown())
                }
            }
            FieldKind::RationalFunctions => {
                if id == "deg" {
                    return Ok(Place::degree());
                }
                let frac = parse_fraction(id).map_err(|_| unknown())?;
                if !frac.den.is_constant() {
                    return Err(unknown());
                }
                let p = frac.num.scale(&frac.den.leading().recip());
                if p.is_constant() || !p.is_monic() {
                    return Err(unknown());
                }
                let fac = factor(&p);
                if fac.factors.len() != 1 || fac.factors[0].1 != 1 {
                    return Err(unknown());
                }
                Ok(Place::irreducible(p))
            }
        }
    }

    pub fn contains_place(&self, place: &Place) -> bool {
        place.field() == self.field
    }

    /// The place universe in a fixed order. Over ℚ: `inf, 2, 3, 5, …`.
    /// Over ℚ(t): `deg`, then monic irreducibles in rounds of growing size
    /// (degree and coefficient numerators/denominators bounded by the round).
    pub fn places(&self) -> Box<dyn Iterator<Item = Place> + Send> {
        match self.field {
            FieldKind::Rationals => {
                let primes = std::iter::successors(Some(Integer::from(2)), |p| Some(next_prime(p)));
                Box::new(std::iter::once(Place::infinite()).chain(primes.map(Place::prime)))
            }
            FieldKind::RationalFunctions => {
                Box::new(std::iter::once(Place::degree()).chain((1u32..).flat_map(irreducibles_of_size)))
            }
        }
    }

    fn check_element(&self, a: &FieldElement) -> Result<()> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        if !a.belongs_to(self.field) {
            return Err(Error::WrongField {
                element: a.to_string(),
                field: self.field.name().into(),
            });
        }
        Ok(())
    }

    fn check_place(&self, place: &Place) -> Result<()> {
        if self.contains_place(place) {
            Ok(())
        } else {
            Err(Error::UnknownPlace(place.to_string()))
        }
    }

    /// `log |a|_ω`.
    pub fn local_log_abs(&self, place: &Place, a: &FieldElement) -> Result<LogValue> {
        self.check_element(a)?;
        self.check_place(place)?;
        Ok(local_log(place, a))
    }

    /// `(log |a|_ω, log⁺ |a|_ω)` at every place where `log |a|_ω ≠ 0`, with
    /// the archimedean place always present. Sorted by place.
    pub fn local_values(&self, a: &FieldElement) -> Result<Vec<LocalValue>> {
        self.check_element(a)?;
        let mut out = Vec::new();
        match (self.field, a) {
            (FieldKind::Rationals, FieldElement::Rational(q)) => {
                let (num, den) = (q.numer(), q.denom());
                let num_abs = Integer::from(num.abs_ref());
                let log_abs = LogValue::log_rational(q);
                let log_plus = if num_abs > *den {
                    log_abs.clone()
                } else {
                    LogValue::zero()
                };
                out.push(LocalValue {
                    place: Place::infinite(),
                    log_abs,
                    log_plus,
                });
                let mut vals: BTreeMap<Integer, i64> = BTreeMap::new();
                if num_abs > 1 {
                    for (p, e) in factorize(num) {
                        vals.insert(p, i64::from(e));
                    }
                }
                if *den > 1 {
                    for (p, e) in factorize(den) {
                        *vals.entry(p).or_default() -= i64::from(e);
                    }
                }
                for (p, v) in vals {
                    // |a|_p = p^{-v}
                    let log_abs = LogValue::log_prime(p.clone()).scale(&Rational::from(-v));
                    let log_plus = if v < 0 { log_abs.clone() } else { LogValue::zero() };
                    out.push(LocalValue {
                        place: Place::prime(p),
                        log_abs,
                        log_plus,
                    });
                }
            }
            (FieldKind::RationalFunctions, _) => {
                let (num, den) = a.num_den();
                let mut vals: BTreeMap<QPoly, i64> = BTreeMap::new();
                if !num.is_constant() {
                    for (p, e) in factor(&num).factors {
                        vals.insert(p, i64::from(e));
                    }
                }
                if !den.is_constant() {
                    for (p, e) in factor(&den).factors {
                        *vals.entry(p).or_default() -= i64::from(e);
                    }
                }
                for (p, v) in vals {
                    let log_abs = LogValue::int(-v);
                    let log_plus = if v < 0 { log_abs.clone() } else { LogValue::zero() };
                    out.push(LocalValue {
                        place: Place::irreducible(p),
                        log_abs,
                        log_plus,
                    });
                }
                let d = num.deg() as i64 - den.deg() as i64;
                if d != 0 {
                    let log_abs = LogValue::int(d);
                    let log_plus = if d > 0 { log_abs.clone() } else { LogValue::zero() };
                    out.push(LocalValue {
                        place: Place::degree(),
                        log_abs,
                        log_plus,
                    });
                }
            }
            (FieldKind::Rationals, FieldElement::Function(_)) => unreachable!("checked by check_element"),
        }
        Ok(out)
    }

    /// Places where `log |a|_ω ≠ 0`; over ℚ the archimedean place is always
    /// listed.
    pub fn support(&self, a: &FieldElement) -> Result<Vec<Place>> {
        Ok(self.local_values(a)?.into_iter().map(|lv| lv.place).collect())
    }

    /// `ε(ω) = log⁺|2|_ω / log 2`.
    pub fn arch_exponent(&self, place: &Place) -> Rational {
        if !place.is_archimedean() {
            return Rational::new();
        }
        let two = local_log(place, &FieldElement::int(2));
        // log |2|_∞ is exactly 1·log 2.
        let coeff = two
            .log_terms()
            .find(|(p, _)| **p == 2)
            .map(|(_, c)| c.clone().max(Rational::new()))
            .unwrap_or_default();
        coeff
    }

    /// Logarithmic height `Σ_ω μ(ω)·log⁺|a|_ω`.
    pub fn height(&self, a: &FieldElement) -> Result<LogValue> {
        Ok(self
            .local_values(a)?
            .iter()
            .map(|lv| lv.log_plus.scale(lv.place.mass()))
            .sum())
    }

    /// `h(2)`, the normalization constant of the curve.
    pub fn h_two(&self) -> LogValue {
        self.height(&FieldElement::int(2)).expect("2 is a unit")
    }

    /// `Σ_ω μ(ω)·log|a|_ω`, which vanishes on a proper curve.
    pub fn product_formula_defect(&self, a: &FieldElement) -> Result<LogValue> {
        Ok(self
            .local_values(a)?
            .iter()
            .map(|lv| lv.log_abs.scale(lv.place.mass()))
            .sum())
    }

    /// `Σ_{ω∈U} μ(ω)·log|α−β|_ω ≥ −log 2 − h(α) − h(β)`.
    pub fn liouville_check(
        &self,
        alpha: &FieldElement,
        beta: &FieldElement,
        places: &[Place],
    ) -> Result<LiouvilleCheck> {
        self.check_element(alpha)?;
        self.check_element(beta)?;
        if alpha == beta {
            return Err(Error::EqualElements);
        }
        for p in places {
            self.check_place(p)?;
        }
        let mut set: Vec<&Place> = places.iter().collect();
        set.sort();
        set.dedup();
        let diff = alpha.sub(beta);
        let lhs: LogValue = set.iter().map(|p| local_log(p, &diff).scale(p.mass())).sum();
        let rhs = &(&(-&LogValue::log_u64(2)) - &self.height(alpha)?) - &self.height(beta)?;
        let verdict = rhs.le(&lhs, &self.numerics);
        Ok(LiouvilleCheck { lhs, rhs, verdict })
    }

    /// `count` distinct elements of height at most `bound`. Over ℚ(t) the
    /// constants already provide infinitely many; over ℚ the height ball is
    /// finite and the request fails once it is exhausted.
    pub fn northcott_counterexample(&self, bound: &LogValue, count: usize) -> Result<Vec<FieldElement>> {
        if count == 0 {
            return Err(Error::InvalidArgument("count must be at least 1".into()));
        }
        if bound.lt(&LogValue::zero(), &self.numerics) == Verdict::Pass {
            return Err(Error::Unsupported("no element has negative height".into()));
        }
        match self.field {
            FieldKind::RationalFunctions => Ok((1..=count as i64).map(FieldElement::int).collect()),
            FieldKind::Rationals => {
                let mut out = Vec::new();
                let mut m = 1u64;
                loop {
                    if LogValue::log_u64(m).le(bound, &self.numerics) != Verdict::Pass {
                        return Err(Error::Unsupported(format!(
                            "only {} rationals have height at most {}; the height ball over Q is finite",
                            out.len(),
                            bound
                        )));
                    }
                    for e in rationals_of_size(m) {
                        out.push(e);
                        if out.len() == count {
                            return Ok(out);
                        }
                    }
                    m += 1;
                }
            }
        }
    }
}

fn local_log(place: &Place, a: &FieldElement) -> LogValue {
    match (&place.id, a) {
        (PlaceId::Infinite, FieldElement::Rational(q)) => LogValue::log_rational(q),
        (PlaceId::Prime(p), FieldElement::Rational(q)) => {
            let v = valuation_q(q, p);
            LogValue::log_prime(p.clone()).scale(&Rational::from(-v))
        }
        (PlaceId::Irreducible(p), _) => {
            let (num, den) = a.num_den();
            let v = mult(&num, p) - mult(&den, p);
            LogValue::int(-v)
        }
        (PlaceId::Degree, _) => {
            let (num, den) = a.num_den();
            LogValue::int(num.deg() as i64 - den.deg() as i64)
        }
        _ => unreachable!("place and element come from different fields"),
    }
}

fn valuation_q(q: &Rational, p: &Integer) -> i64 {
    let up = |n: &Integer| {
        if *n == 0 {
            0
        } else {
            i64::from(crate::arith::integer::valuation(n, p))
        }
    };
    up(q.numer()) - up(q.denom())
}

fn mult(f: &QPoly, p: &QPoly) -> i64 {
    if f.is_constant() {
        0
    } else {
        i64::from(f.multiplicity(p))
    }
}

/// Rationals `±p/q` in lowest terms with `max(|p|, q) = m`, sorted by
/// canonical string. These all have height `log m`.
pub fn rationals_of_size(m: u64) -> Vec<FieldElement> {
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    if m == 1 {
        return vec![FieldElement::int(-1), FieldElement::int(1)];
    }
    for k in 1..m {
        if gcd(k, m) == 1 {
            for (p, q) in [(m, k), (k, m)] {
                let r = Rational::from((p, q));
                out.push(FieldElement::Rational(r.clone()));
                out.push(FieldElement::Rational(-r));
            }
        }
    }
    out.sort_by_key(|e| e.to_string());
    out
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Monic irreducible polynomials whose "size" (max of degree and every
/// coefficient numerator/denominator) equals `k`.
fn irreducibles_of_size(k: u32) -> Vec<Place> {
    let coeffs = small_rationals(k);
    let mut out = Vec::new();
    for d in 1..=k as usize {
        // Odometer over the d lower coefficients.
        let mut idx = vec![0usize; d];
        'odometer: loop {
            let lower: Vec<Rational> = idx.iter().map(|&i| coeffs[i].0.clone()).collect();
            let size = idx.iter().map(|&i| coeffs[i].1).max().unwrap_or(0).max(d as u32);
            if size == k {
                let mut c = lower;
                c.push(Rational::from(1));
                let p = QPoly::from_coeffs(c);
                let fac = factor(&p);
                if fac.factors.len() == 1 && fac.factors[0].1 == 1 {
                    out.push(Place::irreducible(p));
                }
            }
            for slot in idx.iter_mut() {
                *slot += 1;
                if *slot < coeffs.len() {
                    continue 'odometer;
                }
                *slot = 0;
            }
            break;
        }
    }
    out.sort();
    out
}

/// Rationals with numerator and denominator bounded by `k`, each tagged with
/// its size `max(|num|, den)` (zero has size 0).
fn small_rationals(k: u32) -> Vec<(Rational, u32)> {
    let mut out = vec![(Rational::new(), 0)];
    for q in 1..=k {
        for p in 1..=k {
            if gcd(u64::from(p), u64::from(q)) == 1 {
                let r = Rational::from((p, q));
                out.push((r.clone(), p.max(q)));
                out.push((-r, p.max(q)));
            }
        }
    }
    out
}

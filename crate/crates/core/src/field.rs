//! Elements of the two ground fields, ℚ and ℚ(t), in reduced form.

use std::fmt;
use std::str::FromStr;

use rug::Rational;
use serde::{Serialize, Serializer};

use crate::arith::QPoly;
use crate::error::{Error, Result};
use crate::parse::parse_fraction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rationals,
    RationalFunctions,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Rationals => "Q",
            FieldKind::RationalFunctions => "Q(t)",
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FieldKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Q" | "QQ" | "ℚ" => Ok(FieldKind::Rationals),
            "Q(t)" | "QQ(t)" | "ℚ(t)" => Ok(FieldKind::RationalFunctions),
            other => Err(Error::InvalidArgument(format!(
                "unknown field `{other}` (expected Q or Q(t))"
            ))),
        }
    }
}

impl Serialize for FieldKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A non-constant element of ℚ(t): `num/den` with `den` monic and the two
/// coprime. Constants are always represented as [`FieldElement::Rational`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: QPoly,
    den: QPoly,
}

impl RationalFunction {
    pub fn num(&self) -> &QPoly {
        &self.num
    }
    pub fn den(&self) -> &QPoly {
        &self.den
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(Rational),
    Function(RationalFunction),
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::Rational(Rational::new())
    }

    pub fn one() -> Self {
        FieldElement::Rational(Rational::from(1))
    }

    pub fn rational(q: impl Into<Rational>) -> Self {
        FieldElement::Rational(q.into())
    }

    pub fn int(n: i64) -> Self {
        FieldElement::Rational(Rational::from(n))
    }

    pub fn t() -> Self {
        FieldElement::from_polys(QPoly::t(), QPoly::one())
    }

    /// Reduces `num/den`. Panics if `den` is zero.
    pub fn from_polys(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return FieldElement::zero();
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g).expect("gcd divides numerator");
        let mut den = den.exact_div(&g).expect("gcd divides denominator");
        let lead = den.leading();
        if lead != 1 {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.monic();
        }
        if den.is_constant() && num.is_constant() {
            FieldElement::Rational(num.constant_term())
        } else {
            FieldElement::Function(RationalFunction { num, den })
        }
    }

    pub fn parse(kind: FieldKind, text: &str) -> Result<Self> {
        let frac = parse_fraction(text)?;
        if kind == FieldKind::Rationals && frac.mentions_variable() {
            return Err(Error::WrongField {
                element: text.trim().to_string(),
                field: kind.name().into(),
            });
        }
        Ok(FieldElement::from_polys(frac.num, frac.den))
    }

    pub fn belongs_to(&self, kind: FieldKind) -> bool {
        match self {
            FieldElement::Rational(_) => true,
            FieldElement::Function(_) => kind == FieldKind::RationalFunctions,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FieldElement::Rational(q) if *q == 0)
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, FieldElement::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            FieldElement::Function(_) => None,
        }
    }

    /// Numerator and (monic) denominator as polynomials.
    pub fn num_den(&self) -> (QPoly, QPoly) {
        match self {
            FieldElement::Rational(q) => (QPoly::constant(q.clone()), QPoly::one()),
            FieldElement::Function(f) => (f.num.clone(), f.den.clone()),
        }
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        if let (FieldElement::Rational(a), FieldElement::Rational(b)) = (self, other) {
            return FieldElement::Rational(Rational::from(a + b));
        }
        let (a, b) = self.num_den();
        let (c, d) = other.num_den();
        FieldElement::from_polys(&(&a * &d) + &(&c * &b), &b * &d)
    }

    pub fn neg(&self) -> FieldElement {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(Rational::from(-q)),
            FieldElement::Function(f) => FieldElement::Function(RationalFunction {
                num: -&f.num,
                den: f.den.clone(),
            }),
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        if let (FieldElement::Rational(a), FieldElement::Rational(b)) = (self, other) {
            return FieldElement::Rational(Rational::from(a * b));
        }
        let (a, b) = self.num_den();
        let (c, d) = other.num_den();
        FieldElement::from_polys(&a * &c, &b * &d)
    }

    pub fn recip(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.clone().recip()),
            FieldElement::Function(f) => FieldElement::from_polys(f.den.clone(), f.num.clone()),
        })
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, e: i32) -> Result<FieldElement> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(match &base {
            FieldElement::Rational(q) => {
                use rug::ops::Pow;
                FieldElement::Rational(Rational::from(q).pow(k))
            }
            FieldElement::Function(f) => FieldElement::from_polys(f.num.pow(k), f.den.pow(k)),
        })
    }

    /// `p/q` or `p` for constants; `(num)/(den)` or the bare numerator for
    /// non-constant functions.
    pub fn canonical_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write!(f, "{q}"),
            FieldElement::Function(r) if r.den == QPoly::one() => write!(f, "{}", r.num),
            FieldElement::Function(r) => write!(f, "({})/({})", r.num, r.den),
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

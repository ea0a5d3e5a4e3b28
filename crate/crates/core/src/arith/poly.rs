//! Dense univariate polynomials over ℚ in the variable `t`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

/// Coefficients are stored lowest degree first with no trailing zeros; the
/// zero polynomial has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Rational::from(1))
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        QPoly::from_coeffs(vec![Rational::new(), Rational::from(1)])
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[Integer]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|c| Rational::from(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; only for nonzero callers.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == 1)
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        if *c == 0 {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| Rational::from(a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Rational::from(c * Integer::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> QPoly {
        let mut base = self.clone();
        let mut acc = QPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Euclidean division. Panics when dividing by zero.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.deg();
        if self.coeffs.len() < divisor.coeffs.len() {
            return (QPoly::zero(), self.clone());
        }
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::new(); self.coeffs.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = Rational::from(&rem[k + dd] * &lead_inv);
            if c != 0 {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= Rational::from(&c * d);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (QPoly::from_coeffs(quot), QPoly::from_coeffs(rem))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &QPoly) -> Option<QPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Multiplicity of the nonconstant polynomial `p` as a factor of the
    /// nonzero `self`.
    pub fn multiplicity(&self, p: &QPoly) -> u32 {
        debug_assert!(!self.is_zero() && !p.is_constant());
        let mut rest = self.clone();
        let mut v = 0;
        while let Some(q) = rest.exact_div(p) {
            rest = q;
            v += 1;
        }
        v
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Writes `self = content · primitive` with `primitive` an integer
    /// polynomial of content 1 and positive leading coefficient.
    pub fn primitive_integer_part(&self) -> (Rational, Vec<Integer>) {
        if self.is_zero() {
            return (Rational::new(), Vec::new());
        }
        let mut denom_lcm = Integer::from(1);
        for c in &self.coeffs {
            denom_lcm.lcm_mut(c.denom());
        }
        let mut ints: Vec<Integer> = self
            .coeffs
            .iter()
            .map(|c| Rational::from(c * &denom_lcm).into_numer_denom().0)
            .collect();
        let mut g = Integer::new();
        for c in &ints {
            g.gcd_mut(c);
        }
        if ints.last().is_some_and(|c| *c < 0) {
            g = -g;
        }
        for c in ints.iter_mut() {
            c.div_exact_mut(&g);
        }
        (Rational::from((g, denom_lcm)), ints)
    }
}

impl Ord for QPoly {
    /// Degree first, then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for QPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::new();
        QPoly::from_coeffs(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&zero);
                    let b = rhs.coeffs.get(i).unwrap_or(&zero);
                    Rational::from(a + b)
                })
                .collect(),
        )
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        QPoly::from_coeffs(out)
    }
}

impl fmt::Display for QPoly {
    /// Expanded form, highest degree first: `t^2 - 3/2*t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let negative = *c < 0;
            let magnitude = Rational::from(c.abs_ref());
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let monomial = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            if i == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude == 1 {
                f.write_str(&monomial)?;
            } else {
                write!(f, "{magnitude}*{monomial}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> QPoly {
        QPoly::from_coeffs(cs.iter().map(|&c| Rational::from(c)).collect())
    }

    #[test]
    fn display_is_expanded_and_signed() {
        assert_eq!(p(&[1, 0, 1]).to_string(), "t^2 + 1");
        assert_eq!(p(&[1, -1]).to_string(), "-t + 1");
        assert_eq!(p(&[0, 1]).to_string(), "t");
        let half = QPoly::from_coeffs(vec![Rational::from((-3, 2)), Rational::from((1, 2))]);
        assert_eq!(half.to_string(), "1/2*t - 3/2");
        assert_eq!(QPoly::zero().to_string(), "0");
    }

    #[test]
    fn division_and_gcd() {
        let a = &p(&[1, 1]) * &p(&[-2, 0, 1]);
        let b = &p(&[1, 1]) * &p(&[5, 3]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        let (q, r) = a.div_rem(&p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, p(&[-2, 0, 1]));
        assert_eq!(a.multiplicity(&p(&[1, 1])), 1);
        assert_eq!(p(&[1, 1]).pow(3).multiplicity(&p(&[1, 1])), 3);
    }

    #[test]
    fn primitive_part_clears_denominators() {
        let f = QPoly::from_coeffs(vec![Rational::from((-3, 4)), Rational::from((-1, 2))]);
        let (c, prim) = f.primitive_integer_part();
        assert_eq!(prim, vec![Integer::from(3), Integer::from(2)]);
        assert_eq!(c, Rational::from((-1, 4)));
        assert_eq!(QPoly::from_integers(&prim).scale(&c), f);
    }
}

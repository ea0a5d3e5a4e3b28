//! Polynomial arithmetic over a prime field 𝔽_p and factorization there
//! (distinct-degree splitting followed by Cantor–Zassenhaus).
//!
//! Two coefficient backends share the algorithms: machine words for primes
//! below 2^62 and `rug::Integer` above that.

use std::fmt::Debug;

use rug::ops::Pow;
use rug::Integer;

pub trait PrimeField {
    type E: Clone + PartialEq + Debug;

    fn prime(&self) -> Integer;
    fn reduce(&self, x: &Integer) -> Self::E;
    fn lift(&self, x: &Self::E) -> Integer;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn embed(&self, x: u64) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

pub struct SmallPrime(pub u64);

impl PrimeField for SmallPrime {
    type E = u64;

    fn prime(&self) -> Integer {
        Integer::from(self.0)
    }
    fn reduce(&self, x: &Integer) -> u64 {
        let m = Integer::from(x % self.0);
        let m = if m < 0 { m + self.0 } else { m };
        m.to_u64().expect("reduced residue fits")
    }
    fn lift(&self, x: &u64) -> Integer {
        Integer::from(*x)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn embed(&self, x: u64) -> u64 {
        x % self.0
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((u128::from(*a) * u128::from(*b)) % u128::from(self.0)) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat; p is prime.
        let mut base = *a;
        let mut e = self.0 - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

pub struct BigPrime(pub Integer);

impl PrimeField for BigPrime {
    type E = Integer;

    fn prime(&self) -> Integer {
        self.0.clone()
    }
    fn reduce(&self, x: &Integer) -> Integer {
        let mut r = Integer::from(x % &self.0);
        if r < 0 {
            r += &self.0;
        }
        r
    }
    fn lift(&self, x: &Integer) -> Integer {
        x.clone()
    }
    fn zero(&self) -> Integer {
        Integer::new()
    }
    fn one(&self) -> Integer {
        Integer::from(1)
    }
    fn embed(&self, x: u64) -> Integer {
        self.reduce(&Integer::from(x))
    }
    fn is_zero(&self, x: &Integer) -> bool {
        *x == 0
    }
    fn add(&self, a: &Integer, b: &Integer) -> Integer {
        let mut s = Integer::from(a + b);
        if s >= self.0 {
            s -= &self.0;
        }
        s
    }
    fn sub(&self, a: &Integer, b: &Integer) -> Integer {
        let mut s = Integer::from(a - b);
        if s < 0 {
            s += &self.0;
        }
        s
    }
    fn mul(&self, a: &Integer, b: &Integer) -> Integer {
        Integer::from(a * b) % &self.0
    }
    fn inv(&self, a: &Integer) -> Integer {
        a.clone()
            .invert(&self.0)
            .expect("nonzero residue modulo a prime is invertible")
    }
}

/// Polynomials over 𝔽_p, lowest degree first, trimmed.
pub struct PolyRing<F: PrimeField> {
    pub field: F,
}

type Poly<F> = Vec<<F as PrimeField>::E>;

impl<F: PrimeField> PolyRing<F> {
    pub fn new(field: F) -> Self {
        PolyRing { field }
    }

    fn trim(&self, mut a: Poly<F>) -> Poly<F> {
        while a.last().is_some_and(|c| self.field.is_zero(c)) {
            a.pop();
        }
        a
    }

    pub fn reduce(&self, coeffs: &[Integer]) -> Poly<F> {
        self.trim(coeffs.iter().map(|c| self.field.reduce(c)).collect())
    }

    fn deg(a: &Poly<F>) -> usize {
        a.len().saturating_sub(1)
    }

    pub fn sub(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let n = a.len().max(b.len());
        let z = self.field.zero();
        self.trim(
            (0..n)
                .map(|i| self.field.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.field.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let prod = self.field.mul(x, y);
                out[i + j] = self.field.add(&out[i + j], &prod);
            }
        }
        self.trim(out)
    }

    pub fn div_rem(&self, a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let db = Self::deg(b);
        let inv = self.field.inv(b.last().unwrap());
        let mut rem = a.clone();
        let mut quot = vec![self.field.zero(); a.len() - db];
        for k in (0..quot.len()).rev() {
            let c = self.field.mul(&rem[k + db], &inv);
            if !self.field.is_zero(&c) {
                for (i, d) in b.iter().enumerate() {
                    let prod = self.field.mul(&c, d);
                    rem[k + i] = self.field.sub(&rem[k + i], &prod);
                }
            }
            quot[k] = c;
        }
        rem.truncate(db);
        (self.trim(quot), self.trim(rem))
    }

    pub fn rem(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        self.div_rem(a, b).1
    }

    pub fn monic(&self, a: &Poly<F>) -> Poly<F> {
        match a.last() {
            None => Vec::new(),
            Some(lead) => {
                let inv = self.field.inv(lead);
                a.iter().map(|c| self.field.mul(c, &inv)).collect()
            }
        }
    }

    pub fn gcd(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let mut x = self.monic(a);
        let mut y = self.monic(b);
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = self.monic(&r);
        }
        x
    }

    pub fn derivative(&self, a: &Poly<F>) -> Poly<F> {
        self.trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.field.mul(c, &self.field.embed(i as u64)))
                .collect(),
        )
    }

    fn is_one(&self, a: &Poly<F>) -> bool {
        a.len() == 1 && a[0] == self.field.one()
    }

    /// `base^e mod modulus`.
    pub fn pow_mod(&self, base: &Poly<F>, e: &Integer, modulus: &Poly<F>) -> Poly<F> {
        let mut acc = vec![self.field.one()];
        let mut b = self.rem(base, modulus);
        let bits = e.significant_bits();
        for i in (0..bits).rev() {
            acc = self.rem(&self.mul(&acc, &acc), modulus);
            if e.get_bit(i) {
                acc = self.rem(&self.mul(&acc, &b), modulus);
            }
        }
        b.clear();
        acc
    }

    /// Whether the polynomial is square-free over 𝔽_p.
    pub fn is_squarefree(&self, a: &Poly<F>) -> bool {
        let d = self.derivative(a);
        !d.is_empty() && self.is_one(&self.gcd(a, &d))
    }

    /// Monic irreducible factors of a monic square-free polynomial.
    pub fn factor_squarefree(&self, f: &Poly<F>) -> Vec<Poly<F>> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            self.equal_degree(&g, d, &mut out);
        }
        out
    }

    fn distinct_degree(&self, f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
        let p = self.field.prime();
        let x = vec![self.field.zero(), self.field.one()];
        let mut rest = f.clone();
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut d = 1;
        while Self::deg(&rest) >= 2 * d {
            h = self.pow_mod(&h, &p, &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if !self.is_one(&g) {
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
            d += 1;
        }
        if Self::deg(&rest) > 0 {
            let dr = Self::deg(&rest);
            out.push((self.monic(&rest), dr));
        }
        out
    }

    fn equal_degree(&self, g: &Poly<F>, d: usize, out: &mut Vec<Poly<F>>) {
        if Self::deg(g) == d {
            out.push(g.clone());
            return;
        }
        let p = self.field.prime();
        let exponent = (Integer::from(&p).pow(d as u32) - 1u32) / 2u32;
        // Deterministic sweep over splitting candidates t + c, then t^2 + t + c, ...
        let mut shift = 1usize;
        let mut c = 0u64;
        loop {
            let mut a = vec![self.field.zero(); shift + 1];
            a[0] = self.field.embed(c);
            a[shift] = self.field.one();
            if shift > 1 {
                a[1] = self.field.one();
            }
            let a = self.trim(a);
            let b = self.pow_mod(&a, &exponent, g);
            let b = self.sub(&b, &vec![self.field.one()]);
            let h = self.gcd(&b, g);
            if !h.is_empty() && Self::deg(&h) > 0 && Self::deg(&h) < Self::deg(g) {
                let other = self.div_rem(g, &h).0;
                self.equal_degree(&h, d, out);
                self.equal_degree(&self.monic(&other), d, out);
                return;
            }
            c += 1;
            if c > 64 {
                c = 0;
                shift += 1;
                if shift >= Self::deg(g) {
                    shift = 1;
                }
            }
        }
    }

    /// Symmetric lift of the coefficients into (-p/2, p/2].
    pub fn lift_symmetric(&self, a: &Poly<F>) -> Vec<Integer> {
        let p = self.field.prime();
        let half = Integer::from(&p / 2u32);
        a.iter()
            .map(|c| {
                let v = self.field.lift(c);
                if v > half {
                    v - &p
                } else {
                    v
                }
            })
            .collect()
    }

    pub fn scale(&self, a: &Poly<F>, c: &F::E) -> Poly<F> {
        self.trim(a.iter().map(|x| self.field.mul(x, c)).collect())
    }
}

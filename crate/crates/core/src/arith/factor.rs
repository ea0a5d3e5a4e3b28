//! Factorization of polynomials over ℚ into monic irreducibles.
//!
//! Square-free parts come from Yun's algorithm; each part is then factored
//! with a single large prime (Zassenhaus): factor modulo a prime exceeding
//! twice the coefficient bound, then recombine the modular factors.

use rug::{Complete, Integer, Rational};

use super::integer::next_prime;
use super::modp::{BigPrime, PolyRing, PrimeField, SmallPrime};
use super::poly::QPoly;

/// `f = unit · ∏ pᵢ^{eᵢ}` with monic irreducible `pᵢ`, sorted by the
/// polynomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(QPoly, u32)>,
}

/// Factors a nonzero polynomial.
pub fn factor(f: &QPoly) -> Factorization {
    assert!(!f.is_zero(), "factor(0)");
    let unit = f.leading();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&f.monic()) {
        for g in factor_squarefree(&part) {
            factors.push((g, mult));
        }
    }
    factors.sort();
    Factorization { unit, factors }
}

/// Yun's decomposition of a monic polynomial: pairs `(aᵢ, i)` with
/// `f = ∏ aᵢ^i`, each `aᵢ` monic, square-free and nonconstant.
pub fn squarefree_decomposition(f: &QPoly) -> Vec<(QPoly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let d = f.derivative();
    let a0 = f.gcd(&d);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let mut c = d.exact_div(&a0).expect("gcd divides derivative");
    let mut i = 1;
    loop {
        let cd = &c - &b.derivative();
        if b.is_constant() {
            break;
        }
        let a = b.gcd(&cd);
        b = b.exact_div(&a).expect("gcd divides");
        c = cd.exact_div(&a).expect("gcd divides");
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Monic irreducible factors of a monic square-free polynomial.
pub fn factor_squarefree(f: &QPoly) -> Vec<QPoly> {
    match f.deg() {
        0 => Vec::new(),
        1 => vec![f.monic()],
        2 => factor_quadratic(f),
        _ => {
            let (_, prim) = f.primitive_integer_part();
            let mut out: Vec<QPoly> = zassenhaus(&prim)
                .iter()
                .map(|g| QPoly::from_integers(g).monic())
                .collect();
            out.sort();
            out
        }
    }
}

fn factor_quadratic(f: &QPoly) -> Vec<QPoly> {
    let (_, prim) = f.primitive_integer_part();
    let (c, b, a) = (&prim[0], &prim[1], &prim[2]);
    let disc = Integer::from(b * b) - Integer::from(a * c) * 4u32;
    if disc < 0 || !disc.is_perfect_square() {
        return vec![f.monic()];
    }
    let s = disc.sqrt();
    let two_a = Integer::from(a * 2u32);
    let r1 = Rational::from((Integer::from(-b) + &s, two_a.clone()));
    let r2 = Rational::from((Integer::from(-b) - &s, two_a));
    let lin = |r: Rational| QPoly::from_coeffs(vec![-r, Rational::from(1)]);
    let mut out = vec![lin(r1), lin(r2)];
    out.sort();
    out
}

fn max_abs(f: &[Integer]) -> Integer {
    f.iter().map(|c| c.clone().abs()).max().unwrap_or_default()
}

fn mul_int(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    let mut out = vec![Integer::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += Integer::from(x * y);
        }
    }
    while out.last().is_some_and(|c| *c == 0) {
        out.pop();
    }
    out
}

fn primitive(f: Vec<Integer>) -> Vec<Integer> {
    let mut g = Integer::new();
    for c in &f {
        g.gcd_mut(c);
    }
    if f.last().is_some_and(|c| *c < 0) {
        g = -g;
    }
    f.into_iter().map(|c| c.div_exact(&g)).collect()
}

/// Irreducible factors over ℤ of a primitive square-free integer polynomial
/// with positive leading coefficient.
fn zassenhaus(f: &[Integer]) -> Vec<Vec<Integer>> {
    let n = f.len() - 1;
    let lc = f[n].clone();
    // Any factor of lc·f, scaled by lc, has coefficients below the Mignotte
    // style bound lc · 2^n · sqrt(n+1) · max|fᵢ|.
    let sqrt_ceil = Integer::from(n + 1).sqrt() + 1u32;
    let bound = Integer::from(1) << (n as u32);
    let bound = bound * sqrt_ceil * max_abs(f) * &lc;
    let mut p = next_prime(&(bound * 2u32));
    loop {
        if lc.is_divisible(&p) {
            p = next_prime(&p);
            continue;
        }
        let result = match p.to_u64().filter(|&q| q < (1u64 << 62)) {
            Some(q) => try_prime(SmallPrime(q), f),
            None => try_prime(BigPrime(p.clone()), f),
        };
        if let Some(factors) = result {
            return factors;
        }
        p = next_prime(&p);
    }
}

fn try_prime<F: PrimeField>(field: F, f: &[Integer]) -> Option<Vec<Vec<Integer>>> {
    let ring = PolyRing::new(field);
    let fp = ring.reduce(f);
    if !ring.is_squarefree(&fp) {
        return None;
    }
    let modular = ring.factor_squarefree(&ring.monic(&fp));
    Some(recombine(&ring, f.to_vec(), modular))
}

fn recombine<F: PrimeField>(ring: &PolyRing<F>, mut f: Vec<Integer>, mut modular: Vec<Vec<F::E>>) -> Vec<Vec<Integer>> {
    let mut found = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= modular.len() {
        let lc = f.last().unwrap().clone();
        let lc_mod = ring.field.reduce(&lc);
        let target: Vec<Integer> = f.iter().map(|c| (c * &lc).complete()).collect();
        for subset in combinations(modular.len(), s) {
            let mut g = vec![lc_mod.clone()];
            let mut h = vec![lc_mod.clone()];
            for (i, m) in modular.iter().enumerate() {
                if subset.contains(&i) {
                    g = ring.mul(&g, m);
                } else {
                    h = ring.mul(&h, m);
                }
            }
            let g_int = ring.lift_symmetric(&g);
            let h_int = ring.lift_symmetric(&h);
            if mul_int(&g_int, &h_int) == target {
                found.push(primitive(g_int));
                f = primitive(h_int);
                let mut idx = 0;
                modular.retain(|_| {
                    let keep = !subset.contains(&idx);
                    idx += 1;
                    keep
                });
                continue 'outer;
            }
        }
        s += 1;
    }
    found.push(f);
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> QPoly {
        QPoly::from_coeffs(cs.iter().map(|&c| Rational::from(c)).collect())
    }

    fn expand(fac: &Factorization) -> QPoly {
        let mut acc = QPoly::constant(fac.unit.clone());
        for (g, e) in &fac.factors {
            acc = &acc * &g.pow(*e);
        }
        acc
    }

    #[test]
    fn combinations_enumerates_all_subsets() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(5, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn swinnerton_dyer_style_recombination() {
        // t^4 - 10 t^2 + 1 is irreducible over ℚ but splits into linears or
        // quadratics modulo every prime.
        let f = p(&[1, 0, -10, 0, 1]);
        let fac = factor(&f);
        assert_eq!(fac.factors, vec![(f.clone(), 1)]);
    }

    #[test]
    fn mixed_multiplicities() {
        let f = &(&p(&[1, 1]).pow(3) * &p(&[-2, 0, 1])) * &p(&[1, 0, 1]).pow(2);
        let f = f.scale(&Rational::from((-7, 3)));
        let fac = factor(&f);
        assert_eq!(fac.unit, Rational::from((-7, 3)));
        assert_eq!(
            fac.factors,
            vec![(p(&[1, 1]), 3), (p(&[-2, 0, 1]), 1), (p(&[1, 0, 1]), 2)]
        );
        assert_eq!(expand(&fac), f);
    }

    #[test]
    fn non_monic_integer_factors() {
        // (2t + 3)(3t^2 - 5)(t^3 + t + 1)
        let f = &(&p(&[3, 2]) * &p(&[-5, 0, 3])) * &p(&[1, 1, 0, 1]);
        let fac = factor(&f);
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(expand(&fac), f);
    }

    #[test]
    fn rational_quadratic_roots() {
        let f = &p(&[-1, 2]) * &p(&[3, 5]);
        let fac = factor(&f);
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(expand(&fac), f);
    }
}

//! Integer factorization and primality for the place bookkeeping over ℚ.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rug::integer::IsPrime;
use rug::{Assign, Integer};

const SIEVE_LIMIT: usize = 1 << 14;
const MILLER_RABIN_REPS: u32 = 40;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut composite = vec![false; SIEVE_LIMIT + 1];
        let mut primes = Vec::new();
        for i in 2..=SIEVE_LIMIT {
            if !composite[i] {
                primes.push(i as u32);
                let mut k = i * i;
                while k <= SIEVE_LIMIT {
                    composite[k] = true;
                    k += i;
                }
            }
        }
        primes
    })
}

/// Primality of `n`. Numbers above the sieve limit go through Miller-Rabin with
/// enough rounds that a false positive is not a practical concern.
pub fn is_prime(n: &Integer) -> bool {
    if *n < 2 {
        return false;
    }
    n.is_probably_prime(MILLER_RABIN_REPS) != IsPrime::No
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: &Integer) -> Integer {
    n.clone().next_prime()
}

/// Prime factorization of `|n|`, ascending by prime. Panics on zero.
pub fn factorize(n: &Integer) -> Vec<(Integer, u32)> {
    assert!(*n != 0, "factorize(0)");
    let mut rest = n.clone().abs();
    let mut found: BTreeMap<Integer, u32> = BTreeMap::new();
    for &p in small_primes() {
        if rest == 1 {
            break;
        }
        let p_sq = u64::from(p) * u64::from(p);
        if rest < p_sq {
            break;
        }
        let mut e = 0;
        while rest.is_divisible_u(p) {
            rest.div_exact_u_mut(p);
            e += 1;
        }
        if e > 0 {
            found.insert(Integer::from(p), e);
        }
    }
    if rest > 1 {
        split_into(rest, &mut found);
    }
    found.into_iter().collect()
}

fn split_into(n: Integer, found: &mut BTreeMap<Integer, u32>) {
    if n == 1 {
        return;
    }
    if is_prime(&n) {
        *found.entry(n).or_insert(0) += 1;
        return;
    }
    if let Some(root) = exact_square_root(&n) {
        split_into(root.clone(), found);
        split_into(root, found);
        return;
    }
    let d = pollard_brent(&n);
    let cofactor = Integer::from(&n / &d);
    split_into(d, found);
    split_into(cofactor, found);
}

fn exact_square_root(n: &Integer) -> Option<Integer> {
    if n.is_perfect_square() {
        Some(n.clone().sqrt())
    } else {
        None
    }
}

/// A nontrivial divisor of the odd composite `n` (Brent's variant of rho).
fn pollard_brent(n: &Integer) -> Integer {
    const BATCH: u64 = 128;
    let step = |x: &mut Integer, c: u64| {
        x.square_mut();
        *x += c;
        *x %= n;
    };
    for c in 1u64.. {
        let mut y = Integer::from(2);
        let mut x = Integer::new();
        let mut ys = Integer::new();
        let mut q = Integer::from(1);
        let mut g = Integer::from(1);
        let mut r = 1u64;
        let mut diff = Integer::new();
        while g == 1 {
            x.assign(&y);
            for _ in 0..r {
                step(&mut y, c);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys.assign(&y);
                for _ in 0..BATCH.min(r - k) {
                    step(&mut y, c);
                    diff.assign(&x - &y);
                    diff.abs_mut();
                    q *= &diff;
                    q %= n;
                }
                g.assign(q.gcd_ref(n));
                k += BATCH;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                step(&mut ys, c);
                diff.assign(&x - &ys);
                diff.abs_mut();
                g.assign(diff.gcd_ref(n));
                if g > 1 {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
    }
    unreachable!("rho exhausted every increment")
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &Integer, p: &Integer) -> u32 {
    debug_assert!(*n != 0);
    let mut rest = n.clone();
    let mut v = 0;
    while rest.is_divisible(p) {
        rest.div_exact_mut(p);
        v += 1;
    }
    v
}

/// Exponent of the prime `p` in `n!` (Legendre).
pub fn factorial_valuation(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut power = p;
    while power <= n {
        total += n / power;
        match power.checked_mul(p) {
            Some(next) => power = next,
            None => break,
        }
    }
    total
}

/// Primes up to and including `n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut k = i * i;
            while k <= n {
                composite[k] = true;
                k += i;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    fn as_u64(v: Vec<(Integer, u32)>) -> Vec<(u64, u32)> {
        v.into_iter().map(|(p, e)| (p.to_u64().unwrap(), e)).collect()
    }

    #[test]
    fn matches_trial_division() {
        for n in 1..5000u64 {
            assert_eq!(as_u64(factorize(&Integer::from(n))), trial_division(n), "n = {n}");
        }
        for n in [600851475143u64, 999999000001, 4294967297, 1u64 << 61] {
            assert_eq!(as_u64(factorize(&Integer::from(n))), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn word_sized_prime() {
        let p = Integer::from(18446744073709551557u64);
        assert!(is_prime(&p));
        assert_eq!(factorize(&p), vec![(p.clone(), 1)]);
        assert_eq!(next_prime(&Integer::from(18446744073709551533u64)), p);
    }

    #[test]
    fn large_semiprimes_and_powers() {
        let p = Integer::from(1_000_000_007u64);
        let q = Integer::from(998_244_353u64);
        let n = Integer::from(&p * &q) * &p;
        assert_eq!(factorize(&n), vec![(q.clone(), 1), (p.clone(), 2)]);
        let r = Integer::from(2147483647u64);
        let cube = Integer::from(&r).pow(3u32);
        assert_eq!(factorize(&cube), vec![(r, 3)]);
        assert_eq!(
            factorize(&Integer::from(-12)),
            vec![(Integer::from(2), 2), (Integer::from(3), 1)]
        );
    }

    #[test]
    fn legendre_matches_factorial() {
        let f = Integer::from(Integer::factorial(40));
        for p in primes_up_to(40) {
            assert_eq!(u64::from(valuation(&f, &Integer::from(p))), factorial_valuation(40, p));
        }
    }
}

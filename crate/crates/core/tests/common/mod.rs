#![allow(dead_code)]

use std::collections::BTreeMap;

use adelic_roth::cli::{parse_config, RunConfig};
use adelic_roth::curve::Place;
use adelic_roth::field::{FieldElement, FieldKind};
use adelic_roth::gap::{gap2_params, GapMatrix};
use adelic_roth::numeric::{LogValue, Numerics};
use adelic_roth::system::SystemSpec;
use rand::Rng;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// One census configuration of the test battery.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub toml: String,
}

impl Entry {
    pub fn config(&self) -> RunConfig {
        parse_config(&self.toml).unwrap_or_else(|e| panic!("{}: {e}", self.name))
    }

    pub fn spec(&self) -> SystemSpec {
        self.config()
            .to_spec()
            .unwrap_or_else(|v| panic!("{}: {v:?}", self.name))
    }
}

fn toml_list(items: &[&str]) -> String {
    let quoted: Vec<String> = items.iter().map(|s| format!("\"{s}\"")).collect();
    format!("[{}]", quoted.join(", "))
}

fn entry(
    curve: &str,
    alphas: &[&str],
    theta: &[(&str, &str)],
    amplitude: &str,
    eps: &str,
    bound: &str,
    cap: Option<u32>,
) -> Entry {
    let places: Vec<&str> = theta.iter().map(|(p, _)| *p).collect();
    let mut toml = format!(
        "curve = \"{curve}\"\nalphas = {}\nS = {}\n{amplitude}\nepsilon = \"{eps}\"\nheight_bound = \"{bound}\"\n",
        toml_list(alphas),
        toml_list(&places)
    );
    if let Some(c) = cap {
        toml.push_str(&format!("coefficient_cap = {c}\n"));
    }
    toml.push_str("\n[theta]\n");
    for (p, t) in theta {
        toml.push_str(&format!("\"{p}\" = \"{t}\"\n"));
    }
    let name = format!("{curve} α={alphas:?} θ={theta:?} {amplitude} ε={eps}");
    Entry { name, toml }
}

/// Specs over ℚ with a rational amplitude, height bound `log 20`.
pub fn rational_battery() -> Vec<Entry> {
    let b = "log 20";
    let q = |alphas: &[&str], theta: &[(&str, &str)], a: &str, eps: &str| {
        entry("Q", alphas, theta, &format!("A = \"{a}\""), eps, b, None)
    };
    vec![
        q(&["1"], &[("inf", "3")], "1", "1"),
        q(&["1"], &[("inf", "3")], "1/8", "1"),
        q(&["1"], &[("inf", "7/2")], "1/8", "1"),
        q(&["1"], &[("inf", "4")], "1/64", "1"),
        q(&["1/2"], &[("inf", "3")], "1/4", "1/2"),
        q(&["2"], &[("inf", "5/2")], "1/2", "1/2"),
        q(&["-1"], &[("inf", "11/5")], "1/16", "1/5"),
        q(&["3/2"], &[("inf", "5/2")], "1/10", "1/2"),
        q(&["1"], &[("2", "3")], "1", "1"),
        q(&["1"], &[("2", "3")], "1/2", "1"),
        q(&["1"], &[("3", "5/2")], "1/3", "1/2"),
        q(&["1"], &[("inf", "3/2"), ("2", "3/2")], "1/4", "1"),
        q(&["1"], &[("inf", "1"), ("3", "2")], "1/9", "1"),
        q(&["1", "2"], &[("inf", "3")], "1/16", "1"),
        q(&["1", "-1"], &[("2", "3")], "1/4", "1"),
        q(&["1/2", "3"], &[("inf", "2"), ("5", "1")], "1/25", "1"),
        q(&["1"], &[("5", "3")], "1/5", "1"),
        q(&["7/3"], &[("inf", "3")], "1/100", "1"),
        q(&["1"], &[("inf", "5/2"), ("2", "1")], "1/32", "3/2"),
        q(&["1"], &[("inf", "21/10")], "1", "1/10"),
        q(&["1/3"], &[("3", "5/2")], "1", "1/2"),
        q(&["1"], &[("inf", "3")], "2", "1"),
        q(&["-2/5"], &[("inf", "2"), ("2", "1/2"), ("5", "1/2")], "1/50", "1"),
    ]
}

/// The full battery: the ℚ specs above plus an irrational amplitude and a
/// few ℚ(t) specs.
pub fn battery() -> Vec<Entry> {
    let mut all = rational_battery();
    all.push(entry("Q", &["1"], &[("inf", "3")], "logA = \"1\"", "1", "log 20", None));
    all.push(entry(
        "Q",
        &["1"],
        &[("inf", "3")],
        "logA = \"-2*log 3\"",
        "1",
        "log 20",
        None,
    ));
    let qt = |alphas: &[&str], theta: &[(&str, &str)], a: &str, eps: &str, cap: u32| {
        entry("Q(t)", alphas, theta, &format!("A = \"{a}\""), eps, "2", Some(cap))
    };
    all.push(qt(&["t"], &[("deg", "3")], "1", "1", 1));
    all.push(qt(&["1"], &[("t", "3")], "1", "1", 1));
    all.push(qt(&["t + 1"], &[("deg", "3/2"), ("t", "3/2")], "1", "1", 1));
    all.push(qt(&["t"], &[("t - 1", "3")], "1/2", "1", 1));
    all.push(qt(&["1", "t"], &[("deg", "3")], "1", "1", 1));
    all
}

/// `|x|_ω` for a rational `x` and a place id of ℚ, as an exact rational.
pub fn abs_at(place: &str, x: &Rational) -> Rational {
    if place == "inf" {
        return Rational::from(x.abs_ref());
    }
    let p: u32 = place.parse().expect("prime place");
    let val = |n: &Integer| {
        let mut n = Integer::from(n.abs_ref());
        let mut v = 0i32;
        while n.is_divisible_u(p) {
            n /= p;
            v += 1;
        }
        v
    };
    let v = val(x.numer()) - val(x.denom());
    let pp = Rational::from(p);
    if v >= 0 {
        Rational::from(1) / pp.pow(v as u32)
    } else {
        pp.pow((-v) as u32)
    }
}

/// Independent brute force over reduced `p/q` with `max(|p|, q) ≤ m`: keeps
/// the non-degenerate `β` with `|β − α_i|_ω ≤ (A·H(β))^{−θ(ω)}` for all `i`
/// and `ω`, decided exactly as `|β − α_i|_ω^b · (A·H(β))^a ≤ 1` with
/// `θ = a/b`.
pub fn oracle_solutions(alphas: &[Rational], theta: &[(String, Rational)], a: &Rational, m: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    for q in 1..=m {
        for p in -m..=m {
            if p == 0 || Integer::from(p).gcd(&Integer::from(q)) != 1 {
                continue;
            }
            let beta = Rational::from((p, q));
            if alphas.contains(&beta) {
                continue;
            }
            let h = Rational::from(p.abs().max(q));
            let ah = Rational::from(a * &h);
            let ok = alphas.iter().all(|alpha| {
                let d = Rational::from(&beta - alpha);
                theta.iter().all(|(place, t)| {
                    let b = t.denom().to_u32().expect("small denominator");
                    let lhs = abs_at(place, &d).pow(b);
                    lhs * ah.clone().pow(t.numer().to_u32().unwrap()) <= 1
                })
            });
            if ok {
                out.push(beta);
            }
        }
    }
    out.sort();
    out
}

pub fn random_rational<R: Rng>(rng: &mut R, max: i64) -> Rational {
    loop {
        let p = rng.gen_range(-max..=max);
        let q = rng.gen_range(1..=max);
        if p != 0 {
            return Rational::from((p, q));
        }
    }
}

/// A random nonzero rational function with small integer coefficients.
pub fn random_function<R: Rng>(rng: &mut R, max_degree: usize, cap: i64) -> FieldElement {
    let poly = |rng: &mut R| loop {
        let d = rng.gen_range(0..=max_degree);
        let coeffs: Vec<i64> = (0..=d).map(|_| rng.gen_range(-cap..=cap)).collect();
        if coeffs.iter().any(|&c| c != 0) {
            return coeffs;
        }
    };
    let render = |c: &[i64]| {
        let terms: Vec<String> = c.iter().enumerate().map(|(i, k)| format!("({k})*t^{i}")).collect();
        format!("({})", terms.join(" + "))
    };
    let num = poly(rng);
    let den = poly(rng);
    FieldElement::parse(
        FieldKind::RationalFunctions,
        &format!("{}/{}", render(&num), render(&den)),
    )
    .unwrap()
}

/// A synthetic `(n+1) × N` instance satisfying every hypothesis of the
/// certificate by construction, with its θ and partition.
pub struct SyntheticInstance {
    pub matrix: GapMatrix,
    pub theta: Vec<(Place, Rational)>,
    pub partition: Vec<Vec<Place>>,
}

fn approx(x: Float) -> LogValue {
    let err = Float::with_val(64, x.abs_ref()) * Float::with_val(64, Float::i_exp(1, -100));
    LogValue::approx(x, err)
}

/// Heights follow `h(β_{j+1}) = 4nN²N!·log ρ_j·(1+u)`, so the h-gap holds
/// with room to spare; local values are `−θ(ω)·log ρ_j·(1+v)` on the cell
/// of each row, and 0 elsewhere. θ is kept small enough that the local
/// values respect the Liouville inequality on `S`.
pub fn synthetic_instance<R: Rng>(rng: &mut R) -> SyntheticInstance {
    let prec = 192;
    let n: usize = rng.gen_range(1..=2);
    let n_min = gap2_params(n as u64, &Rational::from(1_000_000)).big_n;
    let big_n = n_min as usize + rng.gen_range(0..=3);
    let fact = Integer::from(Integer::factorial(big_n as u32));
    let k = Integer::from(n) * 4u32 * Integer::from(big_n) * Integer::from(big_n) * &fact;
    let kf = Float::with_val(prec, &k);
    let log4: Float = Float::with_val(prec, 4).ln();
    let two_fact = Float::with_val(prec, &fact) * 2u32;

    let alpha_h: Vec<Vec<Float>> = (0..n)
        .map(|_| {
            (0..big_n)
                .map(|_| Float::with_val(prec, rng.gen_range(0.0..5.0)))
                .collect()
        })
        .collect();
    let sum_alpha = |j: usize| -> Float { alpha_h.iter().fold(Float::with_val(prec, 0), |acc, row| acc + &row[j]) };
    let log_rho = |hb: &Float, j: usize| -> Float {
        Float::with_val(prec, &two_fact * &log4) + hb + Float::with_val(prec, &two_fact / n as u32) * sum_alpha(j)
    };
    let first_scale: f64 = rng.gen_range(100.0..1000.0);
    let mut beta_h: Vec<Float> = vec![Float::with_val(prec, &two_fact * &log4) * first_scale];
    for j in 1..big_n {
        let u: f64 = rng.gen_range(0.01..1.0);
        let next = Float::with_val(prec, &kf * log_rho(&beta_h[j - 1], j - 1)) * (1.0 + u);
        beta_h.push(next);
    }

    let places = [
        Place::infinite(),
        Place::prime(Integer::from(2)),
        Place::prime(Integer::from(3)),
    ];
    let count = rng.gen_range(1..=places.len());
    let chosen: Vec<Place> = places[..count].to_vec();
    // ∫θ(1+v) stays below h(β_j)/log ρ_j ≥ first_scale/(first_scale + 1) · (1 − small)
    let total = Rational::from((rng.gen_range(1..=80), 100));
    let weights: Vec<u32> = (0..count).map(|_| rng.gen_range(1..=4)).collect();
    let wsum: u32 = weights.iter().sum();
    let theta: Vec<(Place, Rational)> = chosen
        .iter()
        .zip(&weights)
        .map(|(p, &w)| (p.clone(), (&total * Rational::from((w, wsum)))))
        .collect();
    let mut partition = vec![Vec::new(); n];
    for p in &chosen {
        partition[rng.gen_range(0..n)].push(p.clone());
    }

    let mut table = vec![vec![BTreeMap::new(); big_n]; n];
    for j in 0..big_n {
        let rho = log_rho(&beta_h[j], j);
        for (h, cell) in partition.iter().enumerate() {
            for (p, t) in &theta {
                let value = if cell.contains(p) {
                    let v: f64 = rng.gen_range(0.0..0.2);
                    let t = Float::with_val(prec, t);
                    -(Float::with_val(prec, &rho * &t) * (1.0 + v))
                } else {
                    Float::with_val(prec, 0)
                };
                table[h][j].insert(p.clone(), approx(value));
            }
        }
    }
    let alpha_heights = alpha_h
        .into_iter()
        .map(|row| row.into_iter().map(approx).collect())
        .collect();
    let beta_heights = beta_h.into_iter().map(approx).collect();
    let matrix = GapMatrix::synthetic(alpha_heights, beta_heights, table, Numerics::default()).unwrap();
    SyntheticInstance {
        matrix,
        theta,
        partition,
    }
}

/// Floating check of the Liouville inequality on `S` for every entry of a
/// synthetic instance, independent of the library's comparison code.
pub fn synthetic_is_liouville_consistent(inst: &SyntheticInstance) -> bool {
    let m = &inst.matrix;
    for j in 1..=m.columns() {
        for h in 1..=m.n() {
            let mut lhs = Float::with_val(128, 0);
            for (p, _) in &inst.theta {
                lhs += m.local_log(h, j, p).unwrap().to_float(128) * Float::with_val(128, p.mass());
            }
            let rhs =
                -(m.alpha_height(h, j).to_float(128) + m.beta_height(j).to_float(128) + Float::with_val(128, 2).ln());
            if lhs < rhs {
                return false;
            }
        }
    }
    true
}

#![allow(dead_code)]

//! Test-only oracles. None of these call into the code paths they check.

use std::sync::Arc;

use jetcalc::chow::{
    evaluate, frobenius_pullback, invert_series, whitney_product, AmbientSpec, ChernSeries,
    CycleClass, IntersectionTable,
};
use jetcalc::{Monomial, Polynomial, Variable};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

pub fn poly(s: &str) -> Polynomial {
    s.parse().unwrap()
}

pub fn var(name: &str, order: u32) -> Variable {
    Variable::new(name, order).unwrap()
}

/// Integer Fermat quotient by direct arithmetic.
pub fn fermat_quotient_oracle(c: &BigInt, p: u32) -> BigInt {
    let cp = (0..p).fold(BigInt::one(), |acc, _| acc * c);
    (c - cp) / BigInt::from(p)
}

fn sum_correction(a: &Polynomial, b: &Polynomial, p: u32) -> Polynomial {
    let s = a + b;
    (a.pow(p) + b.pow(p) - s.pow(p))
        .divide_exact(&BigInt::from(p))
        .expect("sum correction is integral")
}

// δ(ab) = a^p δb + b^p δa + p δa δb
fn product_rule(a: &Polynomial, da: &Polynomial, b: &Polynomial, db: &Polynomial, p: u32) -> Polynomial {
    a.pow(p) * db + b.pow(p) * da + (da * db).scale(&BigInt::from(p))
}

/// δ computed by structural recursion: sum rule across terms, product rule
/// across factors, `δ(v@k) = v@(k+1)` and Fermat quotients on constants.
pub fn recursive_delta(f: &Polynomial, p: u32) -> Polynomial {
    let mut acc = Polynomial::zero();
    let mut dacc = Polynomial::zero();
    for (m, c) in f.terms() {
        let (t, dt) = delta_term(&m, c, p);
        let next_d = &dacc + &dt + sum_correction(&acc, &t, p);
        acc = &acc + &t;
        dacc = next_d;
    }
    dacc
}

fn delta_term(m: &Monomial, c: &BigInt, p: u32) -> (Polynomial, Polynomial) {
    let mut val = Polynomial::constant(c.clone());
    let mut dval = Polynomial::constant(fermat_quotient_oracle(c, p));
    for (v, e) in m.factors() {
        let x = Polynomial::variable(v.clone());
        let dx = Polynomial::variable(v.next_order());
        for _ in 0..*e {
            let nd = product_rule(&val, &dval, &x, &dx, p);
            val = &val * &x;
            dval = nd;
        }
    }
    (val, dval)
}

/// Random polynomial in `names` with total degree ≤ `max_deg`, coefficients
/// in `[-9, 9]`, at most `max_terms` terms.
pub fn random_poly(rng: &mut StdRng, names: &[&str], max_deg: u32, max_terms: usize) -> Polynomial {
    let nterms = rng.gen_range(0..=max_terms);
    let mut terms = Vec::with_capacity(nterms);
    for _ in 0..nterms {
        let mut budget = rng.gen_range(0..=max_deg);
        let mut factors = Vec::new();
        for name in names {
            if budget == 0 {
                break;
            }
            let e = rng.gen_range(0..=budget);
            budget -= e;
            if e > 0 {
                factors.push((var(name, 0), e));
            }
        }
        terms.push((Monomial::new(factors), BigInt::from(rng.gen_range(-9i64..=9))));
    }
    Polynomial::from_terms(terms)
}

/// proptest strategy for the same family of polynomials.
pub fn arb_poly(names: &'static [&'static str], max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let nvars = names.len();
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, nvars), -9i64..=9),
        0..=max_terms,
    )
    .prop_map(move |raw| {
        Polynomial::from_terms(raw.into_iter().map(|(mut exps, c)| {
            // clamp total degree
            let mut budget = max_deg;
            for e in exps.iter_mut() {
                *e = (*e).min(budget);
                budget -= *e;
            }
            let m = Monomial::new(
                names
                    .iter()
                    .zip(exps)
                    .map(|(n, e)| (Variable::base(n).unwrap(), e)),
            );
            (m, BigInt::from(c))
        }))
    })
}

/// True iff every coefficient of `f` is divisible by `p`.
pub fn all_divisible(f: &Polynomial, p: u64) -> bool {
    let p = BigInt::from(p);
    f.coefficients().all(|c| (c % &p).is_zero())
}

/// Random series `1 + σ_1 + ... + σ_N` over `ambient`, coefficients in [-9, 9].
pub fn random_series(rng: &mut StdRng, ambient: &Arc<AmbientSpec>, truncation: u32) -> ChernSeries {
    let syms = ambient.symbols().to_vec();
    let mut comps = vec![CycleClass::one(ambient)];
    for i in 1..=truncation {
        let mut comp = CycleClass::zero(ambient);
        for _ in 0..rng.gen_range(0..=3) {
            let mut mono = CycleClass::constant(ambient, rng.gen_range(-9i64..=9));
            for _ in 0..i {
                let s = &syms[rng.gen_range(0..syms.len())];
                mono = mono.mul(&CycleClass::symbol(ambient, s).unwrap()).unwrap();
            }
            comp = comp.add(&mono).unwrap();
        }
        comps.push(comp);
    }
    ChernSeries::new(ambient, comps).unwrap()
}

/// Segre series of `F*Ω_X` for `X = ∩ H_j` through the conormal sequence:
/// `c(Ω_X) = ∏ (1 - h_j)^{-1}`, `s = c^{-1}`, then Frobenius pullback.
pub fn conormal_segre_oracle(ambient: &Arc<AmbientSpec>, hyps: &[&str], p: u64) -> ChernSeries {
    let d = ambient.dim() - hyps.len() as u32;
    let mut chern = ChernSeries::one(ambient, d);
    for h in hyps {
        let conormal_chern = CycleClass::one(ambient)
            .sub(&CycleClass::symbol(ambient, h).unwrap())
            .unwrap();
        let factor = ChernSeries::from_class(&conormal_chern, d).unwrap();
        chern = whitney_product(&chern, &invert_series(&factor).unwrap()).unwrap();
    }
    frobenius_pullback(&invert_series(&chern).unwrap(), p)
}

/// `N_1` for a surface-free case `n = 3, c = 2` by adjunction:
/// `K_X = (h1 + h2)|_X`, so `N_1 = p · deg((h1 + h2) h1 h2)`.
pub fn adjunction_n1(table: &IntersectionTable, p: u64) -> BigInt {
    let a = table.ambient();
    let k = CycleClass::parse(a, "(h1 + h2)*h1*h2").unwrap();
    BigInt::from(p) * evaluate(&k, table).unwrap()
}

/// `p^{3g} 3^g g! (6g + p(2g - 2))` by plain loops.
pub fn curve_bound_closed_form(p: u64, g: u32) -> BigInt {
    let pb = BigInt::from(p);
    let mut acc = BigInt::one();
    for _ in 0..3 * g {
        acc *= &pb;
    }
    for _ in 0..g {
        acc *= 3;
    }
    for k in 1..=g {
        acc *= k;
    }
    acc * (BigInt::from(6 * g) + &pb * BigInt::from(2 * g - 2))
}

pub fn odd_primes_up_to(n: u64) -> Vec<u64> {
    (3..=n)
        .filter(|&k| k % 2 == 1 && (3..k).step_by(2).take_while(|d| d * d <= k).all(|d| k % d != 0))
        .collect()
}

/// Output of one invocation of the built binary.
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_cli(args: &[&str]) -> CliOutput {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_jetcalc"))
        .args(args)
        .env_clear()
        .output()
        .expect("binary runs");
    CliOutput {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// Validates `instance` against `schemas/<name>.schema.json`.
pub fn check_schema(name: &str, instance: &str) -> Result<(), String> {
    let path = format!("{}/schemas/{name}.schema.json", env!("CARGO_MANIFEST_DIR"));
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
    let value: serde_json::Value = serde_json::from_str(instance).map_err(|e| e.to_string())?;
    let validator = jsonschema::validator_for(&schema).map_err(|e| e.to_string())?;
    validator.validate(&value).map_err(|e| e.to_string())
}

/// Writes `contents` to a fresh file under the system temp directory.
pub fn temp_file(tag: &str, contents: &str) -> std::path::PathBuf {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!("jetcalc-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{tag}-{}", NEXT.fetch_add(1, Ordering::Relaxed)));
    std::fs::write(&path, contents).unwrap();
    path
}

pub const CURVE_JSON: &str = r#"{"p":5,"n":2,"d":1,"interior":"22","coset_constant":"25","translate_factor":"11250","bound":"6187500","warnings":[],"assumptions":["X is smooth with ample cotangent bundle","p is a sufficiently large prime of good reduction for X and A","X is a genus-2 curve in its Jacobian with principal polarization (deg_theta X = 2)"]}"#;

mod common;

use common::{adjunction_n1, curve_bound_closed_form, odd_primes_up_to};
use jetcalc::bound::{
    buium_curve_bound, complete_intersection_bound, interior_degree, theorem_b_bound,
    SegreDegreeVector,
};
use jetcalc::chow::{AmbientSpec, IntersectionTable};
use jetcalc::Error;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn sv(v: &[i64]) -> SegreDegreeVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

const CUBIC_MONOMIALS: [&str; 10] = [
    "theta^3", "theta^2*h1", "theta^2*h2", "theta*h1^2", "theta*h1*h2", "theta*h2^2",
    "h1^3", "h1^2*h2", "h1*h2^2", "h2^3",
];

fn random_table(rng: &mut StdRng) -> IntersectionTable {
    let amb = AmbientSpec::with_hypersurfaces(3, 2).unwrap();
    let mut t = IntersectionTable::new(&amb);
    for key in CUBIC_MONOMIALS {
        t.insert(key, rng.gen_range(0i64..=40)).unwrap();
    }
    t
}

#[test]
fn curve_interior_degree_over_the_whole_grid() {
    let mut points = 0;
    for g in 2..=10u32 {
        for p in odd_primes_up_to(97).into_iter().filter(|&p| p > 2 * g as u64) {
            let n = vec![BigInt::from(3 * g), BigInt::from(p) * (2 * g - 2)];
            let got = interior_degree(1, &SegreDegreeVector::new(n)).unwrap();
            assert_eq!(got, BigInt::from(6 * g) + BigInt::from(p) * (2 * g - 2));
            let report = buium_curve_bound(p, g).unwrap();
            assert_eq!(report.bound(), &curve_bound_closed_form(p, g));
            assert!(report.factorization_holds());
            points += 1;
        }
    }
    assert!(points > 150, "{points}");
}

#[test]
fn genus_two_fixture_and_factorization() {
    let r = buium_curve_bound(5, 2).unwrap();
    assert_eq!(r.bound(), &BigInt::from(6187500));
    assert_eq!(r.interior(), &BigInt::from(22));
    assert_eq!(r.coset_constant(), &BigInt::from(25));
    assert_eq!(r.translate_factor(), &BigInt::from(11250));
    assert_eq!(r.coset_constant() * r.translate_factor() * r.interior(), *r.bound());
    assert!(r.warnings().is_empty());
}

#[test]
fn curve_hypotheses_are_enforced() {
    assert!(matches!(buium_curve_bound(3, 2), Err(Error::HypothesisViolation(_))));
    assert!(matches!(buium_curve_bound(5, 2 + 1), Err(Error::HypothesisViolation(_))));
    assert!(matches!(buium_curve_bound(9, 2), Err(Error::InvalidPrime { .. })));
    assert!(buium_curve_bound(5, 1).is_err());
}

#[test]
fn general_bound_rejects_wrong_length() {
    let err = theorem_b_bound(5, 3, 2, &sv(&[1, 2])).unwrap_err();
    assert!(matches!(err, Error::LengthMismatch { expected: 3, found: 2 }));
    assert!(theorem_b_bound(5, 3, 2, &sv(&[1, 2, 3])).unwrap().factorization_holds());
}

#[test]
fn bound_grows_with_p() {
    let primes = odd_primes_up_to(97);
    for g in 2..=4u32 {
        let bounds: Vec<BigInt> = primes
            .iter()
            .filter(|&&p| p > 2 * g as u64)
            .map(|&p| buium_curve_bound(p, g).unwrap().bound().clone())
            .collect();
        assert!(bounds.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn complete_intersection_agrees_with_adjunction() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..20 {
        let table = random_table(&mut rng);
        let amb = table.ambient().clone();
        for p in [3u64, 5, 7] {
            let r = complete_intersection_bound(p, &amb, &["h1", "h2"], &table).unwrap();
            let n0 = BigInt::from(3) * table.get("theta*h1*h2").unwrap().unwrap();
            let n1 = adjunction_n1(&table, p);
            assert_eq!(r.segre_degrees().entries(), &[n0.clone(), n1.clone()]);
            assert_eq!(r.interior(), &(n0 * 2 + n1));
            assert!(r.factorization_holds());
            assert!(r.warnings().is_empty());
        }
    }
}

#[test]
fn complete_intersection_is_symmetric_in_hypersurfaces() {
    let mut rng = StdRng::seed_from_u64(5);
    let table = random_table(&mut rng);
    let amb = table.ambient().clone();
    let a = complete_intersection_bound(5, &amb, &["h1", "h2"], &table).unwrap();
    let b = complete_intersection_bound(5, &amb, &["h2", "h1"], &table).unwrap();
    assert_eq!(a, b);
}

#[test]
fn warning_fires_exactly_when_few_hypersurfaces() {
    for n in 2..=5u32 {
        for c in 1..n {
            let amb = AmbientSpec::with_hypersurfaces(n, c).unwrap();
            let mut table = IntersectionTable::new(&amb);
            // a table that answers every top-codimension monomial with 1
            let syms: Vec<String> = amb.symbols().to_vec();
            for key in top_monomials(&syms, n) {
                table.insert(&key, 1).unwrap();
            }
            let hyps: Vec<String> = (1..=c).map(|j| format!("h{j}")).collect();
            let r = complete_intersection_bound(7, &amb, &hyps, &table).unwrap();
            assert_eq!(!r.warnings().is_empty(), 2 * c <= n, "n={n} c={c}");
        }
    }
}

#[test]
fn complete_intersection_needs_positive_dimension() {
    let amb = AmbientSpec::with_hypersurfaces(2, 2).unwrap();
    let table = IntersectionTable::new(&amb);
    let err = complete_intersection_bound(5, &amb, &["h1", "h2"], &table).unwrap_err();
    assert!(matches!(err, Error::InvalidInput(_)));
}

fn top_monomials(syms: &[String], n: u32) -> Vec<String> {
    fn go(syms: &[String], start: usize, left: u32, cur: &mut Vec<String>, out: &mut Vec<String>) {
        if left == 0 {
            out.push(cur.join("*"));
            return;
        }
        for i in start..syms.len() {
            cur.push(syms[i].clone());
            go(syms, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(syms, 0, n, &mut Vec::new(), &mut out);
    out
}

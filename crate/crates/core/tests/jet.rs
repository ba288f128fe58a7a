mod common;

use common::{poly, random_poly};
use jetcalc::delta::DeltaContext;
use jetcalc::jet::{jet_presentation, prolongation_commutation_check, special_fiber, JetPresentation};
use jetcalc::Polynomial;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::SeedableRng;

const NAMES: [&str; 3] = ["x", "y", "z"];

#[test]
fn counting_law_and_commutation_small_grid() {
    let mut rng = StdRng::seed_from_u64(7);
    for p in [3u64, 5] {
        for m in 1..=3usize {
            for s in 0..=2usize {
                for r in 0..=2u32 {
                    let names = &NAMES[..m];
                    let ctx = DeltaContext::new(p).unwrap().with_base_vars(names).unwrap();
                    let gens: Vec<Polynomial> =
                        (0..s).map(|_| random_poly(&mut rng, names, 2, 2)).collect();
                    let pres = jet_presentation(&gens, &ctx, r).unwrap();
                    assert_eq!(pres.num_variables(), m * (r as usize + 1));
                    assert_eq!(pres.variables().len(), m * (r as usize + 1));
                    assert_eq!(pres.num_generators(), s * (r as usize + 1));
                    assert!(prolongation_commutation_check(&pres, &ctx));
                }
            }
        }
    }
}

#[test]
fn generators_stay_within_their_jet_level() {
    let ctx = DeltaContext::new(3).unwrap();
    let pres = jet_presentation(&[poly("x*y - 1"), poly("x^2 + y + 2")], &ctx, 2).unwrap();
    for (k, level) in pres.levels().iter().enumerate() {
        for g in level {
            assert!(g.max_jet_order().unwrap_or(0) as usize <= k);
        }
    }
}

#[test]
fn special_fiber_agrees_with_reducing_inputs_first() {
    let ctx = DeltaContext::new(5).unwrap();
    let gens = [poly("7*x^2 - 12*y + 5"), poly("-3*x*y + 10")];
    let pres = jet_presentation(&gens, &ctx, 1).unwrap();
    let sf = special_fiber(&pres);
    let five = BigInt::from(5);
    let reduced: Vec<Polynomial> = gens.iter().map(|g| g.reduce_mod(&five)).collect();
    assert_eq!(sf.level(0), reduced.as_slice());
    assert_eq!(sf.reduce_again(), sf);
    assert_eq!(sf.num_variables(), pres.num_variables());
    assert_eq!(sf.num_generators(), pres.num_generators());
    for level in sf.levels() {
        for g in level {
            assert!(g.coefficients().all(|c| *c >= BigInt::from(0) && *c < five));
        }
    }
}

#[test]
fn json_is_deterministic_and_parseable() {
    let ctx = DeltaContext::new(3).unwrap();
    let gens = [poly("y - x^2")];
    let a = jet_presentation(&gens, &ctx, 2).unwrap().to_json();
    let b = jet_presentation(&gens, &ctx, 2).unwrap().to_json();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let levels = v["generators"].as_array().unwrap();
    assert_eq!(levels.len(), 3);
    for level in levels {
        for g in level.as_array().unwrap() {
            g.as_str().unwrap().parse::<Polynomial>().unwrap();
        }
    }
}

#[test]
fn from_parts_round_trip() {
    let ctx = DeltaContext::new(3).unwrap();
    let pres = jet_presentation(&[poly("x^3 - y")], &ctx, 1).unwrap();
    let rebuilt = JetPresentation::from_parts(3, pres.base_vars().to_vec(), pres.levels().to_vec()).unwrap();
    assert_eq!(rebuilt, pres);
}

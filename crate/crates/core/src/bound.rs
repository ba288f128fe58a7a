//! Explicit bounds on torsion points of subvarieties of abelian varieties.
//!
//! For `X ⊂ A` of dimension `d` in an abelian variety of dimension `n` the
//! count of (prime-to-p) torsion points on `X` is bounded by
//!
//! ```text
//! p^n · p^{2n} 3^n n! · Σ_{i=0}^{d} C(2d, d+i) · N_i
//! ```
//!
//! where `p^n` bounds the number of cosets, `p^{2n} 3^n n!` bounds the degree
//! of the translates, and `N_i` is the degree of
//! `(-1)^i s_i(F*Ω¹_{X_0}) · O(3Θ_0)^{d-i}` on the special fiber.
//! All arithmetic is exact.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::chow::{
    ci_cotangent_segre, evaluate, restrict_to_ci, AmbientSpec, CycleClass, IntersectionTable,
    THETA,
};
use crate::delta::validate_odd_prime;
use crate::error::{Error, Result};

/// `N_0, ..., N_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegreDegreeVector(Vec<BigInt>);

impl SegreDegreeVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        SegreDegreeVector(entries)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<T: Into<BigInt>> FromIterator<T> for SegreDegreeVector {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        SegreDegreeVector(iter.into_iter().map(Into::into).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    p: u64,
    n: u32,
    d: u32,
    segre_degrees: SegreDegreeVector,
    interior: BigInt,
    coset_constant: BigInt,
    translate_factor: BigInt,
    bound: BigInt,
    warnings: Vec<String>,
    assumptions: Vec<String>,
}

#[derive(Serialize)]
struct BoundReportJson<'a> {
    p: u64,
    n: u32,
    d: u32,
    interior: String,
    coset_constant: String,
    translate_factor: String,
    bound: String,
    warnings: &'a [String],
    assumptions: &'a [String],
}

impl BoundReport {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn segre_degrees(&self) -> &SegreDegreeVector {
        &self.segre_degrees
    }

    /// Degree of the projectivized bundle, `Σ C(2d, d+i) N_i`.
    pub fn interior(&self) -> &BigInt {
        &self.interior
    }

    /// `p^n`, the number of torsion cosets.
    pub fn coset_constant(&self) -> &BigInt {
        &self.coset_constant
    }

    /// `p^{2n} 3^n n!`.
    pub fn translate_factor(&self) -> &BigInt {
        &self.translate_factor
    }

    /// `p^{3n} 3^n n!`.
    pub fn envelope_factor(&self) -> BigInt {
        &self.coset_constant * &self.translate_factor
    }

    pub fn bound(&self) -> &BigInt {
        &self.bound
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn assumptions(&self) -> &[String] {
        &self.assumptions
    }

    /// Compact JSON; big integers are decimal strings.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&BoundReportJson {
            p: self.p,
            n: self.n,
            d: self.d,
            interior: self.interior.to_string(),
            coset_constant: self.coset_constant.to_string(),
            translate_factor: self.translate_factor.to_string(),
            bound: self.bound.to_string(),
            warnings: &self.warnings,
            assumptions: &self.assumptions,
        })
        .expect("report serializes")
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let segre: Vec<String> = self.segre_degrees.0.iter().map(ToString::to_string).collect();
        writeln!(f, "p = {}, n = {}, d = {}", self.p, self.n, self.d)?;
        writeln!(f, "segre degrees: [{}]", segre.join(", "))?;
        writeln!(f, "interior degree: {}", self.interior)?;
        writeln!(f, "coset constant: {}", self.coset_constant)?;
        writeln!(f, "translate factor: {}", self.translate_factor)?;
        write!(f, "bound: {}", self.bound)?;
        for w in &self.warnings {
            write!(f, "\nwarning: {w}")?;
        }
        for a in &self.assumptions {
            write!(f, "\nassumes: {a}")?;
        }
        Ok(())
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn binomial(n: u32, k: u32) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `Σ_{i=0}^{d} C(2d, d+i) · N_i`.
pub fn interior_degree(d: u32, segre: &SegreDegreeVector) -> Result<BigInt> {
    let expected = d as usize + 1;
    if segre.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            found: segre.len(),
        });
    }
    Ok(segre
        .0
        .iter()
        .enumerate()
        .map(|(i, ni)| binomial(2 * d, d + i as u32) * ni)
        .sum())
}

const GENERAL_ASSUMPTIONS: &[&str] = &[
    "X is smooth with ample cotangent bundle",
    "p is a sufficiently large prime of good reduction for X and A",
];

/// Assembles the full bound from the Segre degrees `N_0..N_d`.
pub fn theorem_b_bound(p: u64, n: u32, d: u32, segre: &SegreDegreeVector) -> Result<BoundReport> {
    validate_odd_prime(p)?;
    if n == 0 {
        return Err(Error::invalid_input("ambient dimension n must be at least 1"));
    }
    if d == 0 || d > n {
        return Err(Error::invalid_input(format!(
            "subvariety dimension d = {d} must satisfy 1 <= d <= n = {n}"
        )));
    }
    let interior = interior_degree(d, segre)?;
    let pb = BigInt::from(p);
    let coset_constant = pb.pow(n);
    let translate_factor = pb.pow(2 * n) * BigInt::from(3).pow(n) * factorial(n);
    let bound = &coset_constant * &translate_factor * &interior;

    let mut warnings = Vec::new();
    if interior.is_negative() {
        warnings.push(format!(
            "interior degree {interior} is negative; the Segre degrees cannot come from an ample cotangent bundle"
        ));
    }
    Ok(BoundReport {
        p,
        n,
        d,
        segre_degrees: segre.clone(),
        interior,
        coset_constant,
        translate_factor,
        bound,
        warnings,
        assumptions: GENERAL_ASSUMPTIONS.iter().map(|s| s.to_string()).collect(),
    })
}

/// A curve of genus `g ≥ 2` in its Jacobian: `N = (3g, p(2g-2))`, so the
/// interior degree is `6g + p(2g-2)`. Requires `p > 2g`.
pub fn buium_curve_bound(p: u64, g: u32) -> Result<BoundReport> {
    if g < 2 {
        return Err(Error::invalid_input(format!("genus must be at least 2, got {g}")));
    }
    validate_odd_prime(p)?;
    if p <= 2 * u64::from(g) {
        return Err(Error::HypothesisViolation(format!(
            "p = {p} must exceed 2·dim(X)^2·g = {} for a curve of genus {g}",
            2 * g
        )));
    }
    let pb = BigInt::from(p);
    let gb = BigInt::from(g);
    let segre = SegreDegreeVector(vec![
        BigInt::from(3) * &gb,
        &pb * (BigInt::from(2) * &gb - 2),
    ]);
    let mut report = theorem_b_bound(p, g, 1, &segre)?;
    let expected = BigInt::from(6) * &gb + &pb * (BigInt::from(2) * &gb - 2);
    if report.interior != expected {
        return Err(Error::Internal(format!(
            "curve interior degree {} differs from 6g + p(2g-2) = {expected}",
            report.interior
        )));
    }
    report.assumptions.push(format!(
        "X is a genus-{g} curve in its Jacobian with principal polarization (deg_theta X = {g})"
    ));
    Ok(report)
}

/// `X = H_1 ∩ ... ∩ H_c` inside an `n`-dimensional abelian variety.
///
/// `N_i = (-1)^i deg(s_i(F*Ω_X) · (3θ)^{d-i} · [X])` with the degrees read
/// from `table`. Fewer than `n/2` hypersurfaces only produce a warning since
/// genericity cannot be checked here.
pub fn complete_intersection_bound<S: AsRef<str>>(
    p: u64,
    ambient: &Arc<AmbientSpec>,
    hyps: &[S],
    table: &IntersectionTable,
) -> Result<BoundReport> {
    validate_odd_prime(p)?;
    if table.ambient() != ambient {
        return Err(Error::AmbientMismatch(
            "intersection table was built for a different ambient space".into(),
        ));
    }
    if ambient.index_of(THETA).is_none() {
        return Err(Error::invalid_input(format!(
            "the ambient symbols must include `{THETA}`"
        )));
    }
    let n = ambient.dim();
    let c = hyps.len() as u32;
    if c >= n {
        return Err(Error::invalid_input(format!(
            "{c} hypersurfaces in dimension {n} leave d = n - c < 1"
        )));
    }
    let d = n - c;

    let segre = ci_cotangent_segre(ambient, hyps, p)?;
    let three_theta = CycleClass::symbol(ambient, THETA)?.scale(&BigInt::from(3));
    let mut degrees = Vec::with_capacity(d as usize + 1);
    for i in 0..=d {
        let cls = segre.component(i).mul(&three_theta.pow(d - i))?;
        let deg = evaluate(&restrict_to_ci(&cls, hyps)?, table)?;
        degrees.push(if i % 2 == 0 { deg } else { -deg });
    }

    let mut report = theorem_b_bound(p, n, d, &SegreDegreeVector(degrees))?;
    if 2 * c <= n {
        report.warnings.push(format!(
            "c = {c} hypersurfaces do not exceed n/2 for n = {n}; ampleness of the cotangent bundle is not guaranteed"
        ));
    }
    report.assumptions.push(
        "the hypersurfaces are general, sufficiently ample and divisible".to_string(),
    );
    report
        .assumptions
        .push("the supplied intersection numbers are consistent".to_string());
    Ok(report)
}

impl BoundReport {
    /// True when `bound = p^n · translate_factor · interior` and the
    /// translate factor is `p^{2n} 3^n n!`.
    pub fn factorization_holds(&self) -> bool {
        let pb = BigInt::from(self.p);
        self.coset_constant == pb.pow(self.n)
            && self.translate_factor == pb.pow(2 * self.n) * BigInt::from(3).pow(self.n) * factorial(self.n)
            && self.bound == &self.coset_constant * &self.translate_factor * &self.interior
            && !self.coset_constant.is_zero()
    }
}

//! Formal Chow-ring calculus over divisor symbols.
//!
//! A [`CycleClass`] is an integer polynomial in named divisor classes
//! (`theta`, `h1`, ...) graded by codimension; anything above the ambient
//! dimension vanishes. A [`ChernSeries`] is a truncated total class
//! `1 + σ_1 + σ_2 + ...` with `σ_i` of pure codimension `i`; it stores Chern or
//! Segre classes as they are, and the total Segre class is the inverse of the
//! total Chern class.
//!
//! Intersection numbers are never computed from geometry. They come from an
//! [`IntersectionTable`] supplied by the caller, and a missing entry is an
//! error rather than an implicit zero.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::poly::{is_identifier, Polynomial};

/// Reserved symbol for the theta divisor.
pub const THETA: &str = "theta";

/// Dimension of the ambient abelian variety and the divisor symbols in use.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AmbientSpec {
    n: u32,
    symbols: Vec<String>,
}

impl AmbientSpec {
    pub fn new<S: AsRef<str>>(n: u32, symbols: &[S]) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::invalid_input("ambient dimension must be at least 1"));
        }
        let symbols: Vec<String> = symbols.iter().map(|s| s.as_ref().to_owned()).collect();
        for (i, s) in symbols.iter().enumerate() {
            if !is_identifier(s) {
                return Err(Error::invalid_input(format!("`{s}` is not a valid symbol name")));
            }
            if symbols[..i].contains(s) {
                return Err(Error::invalid_input(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Arc::new(AmbientSpec { n, symbols }))
    }

    /// `theta, h1, ..., hc`.
    pub fn with_hypersurfaces(n: u32, c: u32) -> Result<Arc<Self>> {
        let mut symbols = vec![THETA.to_owned()];
        symbols.extend((1..=c).map(|j| format!("h{j}")));
        AmbientSpec::new(n, &symbols)
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    fn require(&self, symbol: &str) -> Result<usize> {
        self.index_of(symbol).ok_or_else(|| {
            Error::AmbientMismatch(format!(
                "symbol `{symbol}` is not one of [{}]",
                self.symbols.join(", ")
            ))
        })
    }
}

fn same_ambient(a: &Arc<AmbientSpec>, b: &Arc<AmbientSpec>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::AmbientMismatch(format!(
            "dimension {} with [{}] vs dimension {} with [{}]",
            a.n,
            a.symbols.join(", "),
            b.n,
            b.symbols.join(", ")
        )))
    }
}

type DivExps = Vec<u32>;

fn codim(e: &DivExps) -> u32 {
    e.iter().sum()
}

/// Codimension-graded element of the formal Chow ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleClass {
    ambient: Arc<AmbientSpec>,
    // exponent vectors indexed like `ambient.symbols`
    terms: BTreeMap<DivExps, BigInt>,
}

impl CycleClass {
    pub fn zero(ambient: &Arc<AmbientSpec>) -> Self {
        CycleClass {
            ambient: Arc::clone(ambient),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: &Arc<AmbientSpec>) -> Self {
        CycleClass::constant(ambient, BigInt::one())
    }

    pub fn constant(ambient: &Arc<AmbientSpec>, c: impl Into<BigInt>) -> Self {
        let mut cls = CycleClass::zero(ambient);
        cls.insert(vec![0; ambient.symbols.len()], c.into());
        cls
    }

    pub fn symbol(ambient: &Arc<AmbientSpec>, name: &str) -> Result<Self> {
        let i = ambient.require(name)?;
        let mut e = vec![0; ambient.symbols.len()];
        e[i] = 1;
        let mut cls = CycleClass::zero(ambient);
        cls.insert(e, BigInt::one());
        Ok(cls)
    }

    /// Reads a class from polynomial syntax, e.g. `2*theta*h1 - h1^2`.
    pub fn parse(ambient: &Arc<AmbientSpec>, text: &str) -> Result<Self> {
        CycleClass::from_polynomial(ambient, &Polynomial::parse(text)?)
    }

    pub fn from_polynomial(ambient: &Arc<AmbientSpec>, f: &Polynomial) -> Result<Self> {
        let mut cls = CycleClass::zero(ambient);
        for (m, c) in f.terms() {
            let mut e = vec![0; ambient.symbols.len()];
            for (v, k) in m.factors() {
                if v.order() != 0 {
                    return Err(Error::invalid_input(format!(
                        "`{v}` is not a divisor symbol"
                    )));
                }
                e[ambient.require(v.name())?] += k;
            }
            cls.insert(e, c.clone());
        }
        Ok(cls)
    }

    fn insert(&mut self, e: DivExps, c: BigInt) {
        if c.is_zero() || codim(&e) > self.ambient.n {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ambient(&self) -> &Arc<AmbientSpec> {
        &self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The codimension shared by every term; `None` for zero or mixed classes.
    pub fn pure_codim(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(codim);
        let first = it.next()?;
        it.all(|c| c == first).then_some(first)
    }

    pub fn max_codim(&self) -> Option<u32> {
        self.terms.keys().map(codim).max()
    }

    /// Codimension-`i` part.
    pub fn component(&self, i: u32) -> CycleClass {
        CycleClass {
            ambient: Arc::clone(&self.ambient),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| codim(e) == i)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, rhs: &CycleClass) -> Result<CycleClass> {
        same_ambient(&self.ambient, &rhs.ambient)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &CycleClass) -> Result<CycleClass> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> CycleClass {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> CycleClass {
        if k.is_zero() {
            return CycleClass::zero(&self.ambient);
        }
        CycleClass {
            ambient: Arc::clone(&self.ambient),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Intersection product; terms above the ambient dimension vanish.
    pub fn mul(&self, rhs: &CycleClass) -> Result<CycleClass> {
        same_ambient(&self.ambient, &rhs.ambient)?;
        let mut out = CycleClass::zero(&self.ambient);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: DivExps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> CycleClass {
        let mut acc = CycleClass::one(&self.ambient);
        for _ in 0..k {
            acc = acc.mul(self).expect("same ambient");
        }
        acc
    }

    /// Terms as (canonical monomial key, coefficient), highest first.
    pub fn terms(&self) -> impl Iterator<Item = (String, &BigInt)> + '_ {
        self.terms
            .iter()
            .rev()
            .map(move |(e, c)| (monomial_key(&self.ambient, e), c))
    }
}

fn monomial_key(ambient: &AmbientSpec, e: &DivExps) -> String {
    let parts: Vec<String> = ambient
        .symbols
        .iter()
        .zip(e)
        .filter(|(_, k)| **k > 0)
        .map(|(s, k)| if *k == 1 { s.clone() } else { format!("{s}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".to_owned()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for CycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let abs = c.abs();
            let constant = codim(e) == 0;
            match (constant, abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{}", monomial_key(&self.ambient, e))?,
                (false, false) => write!(f, "{abs}*{}", monomial_key(&self.ambient, e))?,
            }
        }
        Ok(())
    }
}

/// Truncated total characteristic class `σ_0 + σ_1 + ... + σ_N`, `σ_0 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernSeries {
    ambient: Arc<AmbientSpec>,
    components: Vec<CycleClass>,
}

impl ChernSeries {
    /// `components[i]` must be zero or of pure codimension `i`, and
    /// `components[0]` must be the fundamental class.
    pub fn new(ambient: &Arc<AmbientSpec>, components: Vec<CycleClass>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidSeries("a series needs a degree-0 term".into()));
        }
        for (i, c) in components.iter().enumerate() {
            same_ambient(ambient, &c.ambient)?;
            if !c.is_zero() && c.pure_codim() != Some(i as u32) {
                return Err(Error::InvalidSeries(format!(
                    "component {i} is not of pure codimension {i}: {c}"
                )));
            }
        }
        if components[0] != CycleClass::one(ambient) {
            return Err(Error::InvalidSeries(format!(
                "degree-0 term must be 1, found {}",
                components[0]
            )));
        }
        Ok(ChernSeries {
            ambient: Arc::clone(ambient),
            components,
        })
    }

    pub fn one(ambient: &Arc<AmbientSpec>, truncation: u32) -> Self {
        let mut components = vec![CycleClass::zero(ambient); truncation as usize + 1];
        components[0] = CycleClass::one(ambient);
        ChernSeries {
            ambient: Arc::clone(ambient),
            components,
        }
    }

    /// Splits a (possibly inhomogeneous) class into graded pieces up to `truncation`.
    pub fn from_class(total: &CycleClass, truncation: u32) -> Result<Self> {
        let components = (0..=truncation).map(|i| total.component(i)).collect();
        ChernSeries::new(&total.ambient, components)
    }

    pub fn ambient(&self) -> &Arc<AmbientSpec> {
        &self.ambient
    }

    pub fn truncation(&self) -> u32 {
        (self.components.len() - 1) as u32
    }

    pub fn component(&self, i: u32) -> &CycleClass {
        &self.components[i as usize]
    }

    pub fn components(&self) -> &[CycleClass] {
        &self.components
    }

    pub fn total(&self) -> CycleClass {
        let mut acc = CycleClass::zero(&self.ambient);
        for c in &self.components {
            acc = acc.add(c).expect("same ambient");
        }
        acc
    }

    fn compatible(&self, other: &ChernSeries) -> Result<()> {
        same_ambient(&self.ambient, &other.ambient)?;
        if self.components.len() != other.components.len() {
            return Err(Error::AmbientMismatch(format!(
                "truncation {} vs {}",
                self.truncation(),
                other.truncation()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for ChernSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let total = self.total();
        write!(f, "{total}")
    }
}

/// Inverse of a total class up to its truncation:
/// `t_0 = 1`, `t_i = -Σ_{j=1..i} s_j t_{i-j}`.
pub fn invert_series(s: &ChernSeries) -> Result<ChernSeries> {
    if s.components[0] != CycleClass::one(&s.ambient) {
        return Err(Error::InvalidSeries("degree-0 term must be 1".into()));
    }
    let n = s.components.len();
    let mut t: Vec<CycleClass> = Vec::with_capacity(n);
    t.push(CycleClass::one(&s.ambient));
    for i in 1..n {
        let mut acc = CycleClass::zero(&s.ambient);
        for j in 1..=i {
            acc = acc.add(&s.components[j].mul(&t[i - j])?)?;
        }
        t.push(acc.neg());
    }
    Ok(ChernSeries {
        ambient: Arc::clone(&s.ambient),
        components: t,
    })
}

/// Graded product of two total classes, truncated.
pub fn whitney_product(a: &ChernSeries, b: &ChernSeries) -> Result<ChernSeries> {
    a.compatible(b)?;
    let n = a.components.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = CycleClass::zero(&a.ambient);
        for j in 0..=i {
            acc = acc.add(&a.components[j].mul(&b.components[i - j])?)?;
        }
        out.push(acc);
    }
    Ok(ChernSeries {
        ambient: Arc::clone(&a.ambient),
        components: out,
    })
}

/// Pullback along the relative Frobenius: `σ_i ↦ p^i σ_i`.
///
/// Frobenius pulls divisor classes back to `p` times themselves, so each
/// Chern root scales by `p` and a degree-`i` class by `p^i`.
pub fn frobenius_pullback(s: &ChernSeries, p: u64) -> ChernSeries {
    let p = BigInt::from(p);
    let mut scale = BigInt::one();
    let mut components = Vec::with_capacity(s.components.len());
    for c in &s.components {
        components.push(c.scale(&scale));
        scale *= &p;
    }
    ChernSeries {
        ambient: Arc::clone(&s.ambient),
        components,
    }
}

/// Total Segre class of the Frobenius-pulled-back cotangent bundle of a
/// complete intersection `X = H_1 ∩ ... ∩ H_c` in an abelian variety.
///
/// The conormal sequence with trivial ambient cotangent bundle gives
/// `s(Ω_X) = ∏_j (1 - h_j)`; after pullback this is `∏_j (1 - p h_j)`, whose
/// degree-`i` part is `(-p)^i e_i(h)`. Truncated at `d = n - c`.
pub fn ci_cotangent_segre<S: AsRef<str>>(
    ambient: &Arc<AmbientSpec>,
    hyps: &[S],
    p: u64,
) -> Result<ChernSeries> {
    let c = hyps.len() as u32;
    if c > ambient.n {
        return Err(Error::invalid_input(format!(
            "{c} hypersurfaces exceed the ambient dimension {}",
            ambient.n
        )));
    }
    let idx: Vec<usize> = hyps
        .iter()
        .map(|h| ambient.require(h.as_ref()))
        .collect::<Result<_>>()?;
    let d = ambient.n - c;
    let minus_p = -BigInt::from(p);
    let width = ambient.symbols.len();

    let mut components = Vec::with_capacity(d as usize + 1);
    for i in 0..=d as usize {
        let mut comp = CycleClass::zero(ambient);
        let coeff = minus_p.pow(i as u32);
        for subset in subsets(idx.len(), i) {
            let mut e = vec![0u32; width];
            for pos in subset {
                e[idx[pos]] += 1;
            }
            comp.insert(e, coeff.clone());
        }
        components.push(comp);
    }
    Ok(ChernSeries {
        ambient: Arc::clone(ambient),
        components,
    })
}

// All k-element subsets of 0..n in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Top-codimension intersection numbers supplied by the user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionTable {
    ambient: Arc<AmbientSpec>,
    numbers: BTreeMap<DivExps, BigInt>,
}

impl IntersectionTable {
    pub fn new(ambient: &Arc<AmbientSpec>) -> Self {
        IntersectionTable {
            ambient: Arc::clone(ambient),
            numbers: BTreeMap::new(),
        }
    }

    pub fn ambient(&self) -> &Arc<AmbientSpec> {
        &self.ambient
    }

    pub fn len(&self) -> usize {
        self.numbers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numbers.is_empty()
    }

    /// Adds (or replaces) the number for a monomial key such as `theta*h1*h2`.
    pub fn insert(&mut self, key: &str, value: impl Into<BigInt>) -> Result<()> {
        let e = self.parse_key(key)?;
        self.numbers.insert(e, value.into());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Result<Option<&BigInt>> {
        let e = self.parse_key(key)?;
        Ok(self.numbers.get(&e))
    }

    fn parse_key(&self, key: &str) -> Result<DivExps> {
        let cls = CycleClass::parse(&self.ambient, key)
            .map_err(|e| Error::invalid_input(format!("intersection key `{key}`: {e}")))?;
        let mut terms = cls.terms.into_iter();
        match (terms.next(), terms.next()) {
            (Some((e, c)), None) if c.is_one() => {
                if codim(&e) != self.ambient.n {
                    return Err(Error::invalid_input(format!(
                        "intersection key `{key}` has codimension {}, expected {}",
                        codim(&e),
                        self.ambient.n
                    )));
                }
                Ok(e)
            }
            _ => Err(Error::invalid_input(format!(
                "intersection key `{key}` must be a single monomial of codimension {}",
                self.ambient.n
            ))),
        }
    }

    /// Parses `{"n": .., "symbols": [..], "numbers": {"theta^3": 6, ..}}`.
    /// Values may be JSON integers or decimal strings.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::invalid_input(format!("intersection table JSON: {e}")))?;
        IntersectionTable::from_json_value(&v)
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .and_then(|n| u32::try_from(n).ok())
            .ok_or_else(|| Error::invalid_input("`n` must be a positive integer"))?;
        let symbols: Vec<String> = v
            .get("symbols")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::invalid_input("`symbols` must be an array of strings"))?
            .iter()
            .map(|s| {
                s.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| Error::invalid_input("`symbols` must be an array of strings"))
            })
            .collect::<Result<_>>()?;
        let ambient = AmbientSpec::new(n, &symbols)?;
        let numbers = v
            .get("numbers")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::invalid_input("`numbers` must be an object"))?;
        let mut table = IntersectionTable::new(&ambient);
        for (key, val) in numbers {
            table.insert(key, json_integer(val, key)?)?;
        }
        Ok(table)
    }

    pub fn to_json(&self) -> String {
        let numbers: serde_json::Map<String, Value> = self
            .numbers
            .iter()
            .rev()
            .map(|(e, c)| {
                let v = match i64::try_from(c) {
                    Ok(small) => Value::from(small),
                    Err(_) => Value::from(c.to_string()),
                };
                (monomial_key(&self.ambient, e), v)
            })
            .collect();
        serde_json::json!({
            "n": self.ambient.n,
            "symbols": self.ambient.symbols,
            "numbers": numbers,
        })
        .to_string()
    }
}

pub(crate) fn json_integer(v: &Value, what: &str) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    if let Some(u) = v.as_u64() {
        return Ok(BigInt::from(u));
    }
    if let Some(s) = v.as_str() {
        if let Ok(b) = s.trim().parse::<BigInt>() {
            return Ok(b);
        }
    }
    Err(Error::invalid_input(format!(
        "value for `{what}` must be an integer or a decimal string"
    )))
}

/// Degree of a top-codimension class, by linear extension of the table.
pub fn evaluate(cls: &CycleClass, table: &IntersectionTable) -> Result<BigInt> {
    same_ambient(&cls.ambient, &table.ambient)?;
    let n = cls.ambient.n;
    let mut total = BigInt::zero();
    for (e, c) in &cls.terms {
        if codim(e) != n {
            return Err(Error::invalid_input(format!(
                "cannot take the degree of `{}`: codimension {} is not {n}",
                monomial_key(&cls.ambient, e),
                codim(e)
            )));
        }
        let value = table
            .numbers
            .get(e)
            .ok_or_else(|| Error::MissingIntersectionNumber(monomial_key(&cls.ambient, e)))?;
        total += c * value;
    }
    Ok(total)
}

/// Pushes a class on `X = H_1 ∩ ... ∩ H_c` forward to the ambient ring by
/// multiplying with `[X] = ∏ h_j`.
pub fn restrict_to_ci<S: AsRef<str>>(cls: &CycleClass, hyps: &[S]) -> Result<CycleClass> {
    let mut fundamental = CycleClass::one(&cls.ambient);
    for h in hyps {
        fundamental = fundamental.mul(&CycleClass::symbol(&cls.ambient, h.as_ref())?)?;
    }
    if let Some(k) = cls.max_codim() {
        if k + hyps.len() as u32 > cls.ambient.n {
            return Err(Error::invalid_input(format!(
                "codimension {k} plus {} hypersurfaces exceeds dimension {}",
                hyps.len(),
                cls.ambient.n
            )));
        }
    }
    cls.mul(&fundamental)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb(n: u32, syms: &[&str]) -> Arc<AmbientSpec> {
        AmbientSpec::new(n, syms).unwrap()
    }

    fn cls(a: &Arc<AmbientSpec>, s: &str) -> CycleClass {
        CycleClass::parse(a, s).unwrap()
    }

    #[test]
    fn ambient_validation() {
        assert!(AmbientSpec::new(0, &["theta"]).is_err());
        assert!(AmbientSpec::new(2, &["theta", "theta"]).is_err());
        assert!(AmbientSpec::new(2, &["h_1"]).is_err());
        let a = AmbientSpec::with_hypersurfaces(3, 2).unwrap();
        assert_eq!(a.symbols(), ["theta", "h1", "h2"]);
    }

    #[test]
    fn products_vanish_above_dimension() {
        let a = amb(2, &["l"]);
        let l = cls(&a, "l");
        assert!(l.pow(3).is_zero());
        assert_eq!(l.pow(2), cls(&a, "l^2"));
    }

    #[test]
    fn geometric_series_inverse() {
        let a = amb(3, &["l"]);
        let s = ChernSeries::from_class(&cls(&a, "1 + l"), 3).unwrap();
        let t = invert_series(&s).unwrap();
        assert_eq!(t.total(), cls(&a, "1 - l + l^2 - l^3"));
        let one = ChernSeries::one(&a, 3);
        assert_eq!(invert_series(&one).unwrap(), one);
    }

    #[test]
    fn series_construction_rejects_bad_input() {
        let a = amb(3, &["l"]);
        assert!(matches!(
            ChernSeries::from_class(&cls(&a, "2 + l"), 2),
            Err(Error::InvalidSeries(_))
        ));
        assert!(matches!(
            ChernSeries::new(&a, vec![CycleClass::one(&a), cls(&a, "l^2")]),
            Err(Error::InvalidSeries(_))
        ));
    }

    #[test]
    fn whitney_examples() {
        let a = amb(3, &["a", "b"]);
        let sa = ChernSeries::from_class(&cls(&a, "1 + a"), 3).unwrap();
        let sb = ChernSeries::from_class(&cls(&a, "1 + b"), 3).unwrap();
        let prod = whitney_product(&sa, &sb).unwrap();
        assert_eq!(prod.total(), cls(&a, "1 + a + b + a*b"));
        let trivial = ChernSeries::one(&a, 3);
        assert_eq!(whitney_product(&trivial, &sa).unwrap(), sa);

        let other = amb(3, &["a"]);
        let so = ChernSeries::from_class(&cls(&other, "1 + a"), 3).unwrap();
        assert!(matches!(whitney_product(&sa, &so), Err(Error::AmbientMismatch(_))));
        let short = ChernSeries::from_class(&cls(&a, "1 + a"), 2).unwrap();
        assert!(matches!(whitney_product(&sa, &short), Err(Error::AmbientMismatch(_))));
    }

    #[test]
    fn frobenius_curve_canonical_degree() {
        // degree-1 component 2g - 2 on a curve scales to p(2g - 2)
        let a = amb(1, &["pt"]);
        let g = 3;
        let s = ChernSeries::from_class(&cls(&a, &format!("1 + {}*pt", 2 * g - 2)), 1).unwrap();
        let f = frobenius_pullback(&s, 7);
        assert_eq!(f.component(1), &cls(&a, &format!("{}*pt", 7 * (2 * g - 2))));
        assert_eq!(frobenius_pullback(&ChernSeries::one(&a, 1), 7), ChernSeries::one(&a, 1));
    }

    #[test]
    fn ci_segre_components() {
        let a = AmbientSpec::with_hypersurfaces(2, 1).unwrap();
        let s = ci_cotangent_segre(&a, &["h1"], 5).unwrap();
        assert_eq!(s.truncation(), 1);
        assert_eq!(s.component(1), &cls(&a, "-5*h1"));

        let a = AmbientSpec::with_hypersurfaces(3, 2).unwrap();
        let s = ci_cotangent_segre(&a, &["h1", "h2"], 3).unwrap();
        assert_eq!(s.component(1), &cls(&a, "-3*h1 - 3*h2"));

        let a = AmbientSpec::with_hypersurfaces(2, 3).unwrap();
        assert!(ci_cotangent_segre(&a, &["h1", "h2", "h3"], 3).is_err());
        assert!(matches!(
            ci_cotangent_segre(&a, &["h9"], 3),
            Err(Error::AmbientMismatch(_))
        ));
    }

    #[test]
    fn evaluation() {
        let a = amb(3, &["theta", "h1", "h2"]);
        let mut t = IntersectionTable::new(&a);
        t.insert("theta^3", 6).unwrap();
        assert_eq!(evaluate(&cls(&a, "theta^3"), &t).unwrap(), BigInt::from(6));

        t.insert("theta*h1*h2", 11).unwrap();
        t.insert("h1^2*h2", 4).unwrap();
        let c = cls(&a, "2*theta*h1*h2 + h1^2*h2");
        assert_eq!(evaluate(&c, &t).unwrap(), BigInt::from(26));

        match evaluate(&cls(&a, "h2^3"), &t) {
            Err(Error::MissingIntersectionNumber(k)) => assert_eq!(k, "h2^3"),
            other => panic!("{other:?}"),
        }
        assert!(evaluate(&cls(&a, "theta"), &t).is_err());
        assert_eq!(evaluate(&CycleClass::zero(&a), &t).unwrap(), BigInt::zero());
    }

    #[test]
    fn table_keys_are_order_insensitive() {
        let a = amb(3, &["theta", "h1", "h2"]);
        let mut t = IntersectionTable::new(&a);
        t.insert("h2*h1*theta", 12).unwrap();
        assert_eq!(t.get("theta*h1*h2").unwrap(), Some(&BigInt::from(12)));
        assert!(t.insert("theta^2", 1).is_err());
        assert!(t.insert("2*theta^3", 1).is_err());
        assert!(t.insert("theta^3 + h1^3", 1).is_err());
    }

    #[test]
    fn table_json_round_trip() {
        let text = r#"{"n":3,"symbols":["theta","h1","h2"],"numbers":{"theta^3":6,"theta*h1*h2":"12"}}"#;
        let t = IntersectionTable::from_json(text).unwrap();
        assert_eq!(t.len(), 2);
        let again = IntersectionTable::from_json(&t.to_json()).unwrap();
        assert_eq!(t, again);
        assert!(IntersectionTable::from_json(r#"{"n":3,"symbols":["theta"]}"#).is_err());
        assert!(IntersectionTable::from_json(
            r#"{"n":1,"symbols":["theta"],"numbers":{"theta":1.5}}"#
        )
        .is_err());
    }

    #[test]
    fn restriction() {
        let a = amb(3, &["theta", "h1", "h2"]);
        assert_eq!(restrict_to_ci(&CycleClass::one(&a), &["h1"]).unwrap(), cls(&a, "h1"));
        assert_eq!(
            restrict_to_ci(&cls(&a, "theta"), &["h1", "h2"]).unwrap(),
            cls(&a, "theta*h1*h2")
        );
        assert!(restrict_to_ci(&cls(&a, "theta^2"), &["h1", "h2"]).is_err());
        assert!(matches!(
            restrict_to_ci(&cls(&a, "theta"), &["h7"]),
            Err(Error::AmbientMismatch(_))
        ));
    }

    #[test]
    fn display() {
        let a = amb(3, &["theta", "h1", "h2"]);
        assert_eq!(cls(&a, "h1*h2 - 3*theta^2 + 2").to_string(), "-3*theta^2 + h1*h2 + 2");
        assert_eq!(CycleClass::zero(&a).to_string(), "0");
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }
}

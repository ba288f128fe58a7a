//! Sparse multivariate polynomials over the integers.
//!
//! Coefficients are arbitrary-precision. Variables carry a base name and a
//! jet order (`x@0` is `x`, `x@1` its first arithmetic jet coordinate, ...).
//!
//! Every `Polynomial` is kept in canonical form: no zero coefficients, the
//! variable set is exactly the set of variables that occur, and terms are
//! stored in descending monomial order. Structural equality is therefore
//! mathematical equality.
//!
//! The monomial order is lexicographic with variables ranked by jet order
//! (higher orders dominate) and then by base name. Inside a printed monomial
//! the factors appear in `(name, order)` order, so `x^2*x@1` rather than
//! `x@1*x^2`.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use parse::parse_polynomial;

/// Default cap on the number of terms any single intermediate result may hold.
pub const DEFAULT_TERM_LIMIT: usize = 1_000_000;

pub(crate) type Exps = SmallVec<[u32; 12]>;

type TermMap<V> = FxHashMap<Exps, V>;

// Coefficient accumulator that stays in machine integers until it overflows.
enum Acc {
    Small(i128),
    Big(BigInt),
}

impl Acc {
    fn add_small(&mut self, v: i128) {
        match self {
            Acc::Small(a) => match a.checked_add(v) {
                Some(s) => *a = s,
                None => *self = Acc::Big(BigInt::from(*a) + v),
            },
            Acc::Big(b) => *b += v,
        }
    }

    fn add_big(&mut self, v: BigInt) {
        match self {
            Acc::Small(a) => *self = Acc::Big(v + *a),
            Acc::Big(b) => *b += v,
        }
    }

    fn into_bigint(self) -> BigInt {
        match self {
            Acc::Small(a) => BigInt::from(a),
            Acc::Big(b) => b,
        }
    }
}

/// A polynomial variable: base name plus jet order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    name: String,
    order: u32,
}

impl Variable {
    pub fn new(name: &str, order: u32) -> Result<Self> {
        if !is_identifier(name) {
            return Err(Error::invalid_input(format!(
                "`{name}` is not a valid variable name (expected [a-zA-Z][a-zA-Z0-9]*)"
            )));
        }
        Ok(Variable {
            name: name.to_owned(),
            order,
        })
    }

    /// Variable of jet order 0.
    pub fn base(name: &str) -> Result<Self> {
        Variable::new(name, 0)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Same base name, jet order shifted up by one.
    pub fn next_order(&self) -> Variable {
        Variable {
            name: self.name.clone(),
            order: self.order + 1,
        }
    }

    // Rank used by the monomial order: higher jet order first, then name.
    fn significance_cmp(&self, other: &Variable) -> Ordering {
        other
            .order
            .cmp(&self.order)
            .then_with(|| self.name.cmp(&other.name))
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 0 {
            f.write_str(&self.name)
        } else {
            write!(f, "{}@{}", self.name, self.order)
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

/// A monomial as an explicit product of variable powers.
///
/// Factors are sorted by variable and never carry a zero exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(factors: impl IntoIterator<Item = (Variable, u32)>) -> Self {
        let mut acc: BTreeMap<Variable, u32> = BTreeMap::new();
        for (v, e) in factors {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|(_, e)| u64::from(*e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact multivariate polynomial with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    // most significant first
    vars: Vec<Variable>,
    // strictly decreasing exponent vectors, nonzero coefficients
    terms: Vec<(Exps, BigInt)>,
}

impl Default for Polynomial {
    fn default() -> Self {
        Polynomial::zero()
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            vars: Vec::new(),
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Polynomial::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            vars: Vec::new(),
            terms: vec![(Exps::new(), c)],
        }
    }

    pub fn variable(v: Variable) -> Self {
        Polynomial {
            vars: vec![v],
            terms: vec![(Exps::from_slice(&[1]), BigInt::one())],
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let terms: Vec<(Monomial, BigInt)> = terms.into_iter().collect();
        let mut vars: Vec<Variable> = terms
            .iter()
            .flat_map(|(m, _)| m.0.iter().map(|(v, _)| v.clone()))
            .collect();
        vars.sort_by(Variable::significance_cmp);
        vars.dedup();
        let index: FxHashMap<&Variable, usize> =
            vars.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut acc: TermMap<BigInt> = TermMap::default();
        for (m, c) in &terms {
            let mut exps: Exps = SmallVec::from_elem(0, vars.len());
            for (v, e) in &m.0 {
                exps[index[v]] += e;
            }
            *acc.entry(exps).or_insert_with(BigInt::zero) += c;
        }
        Polynomial::canonical(vars.clone(), acc)
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_polynomial(text)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Variables that occur, most significant first.
    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    /// Highest jet order among the occurring variables; `None` for constants.
    pub fn max_jet_order(&self) -> Option<u32> {
        self.vars.first().map(|v| v.order)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().map(|&x| u64::from(x)).sum::<u64>())
            .max()
            .unwrap_or(0)
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(e, c)] if e.is_empty() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &BigInt> {
        self.terms.iter().map(|(_, c)| c)
    }

    /// Terms in canonical (descending) order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &BigInt)> + '_ {
        self.terms.iter().map(move |(e, c)| (self.monomial_of(e), c))
    }

    fn monomial_of(&self, exps: &Exps) -> Monomial {
        Monomial::new(
            self.vars
                .iter()
                .zip(exps.iter())
                .filter(|(_, e)| **e > 0)
                .map(|(v, e)| (v.clone(), *e)),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * k))
                .collect(),
        }
    }

    /// Exact division of every coefficient by `m`.
    pub fn divide_exact(&self, m: &BigInt) -> Result<Polynomial> {
        if m.is_zero() {
            return Err(Error::invalid_input("division by zero"));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(m);
            if !r.is_zero() {
                return Err(Error::NotDivisible {
                    monomial: self.monomial_of(e).to_string(),
                    coefficient: c.to_string(),
                    divisor: m.to_string(),
                });
            }
            terms.push((e.clone(), q));
        }
        Ok(Polynomial {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Reduce every coefficient into `[0, m)` and drop the terms that vanish.
    pub fn reduce_mod(&self, m: &BigInt) -> Polynomial {
        let m = m.abs();
        let acc: TermMap<BigInt> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.mod_floor(&m)))
            .collect();
        Polynomial::canonical(self.vars.clone(), acc)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        self.checked_pow(e, usize::MAX)
            .expect("unbounded pow cannot hit a term limit")
    }

    /// `self^e`, failing once any intermediate product exceeds `limit` terms.
    pub fn checked_pow(&self, e: u32, limit: usize) -> Result<Polynomial> {
        if e == 0 {
            return Ok(Polynomial::one());
        }
        if self.terms.len() == 1 {
            let (exps, c) = &self.terms[0];
            return Ok(Polynomial {
                vars: self.vars.clone(),
                terms: vec![(exps.iter().map(|x| x * e).collect(), c.pow(e))],
            });
        }
        // Sparse operands grow slowly under repeated multiplication by the
        // base; squaring would multiply two large intermediates instead.
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.checked_mul(self, limit)?;
        }
        Ok(acc)
    }

    pub fn checked_mul(&self, rhs: &Polynomial, limit: usize) -> Result<Polynomial> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(Polynomial::zero());
        }
        let (vars, ma, mb) = merge_vars(&self.vars, &rhs.vars);
        let a: Vec<Exps> = self
            .terms
            .iter()
            .map(|(e, _)| embed(e, &ma, vars.len()))
            .collect();
        let b: Vec<Exps> = rhs
            .terms
            .iter()
            .map(|(e, _)| embed(e, &mb, vars.len()))
            .collect();
        let small_a: Vec<Option<i64>> = self.terms.iter().map(|(_, c)| c.to_i64()).collect();
        let small_b: Vec<Option<i64>> = rhs.terms.iter().map(|(_, c)| c.to_i64()).collect();
        let mut acc: TermMap<Acc> = TermMap::default();
        acc.reserve((a.len() * b.len()).min(limit).min(1 << 16));
        for (i, ea) in a.iter().enumerate() {
            for (j, eb) in b.iter().enumerate() {
                let key: Exps = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let fresh = !acc.contains_key(&key);
                let slot = acc.entry(key).or_insert(Acc::Small(0));
                match (small_a[i], small_b[j]) {
                    (Some(x), Some(y)) => slot.add_small(i128::from(x) * i128::from(y)),
                    _ => slot.add_big(&self.terms[i].1 * &rhs.terms[j].1),
                }
                if fresh && acc.len() > limit {
                    return Err(Error::ResourceLimit {
                        terms: acc.len(),
                        limit,
                    });
                }
            }
        }
        let acc: TermMap<BigInt> = acc.into_iter().map(|(k, v)| (k, v.into_bigint())).collect();
        Ok(Polynomial::canonical(vars, acc))
    }

    pub fn substitute(&self, map: &BTreeMap<Variable, Polynomial>) -> Polynomial {
        self.checked_substitute(map, usize::MAX)
            .expect("unbounded substitution cannot hit a term limit")
    }

    /// Simultaneous substitution; variables absent from `map` are kept.
    pub fn checked_substitute(
        &self,
        map: &BTreeMap<Variable, Polynomial>,
        limit: usize,
    ) -> Result<Polynomial> {
        let images: Vec<Polynomial> = self
            .vars
            .iter()
            .map(|v| {
                map.get(v)
                    .cloned()
                    .unwrap_or_else(|| Polynomial::variable(v.clone()))
            })
            .collect();
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|p| vec![Polynomial::one(), p.clone()]).collect();

        let mut out_vars: Vec<Variable> = images
            .iter()
            .flat_map(|p| p.vars.iter().cloned())
            .collect();
        out_vars.sort_by(Variable::significance_cmp);
        out_vars.dedup();

        let mut acc: TermMap<BigInt> = TermMap::default();
        for (exps, c) in &self.terms {
            let mut prod = Polynomial::constant(c.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i]
                        .last()
                        .expect("power table starts non-empty")
                        .checked_mul(&images[i], limit)?;
                    powers[i].push(next);
                }
                prod = prod.checked_mul(&powers[i][e], limit)?;
            }
            let (_, map_p, _) = merge_vars(&prod.vars, &out_vars);
            for (pe, pc) in prod.terms {
                let key = embed(&pe, &map_p, out_vars.len());
                *acc.entry(key).or_insert_with(BigInt::zero) += pc;
            }
            if acc.len() > limit {
                return Err(Error::ResourceLimit {
                    terms: acc.len(),
                    limit,
                });
            }
        }
        Ok(Polynomial::canonical(out_vars, acc))
    }

    // Builds the canonical form from an exponent map aligned with `vars`
    // (which must already be in significance order).
    fn canonical(vars: Vec<Variable>, acc: TermMap<BigInt>) -> Polynomial {
        let mut terms: Vec<(Exps, BigInt)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let used: Vec<bool> = (0..vars.len())
            .map(|i| terms.iter().any(|(e, _)| e[i] > 0))
            .collect();
        let vars = if used.iter().all(|&u| u) {
            vars
        } else {
            for (e, _) in terms.iter_mut() {
                *e = e
                    .iter()
                    .zip(&used)
                    .filter(|(_, u)| **u)
                    .map(|(x, _)| *x)
                    .collect();
            }
            vars.into_iter()
                .zip(&used)
                .filter(|(_, u)| **u)
                .map(|(v, _)| v)
                .collect()
        };
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { vars, terms }
    }

    fn add_impl(&self, rhs: &Polynomial, negate_rhs: bool) -> Polynomial {
        let (vars, ma, mb) = merge_vars(&self.vars, &rhs.vars);
        let n = vars.len();
        let mut acc: TermMap<BigInt> = TermMap::default();
        acc.reserve(self.terms.len() + rhs.terms.len());
        for (e, c) in &self.terms {
            acc.insert(embed(e, &ma, n), c.clone());
        }
        for (e, c) in &rhs.terms {
            let slot = acc.entry(embed(e, &mb, n)).or_insert_with(BigInt::zero);
            if negate_rhs {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Polynomial::canonical(vars, acc)
    }
}

// Union of two significance-ordered variable lists plus the position of each
// input variable inside the union.
fn merge_vars(a: &[Variable], b: &[Variable]) -> (Vec<Variable>, Vec<usize>, Vec<usize>) {
    if a == b {
        let id: Vec<usize> = (0..a.len()).collect();
        return (a.to_vec(), id.clone(), id);
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut ma, mut mb) = (Vec::with_capacity(a.len()), Vec::with_capacity(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.significance_cmp(y),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                ma.push(out.len());
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                mb.push(out.len());
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                ma.push(out.len());
                mb.push(out.len());
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    (out, ma, mb)
}

fn embed(exps: &Exps, map: &[usize], len: usize) -> Exps {
    if map.len() == len {
        return exps.clone();
    }
    let mut out: Exps = SmallVec::from_elem(0, len);
    for (x, &pos) in exps.iter().zip(map) {
        out[pos] = *x;
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // print factors in (name, order) order
        let mut print_order: Vec<usize> = (0..self.vars.len()).collect();
        print_order.sort_by(|&i, &j| self.vars[i].cmp(&self.vars[j]));

        for (k, (exps, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let abs = c.abs();
            let mut wrote = false;
            if exps.iter().all(|&e| e == 0) || !abs.is_one() {
                write!(f, "{abs}")?;
                wrote = true;
            }
            for &i in &print_order {
                let e = exps[i];
                if e == 0 {
                    continue;
                }
                if wrote {
                    f.write_str("*")?;
                }
                write!(f, "{}", self.vars[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

impl From<Variable> for Polynomial {
    fn from(v: Variable) -> Self {
        Polynomial::variable(v)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(c)
    }
}

impl From<BigInt> for Polynomial {
    fn from(c: BigInt) -> Self {
        Polynomial::constant(c)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_impl(rhs, false)
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.add_impl(rhs, true)
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs, usize::MAX)
            .expect("unbounded mul cannot hit a term limit")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for (_, c) in self.terms.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

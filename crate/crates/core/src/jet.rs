//! Finite presentations of arithmetic jet algebras.
//!
//! For an affine scheme cut out by `f_1, ..., f_s` in base variables
//! `x_1, ..., x_m`, the order-`r` jet algebra is the polynomial ring in the
//! jet variables `x_i@k` (`0 ≤ k ≤ r`) modulo the generators `δ^k f_j`.
//! Presentations are compared syntactically; two generating sets of the same
//! ideal give different presentations. No p-adic completion is performed.

use num_bigint::BigInt;
use serde::Serialize;

use crate::delta::{delta, DeltaContext};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, Variable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetPresentation {
    p: u64,
    r: u32,
    base_vars: Vec<String>,
    // generators[k][j] = δ^k f_j
    generators: Vec<Vec<Polynomial>>,
}

/// Reduction of a [`JetPresentation`] modulo p: every coefficient in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialFiberPresentation {
    p: u64,
    r: u32,
    base_vars: Vec<String>,
    generators: Vec<Vec<Polynomial>>,
}

#[derive(Serialize)]
struct PresentationJson<'a> {
    p: u64,
    r: u32,
    base_vars: &'a [String],
    generators: Vec<Vec<String>>,
}

fn generators_json(gens: &[Vec<Polynomial>]) -> Vec<Vec<String>> {
    gens.iter()
        .map(|level| level.iter().map(ToString::to_string).collect())
        .collect()
}

fn jet_variables(base_vars: &[String], r: u32) -> Vec<Variable> {
    (0..=r)
        .flat_map(|k| {
            base_vars
                .iter()
                .map(move |n| Variable::new(n, k).expect("base names are validated"))
        })
        .collect()
}

impl JetPresentation {
    /// Assembles a presentation from explicit generator levels.
    ///
    /// `generators` must have `r + 1` levels of equal length.
    pub fn from_parts(
        p: u64,
        base_vars: Vec<String>,
        generators: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::invalid_input("a presentation needs at least level 0"));
        }
        let s = generators[0].len();
        if let Some(bad) = generators.iter().position(|g| g.len() != s) {
            return Err(Error::LengthMismatch {
                expected: s,
                found: generators[bad].len(),
            });
        }
        for n in &base_vars {
            Variable::base(n)?;
        }
        Ok(JetPresentation {
            p,
            r: (generators.len() - 1) as u32,
            base_vars,
            generators,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> u32 {
        self.r
    }

    pub fn base_vars(&self) -> &[String] {
        &self.base_vars
    }

    /// All jet variables `x@k`, `0 ≤ k ≤ r`, level by level.
    pub fn variables(&self) -> Vec<Variable> {
        jet_variables(&self.base_vars, self.r)
    }

    pub fn num_variables(&self) -> usize {
        self.base_vars.len() * (self.r as usize + 1)
    }

    pub fn num_generators(&self) -> usize {
        self.generators.iter().map(Vec::len).sum()
    }

    /// Generators of level `k`, i.e. `δ^k f_j` in input order.
    pub fn level(&self, k: usize) -> &[Polynomial] {
        &self.generators[k]
    }

    pub fn levels(&self) -> &[Vec<Polynomial>] {
        &self.generators
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PresentationJson {
            p: self.p,
            r: self.r,
            base_vars: &self.base_vars,
            generators: generators_json(&self.generators),
        })
        .expect("presentation serializes")
    }
}

impl SpecialFiberPresentation {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> u32 {
        self.r
    }

    pub fn base_vars(&self) -> &[String] {
        &self.base_vars
    }

    pub fn num_variables(&self) -> usize {
        self.base_vars.len() * (self.r as usize + 1)
    }

    pub fn num_generators(&self) -> usize {
        self.generators.iter().map(Vec::len).sum()
    }

    pub fn level(&self, k: usize) -> &[Polynomial] {
        &self.generators[k]
    }

    pub fn levels(&self) -> &[Vec<Polynomial>] {
        &self.generators
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PresentationJson {
            p: self.p,
            r: self.r,
            base_vars: &self.base_vars,
            generators: generators_json(&self.generators),
        })
        .expect("presentation serializes")
    }
}

/// Builds the order-`r` presentation `(I, δI, ..., δ^r I)`.
///
/// Base variables are those declared on `ctx`, or else every base name that
/// occurs in `generators`, sorted.
pub fn jet_presentation(
    generators: &[Polynomial],
    ctx: &DeltaContext,
    r: u32,
) -> Result<JetPresentation> {
    for (j, f) in generators.iter().enumerate() {
        if let Some(v) = f.variables().iter().find(|v| v.order() > 0) {
            return Err(Error::invalid_input(format!(
                "generator {} mentions jet variable `{v}`; only base variables are allowed",
                j + 1
            )));
        }
    }
    let base_vars: Vec<String> = if ctx.base_vars().is_empty() {
        let mut names: Vec<String> = generators
            .iter()
            .flat_map(|f| f.variables().iter().map(|v| v.name().to_owned()))
            .collect();
        names.sort();
        names.dedup();
        names
    } else {
        ctx.base_vars().to_vec()
    };

    let mut levels: Vec<Vec<Polynomial>> = Vec::with_capacity(r as usize + 1);
    levels.push(generators.to_vec());
    for k in 1..=r as usize {
        let next = levels[k - 1]
            .iter()
            .map(|f| delta(f, ctx))
            .collect::<Result<Vec<_>>>()?;
        levels.push(next);
    }
    Ok(JetPresentation {
        p: ctx.p(),
        r,
        base_vars,
        generators: levels,
    })
}

/// True iff `δ` maps every level-`k` generator to the matching level-`k+1`
/// generator, i.e. the tower of presentations is a prolongation sequence.
pub fn prolongation_commutation_check(pres: &JetPresentation, ctx: &DeltaContext) -> bool {
    if pres.p != ctx.p() {
        return false;
    }
    pres.generators.windows(2).all(|w| {
        w[0].iter()
            .zip(&w[1])
            .all(|(f, g)| matches!(delta(f, ctx), Ok(d) if d == *g))
    })
}

/// Reduces every generator coefficient into `[0, p)`.
pub fn special_fiber(pres: &JetPresentation) -> SpecialFiberPresentation {
    let m = BigInt::from(pres.p);
    SpecialFiberPresentation {
        p: pres.p,
        r: pres.r,
        base_vars: pres.base_vars.clone(),
        generators: pres
            .generators
            .iter()
            .map(|level| level.iter().map(|f| f.reduce_mod(&m)).collect())
            .collect(),
    }
}

impl SpecialFiberPresentation {
    /// Reducing an already reduced presentation changes nothing.
    pub fn reduce_again(&self) -> SpecialFiberPresentation {
        let m = BigInt::from(self.p);
        SpecialFiberPresentation {
            generators: self
                .generators
                .iter()
                .map(|level| level.iter().map(|f| f.reduce_mod(&m)).collect())
                .collect(),
            ..self.clone()
        }
    }
}

//! p-derivations on integer polynomial rings.
//!
//! The lift of Frobenius `φ` sends a variable `v@k` to `v@k^p + p*v@(k+1)`
//! and fixes integers. The p-derivation is then `δ(f) = (φ(f) - f^p) / p`,
//! which is always an exact division. On integer constants this is the
//! Fermat quotient `(c - c^p) / p`.
//!
//! Coefficients live in ℤ. That is the part of the Witt vectors of an
//! algebraically closed field of characteristic p that can be written down
//! finitely, and it is closed under δ.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Variable, DEFAULT_TERM_LIMIT};

/// The prime together with the ambient base variables and resource limits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaContext {
    p: u64,
    prime: BigInt,
    base_vars: Vec<String>,
    term_limit: usize,
}

/// Rejects anything that is not an odd prime.
pub fn validate_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::InvalidPrime {
            p,
            reason: "p = 2 is not supported; the prime is assumed odd throughout".into(),
        });
    }
    if !num_prime::nt_funcs::is_prime64(p) {
        return Err(Error::InvalidPrime {
            p,
            reason: "not a prime".into(),
        });
    }
    Ok(())
}

impl DeltaContext {
    pub fn new(p: u64) -> Result<Self> {
        validate_odd_prime(p)?;
        if u32::try_from(p).is_err() {
            return Err(Error::InvalidPrime {
                p,
                reason: "exceeds 2^32; f^p cannot be expanded at this size".into(),
            });
        }
        Ok(DeltaContext {
            p,
            prime: BigInt::from(p),
            base_vars: Vec::new(),
            term_limit: DEFAULT_TERM_LIMIT,
        })
    }

    /// Declares the ambient base variables. Polynomials mentioning any other
    /// base name are rejected. With no declaration every name is accepted.
    pub fn with_base_vars<S: AsRef<str>>(mut self, vars: &[S]) -> Result<Self> {
        let mut names = Vec::with_capacity(vars.len());
        for v in vars {
            let v = Variable::base(v.as_ref())?;
            names.push(v.name().to_owned());
        }
        names.sort();
        let n = names.len();
        names.dedup();
        if names.len() != n {
            return Err(Error::invalid_input("duplicate base variable"));
        }
        self.base_vars = names;
        Ok(self)
    }

    pub fn with_term_limit(mut self, limit: usize) -> Self {
        self.term_limit = limit;
        self
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn prime(&self) -> &BigInt {
        &self.prime
    }

    pub fn base_vars(&self) -> &[String] {
        &self.base_vars
    }

    pub fn term_limit(&self) -> usize {
        self.term_limit
    }

    fn p_u32(&self) -> u32 {
        // checked in `new`
        self.p as u32
    }

    fn check_vars(&self, f: &Polynomial) -> Result<()> {
        if self.base_vars.is_empty() {
            return Ok(());
        }
        for v in f.variables() {
            if self.base_vars.binary_search_by(|n| n.as_str().cmp(v.name())).is_err() {
                return Err(Error::invalid_input(format!(
                    "variable `{v}` is not among the declared base variables [{}]",
                    self.base_vars.join(", ")
                )));
            }
        }
        Ok(())
    }
}

/// `(c - c^p) / p`.
pub fn fermat_quotient(c: &BigInt, ctx: &DeltaContext) -> BigInt {
    (c - c.pow(ctx.p_u32())) / ctx.prime()
}

/// `φ(f)`: substitutes `v@k ↦ v@k^p + p*v@(k+1)` for every variable.
pub fn frobenius_substitution(f: &Polynomial, ctx: &DeltaContext) -> Result<Polynomial> {
    ctx.check_vars(f)?;
    let p = ctx.p_u32();
    let map: BTreeMap<Variable, Polynomial> = f
        .variables()
        .iter()
        .map(|v| {
            let image = Polynomial::variable(v.clone()).pow(p)
                + Polynomial::variable(v.next_order()).scale(ctx.prime());
            (v.clone(), image)
        })
        .collect();
    f.checked_substitute(&map, ctx.term_limit)
}

/// `δ(f) = (φ(f) - f^p) / p`.
pub fn delta(f: &Polynomial, ctx: &DeltaContext) -> Result<Polynomial> {
    let phi = frobenius_substitution(f, ctx)?;
    let fp = f.checked_pow(ctx.p_u32(), ctx.term_limit)?;
    (phi - fp).divide_exact(ctx.prime()).map_err(|e| match e {
        Error::NotDivisible { .. } => Error::Internal(format!("p-derivation of `{f}`: {e}")),
        other => other,
    })
}

/// `δ^r(f)` for `r ≥ 1`.
pub fn delta_iter(f: &Polynomial, ctx: &DeltaContext, r: u32) -> Result<Polynomial> {
    if r == 0 {
        return Err(Error::invalid_input("iteration count must be at least 1"));
    }
    let mut g = delta(f, ctx)?;
    for _ in 1..r {
        g = delta(&g, ctx)?;
    }
    Ok(g)
}

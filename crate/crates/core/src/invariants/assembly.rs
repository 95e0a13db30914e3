//! Splitting a characteristic function into per-prime parts.
//!
//! With `e = f(*)`, `f = e·χ_Q + Σ_p (f_p - e·χ_Q)`, where `f_p` evaluates `f`
//! after replacing every leaf `BG` by `B(Syl_p G)`, or by a point when `p`
//! does not divide `|G|`. Only primes in the torsion support contribute.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groups::{sylow_decomposition, FiniteGroup, SylowDecomposition};
use crate::limits::Limits;
use crate::rational::Rat;
use crate::spaces::{torsion_support, SpaceExpr};

use super::basis::{BasisElement, BasisFunction, BasisValues};
use super::charfn::{solve_basis_coefficients, CharFunction, Strategy};
use super::rational_euler;

fn nilpotent_sylow(g: &FiniteGroup) -> Result<Arc<SylowDecomposition>> {
    let sylow = sylow_decomposition(g);
    if !sylow.is_nilpotent() {
        return Err(Error::NonNilpotent(g.name().to_string()));
    }
    Ok(sylow)
}

/// The expression with each leaf replaced by its Sylow `p`-part.
fn localize(x: &SpaceExpr, p: u64) -> Result<SpaceExpr> {
    x.map_leaves(&mut |g| {
        let sylow = nilpotent_sylow(g)?;
        Ok(match sylow.get(p) {
            Some(part) => SpaceExpr::Classifying(part.clone()),
            None => SpaceExpr::Point,
        })
    })
}

/// `f_p(X)`: `f` evaluated on the leafwise `p`-localization of `X`.
pub fn project_prime(f: &CharFunction, p: u64, x: &SpaceExpr, limits: &Limits) -> Result<Rat> {
    f.evaluate(&localize(x, p)?, limits)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssemblyReport {
    pub value: Rat,
    pub strategy: Strategy,
    /// `f_p(X)` for exactly the primes whose projection was computed.
    pub per_prime: BTreeMap<u64, Rat>,
}

/// The characteristic function through the given basis values, restricted to
/// the basis elements the `p`-localization of `X` can reach.
fn prime_part(
    values: &(impl BasisValues + ?Sized),
    p: u64,
    x: &SpaceExpr,
    limits: &Limits,
) -> Result<CharFunction> {
    let mut elements = vec![BasisElement::Star];
    for g in x.leaves() {
        if let Some(part) = nilpotent_sylow(g)?.get(p) {
            elements.push(BasisElement::from_group(part.clone())?);
        }
    }
    let f = BasisFunction::from_values(elements, values)?;
    Ok(CharFunction::from_coefficients(&solve_basis_coefficients(
        &f, limits,
    )?))
}

/// `e·χ_Q(X) + Σ_p (f_p(X) - e·χ_Q(X))` over the torsion support of `X`.
pub fn evaluate_assembled(
    values: &(impl BasisValues + ?Sized),
    x: &SpaceExpr,
    limits: &Limits,
) -> Result<AssemblyReport> {
    let e = values.require(&BasisElement::Star)?;
    let rational = &e * rational_euler(x);
    let mut value = rational.clone();
    let mut per_prime = BTreeMap::new();
    for p in torsion_support(x)? {
        let f_p = prime_part(values, p, x, limits)?;
        let v = project_prime(&f_p, p, x, limits)?;
        value += &v - &rational;
        per_prime.insert(p, v);
    }
    Ok(AssemblyReport {
        value,
        strategy: Strategy::Assembly,
        per_prime,
    })
}

/// Structural evaluation with `f(BG) = Σ_p f(B Syl_p G) - (k-1)·f(*)` for a
/// nilpotent leaf whose order has `k` prime divisors.
pub fn evaluate_leafwise(values: &(impl BasisValues + ?Sized), x: &SpaceExpr) -> Result<Rat> {
    let e = values.require(&BasisElement::Star)?;
    x.evaluate_additive(&Rat::zero(), &e, &mut |g| {
        let sylow = nilpotent_sylow(g)?;
        let k = sylow.subgroups().len() as i64;
        let mut v = -(&e * Rat::from_integer((k - 1).into()));
        for part in sylow.subgroups().values() {
            v += values.require(&BasisElement::from_group(part.clone())?)?;
        }
        Ok(v)
    })
}

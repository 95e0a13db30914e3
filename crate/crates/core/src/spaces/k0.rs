//! Classes in K₀, the free abelian group on `[*]` and on `[BG]` for nontrivial
//! p-groups `G` up to isomorphism.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{sylow_decomposition, FiniteGroup};
use crate::invariants::{BasisElement, BasisValues};
use crate::rational::Rat;

use super::SpaceExpr;

/// A finitely supported integer combination of basis elements. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct K0Class {
    terms: BTreeMap<BasisElement, i64>,
}

impl K0Class {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn star() -> Self {
        Self::single(BasisElement::Star, 1)
    }

    pub fn single(element: BasisElement, coefficient: i64) -> Self {
        let mut class = Self::zero();
        class.add_term(element, coefficient);
        class
    }

    pub fn add_term(&mut self, element: BasisElement, coefficient: i64) {
        let entry = self.terms.entry(element).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn coefficient(&self, element: &BasisElement) -> i64 {
        self.terms.get(element).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<BasisElement, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Primes of the p-group elements with nonzero coefficient.
    pub fn primes(&self) -> BTreeSet<u64> {
        self.terms.keys().filter_map(BasisElement::prime).collect()
    }

    pub fn to_json(&self) -> K0ClassJson {
        K0ClassJson {
            star: self.coefficient(&BasisElement::Star),
            groups: self
                .terms
                .iter()
                .filter_map(|(e, &coef)| {
                    e.prime().map(|prime| K0GroupTerm {
                        prime,
                        spec: e.spec(),
                        coef,
                    })
                })
                .collect(),
        }
    }
}

impl Add for K0Class {
    type Output = K0Class;

    fn add(mut self, rhs: K0Class) -> K0Class {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Neg for K0Class {
    type Output = K0Class;

    fn neg(mut self) -> K0Class {
        self.terms.values_mut().for_each(|c| *c = -*c);
        self
    }
}

impl Sub for K0Class {
    type Output = K0Class;

    fn sub(self, rhs: K0Class) -> K0Class {
        self + (-rhs)
    }
}

/// Positive terms first, then negative ones, each in basis order:
/// `[B C2] + [B C3] - [*]`, `2[*] - [B C2]`, or `0`.
impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let positive = self.terms.iter().filter(|(_, &c)| c > 0);
        let negative = self.terms.iter().filter(|(_, &c)| c < 0);
        for (i, (e, &c)) in positive.chain(negative).enumerate() {
            let sign = match (i, c < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            f.write_str(sign)?;
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// `{"star": n, "groups": [{"prime": p, "spec": name, "coef": n}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K0ClassJson {
    pub star: i64,
    pub groups: Vec<K0GroupTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K0GroupTerm {
    pub prime: u64,
    pub spec: String,
    pub coef: i64,
}

/// `[BG] = Σ_p [B Syl_p G] - (k-1)[*]` for nilpotent `G` with `k` prime divisors.
pub fn leaf_class(g: &Arc<FiniteGroup>) -> Result<K0Class> {
    let sylow = sylow_decomposition(g);
    if !sylow.is_nilpotent() {
        return Err(Error::NonNilpotent(g.name().to_string()));
    }
    let k = sylow.subgroups().len() as i64;
    let mut class = K0Class::single(BasisElement::Star, 1 - k);
    for p_part in sylow.subgroups().values() {
        class.add_term(BasisElement::from_group(p_part.clone())?, 1);
    }
    Ok(class)
}

pub fn k0_class(x: &SpaceExpr) -> Result<K0Class> {
    x.evaluate_additive(&K0Class::zero(), &K0Class::star(), &mut leaf_class)
}

pub fn torsion_support(x: &SpaceExpr) -> Result<BTreeSet<u64>> {
    Ok(k0_class(x)?.primes())
}

/// `Σ coefficient · f(element)`.
pub fn pair(class: &K0Class, f: &(impl BasisValues + ?Sized)) -> Result<Rat> {
    class.terms.iter().try_fold(Rat::zero(), |acc, (e, &c)| {
        Ok(acc + f.require(e)? * Rat::from_integer(c.into()))
    })
}

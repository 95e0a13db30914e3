//! Finite groups given by explicit Cayley tables.
//!
//! Elements are the indices `0..order`, and index 0 is always the identity.
//! Everything the characteristic-function machinery needs from group theory
//! lives here: homomorphism sets, conjugation, normal subgroups and quotients,
//! isomorphism testing, and Sylow structure.

mod canonical;
mod catalog;
mod homs;
mod subgroups;

use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

pub use canonical::{abelian_invariants, canonical_key, canonical_name, CanonicalKey};
pub use catalog::{
    build_catalog_group, cyclic, dihedral, direct_product, heisenberg, metacyclic, quaternion,
    symmetric, table_literal,
};
pub use homs::{enumerate_homs, is_isomorphic, mono_rep_count, rep_count, GroupHom};
pub use subgroups::{
    all_subgroups, cosets, normal_subgroups, quotient, subgroup_classes, sylow_decomposition,
    NormalSubgroup, SylowDecomposition,
};

/// A finite group stored as a full multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    element_orders: Vec<usize>,
    name: String,
    canonical: OnceLock<CanonicalKey>,
    canonical_name: OnceLock<String>,
    sylow: OnceLock<Arc<SylowDecomposition>>,
}

impl FiniteGroup {
    /// Builds a group from a row-major table, checking every group axiom.
    pub fn from_table(table: Vec<usize>, name: impl Into<String>) -> Result<Self> {
        let order = integer_sqrt(table.len())
            .filter(|n| *n > 0)
            .ok_or_else(|| {
                Error::InvalidTable(format!(
                    "{} entries is not a positive perfect square",
                    table.len()
                ))
            })?;
        validate_table(order, &table)?;
        Ok(Self::from_valid_table(order, table, name.into()))
    }

    /// Tables produced by the constructions in this module are groups by
    /// construction; debug builds still check them.
    pub(crate) fn from_valid_table(order: usize, table: Vec<usize>, name: String) -> Self {
        debug_assert!(
            validate_table(order, &table).is_ok(),
            "invalid table for {name}"
        );
        let inverses = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| table[a * order + b] == 0)
                    .expect("validated table has inverses")
            })
            .collect();
        let element_orders = (0..order)
            .map(|a| {
                let mut x = a;
                let mut k = 1;
                while x != 0 {
                    x = table[x * order + a];
                    k += 1;
                }
                k
            })
            .collect();
        FiniteGroup {
            order,
            table,
            inverses,
            element_orders,
            name,
            canonical: OnceLock::new(),
            canonical_name: OnceLock::new(),
            sylow: OnceLock::new(),
        }
    }

    pub fn trivial() -> Self {
        Self::from_valid_table(1, vec![0], "C1".to_string())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.element_orders[a]
    }

    pub fn element_orders(&self) -> &[usize] {
        &self.element_orders
    }

    /// `h a h⁻¹`
    #[inline]
    pub fn conj(&self, h: usize, a: usize) -> usize {
        self.mul(self.mul(h, a), self.inv(h))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_central(&self, a: usize) -> bool {
        self.elements().all(|b| self.mul(a, b) == self.mul(b, a))
    }

    pub fn conjugacy_class(&self, a: usize) -> Vec<usize> {
        let mut class: Vec<usize> = self.elements().map(|h| self.conj(h, a)).collect();
        class.sort_unstable();
        class.dedup();
        class
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut members = vec![false; self.order];
        members[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !members[b] {
                    members[b] = true;
                    queue.push_back(b);
                }
            }
        }
        members
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect()
    }

    /// A generating set chosen greedily: repeatedly take the element of largest
    /// order (smallest index on ties) outside the subgroup generated so far.
    pub fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut members = vec![false; self.order];
        members[0] = true;
        let mut size = 1;
        while size < self.order {
            let next = self
                .elements()
                .filter(|&a| !members[a])
                .max_by_key(|&a| (self.element_order(a), std::cmp::Reverse(a)))
                .expect("proper subgroup has an outside element");
            gens.push(next);
            let sub = self.generate(&gens);
            size = sub.len();
            for a in sub {
                members[a] = true;
            }
        }
        gens
    }

    /// Distinct primes dividing the order, ascending.
    pub fn prime_divisors(&self) -> Vec<u64> {
        prime_factors(self.order as u64)
            .into_iter()
            .map(|(p, _)| p)
            .collect()
    }

    /// `Some(p)` when the order is a positive power of the prime `p`.
    pub fn p_group_prime(&self) -> Option<u64> {
        match prime_factors(self.order as u64).as_slice() {
            [(p, _)] => Some(*p),
            _ => None,
        }
    }

    /// The subgroup on `elements` (which must be a subgroup) as a standalone group,
    /// relabeled in ascending order of the original indices.
    pub(crate) fn induced_subgroup(&self, elements: &[usize], name: String) -> FiniteGroup {
        let n = elements.len();
        let mut relabel = vec![usize::MAX; self.order];
        for (i, &a) in elements.iter().enumerate() {
            relabel[a] = i;
        }
        let mut table = Vec::with_capacity(n * n);
        for &a in elements {
            for &b in elements {
                table.push(relabel[self.mul(a, b)]);
            }
        }
        FiniteGroup::from_valid_table(n, table, name)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn validate_table(order: usize, table: &[usize]) -> Result<()> {
    if table.len() != order * order {
        return Err(Error::InvalidTable(format!(
            "expected {} entries, found {}",
            order * order,
            table.len()
        )));
    }
    if let Some(bad) = table.iter().find(|&&x| x >= order) {
        return Err(Error::InvalidTable(format!(
            "entry {bad} is out of range for order {order}"
        )));
    }
    let at = |a: usize, b: usize| table[a * order + b];
    for a in 0..order {
        if at(0, a) != a || at(a, 0) != a {
            return Err(Error::InvalidTable(format!(
                "element 0 does not act as the identity on element {a}"
            )));
        }
    }
    for a in 0..order {
        let inverse = (0..order).find(|&b| at(a, b) == 0 && at(b, a) == 0);
        if inverse.is_none() {
            return Err(Error::InvalidTable(format!(
                "element {a} has no two-sided inverse"
            )));
        }
    }
    for a in 0..order {
        for b in 0..order {
            let ab = at(a, b);
            for c in 0..order {
                if at(ab, c) != at(a, at(b, c)) {
                    return Err(Error::InvalidTable(format!(
                        "associativity fails for ({a}, {b}, {c})"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn integer_sqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [(n, 1)]
}

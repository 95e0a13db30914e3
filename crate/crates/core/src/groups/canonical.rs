//! Isomorphism-invariant keys and display names.
//!
//! The key of a group is a Cayley table that depends only on its isomorphism
//! class: for abelian groups, the table of the standard product of cyclic
//! groups on its invariant factors; otherwise, the lexicographically least
//! table among the labelings induced by breadth-first traversal from
//! generator tuples chosen by an automorphism-invariant rule.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use crate::limits::Limits;

use super::catalog::{build_catalog_group, cyclic, direct_product, table_literal};
use super::{prime_factors, FiniteGroup};

pub type CanonicalKey = Arc<[usize]>;

/// Computed once per group and cached on it.
pub fn canonical_key(g: &FiniteGroup) -> CanonicalKey {
    g.canonical.get_or_init(|| compute_key(g).into()).clone()
}

/// Invariant factors `d_1 | d_2 | ... | d_k` (each > 1) of an abelian group.
pub fn abelian_invariants(g: &FiniteGroup) -> Option<Vec<usize>> {
    if !g.is_abelian() {
        return None;
    }
    // per prime, the partition of exponents, largest first
    let mut partitions: Vec<(usize, Vec<u32>)> = Vec::new();
    for (p, e) in prime_factors(g.order() as u64) {
        let p = p as usize;
        let mut log_counts = vec![0u32];
        for k in 1..=e {
            let pk = p.pow(k);
            let count = g.elements().filter(|&a| g.pow(a, pk) == 0).count();
            log_counts.push(count.ilog(p));
        }
        // parts of size >= k number log_counts[k] - log_counts[k-1]
        let at_least: Vec<u32> = (1..=e as usize)
            .map(|k| log_counts[k] - log_counts[k - 1])
            .collect();
        let parts = at_least.first().copied().unwrap_or(0);
        let exps: Vec<u32> = (0..parts)
            .map(|i| at_least.iter().filter(|&&c| c > i).count() as u32)
            .collect();
        partitions.push((p, exps));
    }
    let rank = partitions.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors: Vec<usize> = (0..rank)
        .map(|i| {
            partitions
                .iter()
                .map(|(p, exps)| exps.get(i).map_or(1, |&e| p.pow(e)))
                .product()
        })
        .collect();
    factors.reverse();
    Some(factors)
}

fn compute_key(g: &FiniteGroup) -> Vec<usize> {
    match abelian_invariants(g) {
        Some(factors) => factors
            .iter()
            .map(|&d| cyclic(d).expect("positive invariant factor"))
            .fold(FiniteGroup::trivial(), |acc, c| direct_product(&acc, &c))
            .table()
            .to_vec(),
        None => LeastLabeling::new(g).run(),
    }
}

struct LeastLabeling<'a> {
    g: &'a FiniteGroup,
    /// (element order, conjugacy class size), preserved by automorphisms
    invariant: Vec<(usize, usize)>,
    best: Option<Vec<usize>>,
}

impl<'a> LeastLabeling<'a> {
    fn new(g: &'a FiniteGroup) -> Self {
        let invariant = g
            .elements()
            .map(|a| (g.element_order(a), g.conjugacy_class(a).len()))
            .collect();
        LeastLabeling {
            g,
            invariant,
            best: None,
        }
    }

    fn run(mut self) -> Vec<usize> {
        self.extend(&mut Vec::new(), &[0]);
        self.best.expect("at least one generating tuple")
    }

    fn extend(&mut self, prefix: &mut Vec<usize>, subgroup: &[usize]) {
        let n = self.g.order();
        if subgroup.len() == n {
            self.consider(prefix);
            return;
        }
        let mut inside = vec![false; n];
        for &a in subgroup {
            inside[a] = true;
        }
        let top = (0..n)
            .filter(|&a| !inside[a])
            .map(|a| self.invariant[a])
            .max()
            .expect("proper subgroup");
        for x in 0..n {
            if inside[x] || self.invariant[x] != top {
                continue;
            }
            prefix.push(x);
            let next = self.g.generate(prefix);
            self.extend(prefix, &next);
            prefix.pop();
        }
    }

    fn consider(&mut self, gens: &[usize]) {
        let g = self.g;
        let n = g.order();
        let mut label = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        label[0] = 0;
        order.push(0);
        let mut queue = VecDeque::from([0]);
        while let Some(a) = queue.pop_front() {
            for &s in gens {
                let b = g.mul(a, s);
                if label[b] == usize::MAX {
                    label[b] = order.len();
                    order.push(b);
                    queue.push_back(b);
                }
            }
        }
        let entry = |idx: usize| label[g.mul(order[idx / n], order[idx % n])];
        match &self.best {
            None => self.best = Some((0..n * n).map(entry).collect()),
            Some(best) => {
                for idx in 0..n * n {
                    let v = entry(idx);
                    if v < best[idx] {
                        self.best = Some((0..n * n).map(entry).collect());
                        return;
                    }
                    if v > best[idx] {
                        return;
                    }
                }
            }
        }
    }
}

/// A group-spec string naming the isomorphism class: invariant factors for
/// abelian groups, a catalog spelling for recognized nonabelian groups, and a
/// `table:[...]` literal of the canonical table otherwise. Always parseable.
pub fn canonical_name(g: &FiniteGroup) -> String {
    g.canonical_name.get_or_init(|| compute_name(g)).clone()
}

fn compute_name(g: &FiniteGroup) -> String {
    if let Some(factors) = abelian_invariants(g) {
        if factors.is_empty() {
            return "C1".to_string();
        }
        return abelian_spec(&factors);
    }
    let key = canonical_key(g);
    nonabelian_candidates(g.order())
        .iter()
        .find(|(_, k)| *k == key)
        .map(|(name, _)| name.clone())
        .unwrap_or_else(|| table_literal(&key))
}

fn abelian_spec(factors: &[usize]) -> String {
    let parts: Vec<String> = factors.iter().rev().map(|d| format!("C{d}")).collect();
    parts.join("x")
}

/// Invariant-factor lists of every abelian group of order `m`.
fn abelian_groups_of_order(m: usize) -> Vec<Vec<usize>> {
    fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=n.min(max)).rev() {
            for mut rest in partitions(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut groups = vec![Vec::<usize>::new()];
    for (p, e) in prime_factors(m as u64) {
        let mut next = Vec::new();
        for g in &groups {
            for part in partitions(e, e) {
                // g is largest-first; merge prime powers largest-first
                let len = g.len().max(part.len());
                let merged: Vec<usize> = (0..len)
                    .map(|i| {
                        g.get(i).copied().unwrap_or(1)
                            * part.get(i).map_or(1, |&k| (p as usize).pow(k))
                    })
                    .collect();
                next.push(merged);
            }
        }
        groups = next;
    }
    groups
        .into_iter()
        .map(|mut largest_first| {
            largest_first.reverse();
            largest_first
        })
        .collect()
}

const NAMED_ORDER_CAP: usize = 64;

fn nonabelian_candidates(order: usize) -> Vec<(String, CanonicalKey)> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<(String, CanonicalKey)>>>> = OnceLock::new();
    if order > NAMED_ORDER_CAP {
        return Vec::new();
    }
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&order) {
        return hit.clone();
    }
    let limits = Limits::default().with_max_order(NAMED_ORDER_CAP);
    let mut atoms: Vec<(String, usize)> =
        vec![("S3".into(), 6), ("Q8".into(), 8), ("S4".into(), 24)];
    atoms.extend((4..=NAMED_ORDER_CAP / 2).map(|n| (format!("D{n}"), 2 * n)));
    let mut specs: Vec<String> = atoms
        .iter()
        .filter(|(_, o)| *o == order)
        .map(|(s, _)| s.clone())
        .collect();
    for (atom, o) in &atoms {
        if order.is_multiple_of(*o) && order > *o {
            for factors in abelian_groups_of_order(order / o) {
                specs.push(format!("{atom}x{}", abelian_spec(&factors)));
            }
        }
    }
    for (i, (a, oa)) in atoms.iter().enumerate() {
        for (b, ob) in &atoms[i..] {
            if oa * ob == order {
                specs.push(format!("{a}x{b}"));
            }
        }
    }
    let built: Vec<(String, CanonicalKey)> = specs
        .into_iter()
        .filter_map(|spec| {
            let g = build_catalog_group(&spec, &limits).ok()?;
            Some((spec, canonical_key(&g)))
        })
        .collect();
    cache.lock().unwrap().insert(order, built.clone());
    built
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::is_isomorphic;

    fn g(spec: &str) -> FiniteGroup {
        build_catalog_group(spec, &Limits::default()).unwrap()
    }

    #[test]
    fn invariant_factors() {
        assert_eq!(abelian_invariants(&g("C1")), Some(vec![]));
        assert_eq!(abelian_invariants(&g("C2xC3")), Some(vec![6]));
        assert_eq!(abelian_invariants(&g("C2xC4xC2")), Some(vec![2, 2, 4]));
        assert_eq!(abelian_invariants(&g("C6xC4")), Some(vec![2, 12]));
        assert_eq!(abelian_invariants(&g("S3")), None);
    }

    #[test]
    fn abelian_enumeration() {
        assert_eq!(abelian_groups_of_order(1), vec![Vec::<usize>::new()]);
        assert_eq!(abelian_groups_of_order(8).len(), 3);
        assert_eq!(abelian_groups_of_order(16).len(), 5);
        assert_eq!(abelian_groups_of_order(36).len(), 4);
        assert!(abelian_groups_of_order(12).contains(&vec![2, 6]));
    }

    #[test]
    fn keys_agree_with_isomorphism() {
        let specs = [
            "C8",
            "C4xC2",
            "C2xC2xC2",
            "D4",
            "Q8",
            "D6",
            "S3xC2",
            "C12",
            "C2xC6",
            "C3xS3",
            "D9",
            "S4",
            "D12",
            "Q8xC3",
            "D4xC3",
            "S3xC4",
            "C2xC2xC2xC2",
            "D8",
            "Q8xC2",
            "D4xC2",
        ];
        let groups: Vec<FiniteGroup> = specs.iter().map(|s| g(s)).collect();
        let limits = Limits::default();
        for (i, a) in groups.iter().enumerate() {
            for b in &groups[i..] {
                let same_key = canonical_key(a) == canonical_key(b);
                assert_eq!(
                    same_key,
                    is_isomorphic(a, b, &limits).unwrap(),
                    "{a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn key_ignores_labeling() {
        // conjugate the labeling of D5 by a fixed permutation fixing 0
        let d5 = g("D5");
        let n = d5.order();
        let perm: Vec<usize> = std::iter::once(0).chain((1..n).rev()).collect();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let table: Vec<usize> = (0..n * n)
            .map(|idx| perm[d5.mul(inv[idx / n], inv[idx % n])])
            .collect();
        let relabeled = FiniteGroup::from_table(table, "relabeled").unwrap();
        assert_ne!(relabeled.table(), d5.table());
        assert_eq!(canonical_key(&relabeled), canonical_key(&d5));
    }

    #[test]
    fn names() {
        assert_eq!(canonical_name(&g("C1")), "C1");
        assert_eq!(canonical_name(&g("C2xC3")), "C6");
        assert_eq!(canonical_name(&g("C2xC4")), "C4xC2");
        assert_eq!(canonical_name(&g("C2xC2")), "C2xC2");
        assert_eq!(canonical_name(&g("D3")), "S3");
        assert_eq!(canonical_name(&g("D4")), "D4");
        assert_eq!(canonical_name(&g("Q8")), "Q8");
        assert_eq!(canonical_name(&g("S3xC2")), "D6");
        assert_eq!(canonical_name(&g("C2xD4")), "D4xC2");
    }

    #[test]
    fn unnamed_groups_get_parseable_literals() {
        // Dic3 = C3 ⋊ C4, not expressible as a catalog product
        let n = 12;
        let elem = |i: usize, j: usize| i + 3 * j; // a^i b^j, a^3 = 1, b^4 = 1, b a b^-1 = a^-1
        let mut table = vec![0; n * n];
        for j1 in 0..4 {
            for i1 in 0..3 {
                for j2 in 0..4 {
                    for i2 in 0..3 {
                        let twisted = if j1 % 2 == 0 { i2 } else { (3 - i2) % 3 };
                        table[elem(i1, j1) * n + elem(i2, j2)] =
                            elem((i1 + twisted) % 3, (j1 + j2) % 4);
                    }
                }
            }
        }
        let dic3 = FiniteGroup::from_table(table, "Dic3").unwrap();
        let name = canonical_name(&dic3);
        assert!(name.starts_with("table:["), "{name}");
        let reparsed = build_catalog_group(&name, &Limits::default()).unwrap();
        assert!(is_isomorphic(&reparsed, &dic3, &Limits::default()).unwrap());
    }
}

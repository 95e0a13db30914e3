use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};

use super::{canonical_key, prime_factors, FiniteGroup};

#[derive(Clone, PartialEq, Eq)]
pub struct NormalSubgroup<'g> {
    parent: &'g FiniteGroup,
    elements: Vec<usize>,
}

impl<'g> NormalSubgroup<'g> {
    /// Checks closure, inverses and conjugation stability against `parent`.
    pub fn new(parent: &'g FiniteGroup, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if let Some(&bad) = elements.iter().find(|&&a| a >= parent.order()) {
            return Err(Error::InvalidSubgroup(format!(
                "element {bad} is not in {}",
                parent.name()
            )));
        }
        let mut members = vec![false; parent.order()];
        for &a in &elements {
            members[a] = true;
        }
        if !members[0] {
            return Err(Error::InvalidSubgroup("missing the identity".into()));
        }
        for &a in &elements {
            if !members[parent.inv(a)] {
                return Err(Error::InvalidSubgroup(format!(
                    "not closed under inverting {a}"
                )));
            }
            for &b in &elements {
                if !members[parent.mul(a, b)] {
                    return Err(Error::InvalidSubgroup(format!(
                        "not closed under the product of {a} and {b}"
                    )));
                }
            }
            for h in parent.elements() {
                if !members[parent.conj(h, a)] {
                    return Err(Error::InvalidSubgroup(format!(
                        "not normal: conjugating {a} by {h} leaves the subgroup"
                    )));
                }
            }
        }
        Ok(NormalSubgroup { parent, elements })
    }

    pub(crate) fn new_unchecked(parent: &'g FiniteGroup, elements: Vec<usize>) -> Self {
        NormalSubgroup { parent, elements }
    }

    pub fn trivial(parent: &'g FiniteGroup) -> Self {
        NormalSubgroup {
            parent,
            elements: vec![0],
        }
    }

    pub fn whole(parent: &'g FiniteGroup) -> Self {
        NormalSubgroup {
            parent,
            elements: parent.elements().collect(),
        }
    }

    pub fn parent(&self) -> &'g FiniteGroup {
        self.parent
    }

    /// Sorted element indices.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn is_subset_of(&self, other: &NormalSubgroup<'_>) -> bool {
        self.elements.iter().all(|&a| other.contains(a))
    }
}

impl std::fmt::Debug for NormalSubgroup<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "NormalSubgroup({}: {:?})",
            self.parent.name(),
            self.elements
        )
    }
}

/// Subgroups reachable from `{e}` by joining with members of `seeds`. Every
/// subgroup is a join of cyclic subgroups, and every normal subgroup is a
/// join of normal closures of elements.
fn join_closure(g: &FiniteGroup, seeds: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let mut found = BTreeSet::from([vec![0]]);
    let mut queue = VecDeque::from([vec![0]]);
    while let Some(current) = queue.pop_front() {
        let mut members = vec![false; g.order()];
        for &a in &current {
            members[a] = true;
        }
        for seed in seeds {
            if seed.iter().all(|&a| members[a]) {
                continue;
            }
            let mut gens = current.clone();
            gens.extend_from_slice(seed);
            let joined = g.generate(&gens);
            if found.insert(joined.clone()) {
                queue.push_back(joined);
            }
        }
    }
    found
}

fn by_size_then_elements(mut subgroups: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    subgroups.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subgroups
}

/// All normal subgroups, sorted by order and then by element list.
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<NormalSubgroup<'_>> {
    let mut closures: Vec<Vec<usize>> = g
        .elements()
        .skip(1)
        .map(|a| g.generate(&g.conjugacy_class(a)))
        .collect();
    closures.sort();
    closures.dedup();
    by_size_then_elements(join_closure(g, &closures).into_iter().collect())
        .into_iter()
        .map(|elements| NormalSubgroup::new_unchecked(g, elements))
        .collect()
}

/// Every subgroup as a sorted element list, sorted by order then elements.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut cyclics: Vec<Vec<usize>> = g.elements().skip(1).map(|a| g.generate(&[a])).collect();
    cyclics.sort();
    cyclics.dedup();
    by_size_then_elements(join_closure(g, &cyclics).into_iter().collect())
}

/// One standalone group per isomorphism class of subgroups, ordered by
/// `(order, canonical key)`.
pub fn subgroup_classes(g: &FiniteGroup) -> Vec<FiniteGroup> {
    let mut classes: BTreeMap<(usize, Vec<usize>), FiniteGroup> = BTreeMap::new();
    for (i, sub) in all_subgroups(g).into_iter().enumerate() {
        let h = g.induced_subgroup(&sub, format!("{}<{i}>", g.name()));
        let key = (h.order(), canonical_key(&h).to_vec());
        classes.entry(key).or_insert(h);
    }
    classes.into_values().collect()
}

/// `G/N` with cosets labeled in order of their smallest element.
pub fn quotient(g: &FiniteGroup, n: &NormalSubgroup<'_>) -> Result<FiniteGroup> {
    if n.parent() != g {
        return Err(Error::InvalidSubgroup(format!(
            "subgroup of {} used as a subgroup of {}",
            n.parent().name(),
            g.name()
        )));
    }
    let n = NormalSubgroup::new(g, n.elements().to_vec())?;
    if n.order() == 1 {
        return Ok(g.clone());
    }
    let (label, reps) = cosets(g, &n);
    let m = reps.len();
    let mut table = Vec::with_capacity(m * m);
    for &a in &reps {
        for &b in &reps {
            table.push(label[g.mul(a, b)]);
        }
    }
    let name = format!("{}/{:?}", g.name(), n.elements());
    Ok(FiniteGroup::from_valid_table(m, table, name))
}

/// Coset label of every element (cosets numbered by smallest member) and the
/// smallest member of each coset. This is the projection onto `quotient(g, n)`.
pub fn cosets(g: &FiniteGroup, n: &NormalSubgroup<'_>) -> (Vec<usize>, Vec<usize>) {
    let mut label = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for a in g.elements() {
        if label[a] == usize::MAX {
            for &k in n.elements() {
                label[g.mul(a, k)] = reps.len();
            }
            reps.push(a);
        }
    }
    (label, reps)
}

/// Sylow subgroups by prime, and whether the group is their direct product.
#[derive(Debug, Clone)]
pub struct SylowDecomposition {
    subgroups: BTreeMap<u64, Arc<FiniteGroup>>,
    nilpotent: bool,
}

impl SylowDecomposition {
    pub fn subgroups(&self) -> &BTreeMap<u64, Arc<FiniteGroup>> {
        &self.subgroups
    }

    pub fn get(&self, p: u64) -> Option<&Arc<FiniteGroup>> {
        self.subgroups.get(&p)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotent
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.subgroups.keys().copied()
    }
}

/// Computed once per group and cached on it.
pub fn sylow_decomposition(g: &FiniteGroup) -> Arc<SylowDecomposition> {
    g.sylow.get_or_init(|| Arc::new(compute_sylow(g))).clone()
}

fn compute_sylow(g: &FiniteGroup) -> SylowDecomposition {
    let mut subgroups = BTreeMap::new();
    let mut nilpotent = true;
    for (p, e) in prime_factors(g.order() as u64) {
        let elements = sylow_subgroup(g, p as usize, (p as usize).pow(e));
        let normal = elements.iter().all(|&a| {
            g.elements()
                .all(|h| elements.binary_search(&g.conj(h, a)).is_ok())
        });
        nilpotent &= normal;
        let sub = g.induced_subgroup(&elements, format!("Syl{p}({})", g.name()));
        subgroups.insert(p, Arc::new(sub));
    }
    SylowDecomposition {
        subgroups,
        nilpotent,
    }
}

/// Grows a p-subgroup one step at a time: a non-Sylow p-subgroup `P` always
/// has some `x` in its normalizer, outside `P`, with `x^p` in `P`.
fn sylow_subgroup(g: &FiniteGroup, p: usize, target: usize) -> Vec<usize> {
    let mut current = vec![0];
    while current.len() < target {
        let mut members = vec![false; g.order()];
        for &a in &current {
            members[a] = true;
        }
        let normalizes = |x: usize| current.iter().all(|&a| members[g.conj(x, a)]);
        let x = g
            .elements()
            .find(|&x| !members[x] && members[g.pow(x, p)] && normalizes(x))
            .expect("Sylow growth step exists");
        let mut gens = current.clone();
        gens.push(x);
        current = g.generate(&gens);
    }
    current
}

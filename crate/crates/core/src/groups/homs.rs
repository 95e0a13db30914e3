//! Homomorphism search over generator images.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::limits::Limits;

use super::FiniteGroup;

const UNSET: usize = usize::MAX;

#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom<'a> {
    source: &'a FiniteGroup,
    target: &'a FiniteGroup,
    images: Vec<usize>,
}

impl<'a> GroupHom<'a> {
    pub fn source(&self) -> &'a FiniteGroup {
        self.source
    }

    pub fn target(&self) -> &'a FiniteGroup {
        self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn is_injective(&self) -> bool {
        self.images.iter().filter(|&&y| y == 0).count() == 1
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.images.len())
            .filter(|&a| self.images[a] == 0)
            .collect()
    }

    /// Postcomposition with conjugation by `h` in the target.
    pub fn conjugated(&self, h: usize) -> GroupHom<'a> {
        GroupHom {
            source: self.source,
            target: self.target,
            images: self
                .images
                .iter()
                .map(|&y| self.target.conj(h, y))
                .collect(),
        }
    }
}

impl std::fmt::Debug for GroupHom<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GroupHom({} -> {}: {:?})",
            self.source.name(),
            self.target.name(),
            self.images
        )
    }
}

/// Depth-first search over images of `source`'s greedy generators. Images are
/// tried in ascending index order, so the visiting order is lexicographic in
/// the tuple of generator images.
struct HomSearch<'a> {
    source: &'a FiniteGroup,
    target: &'a FiniteGroup,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    images: Vec<usize>,
}

impl<'a> HomSearch<'a> {
    fn new(
        source: &'a FiniteGroup,
        target: &'a FiniteGroup,
        limits: &Limits,
        image_ok: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let gens = source.greedy_generators();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let m = source.element_order(g);
                target
                    .elements()
                    .filter(|&y| m.is_multiple_of(target.element_order(y)) && image_ok(g, y))
                    .collect()
            })
            .collect();
        let projected = candidates
            .iter()
            .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64));
        match projected {
            Some(n) if n <= limits.max_search => {}
            _ => {
                return Err(Error::Limit(format!(
                    "hom search {} -> {} would visit more than {} generator tuples",
                    source.name(),
                    target.name(),
                    limits.max_search
                )))
            }
        }
        let mut images = vec![UNSET; source.order()];
        images[0] = 0;
        Ok(HomSearch {
            source,
            target,
            gens,
            candidates,
            images,
        })
    }

    fn run<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize], &[usize]) -> ControlFlow<()>,
    {
        self.descend(0, &mut Vec::new(), visit)
    }

    fn descend<F>(
        &mut self,
        depth: usize,
        chosen: &mut Vec<usize>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize], &[usize]) -> ControlFlow<()>,
    {
        if depth == self.gens.len() {
            return visit(chosen, &self.images);
        }
        for i in 0..self.candidates[depth].len() {
            let y = self.candidates[depth][i];
            let mut assigned = Vec::new();
            if self.extend(depth, y, &mut assigned) {
                chosen.push(y);
                let flow = self.descend(depth + 1, chosen, visit);
                chosen.pop();
                if flow.is_break() {
                    return flow;
                }
            }
            for a in assigned {
                self.images[a] = UNSET;
            }
        }
        ControlFlow::Continue(())
    }

    fn extend(&mut self, depth: usize, y: usize, assigned: &mut Vec<usize>) -> bool {
        extend_partial_map(
            self.source,
            self.target,
            &self.gens[..=depth],
            y,
            &mut self.images,
            assigned,
        )
    }
}

/// Extends a partial map defined on `<gens[..last]>` by sending the last
/// generator to `y`, closing under right multiplication by the generators.
/// Returns false on the first inconsistency; `assigned` records what to undo.
fn extend_partial_map(
    src: &FiniteGroup,
    tgt: &FiniteGroup,
    gens: &[usize],
    y: usize,
    images: &mut [usize],
    assigned: &mut Vec<usize>,
) -> bool {
    let last = gens.len() - 1;
    let gen_images: Vec<usize> = gens[..last]
        .iter()
        .map(|&g| images[g])
        .chain(std::iter::once(y))
        .collect();
    // old elements only need the new generator; new ones need all of them
    let mut frontier: Vec<(usize, bool)> = (0..src.order())
        .filter(|&a| images[a] != UNSET)
        .map(|a| (a, false))
        .collect();
    while let Some((a, is_new)) = frontier.pop() {
        let first = if is_new { 0 } else { last };
        for j in first..=last {
            let b = src.mul(a, gens[j]);
            let value = tgt.mul(images[a], gen_images[j]);
            if images[b] == UNSET {
                images[b] = value;
                assigned.push(b);
                frontier.push((b, true));
            } else if images[b] != value {
                return false;
            }
        }
    }
    true
}

/// Every homomorphism `source -> target`, each once, in a fixed order.
pub fn enumerate_homs<'a>(
    source: &'a FiniteGroup,
    target: &'a FiniteGroup,
    limits: &Limits,
) -> Result<Vec<GroupHom<'a>>> {
    limits.check_hom_pair(source.order(), target.order())?;
    let mut search = HomSearch::new(source, target, limits, |_, _| true)?;
    let mut out = Vec::new();
    let _ = search.run(&mut |_, images| {
        out.push(GroupHom {
            source,
            target,
            images: images.to_vec(),
        });
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Conjugators that can move a generator-image tuple: non-central elements.
fn moving_conjugators(target: &FiniteGroup) -> Vec<usize> {
    target
        .elements()
        .filter(|&h| !target.is_central(h))
        .collect()
}

/// Whether `tuple` is the lexicographically least member of its orbit under
/// simultaneous conjugation.
fn is_orbit_minimum(target: &FiniteGroup, conjugators: &[usize], tuple: &[usize]) -> bool {
    conjugators.iter().all(|&h| {
        for &y in tuple {
            let c = target.conj(h, y);
            if c != y {
                return c > y;
            }
        }
        true
    })
}

fn count_orbits(
    source: &FiniteGroup,
    target: &FiniteGroup,
    limits: &Limits,
    injective_only: bool,
) -> Result<u64> {
    limits.check_hom_pair(source.order(), target.order())?;
    let mut search = HomSearch::new(source, target, limits, |_, _| true)?;
    if injective_only && !target.order().is_multiple_of(source.order()) {
        return Ok(0);
    }
    let conjugators = moving_conjugators(target);
    let mut count = 0;
    let _ = search.run(&mut |tuple, images| {
        let keep = !injective_only || images.iter().skip(1).all(|&y| y != 0);
        if keep && is_orbit_minimum(target, &conjugators, tuple) {
            count += 1;
        }
        ControlFlow::Continue(())
    });
    Ok(count)
}

/// `|Hom(G, H) / H|`: homomorphisms up to conjugation in the target.
pub fn rep_count(source: &FiniteGroup, target: &FiniteGroup, limits: &Limits) -> Result<u64> {
    count_orbits(source, target, limits, false)
}

/// Injective homomorphisms up to conjugation in the target.
pub fn mono_rep_count(source: &FiniteGroup, target: &FiniteGroup, limits: &Limits) -> Result<u64> {
    count_orbits(source, target, limits, true)
}

/// Brute-force isomorphism test: element-order multisets first, then a
/// search for an injective map between equal-order groups. Only the search
/// budget applies, not the pair budget.
pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<bool> {
    if g.order() != h.order() {
        return Ok(false);
    }
    let mut og = g.element_orders().to_vec();
    let mut oh = h.element_orders().to_vec();
    og.sort_unstable();
    oh.sort_unstable();
    if og != oh || g.is_abelian() != h.is_abelian() {
        return Ok(false);
    }
    let mut search = HomSearch::new(g, h, limits, |x, y| {
        g.element_order(x) == h.element_order(y)
    })?;
    let flow = search.run(&mut |_, images| {
        if images.iter().skip(1).all(|&y| y != 0) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(flow.is_break())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_catalog_group;

    fn g(spec: &str) -> FiniteGroup {
        build_catalog_group(spec, &Limits::default()).unwrap()
    }

    /// All maps source -> target that respect the table; exponential, tiny groups only.
    fn brute_force_homs(source: &FiniteGroup, target: &FiniteGroup) -> Vec<Vec<usize>> {
        let (m, n) = (source.order(), target.order());
        let mut out = Vec::new();
        let total = n.pow(m as u32);
        for code in 0..total {
            let map: Vec<usize> = (0..m).map(|i| (code / n.pow(i as u32)) % n).collect();
            let ok =
                (0..m).all(|a| (0..m).all(|b| map[source.mul(a, b)] == target.mul(map[a], map[b])));
            if ok {
                out.push(map);
            }
        }
        out.sort();
        out
    }

    fn brute_orbits(source: &FiniteGroup, target: &FiniteGroup, injective: bool) -> usize {
        let homs: Vec<Vec<usize>> = brute_force_homs(source, target)
            .into_iter()
            .filter(|m| !injective || m.iter().skip(1).all(|&y| y != 0))
            .collect();
        let mut seen = std::collections::BTreeSet::new();
        let mut orbits = 0;
        for hom in &homs {
            if seen.contains(hom) {
                continue;
            }
            orbits += 1;
            for h in target.elements() {
                seen.insert(hom.iter().map(|&y| target.conj(h, y)).collect::<Vec<_>>());
            }
        }
        orbits
    }

    #[test]
    fn hom_examples() {
        let limits = Limits::default();
        assert_eq!(
            enumerate_homs(&g("C1"), &g("S4"), &limits).unwrap().len(),
            1
        );
        assert_eq!(
            enumerate_homs(&g("C2"), &g("C4"), &limits).unwrap().len(),
            2
        );
        assert_eq!(
            enumerate_homs(&g("C2"), &g("S3"), &limits).unwrap().len(),
            4
        );
    }

    #[test]
    fn matches_brute_force_on_tiny_groups() {
        let tiny = ["C1", "C2", "C3", "C4", "C2xC2", "S3", "C5"];
        for a in tiny {
            for b in tiny {
                let (s, t) = (g(a), g(b));
                if t.order().pow(s.order() as u32) > 2_000_000 {
                    continue;
                }
                let mut fast: Vec<Vec<usize>> = enumerate_homs(&s, &t, &Limits::default())
                    .unwrap()
                    .into_iter()
                    .map(|h| h.images().to_vec())
                    .collect();
                fast.sort();
                assert_eq!(fast, brute_force_homs(&s, &t), "{a} -> {b}");
                assert_eq!(
                    rep_count(&s, &t, &Limits::default()).unwrap() as usize,
                    brute_orbits(&s, &t, false),
                    "rep {a} -> {b}"
                );
                assert_eq!(
                    mono_rep_count(&s, &t, &Limits::default()).unwrap() as usize,
                    brute_orbits(&s, &t, true),
                    "mono {a} -> {b}"
                );
            }
        }
    }

    #[test]
    fn homs_are_homomorphisms_in_deterministic_order() {
        let (s, t) = (g("D4"), g("S4"));
        let limits = Limits::default();
        let homs = enumerate_homs(&s, &t, &limits).unwrap();
        let again = enumerate_homs(&s, &t, &limits).unwrap();
        assert_eq!(homs, again);
        for hom in &homs {
            assert_eq!(hom.apply(0), 0);
            for a in s.elements() {
                for b in s.elements() {
                    assert_eq!(hom.apply(s.mul(a, b)), t.mul(hom.apply(a), hom.apply(b)));
                }
            }
        }
        let mut distinct: Vec<_> = homs.iter().map(|h| h.images().to_vec()).collect();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), homs.len());
    }

    #[test]
    fn rep_count_examples() {
        let limits = Limits::default();
        assert_eq!(rep_count(&g("C1"), &g("D5"), &limits).unwrap(), 1);
        assert_eq!(rep_count(&g("C4"), &g("C4"), &limits).unwrap(), 4);
        assert_eq!(rep_count(&g("C2"), &g("S3"), &limits).unwrap(), 2);
    }

    #[test]
    fn mono_rep_count_examples() {
        let limits = Limits::default();
        assert_eq!(mono_rep_count(&g("C2"), &g("C2"), &limits).unwrap(), 1);
        assert_eq!(mono_rep_count(&g("C4"), &g("C4"), &limits).unwrap(), 2);
        assert_eq!(mono_rep_count(&g("C4"), &g("C2xC2"), &limits).unwrap(), 0);
    }

    #[test]
    fn orbits_partition_homs() {
        let limits = Limits::default();
        for (a, b) in [("C2xC2", "D4"), ("C3", "S4"), ("Q8", "D4"), ("S3", "S3")] {
            let (s, t) = (g(a), g(b));
            let homs = enumerate_homs(&s, &t, &limits).unwrap();
            let mut remaining: std::collections::BTreeSet<Vec<usize>> =
                homs.iter().map(|h| h.images().to_vec()).collect();
            let mut parts = 0;
            for hom in &homs {
                if !remaining.contains(hom.images()) {
                    continue;
                }
                let orbit: std::collections::BTreeSet<Vec<usize>> = t
                    .elements()
                    .map(|h| hom.conjugated(h).images().to_vec())
                    .collect();
                assert_eq!(t.order() % orbit.len(), 0);
                for o in &orbit {
                    assert!(remaining.remove(o));
                }
                parts += 1;
            }
            assert_eq!(parts, rep_count(&s, &t, &limits).unwrap(), "{a} -> {b}");
        }
    }

    #[test]
    fn isomorphism_examples() {
        let limits = Limits::default();
        assert!(is_isomorphic(&g("D4"), &g("D4"), &limits).unwrap());
        assert!(is_isomorphic(&g("C2xC3"), &g("C6"), &limits).unwrap());
        assert!(!is_isomorphic(&g("C4"), &g("C2xC2"), &limits).unwrap());
        assert!(is_isomorphic(&g("D3"), &g("S3"), &limits).unwrap());
        assert!(!is_isomorphic(&g("D4"), &g("Q8"), &limits).unwrap());
        assert!(is_isomorphic(&g("D6"), &g("S3xC2"), &limits).unwrap());
    }

    #[test]
    fn limits_are_enforced() {
        let limits = Limits::default();
        assert!(matches!(
            enumerate_homs(&g("C36"), &g("C36"), &limits),
            Err(Error::Limit(_))
        ));
        let tight = Limits {
            max_search: 3,
            ..Limits::default()
        };
        assert!(matches!(
            rep_count(&g("C2xC2"), &g("C2xC2"), &tight),
            Err(Error::Limit(_))
        ));
    }
}

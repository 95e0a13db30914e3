//! Posets of surjections out of a group, with Möbius inversion.
//!
//! A surjection `G -> T` is identified with its kernel, so the nodes are the
//! normal subgroups of `G`. `T >= S` when `ker T ⊆ ker S`, i.e. when the
//! projection to `S` factors through `T`. Two surjections with the same kernel
//! are the same node even if several maps `T -> S` realize `T >= S`.

use num_traits::Zero;

use crate::groups::{cosets, normal_subgroups, quotient, FiniteGroup, NormalSubgroup};
use crate::rational::Rat;

/// Nodes are ordered by kernel size, then kernel elements, so the top (trivial
/// kernel) is node 0 and the bottom (kernel = base) is the last node.
#[derive(Debug, Clone)]
pub struct QuotientPoset<'g> {
    base: &'g FiniteGroup,
    nodes: Vec<NormalSubgroup<'g>>,
}

impl<'g> QuotientPoset<'g> {
    pub fn base(&self) -> &'g FiniteGroup {
        self.base
    }

    pub fn nodes(&self) -> &[NormalSubgroup<'g>] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn top(&self) -> usize {
        0
    }

    pub fn bottom(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn kernel(&self, node: usize) -> &NormalSubgroup<'g> {
        &self.nodes[node]
    }

    /// `s <= t`
    pub fn leq(&self, s: usize, t: usize) -> bool {
        self.nodes[t].is_subset_of(&self.nodes[s])
    }

    /// The target group of the surjection at `node`.
    pub fn target(&self, node: usize) -> FiniteGroup {
        quotient(self.base, &self.nodes[node]).expect("poset nodes are normal subgroups")
    }
}

pub fn quotient_poset(g: &FiniteGroup) -> QuotientPoset<'_> {
    QuotientPoset {
        base: g,
        nodes: normal_subgroups(g),
    }
}

/// `mu[t][s]` for `s <= t`; zero for incomparable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusData {
    mu: Vec<Vec<i64>>,
}

impl MobiusData {
    pub fn mu(&self, t: usize, s: usize) -> i64 {
        self.mu[t][s]
    }

    pub fn row(&self, t: usize) -> &[i64] {
        &self.mu[t]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.mu
    }
}

/// `mu(t, t) = 1` and `sum_{s <= r <= t} mu(t, r) = 0` for `s < t`.
pub fn mobius(poset: &QuotientPoset<'_>) -> MobiusData {
    let n = poset.len();
    let mut mu = vec![vec![0i64; n]; n];
    for t in 0..n {
        mu[t][t] = 1;
        // larger kernels come later, so walk s downward from t
        for s in (t + 1..n).filter(|&s| poset.leq(s, t)) {
            let partial: i64 = (t..s)
                .filter(|&r| poset.leq(r, t) && poset.leq(s, r))
                .map(|r| mu[t][r])
                .sum();
            mu[t][s] = -partial;
        }
    }
    MobiusData { mu }
}

/// How `mu(t, s)` is shared among the surjections out of `t` that restrict to
/// `s`. Only the sum of the weights matters to the inversion.
pub trait MobiusSplit {
    fn split(&self, total: i64, representatives: usize) -> Vec<i64>;
}

/// Puts all of the weight on the first representative.
#[derive(Debug, Clone, Copy, Default)]
pub struct Concentrated;

impl MobiusSplit for Concentrated {
    fn split(&self, total: i64, representatives: usize) -> Vec<i64> {
        let mut weights = vec![0; representatives];
        if let Some(first) = weights.first_mut() {
            *first = total;
        }
        weights
    }
}

/// Number of normal subgroups of the target at `t` whose preimage in the base
/// is the kernel at `s`: the surjections out of `t` that restrict to `s`.
/// Always 0 or 1, since normal subgroups of `G/N` correspond to normal
/// subgroups of `G` containing `N`.
pub fn restriction_multiplicity(poset: &QuotientPoset<'_>, t: usize, s: usize) -> usize {
    let g = poset.base();
    let (label, _) = cosets(g, poset.kernel(t));
    let target = poset.target(t);
    normal_subgroups(&target)
        .iter()
        .filter(|m| {
            let preimage: Vec<usize> = g.elements().filter(|&a| m.contains(label[a])).collect();
            preimage == poset.kernel(s).elements()
        })
        .count()
}

/// `g(t) = sum_{s <= t} mu(t, s) f(s)`.
pub fn invert(poset: &QuotientPoset<'_>, mobius: &MobiusData, f: &[Rat]) -> Vec<Rat> {
    assert_eq!(f.len(), poset.len(), "one value per poset node");
    (0..poset.len())
        .map(|t| {
            (t..poset.len())
                .filter(|&s| mobius.mu(t, s) != 0)
                .fold(Rat::zero(), |acc, s| {
                    acc + Rat::from_integer(mobius.mu(t, s).into()) * &f[s]
                })
        })
        .collect()
}

/// [`invert`], with each `mu(t, s)` spread over the restricting representatives
/// by `split`.
pub fn invert_with(
    poset: &QuotientPoset<'_>,
    mobius: &MobiusData,
    f: &[Rat],
    split: &impl MobiusSplit,
) -> Vec<Rat> {
    assert_eq!(f.len(), poset.len(), "one value per poset node");
    (0..poset.len())
        .map(|t| {
            let mut total = Rat::zero();
            for s in (t..poset.len()).filter(|&s| poset.leq(s, t)) {
                let reps = restriction_multiplicity(poset, t, s);
                for w in split.split(mobius.mu(t, s), reps) {
                    total += Rat::from_integer(w.into()) * &f[s];
                }
            }
            total
        })
        .collect()
}

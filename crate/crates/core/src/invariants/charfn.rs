use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::Result;
use crate::groups::{canonical_key, CanonicalKey, FiniteGroup};
use crate::limits::Limits;
use crate::posets::{mobius, quotient_poset};
use crate::rational::Rat;
use crate::spaces::SpaceExpr;

use super::basis::{BasisElement, BasisFunction};
use super::cache::{cached_rep_count, Memo, PairKey};

/// How a characteristic function's value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Structural recursion with a closed-form leaf rule.
    DirectStructural,
    /// A rational combination of the `δ⁰_K`.
    DeltaCombination,
    /// Rational Euler characteristic plus per-prime projections.
    Assembly,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::DirectStructural => "direct-structural",
            Strategy::DeltaCombination => "delta-combination",
            Strategy::Assembly => "assembly",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One building block of a [`CharFunction`].
#[derive(Debug, Clone)]
pub enum Atom {
    /// `χ_K`: leaf `BH` is worth `rep(K, H)`.
    Chi(Arc<FiniteGroup>),
    /// `δ⁰_K`: leaf `BH` is worth the injective `K -> H` up to conjugation.
    Delta0(Arc<FiniteGroup>),
}

impl Atom {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        match self {
            Atom::Chi(k) | Atom::Delta0(k) => k,
        }
    }

    fn leaf_value(&self, h: &FiniteGroup, limits: &Limits) -> Result<Rat> {
        let v = match self {
            Atom::Chi(k) => cached_rep_count(k, h, limits)? as i64,
            Atom::Delta0(k) => delta0_value(k, h, limits)?,
        };
        Ok(Rat::from_integer(v.into()))
    }
}

/// A finite rational combination of atoms, evaluated by structural recursion.
/// Additivity over pushouts and `f(∅) = 0` hold for every such function; a
/// point is evaluated as the classifying space of the trivial group.
#[derive(Debug, Clone)]
pub struct CharFunction {
    terms: Vec<(Rat, Atom)>,
    strategy: Strategy,
}

impl CharFunction {
    pub fn new(terms: Vec<(Rat, Atom)>, strategy: Strategy) -> Self {
        let terms = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        CharFunction { terms, strategy }
    }

    pub fn chi(k: impl Into<Arc<FiniteGroup>>) -> Self {
        Self::new(
            vec![(Rat::from_integer(1.into()), Atom::Chi(k.into()))],
            Strategy::DirectStructural,
        )
    }

    /// `Σ c_i δ⁰_{K_i}` over the given basis coefficients.
    pub fn from_coefficients(coefficients: &[(BasisElement, Rat)]) -> Self {
        Self::new(
            coefficients
                .iter()
                .map(|(e, c)| (c.clone(), Atom::Delta0(e.group())))
                .collect(),
            Strategy::DeltaCombination,
        )
    }

    pub fn terms(&self) -> &[(Rat, Atom)] {
        &self.terms
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn leaf_value(&self, h: &FiniteGroup, limits: &Limits) -> Result<Rat> {
        self.terms.iter().try_fold(Rat::zero(), |acc, (c, atom)| {
            Ok(acc + c * atom.leaf_value(h, limits)?)
        })
    }

    pub fn evaluate(&self, x: &SpaceExpr, limits: &Limits) -> Result<Rat> {
        let point = self.leaf_value(&FiniteGroup::trivial(), limits)?;
        x.evaluate_additive(&Rat::zero(), &point, &mut |g| self.leaf_value(g, limits))
    }
}

/// `(μ, target)` pairs: `δ = Σ μ · χ_target`.
type Expansion = Vec<(i64, Arc<FiniteGroup>)>;

static EXPANSIONS: Memo<CanonicalKey, Arc<Expansion>> = Memo::new();
static DELTA_VALUES: Memo<PairKey, i64> = Memo::new();

/// Highest level at which an aspherical space has homotopy.
const TOP_LEVEL: usize = 1;

/// `δ^level_K` as a combination of `χ`. Each level inverts the one above over
/// the poset of surjections at that level. For `BK` every poset other than
/// the one at level 1 has a single node, so those levels pass through.
fn expansion_at(k: &Arc<FiniteGroup>, level: usize) -> Expansion {
    if level > TOP_LEVEL {
        return vec![(1, k.clone())];
    }
    if level != 1 {
        return expansion_at(k, level + 1);
    }
    let poset = quotient_poset(k);
    let mu = mobius(&poset);
    let mut out: Expansion = Vec::new();
    for node in 0..poset.len() {
        let m = mu.mu(poset.top(), node);
        if m == 0 {
            continue;
        }
        let target = Arc::new(poset.target(node));
        for (c, g) in expansion_at(&target, level + 1) {
            out.push((m * c, g));
        }
    }
    out
}

fn delta0_expansion(k: &Arc<FiniteGroup>, limits: &Limits) -> Result<Arc<Expansion>> {
    limits.check_order(k.order(), "δ⁰ source group")?;
    EXPANSIONS.get_or_try(canonical_key(k), || Ok(Arc::new(expansion_at(k, 0))))
}

/// `δ⁰_K = Σ_{N ⊴ K} μ(K, K/N) · χ_{K/N}`.
pub fn delta0(k: impl Into<Arc<FiniteGroup>>, limits: &Limits) -> Result<CharFunction> {
    let k = k.into();
    let terms = delta0_expansion(&k, limits)?
        .iter()
        .map(|(m, q)| (Rat::from_integer((*m).into()), Atom::Chi(q.clone())))
        .collect();
    Ok(CharFunction::new(terms, Strategy::DeltaCombination))
}

/// `δ⁰_K(BH)`, cached up to isomorphism of `K` and `H`.
pub fn delta0_value(k: &Arc<FiniteGroup>, h: &FiniteGroup, limits: &Limits) -> Result<i64> {
    limits.check_hom_pair(k.order(), h.order())?;
    DELTA_VALUES.get_or_try((canonical_key(k), canonical_key(h)), || {
        delta0_expansion(k, limits)?
            .iter()
            .try_fold(0i64, |acc, (m, q)| {
                Ok(acc + m * cached_rep_count(q, h, limits)? as i64)
            })
    })
}

/// Coefficients `c_i` with `Σ c_i δ⁰_{K_i}(B K_j) = f(K_j)` for every `j`,
/// found by forward substitution: `δ⁰_{K_i}(B K_j) = 0` whenever `i > j`.
pub fn solve_basis_coefficients(
    f: &BasisFunction,
    limits: &Limits,
) -> Result<Vec<(BasisElement, Rat)>> {
    let groups: Vec<Arc<FiniteGroup>> = f.entries().iter().map(|(e, _)| e.group()).collect();
    let mut coefficients: Vec<(BasisElement, Rat)> = Vec::with_capacity(groups.len());
    for (n, (element, value)) in f.entries().iter().enumerate() {
        let diagonal = delta0_value(&groups[n], &groups[n], limits)?;
        assert!(diagonal > 0, "δ⁰_K(BK) is a positive count for {element}");
        let mut rest = value.clone();
        for (i, (_, c)) in coefficients.iter().enumerate() {
            if !c.is_zero() {
                rest -= c * Rat::from_integer(delta0_value(&groups[i], &groups[n], limits)?.into());
            }
        }
        let c = rest / Rat::from_integer(diagonal.into());
        coefficients.push((element.clone(), c));
    }
    Ok(coefficients)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::groups::{build_catalog_group, mono_rep_count};
    use crate::rational::{int, ratio};
    use crate::spaces::parse;

    fn g(spec: &str) -> Arc<FiniteGroup> {
        Arc::new(build_catalog_group(spec, &Limits::default()).unwrap())
    }

    fn elem(spec: &str) -> BasisElement {
        BasisElement::from_group(g(spec)).unwrap()
    }

    #[test]
    fn delta0_examples() {
        let limits = Limits::default();
        let trivial = delta0(g("C1"), &limits).unwrap();
        for text in ["point", "B(C6)", "wedge(B(Q8), susp(B(C3)))", "empty"] {
            let x = parse(text, &limits).unwrap();
            assert_eq!(
                trivial.evaluate(&x, &limits).unwrap(),
                crate::invariants::chi_k(&g("C1"), &x, &limits).unwrap()
            );
        }
        let c4 = delta0(g("C4"), &limits).unwrap();
        assert_eq!(c4.leaf_value(&g("C4"), &limits).unwrap(), int(2));
        assert_eq!(c4.leaf_value(&g("C2"), &limits).unwrap(), int(0));
        assert_eq!(
            c4.leaf_value(&FiniteGroup::trivial(), &limits).unwrap(),
            int(0)
        );
        assert_eq!(c4.terms().len(), 2);
    }

    #[test]
    fn delta0_matches_injective_counts() {
        let limits = Limits::default();
        let specs = [
            "C1", "C2", "C4", "C2xC2", "C8", "D4", "Q8", "C3", "S3", "C6",
        ];
        for k in specs {
            for h in specs {
                let (k, h) = (g(k), g(h));
                assert_eq!(
                    delta0_value(&k, &h, &limits).unwrap(),
                    mono_rep_count(&k, &h, &limits).unwrap() as i64,
                    "{k} -> {h}"
                );
            }
        }
    }

    #[test]
    fn level_scaffolding_collapses() {
        let k = g("D4");
        assert_eq!(expansion_at(&k, 2).len(), 1);
        let zero: Vec<(i64, CanonicalKey)> = expansion_at(&k, 0)
            .iter()
            .map(|(m, q)| (*m, canonical_key(q)))
            .collect();
        let one: Vec<(i64, CanonicalKey)> = expansion_at(&k, 1)
            .iter()
            .map(|(m, q)| (*m, canonical_key(q)))
            .collect();
        assert_eq!(zero, one);
    }

    #[test]
    fn solver_examples() {
        let limits = Limits::default();
        let f = BasisFunction::new(vec![(BasisElement::Star, int(1))]).unwrap();
        let c = solve_basis_coefficients(&f, &limits).unwrap();
        assert_eq!(c[0].1, int(1));

        let f = BasisFunction::new(vec![
            (BasisElement::Star, int(1)),
            (elem("C2"), ratio(1, 2)),
        ])
        .unwrap();
        let c = solve_basis_coefficients(&f, &limits).unwrap();
        assert_eq!(
            c.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>(),
            vec![int(1), ratio(-1, 2)]
        );

        let mut zero_table = crate::invariants::BasisTable::new();
        for s in ["C2", "C4", "C2xC2", "D4", "Q8"] {
            zero_table.insert(elem(s), int(0));
        }
        let elements = zero_table.iter().map(|(e, _)| e.clone()).collect();
        let zero = BasisFunction::from_values(elements, &zero_table).unwrap();
        assert!(solve_basis_coefficients(&zero, &limits)
            .unwrap()
            .iter()
            .all(|(_, c)| c.is_zero()));
    }

    #[test]
    fn solver_reproduces_baez_dolan() {
        let limits = Limits::default();
        let specs = [
            "C1", "C2", "C4", "C2xC2", "C8", "C4xC2", "C2xC2xC2", "D4", "Q8",
        ];
        let mut elements: Vec<BasisElement> = specs.iter().map(|s| elem(s)).collect();
        elements.sort();
        let f = BasisFunction::from_values(elements.clone(), &super::super::BaezDolan).unwrap();
        let chi = CharFunction::from_coefficients(&solve_basis_coefficients(&f, &limits).unwrap());
        assert_eq!(chi.strategy(), Strategy::DeltaCombination);
        for e in &elements {
            assert_eq!(
                chi.leaf_value(&e.group(), &limits).unwrap(),
                ratio(1, e.order() as i64),
                "{e}"
            );
        }
        assert_eq!(
            chi.evaluate(&parse("point", &limits).unwrap(), &limits)
                .unwrap(),
            int(1)
        );
    }

    #[test]
    fn limits_apply_before_caches() {
        let small = Limits {
            max_hom_pair: 8,
            ..Limits::default()
        };
        assert!(delta0_value(&g("C4"), &g("C4"), &Limits::default()).is_ok());
        assert!(matches!(
            delta0_value(&g("C4"), &g("C4"), &small),
            Err(Error::Limit(_))
        ));
        let tiny = Limits::default().with_max_order(2);
        assert!(matches!(delta0(g("C4"), &tiny), Err(Error::Limit(_))));
    }
}

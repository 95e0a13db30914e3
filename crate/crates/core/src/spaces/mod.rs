//! Expressions for spaces glued from classifying spaces by homotopy pushouts.
//!
//! A pushout node stores only its three spaces `(A; B; C)`, meaning `B ∪_A C`,
//! and not the maps. Every characteristic-function value and every K₀ class
//! depends on the objects alone, through `f(A) + f(D) = f(B) + f(C)`, which is
//! what keeps the calculus finite.

mod k0;
mod parser;

use std::fmt;
use std::sync::Arc;

use crate::groups::FiniteGroup;

pub use k0::{k0_class, pair, torsion_support, K0Class, K0ClassJson, K0GroupTerm};
pub use parser::parse;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceExpr {
    Empty,
    Point,
    /// `BG`
    Classifying(Arc<FiniteGroup>),
    /// `(A, B, C)` for `B ∪_A C`.
    Pushout(Box<SpaceExpr>, Box<SpaceExpr>, Box<SpaceExpr>),
    Disjoint(Vec<SpaceExpr>),
    Susp(Box<SpaceExpr>),
    Wedge(Box<SpaceExpr>, Box<SpaceExpr>),
}

impl SpaceExpr {
    pub fn bg(group: impl Into<Arc<FiniteGroup>>) -> Self {
        SpaceExpr::Classifying(group.into())
    }

    pub fn pushout(corner: SpaceExpr, left: SpaceExpr, right: SpaceExpr) -> Self {
        SpaceExpr::Pushout(Box::new(corner), Box::new(left), Box::new(right))
    }

    pub fn susp(x: SpaceExpr) -> Self {
        SpaceExpr::Susp(Box::new(x))
    }

    pub fn wedge(x: SpaceExpr, y: SpaceExpr) -> Self {
        SpaceExpr::Wedge(Box::new(x), Box::new(y))
    }

    /// `S^n` as the n-fold suspension of two points.
    pub fn sphere(n: usize) -> Self {
        (0..n).fold(
            SpaceExpr::Disjoint(vec![SpaceExpr::Point, SpaceExpr::Point]),
            |x, _| SpaceExpr::susp(x),
        )
    }

    /// Rewrites `susp(X)` as `pushout(X; point; point)`, `wedge(X, Y)` as
    /// `pushout(point; X; Y)` and `disjoint(X, Y, ...)` as pushouts over
    /// `empty`, leaving only empty, point, leaves and pushouts.
    pub fn desugar(&self) -> SpaceExpr {
        match self {
            SpaceExpr::Empty | SpaceExpr::Point | SpaceExpr::Classifying(_) => self.clone(),
            SpaceExpr::Pushout(a, b, c) => {
                SpaceExpr::pushout(a.desugar(), b.desugar(), c.desugar())
            }
            SpaceExpr::Susp(x) => {
                SpaceExpr::pushout(x.desugar(), SpaceExpr::Point, SpaceExpr::Point)
            }
            SpaceExpr::Wedge(x, y) => {
                SpaceExpr::pushout(SpaceExpr::Point, x.desugar(), y.desugar())
            }
            SpaceExpr::Disjoint(children) => {
                let mut parts = children.iter().map(SpaceExpr::desugar);
                let first = parts.next().unwrap_or(SpaceExpr::Empty);
                parts.fold(first, |acc, x| SpaceExpr::pushout(SpaceExpr::Empty, acc, x))
            }
        }
    }

    pub fn is_desugared(&self) -> bool {
        match self {
            SpaceExpr::Empty | SpaceExpr::Point | SpaceExpr::Classifying(_) => true,
            SpaceExpr::Pushout(a, b, c) => a.is_desugared() && b.is_desugared() && c.is_desugared(),
            _ => false,
        }
    }

    /// Every `BG` leaf, left to right.
    pub fn leaves(&self) -> Vec<&Arc<FiniteGroup>> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Arc<FiniteGroup>>) {
        match self {
            SpaceExpr::Empty | SpaceExpr::Point => {}
            SpaceExpr::Classifying(g) => out.push(g),
            SpaceExpr::Pushout(a, b, c) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
                c.collect_leaves(out);
            }
            SpaceExpr::Disjoint(xs) => xs.iter().for_each(|x| x.collect_leaves(out)),
            SpaceExpr::Susp(x) => x.collect_leaves(out),
            SpaceExpr::Wedge(x, y) => {
                x.collect_leaves(out);
                y.collect_leaves(out);
            }
        }
    }

    /// Replaces every leaf by the expression `f` returns for it.
    pub fn map_leaves<E>(
        &self,
        f: &mut impl FnMut(&Arc<FiniteGroup>) -> Result<SpaceExpr, E>,
    ) -> Result<SpaceExpr, E> {
        Ok(match self {
            SpaceExpr::Empty | SpaceExpr::Point => self.clone(),
            SpaceExpr::Classifying(g) => f(g)?,
            SpaceExpr::Pushout(a, b, c) => {
                SpaceExpr::pushout(a.map_leaves(f)?, b.map_leaves(f)?, c.map_leaves(f)?)
            }
            SpaceExpr::Disjoint(xs) => SpaceExpr::Disjoint(
                xs.iter()
                    .map(|x| x.map_leaves(f))
                    .collect::<Result<_, _>>()?,
            ),
            SpaceExpr::Susp(x) => SpaceExpr::susp(x.map_leaves(f)?),
            SpaceExpr::Wedge(x, y) => SpaceExpr::wedge(x.map_leaves(f)?, y.map_leaves(f)?),
        })
    }

    /// Evaluates an additive invariant on the desugared expression:
    /// empty is `zero`, a point is `point`, a leaf is `leaf(G)`, and
    /// `B ∪_A C` is `f(B) + f(C) - f(A)`.
    pub fn evaluate_additive<V, E>(
        &self,
        zero: &V,
        point: &V,
        leaf: &mut impl FnMut(&Arc<FiniteGroup>) -> Result<V, E>,
    ) -> Result<V, E>
    where
        V: Clone + std::ops::Add<Output = V> + std::ops::Sub<Output = V>,
    {
        fn go<V, E>(
            x: &SpaceExpr,
            zero: &V,
            point: &V,
            leaf: &mut impl FnMut(&Arc<FiniteGroup>) -> Result<V, E>,
        ) -> Result<V, E>
        where
            V: Clone + std::ops::Add<Output = V> + std::ops::Sub<Output = V>,
        {
            match x {
                SpaceExpr::Empty => Ok(zero.clone()),
                SpaceExpr::Point => Ok(point.clone()),
                SpaceExpr::Classifying(g) => leaf(g),
                SpaceExpr::Pushout(a, b, c) => {
                    let fa = go(a, zero, point, leaf)?;
                    let fb = go(b, zero, point, leaf)?;
                    let fc = go(c, zero, point, leaf)?;
                    Ok(fb + fc - fa)
                }
                _ => unreachable!("desugared expressions have no sugar nodes"),
            }
        }
        let core = if self.is_desugared() {
            std::borrow::Cow::Borrowed(self)
        } else {
            std::borrow::Cow::Owned(self.desugar())
        };
        go(&core, zero, point, leaf)
    }
}

/// Prints the expression in the same syntax [`parse`] reads.
impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Empty => f.write_str("empty"),
            SpaceExpr::Point => f.write_str("point"),
            SpaceExpr::Classifying(g) => write!(f, "B({})", g.name()),
            SpaceExpr::Pushout(a, b, c) => write!(f, "pushout({a}; {b}; {c})"),
            SpaceExpr::Disjoint(xs) => {
                f.write_str("disjoint(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            SpaceExpr::Susp(x) => write!(f, "susp({x})"),
            SpaceExpr::Wedge(x, y) => write!(f, "wedge({x}, {y})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::cyclic;

    #[test]
    fn desugaring_rules() {
        let x = SpaceExpr::bg(cyclic(2).unwrap());
        assert_eq!(
            SpaceExpr::susp(x.clone()).desugar(),
            SpaceExpr::pushout(x.clone(), SpaceExpr::Point, SpaceExpr::Point)
        );
        assert_eq!(
            SpaceExpr::wedge(x.clone(), SpaceExpr::Point).desugar(),
            SpaceExpr::pushout(SpaceExpr::Point, x.clone(), SpaceExpr::Point)
        );
        let three = SpaceExpr::Disjoint(vec![SpaceExpr::Point, x.clone(), SpaceExpr::Empty]);
        assert_eq!(
            three.desugar(),
            SpaceExpr::pushout(
                SpaceExpr::Empty,
                SpaceExpr::pushout(SpaceExpr::Empty, SpaceExpr::Point, x.clone()),
                SpaceExpr::Empty
            )
        );
        assert!(SpaceExpr::sphere(4).desugar().is_desugared());
        assert!(!SpaceExpr::sphere(1).is_desugared());
    }

    #[test]
    fn euler_characteristic_of_spheres() {
        for n in 0..=10 {
            let chi = SpaceExpr::sphere(n)
                .evaluate_additive(&0i64, &1i64, &mut |_| Ok::<i64, ()>(1))
                .unwrap();
            assert_eq!(chi, if n % 2 == 0 { 2 } else { 0 }, "S^{n}");
        }
    }

    #[test]
    fn display() {
        let x = SpaceExpr::pushout(
            SpaceExpr::bg(cyclic(6).unwrap()),
            SpaceExpr::bg(cyclic(2).unwrap()),
            SpaceExpr::wedge(SpaceExpr::Point, SpaceExpr::Empty),
        );
        assert_eq!(x.to_string(), "pushout(B(C6); B(C2); wedge(point, empty))");
        assert_eq!(
            SpaceExpr::sphere(1).to_string(),
            "susp(disjoint(point, point))"
        );
    }
}

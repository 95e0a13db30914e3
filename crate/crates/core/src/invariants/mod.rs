//! Characteristic functions: functions on spaces with `f(∅) = 0` and
//! `f(A) + f(D) = f(B) + f(C)` for every pushout `D = B ∪_A C`.
//!
//! Values are exact rationals. A characteristic function is determined by its
//! values on the basis `[*]`, `[BG]` (G a nontrivial p-group), and the
//! functions `δ⁰_K` built here by Möbius inversion are triangular with respect
//! to that basis, which is what makes the coefficient solver work.

mod assembly;
mod basis;
mod cache;
mod charfn;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Result;
use crate::groups::FiniteGroup;
use crate::limits::Limits;
use crate::rational::{int, Rat};
use crate::spaces::SpaceExpr;

pub use assembly::{evaluate_assembled, evaluate_leafwise, project_prime, AssemblyReport};
pub use basis::{BaezDolan, BasisElement, BasisFunction, BasisTable, BasisValueEntry, BasisValues};
pub use charfn::{delta0, delta0_value, solve_basis_coefficients, Atom, CharFunction, Strategy};

/// `|π₂||π₄|··· / |π₁||π₃|···` for a connected space with the given homotopy
/// group orders, starting at `π₁`.
pub fn homotopy_cardinality(orders: &[u64]) -> Rat {
    assert!(
        orders.iter().all(|&n| n >= 1),
        "homotopy group orders are positive"
    );
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (i, &n) in orders.iter().enumerate() {
        if i % 2 == 0 {
            den *= n;
        } else {
            num *= n;
        }
    }
    Rat::new(num, den)
}

/// `χ_K`: a leaf `BG` is worth the number of homomorphisms `K -> G` up to
/// conjugation in `G`.
pub fn chi_k(k: &FiniteGroup, x: &SpaceExpr, limits: &Limits) -> Result<Rat> {
    CharFunction::chi(k.clone()).evaluate(x, limits)
}

/// Euler characteristic of rational homology: every leaf is rationally a point.
pub fn rational_euler(x: &SpaceExpr) -> Rat {
    let chi: Result<i64, std::convert::Infallible> = x.evaluate_additive(&0, &1, &mut |_| Ok(1));
    match chi {
        Ok(v) => int(v),
        Err(never) => match never {},
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_catalog_group;
    use crate::rational::ratio;
    use crate::spaces::parse;

    fn x(text: &str) -> SpaceExpr {
        parse(text, &Limits::default()).unwrap()
    }

    fn g(spec: &str) -> FiniteGroup {
        build_catalog_group(spec, &Limits::default()).unwrap()
    }

    #[test]
    fn homotopy_cardinality_examples() {
        assert_eq!(homotopy_cardinality(&[]), int(1));
        assert_eq!(homotopy_cardinality(&[2]), ratio(1, 2));
        assert_eq!(homotopy_cardinality(&[2, 4, 8]), ratio(1, 4));
        assert_eq!(homotopy_cardinality(&[1, 3]), int(3));
    }

    #[test]
    fn chi_k_examples() {
        let limits = Limits::default();
        assert_eq!(chi_k(&g("C2"), &x("B(C4)"), &limits).unwrap(), int(2));
        assert_eq!(
            chi_k(&g("C2"), &x("pushout(point; point; B(C4))"), &limits).unwrap(),
            int(2)
        );
        for text in [
            "B(Q8)",
            "wedge(B(C3), B(C5))",
            "susp(susp(disjoint(point, point)))",
        ] {
            assert_eq!(
                chi_k(&g("C1"), &x(text), &limits).unwrap(),
                rational_euler(&x(text)),
                "{text}"
            );
        }
        assert_eq!(chi_k(&g("C1"), &x("empty"), &limits).unwrap(), int(0));
        // conjugacy classes of S3
        assert_eq!(chi_k(&g("C2"), &x("B(S3)"), &limits).unwrap(), int(2));
    }

    #[test]
    fn rational_euler_examples() {
        assert_eq!(rational_euler(&x("B(C6)")), int(1));
        assert_eq!(rational_euler(&x("empty")), int(0));
        assert_eq!(
            rational_euler(&x("susp(susp(disjoint(point, point)))")),
            int(2)
        );
        assert_eq!(rational_euler(&x("disjoint(B(S3), B(C2), point)")), int(3));
    }
}

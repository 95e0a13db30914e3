use std::sync::Arc;

use eulerk::groups::{
    build_catalog_group, mono_rep_count, normal_subgroups, quotient, rep_count, FiniteGroup,
};
use eulerk::invariants::{
    chi_k, delta0, evaluate_assembled, evaluate_leafwise, homotopy_cardinality, rational_euler,
    BaezDolan, BasisElement, BasisTable, CharFunction,
};
use eulerk::posets::{invert, mobius, quotient_poset};
use eulerk::rational::{int, ratio, Rat};
use eulerk::spaces::{k0_class, pair, parse, SpaceExpr};
use eulerk::verify::assembly_pool;
use eulerk::Limits;
use proptest::prelude::*;

fn group(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(build_catalog_group(spec, &Limits::default()).unwrap())
}

fn pool() -> Vec<Arc<FiniteGroup>> {
    assembly_pool()
        .unwrap()
        .into_iter()
        .map(|l| l.group)
        .collect()
}

fn expr_strategy(depth: u32) -> impl Strategy<Value = SpaceExpr> {
    let leaf = prop_oneof![
        1 => Just(SpaceExpr::Empty),
        2 => Just(SpaceExpr::Point),
        8 => prop::sample::select(pool()).prop_map(SpaceExpr::Classifying),
    ];
    leaf.prop_recursive(depth, 48, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone(), inner.clone())
                .prop_map(|(a, b, c)| SpaceExpr::pushout(a, b, c)),
            prop::collection::vec(inner.clone(), 1..4).prop_map(SpaceExpr::Disjoint),
            inner.clone().prop_map(SpaceExpr::susp),
            (inner.clone(), inner).prop_map(|(x, y)| SpaceExpr::wedge(x, y)),
        ]
    })
}

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

/// Values on `*` and every Sylow subgroup of the pool.
fn values_strategy() -> impl Strategy<Value = BasisTable> {
    let mut elements = vec![BasisElement::Star];
    for g in pool() {
        for part in eulerk::groups::sylow_decomposition(&g).subgroups().values() {
            elements.push(BasisElement::from_group(part.clone()).unwrap());
        }
    }
    elements.sort();
    elements.dedup();
    prop::collection::vec(rat_strategy(), elements.len()).prop_map(move |vals| {
        let mut table = BasisTable::new();
        for (e, v) in elements.iter().zip(vals) {
            table.insert(e.clone(), v);
        }
        table
    })
}

fn pushout_parts(x: &SpaceExpr) -> Vec<(SpaceExpr, SpaceExpr, SpaceExpr)> {
    let mut out = Vec::new();
    fn walk(x: &SpaceExpr, out: &mut Vec<(SpaceExpr, SpaceExpr, SpaceExpr)>) {
        if let SpaceExpr::Pushout(a, b, c) = x {
            out.push(((**a).clone(), (**b).clone(), (**c).clone()));
            walk(a, out);
            walk(b, out);
            walk(c, out);
        }
    }
    walk(&x.desugar(), &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mobius_round_trip(
        spec in prop::sample::select(vec!["C4", "C2xC2", "D4", "Q8", "C6", "S3", "C2xC2xC2", "C3xC3", "C12"]),
        seed in prop::collection::vec(-20i64..=20, 40),
    ) {
        let g = group(spec);
        let poset = quotient_poset(&g);
        let mu = mobius(&poset);
        let n = poset.len();
        let h: Vec<Rat> = (0..n).map(|i| int(seed[i % seed.len()])).collect();
        // f(t) = Σ_{s <= t} h(s)
        let f: Vec<Rat> = (0..n)
            .map(|t| (0..n).filter(|&s| poset.leq(s, t)).map(|s| h[s].clone()).sum())
            .collect();
        prop_assert_eq!(invert(&poset, &mu, &f), h);
    }

    #[test]
    fn parse_print_parse(x in expr_strategy(5)) {
        let limits = Limits::default();
        let text = x.to_string();
        let back = parse(&text, &limits).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn additivity_over_every_pushout(x in expr_strategy(4), values in values_strategy()) {
        let limits = Limits::default();
        let k = group("C2");
        let delta = delta0(group("C4"), &limits).unwrap();
        for (a, b, c) in pushout_parts(&x) {
            let d = SpaceExpr::pushout(a.clone(), b.clone(), c.clone());
            let assembled = |y: &SpaceExpr| evaluate_assembled(&values, y, &limits).unwrap().value;
            prop_assert_eq!(assembled(&a) + assembled(&d), assembled(&b) + assembled(&c));
            let chi = |y: &SpaceExpr| chi_k(&k, y, &limits).unwrap();
            prop_assert_eq!(chi(&a) + chi(&d), chi(&b) + chi(&c));
            prop_assert_eq!(
                rational_euler(&a) + rational_euler(&d),
                rational_euler(&b) + rational_euler(&c)
            );
            let dv = |y: &SpaceExpr| delta.evaluate(y, &limits).unwrap();
            prop_assert_eq!(dv(&a) + dv(&d), dv(&b) + dv(&c));
            let class = |y: &SpaceExpr| k0_class(y).unwrap();
            prop_assert_eq!(class(&d), class(&b) + class(&c) - class(&a));
        }
        let empty = SpaceExpr::Empty;
        prop_assert_eq!(evaluate_assembled(&values, &empty, &limits).unwrap().value, int(0));
    }

    #[test]
    fn desugaring_is_sound(x in expr_strategy(5), values in values_strategy()) {
        let limits = Limits::default();
        let d = x.desugar();
        prop_assert!(d.is_desugared());
        prop_assert_eq!(rational_euler(&x), rational_euler(&d));
        prop_assert_eq!(k0_class(&x).unwrap(), k0_class(&d).unwrap());
        prop_assert_eq!(
            evaluate_leafwise(&values, &x).unwrap(),
            evaluate_leafwise(&values, &d).unwrap()
        );
        prop_assert_eq!(
            evaluate_assembled(&values, &x, &limits).unwrap(),
            evaluate_assembled(&values, &d, &limits).unwrap()
        );
        let chi = CharFunction::chi(group("C3"));
        prop_assert_eq!(chi.evaluate(&x, &limits).unwrap(), chi.evaluate(&d, &limits).unwrap());
    }

    #[test]
    fn pairing_matches_assembly(x in expr_strategy(6), values in values_strategy()) {
        let limits = Limits::default();
        let class = k0_class(&x).unwrap();
        let report = evaluate_assembled(&values, &x, &limits).unwrap();
        prop_assert_eq!(&pair(&class, &values).unwrap(), &report.value);
        prop_assert_eq!(&evaluate_leafwise(&values, &x).unwrap(), &report.value);
        let projected: Vec<u64> = report.per_prime.keys().copied().collect();
        let support: Vec<u64> = class.primes().into_iter().collect();
        prop_assert_eq!(projected, support);
    }

    #[test]
    fn baez_dolan_on_p_group_leaves(g in prop::sample::select(pool())) {
        let limits = Limits::default();
        if g.p_group_prime().is_some() {
            let v = evaluate_assembled(&BaezDolan, &SpaceExpr::Classifying(g.clone()), &limits)
                .unwrap()
                .value;
            prop_assert_eq!(v, homotopy_cardinality(&[g.order() as u64]));
        }
    }

    #[test]
    fn factorization_identity(
        a in prop::sample::select(vec!["C1", "C2", "C4", "C2xC2", "S3", "D4", "Q8", "C6", "C8", "D5"]),
        b in prop::sample::select(vec!["C1", "C2", "C3", "C4", "C2xC2", "S3", "D4", "Q8", "C6", "C12", "D6"]),
    ) {
        let limits = Limits::default();
        let (g, h) = (group(a), group(b));
        let total = rep_count(&g, &h, &limits).unwrap();
        let split: u64 = normal_subgroups(&g)
            .iter()
            .map(|n| mono_rep_count(&quotient(&g, n).unwrap(), &h, &limits).unwrap())
            .sum();
        prop_assert_eq!(total, split);
    }
}

#[test]
fn isomorphic_leaves_give_equal_classes() {
    let limits = Limits::default();
    let a = k0_class(&parse("wedge(B(C2xC3), susp(B(C2xC2)))", &limits).unwrap()).unwrap();
    let b = k0_class(&parse("wedge(B(C6), susp(B(D2)))", &limits).unwrap()).unwrap();
    assert_eq!(a, b);
}

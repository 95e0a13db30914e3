//! Verification suites shared by the `verify` command and the test suite.
//!
//! Each suite runs a fixed, seeded battery of exact checks and reports how many
//! passed along with the first counterexample. Suites carry their own size
//! budgets, so results do not depend on command-line limits.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groups::{
    build_catalog_group, heisenberg, metacyclic, mono_rep_count, normal_subgroups, quotient,
    rep_count, sylow_decomposition, FiniteGroup,
};
use crate::invariants::{
    chi_k, delta0, evaluate_assembled, evaluate_leafwise, rational_euler, solve_basis_coefficients,
    BaezDolan, BasisElement, BasisFunction, BasisTable, BasisValues, CharFunction,
};
use crate::limits::Limits;
use crate::rational::{int, ratio, Rat};
use crate::spaces::{k0_class, pair, SpaceExpr};

pub const SEED: u64 = 0x5eed_e1e7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    DeltaOracle,
    Reconstruction,
    Assembly,
    FibrationFailure,
    Wall,
    Golden,
    Factorization,
    Spheres,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Golden,
        Suite::DeltaOracle,
        Suite::Factorization,
        Suite::Reconstruction,
        Suite::Assembly,
        Suite::Spheres,
        Suite::FibrationFailure,
        Suite::Wall,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DeltaOracle => "delta-oracle",
            Suite::Reconstruction => "reconstruction",
            Suite::Assembly => "assembly",
            Suite::FibrationFailure => "fibration-failure",
            Suite::Wall => "wall",
            Suite::Golden => "golden",
            Suite::Factorization => "factorization",
            Suite::Spheres => "spheres",
        }
    }

    pub fn run(self) -> Result<SuiteReport> {
        match self {
            Suite::DeltaOracle => delta_oracle(),
            Suite::Reconstruction => reconstruction(100, SEED),
            Suite::Assembly => assembly(200, 6, SEED),
            Suite::FibrationFailure => fibration_failure(),
            Suite::Wall => wall(),
            Suite::Golden => golden(),
            Suite::Factorization => factorization(),
            Suite::Spheres => spheres(10),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::Value(format!(
                    "unknown suite `{s}`; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    pub failures: usize,
    /// Human-readable findings worth printing even on success.
    pub notes: Vec<String>,
    pub counterexample: Option<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            checks: 0,
            failures: 0,
            notes: Vec::new(),
            counterexample: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks > 0 && self.failures == 0
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.notes {
            writeln!(f, "{line}")?;
        }
        if let Some(c) = &self.counterexample {
            writeln!(f, "first counterexample: {c}")?;
        }
        write!(
            f,
            "{}: {}/{} checks passed, {}",
            self.suite,
            self.checks - self.failures,
            self.checks,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// A labeled group for reports.
#[derive(Debug, Clone)]
pub struct Labeled {
    pub label: String,
    pub group: Arc<FiniteGroup>,
}

fn labeled(label: &str, group: FiniteGroup) -> Labeled {
    Labeled {
        label: label.to_string(),
        group: Arc::new(group),
    }
}

fn spec(label: &str, limits: &Limits) -> Result<Labeled> {
    Ok(labeled(label, build_catalog_group(label, limits)?))
}

/// The p-groups the oracle runs over: every 2-group of order at most 8,
/// twelve of the fourteen groups of order 16, and the 3-groups of order at
/// most 27.
pub fn oracle_groups() -> Result<Vec<Labeled>> {
    let limits = oracle_limits();
    let mut out = Vec::new();
    for s in [
        "C2",
        "C4",
        "C2xC2",
        "C8",
        "C4xC2",
        "C2xC2xC2",
        "D4",
        "Q8",
        "C16",
        "C8xC2",
        "C4xC4",
        "C4xC2xC2",
        "C2xC2xC2xC2",
        "D8",
        "Q8xC2",
        "D4xC2",
        "C3",
        "C9",
        "C3xC3",
        "C27",
        "C9xC3",
        "C3xC3xC3",
    ] {
        out.push(spec(s, &limits)?);
    }
    out.push(labeled("Q16", metacyclic(8, 2, 7, 4)?));
    out.push(labeled("SD16", metacyclic(8, 2, 3, 0)?));
    out.push(labeled("M16", metacyclic(8, 2, 5, 0)?));
    out.push(labeled("C4:C4", metacyclic(4, 4, 3, 0)?));
    out.push(labeled("He27", heisenberg(3)?));
    out.push(labeled("M27", metacyclic(9, 3, 4, 0)?));
    Ok(out)
}

/// Room for homomorphism searches between groups of order 27.
pub fn oracle_limits() -> Limits {
    Limits {
        max_order: 27,
        max_hom_pair: 27 * 27,
        ..Limits::default()
    }
}

/// `δ⁰_K(BH)` from Möbius inversion against a direct count of injective
/// homomorphisms up to conjugacy, for every ordered pair sharing a prime.
pub fn delta_oracle() -> Result<SuiteReport> {
    let limits = oracle_limits();
    let groups = oracle_groups()?;
    let mut report = SuiteReport::new(Suite::DeltaOracle);
    let prime = |g: &Labeled| g.group.p_group_prime();
    for k in &groups {
        let delta = delta0(k.group.clone(), &limits)?;
        for h in groups.iter().filter(|h| prime(h) == prime(k)) {
            let value = delta.leaf_value(&h.group, &limits)?;
            let expected = int(mono_rep_count(&k.group, &h.group, &limits)? as i64);
            report.check(value == expected, || {
                format!(
                    "δ⁰_{}(B {}) = {value}, but the direct count is {expected}",
                    k.label, h.label
                )
            });
        }
    }
    let pairs = report.checks;
    report.note(format!(
        "{} groups, {pairs} ordered pairs sharing a prime",
        groups.len()
    ));
    Ok(report)
}

fn factorization_groups() -> Result<Vec<Labeled>> {
    let limits = Limits::default();
    let mut out = Vec::new();
    for s in [
        "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C12", "C15", "C16", "C2xC2",
        "C4xC2", "C2xC2xC2", "C3xC3", "C2xC6", "C4xC4", "D4", "Q8", "S3", "D5", "D6", "D7", "D8",
        "Q8xC2", "D4xC2",
    ] {
        out.push(spec(s, &limits)?);
    }
    out.push(labeled("Q16", metacyclic(8, 2, 7, 4)?));
    out.push(labeled("Dic3", metacyclic(3, 4, 2, 0)?));
    Ok(out)
}

/// `rep(G, H) = Σ_{N ⊴ G} (injective G/N -> H up to conjugacy)`.
pub fn factorization() -> Result<SuiteReport> {
    let limits = Limits::default();
    let groups = factorization_groups()?;
    let mut report = SuiteReport::new(Suite::Factorization);
    for g in &groups {
        let quotients = normal_subgroups(&g.group)
            .iter()
            .map(|n| quotient(&g.group, n))
            .collect::<Result<Vec<_>>>()?;
        for h in &groups {
            let total = rep_count(&g.group, &h.group, &limits)?;
            let split = quotients.iter().try_fold(0u64, |acc, q| {
                Ok::<_, Error>(acc + mono_rep_count(q, &h.group, &limits)?)
            })?;
            report.check(total == split, || {
                format!(
                    "rep({}, {}) = {total}, but the sum over quotients is {split}",
                    g.label, h.label
                )
            });
        }
    }
    report.note(format!(
        "{} groups, {} ordered pairs",
        groups.len(),
        report.checks
    ));
    Ok(report)
}

fn random_rat(rng: &mut impl Rng) -> Rat {
    ratio(rng.gen_range(-60..=60), rng.gen_range(1..=24))
}

/// Random prescribed values on the point and the 2-groups of order at most 8,
/// solved for and then read back on every basis leaf.
pub fn reconstruction(trials: usize, seed: u64) -> Result<SuiteReport> {
    let limits = Limits::default();
    let mut elements = vec![BasisElement::Star];
    for s in ["C2", "C4", "C2xC2", "C8", "C4xC2", "C2xC2xC2", "D4", "Q8"] {
        elements.push(BasisElement::from_group(build_catalog_group(s, &limits)?)?);
    }
    elements.sort();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new(Suite::Reconstruction);
    for trial in 0..trials {
        let mut table = BasisTable::new();
        for e in &elements {
            table.insert(e.clone(), random_rat(&mut rng));
        }
        let f = BasisFunction::from_values(elements.clone(), &table)?;
        let chi = CharFunction::from_coefficients(&solve_basis_coefficients(&f, &limits)?);
        for (e, wanted) in f.entries() {
            let leaf = match e {
                BasisElement::Star => SpaceExpr::Point,
                BasisElement::PGroup { group, .. } => SpaceExpr::Classifying(group.clone()),
            };
            let got = chi.evaluate(&leaf, &limits)?;
            report.check(&got == wanted, || {
                format!("trial {trial}: prescribed {wanted} on {e}, reconstructed {got}")
            });
        }
    }
    report.note(format!(
        "{trials} trials over {} basis elements",
        elements.len()
    ));
    Ok(report)
}

/// Nilpotent groups of order at most 36 whose Sylow subgroups have order at
/// most 16.
pub fn assembly_pool() -> Result<Vec<Labeled>> {
    let limits = Limits::default();
    let mut out = Vec::new();
    for s in [
        "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C12", "C14", "C15", "C16",
        "C18", "C20", "C21", "C24", "C28", "C30", "C33", "C35", "C36", "C2xC2", "C2xC6", "C3xC3",
        "C2xC2xC3", "C6xC6", "C2xC2xC9", "C2xC10", "C2xC2xC2", "C4xC4", "C4xC2xC3", "D4", "Q8",
        "D4xC3", "Q8xC3", "D4xC2", "Q8xC2", "C3xC3xC4", "C2xC14",
    ] {
        out.push(spec(s, &limits)?);
    }
    Ok(out)
}

/// A random expression of the given depth over the pool's leaves.
pub fn random_expression(rng: &mut impl Rng, pool: &[Labeled], depth: usize) -> SpaceExpr {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..20) {
            0 => SpaceExpr::Empty,
            1..=3 => SpaceExpr::Point,
            _ => SpaceExpr::Classifying(pool.choose(rng).expect("nonempty pool").group.clone()),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..4) {
        0 => {
            let a = random_expression(rng, pool, d);
            let b = random_expression(rng, pool, d);
            let c = random_expression(rng, pool, d);
            SpaceExpr::pushout(a, b, c)
        }
        1 => {
            let n = rng.gen_range(1..=3);
            SpaceExpr::Disjoint((0..n).map(|_| random_expression(rng, pool, d)).collect())
        }
        2 => SpaceExpr::susp(random_expression(rng, pool, d)),
        _ => {
            let x = random_expression(rng, pool, d);
            let y = random_expression(rng, pool, d);
            SpaceExpr::wedge(x, y)
        }
    }
}

/// Random values on `*` and on every Sylow subgroup of the pool.
fn random_values(rng: &mut impl Rng, pool: &[Labeled]) -> Result<BasisTable> {
    let mut table = BasisTable::new();
    table.insert(BasisElement::Star, random_rat(rng));
    for g in pool {
        for part in sylow_decomposition(&g.group).subgroups().values() {
            let e = BasisElement::from_group(part.clone())?;
            if table.value(&e).is_none() {
                table.insert(e, random_rat(rng));
            }
        }
    }
    Ok(table)
}

/// The assembled value, the leafwise value and the K₀ pairing agree on random
/// expressions and random basis values, and only support primes are projected.
pub fn assembly(trials: usize, depth: usize, seed: u64) -> Result<SuiteReport> {
    let limits = Limits::default();
    let pool = assembly_pool()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new(Suite::Assembly);
    for trial in 0..trials {
        let x = random_expression(&mut rng, &pool, depth);
        let values = random_values(&mut rng, &pool)?;
        let assembled = evaluate_assembled(&values, &x, &limits)?;
        let leafwise = evaluate_leafwise(&values, &x)?;
        let class = k0_class(&x)?;
        let paired = pair(&class, &values)?;
        report.check(assembled.value == leafwise && leafwise == paired, || {
            format!(
                "trial {trial}: {x}: assembled {}, leafwise {leafwise}, paired {paired}",
                assembled.value
            )
        });
        let projected: Vec<u64> = assembled.per_prime.keys().copied().collect();
        let support: Vec<u64> = class.primes().into_iter().collect();
        report.check(projected == support, || {
            format!("trial {trial}: {x}: projected primes {projected:?}, support {support:?}")
        });
    }
    report.note(format!(
        "{trials} random expressions of depth at most {depth} over {} leaf groups",
        pool.len()
    ));
    Ok(report)
}

fn bd(text: &str) -> Result<Rat> {
    let limits = Limits::default();
    let x = crate::spaces::parse(text, &limits)?;
    Ok(evaluate_assembled(&BaezDolan, &x, &limits)?.value)
}

/// `χ(B C_pq) = 1/p + 1/q - 1`, and the square of classifying spaces it comes
/// from has a contractible pushout.
pub fn golden() -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Golden);
    for (p, q) in [(2i64, 3i64), (2, 5), (3, 5)] {
        let pq = p * q;
        let leaf = bd(&format!("B(C{pq})"))?;
        let expected = ratio(1, p) + ratio(1, q) - int(1);
        report.check(leaf == expected, || {
            format!("χ(B C{pq}) = {leaf}, expected {expected}")
        });
        let square = bd(&format!("pushout(B(C{pq}); B(C{p}); B(C{q}))"))?;
        report.check(square == int(1), || {
            format!("the pushout of B C{p} <- B C{pq} -> B C{q} has χ = {square}, expected 1")
        });
        let relation = &leaf + &square == ratio(1, p) + ratio(1, q);
        report.check(relation, || {
            format!("χ(B C{pq}) + χ(*) ≠ χ(B C{p}) + χ(B C{q})")
        });
        report.note(format!("χ(B C{pq}) = 1/{p} + 1/{q} - 1 = {leaf}"));
    }
    Ok(report)
}

/// `χ(Sⁿ) = 1 + (-1)ⁿ` for every built-in characteristic.
pub fn spheres(max_n: usize) -> Result<SuiteReport> {
    let limits = Limits::default();
    let mut report = SuiteReport::new(Suite::Spheres);
    let ks: Vec<Labeled> = ["C1", "C2", "C3", "Q8", "S3"]
        .iter()
        .map(|s| spec(s, &limits))
        .collect::<Result<_>>()?;
    for n in 0..=max_n {
        let x = SpaceExpr::sphere(n);
        let expected = int(if n % 2 == 0 { 2 } else { 0 });
        let mut values = vec![
            (
                "baez-dolan".to_string(),
                evaluate_assembled(&BaezDolan, &x, &limits)?.value,
            ),
            ("euler-rational".to_string(), rational_euler(&x)),
        ];
        for k in &ks {
            values.push((format!("chi-K={}", k.label), chi_k(&k.group, &x, &limits)?));
        }
        for (name, v) in values {
            report.check(v == expected, || {
                format!("{name} on S^{n} gives {v}, expected {expected}")
            });
        }
    }
    report.note(format!("S^0 through S^{max_n}"));
    Ok(report)
}

/// `χ(BC6)` differs from `χ(BC2)·χ(BC3)` even though `BC6 ≃ BC2 × BC3`.
pub fn fibration_failure() -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::FibrationFailure);
    let c6 = bd("B(C6)")?;
    let c2 = bd("B(C2)")?;
    let c3 = bd("B(C3)")?;
    let product = &c2 * &c3;
    report.check(c6 == ratio(-1, 6), || {
        format!("χ(BC6) = {c6}, expected -1/6")
    });
    report.check(product == ratio(1, 6), || {
        format!("χ(BC2)·χ(BC3) = {product}, expected 1/6")
    });
    report.check(c6 != product, || "χ(BC6) = χ(BC2)·χ(BC3)".to_string());
    let relation = if c6 == product { "=" } else { "≠" };
    report.note(format!(
        "χ(BC6) = {c6} {relation} χ(BC2)·χ(BC3) = {c2}·{c3} = {product}"
    ));
    Ok(report)
}

/// `2·χ(BC2 ∨ BC3) = χ(BC3 ∨ BC3) = -1/3`.
pub fn wall() -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Wall);
    let mixed = bd("wedge(B(C2), B(C3))")?;
    let threes = bd("wedge(B(C3), B(C3))")?;
    let doubled = int(2) * &mixed;
    report.check(mixed == ratio(-1, 6), || {
        format!("χ(BC2 ∨ BC3) = {mixed}, expected -1/6")
    });
    report.check(threes == ratio(-1, 3), || {
        format!("χ(BC3 ∨ BC3) = {threes}, expected -1/3")
    });
    report.check(doubled == threes, || format!("2·{mixed} ≠ {threes}"));
    report.note(format!(
        "2·χ(BC2 ∨ BC3) = 2·({mixed}) = {doubled} = χ(BC3 ∨ BC3) = {threes}"
    ));
    Ok(report)
}

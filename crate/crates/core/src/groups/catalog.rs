//! Named constructions and the group-spec grammar.
//!
//! ```text
//! spec   := factor ("x" factor)*
//! factor := "C" n | "D" n | "Q8" | "S" n | "table:[" int ("," int)* "]"
//! ```
//!
//! `D<n>` is dihedral of order `2n`, `S<n>` is symmetric on `n ≤ 4` letters and
//! `table:[...]` is a row-major Cayley table whose element 0 is the identity.
//! Products associate to the left.

use crate::error::{Error, Result};
use crate::limits::Limits;

use super::FiniteGroup;

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(spec_error("C0", "cyclic groups need n >= 1"));
    }
    let table = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a + b) % n))
        .collect();
    Ok(FiniteGroup::from_valid_table(n, table, format!("C{n}")))
}

/// Dihedral group of order `2n`; element `r^i s^j` has index `i + n j`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(spec_error("D0", "dihedral groups need n >= 1"));
    }
    let order = 2 * n;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, b) = (x % n, x / n);
        for y in 0..order {
            let (c, d) = (y % n, y / n);
            let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
            table.push(rot + n * ((b + d) % 2));
        }
    }
    Ok(FiniteGroup::from_valid_table(order, table, format!("D{n}")))
}

/// Quaternion group; index `u + 4s` is `(-1)^s` times unit `u` of `1, i, j, k`.
pub fn quaternion() -> FiniteGroup {
    // UNIT[u][v] = (sign, unit) of the product of units u and v
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut table = Vec::with_capacity(64);
    for x in 0..8 {
        for y in 0..8 {
            let (s, u) = UNIT[x % 4][y % 4];
            let sign = (s + x / 4 + y / 4) % 2;
            table.push(u + 4 * sign);
        }
    }
    FiniteGroup::from_valid_table(8, table, "Q8".to_string())
}

/// Symmetric group on `n ≤ 4` letters, permutations listed lexicographically.
/// The product `a·b` applies `b` first.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if !(1..=4).contains(&n) {
        return Err(spec_error(
            &format!("S{n}"),
            "symmetric groups are available for 1 <= n <= 4",
        ));
    }
    let perms = permutations(n);
    let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
    let mut table = Vec::with_capacity(perms.len() * perms.len());
    for a in &perms {
        for b in &perms {
            let composed: Vec<usize> = (0..n).map(|x| a[b[x]]).collect();
            table.push(index(&composed));
        }
    }
    Ok(FiniteGroup::from_valid_table(
        perms.len(),
        table,
        format!("S{n}"),
    ))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in permutations(n - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}

/// `G × H` with `(g, h)` at index `g |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (m, n) = (g.order(), h.order());
    let order = m * n;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        for y in 0..order {
            table.push(g.mul(x / n, y / n) * n + h.mul(x % n, y % n));
        }
    }
    FiniteGroup::from_valid_table(order, table, format!("{}x{}", g.name(), h.name()))
}

/// `⟨a, b | a^m = 1, b^n = a^t, b a b⁻¹ = a^r⟩` with `a^i b^j` at index
/// `i + m j`. The parameters must satisfy `r^n ≡ 1` and `t r ≡ t (mod m)`, and
/// the resulting table is checked. Named by its table literal.
pub fn metacyclic(m: usize, n: usize, r: usize, t: usize) -> Result<FiniteGroup> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidTable(
            "metacyclic groups need m, n >= 1".to_string(),
        ));
    }
    let order = m * n;
    let mut r_pow = vec![1 % m; n];
    for j in 1..n {
        r_pow[j] = r_pow[j - 1] * r % m;
    }
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (i, j) = (x % m, x / m);
        for y in 0..order {
            let (k, l) = (y % m, y / m);
            let mut a = (i + k * r_pow[j]) % m;
            let mut b = j + l;
            if b >= n {
                b -= n;
                a = (a + t) % m;
            }
            table.push(a + m * b);
        }
    }
    let name = table_literal(&table);
    FiniteGroup::from_table(table, name)
}

/// Upper unitriangular 3×3 matrices over `Z/p`; `(a, b, c)` at index
/// `a + p b + p² c`, multiplied as `(a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b')`.
pub fn heisenberg(p: usize) -> Result<FiniteGroup> {
    if p < 2 {
        return Err(Error::InvalidTable(
            "the Heisenberg group needs p >= 2".to_string(),
        ));
    }
    let order = p * p * p;
    let split = |x: usize| (x % p, (x / p) % p, x / (p * p));
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (a, b, c) = split(x);
        for y in 0..order {
            let (a2, b2, c2) = split(y);
            table.push((a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p));
        }
    }
    let name = table_literal(&table);
    FiniteGroup::from_table(table, name)
}

/// The `table:[...]` spelling of a group's own table.
pub fn table_literal(table: &[usize]) -> String {
    let entries: Vec<String> = table.iter().map(|x| x.to_string()).collect();
    format!("table:[{}]", entries.join(","))
}

/// Builds a group from its spec string, deterministically.
pub fn build_catalog_group(spec: &str, limits: &Limits) -> Result<FiniteGroup> {
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(spec_error(spec, "empty group spec"));
    }
    let mut parser = SpecParser {
        text: &compact,
        pos: 0,
        limits,
    };
    let mut group = parser.factor()?;
    while parser.pos < compact.len() {
        if !parser.eat("x") {
            return Err(parser.error("expected `x` between factors"));
        }
        let rhs = parser.factor()?;
        limits.check_order(group.order() * rhs.order(), &compact)?;
        group = direct_product(&group, &rhs);
    }
    Ok(group)
}

struct SpecParser<'a> {
    text: &'a str,
    pos: usize,
    limits: &'a Limits,
}

impl SpecParser<'_> {
    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn error(&self, reason: &str) -> Error {
        spec_error(self.text, &format!("{reason} at offset {}", self.pos))
    }

    fn number(&mut self) -> Result<usize> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected a number"));
        }
        let n = self.rest()[..digits]
            .parse()
            .map_err(|_| self.error("number out of range"))?;
        self.pos += digits;
        Ok(n)
    }

    fn factor(&mut self) -> Result<FiniteGroup> {
        if self.eat("table:[") {
            return self.table();
        }
        if self.eat("Q8") {
            return Ok(quaternion());
        }
        let kind = self
            .rest()
            .chars()
            .next()
            .ok_or_else(|| self.error("expected a factor"))?;
        match kind {
            'C' | 'D' | 'S' => {
                self.pos += 1;
                let n = self.number()?;
                let order = match kind {
                    'C' => n,
                    'D' => n.saturating_mul(2),
                    _ => (1..=n.min(5)).product(),
                };
                if kind != 'S' || n <= 4 {
                    self.limits.check_order(order, &format!("{kind}{n}"))?;
                }
                match kind {
                    'C' => cyclic(n),
                    'D' => dihedral(n),
                    _ => symmetric(n),
                }
            }
            _ => Err(self.error(&format!("unknown group family `{kind}`"))),
        }
    }

    fn table(&mut self) -> Result<FiniteGroup> {
        let close = self
            .rest()
            .find(']')
            .ok_or_else(|| self.error("unterminated table literal"))?;
        let body = &self.rest()[..close];
        let entries = body
            .split(',')
            .map(|s| s.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| self.error("table entries must be non-negative integers"))?;
        self.pos += close + 1;
        let order = (entries.len() as f64).sqrt().round() as usize;
        self.limits.check_order(order, "table literal")?;
        let name = table_literal(&entries);
        FiniteGroup::from_table(entries, name)
    }
}

fn spec_error(spec: &str, reason: &str) -> Error {
    Error::GroupSpec {
        spec: spec.to_string(),
        reason: reason.to_string(),
    }
}

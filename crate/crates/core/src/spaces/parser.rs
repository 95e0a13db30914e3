//! Recursive-descent parser for the expression language:
//!
//! ```text
//! expr := "empty" | "point" | "B(" groupspec ")"
//!       | "pushout(" expr ";" expr ";" expr ")"
//!       | "disjoint(" expr {"," expr} ")"
//!       | "susp(" expr ")" | "wedge(" expr "," expr ")"
//! ```
//!
//! Whitespace between tokens is ignored; keywords are case-sensitive.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{build_catalog_group, FiniteGroup};
use crate::limits::Limits;

use super::SpaceExpr;

pub fn parse(text: &str, limits: &Limits) -> Result<SpaceExpr> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        limits,
        groups: HashMap::new(),
    };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error_here("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    limits: &'a Limits,
    /// leaves with the same spec share one group, and so its cached data
    groups: HashMap<String, Arc<FiniteGroup>>,
}

impl Parser<'_> {
    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.location(pos);
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => Err(self.error_here(format!("expected `{c}`, found `{found}`"))),
            None => Err(self.error_here(format!("expected `{c}`, found end of input"))),
        }
    }

    fn word(&mut self) -> (usize, String) {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphabetic())
        {
            self.pos += 1;
        }
        (start, self.chars[start..self.pos].iter().collect())
    }

    fn expr(&mut self) -> Result<SpaceExpr> {
        let (start, word) = self.word();
        match word.as_str() {
            "empty" => Ok(SpaceExpr::Empty),
            "point" => Ok(SpaceExpr::Point),
            "B" => {
                self.expect('(')?;
                self.group_leaf()
            }
            "pushout" | "disjoint" | "susp" | "wedge" => {
                self.expect('(')?;
                let (args, separators) = self.arguments()?;
                self.build(&word, args, &separators)
            }
            "" => match self.peek() {
                Some(c) => Err(self.error_here(format!("expected an expression, found `{c}`"))),
                None => Err(self.error_here("expected an expression, found end of input")),
            },
            other => Err(self.error_at(start, format!("unknown keyword `{other}`"))),
        }
    }

    /// Comma- or semicolon-separated expressions up to the closing parenthesis.
    fn arguments(&mut self) -> Result<(Vec<SpaceExpr>, Vec<(usize, char)>)> {
        let mut args = vec![self.expr()?];
        let mut separators = Vec::new();
        loop {
            match self.peek() {
                Some(')') => {
                    self.pos += 1;
                    return Ok((args, separators));
                }
                Some(c @ (',' | ';')) => {
                    separators.push((self.pos, c));
                    self.pos += 1;
                    args.push(self.expr()?);
                }
                Some(c) => {
                    return Err(self.error_here(format!("expected `,`, `;` or `)`, found `{c}`")))
                }
                None => return Err(self.error_here("unclosed `(`")),
            }
        }
    }

    fn build(
        &self,
        node: &str,
        mut args: Vec<SpaceExpr>,
        separators: &[(usize, char)],
    ) -> Result<SpaceExpr> {
        let (expected, separator) = match node {
            "pushout" => ("3", ';'),
            "wedge" => ("2", ','),
            "susp" => ("1", ','),
            _ => ("at least 1", ','),
        };
        let arity_ok = match node {
            "pushout" => args.len() == 3,
            "wedge" => args.len() == 2,
            "susp" => args.len() == 1,
            _ => !args.is_empty(),
        };
        if !arity_ok {
            return Err(Error::Arity {
                node: node.to_string(),
                expected: expected.to_string(),
                found: args.len(),
            });
        }
        if let Some(&(pos, c)) = separators.iter().find(|(_, c)| *c != separator) {
            return Err(self.error_at(
                pos,
                format!("`{node}` separates its arguments with `{separator}`, found `{c}`"),
            ));
        }
        Ok(match node {
            "pushout" => {
                let c = args.pop().unwrap();
                let b = args.pop().unwrap();
                let a = args.pop().unwrap();
                SpaceExpr::pushout(a, b, c)
            }
            "wedge" => {
                let y = args.pop().unwrap();
                let x = args.pop().unwrap();
                SpaceExpr::wedge(x, y)
            }
            "susp" => SpaceExpr::susp(args.pop().unwrap()),
            _ => SpaceExpr::Disjoint(args),
        })
    }

    /// The group spec runs to the `)` that balances `B(`.
    fn group_leaf(&mut self) -> Result<SpaceExpr> {
        let start = self.pos;
        let mut depth = 0usize;
        loop {
            match self.chars.get(self.pos) {
                None => return Err(self.error_at(start, "unclosed `B(`")),
                Some('(' | '[') => depth += 1,
                Some(']') => depth = depth.saturating_sub(1),
                Some(')') if depth == 0 => break,
                Some(')') => depth -= 1,
                Some(_) => {}
            }
            self.pos += 1;
        }
        let spec: String = self.chars[start..self.pos]
            .iter()
            .filter(|c| !c.is_whitespace())
            .collect();
        self.pos += 1;
        if spec.is_empty() {
            return Err(self.error_at(start, "empty group spec in `B()`"));
        }
        let group = match self.groups.get(&spec) {
            Some(g) => g.clone(),
            None => {
                let g = Arc::new(build_catalog_group(&spec, self.limits)?);
                self.groups.insert(spec, g.clone());
                g
            }
        };
        Ok(SpaceExpr::Classifying(group))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::cyclic;

    fn p(text: &str) -> Result<SpaceExpr> {
        parse(text, &Limits::default())
    }

    #[test]
    fn examples() {
        assert_eq!(p("point").unwrap(), SpaceExpr::Point);
        assert_eq!(
            p("pushout(B(C6); B(C2); B(C3))").unwrap(),
            SpaceExpr::pushout(
                SpaceExpr::bg(cyclic(6).unwrap()),
                SpaceExpr::bg(cyclic(2).unwrap()),
                SpaceExpr::bg(cyclic(3).unwrap()),
            )
        );
        let circle = p("susp(disjoint(point, point))").unwrap();
        assert_eq!(circle, SpaceExpr::sphere(1));
        assert_eq!(
            circle.desugar(),
            SpaceExpr::pushout(
                SpaceExpr::pushout(SpaceExpr::Empty, SpaceExpr::Point, SpaceExpr::Point),
                SpaceExpr::Point,
                SpaceExpr::Point
            )
        );
    }

    #[test]
    fn whitespace_and_products() {
        let a = p("  wedge ( B ( C2 x C3 ) ,\n\tempty )  ").unwrap();
        let b = p("wedge(B(C2xC3),empty)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "wedge(B(C2xC3), empty)");
        let t = p("B(table:[0, 1, 1, 0])").unwrap();
        assert_eq!(t.to_string(), "B(table:[0,1,1,0])");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match p("pushout(point;\n  poimt; point)") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        match p("point point") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 7)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(p("Point"), Err(Error::Syntax { .. })));
        assert!(matches!(p(""), Err(Error::Syntax { .. })));
        assert!(matches!(p("susp(point"), Err(Error::Syntax { .. })));
        assert!(matches!(p("B(C2"), Err(Error::Syntax { .. })));
        assert!(matches!(
            p("pushout(point, point, point)"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            p("wedge(point; point)"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn arity_errors() {
        for (text, node, found) in [
            ("pushout(point; point)", "pushout", 2),
            ("susp(point, point)", "susp", 2),
            ("wedge(point)", "wedge", 1),
            ("wedge(point, point, point)", "wedge", 3),
        ] {
            match p(text) {
                Err(Error::Arity {
                    node: n, found: f, ..
                }) => {
                    assert_eq!((n.as_str(), f), (node, found), "{text}")
                }
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn group_errors() {
        assert!(matches!(p("B(X9)"), Err(Error::GroupSpec { .. })));
        assert!(matches!(p("B()"), Err(Error::Syntax { .. })));
        assert!(matches!(p("B(C64)"), Err(Error::Limit(_))));
    }

    #[test]
    fn repeated_specs_share_a_group() {
        let x = p("wedge(B(C4), B(C4))").unwrap();
        let leaves = x.leaves();
        assert!(Arc::ptr_eq(leaves[0], leaves[1]));
    }
}

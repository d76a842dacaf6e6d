//! Read-once expression syntax.
//!
//! ```text
//! expr   := term ('|' term)*
//! term   := factor ('&' factor)*
//! factor := '~'? (INT | '(' expr ')')
//! ```
//!
//! `~` on a parenthesized group means the signed dual of the group.

use std::collections::BTreeMap;

use super::{Axis, Sign, SignedSpd, Spd, SpdError};

pub fn parse_expr(input: &str) -> Result<SignedSpd, SpdError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
        seen: BTreeMap::new(),
    };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(SpdError::Empty);
    }
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

/// Render with `&`/`|`, `~` on negative edges, and parentheses around every
/// composite child.
pub fn format_expr(x: &SignedSpd) -> String {
    let mut out = String::new();
    write_node(x.shape(), x.signs(), &mut out);
    out
}

fn write_node(node: &Spd, signs: &BTreeMap<Axis, Sign>, out: &mut String) {
    let sep = match node {
        Spd::Leaf(a) => {
            if signs[a] == Sign::Neg {
                out.push('~');
            }
            out.push_str(&a.to_string());
            return;
        }
        Spd::Series(_) => '&',
        Spd::Parallel(_) => '|',
    };
    for (i, child) in node.children().iter().enumerate() {
        if i > 0 {
            out.push(sep);
        }
        if matches!(child, Spd::Leaf(_)) {
            write_node(child, signs, out);
        } else {
            out.push('(');
            write_node(child, signs, out);
            out.push(')');
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    seen: BTreeMap<Axis, usize>,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> SpdError {
        SpdError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<SignedSpd, SpdError> {
        let mut parts = vec![self.term()?];
        while self.peek() == Some(b'|') {
            self.pos += 1;
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            SignedSpd::parallel(parts)?
        })
    }

    fn term(&mut self) -> Result<SignedSpd, SpdError> {
        let mut parts = vec![self.factor()?];
        while self.peek() == Some(b'&') {
            self.pos += 1;
            parts.push(self.factor()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            SignedSpd::series(parts)?
        })
    }

    fn factor(&mut self) -> Result<SignedSpd, SpdError> {
        let negated = self.peek() == Some(b'~');
        if negated {
            self.pos += 1;
        }
        let inner = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            Some(c) if c.is_ascii_digit() => self.label()?,
            Some(_) => return Err(self.error("expected axis label, '~' or '('")),
            None => return Err(self.error("unexpected end of input")),
        };
        Ok(if negated { inner.dual() } else { inner })
    }

    fn label(&mut self) -> Result<SignedSpd, SpdError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let axis: Axis = text.parse().map_err(|_| SpdError::Syntax {
            position: start,
            message: "axis label out of range".into(),
        })?;
        if axis == 0 {
            return Err(SpdError::Syntax {
                position: start,
                message: "axis labels start at 1".into(),
            });
        }
        if self.seen.insert(axis, start).is_some() {
            return Err(SpdError::RepeatedAxis { axis, position: start });
        }
        Ok(SignedSpd::leaf(axis, Sign::Pos))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_normal_form() {
        for s in [
            "1",
            "~3",
            "1&2",
            "(~1|~2)&5&~6&(7|8)",
            "((1&2)|3)&4",
            "(((((1|2)&3)|4)&5)|6)&(7|8)",
        ] {
            let x = parse_expr(s).unwrap();
            assert_eq!(parse_expr(&format_expr(&x)).unwrap(), x, "{s}");
        }
    }

    #[test]
    fn formatting_sorts_composites_first() {
        assert_eq!(format_expr(&parse_expr("5 & (1|2) & ~6").unwrap()), "(1|2)&5&~6");
        assert_eq!(format_expr(&parse_expr("3 | (2 & 1)").unwrap()), "(1&2)|3");
    }

    #[test]
    fn negated_group_is_dual() {
        assert_eq!(parse_expr("~(1&~2)").unwrap(), parse_expr("~1|2").unwrap());
        assert!(parse_expr("~~1").is_err());
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(parse_expr("1&2|3").unwrap(), parse_expr("(1&2)|3").unwrap());
        assert_eq!(parse_expr("1&(2&3)").unwrap(), parse_expr("1&2&3").unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse_expr("   "), Err(SpdError::Empty));
        assert!(matches!(parse_expr("1&0"), Err(SpdError::Syntax { position: 2, .. })));
        assert!(matches!(
            parse_expr("1&2|1"),
            Err(SpdError::RepeatedAxis { axis: 1, position: 4 })
        ));
        assert!(matches!(parse_expr("(1&2"), Err(SpdError::Syntax { position: 4, .. })));
        assert!(matches!(parse_expr("1 2"), Err(SpdError::Syntax { position: 2, .. })));
        assert!(matches!(parse_expr("1&"), Err(SpdError::Syntax { .. })));
        assert!(matches!(parse_expr("x"), Err(SpdError::Syntax { position: 0, .. })));
    }
}

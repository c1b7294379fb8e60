use std::fmt;

use super::ChainError;

/// Composition tree over graph edges. A reversed leaf uses the edge's
/// relation backwards (its polytope negated).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainExpr {
    Leaf { edge: String, reversed: bool },
    Series(Vec<ChainExpr>),
    Parallel(Vec<ChainExpr>),
}

impl ChainExpr {
    pub fn leaf(edge: impl Into<String>) -> Self {
        Self::Leaf {
            edge: edge.into(),
            reversed: false,
        }
    }

    pub fn reversed(edge: impl Into<String>) -> Self {
        Self::Leaf {
            edge: edge.into(),
            reversed: true,
        }
    }

    /// Parses prefix notation: `series(a, -b, parallel(c, d))`.
    pub fn parse(text: &str) -> Result<Self, ChainError> {
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.error("trailing input"));
        }
        e.validate()?;
        Ok(e)
    }

    /// Every interior node must have at least two children.
    pub fn validate(&self) -> Result<(), ChainError> {
        match self {
            Self::Leaf { .. } => Ok(()),
            Self::Series(c) | Self::Parallel(c) => {
                if c.len() < 2 {
                    return Err(ChainError::Parse {
                        pos: 0,
                        msg: "series/parallel nodes need at least two children".into(),
                    });
                }
                c.iter().try_for_each(Self::validate)
            }
        }
    }

    /// Edge names in left-to-right order.
    pub fn leaves(&self) -> Vec<&str> {
        match self {
            Self::Leaf { edge, .. } => vec![edge.as_str()],
            Self::Series(c) | Self::Parallel(c) => c.iter().flat_map(Self::leaves).collect(),
        }
    }
}

impl fmt::Display for ChainExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, children) = match self {
            Self::Leaf { edge, reversed } => {
                return write!(f, "{}{}", if *reversed { "-" } else { "" }, edge);
            }
            Self::Series(c) => ("series", c),
            Self::Parallel(c) => ("parallel", c),
        };
        write!(f, "{name}(")?;
        for (i, c) in children.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

fn is_name_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || matches!(b, b'_' | b'.' | b':')
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ChainError {
        ChainError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn name(&mut self) -> Result<String, ChainError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && is_name_byte(self.s[self.pos]) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an edge name"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn expr(&mut self) -> Result<ChainExpr, ChainError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(ChainExpr::reversed(self.name()?));
        }
        let name = self.name()?;
        if self.peek() != Some(b'(') {
            return Ok(ChainExpr::leaf(name));
        }
        let series = match name.as_str() {
            "series" => true,
            "parallel" => false,
            _ => return Err(self.error(&format!("unknown combinator '{name}'"))),
        };
        self.pos += 1;
        let mut children = vec![self.expr()?];
        loop {
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    children.push(self.expr()?);
                }
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error("expected ',' or ')'")),
            }
        }
        Ok(if series {
            ChainExpr::Series(children)
        } else {
            ChainExpr::Parallel(children)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "parallel(series(g21, -c1, g11), series(g22, c2, -g12))";
        let e = ChainExpr::parse(text).unwrap();
        assert_eq!(e.to_string(), text);
        assert_eq!(e.leaves(), vec!["g21", "c1", "g11", "g22", "c2", "g12"]);
        assert_eq!(ChainExpr::parse("  g1 ").unwrap(), ChainExpr::leaf("g1"));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["series(a)", "series(a,", "foo(a, b)", "series(a b)", "", "a b", "-"] {
            assert!(ChainExpr::parse(bad).is_err(), "{bad}");
        }
    }
}

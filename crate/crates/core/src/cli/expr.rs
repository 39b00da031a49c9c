//! The expression language:
//!
//! ```text
//! expr   := add | mul | natadd | ident
//! add    := "add(" expr ("," expr)+ ";" "alpha=" num "," "beta=" num ")"
//! mul    := "mul(" expr ("," expr)+ ")"
//! natadd := "natadd(" expr ("," expr)+ ")"
//! num    := integer | decimal | integer "/" integer
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::time::{format_rational, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Ident(String),
    Add {
        children: Vec<Expr>,
        alpha: Rational,
        beta: Rational,
    },
    NatAdd(Vec<Expr>),
    Mul(Vec<Expr>),
}

impl Expr {
    pub fn children(&self) -> &[Expr] {
        match self {
            Expr::Ident(_) => &[],
            Expr::Add { children, .. } | Expr::NatAdd(children) | Expr::Mul(children) => children,
        }
    }

    /// Identifiers in written order, repeats included.
    pub fn idents(&self) -> Vec<&str> {
        match self {
            Expr::Ident(name) => vec![name.as_str()],
            _ => self.children().iter().flat_map(Expr::idents).collect(),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, xs: &[Expr]| -> fmt::Result {
            for (k, x) in xs.iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            Ok(())
        };
        match self {
            Expr::Ident(name) => f.write_str(name),
            Expr::Add {
                children,
                alpha,
                beta,
            } => {
                f.write_str("add(")?;
                list(f, children)?;
                write!(
                    f,
                    "; alpha={}, beta={})",
                    format_rational(alpha),
                    format_rational(beta)
                )
            }
            Expr::NatAdd(children) => {
                f.write_str("natadd(")?;
                list(f, children)?;
                f.write_str(")")
            }
            Expr::Mul(children) => {
                f.write_str("mul(")?;
                list(f, children)?;
                f.write_str(")")
            }
        }
    }
}

pub fn parse_expression(text: &str) -> Result<Expr> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error_here(format!("unexpected `{}` after expression", p.chars[p.pos])));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
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
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error_here(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error_here(format!("expected `{want}`, found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == '_' => {}
            Some(c) => return Err(self.error_here(format!("expected an identifier, found `{c}`"))),
            None => return Err(self.error_here("expected an identifier, found end of input")),
        }
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        Ok((start, self.chars[start..self.pos].iter().collect()))
    }

    fn expr(&mut self) -> Result<Expr> {
        let (start, name) = self.ident()?;
        let is_call = self.peek() == Some('(');
        match (name.as_str(), is_call) {
            ("add", true) | ("mul", true) | ("natadd", true) => {}
            (_, true) => return Err(self.error_at(start, format!("unknown operation `{name}`"))),
            (_, false) => return Ok(Expr::Ident(name)),
        }
        self.expect('(')?;
        let mut children = vec![self.expr()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            children.push(self.expr()?);
        }
        if children.len() < 2 {
            return Err(self.error_at(start, format!("`{name}` needs at least two operands")));
        }
        let node = if name == "add" {
            self.expect(';')?;
            let alpha_pos = self.peek().map(|_| self.pos).unwrap_or(self.pos);
            let alpha = self.keyword_value("alpha")?;
            self.expect(',')?;
            let beta = self.keyword_value("beta")?;
            if alpha >= beta {
                return Err(self.error_at(alpha_pos, "alpha must be less than beta"));
            }
            Expr::Add {
                children,
                alpha,
                beta,
            }
        } else if name == "mul" {
            Expr::Mul(children)
        } else {
            Expr::NatAdd(children)
        };
        self.expect(')')?;
        Ok(node)
    }

    fn keyword_value(&mut self, key: &str) -> Result<Rational> {
        let (pos, word) = self.ident()?;
        if word != key {
            return Err(self.error_at(pos, format!("expected `{key}=`, found `{word}`")));
        }
        self.expect('=')?;
        self.number()
    }

    fn number(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit() || matches!(c, '-' | '+' | '.' | '/'))
        {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        if text.is_empty() {
            return Err(self.error_here("expected a number"));
        }
        parse_rational(&text).map_err(|_| self.error_at(start, format!("`{text}` is not a number")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syntax_at(text: &str) -> (usize, usize) {
        match parse_expression(text) {
            Err(Error::Syntax { line, column, .. }) => (line, column),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn parses_add() {
        let e = parse_expression("add(a, b; alpha=0, beta=22)").unwrap();
        assert_eq!(e.children().len(), 2);
        assert_eq!(e.to_string(), "add(a, b; alpha=0, beta=22)");
    }

    #[test]
    fn parses_nesting_and_whitespace() {
        let e = parse_expression(" mul( natadd(a,b) ,\n c )").unwrap();
        assert!(matches!(&e, Expr::Mul(ch) if matches!(&ch[0], Expr::NatAdd(_))));
        assert_eq!(e.idents(), ["a", "b", "c"]);
        let e = parse_expression("add(x, y; alpha=9.4, beta=41/2)").unwrap();
        assert_eq!(e.to_string(), "add(x, y; alpha=47/5, beta=41/2)");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(syntax_at("add(a)"), (1, 1));
        assert_eq!(syntax_at("mul(a,\n  )"), (2, 3));
        assert_eq!(syntax_at("add(a, b)"), (1, 9));
        assert_eq!(syntax_at("add(a, b; alpha=3, beta=1)"), (1, 11));
        assert_eq!(syntax_at("sub(a, b)"), (1, 1));
        assert_eq!(syntax_at("a b"), (1, 3));
        assert_eq!(syntax_at(""), (1, 1));
    }
}

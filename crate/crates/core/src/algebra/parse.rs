//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: integer literals, variable tokens from the caller's list,
//! `+ - * ^`, parentheses, and fractions `n/d` (division restricted to
//! nonzero constants). Whitespace insensitive.

use std::sync::Arc;

use super::field::Field;
use super::poly::MPoly;
use super::AlgebraError;

pub fn parse_poly(
    input: &str,
    field: Field,
    vars: &Arc<Vec<String>>,
) -> Result<MPoly, AlgebraError> {
    let tokens = lex(input, vars)?;
    let mut p = Parser { tokens, pos: 0, field, vars: vars.clone() };
    let poly = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(i64),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Located {
    tok: Token,
    col: usize,
}

fn lex(input: &str, vars: &Arc<Vec<String>>) -> Result<Vec<Located>, AlgebraError> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                out.push(Located { tok: Token::Plus, col });
                i += 1;
            }
            '-' => {
                out.push(Located { tok: Token::Minus, col });
                i += 1;
            }
            '*' => {
                out.push(Located { tok: Token::Star, col });
                i += 1;
            }
            '/' => {
                out.push(Located { tok: Token::Slash, col });
                i += 1;
            }
            '^' => {
                out.push(Located { tok: Token::Caret, col });
                i += 1;
            }
            '(' => {
                out.push(Located { tok: Token::LParen, col });
                i += 1;
            }
            ')' => {
                out.push(Located { tok: Token::RParen, col });
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s.parse::<i64>().map_err(|_| AlgebraError::Parse {
                    col,
                    message: format!("integer literal out of range: {s}"),
                })?;
                out.push(Located { tok: Token::Int(n), col });
            }
            c if c.is_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                let idx = vars.iter().position(|v| *v == name).ok_or(AlgebraError::Parse {
                    col,
                    message: format!("unknown variable `{name}` (expected one of {})", vars.join(", ")),
                })?;
                out.push(Located { tok: Token::Var(idx), col });
            }
            other => {
                return Err(AlgebraError::Parse { col, message: format!("unexpected character `{other}`") });
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Located>,
    pos: usize,
    field: Field,
    vars: Arc<Vec<String>>,
}

impl Parser {
    fn error(&self, message: &str) -> AlgebraError {
        let col = self.tokens.get(self.pos).map(|t| t.col).unwrap_or_else(|| {
            self.tokens.last().map(|t| t.col + 1).unwrap_or(1)
        });
        AlgebraError::Parse { col, message: message.to_string() }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|t| t.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<MPoly, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some(Token::Slash) => {
                    self.bump();
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(self.error("division only by nonzero constants"));
                    }
                    let inv = d.constant_term().inv()?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly, AlgebraError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Some(Token::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly, AlgebraError> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Token::Int(e)) if e >= 0 => Ok(base.pow(e as u32)),
                _ => {
                    self.pos = self.pos.saturating_sub(1);
                    Err(self.error("exponent must be a nonnegative integer"))
                }
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly, AlgebraError> {
        match self.bump() {
            Some(Token::Int(n)) => Ok(MPoly::from_i64(self.field, &self.vars, n)),
            Some(Token::Var(idx)) => Ok(MPoly::var_idx(self.field, &self.vars, idx)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => {
                        self.pos = self.pos.saturating_sub(1);
                        Err(self.error("expected `)`"))
                    }
                }
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.error("expected a number, variable, or `(`"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::poly::vars;

    #[test]
    fn parses_line_expression() {
        let q = Field::Rational;
        let v = vars(&["x", "y", "p"]);
        let f = parse_poly("y - 3*x - 1", q, &v).unwrap();
        let x = MPoly::var(q, &v, "x").unwrap();
        let y = MPoly::var(q, &v, "y").unwrap();
        assert_eq!(f, y.sub(&x.scale(&q.from_i64(3))).sub(&MPoly::one(q, &v)));
    }

    #[test]
    fn parses_bihomogeneous_expression() {
        let q = Field::Rational;
        let v = vars(&["X0", "X1", "X2", "A0", "A1", "A2"]);
        let f = parse_poly("A0*X0 + A1*X1 + A2*X2", q, &v).unwrap();
        assert_eq!(f.total_degree(), Some(2));
    }

    #[test]
    fn fraction_coefficients() {
        let q = Field::Rational;
        let v = vars(&["x"]);
        let f = parse_poly("1/2*x^2 - 2/3", q, &v).unwrap();
        let x = MPoly::var(q, &v, "x").unwrap();
        let expect = x
            .pow(2)
            .scale(&q.fraction(1, 2).unwrap())
            .sub(&MPoly::constant(q, &v, q.fraction(2, 3).unwrap()));
        assert_eq!(f, expect);
    }

    #[test]
    fn parse_error_reports_column() {
        let q = Field::Rational;
        let v = vars(&["x"]);
        let err = parse_poly("x + $", q, &v).unwrap_err();
        match err {
            AlgebraError::Parse { col, .. } => assert_eq!(col, 5),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn whitespace_insensitive() {
        let q = Field::Rational;
        let v = vars(&["x", "y"]);
        assert_eq!(
            parse_poly("x^2+y", q, &v).unwrap(),
            parse_poly("  x ^ 2 + y ", q, &v).unwrap()
        );
    }
}

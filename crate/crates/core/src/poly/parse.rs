// Recursive-descent parser for the polynomial text grammar:
//
//   expr  := term (('+' | '-') term)*
//   term  := unary ('*' unary)*
//   unary := '-' unary | power
//   power := atom ('^' integer)?
//   atom  := integer | variable | '(' expr ')'
//
// Variables are `name` or `name@k`; whitespace (including newlines) is
// insignificant.

use num_bigint::BigInt;

use super::{Polynomial, Variable};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(Variable),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Var(v) => format!("variable `{v}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: String, expected: &[&str]) -> Error {
    let expected: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
    let message = if expected.is_empty() {
        message
    } else {
        format!("{message}, expected one of: {}", expected.join(", "))
    };
    Error::Syntax {
        line,
        column,
        message,
        expected,
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned {
                tok,
                line: l0,
                column: c0,
            });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            col += i - start;
            let n: BigInt = digits.parse().expect("ascii digits parse as integer");
            out.push(Spanned {
                tok: Tok::Int(n),
                line: l0,
                column: c0,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            let mut order = 0u32;
            if i < chars.len() && chars[i] == '@' {
                i += 1;
                let ds = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(syntax(
                        l0,
                        c0 + (ds - start),
                        format!("missing jet order after `{name}@`"),
                        &["jet order"],
                    ));
                }
                let digits: String = chars[ds..i].iter().collect();
                order = digits.parse().map_err(|_| {
                    syntax(l0, c0, format!("jet order `{digits}` is too large"), &[])
                })?;
            }
            col += i - start;
            out.push(Spanned {
                tok: Tok::Var(Variable { name, order }),
                line: l0,
                column: c0,
            });
            continue;
        }
        return Err(syntax(
            l0,
            c0,
            format!("unexpected character `{c}`"),
            &["integer", "variable", "operator", "parenthesis"],
        ));
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

const OPERAND: &[&str] = &["integer", "variable", "`(`", "`-`"];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> Error {
        let t = self.peek();
        syntax(
            t.line,
            t.column,
            format!("unexpected {}", t.tok.describe()),
            expected,
        )
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = acc * self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.bump();
                let e: u32 = n.try_into().map_err(|_| {
                    syntax(t.line, t.column, "exponent is too large".into(), &[])
                })?;
                Ok(base.pow(e))
            }
            _ => Err(self.unexpected(&["non-negative integer exponent"])),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Polynomial::constant(n))
            }
            Tok::Var(v) => {
                self.bump();
                Ok(Polynomial::variable(v))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.unexpected(&["`)`", "`+`", "`-`", "`*`", "`^`"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected(OPERAND)),
        }
    }
}

/// Parses a polynomial in the textual grammar into canonical form.
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let poly = parser.expr()?;
    if parser.peek().tok != Tok::End {
        return Err(parser.unexpected(&["`+`", "`-`", "`*`", "`^`", "end of input"]));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err_pos(text: &str) -> (usize, usize, Vec<String>) {
        match parse_polynomial(text) {
            Err(Error::Syntax {
                line,
                column,
                expected,
                ..
            }) => (line, column, expected),
            other => panic!("expected syntax error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn basic_forms() {
        let f = parse_polynomial("y - x^2").unwrap();
        assert_eq!(f.to_string(), "-x^2 + y");
        let g = parse_polynomial("x@1^3 + 3*x@2").unwrap();
        assert_eq!(g.to_string(), "3*x@2 + x@1^3");
        assert_eq!(parse_polynomial("x@0").unwrap(), parse_polynomial("x").unwrap());
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse_polynomial("-x^2").unwrap(),
            parse_polynomial("-1*x*x").unwrap()
        );
        assert_eq!(
            parse_polynomial("2*x^2 + 3").unwrap(),
            parse_polynomial("3 + (2*(x*x))").unwrap()
        );
        assert_eq!(
            parse_polynomial("(x+1)^2 - x").unwrap().to_string(),
            "x^2 + x + 1"
        );
        assert_eq!(
            parse_polynomial("1 - 2 - 3").unwrap(),
            parse_polynomial("-4").unwrap()
        );
    }

    #[test]
    fn whitespace_and_newlines_are_insignificant() {
        assert_eq!(
            parse_polynomial(" x\n +\t y ").unwrap(),
            parse_polynomial("x+y").unwrap()
        );
    }

    #[test]
    fn error_positions() {
        let (line, col, expected) = err_pos("x +* y");
        assert_eq!((line, col), (1, 4));
        assert!(expected.contains(&"variable".to_string()));

        assert_eq!(err_pos("(x + 1").0, 1);
        assert_eq!(err_pos("(x + 1").1, 7);
        assert_eq!(err_pos("x^y").1, 3);
        assert_eq!(err_pos("x@").1, 3);
        assert_eq!(err_pos("x\n  + $").0, 2);
        assert_eq!(err_pos("x\n  + $").1, 5);
        assert_eq!(err_pos("").1, 1);
        assert_eq!(err_pos("x y").1, 3);
    }
}

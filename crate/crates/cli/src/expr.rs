//! Expression syntax for (quasi)modular forms and q-series.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' exponent)*
//! atom  := NAME | INT | '(' expr ')' | FUNC '(' args ')'
//! ```
//!
//! Names are `E2`, `E4`, `E6`, `Delta`, `j` and `q`; functions are `D(f)`,
//! `I(f1, ..., fn)` and `Ir(f; r)`.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    E2,
    E4,
    E6,
    Delta,
    J,
    Q,
}

impl Atom {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "E2" => Atom::E2,
            "E4" => Atom::E4,
            "E6" => Atom::E6,
            "Delta" => Atom::Delta,
            "j" => Atom::J,
            "q" => Atom::Q,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Atom::E2 => "E2",
            Atom::E4 => "E4",
            Atom::E6 => "E6",
            Atom::Delta => "Delta",
            Atom::J => "j",
            Atom::Q => "q",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Atom(Atom),
    Int(BigInt),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    D(Box<Expr>),
    I(Vec<Expr>),
    Ir(Box<Expr>, u32),
}

impl Expr {
    /// Whether the expression uses `q` or an iterated primitive, so that it
    /// only makes sense as a series.
    pub fn is_series_only(&self) -> bool {
        match self {
            Expr::Atom(a) => *a == Atom::Q,
            Expr::Int(_) => false,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::D(a) => a.is_series_only(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_series_only() || b.is_series_only()
            }
            Expr::I(_) | Expr::Ir(..) => true,
        }
    }
}

/// Tree form, e.g. `Div(Delta, Pow(E4, 2))`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(a) => f.write_str(a.name()),
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Neg(a) => write!(f, "Neg({a})"),
            Expr::Add(a, b) => write!(f, "Add({a}, {b})"),
            Expr::Sub(a, b) => write!(f, "Sub({a}, {b})"),
            Expr::Mul(a, b) => write!(f, "Mul({a}, {b})"),
            Expr::Div(a, b) => write!(f, "Div({a}, {b})"),
            Expr::Pow(a, n) => write!(f, "Pow({a}, {n})"),
            Expr::D(a) => write!(f, "D({a})"),
            Expr::I(args) => {
                let parts: Vec<String> = args.iter().map(ToString::to_string).collect();
                write!(f, "I({})", parts.join(", "))
            }
            Expr::Ir(a, r) => write!(f, "Ir({a}; {r})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown name {name:?} at line {line}, column {column}")]
    UnknownName {
        name: String,
        line: usize,
        column: usize,
    },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, column, .. }
            | ParseError::UnknownName { line, column, .. } => (*line, *column),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "{n:?}"),
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::Semi => f.write_str("';'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' | '·' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token {
                tok,
                line: l0,
                column: c0,
            });
            column += 1;
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n = digits.parse::<BigInt>().expect("ascii digits");
            out.push(Token {
                tok: Tok::Int(n),
                line: l0,
                column: c0,
            });
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Name(name),
                line: l0,
                column: c0,
            });
        } else {
            return Err(ParseError::Syntax {
                line: l0,
                column: c0,
                message: format!("unexpected character {c:?}"),
            });
        }
        column += i - start;
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(t: &Token, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == tok {
            Ok(())
        } else {
            Err(Self::error_at(
                &t,
                format!("expected {tok}, found {}", t.tok),
            ))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.next();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.next();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.atom()?;
        while self.peek().tok == Tok::Caret {
            self.next();
            base = Expr::Pow(Box::new(base), self.exponent()?);
        }
        Ok(base)
    }

    /// `n`, `-n` or a parenthesized form of either.
    fn exponent(&mut self) -> Result<i64, ParseError> {
        let paren = self.peek().tok == Tok::LParen;
        if paren {
            self.next();
        }
        let negative = self.peek().tok == Tok::Minus;
        if negative {
            self.next();
        }
        let t = self.next();
        let Tok::Int(n) = &t.tok else {
            return Err(Self::error_at(
                &t,
                format!("expected an integer exponent, found {}", t.tok),
            ));
        };
        let n: i64 = n
            .try_into()
            .map_err(|_| Self::error_at(&t, "exponent too large"))?;
        if paren {
            self.expect(Tok::RParen)?;
        }
        Ok(if negative { -n } else { n })
    }

    fn small_int(&mut self) -> Result<u32, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => n
                .try_into()
                .map_err(|_| Self::error_at(&t, "integer too large")),
            other => Err(Self::error_at(
                &t,
                format!("expected an integer, found {other}"),
            )),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Name(ref name) => {
                let call = self.peek().tok == Tok::LParen;
                match (name.as_str(), call) {
                    ("D", true) => {
                        self.next();
                        let e = self.expr()?;
                        self.expect(Tok::RParen)?;
                        Ok(Expr::D(Box::new(e)))
                    }
                    ("I", true) => {
                        self.next();
                        let mut args = vec![self.expr()?];
                        while self.peek().tok == Tok::Comma {
                            self.next();
                            args.push(self.expr()?);
                        }
                        self.expect(Tok::RParen)?;
                        Ok(Expr::I(args))
                    }
                    ("Ir", true) => {
                        self.next();
                        let e = self.expr()?;
                        self.expect(Tok::Semi)?;
                        let r = self.small_int()?;
                        self.expect(Tok::RParen)?;
                        Ok(Expr::Ir(Box::new(e), r))
                    }
                    ("D" | "I" | "Ir", false) => Err(Self::error_at(
                        &t,
                        format!("{name} must be called with arguments"),
                    )),
                    _ => Atom::from_name(name).map(Expr::Atom).ok_or_else(|| {
                        ParseError::UnknownName {
                            name: name.clone(),
                            line: t.line,
                            column: t.column,
                        }
                    }),
                }
            }
            ref other => Err(Self::error_at(
                &t,
                format!("expected an expression, found {other}"),
            )),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        tokens: lex(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    let t = p.next();
    if t.tok != Tok::End {
        return Err(Parser::error_at(&t, format!("unexpected {}", t.tok)));
    }
    Ok(e)
}

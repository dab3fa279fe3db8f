//! Expression syntax shared by the `series`, `skew` and `leavitt` commands.
//!
//! ```text
//! sum     := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' ('-1' | digits))?
//! atom    := digits | x<k> | y<k> | t<k> | e | '(' sum ')'
//! ```

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// A non-negative integer literal, kept as text.
    Number(String),
    X(u32),
    Y(u32),
    /// The indeterminate `t_k` of a rational function field (`k ≥ 1`).
    T { index: u32, column: usize },
    /// The idempotent `e`.
    E,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Inv(Box<Expr>, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

impl Expr {
    /// Largest `x`/`y` index used.
    pub fn max_letter(&self) -> Option<u32> {
        match self {
            Expr::X(i) | Expr::Y(i) => Some(*i),
            Expr::Number(_) | Expr::T { .. } | Expr::E => None,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
                a.max_letter().max(b.max_letter())
            }
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Inv(a, _) => a.max_letter(),
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(e)
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            column: self.pos + 1,
            message: message.into(),
        }
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

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
            } else if self.peek() == Some('/') {
                let column = self.pos + 1;
                self.pos += 1;
                acc = Expr::Div(Box::new(acc), Box::new(self.unary()?), column);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        let column = self.pos + 1;
        self.pos += 1;
        if self.eat('-') {
            self.skip_ws();
            let at = self.pos;
            let digits = self.digits();
            if digits != "1" {
                self.pos = at;
                return Err(self.error("only the exponent -1 may be negative"));
            }
            return Ok(Expr::Inv(Box::new(base), column));
        }
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected an exponent"));
        }
        let k = digits
            .parse()
            .map_err(|_| self.error("exponent too large"))?;
        Ok(Expr::Pow(Box::new(base), k))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn index(&mut self, letter: char) -> Result<u32, ParseError> {
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error(format!("`{letter}` needs an index")));
        }
        digits.parse().map_err(|_| self.error("index too large"))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        let column = self.pos + 1;
        if c.is_ascii_digit() {
            return Ok(Expr::Number(self.digits()));
        }
        if c == '(' {
            self.pos += 1;
            let inner = self.sum()?;
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(inner);
        }
        if !c.is_alphabetic() {
            return Err(self.error(format!("unexpected `{c}`")));
        }
        self.pos += 1;
        let atom = match c {
            'x' => Expr::X(self.index('x')?),
            'y' => Expr::Y(self.index('y')?),
            't' => Expr::T {
                index: self.index('t')?,
                column,
            },
            'e' => Expr::E,
            _ => {
                self.pos -= 1;
                return Err(self.error(format!("unknown letter `{c}`")));
            }
        };
        if self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric()) {
            self.pos = column - 1;
            return Err(self.error("unknown symbol"));
        }
        Ok(atom)
    }
}

//! Recursive-descent parser for the small arithmetic language used to give
//! series (`z1, …, zn`) and polynomials (`x0, x1, …`) on the command line.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' nat)*          right-associative
//! base   := nat | var | '(' expr ')' | '-' base
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    /// Variable by its written subscript, with its position in the source.
    Var(usize, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Carries the position of the denominator for error reporting.
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    letter: u8,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat(b'/') {
                self.skip_ws();
                let at = self.pos;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?), at);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        let mut exps = Vec::new();
        while self.eat(b'^') {
            self.skip_ws();
            let at = self.pos;
            let e = self
                .digits()
                .ok_or_else(|| syntax(at, "expected a non-negative integer exponent"))?;
            exps.push((e.parse::<u32>().map_err(|_| syntax(at, "exponent too large"))?, at));
        }
        // a^b^c = a^(b^c)
        let mut total: Option<u32> = None;
        for (e, at) in exps.into_iter().rev() {
            total = Some(match total {
                None => e,
                Some(t) => e.checked_pow(t).ok_or_else(|| syntax(at, "exponent too large"))?,
            });
        }
        Ok(match total {
            None => base,
            Some(e) => Expr::Pow(Box::new(base), e),
        })
    }

    fn base(&mut self) -> Result<Expr> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.base()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(syntax(self.pos, "expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().expect("at least one digit");
                Ok(Expr::Num(d.parse().expect("decimal digits")))
            }
            Some(c) if c == self.letter => {
                self.pos += 1;
                let d = self
                    .digits()
                    .ok_or_else(|| syntax(self.pos, "expected a variable subscript"))?;
                let i = d.parse::<usize>().map_err(|_| syntax(at, "variable subscript too large"))?;
                Ok(Expr::Var(i, at))
            }
            Some(c) => Err(syntax(at, format!("unexpected character '{}'", c as char))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses `text` with variables written `<letter><subscript>`.
pub fn parse_expr(text: &str, letter: char) -> Result<Expr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        letter: letter as u8,
    };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(syntax(p.pos, format!("unexpected character '{}'", c as char)));
    }
    Ok(e)
}

fn check_vars(e: &Expr, ok: &impl Fn(usize) -> bool, letter: char) -> Result<()> {
    match e {
        Expr::Num(_) => Ok(()),
        Expr::Var(i, _) if ok(*i) => Ok(()),
        Expr::Var(i, pos) => Err(syntax(*pos, format!("variable {letter}{i} out of range"))),
        Expr::Neg(a) | Expr::Pow(a, _) => check_vars(a, ok, letter),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
            check_vars(a, ok, letter)?;
            check_vars(b, ok, letter)
        }
    }
}

fn series_of(e: &Expr, n: usize, cap: u32) -> Result<TruncatedSeries> {
    Ok(match e {
        Expr::Num(v) => TruncatedSeries::from_int(n, cap, v.clone()),
        Expr::Var(i, _) => TruncatedSeries::z(n, cap, *i),
        Expr::Neg(a) => series_of(a, n, cap)?.neg(),
        Expr::Add(a, b) => series_of(a, n, cap)?.add(&series_of(b, n, cap)?)?,
        Expr::Sub(a, b) => series_of(a, n, cap)?.sub(&series_of(b, n, cap)?)?,
        Expr::Mul(a, b) => series_of(a, n, cap)?.mul(&series_of(b, n, cap)?)?,
        Expr::Div(a, b, pos) => {
            let den = series_of(b, n, cap)?
                .recip()
                .map_err(|_| Error::NonUnitDenominator { pos: *pos })?;
            series_of(a, n, cap)?.mul(&den)?
        }
        Expr::Pow(a, k) => series_of(a, n, cap)?.pow(*k),
    })
}

fn poly_of(e: &Expr, nvars: usize) -> Result<Polynomial> {
    Ok(match e {
        Expr::Num(v) => Polynomial::from_int(nvars, v.clone()),
        Expr::Var(i, _) => Polynomial::var(nvars, *i),
        Expr::Neg(a) => -&poly_of(a, nvars)?,
        Expr::Add(a, b) => poly_of(a, nvars)?.try_add(&poly_of(b, nvars)?)?,
        Expr::Sub(a, b) => poly_of(a, nvars)?.try_sub(&poly_of(b, nvars)?)?,
        Expr::Mul(a, b) => poly_of(a, nvars)?.try_mul(&poly_of(b, nvars)?)?,
        Expr::Div(a, b, pos) => {
            let den = poly_of(b, nvars)?;
            let c = match den.total_degree() {
                Some(0) => den.coeff(&vec![0; nvars]),
                _ => BigRational::zero(),
            };
            if c.is_zero() {
                return Err(Error::NonUnitDenominator { pos: *pos });
            }
            poly_of(a, nvars)?.scale(&c.recip())
        }
        Expr::Pow(a, k) => poly_of(a, nvars)?.pow(*k),
    })
}

/// Expands a rational expression in `z1, …, zn` to a series truncated at `cap`.
pub fn parse_rational_expr(text: &str, nvars: usize, cap: u32) -> Result<TruncatedSeries> {
    let e = parse_expr(text, 'z')?;
    check_vars(&e, &|i| (1..=nvars).contains(&i), 'z')?;
    series_of(&e, nvars, cap)
}

/// Parses a polynomial in `x0, …, x{nvars-1}`; division only by nonzero constants.
pub fn parse_polynomial(text: &str, nvars: usize) -> Result<Polynomial> {
    let e = parse_expr(text, 'x')?;
    check_vars(&e, &|i| i < nvars, 'x')?;
    poly_of(&e, nvars)
}

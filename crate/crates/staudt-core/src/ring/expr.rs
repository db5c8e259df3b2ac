//! Ring spec grammar.
//!
//! ```text
//! expr := atom ( "x" atom )*
//! atom := "Z/" INT
//!       | "GF(" INT "," INT [ "," POLY ] ")"
//!       | "M2(" expr ")"
//!       | "T2(" expr ")"
//!       | "DUAL(" expr ")"
//!       | "(" expr ")"
//! POLY := "[" INT ("," INT)* "]"    -- coefficients, constant term first
//! ```
//!
//! Whitespace is insignificant. Products associate to the left; grouping
//! parentheses express right-nested products. The polynomial argument of
//! `GF` may be omitted, in which case a built-in default irreducible
//! polynomial is substituted (available for p ∈ {2,3,5,7}, k ≤ 3).

use std::fmt;

use crate::error::{Error, Result};

use super::build::default_irreducible;
use super::polyarith;

/// Abstract syntax tree of a ring spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingExpr {
    /// Integers modulo n.
    Zmod(u64),
    /// Galois field with p^k elements, as Z/p[x] modulo the given monic
    /// irreducible polynomial (coefficients constant-first, length k+1).
    Gf { p: u64, k: u32, poly: Vec<u64> },
    /// Full 2×2 matrix ring over the inner ring.
    Mat2Ring(Box<RingExpr>),
    /// Upper triangular 2×2 matrices over the inner ring.
    UpperTri2(Box<RingExpr>),
    /// Dual numbers: inner[ε] with ε² = 0.
    Dual(Box<RingExpr>),
    /// Direct product of two rings.
    Product(Box<RingExpr>, Box<RingExpr>),
}

impl RingExpr {
    /// Number of elements of the ring this expression denotes.
    pub fn size(&self) -> u64 {
        match self {
            RingExpr::Zmod(n) => *n,
            RingExpr::Gf { p, k, .. } => p.saturating_pow(*k),
            RingExpr::Mat2Ring(inner) => inner.size().saturating_pow(4),
            RingExpr::UpperTri2(inner) => inner.size().saturating_pow(3),
            RingExpr::Dual(inner) => inner.size().saturating_pow(2),
            RingExpr::Product(a, b) => a.size().saturating_mul(b.size()),
        }
    }

    /// Checks the semantic invariants: moduli at least 2, p prime, the
    /// polynomial monic-normalizable of degree k and irreducible over GF(p).
    pub fn validate(&self) -> Result<()> {
        match self {
            RingExpr::Zmod(n) => {
                if *n < 2 {
                    return Err(Error::Semantic(format!(
                        "Z/{n}: modulus must be at least 2"
                    )));
                }
                Ok(())
            }
            RingExpr::Gf { p, k, poly } => {
                if !is_prime(*p) {
                    return Err(Error::Semantic(format!("GF({p},{k}): {p} is not prime")));
                }
                if *k < 1 {
                    return Err(Error::Semantic(
                        "GF: extension degree must be at least 1".into(),
                    ));
                }
                if poly.len() != *k as usize + 1 {
                    return Err(Error::Semantic(format!(
                        "GF({p},{k}): polynomial must have degree {k} (got {} coefficients)",
                        poly.len()
                    )));
                }
                if poly[*k as usize] % p == 0 {
                    return Err(Error::Semantic(format!(
                        "GF({p},{k}): leading coefficient vanishes mod {p}"
                    )));
                }
                let monic = polyarith::make_monic(*p, poly);
                if !polyarith::is_irreducible(*p, &monic) {
                    return Err(Error::Semantic(format!(
                        "GF({p},{k}): polynomial {poly:?} is reducible over GF({p})"
                    )));
                }
                Ok(())
            }
            RingExpr::Mat2Ring(inner) | RingExpr::UpperTri2(inner) | RingExpr::Dual(inner) => {
                inner.validate()
            }
            RingExpr::Product(a, b) => {
                a.validate()?;
                b.validate()
            }
        }
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zmod(n) => write!(f, "Z/{n}"),
            RingExpr::Gf { p, k, poly } => {
                write!(f, "GF({p},{k},[")?;
                for (i, c) in poly.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "])")
            }
            RingExpr::Mat2Ring(inner) => write!(f, "M2({inner})"),
            RingExpr::UpperTri2(inner) => write!(f, "T2({inner})"),
            RingExpr::Dual(inner) => write!(f, "DUAL({inner})"),
            // The grammar is left-associative, so only a right operand that
            // is itself a product needs grouping.
            RingExpr::Product(a, b) => match **b {
                RingExpr::Product(..) => write!(f, "{a}x({b})"),
                _ => write!(f, "{a}x{b}"),
            },
        }
    }
}

/// Parses a ring spec string into a validated [`RingExpr`].
pub fn parse_ring_spec(text: &str) -> Result<RingExpr> {
    let mut parser = Parser::new(text);
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.err("trailing input"));
    }
    expr.validate()?;
    Ok(expr)
}

struct Parser {
    chars: Vec<char>,
    // Byte offset of each char in the original text, for error positions.
    offsets: Vec<usize>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        let mut chars = Vec::new();
        let mut offsets = Vec::new();
        for (off, ch) in text.char_indices() {
            chars.push(ch);
            offsets.push(off);
        }
        Parser {
            chars,
            offsets,
            pos: 0,
        }
    }

    fn err(&self, msg: &str) -> Error {
        let pos = self
            .offsets
            .get(self.pos)
            .copied()
            .unwrap_or_else(|| self.offsets.last().map_or(0, |o| o + 1));
        Error::Syntax {
            pos,
            msg: msg.to_string(),
        }
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

    fn eat(&mut self, expected: char) -> Result<()> {
        self.skip_ws();
        match self.chars.get(self.pos) {
            Some(&c) if c == expected => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(&format!("expected '{expected}'"))),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse::<u64>()
            .map_err(|_| self.err("integer out of range"))
    }

    fn poly(&mut self) -> Result<Vec<u64>> {
        self.eat('[')?;
        let mut coeffs = vec![self.integer()?];
        while self.peek() == Some(',') {
            self.eat(',')?;
            coeffs.push(self.integer()?);
        }
        self.eat(']')?;
        Ok(coeffs)
    }

    fn expr(&mut self) -> Result<RingExpr> {
        let mut left = self.atom()?;
        while self.peek() == Some('x') {
            self.eat('x')?;
            let right = self.atom()?;
            left = RingExpr::Product(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn atom(&mut self) -> Result<RingExpr> {
        self.skip_ws();
        if self.try_keyword("Z/") {
            return Ok(RingExpr::Zmod(self.integer()?));
        }
        if self.try_keyword("GF(") {
            let p = self.integer()?;
            self.eat(',')?;
            let k = self.integer()?;
            if k > u32::MAX as u64 {
                return Err(self.err("extension degree out of range"));
            }
            let k = k as u32;
            let poly = if self.peek() == Some(',') {
                self.eat(',')?;
                self.poly()?
            } else {
                default_irreducible(p, k).ok_or_else(|| {
                    Error::Semantic(format!(
                        "GF({p},{k}): no built-in irreducible polynomial; supply one explicitly"
                    ))
                })?
            };
            self.eat(')')?;
            return Ok(RingExpr::Gf { p, k, poly });
        }
        if self.try_keyword("M2(") {
            let inner = self.expr()?;
            self.eat(')')?;
            return Ok(RingExpr::Mat2Ring(Box::new(inner)));
        }
        if self.try_keyword("T2(") {
            let inner = self.expr()?;
            self.eat(')')?;
            return Ok(RingExpr::UpperTri2(Box::new(inner)));
        }
        if self.try_keyword("DUAL(") {
            let inner = self.expr()?;
            self.eat(')')?;
            return Ok(RingExpr::Dual(Box::new(inner)));
        }
        if self.peek() == Some('(') {
            self.eat('(')?;
            let inner = self.expr()?;
            self.eat(')')?;
            return Ok(inner);
        }
        Err(self.err("expected a ring constructor (Z/, GF, M2, T2, DUAL) or '('"))
    }

    /// Matches a multi-character keyword, skipping interior whitespace.
    fn try_keyword(&mut self, kw: &str) -> bool {
        let save = self.pos;
        for expected in kw.chars() {
            self.skip_ws();
            match self.chars.get(self.pos) {
                Some(&c) if c == expected => self.pos += 1,
                _ => {
                    self.pos = save;
                    return false;
                }
            }
        }
        true
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

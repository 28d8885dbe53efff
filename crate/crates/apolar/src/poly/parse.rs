//! Expression parser for polynomial text input.
//!
//! Grammar (ASCII): variables `x`,`y`,`z` (either case) or indexed `x0..xN`;
//! operators `+ - * / ^`, parentheses, and juxtaposition for multiplication
//! (`2x`, `xyz`, `3(x+y)`).  Division is only by nonzero constants.
//! Coefficient constants depend on the field: `p/q` rationals everywhere,
//! `i` and `z12` (the primitive twelfth root of unity) and `conj(...)` where
//! the field supports them, decimal literals over the floating field.
//!
//! Letter variables fix the ambient count at three (`x^6` still lives in
//! `K[x,y,z]`); indexed variables fix it at the largest index plus one.
//! Mixing the two stylings is rejected.  The printer's output always parses
//! back to the same polynomial.

use crate::error::{Error, Result};
use crate::field::{ComplexF, CycElem, Rat, Scalar};
use crate::poly::{Exponent, Poly, Ring};
use num_bigint::BigInt;
use num_complex::Complex64;

/// Field-specific constant syntax used by the parser.
pub trait ParseField: Scalar {
    /// The constant `i`, when the field contains it.
    fn const_i() -> Option<Self> {
        None
    }

    /// The constant `z12`, when the field contains it.
    fn const_z12() -> Option<Self> {
        None
    }

    /// Complex conjugation on coefficients, when defined.
    fn conjugate(&self) -> Option<Self> {
        None
    }

    /// Decimal literals such as `0.25`, when the field is inexact.
    fn from_decimal(_v: f64) -> Option<Self> {
        None
    }
}

impl ParseField for Rat {
    fn conjugate(&self) -> Option<Self> {
        Some(self.clone())
    }
}

impl ParseField for CycElem {
    fn const_i() -> Option<Self> {
        Some(CycElem::imaginary_unit())
    }

    fn const_z12() -> Option<Self> {
        Some(CycElem::primitive_root())
    }

    fn conjugate(&self) -> Option<Self> {
        Some(self.conj())
    }
}

impl ParseField for ComplexF {
    fn const_i() -> Option<Self> {
        Some(ComplexF::new(0.0, 1.0))
    }

    fn const_z12() -> Option<Self> {
        let z = Complex64::from_polar(1.0, std::f64::consts::PI / 6.0);
        Some(ComplexF::new(z.re, z.im))
    }

    fn conjugate(&self) -> Option<Self> {
        Some(ComplexF::new(self.0.re, -self.0.im))
    }

    fn from_decimal(v: f64) -> Option<Self> {
        Some(ComplexF::new(v, 0.0))
    }
}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err_at(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line: line as u32, col: col as u32, msg: msg.into() }
}

fn lex(src: &str) -> Result<Vec<Lexed>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut it = src.chars().peekable();
    while let Some(&c) = it.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |it: &mut std::iter::Peekable<std::str::Chars>| {
            let c = it.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut it);
            continue;
        }
        let tok = match c {
            '+' => {
                bump(&mut it);
                Tok::Plus
            }
            '-' => {
                bump(&mut it);
                Tok::Minus
            }
            '*' => {
                bump(&mut it);
                Tok::Star
            }
            '/' => {
                bump(&mut it);
                Tok::Slash
            }
            '^' => {
                bump(&mut it);
                Tok::Caret
            }
            '(' => {
                bump(&mut it);
                Tok::LParen
            }
            ')' => {
                bump(&mut it);
                Tok::RParen
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                let mut seen_dot = false;
                while let Some(&d) = it.peek() {
                    if d.is_ascii_digit() {
                        s.push(bump(&mut it));
                    } else if d == '.' && !seen_dot {
                        seen_dot = true;
                        s.push(bump(&mut it));
                    } else {
                        break;
                    }
                }
                Tok::Num(s)
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() {
                        s.push(bump(&mut it));
                    } else {
                        break;
                    }
                }
                Tok::Ident(s)
            }
            other => return Err(err_at(tl, tc, format!("unexpected character '{other}'"))),
        };
        out.push(Lexed { tok, line: tl, col: tc });
    }
    Ok(out)
}

/// How an identifier is interpreted; `conj`, `i`, and `z12` are reserved.
enum Name {
    Keyword,
    /// Variable indices the identifier denotes (juxtaposed letters expand to
    /// several), plus whether the styling is indexed (`x0`) or lettered (`x`).
    Vars { indices: Vec<usize>, indexed: bool },
    Unknown,
}

fn classify(ident: &str) -> Name {
    if matches!(ident, "conj" | "i" | "z12") {
        return Name::Keyword;
    }
    let letter_index = |c: char| match c.to_ascii_lowercase() {
        'x' => Some(0usize),
        'y' => Some(1),
        'z' => Some(2),
        _ => None,
    };
    let mut chars = ident.chars();
    let head = chars.next().unwrap();
    let tail: String = chars.collect();
    if !tail.is_empty() && tail.chars().all(|c| c.is_ascii_digit()) {
        if head.to_ascii_lowercase() == 'x' {
            if let Ok(k) = tail.parse::<usize>() {
                return Name::Vars { indices: vec![k], indexed: true };
            }
        }
        return Name::Unknown;
    }
    let maybe: Option<Vec<usize>> = ident.chars().map(letter_index).collect();
    match maybe {
        Some(indices) => Name::Vars { indices, indexed: false },
        None => Name::Unknown,
    }
}

/// Scan all identifiers to fix the ambient variable count before parsing.
fn infer_nvars(toks: &[Lexed], min_vars: usize) -> Result<usize> {
    let mut lettered = false;
    let mut max_indexed: Option<usize> = None;
    for t in toks {
        if let Tok::Ident(s) = &t.tok {
            match classify(s) {
                Name::Keyword => {}
                Name::Vars { indices, indexed: true } => {
                    let k = indices[0];
                    max_indexed = Some(max_indexed.map_or(k, |m| m.max(k)));
                }
                Name::Vars { indexed: false, .. } => lettered = true,
                Name::Unknown => {
                    return Err(err_at(t.line, t.col, format!("unknown symbol '{s}'")))
                }
            }
        }
    }
    if lettered && max_indexed.is_some() {
        return Err(err_at(
            toks[0].line,
            toks[0].col,
            "cannot mix letter variables (x,y,z) with indexed variables (x0..xN)",
        ));
    }
    let inferred = if lettered {
        3
    } else if let Some(m) = max_indexed {
        m + 1
    } else {
        0
    };
    Ok(inferred.max(min_vars))
}

struct Parser<'a, K: ParseField> {
    toks: &'a [Lexed],
    pos: usize,
    nvars: usize,
    ring: Ring,
    _marker: std::marker::PhantomData<K>,
}

impl<'a, K: ParseField> Parser<'a, K> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or((1, 1), |l| (l.line, l.col))
    }

    fn advance(&mut self) -> &Lexed {
        let l = &self.toks[self.pos];
        self.pos += 1;
        l
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let (line, col) = self.here();
        match self.peek() {
            Some(t) if *t == want => {
                self.advance();
                Ok(())
            }
            _ => Err(err_at(line, col, format!("expected {what}"))),
        }
    }

    fn starts_atom(tok: &Tok) -> bool {
        matches!(tok, Tok::Num(_) | Tok::Ident(_) | Tok::LParen)
    }

    fn expr(&mut self) -> Result<Poly<K>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.advance();
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.advance();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly<K>> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.advance();
                    acc = acc.mul(&self.unary()?)?;
                }
                Some(Tok::Slash) => {
                    let (line, col) = self.here();
                    self.advance();
                    let d = self.unary()?;
                    let c = d
                        .homogeneous_degree()
                        .filter(|&deg| deg == 0)
                        .map(|_| d.coeff(&Exponent::zeros(self.nvars)))
                        .ok_or_else(|| {
                            err_at(line, col, "division is only defined by nonzero constants")
                        })?;
                    let inv = c
                        .inv()
                        .map_err(|_| err_at(line, col, "division by zero"))?;
                    acc = acc.scalar_mul(&inv);
                }
                Some(t) if Self::starts_atom(t) => {
                    acc = acc.mul(&self.unary()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly<K>> {
        let mut negate = false;
        loop {
            match self.peek() {
                Some(Tok::Minus) => {
                    negate = !negate;
                    self.advance();
                }
                Some(Tok::Plus) => {
                    self.advance();
                }
                _ => break,
            }
        }
        let p = self.power()?;
        Ok(if negate { p.neg() } else { p })
    }

    fn power(&mut self) -> Result<Poly<K>> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.advance();
            let (line, col) = self.here();
            match self.peek().cloned() {
                Some(Tok::Num(s)) if !s.contains('.') => {
                    self.advance();
                    let k: u32 = s
                        .parse()
                        .map_err(|_| err_at(line, col, "exponent out of range"))?;
                    return Ok(base.pow(k));
                }
                _ => return Err(err_at(line, col, "expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly<K>> {
        let (line, col) = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.advance();
                let c = if s.contains('.') {
                    let v: f64 = s
                        .parse()
                        .map_err(|_| err_at(line, col, "malformed number"))?;
                    K::from_decimal(v).ok_or_else(|| {
                        err_at(line, col, "decimal literals need the floating-point field")
                    })?
                } else {
                    let n = s
                        .parse::<BigInt>()
                        .map_err(|_| err_at(line, col, "malformed number"))?;
                    K::from_rat(&Rat::from_bigint(n))
                };
                Ok(Poly::constant(self.nvars, self.ring, c))
            }
            Some(Tok::Ident(s)) => {
                self.advance();
                match s.as_str() {
                    "i" => {
                        let c = K::const_i().ok_or_else(|| {
                            err_at(line, col, "'i' is not available in this coefficient field")
                        })?;
                        Ok(Poly::constant(self.nvars, self.ring, c))
                    }
                    "z12" => {
                        let c = K::const_z12().ok_or_else(|| {
                            err_at(line, col, "'z12' is not available in this coefficient field")
                        })?;
                        Ok(Poly::constant(self.nvars, self.ring, c))
                    }
                    "conj" => {
                        self.expect(Tok::LParen, "'(' after conj")?;
                        let inner = self.expr()?;
                        self.expect(Tok::RParen, "')'")?;
                        let mut failed = false;
                        let mapped = inner.map_coeffs(|c| match c.conjugate() {
                            Some(v) => v,
                            None => {
                                failed = true;
                                K::zero()
                            }
                        });
                        if failed {
                            return Err(err_at(
                                line,
                                col,
                                "'conj' is not available in this coefficient field",
                            ));
                        }
                        Ok(mapped)
                    }
                    _ => match classify(&s) {
                        Name::Vars { indices, .. } => {
                            let mut p = Poly::one(self.nvars, self.ring);
                            for idx in indices {
                                if idx >= self.nvars {
                                    return Err(err_at(
                                        line,
                                        col,
                                        format!("variable index {idx} out of range"),
                                    ));
                                }
                                p = p.mul(&Poly::variable(self.nvars, self.ring, idx))?;
                            }
                            Ok(p)
                        }
                        _ => Err(err_at(line, col, format!("unknown symbol '{s}'"))),
                    },
                }
            }
            Some(Tok::LParen) => {
                self.advance();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(err_at(line, col, "expected a number, variable, or '('")),
        }
    }
}

/// Parse a polynomial expression; `min_vars` raises the inferred ambient
/// variable count (it never lowers it).
pub fn parse_poly<K: ParseField>(src: &str, ring: Ring, min_vars: usize) -> Result<Poly<K>> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(err_at(1, 1, "empty expression"));
    }
    let nvars = infer_nvars(&toks, min_vars)?;
    let mut p = Parser::<K> { toks: &toks, pos: 0, nvars, ring, _marker: std::marker::PhantomData };
    let poly = p.expr()?;
    if p.pos < toks.len() {
        let (line, col) = p.here();
        return Err(err_at(line, col, "unexpected trailing input"));
    }
    Ok(poly)
}

/// Parse a constant expression (no variables allowed).
pub fn parse_const<K: ParseField>(src: &str) -> Result<K> {
    let p = parse_poly::<K>(src, Ring::Primal, 0)?;
    match p.homogeneous_degree() {
        None if p.is_zero() => Ok(K::zero()),
        Some(0) => Ok(p.coeff(&Exponent::zeros(p.nvars()))),
        _ => Err(err_at(1, 1, "expected a constant expression")),
    }
}

//! Bertini-syntax and JSON input/output for squared polynomial systems, plus
//! the solutions report.
//!
//! The emitted input file carries the squaring seed in a comment header, one
//! `hom_variable_group` line per projective group, a `variable_group` line for
//! each affine block, and the squared equations as `eqN = ...;` assignments.
//! A small recursive-descent parser reads the same format back; floats print
//! with Rust's shortest round-trip formatting, so re-parsing reproduces the
//! coefficients bit for bit.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::ComplexF;
use crate::poly::{Exponent, Poly, Ring};

use super::tracker::TrackedSolution;
use super::{canonical_param_class, PolySystem, VarGroup};

fn fmt_coeff(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.im < 0.0 {
        format!("({}-{}*I)", c.re, -c.im)
    } else {
        format!("({}+{}*I)", c.re, c.im)
    }
}

fn fmt_poly(p: &Poly<ComplexF>, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (e, c) in p.terms() {
        let cs = fmt_coeff(c.0);
        let factors: Vec<String> =
            e.0.iter()
                .enumerate()
                .filter(|(_, &ex)| ex > 0)
                .map(|(v, &ex)| if ex == 1 { vars[v].clone() } else { format!("{}^{}", vars[v], ex) })
                .collect();
        let term = if factors.is_empty() {
            cs
        } else if cs == "1" {
            factors.join("*")
        } else if cs == "-1" {
            format!("-{}", factors.join("*"))
        } else {
            format!("{}*{}", cs, factors.join("*"))
        };
        if !out.is_empty() && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    out
}

/// Render a system as a Bertini input file.  Deterministic: the same system
/// always produces the same bytes.
pub fn emit_bertini(sys: &PolySystem) -> String {
    let mut s = String::new();
    writeln!(s, "% seed: {}", sys.seed).unwrap();
    s.push_str("CONFIG\nEND;\nINPUT\n");
    for g in &sys.groups {
        let names: Vec<&str> =
            (g.start()..g.start() + g.len()).map(|v| sys.variables[v].as_str()).collect();
        let kw = if g.is_projective() { "hom_variable_group" } else { "variable_group" };
        writeln!(s, "{kw} {};", names.join(",")).unwrap();
    }
    let fnames: Vec<String> = (0..sys.equations.len()).map(|i| format!("eq{i}")).collect();
    writeln!(s, "function {};", fnames.join(",")).unwrap();
    for (i, eq) in sys.equations.iter().enumerate() {
        writeln!(s, "eq{i} = {};", fmt_poly(eq, &sys.variables)).unwrap();
    }
    s.push_str("END;\n");
    s
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text = &src[start..i];
                let n: f64 = text
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad number literal: {text}")))?;
                toks.push(Tok::Num(n));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push(Tok::Ident(src[start..i].to_string()));
            }
            other => return Err(Error::Invalid(format!("unexpected character '{other}'"))),
        }
    }
    Ok(toks)
}

struct ExprParser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    nvars: usize,
    vars: &'a HashMap<String, usize>,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn constant(&self, z: Complex64) -> Poly<ComplexF> {
        Poly::constant(self.nvars, Ring::Primal, ComplexF(z))
    }

    fn sum(&mut self) -> Result<Poly<ComplexF>> {
        let mut negate = false;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                }
                Tok::Minus => {
                    negate = !negate;
                    self.pos += 1;
                }
                _ => break,
            }
        }
        let mut acc = self.product()?;
        if negate {
            acc = acc.scalar_mul(&ComplexF(Complex64::new(-1.0, 0.0)));
        }
        while let Some(t) = self.peek().cloned() {
            match t {
                Tok::Plus | Tok::Minus => {
                    self.pos += 1;
                    let mut rhs = self.product()?;
                    if t == Tok::Minus {
                        rhs = rhs.scalar_mul(&ComplexF(Complex64::new(-1.0, 0.0)));
                    }
                    acc = acc.add(&rhs)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Poly<ComplexF>> {
        let mut acc = self.power()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.pos += 1;
            acc = acc.mul(&self.power()?)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly<ComplexF>> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(n)) if n >= 0.0 && n.fract() == 0.0 => Ok(base.pow(n as u32)),
                other => Err(Error::Invalid(format!("bad exponent: {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly<ComplexF>> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(self.constant(Complex64::new(n, 0.0))),
            Some(Tok::Ident(name)) => {
                if name == "I" {
                    Ok(self.constant(Complex64::new(0.0, 1.0)))
                } else if let Some(&v) = self.vars.get(&name) {
                    Ok(Poly::variable(self.nvars, Ring::Primal, v))
                } else {
                    Err(Error::Invalid(format!("undeclared name '{name}'")))
                }
            }
            Some(Tok::Minus) => {
                let inner = self.atom()?;
                Ok(inner.scalar_mul(&ComplexF(Complex64::new(-1.0, 0.0))))
            }
            Some(Tok::LParen) => {
                let inner = self.sum()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    other => Err(Error::Invalid(format!("expected ')', found {other:?}"))),
                }
            }
            other => Err(Error::Invalid(format!("unexpected token {other:?}"))),
        }
    }
}

fn parse_expr(src: &str, nvars: usize, vars: &HashMap<String, usize>) -> Result<Poly<ComplexF>> {
    let mut p = ExprParser { toks: lex(src)?, pos: 0, nvars, vars };
    let poly = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Invalid(format!("trailing tokens in expression: {src}")));
    }
    Ok(poly)
}

/// Parse a Bertini input file produced by [`emit_bertini`] (comments, the
/// CONFIG block, variable-group declarations, and function assignments).
pub fn parse_bertini(src: &str) -> Result<PolySystem> {
    let mut seed = 0u64;
    for line in src.lines() {
        if let Some(rest) = line.trim().strip_prefix("% seed:") {
            seed = rest
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad seed comment: {line}")))?;
        }
    }
    let stripped: String = src
        .lines()
        .map(|l| l.split('%').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n");
    let input_pos = stripped
        .find("INPUT")
        .ok_or_else(|| Error::Invalid("no INPUT section".into()))?;
    let body = &stripped[input_pos + "INPUT".len()..];

    let mut variables: Vec<String> = Vec::new();
    let mut groups: Vec<VarGroup> = Vec::new();
    let mut functions: Vec<String> = Vec::new();
    let mut assignments: Vec<(String, String)> = Vec::new();
    for stmt in body.split(';') {
        let stmt = stmt.trim();
        if stmt.is_empty() {
            continue;
        }
        if stmt == "END" {
            break;
        }
        if let Some(rest) = stmt.strip_prefix("hom_variable_group") {
            let start = variables.len();
            for name in rest.split(',') {
                variables.push(name.trim().to_string());
            }
            groups.push(VarGroup::Projective { start, len: variables.len() - start });
        } else if let Some(rest) = stmt.strip_prefix("variable_group") {
            let start = variables.len();
            for name in rest.split(',') {
                variables.push(name.trim().to_string());
            }
            groups.push(VarGroup::Affine { start, len: variables.len() - start });
        } else if let Some(rest) = stmt.strip_prefix("function") {
            for name in rest.split(',') {
                functions.push(name.trim().to_string());
            }
        } else if let Some(eq) = stmt.find('=') {
            let name = stmt[..eq].trim().to_string();
            assignments.push((name, stmt[eq + 1..].trim().to_string()));
        } else {
            return Err(Error::Invalid(format!("unrecognized statement: {stmt}")));
        }
    }
    if variables.is_empty() {
        return Err(Error::Invalid("no variable declarations".into()));
    }
    let nvars = variables.len();
    let vars: HashMap<String, usize> =
        variables.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    let mut equations = Vec::with_capacity(functions.len());
    for fname in &functions {
        let (_, expr) = assignments
            .iter()
            .find(|(n, _)| n == fname)
            .ok_or_else(|| Error::Invalid(format!("function '{fname}' has no assignment")))?;
        equations.push(parse_expr(expr, nvars, &vars)?);
    }
    Ok(PolySystem {
        variables,
        groups,
        unsquared: equations.clone(),
        equations,
        seed,
        minor_rows: None,
        fixed_prefix: None,
    })
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    c: [f64; 2],
    e: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct GroupDoc {
    kind: String,
    start: usize,
    len: usize,
}

#[derive(Serialize, Deserialize)]
struct SystemDoc {
    seed: u64,
    variables: Vec<String>,
    groups: Vec<GroupDoc>,
    equations: Vec<Vec<TermDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unsquared: Option<Vec<Vec<TermDoc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    minor_rows: Option<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fixed_prefix: Option<Vec<[f64; 2]>>,
}

fn poly_to_terms(p: &Poly<ComplexF>) -> Vec<TermDoc> {
    p.terms().map(|(e, c)| TermDoc { c: [c.0.re, c.0.im], e: e.0.clone() }).collect()
}

fn terms_to_poly(terms: &[TermDoc], nvars: usize) -> Result<Poly<ComplexF>> {
    let mut p = Poly::zero(nvars, Ring::Primal);
    for t in terms {
        if t.e.len() != nvars {
            return Err(Error::Invalid("exponent length mismatch".into()));
        }
        let mono = Poly::monomial(
            nvars,
            Ring::Primal,
            Exponent(t.e.clone()),
            ComplexF(Complex64::new(t.c[0], t.c[1])),
        );
        p = p.add(&mono)?;
    }
    Ok(p)
}

/// Lossless JSON encoding of a system, including the unsquared equations and
/// rank-system metadata.
pub fn system_to_json(sys: &PolySystem) -> String {
    let doc = SystemDoc {
        seed: sys.seed,
        variables: sys.variables.clone(),
        groups: sys
            .groups
            .iter()
            .map(|g| GroupDoc {
                kind: if g.is_projective() { "projective" } else { "affine" }.into(),
                start: g.start(),
                len: g.len(),
            })
            .collect(),
        equations: sys.equations.iter().map(poly_to_terms).collect(),
        unsquared: Some(sys.unsquared.iter().map(poly_to_terms).collect()),
        minor_rows: sys.minor_rows,
        fixed_prefix: sys
            .fixed_prefix
            .as_ref()
            .map(|p| p.iter().map(|z| [z.re, z.im]).collect()),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("system serializes");
    s.push('\n');
    s
}

pub fn system_from_json(src: &str) -> Result<PolySystem> {
    let doc: SystemDoc =
        serde_json::from_str(src).map_err(|e| Error::Invalid(format!("bad system JSON: {e}")))?;
    let nvars = doc.variables.len();
    let mut groups = Vec::with_capacity(doc.groups.len());
    for g in &doc.groups {
        groups.push(match g.kind.as_str() {
            "projective" => VarGroup::Projective { start: g.start, len: g.len },
            "affine" => VarGroup::Affine { start: g.start, len: g.len },
            other => return Err(Error::Invalid(format!("unknown group kind '{other}'"))),
        });
    }
    let equations: Result<Vec<_>> =
        doc.equations.iter().map(|t| terms_to_poly(t, nvars)).collect();
    let equations = equations?;
    let unsquared = match &doc.unsquared {
        Some(list) => {
            let parsed: Result<Vec<_>> = list.iter().map(|t| terms_to_poly(t, nvars)).collect();
            parsed?
        }
        None => equations.clone(),
    };
    Ok(PolySystem {
        variables: doc.variables,
        groups,
        equations,
        unsquared,
        seed: doc.seed,
        minor_rows: doc.minor_rows,
        fixed_prefix: doc
            .fixed_prefix
            .map(|p| p.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()),
    })
}

#[derive(Serialize)]
struct SolutionEntry {
    params: Vec<[f64; 2]>,
    residual: f64,
    class: usize,
}

#[derive(Serialize)]
struct SolutionsDoc {
    seed: u64,
    paths: usize,
    converged: usize,
    solutions: Vec<SolutionEntry>,
}

/// Solutions report: converged endpoints with their projected parameter
/// values (or the full point when the system is not a rank system), plus a
/// symmetry-class index assigned in path order.  Deterministic per seed.
pub fn solutions_to_json(sys: &PolySystem, sols: &[TrackedSolution]) -> String {
    let mut reps: Vec<Vec<Complex64>> = Vec::new();
    let mut entries = Vec::new();
    for s in sols.iter().filter(|s| s.converged) {
        let params: Vec<Complex64> = match sys.param_values(&s.point) {
            Some(p) => canonical_param_class(&p).to_vec(),
            None => s.point.clone(),
        };
        let class = match reps.iter().position(|r| {
            r.len() == params.len()
                && r.iter().zip(&params).all(|(a, b)| (a - b).norm() < 1e-6)
        }) {
            Some(i) => i,
            None => {
                reps.push(params.clone());
                reps.len() - 1
            }
        };
        entries.push(SolutionEntry {
            params: params.iter().map(|z| [z.re, z.im]).collect(),
            residual: s.residual,
            class,
        });
    }
    let doc = SolutionsDoc {
        seed: sys.seed,
        paths: sols.len(),
        converged: entries.len(),
        solutions: entries,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("solutions serialize");
    s.push('\n');
    s
}

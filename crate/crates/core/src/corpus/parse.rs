//! The plain-text input language.
//!
//! ```text
//! field rational            # or: field gf 32003, field gf:32003, field q
//! ring x y z
//! degrees 1 1 1             # optional
//! poly y = z^2
//! ideal b = x^2 - z^2, y^2 - z^2
//! ```
//!
//! Declarations are separated by `;` or line breaks; a line ending in `,` or
//! a binary operator continues on the next line. `#` starts a comment.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::rings::{Field, MonomialOrder, PolyRing, Polynomial, Ring, RingExt};

pub const DEFAULT_PRIME: u32 = 32003;

/// A parsed input file.
#[derive(Debug, Clone, PartialEq)]
pub struct InputDocument {
    pub field: Field,
    pub ring: Ring,
    pub polys: Vec<(String, Polynomial)>,
    pub ideals: Vec<(String, Vec<Polynomial>)>,
}

impl InputDocument {
    pub fn poly(&self, name: &str) -> Option<&Polynomial> {
        self.polys.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn ideal_gens(&self, name: &str) -> Option<&[Polynomial]> {
        self.ideals.iter().find(|(n, _)| n == name).map(|(_, g)| g.as_slice())
    }

    pub fn ideal(&self, name: &str) -> Option<Result<Ideal>> {
        self.ideal_gens(name).map(|g| Ideal::new(&self.ring, g.to_vec()))
    }

    /// Text that parses back to an equal document.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for InputDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        writeln!(f, "ring {}", self.ring.names().join(" "))?;
        if self.ring.weights().iter().any(|&w| w != 1) {
            let w: Vec<String> = self.ring.weights().iter().map(|w| w.to_string()).collect();
            writeln!(f, "degrees {}", w.join(" "))?;
        }
        for (name, p) in &self.polys {
            writeln!(f, "poly {name} = {p}")?;
        }
        for (name, gens) in &self.ideals {
            let g: Vec<String> = gens.iter().map(|p| p.to_string()).collect();
            writeln!(f, "ideal {name} = {}", g.join(", "))?;
        }
        Ok(())
    }
}

/// `gf:p`, `gf p`, `q` or `rational`.
pub fn parse_field(text: &str) -> Result<Field> {
    let t = text.trim();
    match t {
        "q" | "Q" | "rational" => return Ok(Field::Rational),
        _ => {}
    }
    let rest = t
        .strip_prefix("gf")
        .map(|r| r.trim_start_matches([':', ' ']))
        .ok_or_else(|| Error::InvalidField(t.to_string()))?;
    let p: u32 = rest.parse().map_err(|_| Error::InvalidField(t.to_string()))?;
    Field::prime(p)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Sep,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out: Vec<Token> = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (ln, col) = (li + 1, i + 1);
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let tok = if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                Tok::Ident(chars[start..i].iter().collect())
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                Tok::Int(s.parse().expect("digits"))
            } else if "+-*/^()=,:".contains(c) {
                i += 1;
                Tok::Sym(c)
            } else if c == ';' {
                i += 1;
                Tok::Sep
            } else {
                return Err(Error::Parse { line: ln, column: col, message: format!("unexpected character `{c}`") });
            };
            out.push(Token { tok, line: ln, column: col });
        }
        let continues = matches!(out.last(), Some(Token { tok: Tok::Sym(s), .. }) if "+-*/^(=,".contains(*s));
        if !continues {
            out.push(Token { tok: Tok::Sep, line: li + 1, column: chars.len() + 1 });
        }
    }
    let (line, column) = out.last().map_or((1, 1), |t| (t.line, t.column));
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    field: Field,
    names: Option<Vec<String>>,
    weights: Option<Vec<u32>>,
    ring: Option<Ring>,
    polys: Vec<(String, Polynomial)>,
    ideals: Vec<(String, Vec<Polynomial>)>,
}

/// Parses a whole document; every polynomial must be homogeneous.
pub fn parse_input(text: &str) -> Result<InputDocument> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        field: Field::Prime(DEFAULT_PRIME),
        names: None,
        weights: None,
        ring: None,
        polys: Vec::new(),
        ideals: Vec::new(),
    };
    p.document()?;
    let ring = p.build_ring()?;
    Ok(InputDocument { field: p.field, ring, polys: p.polys, ideals: p.ideals })
}

/// Parses a single polynomial over `ring`, allowing the names in `polys`.
pub fn parse_polynomial(ring: &Ring, text: &str, polys: &[(String, Polynomial)]) -> Result<Polynomial> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        field: ring.field(),
        names: Some(ring.names().to_vec()),
        weights: Some(ring.weights().to_vec()),
        ring: Some(ring.clone()),
        polys: polys.to_vec(),
        ideals: Vec::new(),
    };
    p.skip_seps();
    let (line, column) = p.loc();
    let poly = p.expr()?;
    p.skip_seps();
    p.expect_end()?;
    check_homogeneous(&poly, "expression", line, column)?;
    Ok(poly)
}

/// Parses a comma separated list of polynomials over `ring`.
pub fn parse_polynomial_list(ring: &Ring, text: &str, polys: &[(String, Polynomial)]) -> Result<Vec<Polynomial>> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        field: ring.field(),
        names: Some(ring.names().to_vec()),
        weights: Some(ring.weights().to_vec()),
        ring: Some(ring.clone()),
        polys: polys.to_vec(),
        ideals: Vec::new(),
    };
    p.skip_seps();
    let gens = p.expr_list("expression")?;
    p.skip_seps();
    p.expect_end()?;
    Ok(gens)
}

fn check_homogeneous(p: &Polynomial, what: &str, line: usize, column: usize) -> Result<()> {
    if p.is_homogeneous() || p.is_zero() {
        Ok(())
    } else {
        Err(Error::Inhomogeneous(format!("{what} at {line}:{column}: {p}")))
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn loc(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.column)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.loc();
        Err(Error::Parse { line, column, message: message.into() })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn skip_seps(&mut self) {
        while *self.peek() == Tok::Sep {
            self.bump();
        }
    }

    fn expect_end(&self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            t => self.err(format!("unexpected {}", describe(t))),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Tok::Sym(s) if *s == c => {
                self.bump();
                Ok(())
            }
            t => self.err(format!("expected `{c}`, found {}", describe(t))),
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            t => self.err(format!("expected a name, found {}", describe(&t))),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            t => self.err(format!("expected an integer, found {}", describe(&t))),
        }
    }

    fn end_of_statement(&mut self) -> Result<()> {
        match self.peek() {
            Tok::Sep => {
                self.skip_seps();
                Ok(())
            }
            Tok::End => Ok(()),
            t => self.err(format!("expected end of declaration, found {}", describe(t))),
        }
    }

    fn document(&mut self) -> Result<()> {
        self.skip_seps();
        while *self.peek() != Tok::End {
            let (line, column) = self.loc();
            let kw = self.ident()?;
            match kw.as_str() {
                "field" => self.field_decl(line, column)?,
                "ring" => {
                    if self.names.is_some() {
                        return Err(Error::Parse { line, column, message: "ring declared twice".into() });
                    }
                    let mut names = Vec::new();
                    while let Tok::Ident(_) = self.peek() {
                        names.push(self.ident()?);
                    }
                    if names.is_empty() {
                        return self.err("ring needs at least one variable");
                    }
                    self.names = Some(names);
                }
                "degrees" => {
                    if self.ring.is_some() {
                        return Err(Error::Parse { line, column, message: "degrees must precede definitions".into() });
                    }
                    let mut w = Vec::new();
                    while let Tok::Int(_) = self.peek() {
                        let n = self.int()?;
                        w.push(u32::try_from(n).map_err(|_| Error::Parse { line, column, message: "degree out of range".into() })?);
                    }
                    self.weights = Some(w);
                }
                "poly" => {
                    let (nl, nc) = self.loc();
                    let name = self.ident()?;
                    self.expect_sym('=')?;
                    self.ensure_ring(line, column)?;
                    if self.names.as_ref().is_some_and(|v| v.contains(&name)) {
                        return Err(Error::Parse { line: nl, column: nc, message: format!("`{name}` is a ring variable") });
                    }
                    let (pl, pc) = self.loc();
                    let p = self.expr()?;
                    check_homogeneous(&p, &format!("poly {name}"), pl, pc)?;
                    self.polys.retain(|(n, _)| *n != name);
                    self.polys.push((name, p));
                }
                "ideal" => {
                    let name = self.ident()?;
                    self.expect_sym('=')?;
                    self.ensure_ring(line, column)?;
                    let gens = self.expr_list(&format!("ideal {name}"))?;
                    self.ideals.retain(|(n, _)| *n != name);
                    self.ideals.push((name, gens));
                }
                other => {
                    return Err(Error::Parse { line, column, message: format!("unknown declaration `{other}`") });
                }
            }
            self.end_of_statement()?;
        }
        Ok(())
    }

    fn field_decl(&mut self, line: usize, column: usize) -> Result<()> {
        if self.names.is_some() {
            return Err(Error::Parse { line, column, message: "field must precede ring".into() });
        }
        let name = self.ident()?;
        self.field = match name.as_str() {
            "rational" | "q" | "Q" => Field::Rational,
            "gf" => {
                if *self.peek() == Tok::Sym(':') {
                    self.bump();
                }
                let (l, c) = self.loc();
                let p = self.int()?;
                let p = u32::try_from(p).map_err(|_| Error::Parse { line: l, column: c, message: "prime out of range".into() })?;
                Field::prime(p).map_err(|e| Error::Parse { line: l, column: c, message: e.to_string() })?
            }
            other => return Err(Error::Parse { line, column, message: format!("unknown field `{other}`") }),
        };
        Ok(())
    }

    fn build_ring(&mut self) -> Result<Ring> {
        if let Some(r) = &self.ring {
            return Ok(r.clone());
        }
        let names = self.names.clone().ok_or_else(|| {
            let (line, column) = self.loc();
            Error::Parse { line, column, message: "missing ring declaration".into() }
        })?;
        let weights = self.weights.clone().unwrap_or_else(|| vec![1; names.len()]);
        let r = PolyRing::with_weights(&names, &weights, self.field, MonomialOrder::Grevlex)?;
        self.ring = Some(r.clone());
        Ok(r)
    }

    fn ensure_ring(&mut self, line: usize, column: usize) -> Result<()> {
        if self.names.is_none() {
            return Err(Error::Parse { line, column, message: "definition before ring declaration".into() });
        }
        self.build_ring().map_err(|e| Error::Parse { line, column, message: e.to_string() })?;
        Ok(())
    }

    fn expr_list(&mut self, what: &str) -> Result<Vec<Polynomial>> {
        let mut gens = Vec::new();
        loop {
            let (line, column) = self.loc();
            let p = self.expr()?;
            check_homogeneous(&p, what, line, column)?;
            gens.push(p);
            if *self.peek() == Tok::Sym(',') {
                self.bump();
            } else {
                return Ok(gens);
            }
        }
    }

    fn ring(&self) -> &Ring {
        self.ring.as_ref().expect("ring is built before expressions")
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Sym('/') => {
                    self.bump();
                    let (line, column) = self.loc();
                    let divisor = self.unary()?;
                    let inv = divisor.constant_value().and_then(|c| c.inv()).ok_or_else(|| Error::Parse {
                        line,
                        column,
                        message: "division is only by nonzero constants".into(),
                    })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Sym('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if *self.peek() == Tok::Sym('^') {
            self.bump();
            let (line, column) = self.loc();
            let e = self.int()?;
            let e = u32::try_from(e).map_err(|_| Error::Parse { line, column, message: "exponent out of range".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let (line, column) = self.loc();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Polynomial::constant(self.ring(), self.field.from_bigint(&n)))
            }
            Tok::Ident(name) => {
                self.bump();
                if let Some(v) = self.ring().var_named(&name) {
                    Ok(v)
                } else if let Some((_, p)) = self.polys.iter().find(|(n, _)| *n == name) {
                    Ok(p.clone())
                } else {
                    Err(Error::UnknownIdentifier { name, line, column })
                }
            }
            Tok::Sym('(') => {
                self.bump();
                let p = self.expr()?;
                self.expect_sym(')')?;
                Ok(p)
            }
            t => self.err(format!("expected an expression, found {}", describe(&t))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Sep => "end of declaration".into(),
        Tok::End => "end of input".into(),
    }
}

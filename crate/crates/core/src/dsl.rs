//! A small description language for polynomial vector fields.
//!
//! ```text
//! # comments run to the end of the line
//! params a = 1/2, b;          # parameters, optionally with defaults
//! vars x, y;
//! dx = x + a*x^2;
//! dy = 3*y - x^2;
//! symmetry Y { dx = x; dy = y + x^2; }
//! ```
//!
//! Expressions use `+ - * / ^` and parentheses; `*` is mandatory, exponents
//! are non-negative integer literals and division is only allowed by
//! expressions free of variables. Syntax is checked in full before any
//! semantic check, so positions in errors always refer to the first problem
//! in reading order within each phase.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraError, Polynomial, VectorField};
use crate::scalar::{format_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DslError {
    #[error("{line}:{col}: unexpected character '{ch}'")]
    Lexical { line: usize, col: usize, ch: char },
    #[error("{line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{line}:{col}: undeclared identifier '{name}'")]
    Undeclared { line: usize, col: usize, name: String },
    #[error("{line}:{col}: not a polynomial: {message}")]
    NonPolynomial { line: usize, col: usize, message: String },
    #[error("{line}:{col}: {message}")]
    Semantic { line: usize, col: usize, message: String },
    #[error("parameter '{0}' has no value; bind it with a default or an explicit binding")]
    UnboundParameter(String),
    #[error("unknown parameter '{0}'")]
    UnknownParameter(String),
    #[error("unknown symmetry '{0}'")]
    UnknownSymmetry(String),
    #[error("division by zero after binding parameters")]
    DivisionByZero,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub var: String,
    pub rhs: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryDecl {
    pub name: String,
    pub equations: Vec<Equation>,
}

/// A parsed field description. Equations are kept in source order; the
/// field's components follow the order of `vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub vars: Vec<String>,
    pub params: Vec<(String, Option<Rational>)>,
    pub equations: Vec<Equation>,
    pub symmetries: Vec<SymmetryDecl>,
}

// ---------------------------------------------------------------- lexer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, DslError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), pos));
            continue;
        }
        if "+-*/^=;,(){}".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
            col += 1;
            continue;
        }
        return Err(DslError::Lexical { line, col, ch: c });
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

// ---------------------------------------------------------------- parser

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Scope {
    Field,
    Symmetry(usize),
}

/// Positions recorded during the syntax pass for the semantic pass.
#[derive(Default)]
struct Marks {
    vars_decls: Vec<Pos>,
    idents: Vec<(String, Pos)>,
    divisors: Vec<(Vec<String>, Pos)>,
    equations: Vec<(String, Scope, Pos)>,
    params: Vec<(String, Pos)>,
    vars: Vec<(String, Pos)>,
    symmetries: Vec<(String, Pos)>,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    marks: Marks,
}

const KEYWORDS: [&str; 3] = ["vars", "params", "symmetry"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, pos: Pos, message: impl Into<String>) -> Result<T, DslError> {
        Err(DslError::Syntax {
            line: pos.line,
            col: pos.col,
            message: message.into(),
        })
    }

    fn expect_sym(&mut self, c: char, context: &str) -> Result<Pos, DslError> {
        match self.peek() {
            Tok::Sym(s) if *s == c => Ok(self.bump().1),
            other => {
                let msg = format!("expected '{c}' {context}, found {other}");
                self.err(self.pos(), msg)
            }
        }
    }

    fn expect_ident(&mut self, context: &str) -> Result<(String, Pos), DslError> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let p = self.bump().1;
                Ok((s, p))
            }
            other => {
                let msg = format!("expected an identifier {context}, found {other}");
                self.err(self.pos(), msg)
            }
        }
    }

    fn is_sym(&self, c: char) -> bool {
        matches!(self.peek(), Tok::Sym(s) if *s == c)
    }

    fn spec(&mut self) -> Result<FieldSpec, DslError> {
        let mut spec = FieldSpec {
            vars: Vec::new(),
            params: Vec::new(),
            equations: Vec::new(),
            symmetries: Vec::new(),
        };
        loop {
            match self.peek().clone() {
                Tok::Eof => return Ok(spec),
                Tok::Ident(k) if k == "vars" => {
                    let p = self.bump().1;
                    self.marks.vars_decls.push(p);
                    loop {
                        let (name, np) = self.expect_ident("in the variable list")?;
                        self.marks.vars.push((name.clone(), np));
                        spec.vars.push(name);
                        if self.is_sym(',') {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    self.expect_sym(';', "after the variable list")?;
                }
                Tok::Ident(k) if k == "params" => {
                    self.bump();
                    loop {
                        let (name, np) = self.expect_ident("in the parameter list")?;
                        let value = if self.is_sym('=') {
                            self.bump();
                            Some(self.signed_rational()?)
                        } else {
                            None
                        };
                        self.marks.params.push((name.clone(), np));
                        spec.params.push((name, value));
                        if self.is_sym(',') {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    self.expect_sym(';', "after the parameter list")?;
                }
                Tok::Ident(k) if k == "symmetry" => {
                    self.bump();
                    let (name, np) = self.expect_ident("naming the symmetry")?;
                    self.marks.symmetries.push((name.clone(), np));
                    self.expect_sym('{', "to open the symmetry block")?;
                    let scope = Scope::Symmetry(spec.symmetries.len());
                    let mut equations = Vec::new();
                    while !self.is_sym('}') {
                        equations.push(self.equation(scope)?);
                    }
                    self.bump();
                    spec.symmetries.push(SymmetryDecl { name, equations });
                }
                Tok::Ident(_) => {
                    let eq = self.equation(Scope::Field)?;
                    spec.equations.push(eq);
                }
                other => {
                    let msg = format!("expected a declaration, found {other}");
                    return self.err(self.pos(), msg);
                }
            }
        }
    }

    fn signed_rational(&mut self) -> Result<Rational, DslError> {
        let neg = if self.is_sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let num = self.int_literal("as a parameter value")?;
        let den = if self.is_sym('/') {
            let p = self.bump().1;
            let d = self.int_literal("as a denominator")?;
            if d.is_zero() {
                return self.err(p, "zero denominator");
            }
            d
        } else {
            BigInt::one()
        };
        let q = Rational::new(num, den);
        Ok(if neg { -q } else { q })
    }

    fn int_literal(&mut self, context: &str) -> Result<BigInt, DslError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            other => {
                let msg = format!("expected an integer {context}, found {other}");
                self.err(self.pos(), msg)
            }
        }
    }

    fn equation(&mut self, scope: Scope) -> Result<Equation, DslError> {
        let (name, p) = match self.peek().clone() {
            Tok::Ident(s) if s.len() > 1 && s.starts_with('d') && !KEYWORDS.contains(&s.as_str()) => {
                let p = self.bump().1;
                (s, p)
            }
            other => {
                let msg = format!("expected an equation 'dVAR = ...', found {other}");
                return self.err(self.pos(), msg);
            }
        };
        let var = name[1..].to_string();
        self.expect_sym('=', &format!("after '{name}'"))?;
        let rhs = self.expr()?;
        self.expect_sym(';', "to end the equation")?;
        self.marks.equations.push((var.clone(), scope, p));
        Ok(Equation { var, rhs })
    }

    fn starts_operand(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::Ident(_)) || self.is_sym('(') || self.is_sym('-') || self.is_sym('+')
    }

    fn operand_after(&mut self, op: char, op_pos: Pos, f: fn(&mut Self) -> Result<Expr, DslError>) -> Result<Expr, DslError> {
        if !self.starts_operand() {
            let found = self.peek().clone();
            return self.err(op_pos, format!("dangling operator '{op}': expected an operand, found {found}"));
        }
        f(self)
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.term()?;
        while self.is_sym('+') || self.is_sym('-') {
            let (t, p) = self.bump();
            let Tok::Sym(op) = t else { unreachable!() };
            let rhs = self.operand_after(op, p, Self::term)?;
            lhs = if op == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.unary()?;
        loop {
            if self.is_sym('*') || self.is_sym('/') {
                let (t, p) = self.bump();
                let Tok::Sym(op) = t else { unreachable!() };
                let before = self.marks.idents.len();
                let rhs = self.operand_after(op, p, Self::unary)?;
                if op == '*' {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                } else {
                    let names = self.marks.idents[before..].iter().map(|(n, _)| n.clone()).collect();
                    self.marks.divisors.push((names, p));
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
            } else if matches!(self.peek(), Tok::Int(_) | Tok::Ident(_)) || self.is_sym('(') {
                let found = self.peek().clone();
                return self.err(self.pos(), format!("expected an operator before {found} ('*' is mandatory)"));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, DslError> {
        if self.is_sym('-') || self.is_sym('+') {
            let (t, p) = self.bump();
            let Tok::Sym(op) = t else { unreachable!() };
            let inner = self.operand_after(op, p, Self::unary)?;
            return Ok(if op == '-' { Expr::Neg(Box::new(inner)) } else { inner });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, DslError> {
        let base = self.atom()?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        let p = self.bump().1;
        match self.peek().clone() {
            Tok::Int(n) => {
                let ep = self.bump().1;
                let e = u32::try_from(&n).map_err(|_| DslError::NonPolynomial {
                    line: ep.line,
                    col: ep.col,
                    message: format!("exponent {n} is too large"),
                })?;
                if self.is_sym('^') {
                    return self.err(self.pos(), "chained exponents need parentheses");
                }
                Ok(Expr::Pow(Box::new(base), e))
            }
            Tok::Sym('-') | Tok::Sym('(') | Tok::Ident(_) => Err(DslError::NonPolynomial {
                line: p.line,
                col: p.col,
                message: "exponents must be non-negative integer literals".into(),
            }),
            other => self.err(p, format!("dangling operator '^': expected an exponent, found {other}")),
        }
    }

    fn atom(&mut self) -> Result<Expr, DslError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let p = self.bump().1;
                self.marks.idents.push((s.clone(), p));
                Ok(Expr::Ident(s))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')', "to close the parenthesis")?;
                Ok(e)
            }
            other => {
                let msg = format!("expected an operand, found {other}");
                self.err(self.pos(), msg)
            }
        }
    }
}

fn semantic_check(spec: &FieldSpec, marks: &Marks) -> Result<(), DslError> {
    let sem = |p: Pos, message: String| DslError::Semantic {
        line: p.line,
        col: p.col,
        message,
    };
    if let Some(p) = marks.vars_decls.get(1) {
        return Err(sem(*p, "variables are declared twice".into()));
    }
    let Some(&vars_pos) = marks.vars_decls.first() else {
        let p = marks.equations.first().map(|e| e.2).unwrap_or(Pos { line: 1, col: 1 });
        return Err(sem(p, "missing 'vars' declaration".into()));
    };
    let mut names = BTreeSet::new();
    for (name, p) in marks.vars.iter().chain(&marks.params) {
        if !names.insert(name.as_str()) {
            return Err(sem(*p, format!("'{name}' is declared twice")));
        }
    }
    let vars: BTreeSet<&str> = spec.vars.iter().map(String::as_str).collect();
    for (name, p) in &marks.idents {
        if !names.contains(name.as_str()) {
            return Err(DslError::Undeclared {
                line: p.line,
                col: p.col,
                name: name.clone(),
            });
        }
    }
    for (idents, p) in &marks.divisors {
        if let Some(v) = idents.iter().find(|n| vars.contains(n.as_str())) {
            return Err(DslError::NonPolynomial {
                line: p.line,
                col: p.col,
                message: format!("division by an expression in the variable '{v}'"),
            });
        }
    }
    let mut sym_names = BTreeSet::new();
    for (name, p) in &marks.symmetries {
        if !sym_names.insert(name.as_str()) {
            return Err(sem(*p, format!("symmetry '{name}' is declared twice")));
        }
    }
    let scopes = std::iter::once(Scope::Field).chain((0..spec.symmetries.len()).map(Scope::Symmetry));
    for scope in scopes {
        let mut seen = BTreeSet::new();
        for (var, _, p) in marks.equations.iter().filter(|e| e.1 == scope) {
            if !vars.contains(var.as_str()) {
                return Err(sem(*p, format!("equation for undeclared variable '{var}'")));
            }
            if !seen.insert(var.as_str()) {
                return Err(sem(*p, format!("second equation for '{var}'")));
            }
        }
        if let Some(missing) = spec.vars.iter().find(|v| !seen.contains(v.as_str())) {
            let (what, p) = match scope {
                Scope::Field => ("the field".to_string(), vars_pos),
                Scope::Symmetry(i) => (format!("symmetry '{}'", spec.symmetries[i].name), marks.symmetries[i].1),
            };
            return Err(sem(p, format!("{what} has no equation for '{missing}'")));
        }
    }
    Ok(())
}

/// Parses a field description; syntax is checked in full before any
/// semantic rule (declarations, completeness, polynomiality of divisions).
pub fn parse_field(text: &str) -> Result<FieldSpec, DslError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        at: 0,
        marks: Marks::default(),
    };
    let spec = parser.spec()?;
    semantic_check(&spec, &parser.marks)?;
    Ok(spec)
}

// ---------------------------------------------------------------- evaluation

/// Parameter values after applying overrides to the declared defaults.
pub type Bindings = BTreeMap<String, Rational>;

fn eval(e: &Expr, vars: &[String], params: &Bindings) -> Result<Polynomial, DslError> {
    let n = vars.len();
    Ok(match e {
        Expr::Int(v) => Polynomial::constant(n, Rational::from_integer(v.clone())),
        Expr::Ident(s) => match vars.iter().position(|v| v == s) {
            Some(i) => Polynomial::var(n, i),
            None => match params.get(s) {
                Some(q) => Polynomial::constant(n, q.clone()),
                None => return Err(DslError::UnboundParameter(s.clone())),
            },
        },
        Expr::Neg(a) => eval(a, vars, params)?.neg(),
        Expr::Add(a, b) => eval(a, vars, params)?.add(&eval(b, vars, params)?),
        Expr::Sub(a, b) => eval(a, vars, params)?.sub(&eval(b, vars, params)?),
        Expr::Mul(a, b) => eval(a, vars, params)?.mul_trunc(&eval(b, vars, params)?, usize::MAX),
        Expr::Div(a, b) => {
            let d = eval(b, vars, params)?;
            let Some(c) = d.as_constant() else {
                // rejected by the semantic pass; reachable only for hand-built specs
                return Err(DslError::NonPolynomial {
                    line: 0,
                    col: 0,
                    message: "division by a non-constant expression".into(),
                });
            };
            if c.is_zero() {
                return Err(DslError::DivisionByZero);
            }
            eval(a, vars, params)?.scale(&c.recip())
        }
        Expr::Pow(a, k) => {
            let base = eval(a, vars, params)?;
            let mut acc = Polynomial::constant(n, Rational::one());
            for _ in 0..*k {
                acc = acc.mul_trunc(&base, usize::MAX);
            }
            acc
        }
    })
}

impl FieldSpec {
    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn param_names(&self) -> Vec<&str> {
        self.params.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn symmetry_names(&self) -> Vec<&str> {
        self.symmetries.iter().map(|s| s.name.as_str()).collect()
    }

    /// Declared defaults overridden by `overrides`; every parameter must end
    /// up with a value and every override must name a declared parameter.
    pub fn resolve_bindings(&self, overrides: &Bindings) -> Result<Bindings, DslError> {
        if let Some(unknown) = overrides.keys().find(|k| !self.params.iter().any(|(n, _)| n == *k)) {
            return Err(DslError::UnknownParameter(unknown.clone()));
        }
        self.params
            .iter()
            .map(|(name, default)| {
                overrides
                    .get(name)
                    .or(default.as_ref())
                    .map(|v| (name.clone(), v.clone()))
                    .ok_or_else(|| DslError::UnboundParameter(name.clone()))
            })
            .collect()
    }

    fn build(&self, equations: &[Equation], overrides: &Bindings, k: usize) -> Result<VectorField, DslError> {
        let params = self.resolve_bindings(overrides)?;
        let comps = self
            .vars
            .iter()
            .map(|v| {
                let eq = equations
                    .iter()
                    .find(|e| &e.var == v)
                    .ok_or_else(|| DslError::Semantic {
                        line: 0,
                        col: 0,
                        message: format!("no equation for '{v}'"),
                    })?;
                eval(&eq.rhs, &self.vars, &params)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VectorField::new(comps, k)?)
    }

    /// The field with parameters bound, truncated at degree `k`.
    pub fn instantiate(&self, overrides: &Bindings, k: usize) -> Result<VectorField, DslError> {
        self.build(&self.equations, overrides, k)
    }

    /// A declared symmetry with parameters bound, truncated at degree `k`.
    pub fn symmetry(&self, name: &str, overrides: &Bindings, k: usize) -> Result<VectorField, DslError> {
        let decl = self
            .symmetries
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| DslError::UnknownSymmetry(name.into()))?;
        self.build(&decl.equations, overrides, k)
    }

    /// Highest total degree appearing in the field with the given bindings.
    pub fn natural_degree(&self, overrides: &Bindings) -> Result<usize, DslError> {
        let params = self.resolve_bindings(overrides)?;
        self.equations
            .iter()
            .map(|e| eval(&e.rhs, &self.vars, &params).map(|p| p.degree()))
            .try_fold(1, |acc, d| d.map(|d| acc.max(d)))
    }
}

// ---------------------------------------------------------------- printing

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        Expr::Int(_) | Expr::Ident(_) => 5,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    /// Prints with the minimal parentheses that re-parse to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Ident(s) => f.write_str(s),
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_child(f, a, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write_child(f, a, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                write_child(f, b, 2)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                write_child(f, a, 2)?;
                f.write_str(if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                write_child(f, b, 3)
            }
            Expr::Pow(a, k) => {
                write_child(f, a, 5)?;
                write!(f, "^{k}")
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.params.is_empty() {
            let list: Vec<String> = self
                .params
                .iter()
                .map(|(n, v)| match v {
                    Some(q) => format!("{n} = {}", format_rational(q)),
                    None => n.clone(),
                })
                .collect();
            writeln!(f, "params {};", list.join(", "))?;
        }
        writeln!(f, "vars {};", self.vars.join(", "))?;
        for eq in &self.equations {
            writeln!(f, "d{} = {};", eq.var, eq.rhs)?;
        }
        for s in &self.symmetries {
            writeln!(f, "symmetry {} {{", s.name)?;
            for eq in &s.equations {
                writeln!(f, "    d{} = {};", eq.var, eq.rhs)?;
            }
            writeln!(f, "}}")?;
        }
        Ok(())
    }
}

/// Expression tree of a polynomial, for printing computed fields in the
/// description language.
pub fn polynomial_expr(p: &Polynomial, vars: &[String]) -> Expr {
    let mut acc: Option<Expr> = None;
    for (m, c) in p.terms() {
        let mut factors: Vec<Expr> = Vec::new();
        let abs = c.abs();
        if m.degree() == 0 || !abs.is_one() {
            let num = Expr::Int(abs.numer().clone());
            factors.push(if abs.denom().is_one() {
                num
            } else {
                Expr::Div(Box::new(num), Box::new(Expr::Int(abs.denom().clone())))
            });
        }
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(Expr::Ident(vars[i].clone())),
                _ => factors.push(Expr::Pow(Box::new(Expr::Ident(vars[i].clone())), e)),
            }
        }
        let term = factors
            .into_iter()
            .reduce(|a, b| Expr::Mul(Box::new(a), Box::new(b)))
            .expect("a term has at least one factor");
        acc = Some(match acc {
            None if c.is_negative() => Expr::Neg(Box::new(term)),
            None => term,
            Some(a) if c.is_negative() => Expr::Sub(Box::new(a), Box::new(term)),
            Some(a) => Expr::Add(Box::new(a), Box::new(term)),
        });
    }
    acc.unwrap_or(Expr::Int(BigInt::zero()))
}

/// A complete description of a computed field (no parameters).
pub fn field_to_spec(field: &VectorField, vars: &[String]) -> FieldSpec {
    FieldSpec {
        vars: vars.to_vec(),
        params: Vec::new(),
        equations: vars
            .iter()
            .zip(field.components())
            .map(|(v, p)| Equation {
                var: v.clone(),
                rhs: polynomial_expr(p, vars),
            })
            .collect(),
        symmetries: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn example_one_text() {
        let s = parse_field("vars x,y; dx = x; dy = 3*y - x^2;").unwrap();
        let f = s.instantiate(&Bindings::new(), 5).unwrap();
        let expected = VectorField::new(
            vec![
                Polynomial::from_int_terms(2, &[(1, &[1, 0])]),
                Polynomial::from_int_terms(2, &[(3, &[0, 1]), (-1, &[2, 0])]),
            ],
            5,
        )
        .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn dangling_operator_position() {
        let err = parse_field("dx = x + ;").unwrap_err();
        match err {
            DslError::Syntax { line, col, message } => {
                assert_eq!((line, col), (1, 8));
                assert!(message.contains("dangling operator '+'"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parameter_binding() {
        let s = parse_field("params a=1/2; vars x; dx = a*x^2 + x;").unwrap();
        let f = s.instantiate(&Bindings::new(), 3).unwrap();
        let mut p = Polynomial::var(1, 0);
        p.add_assign_ref(&Polynomial::var(1, 0).mul_trunc(&Polynomial::var(1, 0), 3).scale(&rat(1, 2)));
        assert_eq!(f.component(0), &p);
        let over: Bindings = [("a".to_string(), int(-2))].into();
        let g = s.instantiate(&over, 3).unwrap();
        assert_eq!(g.component(0).coeff(&crate::algebra::Monomial::new(vec![2])), int(-2));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_field("vars x; dx = x*y;"),
            Err(DslError::Undeclared { line: 1, col: 16, .. })
        ));
        assert!(matches!(
            parse_field("vars x; dx = 1/x;"),
            Err(DslError::NonPolynomial { .. })
        ));
        assert!(matches!(
            parse_field("vars x; dx = x^(1/2);"),
            Err(DslError::NonPolynomial { .. })
        ));
        assert!(matches!(parse_field("vars x; dx = 2 x;"), Err(DslError::Syntax { .. })));
        assert!(matches!(parse_field("vars x; dx = x $ 2;"), Err(DslError::Lexical { ch: '$', .. })));
        assert!(matches!(parse_field("vars x, y; dx = x;"), Err(DslError::Semantic { .. })));
        assert!(matches!(
            parse_field("params a; vars x; dx = a*x;").unwrap().instantiate(&Bindings::new(), 2),
            Err(DslError::UnboundParameter(_))
        ));
        assert!(matches!(
            parse_field("params a = 0; vars x; dx = x/a;").unwrap().instantiate(&Bindings::new(), 2),
            Err(DslError::DivisionByZero)
        ));
    }

    #[test]
    fn syntax_before_semantics() {
        // the undeclared `z` comes first, but the syntax error wins
        let err = parse_field("vars x; dx = z;\ndy = x * ;").unwrap_err();
        assert!(matches!(err, DslError::Syntax { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn symmetry_blocks_and_comments() {
        let text = "# example\nvars x, y;\ndx = x;\ndy = 3*y - x^2;\nsymmetry Y {\n  dx = x;\n  dy = y + x^2; # identity linear part\n}\n";
        let s = parse_field(text).unwrap();
        assert_eq!(s.symmetry_names(), vec!["Y"]);
        let y = s.symmetry("Y", &Bindings::new(), 4).unwrap();
        assert!(y.linear_part().is_identity());
        assert!(matches!(s.symmetry("Z", &Bindings::new(), 4), Err(DslError::UnknownSymmetry(_))));
    }

    #[test]
    fn pretty_print_round_trip() {
        let text = "params a = -3/4, b; vars x, y; dx = -(x + y)^2 - a*(x - (y - x)); dy = x/(2*b)*-y + 2^3 - -x;";
        let s = parse_field(text).unwrap();
        let again = parse_field(&s.to_string()).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn polynomial_printing_reparses() {
        let p = Polynomial::from_terms(
            2,
            [
                (crate::algebra::Monomial::new(vec![0, 0]), rat(-1, 3)),
                (crate::algebra::Monomial::new(vec![2, 1]), rat(5, 2)),
                (crate::algebra::Monomial::new(vec![0, 1]), int(-1)),
            ],
        );
        let vars = vec!["x".to_string(), "y".to_string()];
        let f = VectorField::new(vec![p.clone(), Polynomial::var(2, 0)], 3).unwrap();
        let spec = field_to_spec(&f, &vars);
        let back = parse_field(&spec.to_string()).unwrap().instantiate(&Bindings::new(), 3).unwrap();
        assert_eq!(back, f);
    }
}

//! The expression language shared by the CLI and the test fixtures:
//! rationals, base variables `x y`, jets like `a_xy`, operator variables
//! `Dx Dy D1 D2 …`, symbol variables `X Y`, and `+ - * / ^ ( )` with `*` as
//! operator composition. Division is only allowed between order-0 values.

use std::fmt;

use num::{BigInt, BigRational};
use thiserror::Error;

use crate::field::{FieldError, FieldElement, Session};
use crate::lpdo::Lpdo;
use crate::symbol::{FactorizationType, SymbolError, SymbolPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{span}: unexpected character `{ch}`")]
    UnexpectedChar { span: Span, ch: char },
    #[error("{span}: {message}")]
    Unexpected { span: Span, message: String },
    #[error("{span}: undeclared function symbol `{name}`")]
    UndeclaredSymbol { span: Span, name: String },
    #[error("{span}: variable `{name}` is out of range for dimension {dim}")]
    DimensionOutOfRange {
        span: Span,
        name: String,
        dim: usize,
    },
    #[error("{span}: division involving differential operators")]
    OperatorDivision { span: Span },
    #[error("{span}: division by zero")]
    DivisionByZero { span: Span },
    #[error("{span}: exponent must be a nonnegative integer")]
    BadExponent { span: Span },
    #[error("{span}: symbol variables are not allowed in operator expressions")]
    SymbolVarInOperator { span: Span },
    #[error("{span}: operator variables are not allowed in symbol expressions")]
    OperatorVarInSymbol { span: Span },
    #[error("expression is not homogeneous: degrees {low} and {high} both occur")]
    NonHomogeneous { low: u32, high: u32 },
    #[error("the zero symbol cannot be used here")]
    ZeroSymbol,
    #[error("expected an order-0 coefficient expression")]
    NotACoefficient,
    #[error("malformed declaration `{0}`; expected e.g. `a(x,y)` or `f1(y)`")]
    BadDeclaration(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    DVar(usize),
    SymVar(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct SpannedTok {
    tok: Tok,
    span: Span,
}

fn lex(text: &str) -> Result<Vec<SpannedTok>, ParseError> {
    let mut out = vec![];
    let mut line = 1usize;
    let mut col = 1usize;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        match c {
            ' ' | '\t' | '\r' => {
                i += 1;
                col += 1;
            }
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                out.push(SpannedTok { tok, span });
                i += 1;
                col += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                    col += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(SpannedTok {
                    tok: Tok::Num(s.parse().expect("digits parse")),
                    span,
                });
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                    col += 1;
                }
                // Bracketed jet index: name_[i,j,...]
                if i < chars.len() && chars[i] == '[' && chars[i - 1] == '_' {
                    while i < chars.len() && chars[i] != ']' {
                        i += 1;
                        col += 1;
                    }
                    if i < chars.len() {
                        i += 1;
                        col += 1;
                    }
                }
                let s: String = chars[start..i].iter().collect();
                out.push(SpannedTok {
                    tok: classify_word(&s),
                    span,
                });
            }
            other => {
                return Err(ParseError::UnexpectedChar { span, ch: other });
            }
        }
    }
    Ok(out)
}

fn classify_word(s: &str) -> Tok {
    let tail_digits =
        |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    match s {
        "Dx" => return Tok::DVar(1),
        "Dy" => return Tok::DVar(2),
        "X" => return Tok::SymVar(1),
        "Y" => return Tok::SymVar(2),
        _ => {}
    }
    if let Some(rest) = s.strip_prefix('D') {
        if tail_digits(rest) {
            return Tok::DVar(rest.parse().unwrap_or(usize::MAX));
        }
    }
    if let Some(rest) = s.strip_prefix('X') {
        if tail_digits(rest) {
            return Tok::SymVar(rest.parse().unwrap_or(usize::MAX));
        }
    }
    Tok::Ident(s.to_string())
}

#[derive(Debug, Clone)]
enum Expr {
    Num(BigRational),
    BaseVar(usize),
    Jet { name: String, orders: Vec<u32> },
    DVar(usize),
    SymVar(usize),
    Neg(Box<Spanned>),
    Add(Box<Spanned>, Box<Spanned>),
    Sub(Box<Spanned>, Box<Spanned>),
    Mul(Box<Spanned>, Box<Spanned>),
    Div(Box<Spanned>, Box<Spanned>),
    Pow(Box<Spanned>, u32),
}

#[derive(Debug, Clone)]
struct Spanned {
    expr: Expr,
    span: Span,
}

struct Parser {
    toks: Vec<SpannedTok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&SpannedTok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<SpannedTok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_span(&self) -> Span {
        self.toks
            .last()
            .map(|t| t.span.clone())
            .unwrap_or(Span { line: 1, col: 1 })
    }

    fn expr(&mut self) -> Result<Spanned, ParseError> {
        let mut negated = false;
        let mut span = match self.peek() {
            Some(t) => t.span.clone(),
            None => self.end_span(),
        };
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::Minus)) {
            self.next();
            negated = true;
        }
        let mut acc = self.term()?;
        if negated {
            acc = Spanned {
                span: span.clone(),
                expr: Expr::Neg(Box::new(acc)),
            };
        }
        while let Some(t) = self.peek() {
            let op = match t.tok {
                Tok::Plus => true,
                Tok::Minus => false,
                _ => break,
            };
            span = t.span.clone();
            self.next();
            let rhs = self.term()?;
            acc = Spanned {
                span: span.clone(),
                expr: if op {
                    Expr::Add(Box::new(acc), Box::new(rhs))
                } else {
                    Expr::Sub(Box::new(acc), Box::new(rhs))
                },
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Spanned, ParseError> {
        let mut acc = self.factor()?;
        while let Some(t) = self.peek() {
            let mul = match t.tok {
                Tok::Star => true,
                Tok::Slash => false,
                _ => break,
            };
            let span = t.span.clone();
            self.next();
            let rhs = self.factor()?;
            acc = Spanned {
                span: span.clone(),
                expr: if mul {
                    Expr::Mul(Box::new(acc), Box::new(rhs))
                } else {
                    Expr::Div(Box::new(acc), Box::new(rhs))
                },
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Spanned, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::Caret)) {
            let caret = self.next().unwrap();
            match self.next() {
                Some(SpannedTok {
                    tok: Tok::Num(n),
                    ..
                }) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| ParseError::BadExponent {
                            span: caret.span.clone(),
                        })?;
                    Ok(Spanned {
                        span: caret.span,
                        expr: Expr::Pow(Box::new(base), e),
                    })
                }
                _ => Err(ParseError::BadExponent { span: caret.span }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Spanned, ParseError> {
        let t = self.next().ok_or_else(|| ParseError::Unexpected {
            span: self.end_span(),
            message: "unexpected end of expression".into(),
        })?;
        let span = t.span.clone();
        let expr = match t.tok {
            Tok::Num(n) => Expr::Num(BigRational::from_integer(n)),
            Tok::DVar(i) => Expr::DVar(i),
            Tok::SymVar(i) => Expr::SymVar(i),
            Tok::Ident(name) => parse_ident(&name, &span)?,
            Tok::LParen => {
                let inner = self.expr()?;
                match self.next() {
                    Some(SpannedTok {
                        tok: Tok::RParen, ..
                    }) => return Ok(inner),
                    _ => {
                        return Err(ParseError::Unexpected {
                            span,
                            message: "unbalanced parenthesis".into(),
                        })
                    }
                }
            }
            other => {
                return Err(ParseError::Unexpected {
                    span,
                    message: format!("unexpected token {other:?}"),
                })
            }
        };
        Ok(Spanned { expr, span })
    }
}

/// Identifiers are base variables (`x`, `y`, `x3`, …), jets (`a_xy`,
/// `a_[1,0,2]`), or plain symbols.
fn parse_ident(name: &str, span: &Span) -> Result<Expr, ParseError> {
    let tail_digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if name == "x" {
        return Ok(Expr::BaseVar(1));
    }
    if name == "y" {
        return Ok(Expr::BaseVar(2));
    }
    if let Some(rest) = name.strip_prefix('x') {
        if tail_digits(rest) {
            return Ok(Expr::BaseVar(rest.parse().unwrap_or(usize::MAX)));
        }
    }
    if let Some(idx) = name.rfind('_') {
        let (base, suffix) = (&name[..idx], &name[idx + 1..]);
        if base.is_empty() {
            return Err(ParseError::Unexpected {
                span: span.clone(),
                message: format!("malformed identifier `{name}`"),
            });
        }
        if let Some(list) = suffix.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let mut orders = vec![];
            for part in list.split(',') {
                let o: u32 = part.trim().parse().map_err(|_| ParseError::Unexpected {
                    span: span.clone(),
                    message: format!("malformed jet index in `{name}`"),
                })?;
                orders.push(o);
            }
            return Ok(Expr::Jet {
                name: base.to_string(),
                orders,
            });
        }
        if !suffix.is_empty() && suffix.bytes().all(|b| b == b'x' || b == b'y') {
            let ox = suffix.bytes().filter(|&b| b == b'x').count() as u32;
            let oy = suffix.bytes().filter(|&b| b == b'y').count() as u32;
            return Ok(Expr::Jet {
                name: base.to_string(),
                orders: vec![ox, oy],
            });
        }
        return Err(ParseError::Unexpected {
            span: span.clone(),
            message: format!("malformed jet suffix in `{name}`"),
        });
    }
    Ok(Expr::Jet {
        name: name.to_string(),
        orders: vec![],
    })
}

fn parse_ast(text: &str) -> Result<Spanned, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError::Unexpected {
            span: Span { line: 1, col: 1 },
            message: "empty expression".into(),
        });
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(ParseError::Unexpected {
            span: t.span.clone(),
            message: "trailing input after expression".into(),
        });
    }
    Ok(e)
}

fn coefficient_atom(
    expr: &Spanned,
    session: &Session,
) -> Result<Option<FieldElement>, ParseError> {
    Ok(Some(match &expr.expr {
        Expr::Num(n) => FieldElement::from_rational(n.clone()),
        Expr::BaseVar(i) => session.base_var(*i).map_err(|_| {
            ParseError::DimensionOutOfRange {
                span: expr.span.clone(),
                name: format!("x{i}"),
                dim: session.dim(),
            }
        })?,
        Expr::Jet { name, orders } => {
            if orders.len() > session.dim() {
                return Err(ParseError::DimensionOutOfRange {
                    span: expr.span.clone(),
                    name: name.clone(),
                    dim: session.dim(),
                });
            }
            session
                .jet(name, orders)
                .map_err(|_| ParseError::UndeclaredSymbol {
                    span: expr.span.clone(),
                    name: name.clone(),
                })?
        }
        _ => return Ok(None),
    }))
}

fn eval_operator(expr: &Spanned, session: &Session) -> Result<Lpdo, ParseError> {
    let dim = session.dim();
    if let Some(c) = coefficient_atom(expr, session)? {
        return Ok(Lpdo::constant(dim, c));
    }
    Ok(match &expr.expr {
        Expr::DVar(i) => {
            if *i < 1 || *i > dim {
                return Err(ParseError::DimensionOutOfRange {
                    span: expr.span.clone(),
                    name: format!("D{i}"),
                    dim,
                });
            }
            Lpdo::dvar(dim, *i)
        }
        Expr::SymVar(_) => {
            return Err(ParseError::SymbolVarInOperator {
                span: expr.span.clone(),
            })
        }
        Expr::Neg(a) => -&eval_operator(a, session)?,
        Expr::Add(a, b) => &eval_operator(a, session)? + &eval_operator(b, session)?,
        Expr::Sub(a, b) => &eval_operator(a, session)? - &eval_operator(b, session)?,
        Expr::Mul(a, b) => eval_operator(a, session)?.compose(&eval_operator(b, session)?, session),
        Expr::Div(a, b) => {
            let a = eval_operator(a, session)?;
            let b = eval_operator(b, session)?;
            let (ca, cb) = match (order0_coeff(&a), order0_coeff(&b)) {
                (Some(ca), Some(cb)) => (ca, cb),
                _ => {
                    return Err(ParseError::OperatorDivision {
                        span: expr.span.clone(),
                    })
                }
            };
            let q = ca.div(&cb).map_err(|_| ParseError::DivisionByZero {
                span: expr.span.clone(),
            })?;
            Lpdo::constant(dim, q)
        }
        Expr::Pow(a, e) => {
            let a = eval_operator(a, session)?;
            let mut acc = Lpdo::one(dim);
            for _ in 0..*e {
                acc = acc.compose(&a, session);
            }
            acc
        }
        Expr::Num(_) | Expr::BaseVar(_) | Expr::Jet { .. } => unreachable!("handled above"),
    })
}

fn order0_coeff(op: &Lpdo) -> Option<FieldElement> {
    match op.order() {
        None => Some(FieldElement::zero()),
        Some(0) => Some(op.coefficient(&crate::lpdo::MultiIndex::zero(op.dim()))),
        Some(_) => None,
    }
}

/// Commutative, possibly inhomogeneous polynomial in the symbol variables;
/// intermediate value of symbol-mode evaluation.
#[derive(Debug, Clone)]
struct CommPoly {
    dim: usize,
    terms: std::collections::BTreeMap<crate::lpdo::MultiIndex, FieldElement>,
}

impl CommPoly {
    fn constant(dim: usize, c: FieldElement) -> Self {
        let mut terms = std::collections::BTreeMap::new();
        if !c.is_zero() {
            terms.insert(crate::lpdo::MultiIndex::zero(dim), c);
        }
        CommPoly { dim, terms }
    }

    fn xvar(dim: usize, i: usize) -> Self {
        let mut terms = std::collections::BTreeMap::new();
        terms.insert(crate::lpdo::MultiIndex::unit(dim, i), FieldElement::one());
        CommPoly { dim, terms }
    }

    fn add_term(&mut self, j: crate::lpdo::MultiIndex, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(j) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = &*e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn add(&self, rhs: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (j, c) in &rhs.terms {
            out.add_term(j.clone(), c.clone());
        }
        out
    }

    fn neg(&self) -> CommPoly {
        CommPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(j, c)| (j.clone(), -c)).collect(),
        }
    }

    fn mul(&self, rhs: &CommPoly) -> CommPoly {
        let mut out = CommPoly {
            dim: self.dim,
            terms: Default::default(),
        };
        for (ja, ca) in &self.terms {
            for (jb, cb) in &rhs.terms {
                out.add_term(ja.add(jb), ca * cb);
            }
        }
        out
    }

    fn scalar(&self) -> Option<FieldElement> {
        if self.terms.is_empty() {
            return Some(FieldElement::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&crate::lpdo::MultiIndex::zero(self.dim)) {
                return Some(c.clone());
            }
        }
        None
    }

    fn to_symbol(&self) -> Result<SymbolPoly, ParseError> {
        let mut degrees = self.terms.keys().map(|j| j.order());
        let deg = degrees.next().ok_or(ParseError::ZeroSymbol)?;
        for d in degrees {
            if d != deg {
                return Err(ParseError::NonHomogeneous {
                    low: d.min(deg),
                    high: d.max(deg),
                });
            }
        }
        let mut s = SymbolPoly::zero(self.dim, deg);
        for (j, c) in &self.terms {
            s.add_term(j.clone(), c.clone());
        }
        Ok(s)
    }
}

fn eval_symbol(expr: &Spanned, session: &Session) -> Result<CommPoly, ParseError> {
    let dim = session.dim();
    if let Some(c) = coefficient_atom(expr, session)? {
        return Ok(CommPoly::constant(dim, c));
    }
    Ok(match &expr.expr {
        Expr::SymVar(i) => {
            if *i < 1 || *i > dim {
                return Err(ParseError::DimensionOutOfRange {
                    span: expr.span.clone(),
                    name: format!("X{i}"),
                    dim,
                });
            }
            CommPoly::xvar(dim, *i)
        }
        Expr::DVar(_) => {
            return Err(ParseError::OperatorVarInSymbol {
                span: expr.span.clone(),
            })
        }
        Expr::Neg(a) => eval_symbol(a, session)?.neg(),
        Expr::Add(a, b) => eval_symbol(a, session)?.add(&eval_symbol(b, session)?),
        Expr::Sub(a, b) => eval_symbol(a, session)?.add(&eval_symbol(b, session)?.neg()),
        Expr::Mul(a, b) => eval_symbol(a, session)?.mul(&eval_symbol(b, session)?),
        Expr::Div(a, b) => {
            let a = eval_symbol(a, session)?;
            let b = eval_symbol(b, session)?;
            let c = b.scalar().ok_or(ParseError::OperatorDivision {
                span: expr.span.clone(),
            })?;
            let inv = c.invert().map_err(|_| ParseError::DivisionByZero {
                span: expr.span.clone(),
            })?;
            a.mul(&CommPoly::constant(dim, inv))
        }
        Expr::Pow(a, e) => {
            let a = eval_symbol(a, session)?;
            let mut acc = CommPoly::constant(dim, FieldElement::one());
            for _ in 0..*e {
                acc = acc.mul(&a);
            }
            acc
        }
        Expr::Num(_) | Expr::BaseVar(_) | Expr::Jet { .. } => unreachable!("handled above"),
    })
}

/// Parses an operator expression against the session's declarations.
pub fn parse_operator(text: &str, session: &Session) -> Result<Lpdo, ParseError> {
    eval_operator(&parse_ast(text)?, session)
}

/// Parses a coefficient expression (order-0 operator).
pub fn parse_field_element(text: &str, session: &Session) -> Result<FieldElement, ParseError> {
    let op = parse_operator(text, session)?;
    order0_coeff(&op).ok_or(ParseError::NotACoefficient)
}

/// Parses a homogeneous symbol polynomial.
pub fn parse_symbol(text: &str, session: &Session) -> Result<SymbolPoly, ParseError> {
    eval_symbol(&parse_ast(text)?, session)?.to_symbol()
}

/// Parses a factorization type written as juxtaposed groups `(S1)(S2)…`.
pub fn parse_type(text: &str, session: &Session) -> Result<FactorizationType, ParseError> {
    let mut factors = vec![];
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut col = 1;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c != '(' {
            return Err(ParseError::Unexpected {
                span: Span { line: 1, col },
                message: "expected `(` starting a type factor".into(),
            });
        }
        let mut depth = 1;
        let start = i + 1;
        let mut j = i + 1;
        while j < chars.len() && depth > 0 {
            match chars[j] {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            j += 1;
        }
        if depth != 0 {
            return Err(ParseError::Unexpected {
                span: Span { line: 1, col },
                message: "unbalanced parenthesis in type".into(),
            });
        }
        let inner: String = chars[start..j - 1].iter().collect();
        factors.push(parse_symbol(&inner, session)?);
        col += j - i;
        i = j;
    }
    FactorizationType::new(factors).map_err(|e| match e {
        SymbolError::EmptyType => ParseError::Unexpected {
            span: Span { line: 1, col: 1 },
            message: "a type needs at least one factor".into(),
        },
        SymbolError::ZeroSymbol => ParseError::ZeroSymbol,
        other => ParseError::Unexpected {
            span: Span { line: 1, col: 1 },
            message: other.to_string(),
        },
    })
}

/// Parses a declaration like `a(x,y)`, `f1(y)`, `c()`, or a bare name
/// meaning full dependency, and applies it to the session.
pub fn parse_declaration(text: &str, session: &mut Session) -> Result<(), ParseError> {
    let text = text.trim();
    let bad = || ParseError::BadDeclaration(text.to_string());
    if let Some(open) = text.find('(') {
        let name = text[..open].trim();
        let rest = text[open + 1..].trim_end();
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let mut deps = vec![];
        for part in inner.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let idx = match part {
                "x" => 1,
                "y" => 2,
                p => p
                    .strip_prefix('x')
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(bad)?,
            };
            deps.push(idx);
        }
        session.declare(name, &deps)?;
    } else {
        session.declare_all(text)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lpdo::MultiIndex;

    fn sess() -> Session {
        let mut s = Session::new(2);
        s.declare_all("a").unwrap();
        s.declare_all("b").unwrap();
        s.declare_all("c").unwrap();
        s.declare("f1", &[2]).unwrap();
        s
    }

    #[test]
    fn parse_second_order_operator() {
        let s = sess();
        let l = parse_operator("Dx*Dy + a*Dx + b*Dy + c", &s).unwrap();
        assert_eq!(l.order(), Some(2));
        assert_eq!(
            l.coefficient(&MultiIndex::new(vec![1, 1])),
            FieldElement::one()
        );
        assert_eq!(l.coefficient(&MultiIndex::new(vec![1, 0])), s.symbol("a").unwrap());
        assert_eq!(l.coefficient(&MultiIndex::new(vec![0, 1])), s.symbol("b").unwrap());
        assert_eq!(l.coefficient(&MultiIndex::zero(2)), s.symbol("c").unwrap());
    }

    #[test]
    fn parse_blumberg_landau() {
        let s = sess();
        let l = parse_operator(
            "Dx^3 + x*Dx^2*Dy + 2*Dx^2 + (2*x+2)*Dx*Dy + Dx + (2+x)*Dy",
            &s,
        )
        .unwrap();
        let composed = parse_operator("(Dx+1)*(Dx+1)*(Dx+x*Dy)", &s).unwrap();
        assert_eq!(l, composed);
    }

    #[test]
    fn dz_is_an_error() {
        let s = sess();
        let err = parse_operator("Dz", &s).unwrap_err();
        assert!(matches!(err, ParseError::UndeclaredSymbol { .. }));
        let err = parse_operator("D3 + Dx", &s).unwrap_err();
        assert!(matches!(err, ParseError::DimensionOutOfRange { .. }));
    }

    #[test]
    fn division_rules() {
        let s = sess();
        assert!(parse_operator("Dx/2", &s).is_err());
        assert!(parse_operator("1/(x+f1)*Dx", &s).is_ok());
        assert!(parse_operator("1/0", &s).is_err());
        let half_dx = parse_operator("1/2*Dx", &s).unwrap();
        assert_eq!(
            half_dx.coefficient(&MultiIndex::new(vec![1, 0])),
            FieldElement::from_rational(BigRational::new(1.into(), 2.into()))
        );
    }

    #[test]
    fn jets_and_masks() {
        let s = sess();
        let e = parse_field_element("a_xy + f1_y", &s).unwrap();
        assert!(!e.is_zero());
        let masked = parse_field_element("f1_x", &s).unwrap();
        assert!(masked.is_zero());
        let bracket = parse_field_element("a_[1,1]", &s).unwrap();
        assert_eq!(bracket, parse_field_element("a_xy", &s).unwrap());
    }

    #[test]
    fn parse_symbols_and_types() {
        let s = sess();
        let sym = parse_symbol("X^2*Y + X*Y^2", &s).unwrap();
        assert_eq!(sym.degree(), 3);
        assert!(parse_symbol("X + 1", &s).is_err());
        assert!(parse_symbol("Dx", &s).is_err());
        assert!(parse_operator("X", &s).is_err());

        let t = parse_type("(X)(Y)(X+Y)", &s).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.total_degree(), 3);

        let t = parse_type("(X)(X^2 + x*X*Y)", &s).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.product().degree(), 3);

        let t = parse_type("(2*X)(Y/2)", &s).unwrap();
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn operator_roundtrip_through_display() {
        let s = sess();
        let texts = [
            "Dx^3 + x*Dx^2*Dy + 2*Dx^2 + (2*x+2)*Dx*Dy + Dx + (2+x)*Dy",
            "Dx*Dy + a*Dx + b*Dy + c",
            "Dx + 1 + 1/(x+f1)",
            "a_xy*Dx - 1/2*Dy + x*y^2",
        ];
        for text in texts {
            let op = parse_operator(text, &s).unwrap();
            let printed = op.to_string();
            let reparsed = parse_operator(&printed, &s).unwrap();
            assert_eq!(op, reparsed, "roundtrip failed for `{printed}`");
        }
    }

    #[test]
    fn declarations() {
        let mut s = Session::new(2);
        parse_declaration("a(x,y)", &mut s).unwrap();
        parse_declaration("f1(y)", &mut s).unwrap();
        parse_declaration("k()", &mut s).unwrap();
        parse_declaration("g", &mut s).unwrap();
        assert!(s.depends_on("a", crate::field::BaseVar::x()).unwrap());
        assert!(!s.depends_on("f1", crate::field::BaseVar::x()).unwrap());
        assert!(!s.depends_on("k", crate::field::BaseVar::y()).unwrap());
        assert!(s.depends_on("g", crate::field::BaseVar::y()).unwrap());
        assert!(parse_declaration("3bad(x)", &mut s).is_err());
        assert!(parse_declaration("Dx(x)", &mut s).is_err());
    }

    #[test]
    fn error_positions() {
        let s = sess();
        let err = parse_operator("Dx + $", &s).unwrap_err();
        match err {
            ParseError::UnexpectedChar { span, ch } => {
                assert_eq!(ch, '$');
                assert_eq!(span.line, 1);
                assert_eq!(span.col, 6);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}

//! Homogeneous polynomials in the commuting symbol variables `X_1..X_n`
//! over the coefficient field, factorization types, and the bivariate
//! gcd/coprimality decisions the factoring theory relies on.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::field::FieldElement;
use crate::lpdo::{fmt_terms, MultiIndex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolError {
    #[error("gcd and coprimality decisions are implemented for dimension 2 only, got {0}")]
    UnsupportedDimension(usize),
    #[error("operation requires a nonzero symbol")]
    ZeroSymbol,
    #[error("constant-coefficient factoring requires rational coefficients")]
    NonConstantCoefficients,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("a factorization type needs at least one factor")]
    EmptyType,
}

/// A homogeneous polynomial of fixed degree in the symbol variables. The
/// zero symbol is an empty coefficient map carrying its nominal degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolPoly {
    dim: usize,
    degree: u32,
    coeffs: BTreeMap<MultiIndex, FieldElement>,
}

impl SymbolPoly {
    pub fn zero(dim: usize, degree: u32) -> Self {
        SymbolPoly {
            dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: FieldElement) -> Self {
        let mut s = SymbolPoly::zero(dim, 0);
        s.add_term(MultiIndex::zero(dim), c);
        s
    }

    /// The symbol variable `X_var`.
    pub fn xvar(dim: usize, var: usize) -> Self {
        let mut s = SymbolPoly::zero(dim, 1);
        s.add_term(MultiIndex::unit(dim, var), FieldElement::one());
        s
    }

    pub(crate) fn from_parts(
        dim: usize,
        degree: u32,
        coeffs: BTreeMap<MultiIndex, FieldElement>,
    ) -> Self {
        for j in coeffs.keys() {
            assert_eq!(j.order(), degree, "inhomogeneous symbol coefficient map");
        }
        SymbolPoly { dim, degree, coeffs }
    }

    pub fn from_coeffs(dim: usize, degree: u32, coeffs: Vec<(MultiIndex, FieldElement)>) -> Self {
        let mut s = SymbolPoly::zero(dim, degree);
        for (j, c) in coeffs {
            s.add_term(j, c);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, j: &MultiIndex) -> FieldElement {
        self.coeffs.get(j).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&MultiIndex, &FieldElement)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add_term(&mut self, j: MultiIndex, c: FieldElement) {
        assert_eq!(j.dim(), self.dim, "multi-index dimension mismatch");
        assert_eq!(j.order(), self.degree, "term degree breaks homogeneity");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(j) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &SymbolPoly) -> SymbolPoly {
        assert_eq!(self.degree, rhs.degree, "degree mismatch in symbol sum");
        let mut out = self.clone();
        for (j, c) in &rhs.coeffs {
            out.add_term(j.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &SymbolPoly) -> SymbolPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> SymbolPoly {
        SymbolPoly {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(j, c)| (j.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> SymbolPoly {
        if c.is_zero() {
            return SymbolPoly::zero(self.dim, self.degree);
        }
        let mut out = SymbolPoly::zero(self.dim, self.degree);
        for (j, a) in &self.coeffs {
            out.add_term(j.clone(), a * c);
        }
        out
    }

    /// Commutative product; degrees add.
    pub fn multiply(&self, rhs: &SymbolPoly) -> SymbolPoly {
        assert_eq!(self.dim, rhs.dim, "symbol dimension mismatch");
        let mut out = SymbolPoly::zero(self.dim, self.degree + rhs.degree);
        for (ja, ca) in &self.coeffs {
            for (jb, cb) in &rhs.coeffs {
                out.add_term(ja.add(jb), ca * cb);
            }
        }
        out
    }

    /// Leading term under graded-lex with `X > Y`.
    pub fn leading(&self) -> Option<(&MultiIndex, &FieldElement)> {
        self.coeffs.iter().next_back()
    }

    /// Monic scaling by the leading coefficient.
    pub fn monic(&self) -> Result<SymbolPoly, SymbolError> {
        let (_, c) = self.leading().ok_or(SymbolError::ZeroSymbol)?;
        let inv = c.invert().expect("leading coefficient nonzero");
        Ok(self.scale(&inv))
    }

    /// Exact division of homogeneous polynomials; `None` when not divisible.
    pub fn div_exact(&self, divisor: &SymbolPoly) -> Option<SymbolPoly> {
        assert!(!divisor.is_zero(), "division by the zero symbol");
        if self.is_zero() {
            return Some(SymbolPoly::zero(self.dim, self.degree.checked_sub(divisor.degree)?));
        }
        let qdeg = self.degree.checked_sub(divisor.degree)?;
        let (dm, dc) = divisor.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = SymbolPoly::zero(self.dim, qdeg);
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.checked_sub(dm)?;
            let qc = rc.div(dc).expect("leading coefficient nonzero");
            let mut t = SymbolPoly::zero(self.dim, qdeg);
            t.add_term(qm, qc);
            rem = rem.sub(&t.multiply(divisor));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// True when every coefficient is a rational constant.
    pub fn has_constant_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| c.as_rational().is_some())
    }

    /// The constant `b` with `self = b * other`, when one exists.
    pub fn constant_ratio(&self, other: &SymbolPoly) -> Option<FieldElement> {
        if self.degree != other.degree || self.is_zero() != other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return None;
        }
        let keys: Vec<_> = self.coeffs.keys().collect();
        let other_keys: Vec<_> = other.coeffs.keys().collect();
        if keys != other_keys {
            return None;
        }
        let mut ratio: Option<FieldElement> = None;
        for (j, c) in &self.coeffs {
            let oc = other.coeffs.get(j).unwrap();
            let r = c.div(oc).expect("stored coefficients are nonzero");
            match &ratio {
                None => ratio = Some(r),
                Some(prev) if *prev == r => {}
                Some(_) => return None,
            }
        }
        ratio
    }
}

impl fmt::Display for SymbolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.coeffs.iter().rev(), fmt_xvar_monomial)
    }
}

pub(crate) fn fmt_xvar_monomial(j: &MultiIndex) -> String {
    let mut parts = vec![];
    for (pos, &e) in j.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = match pos {
            0 => "X".to_string(),
            1 => "Y".to_string(),
            p => format!("X{}", p + 1),
        };
        if e == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

/// An ordered list of symbol factors; `(S_1)(S_2)` and `(S_2)(S_1)` are
/// different types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationType {
    factors: Vec<SymbolPoly>,
}

impl FactorizationType {
    pub fn new(factors: Vec<SymbolPoly>) -> Result<Self, SymbolError> {
        if factors.is_empty() {
            return Err(SymbolError::EmptyType);
        }
        let dim = factors[0].dim();
        for f in &factors {
            if f.is_zero() {
                return Err(SymbolError::ZeroSymbol);
            }
            assert_eq!(f.dim(), dim, "mixed dimensions in factorization type");
        }
        Ok(FactorizationType { factors })
    }

    pub fn factors(&self) -> &[SymbolPoly] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.factors[0].dim()
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.iter().map(SymbolPoly::degree).sum()
    }

    pub fn product(&self) -> SymbolPoly {
        let mut it = self.factors.iter();
        let first = it.next().expect("type is non-empty").clone();
        it.fold(first, |acc, f| acc.multiply(f))
    }

    /// The product of all factors except the `i`-th, `Sym/S_i`.
    pub fn cofactor(&self, i: usize) -> SymbolPoly {
        let mut acc = SymbolPoly::constant(self.dim(), FieldElement::one());
        for (j, f) in self.factors.iter().enumerate() {
            if j != i {
                acc = acc.multiply(f);
            }
        }
        acc
    }
}

impl fmt::Display for FactorizationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.factors {
            write!(f, "({s})")?;
        }
        Ok(())
    }
}

/// A bivariate homogeneous polynomial split as `X^a * Y^b * rest`, with the
/// remainder dehomogenized to a univariate polynomial in `t = X/Y`.
struct Dehomogenized {
    x_power: u32,
    y_power: u32,
    // Coefficient of t^i; the degree-0 coefficient is nonzero.
    poly: Vec<FieldElement>,
}

fn dehomogenize(s: &SymbolPoly) -> Result<Dehomogenized, SymbolError> {
    if s.dim() != 2 {
        return Err(SymbolError::UnsupportedDimension(s.dim()));
    }
    if s.is_zero() {
        return Err(SymbolError::ZeroSymbol);
    }
    let x_power = s.coeffs().map(|(j, _)| j.exponents()[0]).min().unwrap();
    let y_power = s.coeffs().map(|(j, _)| j.exponents()[1]).min().unwrap();
    let rest_deg = (s.degree() - x_power - y_power) as usize;
    let mut poly = vec![FieldElement::zero(); rest_deg + 1];
    for (j, c) in s.coeffs() {
        let i = (j.exponents()[0] - x_power) as usize;
        poly[i] = c.clone();
    }
    Ok(Dehomogenized {
        x_power,
        y_power,
        poly,
    })
}

fn rehomogenize(dim: usize, poly: &[FieldElement]) -> SymbolPoly {
    let deg = poly.len() as u32 - 1;
    let mut s = SymbolPoly::zero(dim, deg);
    for (i, c) in poly.iter().enumerate() {
        if !c.is_zero() {
            s.add_term(
                MultiIndex::new(vec![i as u32, deg - i as u32]),
                c.clone(),
            );
        }
    }
    s
}

fn univ_degree(p: &[FieldElement]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Remainder of univariate division over the field.
fn univ_rem(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let db = univ_degree(b).expect("division by zero polynomial");
    let lb = b[db].clone();
    let mut r = a.to_vec();
    while let Some(dr) = univ_degree(&r) {
        if dr < db {
            break;
        }
        let q = r[dr].div(&lb).expect("leading coefficient nonzero");
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            let t = &q * bc;
            r[dr - db + i] = &r[dr - db + i] - &t;
        }
        r[dr] = FieldElement::zero();
    }
    r
}

/// The gcd of two nonzero bivariate homogeneous symbols, monic in its
/// leading term under lex `X > Y`.
pub fn gcd2(a: &SymbolPoly, b: &SymbolPoly) -> Result<SymbolPoly, SymbolError> {
    let da = dehomogenize(a)?;
    let db = dehomogenize(b)?;

    let mut u = da.poly;
    let mut v = db.poly;
    while univ_degree(&v).is_some() {
        let r = univ_rem(&u, &v);
        u = v;
        v = r;
    }
    let du = univ_degree(&u).expect("gcd of nonzero polynomials is nonzero");
    u.truncate(du + 1);

    let core = rehomogenize(2, &u);
    let mut content = SymbolPoly::zero(2, da.x_power.min(db.x_power) + da.y_power.min(db.y_power));
    content.add_term(
        MultiIndex::new(vec![da.x_power.min(db.x_power), da.y_power.min(db.y_power)]),
        FieldElement::one(),
    );
    content.multiply(&core).monic()
}

/// True when the gcd of every pair of factors has degree zero.
pub fn pairwise_coprime(t: &FactorizationType) -> Result<bool, SymbolError> {
    if t.dim() != 2 {
        return Err(SymbolError::UnsupportedDimension(t.dim()));
    }
    let fs = t.factors();
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            if fs[i].degree() == 0 || fs[j].degree() == 0 {
                continue;
            }
            if gcd2(&fs[i], &fs[j])?.degree() > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Splits a constant-coefficient bivariate symbol into `X` and `Y` powers
/// and the linear factors over `Q` found by rational roots; a non-linear
/// cofactor without rational roots is returned unsplit. The product of the
/// outputs equals the input.
pub fn factor_constant_form(s: &SymbolPoly) -> Result<Vec<SymbolPoly>, SymbolError> {
    if s.dim() != 2 {
        return Err(SymbolError::UnsupportedDimension(s.dim()));
    }
    if s.is_zero() {
        return Err(SymbolError::ZeroSymbol);
    }
    if !s.has_constant_coeffs() {
        return Err(SymbolError::NonConstantCoefficients);
    }
    let de = dehomogenize(s)?;
    let mut rationals: Vec<BigRational> = de
        .poly
        .iter()
        .map(|c| c.as_rational().expect("checked constant"))
        .collect();

    let mut factors: Vec<SymbolPoly> = vec![];
    for _ in 0..de.x_power {
        factors.push(SymbolPoly::xvar(2, 1));
    }
    for _ in 0..de.y_power {
        factors.push(SymbolPoly::xvar(2, 2));
    }

    let mut roots: Vec<BigRational> = vec![];
    loop {
        let deg = rationals.iter().rposition(|c| !c.is_zero()).unwrap();
        if deg == 0 {
            break;
        }
        match find_rational_root(&rationals[..=deg]) {
            Some(r) => {
                rationals = deflate(&rationals[..=deg], &r);
                roots.push(r);
            }
            None => break,
        }
    }
    roots.sort();

    let deg_left = rationals.iter().rposition(|c| !c.is_zero()).unwrap();
    let lead = rationals[deg_left].clone();

    let mut split: Vec<SymbolPoly> = vec![];
    for r in &roots {
        // t - r rehomogenizes to X - r*Y.
        let mut f = SymbolPoly::zero(2, 1);
        f.add_term(MultiIndex::new(vec![1, 0]), FieldElement::one());
        f.add_term(
            MultiIndex::new(vec![0, 1]),
            FieldElement::from_rational(-r.clone()),
        );
        split.push(f);
    }
    if deg_left > 0 {
        // Unsplit cofactor; it carries the leading constant.
        let scaled: Vec<FieldElement> = rationals[..=deg_left]
            .iter()
            .map(|c| FieldElement::from_rational(c.clone()))
            .collect();
        split.push(rehomogenize(2, &scaled));
    } else if !lead.is_one() {
        let c = FieldElement::from_rational(lead);
        match split.first_mut() {
            Some(f) => *f = f.scale(&c),
            None => match factors.first_mut() {
                Some(f) => *f = f.scale(&c),
                None => split.push(SymbolPoly::constant(2, c)),
            },
        }
    }
    factors.extend(split);
    Ok(factors)
}

fn find_rational_root(coeffs: &[BigRational]) -> Option<BigRational> {
    // Clear denominators to an integer polynomial.
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = num::Integer::lcm(&lcm, c.denom());
    }
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let lead = ints.last().unwrap().clone();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        return Some(BigRational::zero());
    }
    let tail = ints[0].clone();

    let eval = |r: &BigRational| -> bool {
        let mut acc = BigRational::zero();
        for c in ints.iter().rev() {
            acc = acc * r + BigRational::from_integer(c.clone());
        }
        acc.is_zero()
    };

    for p in divisors(&tail.abs()) {
        for q in divisors(&lead.abs()) {
            for sign in [1i64, -1] {
                let r = BigRational::new(p.clone() * BigInt::from(sign), q.clone());
                if eval(&r) {
                    return Some(r);
                }
            }
        }
    }
    None
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = vec![];
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::one();
    loop {
        let dd = &d * &d;
        if dd > *n {
            break;
        }
        if (n % &d).is_zero() {
            out.push(d.clone());
            let q = n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Synthetic division of a univariate rational polynomial by `t - r`.
fn deflate(coeffs: &[BigRational], r: &BigRational) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); coeffs.len() - 1];
    let mut carry = BigRational::zero();
    for i in (0..coeffs.len() - 1).rev() {
        carry = &coeffs[i + 1] + &(carry * r);
        out[i] = carry.clone();
    }
    debug_assert!((&coeffs[0] + &(&carry * r)).is_zero(), "not a root");
    out
}

/// True when the types differ factorwise by constants in `K` whose product
/// is 1. Types of different lengths are never similar.
pub fn similar(t1: &FactorizationType, t2: &FactorizationType) -> bool {
    if t1.len() != t2.len() {
        return false;
    }
    let mut product = FieldElement::one();
    for (a, b) in t1.factors().iter().zip(t2.factors()) {
        match a.constant_ratio(b) {
            Some(r) => product = &product * &r,
            None => return false,
        }
    }
    product.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{DiffPoly, Session, Var};
    use crate::field::BaseVar;

    fn x_sym() -> SymbolPoly {
        SymbolPoly::xvar(2, 1)
    }

    fn y_sym() -> SymbolPoly {
        SymbolPoly::xvar(2, 2)
    }

    fn x_plus_y() -> SymbolPoly {
        x_sym().add(&y_sym())
    }

    fn x_fe() -> FieldElement {
        FieldElement::from_poly(DiffPoly::var(Var::Base(BaseVar::x())))
    }

    /// X*(X + x*Y) with x from the coefficient field.
    fn family_second_factor() -> SymbolPoly {
        let inner = x_sym().add(&y_sym().scale(&x_fe()));
        x_sym().multiply(&inner)
    }

    #[test]
    fn multiply_examples() {
        let xy = x_sym().multiply(&y_sym());
        assert_eq!(xy.degree(), 2);
        assert_eq!(
            xy.coefficient(&MultiIndex::new(vec![1, 1])),
            FieldElement::one()
        );

        // X * (X + x*Y) * X = X^3 + x*X^2*Y
        let p = x_sym()
            .multiply(&x_sym().add(&y_sym().scale(&x_fe())))
            .multiply(&x_sym());
        assert_eq!(p.degree(), 3);
        assert_eq!(
            p.coefficient(&MultiIndex::new(vec![3, 0])),
            FieldElement::one()
        );
        assert_eq!(p.coefficient(&MultiIndex::new(vec![2, 1])), x_fe());
        assert_eq!(p.num_terms(), 2);

        let z = x_sym().multiply(&SymbolPoly::zero(2, 1));
        assert!(z.is_zero());
        assert_eq!(z.degree(), 2);
    }

    #[test]
    fn gcd2_examples() {
        let g = gcd2(&x_sym(), &family_second_factor()).unwrap();
        assert_eq!(g, x_sym());

        let g = gcd2(&x_sym(), &y_sym()).unwrap();
        assert_eq!(g.degree(), 0);
        assert!(g.coefficient(&MultiIndex::zero(2)).is_one());

        let xy = x_sym().multiply(&y_sym());
        let y2 = y_sym().multiply(&y_sym());
        assert_eq!(gcd2(&xy, &y2).unwrap(), y_sym());
    }

    #[test]
    fn gcd2_divides_both() {
        let a = x_plus_y().multiply(&x_sym());
        let b = x_plus_y().multiply(&y_sym().scale(&FieldElement::from_integer(3)));
        let g = gcd2(&a, &b).unwrap();
        assert_eq!(g, x_plus_y());
        assert!(a.div_exact(&g).is_some());
        assert!(b.div_exact(&g).is_some());
    }

    #[test]
    fn pairwise_coprime_examples() {
        let t = FactorizationType::new(vec![x_sym(), y_sym(), x_plus_y()]).unwrap();
        assert!(pairwise_coprime(&t).unwrap());

        let t = FactorizationType::new(vec![x_sym(), family_second_factor()]).unwrap();
        assert!(!pairwise_coprime(&t).unwrap());

        let t = FactorizationType::new(vec![
            x_sym(),
            SymbolPoly::constant(2, FieldElement::one()),
        ])
        .unwrap();
        assert!(pairwise_coprime(&t).unwrap());
    }

    #[test]
    fn factor_constant_form_examples() {
        // X^2*Y + X*Y^2 -> [X, Y, X + Y]
        let s = x_sym().multiply(&y_sym()).multiply(&x_plus_y());
        let fs = factor_constant_form(&s).unwrap();
        assert_eq!(fs, vec![x_sym(), y_sym(), x_plus_y()]);

        // X^2 + Y^2 is irreducible over Q.
        let s = x_sym().multiply(&x_sym()).add(&y_sym().multiply(&y_sym()));
        let fs = factor_constant_form(&s).unwrap();
        assert_eq!(fs, vec![s]);

        // X^3 -> [X, X, X]
        let s = x_sym().multiply(&x_sym()).multiply(&x_sym());
        let fs = factor_constant_form(&s).unwrap();
        assert_eq!(fs, vec![x_sym(), x_sym(), x_sym()]);

        let bad = family_second_factor();
        assert_eq!(
            factor_constant_form(&bad),
            Err(SymbolError::NonConstantCoefficients)
        );
    }

    #[test]
    fn factor_constant_form_products_restore() {
        // 2*X^2 - 2*Y^2 -> linear splits carrying the constant.
        let two = FieldElement::from_integer(2);
        let s = x_sym()
            .multiply(&x_sym())
            .sub(&y_sym().multiply(&y_sym()))
            .scale(&two);
        let fs = factor_constant_form(&s).unwrap();
        let prod = fs
            .iter()
            .skip(1)
            .fold(fs[0].clone(), |acc, f| acc.multiply(f));
        assert_eq!(prod, s);
    }

    #[test]
    fn similar_examples() {
        let half = FieldElement::from_rational(BigRational::new(1.into(), 2.into()));
        let t1 = FactorizationType::new(vec![x_sym(), y_sym()]).unwrap();
        let t2 = FactorizationType::new(vec![
            x_sym().scale(&FieldElement::from_integer(2)),
            y_sym().scale(&half),
        ])
        .unwrap();
        assert!(similar(&t1, &t2));

        let t3 = FactorizationType::new(vec![
            x_sym().scale(&FieldElement::from_integer(2)),
            y_sym(),
        ])
        .unwrap();
        assert!(!similar(&t1, &t3));

        let third = FieldElement::from_rational(BigRational::new(1.into(), 3.into()));
        let t4 = FactorizationType::new(vec![x_sym(), y_sym(), x_plus_y()]).unwrap();
        let t5 = FactorizationType::new(vec![
            x_sym().scale(&FieldElement::from_integer(3)),
            y_sym().scale(&third),
            x_plus_y(),
        ])
        .unwrap();
        assert!(similar(&t4, &t5));
        assert!(!similar(&t1, &t4));
    }

    #[test]
    fn homogeneity_preserved() {
        let s = x_sym().multiply(&family_second_factor());
        assert_eq!(s.degree(), 3);
        for (j, _) in s.coeffs() {
            assert_eq!(j.order(), 3);
        }
        let _ = Session::new(2);
    }

    #[test]
    fn display_symbols() {
        let s = x_sym()
            .multiply(&x_sym())
            .add(&y_sym().multiply(&y_sym()).scale(&FieldElement::from_integer(-1)));
        assert_eq!(s.to_string(), "X^2 - Y^2");
        let t = FactorizationType::new(vec![x_sym(), y_sym(), x_plus_y()]).unwrap();
        assert_eq!(t.to_string(), "(X)(Y)(X + Y)");
    }
}

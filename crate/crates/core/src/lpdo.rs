//! The noncommutative ring `K[D]` of linear partial differential operators:
//! sparse coefficient maps over the field layer, composition by the Leibniz
//! rule, homogeneous components, the symbol map and its inverse, and gauge
//! transformations.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::{BigInt, BigRational, One};
use thiserror::Error;

use crate::field::{BaseVar, FieldElement, FieldError, Session};
use crate::symbol::SymbolPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpdoError {
    #[error("the zero operator has no symbol")]
    ZeroOperator,
    #[error("gauge element must be invertible")]
    ZeroGauge,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Exponent tuple of a derivative monomial `D_1^{i_1} ... D_n^{i_n}`.
/// Ordered graded-lexicographically with earlier variables heavier, so
/// `Dx^2 > Dx*Dy > Dy^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    pub fn unit(dim: usize, var: usize) -> Self {
        assert!(var >= 1 && var <= dim, "variable out of range");
        let mut e = vec![0; dim];
        e[var - 1] = 1;
        MultiIndex(e)
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// All multi-indices `I` with `I <= self` componentwise.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zero(self.dim())];
        for (pos, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for base in &out {
                for k in 0..=e {
                    let mut v = base.0.clone();
                    v[pos] = k;
                    next.push(MultiIndex(v));
                }
            }
            out = next;
        }
        out
    }

    /// All multi-indices of the given order, in descending graded-lex order.
    pub fn all_of_order(dim: usize, order: u32) -> Vec<MultiIndex> {
        fn rec(dim: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if dim == 1 {
                prefix.push(left);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(dim - 1, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = vec![];
        rec(dim, order, &mut Vec::with_capacity(dim), &mut out);
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.order().cmp(&other.order()) {
            Ordering::Equal => self.0.cmp(&other.0),
            ord => ord,
        }
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn multi_binomial(j: &MultiIndex, i: &MultiIndex) -> BigRational {
    let mut b = BigInt::one();
    for (&je, &ie) in j.exponents().iter().zip(i.exponents()) {
        b *= binomial(je, ie);
    }
    BigRational::from_integer(b)
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// A linear partial differential operator: a finite map from derivative
/// multi-indices to nonzero field coefficients. The zero operator is the
/// empty map and has order `None` (minus infinity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lpdo {
    dim: usize,
    coeffs: BTreeMap<MultiIndex, FieldElement>,
}

impl Lpdo {
    pub fn zero(dim: usize) -> Self {
        Lpdo {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Lpdo::constant(dim, FieldElement::one())
    }

    pub fn constant(dim: usize, c: FieldElement) -> Self {
        let mut op = Lpdo::zero(dim);
        op.add_term(MultiIndex::zero(dim), c);
        op
    }

    /// The operator `D_var`.
    pub fn dvar(dim: usize, var: usize) -> Self {
        let mut op = Lpdo::zero(dim);
        op.add_term(MultiIndex::unit(dim, var), FieldElement::one());
        op
    }

    pub fn from_coeffs(dim: usize, coeffs: Vec<(MultiIndex, FieldElement)>) -> Self {
        let mut op = Lpdo::zero(dim);
        for (j, c) in coeffs {
            op.add_term(j, c);
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` encodes order minus infinity of the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().map(MultiIndex::order).max()
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

    /// The homogeneous part of order `i`.
    pub fn component(&self, i: u32) -> Lpdo {
        Lpdo {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(j, _)| j.order() == i)
                .map(|(j, c)| (j.clone(), c.clone()))
                .collect(),
        }
    }

    /// The homogeneous part of order `i` as a commutative symbol polynomial
    /// (zero symbol allowed).
    pub fn component_symbol(&self, i: u32) -> SymbolPoly {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(j, _)| j.order() == i)
            .map(|(j, c)| (j.clone(), c.clone()))
            .collect();
        SymbolPoly::from_parts(self.dim, i, coeffs)
    }

    /// The symbol: the top homogeneous component with `D_i` replaced by the
    /// commuting variable `X_i`.
    pub fn symbol(&self) -> Result<SymbolPoly, LpdoError> {
        let d = self.order().ok_or(LpdoError::ZeroOperator)?;
        Ok(self.component_symbol(d))
    }

    /// Substitutes `D_i` for `X_i` in a homogeneous symbol polynomial.
    pub fn from_symbol(s: &SymbolPoly) -> Lpdo {
        Lpdo {
            dim: s.dim(),
            coeffs: s.coeffs().map(|(j, c)| (j.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Lpdo {
        if c.is_zero() {
            return Lpdo::zero(self.dim);
        }
        let mut out = Lpdo::zero(self.dim);
        for (j, a) in &self.coeffs {
            out.add_term(j.clone(), a * c);
        }
        out
    }

    /// The ring product `self ∘ rhs`, expanded with the multivariate Leibniz
    /// rule `D^J ∘ b = Σ_{I ≤ J} binom(J, I) ∂^{J−I}(b) D^I`.
    pub fn compose(&self, rhs: &Lpdo, session: &Session) -> Lpdo {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch");
        let mut out = Lpdo::zero(self.dim);
        for (k, b) in &rhs.coeffs {
            let mut derivs: HashMap<MultiIndex, FieldElement> = HashMap::new();
            derivs.insert(MultiIndex::zero(self.dim), b.clone());
            for (j, a) in &self.coeffs {
                for i in j.sub_indices() {
                    let m = j.checked_sub(&i).expect("sub-index below j");
                    let db = derive_cached(&mut derivs, &m, session);
                    if db.is_zero() {
                        continue;
                    }
                    let coeff = multi_binomial(j, &i);
                    let term = &(a * &db).scale_rational(&coeff);
                    out.add_term(i.add(k), term.clone());
                }
            }
        }
        out
    }

    /// The conjugation `g^{-1} ∘ self ∘ g` by an invertible field element.
    pub fn gauge(&self, g: &FieldElement, session: &Session) -> Result<Lpdo, LpdoError> {
        if g.is_zero() {
            return Err(LpdoError::ZeroGauge);
        }
        let ginv = Lpdo::constant(self.dim, g.invert()?);
        let gop = Lpdo::constant(self.dim, g.clone());
        Ok(ginv.compose(&self.compose(&gop, session), session))
    }
}

fn derive_cached(
    cache: &mut HashMap<MultiIndex, FieldElement>,
    m: &MultiIndex,
    session: &Session,
) -> FieldElement {
    if let Some(v) = cache.get(m) {
        return v.clone();
    }
    let pos = m
        .exponents()
        .iter()
        .position(|&e| e > 0)
        .expect("zero index is pre-seeded");
    let prev = m
        .checked_sub(&MultiIndex::unit(m.dim(), pos + 1))
        .unwrap();
    let base = derive_cached(cache, &prev, session);
    let val = base.derive(BaseVar::new(pos + 1), session);
    cache.insert(m.clone(), val.clone());
    val
}

impl Add for &Lpdo {
    type Output = Lpdo;

    fn add(self, rhs: &Lpdo) -> Lpdo {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch");
        let mut out = self.clone();
        for (j, c) in &rhs.coeffs {
            out.add_term(j.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Lpdo {
    type Output = Lpdo;

    fn sub(self, rhs: &Lpdo) -> Lpdo {
        self + &(-rhs)
    }
}

impl Neg for &Lpdo {
    type Output = Lpdo;

    fn neg(self) -> Lpdo {
        Lpdo {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .map(|(j, c)| (j.clone(), -c))
                .collect(),
        }
    }
}

pub(crate) fn fmt_dvar_monomial(j: &MultiIndex) -> String {
    let mut parts = vec![];
    for (pos, &e) in j.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = match pos {
            0 => "Dx".to_string(),
            1 => "Dy".to_string(),
            p => format!("D{}", p + 1),
        };
        if e == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

/// Shared term printer for operators and symbol polynomials: emits
/// sign-separated `coeff*power` terms in descending index order.
pub(crate) fn fmt_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a MultiIndex, &'a FieldElement)>,
    var_fmt: impl Fn(&MultiIndex) -> String,
) -> fmt::Result {
    let mut first = true;
    for (j, c) in terms {
        let neg = c.is_display_negative();
        let abs = if neg { -c } else { c.clone() };
        if first {
            if neg {
                write!(f, "-")?;
            }
            first = false;
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let dpart = var_fmt(j);
        if dpart.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{dpart}")?;
        } else {
            // Only a bare multi-term polynomial exposes `+`/`-` at top level;
            // fraction displays already parenthesize their numerators.
            let plain = !(abs.is_polynomial() && abs.numerator().num_terms() > 1);
            if plain {
                write!(f, "{abs}*{dpart}")?;
            } else {
                write!(f, "({abs})*{dpart}")?;
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Lpdo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.coeffs.iter().rev(), fmt_dvar_monomial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DiffPoly;
    use crate::field::Var;

    fn sess() -> Session {
        let mut s = Session::new(2);
        s.declare_all("a").unwrap();
        s.declare_all("b").unwrap();
        s.declare_all("c").unwrap();
        s.declare("f1", &[2]).unwrap();
        s
    }

    fn dx() -> Lpdo {
        Lpdo::dvar(2, 1)
    }

    fn dy() -> Lpdo {
        Lpdo::dvar(2, 2)
    }

    fn x_fe() -> FieldElement {
        FieldElement::from_poly(DiffPoly::var(Var::Base(BaseVar::x())))
    }

    fn blumberg_landau(s: &Session) -> Lpdo {
        // Dx^3 + x*Dx^2*Dy + 2*Dx^2 + (2x+2)*Dx*Dy + Dx + (2+x)*Dy
        let _ = s;
        let two = FieldElement::from_integer(2);
        let mut l = Lpdo::zero(2);
        l.add_term(MultiIndex::new(vec![3, 0]), FieldElement::one());
        l.add_term(MultiIndex::new(vec![2, 1]), x_fe());
        l.add_term(MultiIndex::new(vec![2, 0]), two.clone());
        l.add_term(
            MultiIndex::new(vec![1, 1]),
            &x_fe().scale_rational(&BigRational::from_integer(2.into())) + &two,
        );
        l.add_term(MultiIndex::new(vec![1, 0]), FieldElement::one());
        l.add_term(MultiIndex::new(vec![0, 1]), &two + &x_fe());
        l
    }

    #[test]
    fn order_examples() {
        let s = sess();
        assert_eq!(Lpdo::zero(2).order(), None);
        let mut op = dx().compose(&dy(), &s);
        op.add_term(MultiIndex::new(vec![1, 0]), s.symbol("a").unwrap());
        assert_eq!(op.order(), Some(2));
        assert_eq!(blumberg_landau(&s).order(), Some(3));
    }

    #[test]
    fn component_examples() {
        let s = sess();
        let mut op = dx().compose(&dy(), &s);
        op.add_term(MultiIndex::new(vec![1, 0]), s.symbol("a").unwrap());
        op.add_term(MultiIndex::zero(2), s.symbol("c").unwrap());
        let c1 = op.component(1);
        assert_eq!(c1.num_terms(), 1);
        assert_eq!(
            c1.coefficient(&MultiIndex::new(vec![1, 0])),
            s.symbol("a").unwrap()
        );

        let bl = blumberg_landau(&s);
        let top = bl.component(3);
        let mut expected = Lpdo::zero(2);
        expected.add_term(MultiIndex::new(vec![3, 0]), FieldElement::one());
        expected.add_term(MultiIndex::new(vec![2, 1]), x_fe());
        assert_eq!(top, expected);
        assert!(bl.component(7).is_zero());

        let sum = (0..=3).fold(Lpdo::zero(2), |acc, i| &acc + &bl.component(i));
        assert_eq!(sum, bl);
    }

    #[test]
    fn blumberg_landau_compositions() {
        let s = sess();
        let dx1 = {
            let mut op = dx();
            op.add_term(MultiIndex::zero(2), FieldElement::one());
            op
        };
        // (Dx + 1) ∘ (Dx + 1) ∘ (Dx + x*Dy)
        let dx_xdy = {
            let mut op = dx();
            op.add_term(MultiIndex::new(vec![0, 1]), x_fe());
            op
        };
        let three = dx1.compose(&dx1, &s).compose(&dx_xdy, &s);
        assert_eq!(three, blumberg_landau(&s));

        // (Dx^2 + x*Dx*Dy + Dx + (2+x)*Dy) ∘ (Dx + 1)
        let mut left = Lpdo::zero(2);
        left.add_term(MultiIndex::new(vec![2, 0]), FieldElement::one());
        left.add_term(MultiIndex::new(vec![1, 1]), x_fe());
        left.add_term(MultiIndex::new(vec![1, 0]), FieldElement::one());
        left.add_term(
            MultiIndex::new(vec![0, 1]),
            &FieldElement::from_integer(2) + &x_fe(),
        );
        let two = left.compose(&dx1, &s);
        assert_eq!(two, blumberg_landau(&s));
    }

    #[test]
    fn family_composition_with_fraction() {
        // (Dx + 1 + 1/(x+f1)) ∘ (Dx^2 + x*Dx*Dy + (1 - 1/(x+f1))*Dx
        //   + (x + 1 - x/(x+f1))*Dy) equals the same operator; the fractions
        // cancel symbolically.
        let s = sess();
        let f1 = s.symbol("f1").unwrap();
        let w = (&x_fe() + &f1).invert().unwrap();
        let one = FieldElement::one();

        let mut left = dx();
        left.add_term(MultiIndex::zero(2), &one + &w);

        let mut right = Lpdo::zero(2);
        right.add_term(MultiIndex::new(vec![2, 0]), FieldElement::one());
        right.add_term(MultiIndex::new(vec![1, 1]), x_fe());
        right.add_term(MultiIndex::new(vec![1, 0]), &one - &w);
        right.add_term(
            MultiIndex::new(vec![0, 1]),
            &(&x_fe() + &one) - &(&x_fe() * &w),
        );

        assert_eq!(left.compose(&right, &s), blumberg_landau(&s));
    }

    #[test]
    fn symbol_examples() {
        let s = sess();
        let bl = blumberg_landau(&s);
        let sym = bl.symbol().unwrap();
        assert_eq!(sym.degree(), 3);
        assert_eq!(
            sym.coefficient(&MultiIndex::new(vec![3, 0])),
            FieldElement::one()
        );
        assert_eq!(sym.coefficient(&MultiIndex::new(vec![2, 1])), x_fe());

        let mut dx5 = dx();
        dx5.add_term(MultiIndex::zero(2), FieldElement::from_integer(5));
        let sym = dx5.symbol().unwrap();
        assert_eq!(sym.degree(), 1);
        assert!(Lpdo::zero(2).symbol().is_err());
    }

    #[test]
    fn from_symbol_roundtrip() {
        let s = sess();
        let bl = blumberg_landau(&s);
        let sym = bl.symbol().unwrap();
        let hat = Lpdo::from_symbol(&sym);
        assert_eq!(hat, bl.component(3));
        assert_eq!(hat.symbol().unwrap(), sym);
    }

    #[test]
    fn gauge_examples() {
        let s = sess();
        // gauge(Dx, x) = Dx + 1/x
        let g = x_fe();
        let gauged = dx().gauge(&g, &s).unwrap();
        let mut expected = dx();
        expected.add_term(MultiIndex::zero(2), x_fe().invert().unwrap());
        assert_eq!(gauged, expected);

        let bl = blumberg_landau(&s);
        assert_eq!(bl.gauge(&FieldElement::one(), &s).unwrap(), bl);
        assert!(bl.gauge(&FieldElement::zero(), &s).is_err());

        let g = &x_fe() + &s.symbol("a").unwrap();
        let gauged = bl.gauge(&g, &s).unwrap();
        assert_eq!(gauged.symbol().unwrap(), bl.symbol().unwrap());
    }

    #[test]
    fn add_subtract_examples() {
        let s = sess();
        let bl = blumberg_landau(&s);
        assert!((&bl - &bl).is_zero());
        assert_eq!((&bl - &bl).order(), None);

        // ord((D1^2 + D2 + 1) ∘ (D1^2*D2 + D1*D2 + D1 + 1) − D1^2 ∘ D1^2*D2) < 5
        let mut a = Lpdo::zero(2);
        a.add_term(MultiIndex::new(vec![2, 0]), FieldElement::one());
        a.add_term(MultiIndex::new(vec![0, 1]), FieldElement::one());
        a.add_term(MultiIndex::zero(2), FieldElement::one());
        let mut b = Lpdo::zero(2);
        b.add_term(MultiIndex::new(vec![2, 1]), FieldElement::one());
        b.add_term(MultiIndex::new(vec![1, 1]), FieldElement::one());
        b.add_term(MultiIndex::new(vec![1, 0]), FieldElement::one());
        b.add_term(MultiIndex::zero(2), FieldElement::one());
        let l = a.compose(&b, &s);
        let mut head = Lpdo::zero(2);
        head.add_term(MultiIndex::new(vec![4, 1]), FieldElement::one());
        let diff = &l - &head;
        assert!(diff.order().unwrap() < 5);

        let mut dxm = dx();
        dxm.add_term(MultiIndex::zero(2), FieldElement::one());
        let mut dxp = dx();
        dxp.add_term(MultiIndex::zero(2), FieldElement::from_integer(-1));
        let sum = &dxm + &dxp;
        assert_eq!(sum, dx().scale(&FieldElement::from_integer(2)));
    }

    #[test]
    fn leibniz_noncommutativity() {
        let s = sess();
        // Dx ∘ x = x*Dx + 1
        let xop = Lpdo::constant(2, x_fe());
        let lhs = dx().compose(&xop, &s);
        let mut expected = Lpdo::zero(2);
        expected.add_term(MultiIndex::new(vec![1, 0]), x_fe());
        expected.add_term(MultiIndex::zero(2), FieldElement::one());
        assert_eq!(lhs, expected);
    }

    #[test]
    fn display_blumberg_landau() {
        let s = sess();
        assert_eq!(
            blumberg_landau(&s).to_string(),
            "Dx^3 + x*Dx^2*Dy + 2*Dx^2 + (2*x + 2)*Dx*Dy + Dx + (x + 2)*Dy"
        );
    }
}

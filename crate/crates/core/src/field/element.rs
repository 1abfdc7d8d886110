use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One};

use super::gcd::{gcd, lcm};
use super::poly::DiffPoly;
use super::{BaseVar, FieldError, Session};

/// An element of the coefficient field `K`: a reduced fraction of
/// polynomials. The representation is canonical — numerator and denominator
/// share no factor, and the denominator has coprime integer coefficients
/// with positive leading coefficient — so equal elements compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    num: DiffPoly,
    den: DiffPoly,
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement {
            num: DiffPoly::zero(),
            den: DiffPoly::one(),
        }
    }

    pub fn one() -> Self {
        FieldElement {
            num: DiffPoly::one(),
            den: DiffPoly::one(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        FieldElement {
            num: DiffPoly::from_integer(n),
            den: DiffPoly::one(),
        }
    }

    pub fn from_rational(c: BigRational) -> Self {
        FieldElement {
            num: DiffPoly::constant(c),
            den: DiffPoly::one(),
        }
    }

    pub fn from_poly(p: DiffPoly) -> Self {
        FieldElement {
            num: p,
            den: DiffPoly::one(),
        }
    }

    pub fn from_ratio(num: DiffPoly, den: DiffPoly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: DiffPoly, den: DiffPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return FieldElement::zero();
        }
        if den.is_one() {
            return FieldElement {
                num,
                den: DiffPoly::one(),
            };
        }
        if let Some(c) = den.as_constant() {
            return FieldElement {
                num: num.scale(&c.recip()),
                den: DiffPoly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let c = den.scalar_content();
        if !c.is_one() {
            let r = c.recip();
            num = num.scale(&r);
            den = den.scale(&r);
        }
        FieldElement { num, den }
    }

    pub fn numerator(&self) -> &DiffPoly {
        &self.num
    }

    pub fn denominator(&self) -> &DiffPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The rational value, when the element is a constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn invert(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInversion);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self * &rhs.invert()?)
    }

    /// Formal partial derivative; the quotient rule on true fractions, in
    /// the reduced form `(n'·e − n·d'/w) / (d·e)` with `w = gcd(d, d')` and
    /// `e = d/w`, which keeps repeated derivatives from squaring the
    /// denominator at every step.
    pub fn derive(&self, v: BaseVar, session: &Session) -> FieldElement {
        let dn = self.num.derive(v, session);
        if self.den.is_one() {
            return FieldElement {
                num: dn,
                den: DiffPoly::one(),
            };
        }
        let dd = self.den.derive(v, session);
        if dd.is_zero() {
            return Self::reduced(dn, self.den.clone());
        }
        let w = gcd(&self.den, &dd);
        let e = self.den.div_exact(&w).expect("gcd divides");
        let dd_red = dd.div_exact(&w).expect("gcd divides");
        let num = &(&dn * &e) - &(&self.num * &dd_red);
        let den = &self.den * &e;
        Self::reduced(num, den)
    }

    pub fn pow(&self, n: u32) -> FieldElement {
        let mut acc = FieldElement::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale_rational(&self, c: &BigRational) -> FieldElement {
        if c.is_one() {
            return self.clone();
        }
        Self::reduced(self.num.scale(c), self.den.clone())
    }

    /// Sign used by the printers: the sign of the numerator's leading
    /// coefficient (the denominator is positive by normalization).
    pub fn is_display_negative(&self) -> bool {
        self.num
            .leading()
            .is_some_and(|(_, c)| num::Signed::is_negative(c))
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            return FieldElement::reduced(num, self.den.clone());
        }
        // Use the lcm of the denominators to keep intermediate products small.
        let l = lcm(&self.den, &rhs.den);
        let fa = l.div_exact(&self.den).expect("lcm divisible");
        let fb = l.div_exact(&rhs.den).expect("lcm divisible");
        let num = &(&self.num * &fa) + &(&rhs.num * &fb);
        FieldElement::reduced(num, l)
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        FieldElement {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        if self.is_zero() || rhs.is_zero() {
            return FieldElement::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return FieldElement {
                num: &self.num * &rhs.num,
                den: DiffPoly::one(),
            };
        }
        // Cross-cancel before multiplying to curb growth.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let na = self.num.div_exact(&g1).expect("gcd divides");
        let db = rhs.den.div_exact(&g1).expect("gcd divides");
        let nb = rhs.num.div_exact(&g2).expect("gcd divides");
        let da = self.den.div_exact(&g2).expect("gcd divides");
        FieldElement::reduced(&na * &nb, &da * &db)
    }
}

fn poly_token_like(p: &DiffPoly) -> bool {
    // A form that needs no parentheses as a division or product operand:
    // a single term that is a plain power of one variable, or a nonnegative
    // integer constant.
    if p.num_terms() != 1 {
        return false;
    }
    let (m, c) = p.leading().unwrap();
    if m.is_one() {
        return !num::Signed::is_negative(c) && c.denom().is_one();
    }
    m.powers().len() == 1 && c.is_one()
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        // A single-term numerator binds tighter than the division under the
        // left-associative grammar, so it needs no parentheses.
        if self.num.num_terms() == 1 {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        if poly_token_like(&self.den) {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_integer(n)
    }
}

impl From<BigInt> for FieldElement {
    fn from(n: BigInt) -> Self {
        FieldElement::from_rational(BigRational::from_integer(n))
    }
}

#[cfg(test)]
mod tests {
    use super::super::monomial::{Monomial, Var};
    use super::*;
    use num::Zero;

    fn sess() -> Session {
        let mut s = Session::new(2);
        s.declare_all("a").unwrap();
        s.declare_all("b").unwrap();
        s.declare("f1", &[2]).unwrap();
        s
    }

    fn x() -> DiffPoly {
        DiffPoly::var(Var::Base(BaseVar::x()))
    }

    fn fe(p: DiffPoly) -> FieldElement {
        FieldElement::from_poly(p)
    }

    #[test]
    fn rational_addition() {
        let half = FieldElement::from_rational(BigRational::new(1.into(), 2.into()));
        let third = FieldElement::from_rational(BigRational::new(1.into(), 3.into()));
        let sum = &half + &third;
        assert_eq!(
            sum.as_rational(),
            Some(BigRational::new(5.into(), 6.into()))
        );
    }

    #[test]
    fn fraction_addition_cancels() {
        // x/(x+1) + 1/(x+1) = 1
        let den = &x() + &DiffPoly::one();
        let a = FieldElement::from_ratio(x(), den.clone()).unwrap();
        let b = FieldElement::from_ratio(DiffPoly::one(), den).unwrap();
        assert!((&a + &b).is_one());
    }

    #[test]
    fn jet_doubling() {
        let s = sess();
        let ax = s.jet("a", &[1, 0]).unwrap();
        let two_ax = &ax + &ax;
        assert_eq!(two_ax, ax.scale_rational(&BigRational::from_integer(2.into())));
    }

    #[test]
    fn multiplication_examples() {
        let s = sess();
        let f = s.symbol("a").unwrap();
        let xf = &fe(x()) + &f;
        let inv = xf.invert().unwrap();
        assert!((&xf * &inv).is_one());

        let y = DiffPoly::var(Var::Base(BaseVar::y()));
        let xy = &fe(x()) * &fe(y.clone());
        assert_eq!(xy, fe(&x() * &y));

        let p = &fe(x()) + &FieldElement::one();
        let q = &fe(x()) - &FieldElement::one();
        assert_eq!(&p * &q, fe(&x().pow(2) - &DiffPoly::one()));
    }

    #[test]
    fn invert_examples() {
        let xinv = fe(x()).invert().unwrap();
        assert_eq!(xinv.numerator(), &DiffPoly::one());
        assert_eq!(xinv.denominator(), &x());
        assert_eq!(
            FieldElement::zero().invert(),
            Err(FieldError::ZeroInversion)
        );

        let s = sess();
        let f1 = s.symbol("f1").unwrap();
        let xf1 = &fe(x()) + &f1;
        let inv = xf1.invert().unwrap();
        assert_eq!(inv.invert().unwrap(), xf1);
    }

    #[test]
    fn derive_quotient_rule() {
        // derive(1/(x+f1), x) = -1/(x+f1)^2 with f1 depending on y only.
        let s = sess();
        let f1_poly = s.symbol("f1").unwrap().numerator().clone();
        let xf1 = &x() + &f1_poly;
        let e = FieldElement::from_ratio(DiffPoly::one(), xf1.clone()).unwrap();
        let d = e.derive(BaseVar::x(), &s);

        // Expected value assembled from raw terms: -1 / (x^2 + 2*x*f1 + f1^2).
        let f1_mono = Monomial::var(Var::Jet(match s.symbol("f1").unwrap().numerator().leading() {
            Some((m, _)) => match &m.powers()[0].0 {
                Var::Jet(j) => j.clone(),
                _ => unreachable!(),
            },
            None => unreachable!(),
        }));
        let x_mono = Monomial::var(Var::Base(BaseVar::x()));
        let expected_den = DiffPoly::from_terms(vec![
            (x_mono.pow(2), BigRational::one()),
            (x_mono.mul(&f1_mono), BigRational::from_integer(2.into())),
            (f1_mono.pow(2), BigRational::one()),
        ]);
        let expected =
            FieldElement::from_ratio(DiffPoly::from_integer(-1), expected_den).unwrap();
        assert_eq!(d, expected);

        // The y-derivative picks up the jet shift of f1.
        let dy = e.derive(BaseVar::y(), &s);
        let f1y = s.jet("f1", &[0, 1]).unwrap();
        let expected_dy = &(-&f1y) * &(&e * &e);
        assert_eq!(dy, expected_dy);
    }

    #[test]
    fn is_zero_examples() {
        let a = fe(x().pow(2));
        let b = &fe(x()) * &fe(x());
        assert!((&a - &b).is_zero());

        let s = sess();
        let sa = s.symbol("a").unwrap();
        let sb = s.symbol("b").unwrap();
        assert!((&(&sa * &sb) - &(&sb * &sa)).is_zero());

        let y = fe(DiffPoly::var(Var::Base(BaseVar::y())));
        assert!(!(&fe(x()) - &y).is_zero());
        assert!(FieldElement::zero().is_zero());
        assert!(!BigRational::zero().is_one());
    }

    #[test]
    fn canonical_form_by_cross_scaling() {
        let s = sess();
        let a = s.symbol("a").unwrap();
        let num = &x() + a.numerator();
        let den = &(&x() * &x()) + &DiffPoly::from_integer(3);
        let e1 = FieldElement::from_ratio(num.clone(), den.clone()).unwrap();
        let r = &(&x() * &x()) + a.numerator();
        let e2 = FieldElement::from_ratio(&num * &r, &den * &r).unwrap();
        assert_eq!(e1, e2);
    }

    #[test]
    fn display_roundtrip_shapes() {
        let den = &x().scale(&BigRational::from_integer(2.into())) + &DiffPoly::one();
        let e = FieldElement::from_ratio(-&x(), den).unwrap();
        assert_eq!(e.to_string(), "-x/(2*x + 1)");
        let q = FieldElement::from_ratio(DiffPoly::one(), x().pow(2)).unwrap();
        assert_eq!(q.to_string(), "1/x^2");
    }
}

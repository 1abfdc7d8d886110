//! Closed-form obstacle expressions for bivariate operators of orders two
//! and three, written out directly from the descent by hand. They serve as
//! independent oracles for the generic engine.

use crate::field::{BaseVar, FieldElement, Session};
use crate::lpdo::{Lpdo, MultiIndex};

/// Coefficients of `L = Dx*Dy + a*Dx + b*Dy + c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order2Coeffs {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
}

impl Order2Coeffs {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Self {
        Order2Coeffs { a, b, c }
    }

    /// The operator the coefficients describe.
    pub fn operator(&self) -> Lpdo {
        Lpdo::from_coeffs(
            2,
            vec![
                (MultiIndex::new(vec![1, 1]), FieldElement::one()),
                (MultiIndex::new(vec![1, 0]), self.a.clone()),
                (MultiIndex::new(vec![0, 1]), self.b.clone()),
                (MultiIndex::new(vec![0, 0]), self.c.clone()),
            ],
        )
    }
}

/// The two order-0 obstacles of a normalized second-order hyperbolic
/// operator, for the types `(X)(Y)` and `(Y)(X)` respectively:
/// `(c − ab − ∂x(a), c − ab − ∂y(b))`.
pub fn laplace_invariants(
    c2: &Order2Coeffs,
    session: &Session,
) -> (FieldElement, FieldElement) {
    let ab = &c2.a * &c2.b;
    let h = &(&c2.c - &ab) - &c2.a.derive(BaseVar::x(), session);
    let k = &(&c2.c - &ab) - &c2.b.derive(BaseVar::y(), session);
    (h, k)
}

/// The expression whose vanishing is equivalent to complete factorability
/// of `Dx*Dy + a10*Dx + a01*Dy + a00` along `(X)(Y)`:
/// `a00 − a10*a01 − ∂x(a10)`.
pub fn factorable2_condition(
    a10: &FieldElement,
    a01: &FieldElement,
    a00: &FieldElement,
    session: &Session,
) -> FieldElement {
    &(a00 - &(a10 * a01)) - &a10.derive(BaseVar::x(), session)
}

/// Coefficients of the lower-order part of a third-order bivariate
/// operator `L = Ŝ + a20*Dx^2 + a11*Dx*Dy + a02*Dy^2 + a10*Dx + a01*Dy + a00`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order3Coeffs {
    pub a20: FieldElement,
    pub a11: FieldElement,
    pub a02: FieldElement,
    pub a10: FieldElement,
    pub a01: FieldElement,
    pub a00: FieldElement,
}

impl Order3Coeffs {
    /// The lower-order terms as an operator.
    fn tail(&self) -> Lpdo {
        Lpdo::from_coeffs(
            2,
            vec![
                (MultiIndex::new(vec![2, 0]), self.a20.clone()),
                (MultiIndex::new(vec![1, 1]), self.a11.clone()),
                (MultiIndex::new(vec![0, 2]), self.a02.clone()),
                (MultiIndex::new(vec![1, 0]), self.a10.clone()),
                (MultiIndex::new(vec![0, 1]), self.a01.clone()),
                (MultiIndex::new(vec![0, 0]), self.a00.clone()),
            ],
        )
    }

    /// `Dx*Dy*(Dx+Dy) + tail`, the strictly hyperbolic normal form.
    pub fn operator_xy_xplusy(&self) -> Lpdo {
        let head = Lpdo::from_coeffs(
            2,
            vec![
                (MultiIndex::new(vec![2, 1]), FieldElement::one()),
                (MultiIndex::new(vec![1, 2]), FieldElement::one()),
            ],
        );
        &head + &self.tail()
    }

    /// `Dx^2*Dy + tail`.
    pub fn operator_xxy(&self) -> Lpdo {
        let head = Lpdo::from_coeffs(
            2,
            vec![(MultiIndex::new(vec![2, 1]), FieldElement::one())],
        );
        &head + &self.tail()
    }
}

/// Which two-factor type the closed form describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoFactorCase {
    /// Type `(X)(Y*X + Y*Y)` on the symbol `X*Y*(X+Y)`.
    XThenYxPlusYy,
    /// Type `(Y)(X*X)` on the symbol `X^2*Y`.
    YThenXx,
}

/// The common obstacle of a third-order operator along a two-factor type,
/// as an order-1 operator.
pub fn obstacle3_two_factor(
    c3: &Order3Coeffs,
    case: TwoFactorCase,
    session: &Session,
) -> Lpdo {
    let dx = |e: &FieldElement| e.derive(BaseVar::x(), session);
    let dy = |e: &FieldElement| e.derive(BaseVar::y(), session);
    let Order3Coeffs {
        a20,
        a11,
        a02,
        a10,
        a01,
        a00,
    } = c3;
    match case {
        TwoFactorCase::XThenYxPlusYy => {
            // (a02^2 − a11*a02 + a01 + ∂x(a02 − a11)) Dy
            //  + a00 − a02*a10 + a02^2*a20 + 2*a02*∂x(a20) − ∂x(a10)
            //  + a20*∂x(a02) + ∂xx(a20)
            let coef_dy = &(&(&(a02 * a02) - &(a11 * a02)) + a01) + &dx(&(a02 - a11));
            let two = FieldElement::from_integer(2);
            let order0 = &(&(&(&(&(a00 - &(a02 * a10)) + &(&(a02 * a02) * a20))
                + &(&(&two * a02) * &dx(a20)))
                - &dx(a10))
                + &(a20 * &dx(a02)))
                + &dx(&dx(a20));
            Lpdo::from_coeffs(
                2,
                vec![
                    (MultiIndex::new(vec![0, 1]), coef_dy),
                    (MultiIndex::new(vec![0, 0]), order0),
                ],
            )
        }
        TwoFactorCase::YThenXx => {
            // (a10 − a20*a11 − ∂y(a11)) Dx
            //  + a00 − a20*a01 + a20^2*a02 + 2*a20*∂y(a02) − ∂y(a01)
            //  + a02*∂y(a20) + ∂yy(a02)
            let coef_dx = &(a10 - &(a20 * a11)) - &dy(a11);
            let two = FieldElement::from_integer(2);
            let order0 = &(&(&(&(&(a00 - &(a20 * a01)) + &(&(a20 * a20) * a02))
                + &(&(&two * a20) * &dy(a02)))
                - &dy(a01))
                + &(a02 * &dy(a20)))
                + &dy(&dy(a02));
            Lpdo::from_coeffs(
                2,
                vec![
                    (MultiIndex::new(vec![1, 0]), coef_dx),
                    (MultiIndex::new(vec![0, 0]), order0),
                ],
            )
        }
    }
}

/// The common obstacle of the strictly hyperbolic third-order operator
/// along `(X)(Y)(X+Y)`, with `s2 = a20 − a11 + a02`.
pub fn obstacle3_three_factor(c3: &Order3Coeffs, session: &Session) -> Lpdo {
    let dx = |e: &FieldElement| e.derive(BaseVar::x(), session);
    let dy = |e: &FieldElement| e.derive(BaseVar::y(), session);
    let Order3Coeffs {
        a20,
        a11,
        a02,
        a10,
        a01,
        a00,
    } = c3;
    let s2 = &(a20 - a11) + a02;

    // (a10 − a20*a11 + a20^2 − ∂x(a20) + ∂y(s2)) Dx
    let coef_dx = &(&(&(a10 - &(a20 * a11)) + &(a20 * a20)) - &dx(a20)) + &dy(&s2);
    // (a01 − a02*a11 + a02^2 + ∂x(−a11 + a02)) Dy
    let coef_dy = &(&(a01 - &(a02 * a11)) + &(a02 * a02)) + &dx(&(a02 - a11));
    // a00 + a20*a02*s2 + s2*∂x(a20) + (a20*∂x + ∂xy + a02*∂y)(s2)
    let order0 = &(&(&(&(a00 + &(&(a20 * a02) * &s2)) + &(&s2 * &dx(a20)))
        + &(a20 * &dx(&s2)))
        + &dy(&dx(&s2)))
        + &(a02 * &dy(&s2));

    Lpdo::from_coeffs(
        2,
        vec![
            (MultiIndex::new(vec![1, 0]), coef_dx),
            (MultiIndex::new(vec![0, 1]), coef_dy),
            (MultiIndex::new(vec![0, 0]), order0),
        ],
    )
}

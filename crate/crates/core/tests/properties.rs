//! Randomized laws: field axioms and derivations, ring laws of operator
//! composition, symbol multiplicativity, gauge identities, gcd division
//! properties, and engine exactness.

use std::sync::LazyLock;

use num::BigRational;
use proptest::prelude::*;

use lpdo_core::engine::{compose_all, factor};
use lpdo_core::symbol::{factor_constant_form, gcd2};
use lpdo_core::text::{parse_field_element, parse_operator};
use lpdo_core::{
    BaseVar, FactorizationType, FieldElement, Lpdo, MultiIndex, Session, SymbolPoly,
};

static SESSION: LazyLock<Session> = LazyLock::new(|| {
    let mut s = Session::new(2);
    s.declare_all("a").unwrap();
    s.declare_all("b").unwrap();
    s.declare("f1", &[2]).unwrap();
    s
});

static SESSION3: LazyLock<Session> = LazyLock::new(|| {
    let mut s = Session::new(3);
    s.declare_all("a").unwrap();
    s
});

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

/// Small polynomial elements of the field, built from a fixed atom pool.
fn arb_poly_elem() -> impl Strategy<Value = FieldElement> {
    let atom = prop_oneof![
        Just("x"),
        Just("y"),
        Just("a"),
        Just("b"),
        Just("f1"),
        Just("a_x"),
        Just("b_y"),
    ]
    .prop_map(|t| parse_field_element(t, &SESSION).unwrap());
    let term = (atom.clone(), prop::option::of(atom), arb_rational()).prop_map(
        |(u, v, c)| {
            let base = match v {
                Some(v) => &u * &v,
                None => u,
            };
            base.scale_rational(&c)
        },
    );
    prop::collection::vec(term, 0..3).prop_map(|terms| {
        terms
            .iter()
            .fold(FieldElement::zero(), |acc, t| &acc + t)
    })
}

fn arb_nonzero_poly_elem() -> impl Strategy<Value = FieldElement> {
    (arb_poly_elem(), arb_rational()).prop_map(|(p, c)| {
        let shifted = &p + &FieldElement::from_rational(&c + BigRational::from_integer(7.into()));
        if shifted.is_zero() {
            FieldElement::one()
        } else {
            shifted
        }
    })
}

fn arb_field_elem() -> impl Strategy<Value = FieldElement> {
    (arb_poly_elem(), prop::option::of(arb_nonzero_poly_elem())).prop_map(|(n, d)| match d {
        Some(d) => n.div(&d).unwrap(),
        None => n,
    })
}

fn arb_base_var() -> impl Strategy<Value = BaseVar> {
    prop_oneof![Just(BaseVar::x()), Just(BaseVar::y())]
}

/// Compact invertible elements for conjugation laws; kept small because a
/// double gauge squares coefficient sizes.
fn arb_gauge_elem() -> impl Strategy<Value = FieldElement> {
    prop_oneof![
        Just("x + 1"),
        Just("y"),
        Just("a"),
        Just("f1 + 2"),
        Just("x*y + 3"),
        Just("2/3"),
        Just("x - y + 1"),
    ]
    .prop_map(|t| parse_field_element(t, &SESSION).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn leibniz_rule(a in arb_field_elem(), b in arb_field_elem(), v in arb_base_var()) {
        let lhs = (&a * &b).derive(v, &SESSION);
        let rhs = &(&a.derive(v, &SESSION) * &b) + &(&a * &b.derive(v, &SESSION));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivations_commute(a in arb_field_elem()) {
        let xy = a.derive(BaseVar::x(), &SESSION).derive(BaseVar::y(), &SESSION);
        let yx = a.derive(BaseVar::y(), &SESSION).derive(BaseVar::x(), &SESSION);
        prop_assert_eq!(xy, yx);
    }

    #[test]
    fn field_laws(a in arb_field_elem(), b in arb_field_elem(), c in arb_field_elem()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn inverses_cancel(a in arb_field_elem()) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.invert().unwrap()).is_one());
    }

    #[test]
    fn canonical_fraction_representation(
        n in arb_poly_elem(),
        d in arb_nonzero_poly_elem(),
        r in arb_nonzero_poly_elem(),
    ) {
        // Equal fractions reduce to bit-identical representations.
        let plain = n.div(&d).unwrap();
        let scaled = (&n * &r).div(&(&d * &r)).unwrap();
        prop_assert_eq!(plain.numerator(), scaled.numerator());
        prop_assert_eq!(plain.denominator(), scaled.denominator());
    }
}

fn arb_multi_index(max_ord: u32) -> impl Strategy<Value = MultiIndex> {
    (0..=max_ord, 0..=max_ord)
        .prop_filter("order bound", move |(i, j)| i + j <= max_ord)
        .prop_map(|(i, j)| MultiIndex::new(vec![i, j]))
}

fn arb_lpdo(max_ord: u32) -> impl Strategy<Value = Lpdo> {
    prop::collection::vec((arb_multi_index(max_ord), arb_poly_elem()), 1..4)
        .prop_map(|terms| Lpdo::from_coeffs(2, terms))
}

fn arb_nonzero_lpdo(max_ord: u32) -> impl Strategy<Value = Lpdo> {
    arb_lpdo(max_ord).prop_filter("nonzero operator", |l| !l.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symbol_is_multiplicative(a in arb_nonzero_lpdo(2), b in arb_nonzero_lpdo(2)) {
        let prod = a.compose(&b, &SESSION);
        prop_assert_eq!(
            prod.symbol().unwrap(),
            a.symbol().unwrap().multiply(&b.symbol().unwrap())
        );
        prop_assert_eq!(
            prod.order(),
            Some(a.order().unwrap() + b.order().unwrap())
        );
    }

    #[test]
    fn compose_associates_and_distributes(
        a in arb_lpdo(2),
        b in arb_lpdo(2),
        c in arb_lpdo(2),
    ) {
        let ab_c = a.compose(&b, &SESSION).compose(&c, &SESSION);
        let a_bc = a.compose(&b.compose(&c, &SESSION), &SESSION);
        prop_assert_eq!(ab_c, a_bc);
        let left = a.compose(&(&b + &c), &SESSION);
        let right = &a.compose(&b, &SESSION) + &a.compose(&c, &SESSION);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn gauge_identities(
        l in arb_lpdo(2),
        m in arb_lpdo(2),
        g in arb_gauge_elem(),
        h in arb_gauge_elem(),
    ) {
        let gh = &g * &h;
        let twice = l.gauge(&g, &SESSION).unwrap().gauge(&h, &SESSION).unwrap();
        prop_assert_eq!(twice, l.gauge(&gh, &SESSION).unwrap());

        let composed = l.compose(&m, &SESSION).gauge(&g, &SESSION).unwrap();
        let separately = l
            .gauge(&g, &SESSION)
            .unwrap()
            .compose(&m.gauge(&g, &SESSION).unwrap(), &SESSION);
        prop_assert_eq!(composed, separately);
    }

    #[test]
    fn hat_inverts_symbol_on_homogeneous(l in arb_nonzero_lpdo(3)) {
        let top = l.component(l.order().unwrap());
        let sym = top.symbol().unwrap();
        prop_assert_eq!(Lpdo::from_symbol(&sym), top);
    }

    #[test]
    fn components_sum_to_operator(l in arb_lpdo(3)) {
        let mut sum = Lpdo::zero(2);
        if let Some(d) = l.order() {
            for i in 0..=d {
                sum = &sum + &l.component(i);
            }
        }
        prop_assert_eq!(sum, l);
    }

    #[test]
    fn printed_operators_reparse(l in arb_lpdo(3)) {
        let printed = l.to_string();
        let reparsed = parse_operator(&printed, &SESSION).unwrap();
        prop_assert_eq!(l, reparsed);
    }
}

fn arb_lpdo3(max_ord: u32) -> impl Strategy<Value = Lpdo> {
    let idx = (0..=max_ord, 0..=max_ord, 0..=max_ord)
        .prop_filter("order bound", move |(i, j, k)| i + j + k <= max_ord)
        .prop_map(|(i, j, k)| MultiIndex::new(vec![i, j, k]));
    let coeff = prop_oneof![
        Just("x"),
        Just("y"),
        Just("a"),
        Just("2"),
        Just("x*y - 1"),
    ]
    .prop_map(|t| parse_field_element(t, &SESSION3).unwrap());
    prop::collection::vec((idx, coeff), 1..4)
        .prop_map(|terms| Lpdo::from_coeffs(3, terms))
        .prop_filter("nonzero operator", |l| !l.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn symbol_is_multiplicative_dim3(a in arb_lpdo3(2), b in arb_lpdo3(2)) {
        let prod = a.compose(&b, &SESSION3);
        prop_assert_eq!(
            prod.symbol().unwrap(),
            a.symbol().unwrap().multiply(&b.symbol().unwrap())
        );
    }
}

fn arb_linear_symbol() -> impl Strategy<Value = SymbolPoly> {
    (arb_rational(), arb_rational())
        .prop_filter("nonzero", |(p, q)| {
            !(p.numer().bits() == 0 && q.numer().bits() == 0)
        })
        .prop_map(|(p, q)| {
            SymbolPoly::from_coeffs(
                2,
                1,
                vec![
                    (MultiIndex::new(vec![1, 0]), FieldElement::from_rational(p)),
                    (MultiIndex::new(vec![0, 1]), FieldElement::from_rational(q)),
                ],
            )
        })
        .prop_filter("nonzero", |s| !s.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn gcd_divides_products(
        g in arb_linear_symbol(),
        a in arb_linear_symbol(),
        b in arb_linear_symbol(),
    ) {
        let ga = g.multiply(&a);
        let gb = g.multiply(&b);
        let d = gcd2(&ga, &gb).unwrap();
        prop_assert!(d.degree() >= 1);
        prop_assert!(ga.div_exact(&d).is_some());
        prop_assert!(gb.div_exact(&d).is_some());
        prop_assert!(d.div_exact(&g).is_some());
    }

    #[test]
    fn constant_factors_multiply_back(
        roots in prop::collection::vec(arb_rational(), 1..4),
        xs in 0u32..2,
        ys in 0u32..2,
    ) {
        let mut s = SymbolPoly::from_coeffs(
            2,
            xs + ys,
            vec![(MultiIndex::new(vec![xs, ys]), FieldElement::one())],
        );
        for r in &roots {
            let lin = SymbolPoly::from_coeffs(
                2,
                1,
                vec![
                    (MultiIndex::new(vec![1, 0]), FieldElement::one()),
                    (
                        MultiIndex::new(vec![0, 1]),
                        FieldElement::from_rational(-r.clone()),
                    ),
                ],
            );
            s = s.multiply(&lin);
        }
        let fs = factor_constant_form(&s).unwrap();
        let prod = fs
            .iter()
            .skip(1)
            .fold(fs[0].clone(), |acc, f| acc.multiply(f));
        prop_assert_eq!(prod, s);
        for f in &fs {
            prop_assert!(f.degree() <= 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn factoring_is_exact(
        s1 in arb_linear_symbol(),
        s2 in arb_linear_symbol(),
        low in prop::collection::vec((arb_multi_index(1), arb_poly_elem()), 0..4),
    ) {
        prop_assume!(gcd2(&s1, &s2).unwrap().degree() == 0);
        let t = FactorizationType::new(vec![s1.clone(), s2.clone()]).unwrap();
        let head = Lpdo::from_symbol(&t.product());
        let l = &head + &Lpdo::from_coeffs(2, low);
        let r = factor(&l, &t, &SESSION).unwrap();
        prop_assert_eq!(&l, &(&compose_all(&r.factors, &SESSION) + &r.obstacle));
        if let Some(o) = r.obstacle_order {
            prop_assert_eq!(r.obstacle.order(), Some(o));
            prop_assert!(o <= l.order().unwrap() - 2);
            prop_assert_eq!(r.class_representative.len() as u32, o + 1);
        } else {
            prop_assert!(r.obstacle.is_zero());
        }
    }
}

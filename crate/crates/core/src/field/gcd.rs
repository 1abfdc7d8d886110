//! Multivariate polynomial GCD over the rationals by recursive
//! content/primitive-part reduction with a primitive pseudo-remainder
//! sequence in the chosen main variable.

use super::monomial::{Monomial, Var};
use super::poly::DiffPoly;

/// Canonical GCD: coprime integer coefficients, positive leading
/// coefficient. `gcd(0, p)` is the normalized `p`.
pub fn gcd(a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
    if a.is_zero() {
        return b.scalar_primitive();
    }
    if b.is_zero() {
        return a.scalar_primitive();
    }
    if a.is_constant() || b.is_constant() {
        return DiffPoly::one();
    }

    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m = ma.gcd(&mb);
    let a = a
        .div_exact(&DiffPoly::monomial(ma, num::one()))
        .expect("monomial content divides");
    let b = b
        .div_exact(&DiffPoly::monomial(mb, num::one()))
        .expect("monomial content divides");

    let core = gcd_content_reduced(&a, &b);
    core.mul_monomial(&m).scalar_primitive()
}

fn gcd_content_reduced(a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
    // Only variables occurring in both can appear in the gcd; with no
    // common variable the gcd is a unit.
    let vars_a = a.vars();
    let vars_b = b.vars();
    let v = vars_a
        .intersection(&vars_b)
        .min_by_key(|v| {
            a.degree_in(v)
                .unwrap_or(0)
                .min(b.degree_in(v).unwrap_or(0))
        })
        .cloned();
    let v = match v {
        Some(v) => v,
        None => return DiffPoly::one(),
    };

    let (ca, pa) = content_and_primitive(a, &v);
    let (cb, pb) = content_and_primitive(b, &v);
    let c = gcd(&ca, &cb);
    let g = primitive_euclid(pa, pb, &v);
    &c * &g
}

/// Content (gcd of the `v`-coefficients) and primitive part w.r.t. `v`.
fn content_and_primitive(p: &DiffPoly, v: &Var) -> (DiffPoly, DiffPoly) {
    if p.degree_in(v).unwrap_or(0) == 0 {
        return (p.clone(), DiffPoly::one());
    }
    let coeffs = p.coefficients_in(v);
    let mut c = DiffPoly::zero();
    for coeff in &coeffs {
        c = gcd(&c, coeff);
        if c.is_one() {
            break;
        }
    }
    let prim = p.div_exact(&c).expect("content divides");
    (c, prim)
}

/// Euclidean loop on `v`-primitive polynomials using pseudo-remainders,
/// reducing to primitive part after every step.
fn primitive_euclid(mut a: DiffPoly, mut b: DiffPoly, v: &Var) -> DiffPoly {
    if a.degree_in(v).unwrap_or(0) < b.degree_in(v).unwrap_or(0) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        // A v-free member means the v-primitive inputs are coprime.
        if b.degree_in(v).unwrap_or(0) == 0 {
            return DiffPoly::one();
        }
        let r = pseudo_rem(&a, &b, v);
        a = b;
        b = if r.is_zero() {
            DiffPoly::zero()
        } else {
            content_and_primitive(&r, v).1
        };
    }
    a.scalar_primitive()
}

/// Pseudo-remainder of `a` by `b` in the variable `v`: repeatedly cancels
/// the leading `v`-term after cross-multiplying by the divisor's leading
/// coefficient, so no fractions appear.
fn pseudo_rem(a: &DiffPoly, b: &DiffPoly, v: &Var) -> DiffPoly {
    let db = b.degree_in(v).expect("pseudo_rem by zero");
    let lb = b.coefficients_in(v)[db as usize].clone();
    let vb_mono = Monomial::var(v.clone());
    let mut r = a.clone();
    loop {
        let dr = match r.degree_in(v) {
            Some(d) if !r.is_zero() => d,
            _ => return r,
        };
        if dr < db || r.is_zero() {
            return r;
        }
        let lr = r.coefficients_in(v)[dr as usize].clone();
        let shift = DiffPoly::monomial(vb_mono.pow(dr - db), num::one());
        let t = &(&lr * &shift) * b;
        r = &(&r * &lb) - &t;
    }
}

/// Least common multiple, normalized like `gcd`.
pub fn lcm(a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
    if a.is_zero() || b.is_zero() {
        return DiffPoly::zero();
    }
    let g = gcd(a, b);
    (&a.div_exact(&g).expect("gcd divides") * b).scalar_primitive()
}

//! The descent factoring engine: extend a partial factorization one order
//! at a time by solving the linear decomposition equation; on failure,
//! collect the residuals into the common obstacle and report the canonical
//! class representatives.

mod linsolve;

use std::fmt;

use thiserror::Error;

use crate::field::Session;
use crate::lpdo::{Lpdo, LpdoError};
use crate::symbol::{gcd2, pairwise_coprime, FactorizationType, SymbolError, SymbolPoly};

pub use linsolve::{solve_decomposition, DecompositionSystem, Solution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("symbol of the operator does not match the product of the type's factors")]
    SymbolMismatch,
    #[error("factor symbols are not pairwise coprime")]
    SymbolsNotCoprime,
    #[error("decomposition degree {degree} is out of range (must be < {bound})")]
    DegreeOutOfRange { degree: u32, bound: u32 },
    #[error("seed partial factorization of order {seed} is too shallow; order <= {max} required")]
    SeedOrderTooHigh { seed: u32, max: u32 },
    #[error("degree-0 factors are not accepted in factorization types")]
    DegreeZeroFactor,
    #[error("expected a type with {expected} factors, got {got}")]
    WrongFactorCount { expected: usize, got: usize },
    #[error("invalid partial factorization: {0}")]
    InvalidPartialFactorization(String),
    #[error(transparent)]
    Lpdo(#[from] LpdoError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
}

/// Non-fatal conditions attached to a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Warning {
    /// Free coordinates appeared above the unique-extension range of a
    /// non-coprime two-factor type and were pinned to zero.
    NonUniqueRange,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::NonUniqueRange => write!(
                f,
                "free factor coordinates above the unique range were set to zero"
            ),
        }
    }
}

/// Factors whose composition agrees with the target operator above order
/// `order − 1`: `ord(L − F_1 ∘ … ∘ F_k) < order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFactorization {
    pub factors: Vec<Lpdo>,
    pub order: u32,
}

impl PartialFactorization {
    pub fn new(factors: Vec<Lpdo>, order: u32) -> Self {
        PartialFactorization { factors, order }
    }

    /// The strongest valid claim for the given factors: one more than the
    /// order of `L − F_1 ∘ … ∘ F_k` (a complete factorization has order 0).
    pub fn deepest(l: &Lpdo, factors: Vec<Lpdo>, session: &Session) -> Self {
        let diff = l - &compose_all(&factors, session);
        let order = diff.order().map_or(0, |o| o + 1);
        PartialFactorization { factors, order }
    }

    /// Checks the order bound and that each factor's symbol matches the type.
    pub fn validate(
        &self,
        l: &Lpdo,
        t: &FactorizationType,
        session: &Session,
    ) -> Result<(), EngineError> {
        if self.factors.len() != t.len() {
            return Err(EngineError::WrongFactorCount {
                expected: t.len(),
                got: self.factors.len(),
            });
        }
        for (f, s) in self.factors.iter().zip(t.factors()) {
            let sym = f
                .symbol()
                .map_err(|_| EngineError::InvalidPartialFactorization("zero factor".into()))?;
            if sym != *s {
                return Err(EngineError::InvalidPartialFactorization(format!(
                    "factor symbol {sym} does not match the declared {s}"
                )));
            }
        }
        let diff = l - &compose_all(&self.factors, session);
        if let Some(o) = diff.order() {
            if o >= self.order {
                return Err(EngineError::InvalidPartialFactorization(format!(
                    "composition differs from the operator at order {o}, bound is {}",
                    self.order
                )));
            }
        }
        Ok(())
    }
}

/// Outcome of a factoring run: the factors achieved, the accumulated
/// obstacle `R` with `L = F_1 ∘ … ∘ F_k + R` exactly, its order, and the
/// canonical residuals per degree from the obstacle order down to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstacleResult {
    pub factors: Vec<Lpdo>,
    pub obstacle: Lpdo,
    pub obstacle_order: Option<u32>,
    pub class_representative: Vec<SymbolPoly>,
    pub warnings: Vec<Warning>,
}

impl ObstacleResult {
    pub fn is_complete(&self) -> bool {
        self.obstacle_order.is_none()
    }

    /// The canonical representative of the top obstacle class; the zero
    /// symbol when the operator factors completely.
    pub fn top_class(&self) -> SymbolPoly {
        match &self.obstacle_order {
            Some(_) => self.class_representative[0].clone(),
            None => SymbolPoly::zero(self.obstacle.dim(), 0),
        }
    }
}

pub fn compose_all(factors: &[Lpdo], session: &Session) -> Lpdo {
    let mut it = factors.iter();
    let first = it.next().expect("at least one factor").clone();
    it.fold(first, |acc, f| acc.compose(f, session))
}

fn check_type(l: &Lpdo, t: &FactorizationType) -> Result<(), EngineError> {
    if t.factors().iter().any(|s| s.degree() == 0) {
        return Err(EngineError::DegreeZeroFactor);
    }
    let sym = l.symbol()?;
    if t.product() != sym {
        return Err(EngineError::SymbolMismatch);
    }
    Ok(())
}

struct Descent {
    factors: Vec<Lpdo>,
    obstacle: Lpdo,
    /// Residual per degree, descending from `start − 1` down to 0.
    residuals: Vec<SymbolPoly>,
    /// Degrees at which the solver saw free columns.
    free_degrees: Vec<u32>,
}

/// Runs the descent from order `start` down to 0. At each degree the unique
/// new factor components are installed; a nonzero residual is subtracted
/// from the working operator (as the hat of its symbol) and accumulated
/// into the obstacle, realizing a factorization of `L − R`.
fn descend(
    l: &Lpdo,
    t: &FactorizationType,
    mut factors: Vec<Lpdo>,
    start: u32,
    session: &Session,
) -> Result<Descent, EngineError> {
    let mut obstacle = Lpdo::zero(l.dim());
    let mut residuals = vec![];
    let mut free_degrees = vec![];

    for degree in (0..start).rev() {
        let delta = &(l - &obstacle) - &compose_all(&factors, session);
        debug_assert!(
            delta.order().map_or(true, |o| o <= degree),
            "descent invariant broken at degree {degree}"
        );
        let p = delta.component_symbol(degree);
        let system = DecompositionSystem::build(t, degree)?;
        let sol = system.solve(&p)?;
        if sol.had_free_columns {
            if t.len() >= 3 {
                return Err(EngineError::SymbolsNotCoprime);
            }
            free_degrees.push(degree);
        }
        for (f, a) in factors.iter_mut().zip(&sol.components) {
            if !a.is_zero() {
                *f = &*f + &Lpdo::from_symbol(a);
            }
        }
        if !sol.residual.is_zero() {
            obstacle = &obstacle + &Lpdo::from_symbol(&sol.residual);
        }
        residuals.push(sol.residual);
    }

    debug_assert_eq!(
        *l,
        &compose_all(&factors, session) + &obstacle,
        "descent must reproduce the operator exactly"
    );

    Ok(Descent {
        factors,
        obstacle,
        residuals,
        free_degrees,
    })
}

fn result_from_descent(d: Descent, start: u32, warnings: Vec<Warning>) -> ObstacleResult {
    let first_nonzero = d.residuals.iter().position(|r| !r.is_zero());
    let (obstacle_order, class_representative) = match first_nonzero {
        Some(i) => (Some(start - 1 - i as u32), d.residuals[i..].to_vec()),
        None => (None, vec![]),
    };
    ObstacleResult {
        factors: d.factors,
        obstacle: d.obstacle,
        obstacle_order,
        class_representative,
        warnings,
    }
}

/// Factors `L` along the type by full descent from its symbol. For three or
/// more factors the symbols must be pairwise coprime; for two non-coprime
/// factors this is the default-seed greedy completion (free coordinates
/// zeroed, with a warning when any actually occur in the non-unique range).
pub fn factor(
    l: &Lpdo,
    t: &FactorizationType,
    session: &Session,
) -> Result<ObstacleResult, EngineError> {
    check_type(l, t)?;
    let d = l.order().expect("nonzero by check_type");

    let mut noncoprime_bound = None;
    if t.len() >= 3 && t.dim() == 2 && !pairwise_coprime(t)? {
        return Err(EngineError::SymbolsNotCoprime);
    }
    if t.len() == 2 && t.dim() == 2 {
        let d0 = gcd2(&t.factors()[0], &t.factors()[1])?.degree();
        if d0 > 0 {
            noncoprime_bound = Some(d - d0);
        }
    }

    let seed: Vec<Lpdo> = t.factors().iter().map(Lpdo::from_symbol).collect();
    let descent = descend(l, t, seed, d, session)?;

    let mut warnings = vec![];
    if let Some(bound) = noncoprime_bound {
        if descent.free_degrees.iter().any(|&deg| deg >= bound) {
            warnings.push(Warning::NonUniqueRange);
        }
    }
    Ok(result_from_descent(descent, d, warnings))
}

/// Two-factor descent from a caller-supplied partial factorization. The
/// seed must reach at least down to order `d − deg gcd(S_1, S_2)`; below
/// that bound every step has a unique solution.
pub fn factor_two_noncoprime(
    l: &Lpdo,
    t: &FactorizationType,
    seed: Option<&PartialFactorization>,
    session: &Session,
) -> Result<ObstacleResult, EngineError> {
    if t.len() != 2 {
        return Err(EngineError::WrongFactorCount {
            expected: 2,
            got: t.len(),
        });
    }
    check_type(l, t)?;
    let d = l.order().expect("nonzero by check_type");
    let d0 = gcd2(&t.factors()[0], &t.factors()[1])?.degree();

    match seed {
        Some(pf) => {
            pf.validate(l, t, session)?;
            if pf.order > d - d0 {
                return Err(EngineError::SeedOrderTooHigh {
                    seed: pf.order,
                    max: d - d0,
                });
            }
            let descent = descend(l, t, pf.factors.clone(), pf.order, session)?;
            Ok(result_from_descent(descent, pf.order, vec![]))
        }
        None => factor(l, t, session),
    }
}

/// One extension step: solves at degree `pf.order − 1` and installs the new
/// components. The returned residual is zero exactly when the extension
/// succeeded; otherwise the returned factors extend `L − residual_hat`.
pub fn extend(
    l: &Lpdo,
    pf: &PartialFactorization,
    t: &FactorizationType,
    session: &Session,
) -> Result<(PartialFactorization, SymbolPoly), EngineError> {
    if pf.order == 0 {
        return Err(EngineError::InvalidPartialFactorization(
            "cannot extend below order 0".into(),
        ));
    }
    pf.validate(l, t, session)?;
    let degree = pf.order - 1;

    let delta = l - &compose_all(&pf.factors, session);
    let p = delta.component_symbol(degree);
    let system = DecompositionSystem::build(t, degree)?;
    let sol = system.solve(&p)?;
    if sol.had_free_columns && t.len() >= 3 {
        return Err(EngineError::SymbolsNotCoprime);
    }
    let mut factors = pf.factors.clone();
    for (f, a) in factors.iter_mut().zip(&sol.components) {
        if !a.is_zero() {
            *f = &*f + &Lpdo::from_symbol(a);
        }
    }
    Ok((
        PartialFactorization::new(factors, degree),
        sol.residual,
    ))
}

/// The canonical representative of the top obstacle class in the ring of
/// obstacles `K[X] / (Sym/S_1, …, Sym/S_k)`; the zero symbol when `L`
/// factors completely.
pub fn obstacle_class(
    l: &Lpdo,
    t: &FactorizationType,
    session: &Session,
) -> Result<SymbolPoly, EngineError> {
    Ok(factor(l, t, session)?.top_class())
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Number of degree-`t` monomials in `n` variables.
pub fn count_monomials(n: u32, t: u32) -> u64 {
    binom((n + t - 1) as u64, (n - 1) as u64)
}

/// Codimension of the subvariety of operators factorable along a type with
/// the given factor degrees among all operators of order `d = Σ degrees`.
pub fn codimension(n: u32, d: u32, degrees: &[u32]) -> u64 {
    assert_eq!(
        degrees.iter().sum::<u32>(),
        d,
        "factor degrees must sum to the operator order"
    );
    let whole = binom((n + d - 1) as u64, n as u64);
    let parts: u64 = degrees
        .iter()
        .map(|&di| binom((n + di - 1) as u64, n as u64))
        .sum();
    whole - parts
}

/// Equation and variable counts of the decomposition system at degree `t`:
/// equations are the degree-`t` monomials, variables the monomials of the
/// unknown components (empty when their degree would be negative).
pub fn system_counts(t: &FactorizationType, degree: u32) -> (u64, u64) {
    let n = t.dim() as u32;
    let d = t.total_degree();
    let equations = count_monomials(n, degree);
    let variables = t
        .factors()
        .iter()
        .filter_map(|s| (degree + s.degree()).checked_sub(d))
        .map(|e| count_monomials(n, e))
        .sum();
    (equations, variables)
}

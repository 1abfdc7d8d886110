//! Exact symbolic computation with linear partial differential operators:
//! composition in the noncommutative ring `K[D]`, symbol polynomials,
//! order-by-order factorization, and obstacles to factorization with their
//! canonical classes.
//!
//! Coefficients live in a differential field of rational expressions in the
//! base variables and in formal derivatives of opaque function symbols, so
//! all results are exact.

pub mod field;
pub mod lpdo;
pub mod closed;
pub mod engine;
pub mod symbol;
pub mod text;

pub use field::{BaseVar, DiffPoly, FieldElement, FieldError, FuncJet, Monomial, Session, Var};
pub use engine::{
    codimension, count_monomials, extend, factor, factor_two_noncoprime, obstacle_class,
    solve_decomposition, system_counts, DecompositionSystem, EngineError, ObstacleResult,
    PartialFactorization, Warning,
};
pub use lpdo::{Lpdo, LpdoError, MultiIndex};
pub use symbol::{FactorizationType, SymbolError, SymbolPoly};

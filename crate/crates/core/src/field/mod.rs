//! The coefficient field `K`: exact fractions of polynomials over the
//! rationals in base variables and in formal derivatives (jets) of opaque
//! function symbols, equipped with commuting derivations.

mod element;
mod gcd;
mod monomial;
mod poly;

pub use element::FieldElement;
pub use gcd::{gcd as gcd_poly, lcm as lcm_poly};
pub use monomial::{Monomial, Var};
pub use poly::DiffPoly;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("inversion of zero")]
    ZeroInversion,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("base variable index {index} out of range for dimension {dim}")]
    DimensionOutOfRange { index: usize, dim: usize },
    #[error("undeclared function symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("function symbol `{0}` is already declared")]
    RedeclaredSymbol(String),
    #[error("`{0}` is reserved and cannot be used as a function symbol")]
    ReservedName(String),
}

/// A base variable of the ambient space, 1-based: 1 is `x`, 2 is `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaseVar(usize);

impl BaseVar {
    pub fn new(index: usize) -> Self {
        assert!(index >= 1, "base variables are 1-based");
        BaseVar(index)
    }

    pub fn x() -> Self {
        BaseVar(1)
    }

    pub fn y() -> Self {
        BaseVar(2)
    }

    pub fn index(self) -> usize {
        self.0
    }

    pub fn name(self) -> String {
        match self.0 {
            1 => "x".into(),
            2 => "y".into(),
            i => format!("x{i}"),
        }
    }
}

impl fmt::Display for BaseVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A formal derivative of an opaque function symbol: `orders[i]` counts the
/// derivatives taken along base variable `i + 1`. Jets of the same symbol
/// with different multi-indices are distinct indeterminates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FuncJet {
    name: String,
    orders: Vec<u32>,
}

impl FuncJet {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn total_order(&self) -> u32 {
        self.orders.iter().sum()
    }
}

impl fmt::Display for FuncJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if self.total_order() == 0 {
            return Ok(());
        }
        // Letter suffix for the bivariate case, explicit index list otherwise.
        if self.orders.len() <= 2 {
            write!(f, "_")?;
            for _ in 0..self.orders[0] {
                write!(f, "x")?;
            }
            if self.orders.len() == 2 {
                for _ in 0..self.orders[1] {
                    write!(f, "y")?;
                }
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.orders.iter().map(|o| o.to_string()).collect();
            write!(f, "_[{}]", parts.join(","))
        }
    }
}

/// Session context: ambient dimension and the table of declared opaque
/// function symbols with their dependency masks. A symbol's derivative along
/// a variable outside its mask is identically zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Session {
    dim: usize,
    symbols: BTreeMap<String, Vec<bool>>,
}

impl Session {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "ambient dimension must be at least 1");
        Session {
            dim,
            symbols: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Declares `name` as depending on the base variables in `deps` (1-based).
    pub fn declare(&mut self, name: &str, deps: &[usize]) -> Result<(), FieldError> {
        if !valid_symbol_name(name) {
            return Err(FieldError::ReservedName(name.to_string()));
        }
        if self.symbols.contains_key(name) {
            return Err(FieldError::RedeclaredSymbol(name.to_string()));
        }
        let mut mask = vec![false; self.dim];
        for &d in deps {
            if d < 1 || d > self.dim {
                return Err(FieldError::DimensionOutOfRange {
                    index: d,
                    dim: self.dim,
                });
            }
            mask[d - 1] = true;
        }
        self.symbols.insert(name.to_string(), mask);
        Ok(())
    }

    /// Declares `name` as depending on every base variable.
    pub fn declare_all(&mut self, name: &str) -> Result<(), FieldError> {
        let all: Vec<usize> = (1..=self.dim).collect();
        self.declare(name, &all)
    }

    pub fn is_declared(&self, name: &str) -> bool {
        self.symbols.contains_key(name)
    }

    pub fn declared_symbols(&self) -> impl Iterator<Item = &str> {
        self.symbols.keys().map(|s| s.as_str())
    }

    pub fn depends_on(&self, name: &str, var: BaseVar) -> Result<bool, FieldError> {
        let mask = self
            .symbols
            .get(name)
            .ok_or_else(|| FieldError::UndeclaredSymbol(name.to_string()))?;
        Ok(var.index() <= self.dim && mask[var.index() - 1])
    }

    pub fn base_var(&self, index: usize) -> Result<FieldElement, FieldError> {
        if index < 1 || index > self.dim {
            return Err(FieldError::DimensionOutOfRange {
                index,
                dim: self.dim,
            });
        }
        Ok(FieldElement::from_poly(DiffPoly::var(Var::Base(
            BaseVar::new(index),
        ))))
    }

    /// The jet of a declared symbol. Returns the zero element when the
    /// multi-index hits a variable outside the symbol's dependency mask.
    pub fn jet(&self, name: &str, orders: &[u32]) -> Result<FieldElement, FieldError> {
        let mask = self
            .symbols
            .get(name)
            .ok_or_else(|| FieldError::UndeclaredSymbol(name.to_string()))?;
        assert!(
            orders.len() <= self.dim,
            "jet multi-index longer than dimension"
        );
        let mut padded = vec![0u32; self.dim];
        padded[..orders.len()].copy_from_slice(orders);
        for (i, &o) in padded.iter().enumerate() {
            if o > 0 && !mask[i] {
                return Ok(FieldElement::zero());
            }
        }
        Ok(FieldElement::from_poly(DiffPoly::var(Var::Jet(FuncJet {
            name: name.to_string(),
            orders: padded,
        }))))
    }

    /// The undifferentiated symbol itself.
    pub fn symbol(&self, name: &str) -> Result<FieldElement, FieldError> {
        self.jet(name, &[])
    }

    pub(crate) fn jet_derivative(&self, jet: &FuncJet, var: BaseVar) -> Option<FuncJet> {
        let mask = self
            .symbols
            .get(&jet.name)
            .unwrap_or_else(|| panic!("jet of undeclared symbol `{}`", jet.name));
        let i = var.index() - 1;
        if i >= mask.len() || !mask[i] {
            return None;
        }
        let mut orders = jet.orders.clone();
        if orders.len() < self.dim {
            orders.resize(self.dim, 0);
        }
        orders[i] += 1;
        Some(FuncJet {
            name: jet.name.clone(),
            orders,
        })
    }
}

/// Names that collide with base variables, symbol variables or operator
/// variables are rejected.
pub fn valid_symbol_name(name: &str) -> bool {
    let mut chars = name.chars();
    let ok_shape = match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric()),
        _ => false,
    };
    if !ok_shape {
        return false;
    }
    !is_reserved_name(name)
}

fn is_reserved_name(name: &str) -> bool {
    let tail_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    match name {
        "x" | "y" | "X" | "Y" | "Dx" | "Dy" => true,
        _ => {
            (name.starts_with('x') && tail_digits(&name[1..]))
                || (name.starts_with('X') && tail_digits(&name[1..]))
                || (name.starts_with('D') && tail_digits(&name[1..]))
        }
    }
}

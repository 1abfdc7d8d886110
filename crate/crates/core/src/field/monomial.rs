use std::cmp::Ordering;
use std::fmt;

use super::{BaseVar, FuncJet};

/// A polynomial indeterminate: a base variable or a function jet. The
/// derived ordering (base variables by index, then jets by name and
/// multi-index) is the fixed total variable order of the field layer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Base(BaseVar),
    Jet(FuncJet),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Base(v) => write!(f, "{v}"),
            Var::Jet(j) => write!(f, "{j}"),
        }
    }
}

/// A power product of variables. Exponents are positive and entries are
/// sorted by the variable order, so the representation is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    powers: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { powers: vec![] }
    }

    pub fn var(v: Var) -> Self {
        Monomial {
            powers: vec![(v, 1)],
        }
    }

    pub fn from_powers(mut powers: Vec<(Var, u32)>) -> Self {
        powers.retain(|&(_, e)| e > 0);
        powers.sort_by(|a, b| a.0.cmp(&b.0));
        for w in powers.windows(2) {
            assert!(w[0].0 != w[1].0, "duplicate variable in monomial");
        }
        Monomial { powers }
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.powers.iter().map(|&(_, e)| e).sum()
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.powers
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.powers
            .iter()
            .find(|(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut powers = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut i, mut j) = (0, 0);
        while i < self.powers.len() && j < other.powers.len() {
            match self.powers[i].0.cmp(&other.powers[j].0) {
                Ordering::Less => {
                    powers.push(self.powers[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    powers.push(other.powers[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    powers.push((self.powers[i].0.clone(), self.powers[i].1 + other.powers[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        powers.extend_from_slice(&self.powers[i..]);
        powers.extend_from_slice(&other.powers[j..]);
        Monomial { powers }
    }

    /// Componentwise quotient; `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut powers = Vec::with_capacity(self.powers.len());
        let mut i = 0;
        for (v, e) in &other.powers {
            loop {
                if i >= self.powers.len() {
                    return None;
                }
                match self.powers[i].0.cmp(v) {
                    Ordering::Less => {
                        powers.push(self.powers[i].clone());
                        i += 1;
                    }
                    Ordering::Equal => {
                        if self.powers[i].1 < *e {
                            return None;
                        }
                        if self.powers[i].1 > *e {
                            powers.push((v.clone(), self.powers[i].1 - e));
                        }
                        i += 1;
                        break;
                    }
                    Ordering::Greater => return None,
                }
            }
        }
        powers.extend_from_slice(&self.powers[i..]);
        Some(Monomial { powers })
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut powers = vec![];
        for (v, e) in &self.powers {
            let oe = other.exponent(v);
            let m = (*e).min(oe);
            if m > 0 {
                powers.push((v.clone(), m));
            }
        }
        Monomial { powers }
    }

    pub fn pow(&self, n: u32) -> Monomial {
        if n == 0 {
            return Monomial::one();
        }
        Monomial {
            powers: self.powers.iter().map(|(v, e)| (v.clone(), e * n)).collect(),
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.powers.iter().map(|(v, _)| v)
    }
}

/// Graded order, ties broken so that a higher exponent on an earlier
/// variable wins (for base variables x and y this is lex with x > y).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.powers.get(i), other.powers.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.powers {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

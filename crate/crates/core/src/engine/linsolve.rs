//! The linear decomposition system `Σ_i (S/S_i)·A_i = P` over the
//! coefficient field, in the monomial bases, with a deterministic canonical
//! solution: fraction-free forward elimination, free unknowns pinned to
//! zero, exact back-substitution over `K`.

use crate::field::{lcm_poly, DiffPoly, FieldElement};
use crate::lpdo::MultiIndex;
use crate::symbol::{FactorizationType, SymbolPoly};

use super::EngineError;

/// The homogeneous linear system for one descent step: rows are degree-`t`
/// monomials, columns are the monomials of the unknown factor components,
/// both in descending graded-lex order with `X > Y`.
#[derive(Debug, Clone)]
pub struct DecompositionSystem {
    dim: usize,
    degree: u32,
    rows: Vec<MultiIndex>,
    cols: Vec<(usize, MultiIndex)>,
    unknown_degrees: Vec<Option<u32>>,
    cofactors: Vec<SymbolPoly>,
    matrix: Vec<Vec<FieldElement>>,
}

impl DecompositionSystem {
    /// Builds the system for solving at degree `t`; requires `t < deg ∏S_i`.
    pub fn build(t: &FactorizationType, degree: u32) -> Result<Self, EngineError> {
        let d = t.total_degree();
        if degree >= d {
            return Err(EngineError::DegreeOutOfRange { degree, bound: d });
        }
        let dim = t.dim();
        let rows = MultiIndex::all_of_order(dim, degree);

        let mut cofactors = Vec::with_capacity(t.len());
        let mut unknown_degrees = Vec::with_capacity(t.len());
        let mut cols = vec![];
        for (i, s) in t.factors().iter().enumerate() {
            cofactors.push(t.cofactor(i));
            let e = (degree + s.degree()).checked_sub(d);
            unknown_degrees.push(e);
            if let Some(e) = e {
                for m in MultiIndex::all_of_order(dim, e) {
                    cols.push((i, m));
                }
            }
        }

        let matrix = rows
            .iter()
            .map(|row| {
                cols.iter()
                    .map(|(i, m)| match row.checked_sub(m) {
                        Some(j) => cofactors[*i].coefficient(&j),
                        None => FieldElement::zero(),
                    })
                    .collect()
            })
            .collect();

        Ok(DecompositionSystem {
            dim,
            degree,
            rows,
            cols,
            unknown_degrees,
            cofactors,
            matrix,
        })
    }

    pub fn equations(&self) -> usize {
        self.rows.len()
    }

    pub fn variables(&self) -> usize {
        self.cols.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn unknown_degrees(&self) -> &[Option<u32>] {
        &self.unknown_degrees
    }

    /// True when the homogeneous system has only the zero solution.
    pub fn kernel_is_trivial(&self) -> bool {
        let rhs = vec![FieldElement::zero(); self.rows.len()];
        let elim = self.eliminate(&rhs);
        elim.pivots.len() == self.cols.len()
    }

    /// The canonical solution: free unknowns are zero, pivot unknowns come
    /// from the echelon system. Returns the per-factor components and the
    /// residual `P − Σ (S/S_i)·A_i`, plus whether any free column appeared.
    pub fn solve(&self, p: &SymbolPoly) -> Result<Solution, EngineError> {
        assert_eq!(p.dim(), self.dim, "dimension mismatch");
        assert_eq!(p.degree(), self.degree, "right-hand side has wrong degree");

        let rhs: Vec<FieldElement> = self.rows.iter().map(|m| p.coefficient(m)).collect();
        let elim = self.eliminate(&rhs);

        // Back-substitution over K; free unknowns stay zero.
        let mut x = vec![FieldElement::zero(); self.cols.len()];
        for &(r, c) in elim.pivots.iter().rev() {
            let mut s = FieldElement::from_poly(elim.rhs[r].clone());
            for (j, xj) in x.iter().enumerate().skip(c + 1) {
                if !xj.is_zero() && !elim.matrix[r][j].is_zero() {
                    let t = &FieldElement::from_poly(elim.matrix[r][j].clone()) * xj;
                    s = &s - &t;
                }
            }
            x[c] = s
                .div(&FieldElement::from_poly(elim.matrix[r][c].clone()))
                .expect("pivot entry is nonzero");
        }

        let mut components: Vec<SymbolPoly> = self
            .unknown_degrees
            .iter()
            .map(|e| SymbolPoly::zero(self.dim, e.unwrap_or(0)))
            .collect();
        for ((i, m), xi) in self.cols.iter().zip(&x) {
            components[*i].add_term(m.clone(), xi.clone());
        }

        let mut residual = p.clone();
        for (i, a) in components.iter().enumerate() {
            if !a.is_zero() {
                residual = residual.sub(&self.cofactors[i].multiply(a));
            }
        }

        Ok(Solution {
            components,
            residual,
            had_free_columns: elim.pivots.len() < self.cols.len(),
        })
    }
}

pub struct Solution {
    pub components: Vec<SymbolPoly>,
    pub residual: SymbolPoly,
    pub had_free_columns: bool,
}

struct Eliminated {
    matrix: Vec<Vec<DiffPoly>>,
    rhs: Vec<DiffPoly>,
    pivots: Vec<(usize, usize)>,
}

impl DecompositionSystem {
    /// Fraction-free forward elimination on the augmented matrix after
    /// clearing each row's denominators. Pivot selection looks only at the
    /// coefficient columns, first nonzero row wins, so the pivot pattern —
    /// and with it the canonical projection — is stable under row and
    /// column scaling.
    fn eliminate(&self, rhs_field: &[FieldElement]) -> Eliminated {
        let nrows = self.rows.len();
        let ncols = self.cols.len();

        let mut matrix: Vec<Vec<DiffPoly>> = Vec::with_capacity(nrows);
        let mut rhs: Vec<DiffPoly> = Vec::with_capacity(nrows);
        for r in 0..nrows {
            let mut den = DiffPoly::one();
            for e in self.matrix[r].iter().chain([&rhs_field[r]]) {
                if !e.is_zero() {
                    den = lcm_poly(&den, e.denominator());
                }
            }
            let scale = |e: &FieldElement| -> DiffPoly {
                if e.is_zero() {
                    return DiffPoly::zero();
                }
                let f = den.div_exact(e.denominator()).expect("lcm divisible");
                e.numerator() * &f
            };
            matrix.push(self.matrix[r].iter().map(scale).collect());
            rhs.push(scale(&rhs_field[r]));
        }

        let mut pivots = vec![];
        let mut prev = DiffPoly::one();
        let mut next_row = 0;
        for c in 0..ncols {
            if next_row == nrows {
                break;
            }
            let Some(pr) = (next_row..nrows).find(|&r| !matrix[r][c].is_zero()) else {
                continue;
            };
            matrix.swap(next_row, pr);
            rhs.swap(next_row, pr);
            for r in next_row + 1..nrows {
                let f = matrix[r][c].clone();
                let piv = matrix[next_row][c].clone();
                for j in c..ncols {
                    matrix[r][j] =
                        bareiss_update(&matrix[r][j], &piv, &matrix[next_row][j], &f, &prev);
                }
                rhs[r] = bareiss_update(&rhs[r], &piv, &rhs[next_row], &f, &prev);
            }
            prev = matrix[next_row][c].clone();
            pivots.push((next_row, c));
            next_row += 1;
        }

        Eliminated { matrix, rhs, pivots }
    }
}

/// One fraction-free update `(a·piv − b·f) / prev`; the division is exact by
/// the Sylvester identity, with a safe fallback that skips it (a plain row
/// scaling) should exactness ever fail.
fn bareiss_update(
    a: &DiffPoly,
    piv: &DiffPoly,
    b: &DiffPoly,
    f: &DiffPoly,
    prev: &DiffPoly,
) -> DiffPoly {
    let raw = &(a * piv) - &(b * f);
    if raw.is_zero() {
        return raw;
    }
    match raw.div_exact(prev) {
        Some(q) => q,
        None => raw,
    }
}

/// Solves `Σ_i (S/S_i)·A_i = P − residual` at degree `t` with the canonical
/// projection. For three or more factors a nontrivial kernel means the
/// factor symbols were not pairwise coprime.
pub fn solve_decomposition(
    p: &SymbolPoly,
    t: &FactorizationType,
    degree: u32,
) -> Result<(Vec<SymbolPoly>, SymbolPoly), EngineError> {
    let system = DecompositionSystem::build(t, degree)?;
    let sol = system.solve(p)?;
    if t.len() >= 3 && sol.had_free_columns {
        return Err(EngineError::SymbolsNotCoprime);
    }
    Ok((sol.components, sol.residual))
}

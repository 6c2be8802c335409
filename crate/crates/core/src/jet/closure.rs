//! Commutator-closure of generator sets with exact rational linear algebra.
//!
//! Every pairwise bracket is expanded in the given basis; structure
//! constants are polynomials in the symbolic parameter `ε` (needed because
//! dispersive scaling generators carry `ε` in their coefficients). A failed
//! expansion is returned as a witness pair instead of an error: non-closure
//! is a legitimate mathematical outcome.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use super::poly::{JetPoly, Monomial, Var};
use super::vector::PointVectorField;

/// Basis key: component slot (0 = ∂t, 1 = ∂x, 2 = ∂u) × monomial.
type Key = (usize, Monomial);

fn keys_of(v: &PointVectorField, into: &mut BTreeSet<Key>) {
    for (slot, comp) in v.components().into_iter().enumerate() {
        for (m, _) in comp.terms() {
            into.insert((slot, m.clone()));
        }
    }
}

fn vectorize(v: &PointVectorField, keys: &[Key]) -> Vec<BigRational> {
    let comps = v.components();
    keys.iter()
        .map(|(slot, m)| {
            comps[*slot]
                .terms()
                .find(|(mm, _)| *mm == m)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(BigRational::zero)
        })
        .collect()
}

/// Dense exact Gaussian elimination: solves `A·λ = b` where `A` has the
/// given columns. Returns one solution (free variables set to zero, pivots
/// preferred in earlier columns) or `None` if the system is inconsistent.
fn solve_exact(columns: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = rhs.len();
    let cols = columns.len();
    // Augmented row-major matrix.
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = alloc::vec![None; cols];
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].recip();
        for e in m[rank][col..].iter_mut() {
            *e = &*e * &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=cols {
                    let delta = &f * &m[rank][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    // Consistency: no pivot may fall in the augmented column.
    for r in rank..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    let mut sol = alloc::vec![BigRational::zero(); cols];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            sol[col] = m[*r][cols].clone();
        }
    }
    Some(sol)
}

/// One bracket `[v_i, v_j]` expanded in the basis: coefficient `k` is a
/// polynomial in `ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketExpansion {
    pub i: usize,
    pub j: usize,
    /// `[v_i, v_j] = Σ_k coeffs[k] · v_k`, each coefficient in ℚ[ε].
    pub coeffs: Vec<JetPoly>,
}

/// The pair whose bracket left the span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureWitness {
    pub i: usize,
    pub j: usize,
    pub bracket: PointVectorField,
}

/// Outcome of [`closure_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub closed: bool,
    pub dimension: usize,
    /// Successful expansions for pairs `i < j`, in lexicographic order.
    pub table: Vec<BracketExpansion>,
    pub witness: Option<ClosureWitness>,
}

impl ClosureReport {
    /// Coefficient of `v_k` in `[v_i, v_j]` (i < j), if that pair closed.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Option<&JetPoly> {
        self.table
            .iter()
            .find(|e| e.i == i && e.j == j)
            .map(|e| &e.coeffs[k])
    }
}

/// Verifies that the generators are linearly independent over ℚ and that
/// every pairwise bracket lies in their span with coefficients in ℚ[ε].
///
/// Stops at the first failing pair and reports it as a witness.
pub fn closure_check(generators: &[PointVectorField]) -> Result<ClosureReport> {
    let n = generators.len();
    let mut brackets: Vec<(usize, usize, PointVectorField)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            brackets.push((i, j, generators[i].bracket(&generators[j])));
        }
    }

    // Common coordinate system over every generator and bracket, with eps
    // powers applied to generators up to the degree the system can need.
    let eps_degree = generators
        .iter()
        .flat_map(|g| g.components())
        .map(|p| p.eps_degree())
        .chain(
            brackets
                .iter()
                .flat_map(|(_, _, b)| b.components())
                .map(|p| p.eps_degree()),
        )
        .max()
        .unwrap_or(0)
        + 1;
    let eps_scaled: Vec<Vec<PointVectorField>> = (0..=eps_degree)
        .map(|d| {
            let eps_pow = JetPoly::var(Var::Eps).pow(d);
            generators
                .iter()
                .map(|g| {
                    PointVectorField::new(
                        &eps_pow * g.t_coeff(),
                        &eps_pow * g.x_coeff(),
                        &eps_pow * g.u_coeff(),
                    )
                    .expect("multiplying by eps keeps point fields point fields")
                })
                .collect()
        })
        .collect();

    let mut key_set: BTreeSet<Key> = BTreeSet::new();
    for row in &eps_scaled {
        for g in row {
            keys_of(g, &mut key_set);
        }
    }
    for (_, _, b) in &brackets {
        keys_of(b, &mut key_set);
    }
    let keys: Vec<Key> = key_set.into_iter().collect();

    // Independence over ℚ: each generator must add rank.
    let plain: Vec<Vec<BigRational>> = generators.iter().map(|g| vectorize(g, &keys)).collect();
    for idx in 1..n {
        let rhs = &plain[idx];
        if solve_exact(&plain[..idx], rhs).is_some() {
            return Err(Error::DependentGenerators { index: idx });
        }
    }
    if n > 0 && generators[0].is_zero() {
        return Err(Error::DependentGenerators { index: 0 });
    }

    // Unknowns λ_{k,d} ordered by eps degree then generator index, so the
    // elimination prefers low-degree structure constants.
    let mut columns: Vec<Vec<BigRational>> = Vec::with_capacity(n * (eps_degree as usize + 1));
    for row in &eps_scaled {
        for g in row {
            columns.push(vectorize(g, &keys));
        }
    }

    let mut table = Vec::new();
    for (i, j, b) in brackets {
        let rhs = vectorize(&b, &keys);
        match solve_exact(&columns, &rhs) {
            Some(sol) => {
                let mut coeffs = alloc::vec![JetPoly::zero(); n];
                for d in 0..=eps_degree {
                    for k in 0..n {
                        let lambda = &sol[(d as usize) * n + k];
                        if !lambda.is_zero() {
                            let term = JetPoly::term(
                                Monomial::unit(Var::Eps, d),
                                lambda.clone(),
                            );
                            coeffs[k] = &coeffs[k] + &term;
                        }
                    }
                }
                table.push(BracketExpansion { i, j, coeffs });
            }
            None => {
                return Ok(ClosureReport {
                    closed: false,
                    dimension: n,
                    table,
                    witness: Some(ClosureWitness { i, j, bracket: b }),
                });
            }
        }
    }
    Ok(ClosureReport {
        closed: true,
        dimension: n,
        table,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::poly::rat;

    fn fld(t: JetPoly, x: JetPoly, u: JetPoly) -> PointVectorField {
        PointVectorField::new(t, x, u).unwrap()
    }

    #[test]
    fn translations_close_abelianly() {
        let gens = [
            fld(JetPoly::one(), JetPoly::zero(), JetPoly::zero()),
            fld(JetPoly::zero(), JetPoly::one(), JetPoly::zero()),
        ];
        let rep = closure_check(&gens).unwrap();
        assert!(rep.closed);
        assert_eq!(rep.dimension, 2);
        assert!(rep.constant(0, 1, 0).unwrap().is_zero());
        assert!(rep.constant(0, 1, 1).unwrap().is_zero());
    }

    #[test]
    fn dependent_generators_are_rejected() {
        let gens = [
            fld(JetPoly::one(), JetPoly::zero(), JetPoly::zero()),
            fld(JetPoly::int(2), JetPoly::zero(), JetPoly::zero()),
        ];
        assert_eq!(
            closure_check(&gens).unwrap_err(),
            Error::DependentGenerators { index: 1 }
        );
    }

    #[test]
    fn affine_algebra_has_rational_constants() {
        // [∂t, t∂t] = ∂t
        let gens = [
            fld(JetPoly::one(), JetPoly::zero(), JetPoly::zero()),
            fld(JetPoly::var(Var::T), JetPoly::zero(), JetPoly::zero()),
        ];
        let rep = closure_check(&gens).unwrap();
        assert!(rep.closed);
        assert_eq!(rep.constant(0, 1, 0).unwrap(), &JetPoly::one());
        assert!(rep.constant(0, 1, 1).unwrap().is_zero());
    }

    #[test]
    fn non_closure_returns_witness() {
        // [∂t, t²∂t] = 2t∂t which is outside span{∂t, t²∂t}.
        let gens = [
            fld(JetPoly::one(), JetPoly::zero(), JetPoly::zero()),
            fld(JetPoly::var(Var::T).pow(2), JetPoly::zero(), JetPoly::zero()),
        ];
        let rep = closure_check(&gens).unwrap();
        assert!(!rep.closed);
        let w = rep.witness.unwrap();
        assert_eq!((w.i, w.j), (0, 1));
        assert_eq!(
            w.bracket.t_coeff(),
            &JetPoly::var(Var::T).scaled(&rat(2, 1))
        );
    }
}

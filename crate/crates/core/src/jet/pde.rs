//! PDEs in solved jet form and the infinitesimal invariance criterion.
//!
//! A [`PdeForm`] fixes a leading jet coordinate `u_L` that the equation
//! `Δ = 0` solves for: `Δ = c·(u_L − rhs)` with `c` a nonzero rational.
//! On solutions every total derivative of `u_L` is likewise determined, so
//! `pr v[Δ]` can be reduced modulo the equation; the generator `v` is a
//! symmetry exactly when the reduction is the zero polynomial.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;

use num_traits::Zero;

use crate::error::{Error, Result};
use super::poly::{Dir, JetPoly, Var};
use super::vector::PointVectorField;

/// A PDE `Δ = 0` together with its solved form `u_L = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdeForm {
    delta: JetPoly,
    leading: (u8, u8),
    solved_rhs: JetPoly,
}

fn var_name(a: u8, b: u8) -> String {
    format!("{}", Var::u(a, b))
}

impl PdeForm {
    /// Solves `delta = 0` for the jet coordinate `leading`, which must
    /// appear linearly with a nonzero constant coefficient (maximal rank).
    pub fn new(delta: JetPoly, leading: (u8, u8)) -> Result<Self> {
        let (a, b) = leading;
        let lead_var = Var::u(a, b);
        let coeff = delta.partial(lead_var);
        let c = match coeff.as_constant() {
            Some(c) if !c.is_zero() => c,
            Some(_) => {
                return Err(Error::NotSolvableForLeading {
                    leading: var_name(a, b),
                    reason: "the leading derivative does not appear in the equation",
                })
            }
            None => {
                return Err(Error::NotSolvableForLeading {
                    leading: var_name(a, b),
                    reason: "the leading derivative has a non-constant coefficient",
                })
            }
        };
        // rhs = u_L − Δ/c; linearity makes this exact.
        let solved_rhs = &JetPoly::var(lead_var) - &delta.scaled(&c.recip());
        if solved_rhs.contains_var(lead_var) {
            return Err(Error::NotSolvableForLeading {
                leading: var_name(a, b),
                reason: "the equation is nonlinear in the leading derivative",
            });
        }
        Ok(Self {
            delta,
            leading,
            solved_rhs,
        })
    }

    /// Chooses the leading coordinate automatically: among jet variables
    /// with at least one time derivative that appear linearly with a
    /// constant coefficient, the maximal one by (total order, t-order,
    /// x-order).
    pub fn from_delta(delta: JetPoly) -> Result<Self> {
        let mut best: Option<(u8, u8)> = None;
        for (a, b) in delta.jet_vars() {
            if a == 0 {
                continue;
            }
            let coeff = delta.partial(Var::u(a, b));
            match coeff.as_constant() {
                Some(c) if !c.is_zero() => {}
                _ => continue,
            }
            let better = match best {
                None => true,
                Some((pa, pb)) => {
                    let key = (a as u32 + b as u32, a, b);
                    let prev = (pa as u32 + pb as u32, pa, pb);
                    key > prev
                }
            };
            if better {
                best = Some((a, b));
            }
        }
        match best {
            Some(leading) => Self::new(delta, leading),
            None => Err(Error::NoLeadingCandidate),
        }
    }

    pub fn delta(&self) -> &JetPoly {
        &self.delta
    }

    pub fn leading(&self) -> (u8, u8) {
        self.leading
    }

    pub fn solved_rhs(&self) -> &JetPoly {
        &self.solved_rhs
    }

    /// Jet order of the equation.
    pub fn order(&self) -> u32 {
        self.delta.max_jet_order()
    }

    /// Eliminates the leading coordinate and all its total derivatives
    /// from `p` using the solved form, recursively.
    pub fn reduce(&self, p: &JetPoly) -> Result<JetPoly> {
        let mut reducer = Reducer {
            pde: self,
            memo: BTreeMap::new(),
            in_progress: BTreeSet::new(),
        };
        reducer.reduce(p.clone())
    }

    /// Evaluates the invariance criterion `pr v[Δ] = 0 on solutions`.
    pub fn invariance_check(&self, v: &PointVectorField) -> Result<InvarianceReport> {
        let applied = v.prolong(self.order()).apply(&self.delta);
        let remainder = self.reduce(&applied)?;
        Ok(InvarianceReport {
            holds: remainder.is_zero(),
            remainder,
            applied,
        })
    }
}

/// Result of [`PdeForm::invariance_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceReport {
    /// True when the reduced remainder is the exact zero polynomial.
    pub holds: bool,
    /// `pr v[Δ]` after elimination of the equation and its consequences.
    pub remainder: JetPoly,
    /// `pr v[Δ]` before reduction.
    pub applied: JetPoly,
}

struct Reducer<'a> {
    pde: &'a PdeForm,
    memo: BTreeMap<(u8, u8), JetPoly>,
    in_progress: BTreeSet<(u8, u8)>,
}

impl Reducer<'_> {
    fn reducible(&self, a: u8, b: u8) -> bool {
        let (la, lb) = self.pde.leading;
        a >= la && b >= lb
    }

    /// Fully reduced expression for the jet coordinate `key` on solutions:
    /// the appropriate total derivative of the solved right-hand side.
    fn replacement(&mut self, key: (u8, u8)) -> Result<JetPoly> {
        if let Some(r) = self.memo.get(&key) {
            return Ok(r.clone());
        }
        if !self.in_progress.insert(key) {
            // A genuine cycle in the substitution graph; the solved form
            // cannot eliminate its own leading coordinate this way.
            return Err(Error::NotSolvableForLeading {
                leading: var_name(key.0, key.1),
                reason: "elimination of the leading derivative does not terminate",
            });
        }
        let (la, lb) = self.pde.leading;
        let raw = if key == (la, lb) {
            self.pde.solved_rhs.clone()
        } else if key.1 > lb {
            self.replacement((key.0, key.1 - 1))?
                .total_derivative(Dir::X)
        } else {
            self.replacement((key.0 - 1, key.1))?
                .total_derivative(Dir::T)
        };
        let reduced = self.reduce(raw)?;
        self.in_progress.remove(&key);
        self.memo.insert(key, reduced.clone());
        Ok(reduced)
    }

    fn reduce(&mut self, mut p: JetPoly) -> Result<JetPoly> {
        loop {
            // Substitute the highest-order reducible coordinate first; each
            // replacement is fully reduced, so the set of reducible
            // coordinates present strictly shrinks.
            let next = p
                .jet_vars()
                .into_iter()
                .filter(|&(a, b)| self.reducible(a, b))
                .max_by_key(|&(a, b)| (a as u32 + b as u32, a, b));
            let Some((a, b)) = next else {
                return Ok(p);
            };
            let rep = self.replacement((a, b))?;
            p = p.substitute_var(Var::u(a, b), &rep);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::poly::rat;

    fn u(t: u8, x: u8) -> JetPoly {
        JetPoly::var(Var::u(t, x))
    }

    /// Hopf in the unit-coefficient form `u_t + u·u_x = 0`.
    fn hopf_unit() -> PdeForm {
        PdeForm::from_delta(&u(1, 0) + &(&u(0, 0) * &u(0, 1))).unwrap()
    }

    /// KdV `u_t + 3u·u_x + ε·u_xxx = 0`.
    fn kdv() -> PdeForm {
        let delta = &(&u(1, 0) + &(&JetPoly::int(3) * &(&u(0, 0) * &u(0, 1))))
            + &(&JetPoly::var(Var::Eps) * &u(0, 3));
        PdeForm::from_delta(delta).unwrap()
    }

    #[test]
    fn auto_leading_picks_u_t_for_first_order_time() {
        assert_eq!(hopf_unit().leading(), (1, 0));
        assert_eq!(kdv().leading(), (1, 0));
    }

    #[test]
    fn solved_rhs_matches_hand_rearrangement() {
        let pde = hopf_unit();
        assert_eq!(pde.solved_rhs(), &(-&(&u(0, 0) * &u(0, 1))));
    }

    #[test]
    fn reduce_eliminates_derived_consequences() {
        // D_x of the Hopf equation: u_tx = −u_x² − u·u_xx on solutions.
        let pde = hopf_unit();
        let got = pde.reduce(&u(1, 1)).unwrap();
        let expect = &(-&u(0, 1).pow(2)) - &(&u(0, 0) * &u(0, 2));
        assert_eq!(got, expect);
    }

    #[test]
    fn space_translation_is_a_hopf_symmetry() {
        let v = PointVectorField::new(JetPoly::zero(), JetPoly::one(), JetPoly::zero()).unwrap();
        let rep = hopf_unit().invariance_check(&v).unwrap();
        assert!(rep.holds);
        assert!(rep.remainder.is_zero());
    }

    #[test]
    fn u_shift_fails_kdv_with_3ux_remainder() {
        let v = PointVectorField::new(JetPoly::zero(), JetPoly::zero(), JetPoly::one()).unwrap();
        let rep = kdv().invariance_check(&v).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.remainder, &JetPoly::int(3) * &u(0, 1));
    }

    #[test]
    fn kdv_scaling_applies_to_minus_five_delta() {
        // v₄ = x∂x + 3t∂t − 2u∂u: pr v₄[Δ] = −5Δ before reduction.
        let v = PointVectorField::new(
            &JetPoly::int(3) * &JetPoly::var(Var::T),
            JetPoly::var(Var::X),
            &JetPoly::int(-2) * &u(0, 0),
        )
        .unwrap();
        let pde = kdv();
        let rep = pde.invariance_check(&v).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.applied, pde.delta().scaled(&rat(-5, 1)));
    }

    #[test]
    fn rejects_nonlinear_leading() {
        let delta = &u(1, 0).pow(2) - &u(0, 1);
        let err = PdeForm::new(delta, (1, 0)).unwrap_err();
        assert!(matches!(err, Error::NotSolvableForLeading { .. }));
    }

    #[test]
    fn no_candidate_without_time_derivatives() {
        let delta = &u(0, 2) + &u(0, 0);
        assert!(matches!(
            PdeForm::from_delta(delta),
            Err(Error::NoLeadingCandidate)
        ));
    }
}

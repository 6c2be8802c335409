//! The equation/generator catalog for the symmetry analysis.
//!
//! Equations are the geodesic rows in jet form; generators are the spanning
//! vector fields of each point-symmetry algebra with the closure choices
//! `F₁(t) = t`, `F₂(t) = 1` for the Hunter–Saxton family. Conventions:
//!
//! * The dispersive equations carry a symbolic `eps`, so every check holds
//!   for all values of the dispersion coefficient at once. The dispersive
//!   scaling generators are then `eps`-dependent: `−t∂t + (3eps/2)t∂x +
//!   (u + eps/2)∂u` for dispersive CH and `−t∂t + (u − eps)∂u` for
//!   dispersive HS (the sign pairs with the `−eps·u_xxx` term in the row).
//! * The KdV Galilean boost is `3t∂x + ∂u`: with the `3u·u_x` advection
//!   normalization the boosted frame moves at three times the velocity
//!   offset. (The unit-advection form `u_t + u·u_x + u_xxx` would have the
//!   familiar `t∂x + ∂u`.)
//! * Hopf appears in two jet forms — the geodesic row `u_t + 3u·u_x` and
//!   the unit form `u_t + u·u_x` — treated as distinct equations; only its
//!   translation symmetries are cataloged, and it is excluded from the
//!   18-pair invariance suite, whose counts are CH 3, HS 4, KdV 4,
//!   dispersive CH 3, dispersive HS 4.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{vec};

use crate::error::{Error, Result};
use super::pde::PdeForm;
use super::poly::{JetPoly, Monomial, Var, rat};
use super::vector::PointVectorField;

fn u(t: u8, x: u8) -> JetPoly {
    JetPoly::var(Var::u(t, x))
}

fn tvar() -> JetPoly {
    JetPoly::var(Var::T)
}

fn xvar() -> JetPoly {
    JetPoly::var(Var::X)
}

fn eps() -> JetPoly {
    JetPoly::var(Var::Eps)
}

fn fld(t: JetPoly, x: JetPoly, uu: JetPoly) -> PointVectorField {
    PointVectorField::new(t, x, uu).expect("catalog coefficients are point functions")
}

/// Canonical equation names, in catalog order.
pub const EQUATION_NAMES: [&str; 6] = [
    "hopf",
    "camassa-holm",
    "hunter-saxton",
    "kdv",
    "dispersive-ch",
    "dispersive-hs",
];

/// Resolves user-facing aliases to the canonical equation name.
pub fn canonical_name(name: &str) -> Option<&'static str> {
    match name {
        "hopf" | "burgers" => Some("hopf"),
        "hopf-unit" => Some("hopf-unit"),
        "camassa-holm" | "ch" => Some("camassa-holm"),
        "hunter-saxton" | "hs" => Some("hunter-saxton"),
        "kdv" | "korteweg-de-vries" => Some("kdv"),
        "dispersive-ch" | "dch" => Some("dispersive-ch"),
        "dispersive-hs" | "dhs" => Some("dispersive-hs"),
        _ => None,
    }
}

/// The jet form of a cataloged equation.
///
/// `hopf` is the geodesic row `u_t + 3u·u_x = 0`; `hopf-unit` is the
/// unit-advection form `u_t + u·u_x = 0`.
pub fn equation(name: &str) -> Result<PdeForm> {
    let canonical = canonical_name(name)
        .ok_or_else(|| Error::UnknownEquation(String::from(name)))?;
    let delta = match canonical {
        "hopf" => &u(1, 0) + &(&u(0, 0) * &u(0, 1)).scaled(&rat(3, 1)),
        "hopf-unit" => &u(1, 0) + &(&u(0, 0) * &u(0, 1)),
        "camassa-holm" => ch_delta(),
        "hunter-saxton" => hs_delta(),
        "kdv" => &(&u(1, 0) + &(&u(0, 0) * &u(0, 1)).scaled(&rat(3, 1))) + &(&eps() * &u(0, 3)),
        "dispersive-ch" => &ch_delta() + &(&eps() * &u(0, 3)),
        "dispersive-hs" => &hs_delta() - &(&eps() * &u(0, 3)),
        _ => unreachable!("canonical_name returns catalog names"),
    };
    PdeForm::from_delta(delta)
}

/// `u_t − u_txx + 3u·u_x − 2u_x·u_xx − u·u_xxx`.
fn ch_delta() -> JetPoly {
    let mut d = &u(1, 0) - &u(1, 2);
    d = &d + &(&u(0, 0) * &u(0, 1)).scaled(&rat(3, 1));
    d = &d - &(&u(0, 1) * &u(0, 2)).scaled(&rat(2, 1));
    &d - &(&u(0, 0) * &u(0, 3))
}

/// `u_txx + 2u_x·u_xx + u·u_xxx`.
fn hs_delta() -> JetPoly {
    let mut d = &u(1, 2) + &(&u(0, 1) * &u(0, 2)).scaled(&rat(2, 1));
    d = &d + &(&u(0, 0) * &u(0, 3));
    d
}

/// A cataloged symmetry generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorInfo {
    /// Label within the equation's block: "v1", "v2", …
    pub label: &'static str,
    /// Human classification: scaling, translation, boost.
    pub classification: &'static str,
    pub field: PointVectorField,
    /// Whether the one-parameter group preserves a fixed periodic x-grid.
    pub grid_compatible: bool,
}

fn gen(
    label: &'static str,
    classification: &'static str,
    field: PointVectorField,
    grid_compatible: bool,
) -> GeneratorInfo {
    GeneratorInfo {
        label,
        classification,
        field,
        grid_compatible,
    }
}

/// The spanning generators for an equation's symmetry algebra
/// (`F₁(t) = t`, `F₂(t) = 1` for the Hunter–Saxton family). For `hopf`
/// only the translation subalgebra is cataloged; its full symmetry
/// coefficients are implicit and nonlinear, so it is excluded from the
/// invariance suite.
pub fn generators(name: &str) -> Result<Vec<GeneratorInfo>> {
    let canonical = canonical_name(name)
        .ok_or_else(|| Error::UnknownEquation(String::from(name)))?;
    let d_t = fld(JetPoly::one(), JetPoly::zero(), JetPoly::zero());
    let d_x = fld(JetPoly::zero(), JetPoly::one(), JetPoly::zero());
    let scaling_tu = fld(-&tvar(), JetPoly::zero(), u(0, 0));
    Ok(match canonical {
        "hopf" | "hopf-unit" => vec![
            gen("v1", "time translation", d_t, true),
            gen("v2", "space translation", d_x, true),
        ],
        "camassa-holm" => vec![
            gen("v1", "scaling", scaling_tu, true),
            gen("v2", "time translation", d_t, true),
            gen("v3", "space translation", d_x, true),
        ],
        "hunter-saxton" => vec![
            gen("v1", "scaling", scaling_tu, true),
            gen("v2", "time translation", d_t, true),
            // F₁(t) = t: t∂t + x∂x rescales x, so it cannot act on a
            // fixed circle.
            gen("v3", "scaling", fld(tvar(), xvar(), JetPoly::zero()), false),
            // F₂(t) = 1: the generalised Galilean boost reduces to ∂x.
            gen("v4", "generalised Galilean boost", d_x, true),
        ],
        "kdv" => vec![
            gen("v1", "space translation", d_x, true),
            gen("v2", "time translation", d_t, true),
            gen(
                "v3",
                "Galilean boost",
                fld(JetPoly::zero(), tvar().scaled(&rat(3, 1)), JetPoly::one()),
                true,
            ),
            gen(
                "v4",
                "scaling",
                fld(tvar().scaled(&rat(3, 1)), xvar(), u(0, 0).scaled(&rat(-2, 1))),
                false,
            ),
        ],
        "dispersive-ch" => vec![
            gen(
                "v1",
                "scaling",
                fld(
                    -&tvar(),
                    (&eps() * &tvar()).scaled(&rat(3, 2)),
                    &u(0, 0) + &eps().scaled(&rat(1, 2)),
                ),
                true,
            ),
            gen("v2", "time translation", d_t, true),
            gen("v3", "space translation", d_x, true),
        ],
        "dispersive-hs" => vec![
            gen(
                "v1",
                "scaling",
                fld(-&tvar(), JetPoly::zero(), &u(0, 0) - &eps()),
                true,
            ),
            gen("v2", "time translation", d_t, true),
            gen("v3", "scaling", fld(tvar(), xvar(), JetPoly::zero()), false),
            gen("v4", "generalised Galilean boost", d_x, true),
        ],
        _ => unreachable!("canonical_name returns catalog names"),
    })
}

/// Looks up one generator of an equation by its label.
pub fn generator(equation_name: &str, label: &str) -> Result<GeneratorInfo> {
    let gens = generators(equation_name)?;
    gens.into_iter()
        .find(|g| g.label == label)
        .ok_or_else(|| Error::UnknownGenerator {
            equation: String::from(equation_name),
            generator: String::from(label),
        })
}

/// The 18 (equation, generator) pairs of the invariance suite:
/// CH 3 + HS 4 + KdV 4 + dispersive CH 3 + dispersive HS 4.
pub fn invariance_pairs() -> Vec<(&'static str, GeneratorInfo)> {
    let mut out = Vec::new();
    for name in [
        "camassa-holm",
        "hunter-saxton",
        "kdv",
        "dispersive-ch",
        "dispersive-hs",
    ] {
        for g in generators(name).expect("catalog names are valid") {
            out.push((name, g));
        }
    }
    out
}

/// The Hunter–Saxton generator family for arbitrary time polynomials
/// `F₁`, `F₂` (Table-style coefficients `v₃ = F₁∂t + x·F₁'∂x + x·F₁''∂u`,
/// `v₄ = F₂∂x + F₂'∂u`). With `dispersive` the scaling generator picks up
/// the `−eps∂u` shift. `F₁ = t`, `F₂ = 1` reproduces the catalog set.
pub fn hs_family(f1: &JetPoly, f2: &JetPoly, dispersive: bool) -> Result<[PointVectorField; 4]> {
    for f in [f1, f2] {
        for var in [Var::X, Var::u(0, 0)] {
            if f.contains_var(var) {
                return Err(Error::NotAPointField {
                    found: format!("{var} in a time-only family function"),
                });
            }
        }
    }
    let f1p = f1.partial(Var::T);
    let f1pp = f1p.partial(Var::T);
    let f2p = f2.partial(Var::T);
    let u_shift = if dispersive {
        &u(0, 0) - &eps()
    } else {
        u(0, 0)
    };
    Ok([
        PointVectorField::new(-&tvar(), JetPoly::zero(), u_shift)?,
        PointVectorField::new(JetPoly::one(), JetPoly::zero(), JetPoly::zero())?,
        PointVectorField::new(f1.clone(), &xvar() * &f1p, &xvar() * &f1pp)?,
        PointVectorField::new(JetPoly::zero(), f2.clone(), f2p)?,
    ])
}

/// A deliberately corrupted generator for mutation testing.
#[derive(Debug, Clone)]
pub struct MutationCase {
    pub equation: &'static str,
    pub generator: &'static str,
    /// What was corrupted, for reports.
    pub description: String,
    pub field: PointVectorField,
}

const SLOT_NAMES: [&str; 3] = ["d_t", "d_x", "d_u"];

/// Builds the corrupted-generator corpus over all 18 invariance pairs.
///
/// Two corruption families per generator monomial:
/// * sign flips of one coefficient — skipped for single-monomial
///   generators, where the flip merely negates the field and stays a
///   symmetry;
/// * spurious time dependence — one monomial is multiplied by `t`, which
///   breaks every cataloged generator including the translations.
///
/// Every produced case must fail the invariance check (asserted by the
/// acceptance suite); the corpus has 20 sign flips + 30 t-corruptions.
pub fn mutation_suite() -> Vec<MutationCase> {
    let mut out = Vec::new();
    for (eq, info) in invariance_pairs() {
        let comps = info.field.components();
        let monomial_count: usize = comps.iter().map(|p| p.num_terms()).sum();
        // Deterministic monomial enumeration: slot order, then the
        // polynomial's canonical term order.
        for (slot, comp) in comps.iter().enumerate() {
            let terms: Vec<(Monomial, num_rational::BigRational)> = comp
                .terms()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            for (mono, coeff) in terms {
                let term_str = format!("{}", JetPoly::term(mono.clone(), coeff.clone()));
                if monomial_count >= 2 {
                    // Flip: subtract twice the term from this component.
                    let mut parts = [
                        comps[0].clone(),
                        comps[1].clone(),
                        comps[2].clone(),
                    ];
                    parts[slot] = &parts[slot]
                        - &JetPoly::term(mono.clone(), &coeff * &rat(2, 1));
                    out.push(MutationCase {
                        equation: eq,
                        generator: info.label,
                        description: format!(
                            "flip sign of {} in the {} component",
                            term_str, SLOT_NAMES[slot]
                        ),
                        field: PointVectorField::from_components(parts)
                            .expect("mutation preserves point fields"),
                    });
                }
                // t-corruption: replace the term by t times itself.
                let mut parts = [comps[0].clone(), comps[1].clone(), comps[2].clone()];
                let t_mono = mono.mul(&Monomial::unit(Var::T, 1));
                parts[slot] = &(&parts[slot] - &JetPoly::term(mono.clone(), coeff.clone()))
                    + &JetPoly::term(t_mono, coeff.clone());
                out.push(MutationCase {
                    equation: eq,
                    generator: info.label,
                    description: format!(
                        "multiply {} by t in the {} component",
                        term_str, SLOT_NAMES[slot]
                    ),
                    field: PointVectorField::from_components(parts)
                        .expect("mutation preserves point fields"),
                });
            }
        }
    }
    out
}

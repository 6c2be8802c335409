//! Exact-arithmetic jet-space calculus for Lie point symmetries.
//!
//! The layer stack: sparse rational polynomials over jet coordinates
//! ([`poly`]), point vector fields and their prolongations ([`vector`]),
//! PDEs in solved form with the invariance criterion ([`pde`]),
//! commutator-closure with exact structure constants ([`closure`]), a
//! plain-text surface syntax ([`parse`]), and the concrete
//! equation/generator catalog ([`catalog`]).

pub mod catalog;
pub mod closure;
pub mod parse;
pub mod pde;
pub mod poly;
pub mod vector;

pub use catalog::{
    canonical_name, equation, generator, generators, hs_family, invariance_pairs, mutation_suite,
    GeneratorInfo, MutationCase, EQUATION_NAMES,
};
pub use closure::{closure_check, BracketExpansion, ClosureReport, ClosureWitness};
pub use parse::{parse_pde, parse_poly, parse_vector_field};
pub use pde::{InvarianceReport, PdeForm};
pub use poly::{rat, Dir, JetPoly, Monomial, Var};
pub use vector::{jacobi_residual, PointVectorField, Prolongation};

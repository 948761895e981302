//! Exact-arithmetic engine for the equivariant genus-0 Gromov-Witten theory
//! of the orbifold [C^3/Z_3].
//!
//! The pipeline: three-point seeds, a level-by-level induction that solves
//! Z3-Hodge integrals on the admissible-cover spaces A(3k+3,0), A(3k+1,1) and
//! A(3k-1,2) from localization relations (packaged as PDEs on generating
//! functions, cross-checked against transcribed recursions and table-driven
//! fixed-locus sums), translation of those integrals into invariants with at
//! most two omega-bar insertions, and the associativity (WDVV) recursion that
//! propagates to every remaining insertion pattern. Everything is exact
//! rational arithmetic; no floating point anywhere.

pub mod affine;
pub mod assembler;
pub mod cache;
pub mod egf;
pub mod engine;
pub mod geometry;
pub mod golden;
pub mod hodge;
pub mod invariants;
pub mod lfun;
pub mod locus;
pub mod mpoly;
pub mod pde;
pub mod rat;
pub mod solver;
pub mod sympoly;
pub mod transcribed;

pub use affine::{affine_solve, AffineExpr, ArithError, SolveError, UnknownId};
pub use engine::{Engine, EngineError, VerifyReport};
pub use hodge::{canonicalize, Canon, Flavor, HodgeKey, HodgeStore, HodgeVal};
pub use invariants::{InvKey, InvariantStore};
pub use mpoly::{MPoly, Var};
pub use rat::Rat;
pub use sympoly::SymPoly3;

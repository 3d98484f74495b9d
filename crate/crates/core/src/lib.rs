//! Polynomial and Dirichlet functors over finite sets.
//!
//! `Poly` and `Dir` are stored as sorted multisets, morphisms as explicit
//! finite data, and every hom-set can be enumerated. The [`bundle`] module
//! relates both categories to functions between finite sets, [`topos`]
//! computes limits, exponentials and the subobject classifier for bundles,
//! and [`laws`] checks the theory exhaustively on small instances.

pub mod bundle;
pub mod dir;
pub mod error;
pub mod expr;
pub mod finset;
pub mod laws;
pub mod poly;
pub mod sum;
pub mod topos;

pub use bundle::{AnyMorphism, BunMorphism, Bundle, ContMorphism};
pub use dir::{Dir, DirMorphism};
pub use error::{Error, Result};
pub use expr::{parse, parse_dir, parse_poly, print_dir, print_poly, Expr, Kind};
pub use finset::{Budget, FinFunction, FinSet, DEFAULT_BUDGET};
pub use poly::{Poly, PolyMorphism};
pub use sum::Evaluation;
pub use topos::{Omega, SubobjectWitness};

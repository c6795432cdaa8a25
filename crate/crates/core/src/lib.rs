//! Partial group actions, partial smash products, partial group cohomology and
//! Hochschild cohomology over exact fields.

pub mod algebra;
pub mod budget;
pub mod field;
pub mod group;
pub mod hochss;
pub mod kpar;
pub mod linalg;
pub mod parcoh;
pub mod partial;
pub mod random;
pub mod report;

pub use algebra::{AlgModule, Algebra, Bimodule, Semilattice};
pub use budget::Budget;
pub use field::{Field, FieldKind, PrimeField, Rational, Rationals};
pub use group::{FiniteGroup, GroupKind};
pub use kpar::Kpar;
pub use linalg::{EchelonBasis, Matrix, Subspace, Vector};
pub use partial::{PartialAction, SmashAlgebra, ValidationMode};
pub use report::{Check, Status};

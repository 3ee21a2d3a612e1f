//! Exact computations with quadratic Lie superalgebras over the rationals:
//! structure constants and axioms, invariant forms, g*-valued and scalar
//! cochains, T*-extensions, and the decomposition of nilpotent quadratic
//! Lie superalgebras through maximal isotropic ideals.

pub mod algebra;
pub mod cochains;
pub mod dsl;
pub mod error;
pub mod forms;
pub mod gallery;
pub mod linalg;
pub mod parity;
pub mod random;
pub mod structure;
pub mod subspace;
pub mod tstar;

pub use algebra::{DualVector, LieSuperalgebra};
pub use error::{Error, Result};
pub use forms::{EvenForm, QuadraticLieSuperalgebra};
pub use linalg::{Matrix, Scalar};
pub use parity::{GradedBasis, Parity};
pub use subspace::Subspace;

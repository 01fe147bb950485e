//! Exact computations with graded Artinian algebras.

pub mod algebra;
pub mod cli;
pub mod coinvariants;
pub mod deformation;
pub mod error;
pub mod extension;
pub mod field;
pub mod format;
pub mod fuzz;
pub mod jordan;
pub mod matrix;
pub mod parse;
pub mod partition;
pub mod poly;

pub use error::{Error, Result};
pub use field::{Field, FieldKind, Scalar};
pub use matrix::{ExactMatrix, RowEchelon, RowSpace};
pub use poly::{DividedPolynomial, Monomial, Polynomial, VariableTable};
pub use algebra::{build_algebra, AlgebraSpec, Element, GradedAlgebra, Presentation};
pub use partition::{dominance_compare, Dominance, Partition};

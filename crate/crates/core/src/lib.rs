//! Exact computations with representations of finite-dimensional quiver
//! algebras `Λ = kQ/I` over a finite-dimensional ground algebra `R`.
//!
//! A representation `X` assigns a left `R`-module to each vertex and an
//! `R`-linear map to each arrow, subject to the relations of `Λ`. The crate
//! provides the derived top and socle functors `L_i C_q` and `R^i K_q`, the
//! class `ℰ` of `Λ`-projective representations, diagnostics for lifted
//! cotorsion pairs, and the tower construction producing the defining
//! sequences used to establish completeness.

pub mod algebra;
pub mod cotorsion;
pub mod exactla;
pub mod exec;
pub mod field;
pub mod fixtures;
pub mod homalg;
pub mod io;
pub mod modcat;
pub mod suites;
pub mod tower;

pub use algebra::{Algebra, AlgebraError, GroundAlgebra, QuiverPresentation};
pub use exactla::{LinAlgError, Matrix};
pub use field::{FieldSpec, Scalar};

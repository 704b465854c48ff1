//! Triangulation quivers, weighted surface algebras and their homological
//! checks over exact fields.

pub mod algebra;
pub mod analysis;
pub mod error;
pub mod field;
pub mod homological;
pub mod instances;
pub mod linalg;
pub mod presentation;
pub mod quiver;
pub mod surface;

pub use algebra::{build_algebra, BuildOptions, FiniteDimAlgebra};
pub use error::{AlgebraError, Error, FieldError, ModuleError, PresentationError, QuiverError, SurfaceError};
pub use field::{Field, FieldDescriptor, PrimeField, Rationals, Scalar};
pub use presentation::{Path, PathExpr, Presentation, WeightData};
pub use quiver::{ArrowIdx, ArrowPermutation, Quiver, TriangulationQuiver, VertexIdx};

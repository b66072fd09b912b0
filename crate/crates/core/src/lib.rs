//! Exact computations in the representation ring of a reductive group and on
//! equivariant coherent objects over its nilpotent cone.
//!
//! The linear algebra and polynomial layers are generic over the scalar type;
//! the aliases below fix the exact instantiations used throughout.

pub mod cohcat;
pub mod error;
pub mod laurent;
pub mod linalg;
pub mod modular;
pub mod nilpotent;
pub mod qanalog;
pub mod repring;
pub mod rootdata;
pub mod scalar;
pub mod sl2;

pub use cohcat::{FreeObject, HomElement, HomProfile, OrlovCategory};
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use linalg::Matrix;
pub use nilpotent::{MatrixRep, QRep};
pub use qanalog::QAnalogs;
pub use repring::{CharacterElement, DecompositionList, RepRing};
pub use rootdata::{LatticeKind, Root, RootDatum, Weight, WeylElement, PRESETS};
pub use scalar::{Field, Scalar};
pub use sl2::{FlagTable, PerverseClass};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
/// Laurent polynomial in `q` with big-integer coefficients.
pub type QPolynomial = LaurentPoly<num_bigint::BigInt>;
/// Exact rational matrix.
pub type QMatrix = Matrix<Rational>;

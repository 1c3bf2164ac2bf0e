//! Exact jet calculus for time-dependent polynomial vector fields.

pub mod admissibility;
pub mod error;
pub mod field;
pub mod foliation;
pub mod gen;
pub mod io;
pub mod geometry;
pub mod jet;
pub mod lifting;
pub mod linsolve;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod suite;
pub mod symplectic;

pub use error::{Error, Result};
pub use field::{TimeDepVectorField, VectorField};
pub use geometry::{Ideal, MembershipCertificate, ObstructionSpec, Setup, SheafSpec, SubspaceY};
pub use jet::{JetSection, TangentFieldOnY};
pub use poly::{Monomial, Poly, Vars};
pub use scalar::Scalar;
pub use symplectic::DarbouxSpace;

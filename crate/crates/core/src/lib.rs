//! Complete systems of primitive orthogonal idempotents for monoid algebras
//! of finite R-trivial (and, dually, L-trivial) monoids.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod generator;
pub mod idempotents;
pub mod io;
pub mod loops;
pub mod monoid;
pub mod realization;
pub mod ring;

pub use algebra::AlgebraElement;
pub use error::{Error, Result};
pub use idempotents::{
    compute_cspoi, compute_cspoi_z, verify, verify_cspoi, IdempotentSystem, Orientation,
    VerificationReport,
};
pub use loops::LoopTypePartition;
pub use monoid::{FiniteMonoid, GeneratingSet};
pub use ring::{BuiltinRing, CoefficientRing, Integers};

//! Exact secondary fans, wall-crossings and projective linkability for
//! vector configurations with entries in `Q` or a real quadratic field.

pub mod error;
pub mod index_set;
pub mod instances;
pub mod io;
pub mod cli;
pub mod cone;
pub mod fan;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod projective;
pub mod scalar;
pub mod secondary;
pub mod svg;

pub use error::{Error, Result};
pub use index_set::IndexSet;
pub use linalg::{Calibration, Matrix, Vector};
pub use scalar::Scalar;

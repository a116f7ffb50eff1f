//! Exact computation of the restricted-root decomposition of so(p,q) and the
//! weight decomposition of its complement in sl(p+q).

pub mod basis;
#[cfg(feature = "cli")]
pub mod cli;
pub mod eigen;
pub mod error;
pub mod irreducibility;
pub mod linalg;
pub mod matrix;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod so_pq;
pub mod weights;

pub use basis::{BlockIndex, Signature};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::ExactScalar;

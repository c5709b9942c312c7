//! Bi-gyrogroup structures over pseudo-orthogonal groups.
//!
//! The crate has three layers. A small dense-matrix kernel ([`mat`]) carries
//! the numerics. On top of it, [`bigyro`] implements the gyrogroup-like
//! addition of n x m parameter matrices together with its left and right
//! gyrations, and [`pseudo_orth`] realizes those parameters as bi-boosts
//! inside SO(m, n), with the unique rho-beta-lambda factorization.
//! Independently, [`finite`] runs the same algebra on finite groups given by
//! Cayley tables (decomposition search plus exhaustive law checking) and
//! [`clifford`] lifts SO(m, n) elements to spin representatives in a real
//! Clifford algebra. [`gyrocheck`] is a standalone gyrogroup certifier used
//! to cross-validate both the numeric and the finite constructions.
//!
//! Everything numeric is generic over [`scalar::Scalar`] (f32 or f64);
//! aliases below fix the common f64 instantiations.
//!
//! ```
//! use bigyro_core::bigyro::{bg_add, left_gyr, right_gyr, BgParams};
//! use bigyro_core::Mat64;
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let params = BgParams::new(2, 2, 1e-9)?;
//! let a = Mat64::from_rows(vec![vec![0.3, 0.1], vec![-0.2, 0.4]])?;
//! let b = Mat64::from_rows(vec![vec![0.5, -0.3], vec![0.2, 0.1]])?;
//! let sum = bg_add(&a, &b, &params)?;
//! let lgyr = left_gyr(&a, &b, &params)?;
//! let rgyr = right_gyr(&a, &b, &params)?;
//! # let _ = (sum, lgyr, rgyr);
//! # Ok(())
//! # }
//! ```

pub mod bigyro;
pub mod clifford;
pub mod finite;
pub mod gyrocheck;
pub mod mat;
pub mod pseudo_orth;
pub mod report;
pub mod scalar;

pub use bigyro::{BgError, BgParams, LeftGyr, RightGyr};
pub use clifford::{ClError, CliffordAlgebra, Multivector, SpinElem};
pub use finite::FinError;
pub use pseudo_orth::{BiBoost, Factorization, PsError, PseudoOrthElem};
pub use mat::{Mat, MatError, SymEigen};
pub use report::{ExactCheck, LawCheck};
pub use scalar::Scalar;

/// Default numeric tolerance used across operations and the CLI.
pub const DEFAULT_TOL: f64 = 1e-9;

pub type Mat32 = Mat<f32>;
pub type Mat64 = Mat<f64>;

//! Exact symbolic toolkit for quaternionic analysis on R^4: the
//! Cauchy-Fueter operator and its higher-spin relatives, the
//! multiplication-type operators L0/L1, the anti-self-dual-form bridge,
//! constructive solvers (Poisson, Cauchy-Fueter, ASD primitives, regular
//! conjugates, harmonic decompositions), and exact 3-sphere period
//! certificates.
//!
//! Everything symbolic is computed over Gaussian-rational coefficients in
//! the function ring `p(x)/r2^m` (denominators restricted to powers of
//! `r2 = |q|^2`), so identities hold exactly, with zero residuals, rather
//! than to a tolerance. Floating point appears only in the
//! finite-difference and quadrature cross-checks.

pub mod corpus;
pub mod error;
pub mod fd;
pub mod field;
pub mod forms;
pub mod json;
pub mod linalg;
pub mod periods;
pub mod poly;
pub mod quat;
pub mod scalar;
pub mod selftest;
pub mod solvers;
pub mod spinor;

pub use error::{Error, Result};
pub use field::SymField;
pub use forms::{ASDForm, DiffForm};
pub use periods::{ObstructionCertificate, PiSquaredValue};
pub use poly::{Mono, Poly4};
pub use quat::{CMat2, Quat};
pub use scalar::ExactComplex;
pub use solvers::{Certificate, DecompositionResult};
pub use spinor::{MixedSpinorField, SymSpinorField};

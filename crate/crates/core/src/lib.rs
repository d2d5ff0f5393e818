//! Exact chromatic symmetric functions of graphs.
//!
//! The crate has four layers:
//!
//! * [`symcore`]: compositions, partitions and symmetric functions in the
//!   elementary and power-sum bases, generic over a [`Scalar`] coefficient
//!   ring;
//! * [`graphkit`]: simple graphs and the path-, spider- and chain-conjoining
//!   constructions with the named families built from them;
//! * [`oracle`]: brute-force ground truth (edge-subset expansion, chromatic
//!   polynomial) and checkers for the deletion identities;
//! * [`formulas`]: closed-form `e_I`-expansions and reduction formulas.
//!
//! [`families`] ties graph constructions to formulas by name for the CLI and
//! the verification grids; [`suites`] runs the seeded identity checks.

pub mod error;
pub mod families;
pub mod formulas;
pub mod graphkit;
pub mod oracle;
pub mod suites;
pub mod symcore;

pub use error::{Error, Result};
pub use symcore::Scalar;

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer coefficients.
pub type Integer = num_bigint::BigInt;

/// Symmetric function in the elementary basis over the rationals.
pub type SymFuncE = symcore::SymFunc<symcore::Elementary, Rational>;
/// Symmetric function in the power-sum basis over the rationals.
pub type SymFuncP = symcore::SymFunc<symcore::PowerSum, Rational>;
/// Composition-indexed `e_I`-expansion over the rationals.
pub type EIExpansion = symcore::EIExpansion<Rational>;

/// Floating-point elementary-basis function, for exploration only.
pub type SymFuncE64 = symcore::SymFunc<symcore::Elementary, f64>;
pub type SymFuncE32 = symcore::SymFunc<symcore::Elementary, f32>;

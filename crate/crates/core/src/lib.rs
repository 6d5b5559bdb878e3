//! Farey recursive functions: trace polynomials of slope words, their
//! parity-reduced forms `T₀`, Riley polynomials of two-bridge links, and the
//! modular-group action that relates them.
//!
//! Everything is generic over the integer coefficient type; the aliases
//! below fix it to arbitrary precision.

pub mod fraction;
pub mod frf;
pub mod golden;
pub mod orbits;
pub mod poly;
pub mod reps;
pub mod roots;
pub mod verify;
pub mod words;

use num_bigint::BigInt;

pub use fraction::{decompose, enumerate, farey_sum, is_farey_pair, parents, FareyError, Fraction};
pub use frf::{Kind, FrfError};
pub use orbits::{check_factor_divides, orbit_sample, send_to_infinity, MobiusMap};
pub use poly::{Coefficient, PolyError, VarSet};
pub use reps::{trace_check, verify_prep};
pub use verify::{run_suite, Suite, SuiteReport, VerifyOptions};
pub use words::{omega, Word};

/// Polynomials over arbitrary-precision integers.
pub type IntPoly = poly::Poly<BigInt>;
/// Memoised invariants with arbitrary-precision coefficients.
pub type IntInvariants = frf::Invariants<BigInt>;
/// Double-precision complex `2 × 2` matrices.
pub type Matrix2 = reps::ComplexMatrix2<f64>;

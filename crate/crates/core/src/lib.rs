//! SLOCC classification of n-qubit pure states.
//!
//! For a chosen pair of qubits the state's amplitudes are reshaped into a
//! 4 × 2^(n-2) coefficient matrix `C`, from which a 4×4 matrix `S` is built.
//! Invertible local operators act on `S` by similarity up to the scalar
//! `k = Π det Ai`, so the multiplicity pattern of its characteristic
//! polynomial and its Jordan form (up to a common scale) are SLOCC
//! invariants. Mismatches prove two states inequivalent; matches prove
//! nothing.
//!
//! ```
//! use slocc::classify::{certify_inequivalence, ComparisonMode, Settings, Verdict};
//! use slocc::document::AnyState;
//! use slocc::fixtures::fixture_state;
//!
//! let ghz = AnyState::Exact(fixture_state("ghz", &[]).unwrap());
//! let w = AnyState::Exact(fixture_state("w", &[]).unwrap());
//! let cert = certify_inequivalence(&ghz, &w, ComparisonMode::Proportional, Settings::default()).unwrap();
//! assert_eq!(cert.verdict, Verdict::Inequivalent);
//! ```

pub mod classify;
pub mod document;
pub mod error;
pub mod fixtures;
pub mod matrix;
pub mod orbit;
pub mod parallel;
pub mod poly;
pub mod scalar;
pub mod smatrix;
pub mod spectral;
pub mod state;

pub use error::{Error, Result};
pub use scalar::{Exact, Scalar};
pub use state::PureState;

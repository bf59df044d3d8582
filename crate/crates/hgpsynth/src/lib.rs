//! Synthesis and verification of targeted logical Clifford gates on
//! hypergraph-product CSS codes.
//!
//! The pipeline goes: classical parity checks -> hypergraph-product code
//! ([`codes`]) -> logical Pauli bases from strongly-lower-triangular kernel
//! bases ([`logicals`]) -> binary symplectic matrix for a chosen logical gate
//! ([`symplectic`]) -> physical circuit over {H, S, CNOT, CZ, SWAP, X, Y, Z}
//! ([`synth`]) -> sign-tracked verification and a dense-unitary oracle for
//! tiny codes ([`verify`]).
//!
//! Every runnable example under `examples/` exercises one capability:
//!
//! ```text
//! cargo run --example build_code        # construct toric / HGP codes
//! cargo run --example logical_basis     # logical qubit labels and supports
//! cargo run --example synthesize        # the four targeted gate circuits
//! cargo run --example verify_roundtrip  # conjugation-based verification
//! cargo run --example decompose         # generic symplectic -> circuit
//! cargo run --example dense_oracle      # unitary-level check on a tiny code
//! cargo run --example pauli_fix         # destabilizer-driven sign repair
//! ```
//!
//! The `hgpsynth` binary exposes the same flow as subcommands
//! (`code`, `logicals`, `synth`, `verify`, `emit`, `toric-demo`).

pub mod cli;
pub mod codes;
pub mod gf2core;
pub mod logicals;
pub mod symplectic;
pub mod synth;
pub mod verify;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a basis: input vectors are linearly dependent")]
    NotABasis,
    #[error("not CSS: H_X * H_Z^T != 0")]
    NotCss,
    #[error("toric code requires L >= 2, got {0}")]
    ToricTooSmall(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("no logical qubits (k = 0)")]
    NoLogicalQubits,
    #[error("logical basis validation failed: {0}")]
    InvalidLogicalBasis(String),
    #[error("not symplectic")]
    NotSymplectic,
    #[error("not orthogonal: (w, x)_s = 1")]
    NotOrthogonal,
    #[error("basis change postcondition failed: a listed pair is not mapped as requested")]
    BasisChangeFailed,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("invalid destabilizers: {0}")]
    InvalidDestabilizers(String),
    #[error("unknown logical label {0}")]
    UnknownLabel(String),
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error("circuit does not fix the stabilizer generators up to sign")]
    NotStabilizerPreserving,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

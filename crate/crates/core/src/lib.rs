//! Quantum absorption refrigerator built from three two-level spins.
//!
//! Dense operators on up to four qubits, thermal states and their
//! thermodynamics, the three-spin self-contained refrigerator, a compiler
//! that lowers its exchange evolution to two-body gates, a repeated-cycle
//! engine and a heat-bath algorithmic cooling model.
//!
//! Basis ordering: qubit 1 is the most significant bit, so `|q1 q2 q3>` sits
//! at index `4 q1 + 2 q2 + q3`. Qubit indices in the API are 0-based.
//!
//! The crate is `no_std` with `alloc`.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bcs;
pub mod compiler;
pub mod cycle;
pub mod eigen;
pub mod error;
pub mod fridge;
pub mod operator;
pub mod pauli;
pub mod state;
pub mod thermo;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use operator::{embed, kron, kron_all, Operator, MAX_DIM, MAX_QUBITS, STRUCT_TOL};
pub use state::{dephase, evolve, kron_states, partial_trace, DensityMatrix, PSD_TOL};

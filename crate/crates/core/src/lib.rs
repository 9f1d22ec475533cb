//! Control-pulse synthesis and simulation for a qubit perceptron whose final
//! excitation probability is a sigmoid of its input potential.
//!
//! The crate designs a single control field `Ω(t)` for the Hamiltonian
//! `H = -(x σ_z + Ω σ_x)/2` either by inverse engineering of Bloch angles
//! ([`ie`]) or by fast quasi-adiabatic driving ([`faquad`]), evaluates the
//! resulting activation curves ([`evolve`]), runs deterministic parameter
//! sweeps ([`optimize`]), and applies the pulse as a gate on a register of
//! input qubits ([`network`]).

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod evolve;
pub mod exec;
pub mod faquad;
pub mod ie;
pub mod model;
pub mod network;
pub mod ode;
pub mod optimize;
pub mod pulse;
pub mod quad;

pub use error::{Error, Result};
pub use exec::Exec;
pub use model::QubitState;
pub use pulse::{Provenance, Pulse};

//! Coupled harmonic oscillators as a common language for entanglement,
//! Lorentz-squeezed bound states and the parton picture.
//!
//! * [`oscillator`]: the coupled Hamiltonian, normal modes and ground state.
//! * [`entanglement`]: Schmidt expansion, traced density matrix, purity,
//!   entropy and the effective temperature of the unobserved oscillator.
//! * [`covariant`]: boosts as light-cone squeezes and the boosted
//!   space-time and momentum-energy wave functions.
//! * [`parton`]: longitudinal marginals, widths and Gaussian parton
//!   distribution export.
//! * [`numerics`]: eigenfunctions, quadrature and the brute-force oracles
//!   the closed forms are checked against.
//! * [`verify`]: the invariant suite run by `oscbridge verify`.

pub mod cli;
pub mod covariant;
pub mod entanglement;
pub mod error;
pub mod format;
pub mod numerics;
pub mod oscillator;
pub mod parton;
pub mod verify;

pub use error::{OscError, Result};

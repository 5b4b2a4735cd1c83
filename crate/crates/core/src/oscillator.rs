//! Two equal-mass oscillators with a bilinear coupling,
//!
//! `H = (p1^2 + p2^2) / 2m + (A x1^2 + A x2^2 + 2 C x1 x2) / 2`,
//!
//! and its diagonalization in the 45-degree rotated coordinates
//! `y1 = (x1 + x2)/sqrt 2`, `y2 = (x1 - x2)/sqrt 2`, where the potential becomes
//! `(K/2)(e^{-2 eta} y1^2 + e^{2 eta} y2^2)` with `K = sqrt(A^2 - C^2)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::Serialize;

use crate::error::{finite, OscError, Result};

/// Mass, diagonal stiffness and coupling stiffness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledParams {
    mass: f64,
    stiffness: f64,
    coupling: f64,
}

impl CoupledParams {
    /// Validates `m > 0`, `A > 0` and `|C| < A`.
    pub fn new(mass: f64, stiffness: f64, coupling: f64) -> Result<Self> {
        finite(mass, "mass")?;
        finite(stiffness, "stiffness A")?;
        finite(coupling, "coupling C")?;
        if mass <= 0.0 {
            return Err(OscError::InvalidMass(mass));
        }
        if stiffness <= 0.0 || coupling.abs() >= stiffness {
            return Err(OscError::UnstablePotential {
                a: stiffness,
                c: coupling,
            });
        }
        Ok(Self {
            mass,
            stiffness,
            coupling,
        })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn stiffness(&self) -> f64 {
        self.stiffness
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }
}

/// Quantities derived from the normal-mode decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalModeData {
    #[serde(rename = "K")]
    pub k: f64,
    pub eta: f64,
    pub omega: f64,
    /// `omega e^{+eta}`, frequency of the antisymmetric mode `y2`.
    pub omega_plus: f64,
    /// `omega e^{-eta}`, frequency of the symmetric mode `y1`.
    pub omega_minus: f64,
}

/// A point in the original oscillator coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscPoint {
    pub x1: f64,
    pub x2: f64,
}

/// A point in normal coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalPoint {
    pub y1: f64,
    pub y2: f64,
}

impl OscPoint {
    pub const fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }
}

impl NormalPoint {
    pub const fn new(y1: f64, y2: f64) -> Self {
        Self { y1, y2 }
    }

    /// Inverse of [`to_normal`].
    pub fn to_original(self) -> OscPoint {
        OscPoint::new(FRAC_1_SQRT_2 * (self.y1 + self.y2), FRAC_1_SQRT_2 * (self.y1 - self.y2))
    }
}

pub fn normal_modes(params: &CoupledParams) -> NormalModeData {
    let (a, c, m) = (params.stiffness, params.coupling, params.mass);
    let k = ((a - c) * (a + c)).sqrt();
    let eta = 0.25 * ((a - c) / (a + c)).ln();
    let omega = (k / m).sqrt();
    NormalModeData {
        k,
        eta,
        omega,
        omega_plus: omega * eta.exp(),
        omega_minus: omega * (-eta).exp(),
    }
}

pub fn to_normal(p: OscPoint) -> NormalPoint {
    NormalPoint::new(FRAC_1_SQRT_2 * (p.x1 + p.x2), FRAC_1_SQRT_2 * (p.x1 - p.x2))
}

/// Entangled ground state in the original coordinates,
/// `psi(x1, x2) = pi^{-1/2} exp{-[e^{-eta}(x1+x2)^2 + e^{eta}(x1-x2)^2] / 4}`.
pub fn ground_state(p: OscPoint, eta: f64) -> f64 {
    let s = p.x1 + p.x2;
    let d = p.x1 - p.x2;
    PI.sqrt().recip() * (-0.25 * ((-eta).exp() * s * s + eta.exp() * d * d)).exp()
}

/// The same state written in normal coordinates, where it factorizes.
pub fn ground_state_normal(y: NormalPoint, eta: f64) -> f64 {
    PI.sqrt().recip() * (-0.5 * ((-eta).exp() * y.y1 * y.y1 + eta.exp() * y.y2 * y.y2)).exp()
}

/// Classical energy of a phase-space point in the original coordinates.
pub fn hamiltonian_energy(p: OscPoint, momenta: (f64, f64), params: &CoupledParams) -> f64 {
    let (p1, p2) = momenta;
    let CoupledParams {
        mass: m,
        stiffness: a,
        coupling: c,
    } = *params;
    0.5 * ((p1 * p1 + p2 * p2) / m + a * p.x1 * p.x1 + a * p.x2 * p.x2 + 2.0 * c * p.x1 * p.x2)
}

/// Energy in the diagonal normal-mode form. Momenta are the conjugates of
/// `y1`, `y2` (the same 45-degree rotation applied to `p1`, `p2`).
pub fn hamiltonian_energy_normal(y: NormalPoint, normal_momenta: (f64, f64), modes: &NormalModeData, mass: f64) -> f64 {
    let (q1, q2) = normal_momenta;
    (q1 * q1 + q2 * q2) / (2.0 * mass)
        + 0.5 * modes.k * ((-2.0 * modes.eta).exp() * y.y1 * y.y1 + (2.0 * modes.eta).exp() * y.y2 * y.y2)
}

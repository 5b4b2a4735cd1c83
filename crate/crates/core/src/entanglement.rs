//! Schmidt expansion of the entangled ground state and the state of one
//! oscillator after the other has been traced out.
//!
//! With `t = tanh(eta/2)` the ground state expands as
//! `psi = sum_k c_k phi_k(x1) phi_k(x2)`, `c_k = t^k / cosh(eta/2)`, so the
//! reduced density matrix is diagonal in the Fock basis with eigenvalues
//! `p_k = c_k^2 = t^{2k} / cosh^2(eta/2)`. That is a thermal occupation
//! distribution with Boltzmann factor `exp(-omega/T) = t^2`.

use serde::Serialize;

use crate::error::{finite, OscError, Result};
use crate::numerics::hermite_fns;
use crate::oscillator::OscPoint;

/// Default Fock-space truncation.
pub const DEFAULT_KMAX: usize = 64;

/// Truncated Schmidt coefficients `c_0 ..= c_kmax`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FockExpansion {
    pub eta: f64,
    pub k_max: usize,
    pub coeffs: Vec<f64>,
}

impl FockExpansion {
    /// Exact weight of the discarded terms, `sum_{k > kmax} c_k^2`.
    pub fn tail(&self) -> f64 {
        truncation_tail(self.eta, self.k_max)
    }

    /// `sum_k c_k phi_k(x1) phi_k(x2)` over the retained terms.
    pub fn reconstruct(&self, p: OscPoint) -> Result<f64> {
        let a = hermite_fns(self.k_max, p.x1)?;
        let b = hermite_fns(self.k_max, p.x2)?;
        Ok(self
            .coeffs
            .iter()
            .zip(a.iter().zip(&b))
            .map(|(c, (u, v))| c * u * v)
            .sum())
    }
}

/// Eigenvalues of the traced density matrix plus the scalars derived from
/// them by summing the truncated series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReducedState {
    pub eta: f64,
    pub k_max: usize,
    pub eigenvalues: Vec<f64>,
    /// `sum_k p_k^2` over the retained eigenvalues.
    pub purity: f64,
    /// `-sum_k p_k ln p_k` over the retained eigenvalues.
    pub entropy: f64,
    /// `1 - sum_k p_k`, known in closed form.
    pub tail: f64,
}

/// Effective temperature of the traced oscillator (units with hbar = k_B = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermalMap {
    pub omega: f64,
    /// `omega / T`.
    pub x: f64,
    #[serde(rename = "T")]
    pub temperature: f64,
}

fn truncation_tail(eta: f64, k_max: usize) -> f64 {
    let t2 = (0.5 * eta).tanh().powi(2);
    t2.powf((k_max + 1) as f64)
}

pub fn schmidt_coefficients(eta: f64, k_max: usize) -> FockExpansion {
    let t = (0.5 * eta).tanh();
    let c0 = (0.5 * eta).cosh().recip();
    let coeffs = std::iter::successors(Some(c0), |c| Some(c * t))
        .take(k_max + 1)
        .collect();
    FockExpansion { eta, k_max, coeffs }
}

pub fn reduced_state(eta: f64, k_max: usize) -> ReducedState {
    let eigenvalues: Vec<f64> = schmidt_coefficients(eta, k_max)
        .coeffs
        .into_iter()
        .map(|c| c * c)
        .collect();
    let purity = eigenvalues.iter().map(|p| p * p).sum();
    let entropy = eigenvalues.iter().filter(|&&p| p > 0.0).map(|p| -p * p.ln()).sum();
    ReducedState {
        eta,
        k_max,
        eigenvalues,
        purity,
        entropy,
        tail: truncation_tail(eta, k_max),
    }
}

/// `Tr rho^2 = 1 / cosh(eta)`.
pub fn purity(eta: f64) -> f64 {
    eta.cosh().recip()
}

/// `cosh^{-4}(eta/2) sum_{k<=kmax} tanh^{4k}(eta/2)`.
pub fn purity_series(eta: f64, k_max: usize) -> f64 {
    let q = (0.5 * eta).tanh().powi(4);
    let mut term = (0.5 * eta).cosh().powi(-4);
    let mut sum = 0.0;
    for _ in 0..=k_max {
        sum += term;
        term *= q;
    }
    sum
}

/// Von Neumann entropy of the traced oscillator in units of k_B,
/// `S = 2 [cosh^2(eta/2) ln cosh(eta/2) - sinh^2(eta/2) ln sinh(eta/2)]`.
pub fn entropy(eta: f64) -> f64 {
    let half = 0.5 * eta.abs();
    if half == 0.0 {
        return 0.0;
    }
    let (c, s) = (half.cosh(), half.sinh());
    2.0 * (c * c * c.ln() - s * s * s.ln())
}

/// Maps the squeeze parameter onto a thermal state of frequency `omega` via
/// `tanh^2(eta/2) = exp(-omega/T)`.
pub fn effective_temperature(eta: f64, omega: f64) -> Result<ThermalMap> {
    finite(eta, "eta")?;
    if !(omega.is_finite() && omega > 0.0) {
        return Err(OscError::InvalidArgument(format!(
            "omega must be positive and finite, got {omega}"
        )));
    }
    if eta == 0.0 {
        return Err(OscError::ZeroTemperature);
    }
    // ln tanh(a) = ln(1 - e^{-2a}) - ln(1 + e^{-2a}), stable for large a
    let e = (-eta.abs()).exp();
    let x = -2.0 * ((-e).ln_1p() - e.ln_1p());
    Ok(ThermalMap {
        omega,
        x,
        temperature: omega / x,
    })
}

/// Entropy of a thermal oscillator with `x = omega / T`:
/// `S = x / (e^x - 1) - ln(1 - e^{-x})`.
pub fn thermal_entropy(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(OscError::InvalidArgument(format!("omega/T must be positive, got {x}")));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    Ok(x / x.exp_m1() - (-(-x).exp()).ln_1p())
}

//! The covariant oscillator in the longitudinal/time plane.
//!
//! A boost along `z` acts on the light-cone coordinates `u = (z+t)/sqrt 2`,
//! `v = (z-t)/sqrt 2` as a squeeze, `u -> e^{eta/2} u`, `v -> e^{-eta/2} v`.
//! Applied to the rest-frame Gaussian `exp{-(z^2+t^2)/2}` it produces the
//! same function of `(z, t)` as the entangled oscillator ground state of
//! [`crate::oscillator::ground_state`] with `(x1, x2) -> (z, t)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{finite, OscError, Result};
use crate::numerics::QuadratureGrid;

/// Four-vector in `(t, x, y, z)` order.
pub type FourVector = [f64; 4];

/// Half-width of the momentum probe window used by [`fourier_consistency`].
pub const FOURIER_PROBE_EXTENT: f64 = 3.0;
/// Probe points per momentum axis.
pub const FOURIER_PROBE_POINTS: usize = 13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint {
    pub z: f64,
    pub t: f64,
}

impl SpacetimePoint {
    pub const fn new(z: f64, t: f64) -> Self {
        Self { z, t }
    }

    pub fn from_light_cone(u: f64, v: f64) -> Self {
        Self::new(FRAC_1_SQRT_2 * (u + v), FRAC_1_SQRT_2 * (u - v))
    }

    pub fn u(&self) -> f64 {
        FRAC_1_SQRT_2 * (self.z + self.t)
    }

    pub fn v(&self) -> f64 {
        FRAC_1_SQRT_2 * (self.z - self.t)
    }

    /// `z^2 - t^2 = 2uv`.
    pub fn interval(&self) -> f64 {
        self.z * self.z - self.t * self.t
    }
}

/// Longitudinal momentum and energy of the relative quark motion.
/// Note the light-cone pairing is reversed relative to space-time:
/// `q_u = (q0 - qz)/sqrt 2`, `q_v = (q0 + qz)/sqrt 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumPoint {
    pub qz: f64,
    pub q0: f64,
}

impl MomentumPoint {
    pub const fn new(qz: f64, q0: f64) -> Self {
        Self { qz, q0 }
    }

    pub fn from_light_cone(qu: f64, qv: f64) -> Self {
        Self::new(FRAC_1_SQRT_2 * (qv - qu), FRAC_1_SQRT_2 * (qv + qu))
    }

    pub fn qu(&self) -> f64 {
        FRAC_1_SQRT_2 * (self.q0 - self.qz)
    }

    pub fn qv(&self) -> f64 {
        FRAC_1_SQRT_2 * (self.q0 + self.qz)
    }
}

/// `[[cosh(eta/2), sinh(eta/2)], [sinh(eta/2), cosh(eta/2)]]` acting on `(z, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostMatrix {
    pub eta: f64,
}

impl BoostMatrix {
    pub fn new(eta: f64) -> Self {
        Self { eta }
    }

    pub fn entries(&self) -> [[f64; 2]; 2] {
        let (c, s) = ((0.5 * self.eta).cosh(), (0.5 * self.eta).sinh());
        [[c, s], [s, c]]
    }

    pub fn determinant(&self) -> f64 {
        let m = self.entries();
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Matrix product, multiplying out the entries.
    pub fn compose(&self, other: &BoostMatrix) -> [[f64; 2]; 2] {
        let (a, b) = (self.entries(), other.entries());
        let mut out = [[0.0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    }

    pub fn apply(&self, p: SpacetimePoint) -> SpacetimePoint {
        let m = self.entries();
        SpacetimePoint::new(m[0][0] * p.z + m[0][1] * p.t, m[1][0] * p.z + m[1][1] * p.t)
    }
}

/// Boost along `z` in matrix form.
pub fn boost_point(p: SpacetimePoint, eta: f64) -> SpacetimePoint {
    BoostMatrix::new(eta).apply(p)
}

/// The same boost as a light-cone squeeze, `u' = e^{eta/2} u`, `v' = e^{-eta/2} v`.
pub fn squeeze_light_cone(p: SpacetimePoint, eta: f64) -> SpacetimePoint {
    SpacetimePoint::from_light_cone((0.5 * eta).exp() * p.u(), (-0.5 * eta).exp() * p.v())
}

/// Rest-frame Gaussian `pi^{-1/2} exp{-(z^2 + t^2)/2}`, unit-normalized on the plane.
pub fn dirac_gaussian(p: SpacetimePoint) -> f64 {
    PI.sqrt().recip() * (-0.5 * (p.z * p.z + p.t * p.t)).exp()
}

/// `pi^{-1/2} exp{-(e^{-eta} u^2 + e^{eta} v^2)/2}`.
pub fn boosted_wavefunction(p: SpacetimePoint, eta: f64) -> f64 {
    let (u, v) = (p.u(), p.v());
    PI.sqrt().recip() * (-0.5 * ((-eta).exp() * u * u + eta.exp() * v * v)).exp()
}

/// `pi^{-1/2} exp{-(e^{eta} q_u^2 + e^{-eta} q_v^2)/2}`.
pub fn momentum_wavefunction(q: MomentumPoint, eta: f64) -> f64 {
    let (qu, qv) = (q.qu(), q.qv());
    PI.sqrt().recip() * (-0.5 * (eta.exp() * qu * qu + (-eta).exp() * qv * qv)).exp()
}

/// Rejects grids whose box cannot hold the widest Gaussian axis (standard
/// deviation above `L/4`) or whose spacing is coarser than the narrowest one.
pub(crate) fn require_resolved(widest: f64, narrowest: f64, grid: &QuadratureGrid) -> Result<()> {
    let limit = grid.extent() / 4.0;
    if widest > limit {
        return Err(OscError::UnderResolved(format!(
            "width {widest:.4} exceeds extent/4 = {limit:.4}"
        )));
    }
    if narrowest < grid.spacing() {
        return Err(OscError::UnderResolved(format!(
            "width {narrowest:.4} is below the node spacing {:.4}",
            grid.spacing()
        )));
    }
    Ok(())
}

/// Fourier transform of the boosted space-time wave function,
/// `(1/2pi) iint psi_eta(z, t) exp{i(q_z z - q_0 t)} dz dt`, at the given
/// momentum points. The kernel phase equals `q_v v - q_u u`, so `u` pairs
/// with `q_u` and `v` with `q_v`.
pub fn fourier_transform(
    eta: f64,
    grid: &QuadratureGrid,
    probes_z: &[f64],
    probes_0: &[f64],
) -> Result<Vec<Vec<Complex64>>> {
    finite(eta, "eta")?;
    let amplitude_width = (0.5 * eta.abs()).exp();
    require_resolved(amplitude_width, amplitude_width.recip(), grid)?;

    let nodes = grid.nodes();
    let w = grid.weights();
    let n = grid.len();
    // psi[j * n + k] = psi(z_j, t_k)
    let psi: Vec<f64> = nodes
        .iter()
        .flat_map(|&z| {
            nodes
                .iter()
                .map(move |&t| boosted_wavefunction(SpacetimePoint::new(z, t), eta))
        })
        .collect();

    let mut out = Vec::with_capacity(probes_z.len());
    for &qz in probes_z {
        // partial[k] = sum_j w_j psi(z_j, t_k) e^{i qz z_j}
        let mut partial = vec![Complex64::new(0.0, 0.0); n];
        for (j, (&z, &wz)) in nodes.iter().zip(w).enumerate() {
            let phase = Complex64::from_polar(wz, qz * z);
            for (acc, &value) in partial.iter_mut().zip(&psi[j * n..(j + 1) * n]) {
                *acc += phase * value;
            }
        }
        let row = probes_0
            .iter()
            .map(|&q0| {
                let sum: Complex64 = nodes
                    .iter()
                    .zip(w)
                    .zip(&partial)
                    .map(|((&t, &wt), &a)| a * Complex64::from_polar(wt, -q0 * t))
                    .sum();
                sum / (2.0 * PI)
            })
            .collect();
        out.push(row);
    }
    Ok(out)
}

/// Largest `|FT[psi_eta] - phi_eta|` over a square probe window in momentum space.
pub fn fourier_consistency(eta: f64, grid: &QuadratureGrid) -> Result<f64> {
    let probes: Vec<f64> = (0..FOURIER_PROBE_POINTS)
        .map(|i| FOURIER_PROBE_EXTENT * (2.0 * i as f64 / (FOURIER_PROBE_POINTS - 1) as f64 - 1.0))
        .collect();
    let transform = fourier_transform(eta, grid, &probes, &probes)?;
    let mut worst = 0.0f64;
    for (row, &qz) in transform.iter().zip(&probes) {
        for (value, &q0) in row.iter().zip(&probes) {
            let exact = momentum_wavefunction(MomentumPoint::new(qz, q0), eta);
            worst = worst.max((value - exact).norm());
        }
    }
    Ok(worst)
}

/// Hadron position and quark separation, `X = (x_a + x_b)/2`,
/// `x = (x_a - x_b) / (2 sqrt 2)`.
pub fn hadron_variables(xa: FourVector, xb: FourVector) -> (FourVector, FourVector) {
    let mut center = [0.0; 4];
    let mut separation = [0.0; 4];
    for i in 0..4 {
        center[i] = 0.5 * (xa[i] + xb[i]);
        separation[i] = (xa[i] - xb[i]) / (2.0 * SQRT_2);
    }
    (center, separation)
}

/// Total momentum and relative momentum, `P = p_a + p_b`, `q = sqrt 2 (p_a - p_b)`.
pub fn momentum_variables(pa: FourVector, pb: FourVector) -> (FourVector, FourVector) {
    let mut total = [0.0; 4];
    let mut relative = [0.0; 4];
    for i in 0..4 {
        total[i] = pa[i] + pb[i];
        relative[i] = SQRT_2 * (pa[i] - pb[i]);
    }
    (total, relative)
}

/// Eigenvalue of the Lorentz-invariant oscillator operator
/// `(1/2){x_mu x^mu - d^2/dx_mu dx^mu}` restricted to `(z, t)`, evaluated on
/// the boosted ground state by central finite differences with the given
/// step. The normalizable ground state gives zero in every frame.
pub fn oscillator_equation_eigenvalue(p: SpacetimePoint, eta: f64, step: f64) -> f64 {
    let f = |z: f64, t: f64| boosted_wavefunction(SpacetimePoint::new(z, t), eta);
    let center = f(p.z, p.t);
    let d2z = (f(p.z + step, p.t) - 2.0 * center + f(p.z - step, p.t)) / (step * step);
    let d2t = (f(p.z, p.t + step) - 2.0 * center + f(p.z, p.t - step)) / (step * step);
    0.5 * (p.interval() * center - (d2z - d2t)) / center
}

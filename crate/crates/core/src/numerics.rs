//! Oscillator eigenfunctions, uniform trapezoid quadrature and the brute-force
//! partial-trace oracle.
//!
//! Everything here works in natural units with lengths measured in units of
//! `(mK)^{1/4}`. The quadrature is a plain trapezoid rule on `[-L, L]`; for
//! Gaussian integrands that decay well inside the box it converges
//! exponentially in the node spacing.

use std::f64::consts::PI;
use std::io::Write;

use crate::error::{finite, OscError, Result};
use crate::oscillator::{ground_state, OscPoint};

/// Default number of nodes per axis.
pub const DEFAULT_NODES: usize = 401;
/// Default half-width of the integration box.
pub const DEFAULT_EXTENT: f64 = 8.0;
/// Largest |eta| the reduced-density oracle accepts.
pub const ORACLE_MAX_ETA: f64 = 6.0;

/// Uniform trapezoid rule on `[-extent, extent]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    extent: f64,
}

impl QuadratureGrid {
    pub fn trapezoid(count: usize, extent: f64) -> Result<Self> {
        if count < 2 {
            return Err(OscError::InvalidGrid(format!("need at least 2 nodes, got {count}")));
        }
        if !(extent.is_finite() && extent > 0.0) {
            return Err(OscError::InvalidGrid(format!(
                "extent must be positive and finite, got {extent}"
            )));
        }
        let step = 2.0 * extent / (count - 1) as f64;
        let span = (count - 1) as f64;
        // x_i = L (2i - (N-1)) / (N-1) is exactly antisymmetric about the centre
        let nodes: Vec<f64> = (0..count).map(|i| extent * (2.0 * i as f64 - span) / span).collect();
        let mut weights = vec![step; count];
        weights[0] = 0.5 * step;
        weights[count - 1] = 0.5 * step;
        Ok(Self { nodes, weights, extent })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node spacing `h = 2L / (N - 1)`.
    pub fn spacing(&self) -> f64 {
        2.0 * self.extent / (self.len() - 1) as f64
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        Self::trapezoid(DEFAULT_NODES, DEFAULT_EXTENT).expect("default grid is valid")
    }
}

/// Normalized oscillator eigenfunctions `phi_0(x) ..= phi_kmax(x)`.
///
/// Uses the normalized three-term recurrence
/// `phi_{k+1} = x sqrt(2/(k+1)) phi_k - sqrt(k/(k+1)) phi_{k-1}`,
/// which stays finite far past the point where `H_k(x) / sqrt(2^k k!)`
/// would overflow.
pub fn hermite_fns(k_max: usize, x: f64) -> Result<Vec<f64>> {
    finite(x, "hermite argument")?;
    let mut out = Vec::with_capacity(k_max + 1);
    out.push(PI.powf(-0.25) * (-0.5 * x * x).exp());
    if k_max >= 1 {
        out.push(std::f64::consts::SQRT_2 * x * out[0]);
    }
    for k in 1..k_max {
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    Ok(out)
}

/// The k-th normalized oscillator eigenfunction at `x`.
pub fn hermite_fn(k: usize, x: f64) -> Result<f64> {
    Ok(hermite_fns(k, x)?[k])
}

/// `sum_i w_i f(x_i)` over the grid.
pub fn integrate_1d<F>(f: F, grid: &QuadratureGrid) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if grid.is_empty() {
        return Err(OscError::InvalidGrid("empty grid".into()));
    }
    let sum: f64 = grid.iter().map(|(x, w)| w * f(x)).sum();
    finite(sum, "1-D integrand")
}

/// Tensor-product trapezoid rule over `grid x grid`.
pub fn integrate_2d<F>(f: F, grid: &QuadratureGrid) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    if grid.is_empty() {
        return Err(OscError::InvalidGrid("empty grid".into()));
    }
    let sum: f64 = grid
        .iter()
        .map(|(x, wx)| wx * grid.iter().map(|(y, wy)| wy * f(x, y)).sum::<f64>())
        .sum();
    finite(sum, "2-D integrand")
}

/// A real symmetric kernel `rho(x, x')` tabulated on a quadrature grid.
#[derive(Debug, Clone)]
pub struct DensityKernel {
    grid: QuadratureGrid,
    // row-major, len() * len()
    values: Vec<f64>,
}

impl DensityKernel {
    pub fn grid(&self) -> &QuadratureGrid {
        &self.grid
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.len() + j]
    }

    pub fn trace(&self) -> f64 {
        self.grid
            .weights()
            .iter()
            .enumerate()
            .map(|(i, w)| w * self.value(i, i))
            .sum()
    }

    pub fn max_asymmetry(&self) -> f64 {
        let n = self.grid.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max((self.value(i, j) - self.value(j, i)).abs());
            }
        }
        worst
    }

    /// `<phi_k| rho |phi_k>` by quadrature.
    pub fn fock_projection(&self, k: usize) -> Result<f64> {
        let w = self.grid.weights();
        let phi: Vec<f64> = self
            .grid
            .nodes()
            .iter()
            .map(|&x| hermite_fn(k, x))
            .collect::<Result<_>>()?;
        let n = self.grid.len();
        let mut total = 0.0;
        for i in 0..n {
            let row = &self.values[i * n..(i + 1) * n];
            let inner: f64 = row.iter().zip(w).zip(&phi).map(|((r, wj), pj)| r * wj * pj).sum();
            total += w[i] * phi[i] * inner;
        }
        Ok(total)
    }

    /// `Tr(rho^2) = iint rho(x, x') rho(x', x) dx dx'`.
    pub fn purity(&self) -> f64 {
        let w = self.grid.weights();
        let n = self.grid.len();
        let mut total = 0.0;
        for i in 0..n {
            for j in 0..n {
                total += w[i] * w[j] * self.value(i, j) * self.value(j, i);
            }
        }
        total
    }

    /// Writes `x,x_prime,value` rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "x,x_prime,value")?;
        let nodes = self.grid.nodes();
        for (i, &x) in nodes.iter().enumerate() {
            for (j, &xp) in nodes.iter().enumerate() {
                writeln!(
                    out,
                    "{},{},{}",
                    crate::format::sig15(x),
                    crate::format::sig15(xp),
                    crate::format::sig15(self.value(i, j))
                )?;
            }
        }
        Ok(())
    }
}

/// Traces the entangled ground state over the second oscillator by direct
/// quadrature: `rho(x1, x1') = int psi(x1, x2) psi(x1', x2) dx2`.
///
/// This is deliberately independent of the closed-form Fock series.
pub fn oracle_reduced_density(eta: f64, grid: &QuadratureGrid) -> Result<DensityKernel> {
    finite(eta, "eta")?;
    if eta.abs() > ORACLE_MAX_ETA {
        return Err(OscError::EtaOutOfRange {
            eta,
            max: ORACLE_MAX_ETA,
        });
    }
    let n = grid.len();
    let nodes = grid.nodes();
    let w = grid.weights();
    // psi[i][m] = psi(x_i, x_m)
    let psi: Vec<f64> = nodes
        .iter()
        .flat_map(|&a| nodes.iter().map(move |&b| ground_state(OscPoint::new(a, b), eta)))
        .collect();

    let mut values = vec![0.0; n * n];
    for i in 0..n {
        let pi = &psi[i * n..(i + 1) * n];
        for j in i..n {
            let pj = &psi[j * n..(j + 1) * n];
            let v: f64 = pi.iter().zip(pj).zip(w).map(|((a, b), wm)| a * b * wm).sum();
            values[i * n + j] = v;
            values[j * n + i] = v;
        }
    }
    Ok(DensityKernel {
        grid: grid.clone(),
        values,
    })
}

/// Checks `rho^2 = rho` for the untraced pure-state kernel
/// `rho(a; b) = psi(a) psi(b)` at the given point pairs, by integrating
/// `rho(a; c) rho(c; b)` over the intermediate point `c` on the 2-D grid.
///
/// Returns the largest absolute deviation.
pub fn pure_state_idempotency(eta: f64, pairs: &[(OscPoint, OscPoint)], grid: &QuadratureGrid) -> Result<f64> {
    finite(eta, "eta")?;
    let rho = |a: OscPoint, b: OscPoint| ground_state(a, eta) * ground_state(b, eta);
    let mut worst = 0.0f64;
    for &(a, b) in pairs {
        let squared = integrate_2d(
            |c1, c2| {
                let c = OscPoint::new(c1, c2);
                rho(a, c) * rho(c, b)
            },
            grid,
        )?;
        worst = worst.max((squared - rho(a, b)).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn ground_eigenfunction_at_origin() {
        assert_abs_diff_eq!(hermite_fn(0, 0.0).unwrap(), PI.powf(-0.25), epsilon = 1e-15);
        assert_abs_diff_eq!(hermite_fn(0, 0.0).unwrap(), 0.7511255444649425, epsilon = 1e-15);
        assert_eq!(hermite_fn(1, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn second_eigenfunction_matches_closed_form() {
        let closed = |x: f64| (2.0 * x * x - 1.0) / 2f64.sqrt() * PI.powf(-0.25) * (-0.5 * x * x).exp();
        for x in [-2.5, -1.0, 0.0, 0.3, 1.0, 4.0] {
            assert_abs_diff_eq!(hermite_fn(2, x).unwrap(), closed(x), epsilon = 1e-14);
        }
        assert_abs_diff_eq!(hermite_fn(2, 1.0).unwrap(), 0.3221441825567376, epsilon = 1e-12);
    }

    #[test]
    fn recurrence_is_stable_at_high_order() {
        let values = hermite_fns(128, 3.0).unwrap();
        assert!(values.iter().all(|v| v.is_finite() && v.abs() < 1.0));
        // parity
        for k in [7usize, 64, 127, 128] {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert_abs_diff_eq!(
                hermite_fn(k, -2.2).unwrap(),
                sign * hermite_fn(k, 2.2).unwrap(),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn rejects_non_finite_argument() {
        assert!(matches!(hermite_fn(3, f64::NAN), Err(OscError::NonFinite(_))));
        assert!(hermite_fn(3, f64::INFINITY).is_err());
    }

    #[test]
    fn default_grid_shape() {
        let g = QuadratureGrid::default();
        assert_eq!(g.len(), 401);
        assert_eq!(g.nodes()[0], -8.0);
        assert_eq!(g.nodes()[400], 8.0);
        assert_eq!(g.nodes()[200], 0.0);
        assert!(g.weights().iter().all(|&w| w > 0.0));
        assert_abs_diff_eq!(g.weights().iter().sum::<f64>(), 16.0, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_grids_rejected() {
        assert!(QuadratureGrid::trapezoid(1, 8.0).is_err());
        assert!(QuadratureGrid::trapezoid(0, 8.0).is_err());
        assert!(QuadratureGrid::trapezoid(11, 0.0).is_err());
        assert!(QuadratureGrid::trapezoid(11, f64::NAN).is_err());
    }

    #[test]
    fn one_dimensional_integrals() {
        let g = QuadratureGrid::default();
        let gauss = integrate_1d(|x| (-x * x).exp(), &g).unwrap();
        assert_abs_diff_eq!(gauss, PI.sqrt(), epsilon = 1e-10);
        let norm = integrate_1d(|x| hermite_fn(3, x).unwrap().powi(2), &g).unwrap();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-8);
        let cross = integrate_1d(|x| hermite_fn(2, x).unwrap() * hermite_fn(5, x).unwrap(), &g).unwrap();
        assert_abs_diff_eq!(cross, 0.0, epsilon = 1e-8);
    }

    #[test]
    fn non_finite_integrand_rejected() {
        let g = QuadratureGrid::default();
        assert!(integrate_1d(|x| 1.0 / x, &g).is_err());
    }

    #[test]
    fn two_dimensional_integrals() {
        let g = QuadratureGrid::default();
        let gauss = integrate_2d(|x, y| (-x * x - y * y).exp(), &g).unwrap();
        assert_abs_diff_eq!(gauss, PI, epsilon = 1e-9);
        let norm = integrate_2d(|a, b| ground_state(OscPoint::new(a, b), 1.0).powi(2), &g).unwrap();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-8);
        let overlap = integrate_2d(
            |a, b| ground_state(OscPoint::new(a, b), 0.0) * hermite_fn(0, a).unwrap() * hermite_fn(0, b).unwrap(),
            &g,
        )
        .unwrap();
        assert_abs_diff_eq!(overlap, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn orthonormality_through_order_forty() {
        // phi_40 turns around at |x| = 9, so this needs a box wider than the default
        let g = QuadratureGrid::trapezoid(601, 12.0).unwrap();
        let table: Vec<Vec<f64>> = g.nodes().iter().map(|&x| hermite_fns(40, x).unwrap()).collect();
        let mut worst = 0.0f64;
        for j in 0..=40 {
            for k in 0..=40 {
                let gram: f64 = table.iter().zip(g.weights()).map(|(row, w)| w * row[j] * row[k]).sum();
                let expected = if j == k { 1.0 } else { 0.0 };
                worst = worst.max((gram - expected).abs());
            }
        }
        assert!(worst < 1e-8, "max |G - I| = {worst:e}");
    }

    #[test]
    fn disentangled_kernel_is_product_of_ground_states() {
        let g = QuadratureGrid::trapezoid(161, 8.0).unwrap();
        let kernel = oracle_reduced_density(0.0, &g).unwrap();
        for (i, &x) in g.nodes().iter().enumerate().step_by(7) {
            for (j, &xp) in g.nodes().iter().enumerate().step_by(11) {
                let expected = hermite_fn(0, x).unwrap() * hermite_fn(0, xp).unwrap();
                assert_abs_diff_eq!(kernel.value(i, j), expected, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn oracle_kernel_trace_symmetry_and_projections() {
        let g = QuadratureGrid::default();
        let kernel = oracle_reduced_density(1.0, &g).unwrap();
        assert!(kernel.max_asymmetry() < 1e-12);
        assert_abs_diff_eq!(kernel.trace(), 1.0, epsilon = 1e-7);
        let t = 0.5f64.tanh();
        let c2 = 0.5f64.cosh().powi(2);
        for k in 0..=4 {
            let expected = t.powi(2 * k as i32) / c2;
            assert_abs_diff_eq!(kernel.fock_projection(k).unwrap(), expected, epsilon = 1e-6);
        }
    }

    #[test]
    fn oracle_rejects_large_eta() {
        let g = QuadratureGrid::trapezoid(11, 8.0).unwrap();
        assert!(matches!(
            oracle_reduced_density(6.5, &g),
            Err(OscError::EtaOutOfRange { .. })
        ));
        assert!(oracle_reduced_density(-7.0, &g).is_err());
    }

    #[test]
    fn untraced_kernel_is_idempotent() {
        let g = QuadratureGrid::trapezoid(201, 8.0).unwrap();
        let pts = [
            (0.0, 0.0),
            (0.5, -0.3),
            (1.2, 0.7),
            (-0.8, 1.5),
            (2.0, 1.9),
            (-1.1, -1.4),
            (0.3, 2.2),
            (-2.0, 0.1),
            (1.7, -0.6),
            (0.9, 0.9),
        ];
        let pairs: Vec<_> = pts
            .iter()
            .zip(pts.iter().rev())
            .map(|(&(a1, a2), &(b1, b2))| (OscPoint::new(a1, a2), OscPoint::new(b1, b2)))
            .collect();
        for eta in [0.0, 1.0] {
            assert!(pure_state_idempotency(eta, &pairs, &g).unwrap() < 1e-6);
        }
    }

    #[test]
    fn kernel_csv_has_header_and_rows() {
        let g = QuadratureGrid::trapezoid(5, 2.0).unwrap();
        let kernel = oracle_reduced_density(0.5, &g).unwrap();
        let mut buf = Vec::new();
        kernel.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "x,x_prime,value");
        assert_eq!(lines.len(), 26);
        assert!(lines[1].starts_with("-2,-2,"));
    }
}

//! The invariant suite behind `oscbridge verify`.
//!
//! Every check records the measured quantity next to its threshold so the
//! JSON report can be diffed between builds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::covariant::{
    boost_point, boosted_wavefunction, fourier_consistency, oscillator_equation_eigenvalue, BoostMatrix, SpacetimePoint,
};
use crate::entanglement::{
    effective_temperature, entropy, purity, purity_series, reduced_state, schmidt_coefficients, thermal_entropy,
};
use crate::error::Result;
use crate::numerics::{hermite_fns, integrate_1d, oracle_reduced_density, pure_state_idempotency, QuadratureGrid};
use crate::oscillator::{
    ground_state, hamiltonian_energy, hamiltonian_energy_normal, normal_modes, to_normal, CoupledParams, OscPoint,
};
use crate::parton::{light_cone_concentration, longitudinal_density, width, Axis};

const SEED: u64 = 0x05c1_11a7;
const TRIALS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Passes when `measured < threshold`.
    Below,
    /// Passes when `measured > threshold`.
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub threshold: f64,
    pub comparison: Comparison,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Default)]
struct Suite {
    checks: Vec<CheckResult>,
}

impl Suite {
    fn below(&mut self, name: impl Into<String>, measured: f64, threshold: f64) {
        self.push(name.into(), measured, threshold, Comparison::Below);
    }

    fn above(&mut self, name: impl Into<String>, measured: f64, threshold: f64) {
        self.push(name.into(), measured, threshold, Comparison::Above);
    }

    fn push(&mut self, name: String, measured: f64, threshold: f64, comparison: Comparison) {
        // NaN fails either way
        let passed = match comparison {
            Comparison::Below => measured < threshold,
            Comparison::Above => measured > threshold,
        };
        self.checks.push(CheckResult {
            name,
            passed,
            measured,
            threshold,
            comparison,
        });
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

/// Runs every module invariant on `grid` (the default grid unless the
/// caller overrides it).
pub fn run_suite(grid: &QuadratureGrid) -> Result<VerifyReport> {
    let mut s = Suite::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    numerics_checks(&mut s, grid)?;
    oscillator_checks(&mut s, &mut rng);
    entanglement_checks(&mut s, grid)?;
    covariant_checks(&mut s, grid, &mut rng)?;
    parton_checks(&mut s, grid)?;

    let passed = s.checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        passed,
        checks: s.checks,
    })
}

fn numerics_checks(s: &mut Suite, grid: &QuadratureGrid) -> Result<()> {
    let gauss = integrate_1d(|x| (-x * x).exp(), grid)?;
    s.below(
        "numerics.gaussian_integral",
        (gauss - std::f64::consts::PI.sqrt()).abs(),
        1e-10,
    );

    // phi_40 reaches |x| = 9, so orthonormality to k = 40 uses a wider box
    let wide = QuadratureGrid::trapezoid(601, 12.0)?;
    let table: Vec<Vec<f64>> = wide
        .nodes()
        .iter()
        .map(|&x| hermite_fns(40, x))
        .collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    for j in 0..=40 {
        for k in j..=40 {
            let g: f64 = table.iter().zip(wide.weights()).map(|(r, w)| w * r[j] * r[k]).sum();
            worst = worst.max((g - if j == k { 1.0 } else { 0.0 }).abs());
        }
    }
    s.below("numerics.orthonormality_k40", worst, 1e-8);

    let kernel = oracle_reduced_density(1.0, grid)?;
    s.below("numerics.kernel_symmetry", kernel.max_asymmetry(), 1e-12);

    let points = [
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
    let pairs: Vec<_> = points
        .iter()
        .zip(points.iter().rev())
        .map(|(&(a1, a2), &(b1, b2))| (OscPoint::new(a1, a2), OscPoint::new(b1, b2)))
        .collect();
    for eta in [0.0, 1.0] {
        let dev = pure_state_idempotency(eta, &pairs, grid)?;
        s.below(format!("numerics.idempotency_eta_{eta}"), dev, 1e-6);
    }
    Ok(())
}

fn oscillator_checks(s: &mut Suite, rng: &mut ChaCha8Rng) {
    let mut worst = 0.0f64;
    let mut sign = 0.0f64;
    for _ in 0..TRIALS {
        let m = rng.gen_range(0.1..10.0);
        let a = rng.gen_range(0.1..10.0);
        let c = a * rng.gen_range(-0.99..0.99);
        let params = CoupledParams::new(m, a, c).expect("sampled inside the stable region");
        let modes = normal_modes(&params);
        let x = OscPoint::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let p = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let direct = hamiltonian_energy(x, p, &params);
        let pn = to_normal(OscPoint::new(p.0, p.1));
        let normal = hamiltonian_energy_normal(to_normal(x), (pn.y1, pn.y2), &modes, m);
        worst = worst.max((direct - normal).abs() / direct.abs().max(f64::MIN_POSITIVE));

        let flipped = normal_modes(&CoupledParams::new(m, a, -c).expect("same region"));
        sign = sign
            .max((modes.eta + flipped.eta).abs())
            .max((modes.omega_plus - flipped.omega_minus).abs() / modes.omega_plus);
    }
    s.below("oscillator.hamiltonian_forms", worst, 1e-12);
    s.below("oscillator.coupling_sign_symmetry", sign, 1e-12);

    let peak = 1.0 / std::f64::consts::PI.sqrt();
    let mut excess = 0.0f64;
    let mut separable = 0.0f64;
    let g0 = |x: f64| std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    for x1 in linspace(-4.0, 4.0, 20) {
        for x2 in linspace(-4.0, 4.0, 20) {
            for eta in [-1.5, 0.0, 0.7, 2.0] {
                let v = ground_state(OscPoint::new(x1, x2), eta);
                if v <= 0.0 {
                    excess = f64::INFINITY;
                }
                excess = excess.max(v - peak);
            }
            separable = separable.max((ground_state(OscPoint::new(x1, x2), 0.0) - g0(x1) * g0(x2)).abs());
        }
    }
    s.below("oscillator.ground_state_bounded", excess, 1e-15);
    s.below("oscillator.separable_at_zero_eta", separable, 1e-12);
}

fn entanglement_checks(s: &mut Suite, grid: &QuadratureGrid) -> Result<()> {
    let series = linspace(0.0, 3.0, 31)
        .map(|eta| (purity(eta) - purity_series(eta, 64)).abs())
        .fold(0.0, f64::max);
    s.below("entanglement.purity_closed_vs_series", series, 1e-10);

    for eta in [0.0, 0.5, 1.0, 2.0] {
        let kernel = oracle_reduced_density(eta, grid)?;
        s.below(
            format!("entanglement.purity_closed_vs_grid_eta_{eta}"),
            (purity(eta) - kernel.purity()).abs(),
            1e-6,
        );
    }

    let ent = [0.25, 0.5, 1.0, 2.0]
        .into_iter()
        .map(|eta| (entropy(eta) - reduced_state(eta, 128).entropy).abs())
        .fold(0.0, f64::max);
    s.below("entanglement.entropy_closed_vs_eigenvalues", ent, 1e-9);

    for eta in [0.5, 1.0] {
        let kernel = oracle_reduced_density(eta, grid)?;
        let exact = reduced_state(eta, 10).eigenvalues;
        let mut worst = 0.0f64;
        for (k, p) in exact.iter().enumerate() {
            worst = worst.max((kernel.fock_projection(k)? - p).abs());
        }
        s.below(format!("entanglement.oracle_projections_eta_{eta}"), worst, 1e-6);
        s.below(
            format!("entanglement.oracle_trace_eta_{eta}"),
            (kernel.trace() - 1.0).abs(),
            1e-7,
        );
    }

    for eta in [0.5, 1.0, 1.5, 2.0] {
        let f = schmidt_coefficients(eta, 40);
        let mut worst = 0.0f64;
        for x1 in linspace(-3.0, 3.0, 15) {
            for x2 in linspace(-3.0, 3.0, 15) {
                let p = OscPoint::new(x1, x2);
                worst = worst.max((f.reconstruct(p)? - ground_state(p, eta)).abs());
            }
        }
        s.below(format!("entanglement.schmidt_reconstruction_eta_{eta}"), worst, 1e-6);
    }

    let etas: Vec<f64> = linspace(0.0, 4.0, 41).collect();
    let mut violations = 0.0;
    for w in etas.windows(2) {
        if entropy(w[1]) <= entropy(w[0]) || entropy(-w[1]) <= entropy(-w[0]) {
            violations += 1.0;
        }
        if purity(w[1]) >= purity(w[0]) || purity(-w[1]) >= purity(-w[0]) {
            violations += 1.0;
        }
    }
    s.below("entanglement.monotone_in_abs_eta", violations, 0.5);

    let thermal = [0.5, 1.0, 2.0]
        .into_iter()
        .map(|eta| -> Result<f64> {
            let x = effective_temperature(eta, 1.0)?.x;
            Ok((thermal_entropy(x)? - entropy(eta)).abs())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    s.below("entanglement.thermal_entropy_consistency", thermal, 1e-9);
    Ok(())
}

fn covariant_checks(s: &mut Suite, grid: &QuadratureGrid, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut compose = 0.0f64;
    let mut det = 0.0f64;
    let mut interval = 0.0f64;
    let mut covariance = 0.0f64;
    let mut reciprocity = 0.0f64;
    for _ in 0..TRIALS {
        let p = SpacetimePoint::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let a = rng.gen_range(-3.0..3.0);
        let b = rng.gen_range(-3.0..3.0);
        let twice = boost_point(boost_point(p, a), b);
        let once = boost_point(p, a + b);
        compose = compose
            .max((twice.z - once.z).abs().max((twice.t - once.t).abs()) / (1.0 + once.z.abs().max(once.t.abs())));
        det = det.max((BoostMatrix::new(a).determinant() - 1.0).abs());
        let q = boost_point(p, a);
        interval = interval.max((q.interval() - p.interval()).abs() / (1.0 + p.z * p.z + p.t * p.t));
        let small = SpacetimePoint::new(p.z * 0.6, p.t * 0.6);
        let eta = a * 0.66;
        covariance = covariance
            .max((boosted_wavefunction(small, eta) - boosted_wavefunction(boost_point(small, -eta), 0.0)).abs());
        reciprocity = reciprocity.max(
            (boosted_wavefunction(small, eta) - boosted_wavefunction(SpacetimePoint::new(small.z, -small.t), -eta))
                .abs(),
        );
    }
    s.below("covariant.boost_composition", compose, 1e-12);
    s.below("covariant.boost_determinant", det, 1e-12);
    s.below("covariant.interval_invariance", interval, 1e-12);
    s.below("covariant.covariance_identity", covariance, 1e-12);
    s.below("covariant.squeeze_reciprocity", reciprocity, 1e-12);

    let mut bridge = 0.0f64;
    for z in linspace(-3.0, 3.0, 20) {
        for t in linspace(-3.0, 3.0, 20) {
            bridge = bridge.max(
                (boosted_wavefunction(SpacetimePoint::new(z, t), 1.0) - ground_state(OscPoint::new(z, t), 1.0)).abs(),
            );
        }
    }
    s.below("covariant.oscillator_identity", bridge, 1e-14);

    s.below("covariant.fourier_eta_0", fourier_consistency(0.0, grid)?, 1e-8);
    s.below("covariant.fourier_eta_1", fourier_consistency(1.0, grid)?, 1e-6);
    s.below("covariant.fourier_eta_-1", fourier_consistency(-1.0, grid)?, 1e-6);

    let lambda = [(0.0, 0.0), (0.5, -0.2), (-1.0, 0.8), (1.2, 1.1)]
        .into_iter()
        .flat_map(|(z, t)| {
            [0.0, 0.7, -1.3]
                .into_iter()
                .map(move |eta| oscillator_equation_eigenvalue(SpacetimePoint::new(z, t), eta, 1e-3).abs())
        })
        .fold(0.0, f64::max);
    s.below("covariant.invariant_equation_eigenvalue", lambda, 1e-4);
    Ok(())
}

fn parton_checks(s: &mut Suite, grid: &QuadratureGrid) -> Result<()> {
    for eta in [0.0, 0.5, 1.0, 2.0] {
        for axis in [Axis::Z, Axis::Qz] {
            let m = longitudinal_density(eta, axis, grid)?;
            s.below(
                format!("parton.variance_law_{axis}_eta_{eta}"),
                (m.variance - 0.5 * eta.cosh()).abs(),
                1e-6,
            );
        }
    }
    let wide = QuadratureGrid::trapezoid(801, 24.0)?;
    s.above(
        "parton.light_cone_concentration_eta_4",
        light_cone_concentration(4.0, 0.25, &wide)?,
        0.95,
    );

    // width product equals cosh(eta)/2, so it must grow rather than stay at 1/2
    let growth = linspace(0.0, 3.0, 31)
        .map(|eta| (width(eta).powi(2) - 0.5 * eta.cosh()).abs())
        .fold(0.0, f64::max);
    s.below("parton.width_product_cosh", growth, 1e-12);
    s.above(
        "parton.width_product_ratio_eta_2",
        width(2.0).powi(2) / width(0.0).powi(2),
        3.0,
    );
    Ok(())
}

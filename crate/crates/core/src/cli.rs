//! Command-line front end. Argument parsing lives here (rather than in the
//! binary) so every subcommand can be driven from tests.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::covariant::{boosted_wavefunction, momentum_wavefunction, MomentumPoint, SpacetimePoint};
use crate::entanglement::{effective_temperature, entropy, purity, reduced_state, schmidt_coefficients, DEFAULT_KMAX};
use crate::error::{OscError, Result};
use crate::format::{round15, sig15};
use crate::numerics::{oracle_reduced_density, QuadratureGrid, DEFAULT_EXTENT, DEFAULT_NODES};
use crate::oscillator::{normal_modes, CoupledParams};
use crate::parton::{gaussian_pdf_samples, ingest_overlay, longitudinal_density, Axis, PartonTable, Rescale};
use crate::verify::run_suite;

#[derive(Debug, Parser)]
#[command(
    name = "oscbridge",
    version,
    about = "Coupled oscillators, entanglement and Lorentz squeeze"
)]
pub struct Cli {
    #[command(subcommand)]
    pub config: RunConfig,
}

/// One invocation of the tool.
#[derive(Debug, Clone, Subcommand)]
pub enum RunConfig {
    /// Normal-mode data for given mass and stiffnesses.
    Modes(ModesArgs),
    /// Schmidt coefficients, reduced-state spectrum, purity, entropy and temperature.
    Entangle(EntangleArgs),
    /// Boosted space-time and momentum-energy wave functions on a grid.
    Boost(BoostArgs),
    /// Longitudinal parton distribution, optionally beside overlay data.
    Parton(PartonArgs),
    /// Run the full invariant suite and write a JSON report.
    Verify(VerifyArgs),
    /// Tabulate purity, entropy, temperature and widths over a range of eta.
    Sweep(SweepArgs),
    /// Dump the quadrature-traced density kernel as CSV.
    Kernel(KernelArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Nodes per axis.
    #[arg(long = "grid", default_value_t = DEFAULT_NODES)]
    pub nodes: usize,
    /// Half-width L of the box [-L, L].
    #[arg(long, default_value_t = DEFAULT_EXTENT)]
    pub extent: f64,
}

impl GridArgs {
    fn build(&self) -> Result<QuadratureGrid> {
        QuadratureGrid::trapezoid(self.nodes, self.extent)
    }
}

#[derive(Debug, Clone, Args)]
pub struct ModesArgs {
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[arg(long = "A", allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long = "C", allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EntangleArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub eta: f64,
    #[arg(long, default_value_t = DEFAULT_KMAX)]
    pub kmax: usize,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write `k,p_k` rows here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BoostArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub eta: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct PartonArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub eta: f64,
    #[arg(long = "var", default_value = "qz")]
    pub var: String,
    #[arg(long, default_value_t = 201)]
    pub n: usize,
    #[arg(long)]
    pub overlay: Option<PathBuf>,
    /// Cosmetic `<shift>,<scale>` applied to the exported coordinate.
    #[arg(long, allow_hyphen_values = true)]
    pub rescale: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub start: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub stop: f64,
    #[arg(long)]
    pub steps: usize,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct KernelArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub eta: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub out: PathBuf,
}

/// What a successful run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub exit_code: i32,
    /// Text for stdout when no `--out` was given, or a short summary.
    pub stdout: String,
}

impl RunOutcome {
    fn ok(stdout: String) -> Self {
        Self { exit_code: 0, stdout }
    }
}

/// Exit code for an error: 2 for usage problems, 1 otherwise.
pub fn exit_code(err: &OscError) -> i32 {
    match err {
        OscError::Usage(_) => 2,
        _ => 1,
    }
}

pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    match config {
        RunConfig::Modes(args) => run_modes(args),
        RunConfig::Entangle(args) => run_entangle(args),
        RunConfig::Boost(args) => run_boost(args),
        RunConfig::Parton(args) => run_parton(args),
        RunConfig::Verify(args) => run_verify(args),
        RunConfig::Sweep(args) => run_sweep(args),
        RunConfig::Kernel(args) => run_kernel(args),
    }
}

fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(round15(v))
    } else {
        Value::Null
    }
}

fn nums(values: &[f64]) -> Value {
    Value::Array(values.iter().map(|&v| num(v)).collect())
}

fn emit(text: String, out: Option<&Path>) -> Result<RunOutcome> {
    match out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(RunOutcome::ok(format!("wrote {}\n", path.display())))
        }
        None => Ok(RunOutcome::ok(text)),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    let mut file = fs::File::create(path)?;
    file.write_all(text.as_bytes())?;
    Ok(())
}

fn to_json(value: &Value) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn run_modes(args: &ModesArgs) -> Result<RunOutcome> {
    let params = CoupledParams::new(args.m, args.a, args.c)?;
    let nm = normal_modes(&params);
    let value = json!({
        "m": num(args.m),
        "A": num(args.a),
        "C": num(args.c),
        "K": num(nm.k),
        "eta": num(nm.eta),
        "omega": num(nm.omega),
        "omega_plus": num(nm.omega_plus),
        "omega_minus": num(nm.omega_minus),
    });
    emit(to_json(&value)?, args.out.as_deref())
}

fn run_entangle(args: &EntangleArgs) -> Result<RunOutcome> {
    let eta = crate::error::finite(args.eta, "eta")?;
    let expansion = schmidt_coefficients(eta, args.kmax);
    let state = reduced_state(eta, args.kmax);
    let (x, t) = match effective_temperature(eta, args.omega) {
        Ok(map) => (num(map.x), num(map.temperature)),
        // x diverges, T vanishes
        Err(OscError::ZeroTemperature) => (Value::Null, json!(0.0)),
        Err(e) => return Err(e),
    };
    let value = json!({
        "eta": num(eta),
        "k_max": args.kmax,
        "coeffs": nums(&expansion.coeffs),
        "eigenvalues": nums(&state.eigenvalues),
        "tail": num(state.tail),
        "purity": num(purity(eta)),
        "purity_series": num(state.purity),
        "entropy": num(entropy(eta)),
        "entropy_series": num(state.entropy),
        "omega": num(args.omega),
        "x": x,
        "T": t,
    });
    if let Some(path) = &args.csv {
        let mut text = String::from("k,p_k\n");
        for (k, p) in state.eigenvalues.iter().enumerate() {
            text.push_str(&format!("{k},{}\n", sig15(*p)));
        }
        write_file(path, &text)?;
    }
    emit(to_json(&value)?, args.out.as_deref())
}

/// CSV with one row per grid node pair: `z,t,psi,qz,q0,phi`. The momentum
/// grid reuses the same nodes.
pub fn boost_surface_csv(eta: f64, grid: &QuadratureGrid) -> String {
    let nodes = grid.nodes();
    let mut text = String::with_capacity(nodes.len() * nodes.len() * 64);
    text.push_str("z,t,psi,qz,q0,phi\n");
    for &a in nodes {
        for &b in nodes {
            let psi = boosted_wavefunction(SpacetimePoint::new(a, b), eta);
            let phi = momentum_wavefunction(MomentumPoint::new(a, b), eta);
            let (sa, sb) = (sig15(a), sig15(b));
            text.push_str(&format!("{sa},{sb},{},{sa},{sb},{}\n", sig15(psi), sig15(phi)));
        }
    }
    text
}

fn run_boost(args: &BoostArgs) -> Result<RunOutcome> {
    let eta = crate::error::finite(args.eta, "eta")?;
    let grid = args.grid.build()?;
    write_file(&args.out, &boost_surface_csv(eta, &grid))?;
    Ok(RunOutcome::ok(format!("wrote {}\n", args.out.display())))
}

fn run_parton(args: &PartonArgs) -> Result<RunOutcome> {
    let axis: Axis = args.var.parse().map_err(|e: OscError| OscError::Usage(e.to_string()))?;
    let rescale = match &args.rescale {
        Some(s) => s.parse().map_err(|e: OscError| OscError::Usage(e.to_string()))?,
        None => Rescale::IDENTITY,
    };
    let overlay = args.overlay.as_deref().map(ingest_overlay).transpose()?;
    let samples = gaussian_pdf_samples(args.eta, args.n)?;
    let table = PartonTable::new(samples, rescale, overlay.as_ref());
    write_file(&args.out, &table.to_csv())?;
    Ok(RunOutcome::ok(format!(
        "wrote {} ({} marginal)\n",
        args.out.display(),
        axis
    )))
}

fn run_verify(args: &VerifyArgs) -> Result<RunOutcome> {
    let report = run_suite(&args.grid.build()?)?;
    let mut summary = String::new();
    for c in &report.checks {
        summary.push_str(&format!(
            "{} {:<50} measured {:.3e} vs {:.1e}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.measured,
            c.threshold
        ));
    }
    let failed = report.failures().count();
    summary.push_str(&format!("{} checks, {} failed\n", report.checks.len(), failed));
    if let Some(path) = &args.out {
        write_file(path, &to_json(&serde_json::to_value(&report)?)?)?;
    }
    Ok(RunOutcome {
        exit_code: if report.passed { 0 } else { 1 },
        stdout: summary,
    })
}

/// One row of a sweep table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub eta: f64,
    pub purity: f64,
    pub entropy: f64,
    pub temperature: f64,
    pub width_z: f64,
    pub width_qz: f64,
}

/// Evaluates `steps` equally spaced eta values from `start` to `stop`.
/// Points are computed in parallel and returned in eta order.
pub fn sweep(start: f64, stop: f64, steps: usize, omega: f64, grid: &QuadratureGrid) -> Result<Vec<SweepRow>> {
    if steps < 1 {
        return Err(OscError::Usage("steps must be at least 1".into()));
    }
    if start.is_nan() || stop.is_nan() || start > stop {
        return Err(OscError::Usage(format!("start {start} must not exceed stop {stop}")));
    }
    let etas: Vec<f64> = if steps == 1 {
        vec![start]
    } else {
        (0..steps)
            .map(|i| start + (stop - start) * i as f64 / (steps - 1) as f64)
            .collect()
    };
    etas.par_iter()
        .map(|&eta| {
            let temperature = match effective_temperature(eta, omega) {
                Ok(map) => map.temperature,
                Err(OscError::ZeroTemperature) => 0.0,
                Err(e) => return Err(e),
            };
            Ok(SweepRow {
                eta,
                purity: purity(eta),
                entropy: entropy(eta),
                temperature,
                width_z: longitudinal_density(eta, Axis::Z, grid)?.variance.sqrt(),
                width_qz: longitudinal_density(eta, Axis::Qz, grid)?.variance.sqrt(),
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut text = String::from("eta,purity,entropy,T,width_z,width_qz\n");
    for r in rows {
        let fields = [r.eta, r.purity, r.entropy, r.temperature, r.width_z, r.width_qz].map(sig15);
        text.push_str(&fields.join(","));
        text.push('\n');
    }
    text
}

fn run_sweep(args: &SweepArgs) -> Result<RunOutcome> {
    let rows = sweep(args.start, args.stop, args.steps, args.omega, &args.grid.build()?)?;
    emit(sweep_csv(&rows), args.out.as_deref())
}

fn run_kernel(args: &KernelArgs) -> Result<RunOutcome> {
    let kernel = oracle_reduced_density(args.eta, &args.grid.build()?)?;
    let mut buf = Vec::new();
    kernel.write_csv(&mut buf)?;
    fs::write(&args.out, buf)?;
    Ok(RunOutcome::ok(format!("wrote {}\n", args.out.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        Cli::try_parse_from(std::iter::once("oscbridge").chain(args.iter().copied()))
            .unwrap()
            .config
    }

    #[test]
    fn modes_json() {
        let out = run(&parse(&["modes", "--m", "1", "--A", "5", "--C", "-3"])).unwrap();
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["K"], json!(4.0));
        assert_eq!(v["omega"], json!(2.0));
        assert!((v["eta"].as_f64().unwrap() - 0.34657).abs() < 1e-5);
    }

    #[test]
    fn modes_rejects_unstable() {
        let err = run(&parse(&["modes", "--A", "1", "--C", "1"])).unwrap_err();
        assert_eq!(exit_code(&err), 1);
    }

    #[test]
    fn bad_flags_are_usage_errors() {
        assert!(Cli::try_parse_from(["oscbridge", "modes", "--A", "x", "--C", "0"]).is_err());
        assert!(Cli::try_parse_from(["oscbridge", "frobnicate"]).is_err());
        let err = Cli::try_parse_from(["oscbridge", "entangle"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn entangle_at_zero() {
        let out = run(&parse(&["entangle", "--eta", "0"])).unwrap();
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["purity"], json!(1.0));
        assert_eq!(v["entropy"], json!(0.0));
        assert_eq!(v["x"], Value::Null);
        assert_eq!(v["T"], json!(0.0));
        assert_eq!(v["coeffs"].as_array().unwrap().len(), 65);
    }

    #[test]
    fn sweep_rows() {
        let grid = QuadratureGrid::default();
        let rows = sweep(0.0, 0.0, 1, 1.0, &grid).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].entropy, 0.0);
        assert_eq!(rows[0].temperature, 0.0);

        let rows = sweep(0.0, 2.0, 5, 1.0, &grid).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.windows(2).all(|w| w[1].entropy > w[0].entropy));
        assert!(rows.windows(2).all(|w| w[1].width_z > w[0].width_z));
        assert!((rows[4].width_qz - crate::parton::width(2.0)).abs() < 1e-6);

        let err = sweep(2.0, 0.0, 3, 1.0, &grid).unwrap_err();
        assert_eq!(exit_code(&err), 2);
        assert!(sweep(0.0, 1.0, 0, 1.0, &grid).is_err());
    }

    #[test]
    fn sweep_is_deterministic() {
        let grid = QuadratureGrid::trapezoid(201, 8.0).unwrap();
        let a = sweep_csv(&sweep(0.0, 1.5, 7, 1.0, &grid).unwrap());
        let b = sweep_csv(&sweep(0.0, 1.5, 7, 1.0, &grid).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with("eta,purity,entropy,T,width_z,width_qz\n"));
    }

    #[test]
    fn boost_surface_layout() {
        let grid = QuadratureGrid::trapezoid(3, 1.0).unwrap();
        let csv = boost_surface_csv(0.0, &grid);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines.len(), 10);
        assert!(lines[5].starts_with("0,0,0.564189583547756,0,0,0.564189583547756"));
    }

    #[test]
    fn parton_rejects_unknown_variable() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("p.csv");
        let cfg = parse(&["parton", "--eta", "1", "--var", "y", "--out", out.to_str().unwrap()]);
        assert_eq!(exit_code(&run(&cfg).unwrap_err()), 2);
    }
}

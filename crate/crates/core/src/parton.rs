//! Longitudinal projections of the boosted wave functions and the Gaussian
//! parton distribution they produce.
//!
//! Integrating `|psi_eta|^2` over `t` (or `|phi_eta|^2` over `q_0`) leaves a
//! Gaussian of variance `cosh(eta)/2` in `z` (or `q_z`): the quadratic form in
//! the exponent is `cosh(eta)(z^2 + t^2) - 2 sinh(eta) z t`, and completing the
//! square in `t` leaves `z^2 / cosh(eta)`. Both widths grow with the boost.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::covariant::{boosted_wavefunction, momentum_wavefunction, require_resolved, MomentumPoint, SpacetimePoint};
use crate::error::{finite, OscError, Result};
use crate::format::sig15;
use crate::numerics::QuadratureGrid;

/// Half-width of exported distributions, in standard deviations.
pub const EXPORT_HALF_WIDTH_SIGMAS: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Longitudinal separation `z`; `t` is integrated out.
    Z,
    /// Longitudinal relative momentum `q_z`; `q_0` is integrated out.
    Qz,
}

impl Axis {
    pub fn label(&self) -> &'static str {
        match self {
            Axis::Z => "z",
            Axis::Qz => "qz",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Axis {
    type Err = OscError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z" => Ok(Axis::Z),
            "qz" | "q_z" => Ok(Axis::Qz),
            other => Err(OscError::InvalidArgument(format!(
                "unknown variable '{other}', expected z or qz"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarginalDistribution {
    pub axis: Axis,
    pub eta: f64,
    /// `(coordinate, density)` on the grid nodes, unit trapezoid area.
    pub samples: Vec<(f64, f64)>,
    pub variance: f64,
}

/// Marginal of the squared boosted wave function along `axis`, by quadrature
/// over the conjugate axis.
pub fn longitudinal_density(eta: f64, axis: Axis, grid: &QuadratureGrid) -> Result<MarginalDistribution> {
    finite(eta, "eta")?;
    let half = 0.5 * eta.abs();
    require_resolved(
        half.exp() * std::f64::consts::FRAC_1_SQRT_2,
        (-half).exp() * std::f64::consts::FRAC_1_SQRT_2,
        grid,
    )?;

    let nodes = grid.nodes();
    let weights = grid.weights();
    let density_at = |a: f64, b: f64| match axis {
        Axis::Z => boosted_wavefunction(SpacetimePoint::new(a, b), eta).powi(2),
        Axis::Qz => momentum_wavefunction(MomentumPoint::new(a, b), eta).powi(2),
    };
    let raw: Vec<f64> = nodes
        .iter()
        .map(|&a| nodes.iter().zip(weights).map(|(&b, w)| w * density_at(a, b)).sum())
        .collect();
    let area: f64 = raw.iter().zip(weights).map(|(d, w)| d * w).sum();
    let density: Vec<f64> = raw.iter().map(|d| d / area).collect();
    let mean: f64 = nodes
        .iter()
        .zip(weights)
        .zip(&density)
        .map(|((x, w), d)| x * w * d)
        .sum();
    let variance = nodes
        .iter()
        .zip(weights)
        .zip(&density)
        .map(|((x, w), d)| (x - mean).powi(2) * w * d)
        .sum();
    Ok(MarginalDistribution {
        axis,
        eta,
        samples: nodes.iter().copied().zip(density).collect(),
        variance,
    })
}

/// Standard deviation of either longitudinal marginal, `sqrt(cosh(eta)/2)`.
pub fn width(eta: f64) -> f64 {
    (0.5 * eta.cosh()).sqrt()
}

/// Fraction of `|psi_eta|^2` lying within `|minor| < band`, where the minor
/// light-cone coordinate is `v` for `eta >= 0` and `u` otherwise. Computed
/// by quadrature on the `(z, t)` grid.
pub fn light_cone_concentration(eta: f64, band: f64, grid: &QuadratureGrid) -> Result<f64> {
    finite(eta, "eta")?;
    if band.is_nan() || band <= 0.0 {
        return Err(OscError::InvalidArgument(format!("band must be positive, got {band}")));
    }
    let half = 0.5 * eta.abs();
    require_resolved(
        half.exp() * std::f64::consts::FRAC_1_SQRT_2,
        (-half).exp() * std::f64::consts::FRAC_1_SQRT_2,
        grid,
    )?;
    let mut inside = 0.0;
    let mut total = 0.0;
    for (&z, &wz) in grid.nodes().iter().zip(grid.weights()) {
        for (&t, &wt) in grid.nodes().iter().zip(grid.weights()) {
            let p = SpacetimePoint::new(z, t);
            let mass = wz * wt * boosted_wavefunction(p, eta).powi(2);
            total += mass;
            let minor = if eta >= 0.0 { p.v() } else { p.u() };
            if minor.abs() < band {
                inside += mass;
            }
        }
    }
    Ok(inside / total)
}

/// Closed form of [`light_cone_concentration`]: the minor light-cone
/// coordinate is Gaussian with variance `e^{-|eta|}/2`.
pub fn light_cone_concentration_exact(eta: f64, band: f64) -> f64 {
    libm::erf(band * (0.5 * eta.abs()).exp())
}

/// Normalized Gaussian longitudinal marginal sampled at `n` equally spaced
/// points spanning `+-8` standard deviations.
pub fn gaussian_pdf_samples(eta: f64, n: usize) -> Result<Vec<(f64, f64)>> {
    finite(eta, "eta")?;
    if n < 2 {
        return Err(OscError::InvalidArgument(format!("need at least 2 samples, got {n}")));
    }
    let sigma = width(eta);
    let half_width = EXPORT_HALF_WIDTH_SIGMAS * sigma;
    let span = (n - 1) as f64;
    let norm = (2.0 * std::f64::consts::PI).sqrt().recip() / sigma;
    Ok((0..n)
        .map(|i| {
            let x = half_width * (2.0 * i as f64 - span) / span;
            (x, norm * (-0.5 * (x / sigma).powi(2)).exp())
        })
        .collect())
}

/// Writes `coordinate,model_density` rows for the momentum marginal.
pub fn export_gaussian_pdf(eta: f64, n: usize, path: &Path) -> Result<()> {
    let samples = gaussian_pdf_samples(eta, n)?;
    let table = PartonTable::new(samples, Rescale::IDENTITY, None);
    table.write(path)
}

/// Cosmetic affine map `x -> shift + scale * x` applied to exported
/// coordinates for lining them up with overlay data. Densities are divided
/// by `|scale|` so the area stays one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rescale {
    pub shift: f64,
    pub scale: f64,
}

impl Rescale {
    pub const IDENTITY: Rescale = Rescale { shift: 0.0, scale: 1.0 };
}

impl FromStr for Rescale {
    type Err = OscError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || OscError::InvalidArgument(format!("rescale must be '<shift>,<scale>', got '{s}'"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let shift: f64 = a.trim().parse().map_err(|_| bad())?;
        let scale: f64 = b.trim().parse().map_err(|_| bad())?;
        if !shift.is_finite() || !scale.is_finite() || scale == 0.0 {
            return Err(bad());
        }
        Ok(Rescale { shift, scale })
    }
}

/// Externally supplied `(x, value)` series to plot next to the model.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlaySeries {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub provenance: PathBuf,
}

impl OverlaySeries {
    /// Parses CSV text with header `x,value`.
    pub fn parse(text: &str, label: impl Into<String>, provenance: impl Into<PathBuf>) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
        match lines.next() {
            Some((_, header)) if header.trim() == "x,value" => {}
            Some((line, header)) => {
                return Err(OscError::Parse {
                    line,
                    msg: format!("expected header 'x,value', found '{header}'"),
                })
            }
            None => {
                return Err(OscError::Parse {
                    line: 1,
                    msg: "empty file".into(),
                })
            }
        }

        let mut points: Vec<(f64, f64)> = Vec::new();
        for (line, raw) in lines {
            if raw.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = raw.split(',').collect();
            if fields.len() != 2 {
                return Err(OscError::Parse {
                    line,
                    msg: format!("expected 2 fields, found {}", fields.len()),
                });
            }
            let parse = |field: &str, name: &str| -> Result<f64> {
                field.trim().parse::<f64>().map_err(|_| OscError::Parse {
                    line,
                    msg: format!("invalid {name} '{}'", field.trim()),
                })
            };
            let x = parse(fields[0], "x")?;
            let value = parse(fields[1], "value")?;
            if !x.is_finite() || !value.is_finite() {
                return Err(OscError::Validation {
                    line,
                    msg: "non-finite entry".into(),
                });
            }
            if let Some(&(prev, _)) = points.last() {
                if x <= prev {
                    return Err(OscError::Validation {
                        line,
                        msg: format!("abscissa {x} does not increase past {prev}"),
                    });
                }
            }
            points.push((x, value));
        }
        if points.len() < 2 {
            return Err(OscError::Validation {
                line: text.lines().count().max(1),
                msg: format!("need at least 2 rows, found {}", points.len()),
            });
        }
        Ok(Self {
            label: label.into(),
            points,
            provenance: provenance.into(),
        })
    }

    /// Canonical CSV form. Inputs already in shortest round-trip notation
    /// come back byte for byte.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,value\n");
        for (x, v) in &self.points {
            out.push_str(&format!("{x},{v}\n"));
        }
        out
    }

    /// Piecewise-linear value at `x`, `None` outside the sampled range.
    pub fn interpolate(&self, x: f64) -> Option<f64> {
        let (first, last) = (self.points.first()?, self.points.last()?);
        if x < first.0 || x > last.0 {
            return None;
        }
        let idx = self.points.partition_point(|&(px, _)| px <= x);
        if idx == self.points.len() {
            return Some(last.1);
        }
        let (x0, y0) = self.points[idx - 1];
        let (x1, y1) = self.points[idx];
        Some(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
    }
}

pub fn ingest_overlay(path: &Path) -> Result<OverlaySeries> {
    let text = fs::read_to_string(path)?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    OverlaySeries::parse(&text, label, path)
}

/// Model density table with an optional overlay column.
#[derive(Debug, Clone)]
pub struct PartonTable {
    rows: Vec<(f64, f64, Option<f64>)>,
    with_overlay: bool,
}

impl PartonTable {
    pub fn new(samples: Vec<(f64, f64)>, rescale: Rescale, overlay: Option<&OverlaySeries>) -> Self {
        let rows = samples
            .into_iter()
            .map(|(x, d)| {
                let x = rescale.shift + rescale.scale * x;
                let d = d / rescale.scale.abs();
                (x, d, overlay.and_then(|o| o.interpolate(x)))
            })
            .collect();
        Self {
            rows,
            with_overlay: overlay.is_some(),
        }
    }

    pub fn rows(&self) -> &[(f64, f64, Option<f64>)] {
        &self.rows
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("coordinate,model_density");
        if self.with_overlay {
            out.push_str(",overlay_value");
        }
        out.push('\n');
        for (x, d, o) in &self.rows {
            out.push_str(&sig15(*x));
            out.push(',');
            out.push_str(&sig15(*d));
            if self.with_overlay {
                out.push(',');
                if let Some(v) = o {
                    out.push_str(&sig15(*v));
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut file = fs::File::create(path)?;
        file.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rest_frame_marginal() {
        let g = QuadratureGrid::default();
        let m = longitudinal_density(0.0, Axis::Z, &g).unwrap();
        assert_abs_diff_eq!(m.variance, 0.5, epsilon = 1e-10);
        let area: f64 = m.samples.iter().zip(g.weights()).map(|((_, d), w)| d * w).sum();
        assert_abs_diff_eq!(area, 1.0, epsilon = 1e-12);
        assert!(m.samples.iter().all(|&(_, d)| d >= 0.0));
    }

    #[test]
    fn widths_grow_together() {
        let g = QuadratureGrid::default();
        for eta in [0.5, 1.0, 2.0] {
            let z = longitudinal_density(eta, Axis::Z, &g).unwrap();
            let q = longitudinal_density(eta, Axis::Qz, &g).unwrap();
            assert!((z.variance - 0.5 * eta.cosh()).abs() < 1e-6);
            assert!((q.variance - 0.5 * eta.cosh()).abs() < 1e-6);
        }
    }

    #[test]
    fn width_values() {
        assert_abs_diff_eq!(width(0.0), 0.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(width(2.0), 1.3715312047276997, epsilon = 1e-12);
        let widths: Vec<f64> = (0..50).map(|i| width(0.1 * i as f64)).collect();
        assert!(widths.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(width(-1.3), width(1.3));
    }

    #[test]
    fn uncertainty_product_is_not_constant() {
        // position width times momentum width = cosh(eta)/2
        for eta in [0.0, 1.0, 2.0, 3.0] {
            assert_abs_diff_eq!(width(eta) * width(eta), 0.5 * f64::cosh(eta), epsilon = 1e-12);
        }
        assert!(width(2.0).powi(2) > 3.0 * width(0.0).powi(2));
    }

    #[test]
    fn marginal_rejects_unresolved_grid() {
        let g = QuadratureGrid::default();
        assert!(matches!(
            longitudinal_density(4.0, Axis::Qz, &g),
            Err(OscError::UnderResolved(_))
        ));
    }

    #[test]
    fn concentration_matches_closed_form() {
        let g = QuadratureGrid::trapezoid(801, 24.0).unwrap();
        let frac = light_cone_concentration(4.0, 0.25, &g).unwrap();
        assert!(frac > 0.95);
        assert_abs_diff_eq!(frac, light_cone_concentration_exact(4.0, 0.25), epsilon = 5e-3);
        let mirrored = light_cone_concentration(-4.0, 0.25, &g).unwrap();
        assert_abs_diff_eq!(frac, mirrored, epsilon = 1e-12);
        let rest = light_cone_concentration(0.0, 0.25, &QuadratureGrid::default()).unwrap();
        assert!(rest < 0.3);
    }

    #[test]
    fn exported_samples() {
        let s = gaussian_pdf_samples(0.0, 101).unwrap();
        assert_eq!(s.len(), 101);
        assert_eq!(s[50].0, 0.0);
        assert_abs_diff_eq!(s[50].1, 1.0 / std::f64::consts::PI.sqrt(), epsilon = 1e-15);
        for i in 0..50 {
            assert_eq!(s[i].0, -s[100 - i].0);
            assert_eq!(s[i].1, s[100 - i].1);
        }

        let s = gaussian_pdf_samples(4.0, 101).unwrap();
        let h = s[1].0 - s[0].0;
        let area: f64 = s.iter().map(|p| p.1).sum::<f64>() * h - 0.5 * h * (s[0].1 + s[100].1);
        assert!((area - 1.0).abs() < 1e-4);

        assert!(gaussian_pdf_samples(0.0, 1).is_err());
    }

    #[test]
    fn export_writes_csv() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pdf.csv");
        export_gaussian_pdf(1.0, 11, &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("coordinate,model_density\n"));
        assert_eq!(text.lines().count(), 12);
        assert!(export_gaussian_pdf(1.0, 11, &dir.path().join("missing/pdf.csv")).is_err());
    }

    #[test]
    fn overlay_parsing() {
        let s = OverlaySeries::parse("x,value\n0.1,2\n0.5,3.5\n", "d", "d.csv").unwrap();
        assert_eq!(s.points, vec![(0.1, 2.0), (0.5, 3.5)]);

        match OverlaySeries::parse("x,value\n0.1,2\n0.2,abc\n", "d", "d.csv") {
            Err(OscError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match OverlaySeries::parse("x,value\n0.3,2\n0.2,1\n", "d", "d.csv") {
            Err(OscError::Validation { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(OverlaySeries::parse("a,b\n1,2\n2,3\n", "d", "d.csv").is_err());
        assert!(OverlaySeries::parse("x,value\n1,2\n", "d", "d.csv").is_err());
        assert!(OverlaySeries::parse("x,value\n1,2,3\n2,3\n", "d", "d.csv").is_err());
    }

    #[test]
    fn overlay_interpolation() {
        let s = OverlaySeries::parse("x,value\n0,0\n1,10\n3,30\n", "d", "d.csv").unwrap();
        assert_eq!(s.interpolate(0.5), Some(5.0));
        assert_eq!(s.interpolate(3.0), Some(30.0));
        assert_eq!(s.interpolate(2.0), Some(20.0));
        assert_eq!(s.interpolate(-0.1), None);
        assert_eq!(s.interpolate(3.5), None);
    }

    #[test]
    fn rescale_parsing() {
        assert_eq!("0.5,2".parse::<Rescale>().unwrap(), Rescale { shift: 0.5, scale: 2.0 });
        assert!("1".parse::<Rescale>().is_err());
        assert!("1,0".parse::<Rescale>().is_err());
        assert!("a,1".parse::<Rescale>().is_err());
    }

    #[test]
    fn rescaled_table_keeps_unit_area() {
        let samples = gaussian_pdf_samples(1.0, 201).unwrap();
        let table = PartonTable::new(samples, Rescale { shift: 0.3, scale: 0.1 }, None);
        let rows = table.rows();
        let h = rows[1].0 - rows[0].0;
        let area: f64 = rows.iter().map(|r| r.1).sum::<f64>() * h;
        assert_abs_diff_eq!(area, 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(rows[100].0, 0.3, epsilon = 1e-15);
    }
}

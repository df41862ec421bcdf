//! Report assembly and serialization.
//!
//! One [`ReportDocument`] aggregates the renormalization chain, the gauge
//! scan, the lepton moment table, and the g−2 comparison. JSON output
//! writes every real with 17 significant digits (`{:.16e}`), which both
//! round-trips exactly and makes repeated runs byte-identical; CSV output
//! covers gauge scans with the fixed header `m,g_value,residual`.

use crate::gauge::{self, GaugeScanResult};
use crate::moments::{self, GMinus2Comparison, MomentResult, Regime};
use crate::quadrature::QuadratureConfig;
use crate::renorm::{self, Coupling, ZRatioReport};
use serde::{Deserialize, Serialize};
use std::io;

/// Default fermion mass for the Z-ratio chain (the electron, m ≪ 1).
pub const DEFAULT_ZRATIO_MASS: f64 = 5e-4;
pub const DEFAULT_GAUGE_M_MIN: f64 = 0.01;
pub const DEFAULT_GAUGE_M_MAX: f64 = 50.0;
pub const DEFAULT_GAUGE_POINTS: usize = 500;

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Renorm(#[from] renorm::RenormError),
    #[error(transparent)]
    Gauge(#[from] gauge::GaugeError),
    #[error(transparent)]
    Moment(#[from] moments::MomentError),
    #[error("serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
}

/// Everything needed to reproduce a document bit for bit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub alpha_inv_renormalization: f64,
    pub alpha_inv_predictions: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_evaluations: u64,
    pub zratio_mass: f64,
    pub gauge_m_min: f64,
    pub gauge_m_max: f64,
    pub gauge_points: u64,
}

/// Condensed gauge verdict for the aggregate document; the full grid is
/// available separately as CSV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaugeScanSummary {
    pub m_min: f64,
    pub m_max: f64,
    pub points: u64,
    pub max_value_on_grid: f64,
    pub max_residual_on_grid: f64,
    pub bracket_count: u64,
    pub unique_root_at_zero: bool,
}

impl GaugeScanSummary {
    pub fn from_scan(scan: &GaugeScanResult, m_min: f64, m_max: f64) -> Self {
        GaugeScanSummary {
            m_min,
            m_max,
            points: scan.grid.len() as u64,
            max_value_on_grid: scan.max_value_on_grid,
            max_residual_on_grid: scan.max_value_on_grid - std::f64::consts::FRAC_PI_2,
            bracket_count: scan.brackets.len() as u64,
            unique_root_at_zero: scan.unique_root_at_zero,
        }
    }
}

/// One lepton row of the moment table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeptonMoment {
    pub name: String,
    pub moment: MomentResult,
}

/// The full machine-readable result document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub coupling_bare_inv: f64,
    pub z_ratios: ZRatioReport,
    pub gauge_scan: GaugeScanSummary,
    pub lepton_moments: Vec<LeptonMoment>,
    pub g2_comparison: GMinus2Comparison,
    pub config_echo: ConfigEcho,
}

impl ReportDocument {
    /// True iff every quadrature inside the document converged.
    pub fn all_converged(&self) -> bool {
        self.z_ratios.j1.converged
            && self
                .lepton_moments
                .iter()
                .all(|l| l.moment.exact.is_none_or(|q| q.converged))
    }
}

/// Options for [`run_report`]; `None` fields take the documented defaults.
#[derive(Debug, Clone, Copy, Default)]
pub struct ReportOptions {
    /// Overrides the coupling for both flows when set; otherwise the
    /// renormalization chain uses α⁻¹ = 136 and the moment predictions
    /// use α⁻¹ = 137.0359.
    pub alpha_inv: Option<f64>,
    pub rel_tol: Option<f64>,
    pub zratio_mass: Option<f64>,
    pub gauge_m_min: Option<f64>,
    pub gauge_m_max: Option<f64>,
    pub gauge_points: Option<usize>,
}

impl ReportOptions {
    pub fn quadrature_config(&self) -> QuadratureConfig {
        match self.rel_tol {
            Some(rel_tol) => QuadratureConfig::with_rel_tol(rel_tol),
            None => QuadratureConfig::default(),
        }
    }

    fn couplings(&self) -> Result<(Coupling, Coupling), renorm::RenormError> {
        match self.alpha_inv {
            Some(v) => {
                let c = Coupling::from_alpha_inv(v)?;
                Ok((c, c))
            }
            None => Ok((Coupling::BARE, Coupling::EXPERIMENTAL)),
        }
    }
}

/// Runs the whole pipeline and assembles the document.
///
/// A non-converged integral never aborts the run; it is carried in the
/// document's metadata and surfaced by [`ReportDocument::all_converged`].
pub fn run_report(opts: &ReportOptions) -> Result<ReportDocument, ReportError> {
    let cfg = opts.quadrature_config();
    let (bare, predictions) = opts.couplings()?;
    let zratio_mass = opts.zratio_mass.unwrap_or(DEFAULT_ZRATIO_MASS);
    let m_min = opts.gauge_m_min.unwrap_or(DEFAULT_GAUGE_M_MIN);
    let m_max = opts.gauge_m_max.unwrap_or(DEFAULT_GAUGE_M_MAX);
    let points = opts.gauge_points.unwrap_or(DEFAULT_GAUGE_POINTS);

    let z_ratios = renorm::renormalized_alpha_inv(zratio_mass, bare, &cfg)?;
    let scan = gauge::certify_unique_root(m_min, m_max, points)?;
    let lepton_moments = moments::leptons()
        .into_iter()
        .map(|l| {
            moments::lepton_moment(l.mass, predictions, Regime::Auto, &cfg)
                .map(|moment| LeptonMoment { name: l.name, moment })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let g2_comparison = moments::g_minus2_comparison(predictions);

    Ok(ReportDocument {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        coupling_bare_inv: bare.alpha_inv(),
        z_ratios,
        gauge_scan: GaugeScanSummary::from_scan(&scan, m_min, m_max),
        lepton_moments,
        g2_comparison,
        config_echo: ConfigEcho {
            alpha_inv_renormalization: bare.alpha_inv(),
            alpha_inv_predictions: predictions.alpha_inv(),
            rel_tol: cfg.rel_tol,
            abs_tol: cfg.abs_tol,
            max_evaluations: cfg.max_evaluations,
            zratio_mass,
            gauge_m_min: m_min,
            gauge_m_max: m_max,
            gauge_points: points as u64,
        },
    })
}

/// serde_json formatter that renders every f64 with 17 significant digits.
struct SeventeenDigits;

impl serde_json::ser::Formatter for SeventeenDigits {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }
}

/// Serializes any document with 17-significant-digit reals, newline-terminated.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, ReportError> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SeventeenDigits);
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("JSON output is UTF-8"))
}

/// Gauge scan as CSV: header `m,g_value,residual`, one row per grid point,
/// `.` decimal separator, newline-terminated.
pub fn gauge_csv(scan: &GaugeScanResult) -> String {
    let mut out = String::from("m,g_value,residual\n");
    for p in &scan.grid {
        out.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", p.m, p.g_value, p.residual));
    }
    out
}

/// Human-readable rendering of the document.
pub fn to_text(doc: &ReportDocument) -> String {
    let mut s = String::new();
    let z = &doc.z_ratios;
    s.push_str(&format!("nlqed report (v{})\n", doc.tool_version));
    s.push_str(&format!(
        "\ncharge renormalization (bare alpha_inv = {}):\n",
        doc.coupling_bare_inv
    ));
    s.push_str(&format!("  Z1/Z2 at m = {:<12.6e} {:.12}\n", z.mass, z.z1_over_z2));
    s.push_str(&format!("  Z4/Z3                      {:.12}\n", z.z4_over_z3));
    s.push_str(&format!("  (Z2/Z1)^2 Z3/Z4 first order {:.12}\n", z.combined_first_order));
    s.push_str(&format!("  renormalized alpha_inv      {:.6}\n", z.renormalized_alpha_inv));
    s.push_str(&format!(
        "  vertex integral J1          {:.12e} (err {:.2e}, {} evals, converged: {})\n",
        z.j1.value, z.j1.error_estimate, z.j1.evaluations, z.j1.converged
    ));

    let g = &doc.gauge_scan;
    s.push_str(&format!(
        "\ngauge condition on [{}, {}], {} points (log-spaced):\n",
        g.m_min, g.m_max, g.points
    ));
    s.push_str(&format!("  max G(m) on grid            {:.12}\n", g.max_value_on_grid));
    s.push_str(&format!("  max residual G - pi/2       {:.6e}\n", g.max_residual_on_grid));
    s.push_str(&format!("  sign-change brackets        {}\n", g.bracket_count));
    s.push_str(&format!("  unique root at m = 0        {}\n", g.unique_root_at_zero));

    s.push_str(&format!(
        "\nlepton anomalous moments (alpha_inv = {}):\n",
        doc.config_echo.alpha_inv_predictions
    ));
    for l in &doc.lepton_moments {
        let m = &l.moment;
        s.push_str(&format!("  {:<9} m = {:<10}", l.name, m.mass));
        if let Some(q) = m.exact {
            s.push_str(&format!(" exact {:.10e}", q.value));
            if !q.converged {
                s.push_str(" [NOT CONVERGED]");
            }
        }
        if let Some(v) = m.small_m {
            s.push_str(&format!(" small-m {v:.10e}"));
        }
        if let Some(v) = m.large_m {
            s.push_str(&format!(" large-m {v:.10e}"));
        }
        s.push('\n');
    }

    let c = &doc.g2_comparison;
    s.push_str("\nmuon g-2 comparison:\n");
    s.push_str(&format!("  local theory a/2pi+0.76(a/pi)^2  {:.10e}\n", c.local_theory));
    s.push_str(&format!("  experimental                     {:.10e}\n", c.experimental));
    s.push_str(&format!("  difference                       {:.10e}\n", c.difference));
    s.push_str(&format!("  nonlocal muon correction         {:.10e}\n", c.nonlocal_muon_correction));
    s.push_str(&format!("  adjusted difference              {:.10e}\n", c.adjusted_difference));
    s.push_str(&format!(
        "  published values: theory {:.10e}, difference {:.10e}, adjusted {:.10e}\n",
        c.published_local_theory, c.published_difference, c.published_adjusted
    ));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_reproduce_headline_number() {
        let doc = run_report(&ReportOptions::default()).unwrap();
        assert!((doc.z_ratios.renormalized_alpha_inv - 137.0345).abs() < 5e-4);
        assert!(doc.gauge_scan.unique_root_at_zero);
        assert_eq!(doc.lepton_moments.len(), 3);
        assert!(doc.all_converged());
        // Split defaults: bare 136 for the Z chain, 137.0359 for moments.
        assert_eq!(doc.coupling_bare_inv, 136.0);
        assert_eq!(doc.config_echo.alpha_inv_predictions, 137.0359);
    }

    #[test]
    fn alpha_override_applies_everywhere() {
        let opts = ReportOptions { alpha_inv: Some(137.0359), ..Default::default() };
        let doc = run_report(&opts).unwrap();
        assert_eq!(doc.coupling_bare_inv, 137.0359);
        assert!((doc.g2_comparison.local_theory - 0.001_165_511_151_180_28).abs() < 1e-14);
    }

    #[test]
    fn degenerate_gauge_grid() {
        let opts = ReportOptions { gauge_points: Some(2), ..Default::default() };
        let doc = run_report(&opts).unwrap();
        assert_eq!(doc.gauge_scan.points, 2);
        assert!(doc.gauge_scan.unique_root_at_zero);
    }

    #[test]
    fn json_round_trip_is_field_exact() {
        let doc = run_report(&ReportOptions::default()).unwrap();
        let json = to_json(&doc).unwrap();
        let back: ReportDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, back);
    }

    #[test]
    fn json_repeat_runs_are_byte_identical() {
        let opts = ReportOptions::default();
        let a = to_json(&run_report(&opts).unwrap()).unwrap();
        let b = to_json(&run_report(&opts).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn json_uses_seventeen_significant_digits() {
        #[derive(Serialize)]
        struct One {
            x: f64,
        }
        let s = to_json(&One { x: 0.5 }).unwrap();
        assert_eq!(s, "{\"x\":5.0000000000000000e-1}\n");
        let s = to_json(&One { x: f64::NAN }).unwrap();
        assert_eq!(s, "{\"x\":null}\n");
    }

    #[test]
    fn gauge_csv_layout() {
        let scan = crate::gauge::certify_unique_root(0.5, 1.5, 3).unwrap();
        let csv = gauge_csv(&scan);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "m,g_value,residual");
        assert_eq!(lines.len(), 4);
        assert!(csv.ends_with('\n'));
        let first: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(first[0], 0.5);
        assert!((first[1] - first[2] - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn text_rendering_mentions_all_sections() {
        let doc = run_report(&ReportOptions::default()).unwrap();
        let text = to_text(&doc);
        for needle in ["charge renormalization", "gauge condition", "lepton", "g-2"] {
            assert!(text.contains(needle), "missing section {needle}");
        }
    }
}

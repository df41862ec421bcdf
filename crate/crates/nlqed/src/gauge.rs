//! Gauge-invariance condition of the photon self-energy and numerical
//! certification that m = 0 is its only root.
//!
//! The on-shell (k² = 0) reduction of the gauge requirement is the single
//! equation G(m) = π/2 with
//!
//! G(m) = ∫₀^∞ sin x/(x+m²) dx + m²·∫₀^∞ cos x/(x+m²) dx
//!      = f(m²) + m²·g(m²),
//!
//! evaluated through the Si/Ci closed forms of the auxiliaries. G starts
//! at π/2, falls like π/2 − m² for small m, and decays like 2/m², so the
//! residual R(m) = G(m) − π/2 is strictly negative for every m > 0. The
//! certification is a grid scan (log-spaced values plus a uniform
//! sign-change sweep), not a symbolic proof.

use crate::quadrature::{scan_sign_changes, Bracket, QuadratureError};
use crate::specfun::{aux_f_raw, aux_g_raw};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum GaugeError {
    #[error("gauge scan needs 0 < m_min < m_max (finite), got [{m_min}, {m_max}]")]
    InvalidRange { m_min: f64, m_max: f64 },
    #[error("gauge scan needs at least 2 grid points, got {points}")]
    InvalidGrid { points: usize },
}

/// One sampled point of the gauge condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaugePoint {
    pub m: f64,
    pub g_value: f64,
    /// R(m) = G(m) − π/2.
    pub residual: f64,
}

/// Sampled gauge-condition values and the root-existence verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaugeScanResult {
    /// Log-spaced grid, sorted ascending in m.
    pub grid: Vec<GaugePoint>,
    pub max_value_on_grid: f64,
    /// Sign changes of the residual on a uniform grid of the same size.
    pub brackets: Vec<Bracket>,
    /// True iff no bracket was found and every grid value stays below π/2.
    pub unique_root_at_zero: bool,
}

/// Left-hand side G(m) of the gauge condition; G(0) = π/2 by continuity.
pub fn gauge_lhs(m: f64) -> f64 {
    assert!(m.is_finite() && m >= 0.0, "gauge_lhs needs m >= 0, got {m}");
    if m == 0.0 {
        return FRAC_PI_2;
    }
    let a = m * m;
    aux_f_raw(a) + a * aux_g_raw(a)
}

/// Residual R(m) = G(m) − π/2; the root condition is R(m) = 0.
pub fn gauge_residual(m: f64) -> f64 {
    gauge_lhs(m) - FRAC_PI_2
}

/// Scans [m_min, m_max] and certifies, at grid resolution, that the gauge
/// condition has no root there — i.e. that m = 0 is the only solution.
pub fn certify_unique_root(
    m_min: f64,
    m_max: f64,
    points: usize,
) -> Result<GaugeScanResult, GaugeError> {
    if !m_min.is_finite() || !m_max.is_finite() || m_min <= 0.0 || m_min >= m_max {
        return Err(GaugeError::InvalidRange { m_min, m_max });
    }
    if points < 2 {
        return Err(GaugeError::InvalidGrid { points });
    }

    let log_min = m_min.ln();
    let log_step = (m_max.ln() - log_min) / (points - 1) as f64;
    let grid: Vec<GaugePoint> = (0..points)
        .map(|i| {
            let m = if i == 0 {
                m_min
            } else if i + 1 == points {
                m_max
            } else {
                (log_min + i as f64 * log_step).exp()
            };
            let g_value = gauge_lhs(m);
            GaugePoint { m, g_value, residual: g_value - FRAC_PI_2 }
        })
        .collect();

    let max_value_on_grid = grid.iter().map(|p| p.g_value).fold(f64::NEG_INFINITY, f64::max);
    let brackets = scan_sign_changes(gauge_residual, m_min, m_max, points)
        .map_err(|e| match e {
            QuadratureError::InvalidScan { m_min, m_max, .. } => {
                GaugeError::InvalidRange { m_min, m_max }
            }
            _ => GaugeError::InvalidGrid { points },
        })?;
    let unique_root_at_zero = brackets.is_empty() && max_value_on_grid < FRAC_PI_2;

    Ok(GaugeScanResult { grid, max_value_on_grid, brackets, unique_root_at_zero })
}

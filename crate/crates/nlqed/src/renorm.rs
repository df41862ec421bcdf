//! Renormalization-constant ratios and the renormalized fine-structure
//! constant.
//!
//! Only the two ratios Z₁/Z₂ and Z₄/Z₃ are ever represented; the four
//! constants never appear individually. The weight variable of the
//! polarization integrals is written `w` (α_w) throughout because the
//! coupling already owns the symbol α.

use crate::quadrature::{self, QuadratureConfig, QuadratureError, QuadratureResult};
use crate::specfun::x_bessel_k1_raw;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// First-order shift of the inverse coupling: α̃⁻¹ − α⁻¹ = 13/4π.
pub const ALPHA_INV_SHIFT: f64 = 13.0 / (4.0 * PI);

/// The fine-structure constant α = e²/4π, stored as α⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coupling {
    alpha_inv: f64,
}

impl Coupling {
    /// Bare coupling of the theory: α⁻¹ = 136 (the group-dimension value).
    pub const BARE: Coupling = Coupling { alpha_inv: 136.0 };

    /// Experimental value α⁻¹ = 137.0359, the default for moment predictions.
    pub const EXPERIMENTAL: Coupling = Coupling { alpha_inv: 137.0359 };

    pub fn from_alpha_inv(alpha_inv: f64) -> Result<Self, RenormError> {
        if !alpha_inv.is_finite() || alpha_inv <= 0.0 {
            return Err(RenormError::InvalidCoupling(alpha_inv));
        }
        Ok(Coupling { alpha_inv })
    }

    pub fn alpha_inv(&self) -> f64 {
        self.alpha_inv
    }

    pub fn alpha(&self) -> f64 {
        1.0 / self.alpha_inv
    }

    /// e² = 4πα; the squared charge never appears on its own elsewhere.
    pub fn e_squared(&self) -> f64 {
        4.0 * PI * self.alpha()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum RenormError {
    #[error("coupling alpha_inv must be positive and finite, got {0}")]
    InvalidCoupling(f64),
    #[error("mass must be positive and finite, got {0}")]
    InvalidMass(f64),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("sigma moment at weight {weight} did not converge")]
    SigmaMomentNotConverged { weight: f64 },
    #[error("sigma moment at weight {weight}: got {observed}, expected {expected} (rel 1e-8)")]
    SigmaMomentMismatch { weight: f64, observed: f64, expected: f64 },
    #[error("weight integral did not converge")]
    WeightIntegralNotConverged,
}

/// Z-ratios and the renormalized inverse coupling at a given fermion mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZRatioReport {
    pub alpha_inv: f64,
    pub mass: f64,
    pub z1_over_z2: f64,
    pub z4_over_z3: f64,
    /// 1 + 13α/4π, the first-order combination (Z₂/Z₁)²·Z₃/Z₄.
    pub combined_first_order: f64,
    /// Diagnostic: the unexpanded product (1+3α/π)(1+α/4π).
    pub combined_exact_product: f64,
    /// α̃⁻¹ = α⁻¹ + 13/4π (first-order additive form, the normative one).
    pub renormalized_alpha_inv: f64,
    /// Metadata of the vertex integral behind `z1_over_z2`.
    pub j1: QuadratureResult,
}

/// Photon form factor ρ(p²) = sin(p²)/p², with the removable singularity
/// at p² = 0 evaluated by series for |p²| < 1e-4.
pub fn rho_photon(p2: f64) -> f64 {
    debug_assert!(p2.is_finite());
    if p2.abs() < 1e-4 {
        let y2 = p2 * p2;
        1.0 - y2 / 6.0 + y2 * y2 / 120.0
    } else {
        p2.sin() / p2
    }
}

/// Vertex integral J₁(m) = m²·∫₀¹ z(1+z)·K₁(m²z) dz.
///
/// Evaluated through the bounded kernel z·K₁(m²z) = x·K₁(x)/m², which is
/// finite all the way to z → 0. Tends to 3/2 as m → 0 and to
/// (π/2 + 2/m²)/m² for m ≫ 1.
pub fn j1_integral(m: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult, RenormError> {
    if !m.is_finite() || m <= 0.0 {
        return Err(RenormError::InvalidMass(m));
    }
    let m2 = m * m;
    let r = quadrature::integrate_finite(
        |z| (1.0 + z) * x_bessel_k1_raw(m2 * z),
        0.0,
        1.0,
        cfg,
    )?;
    Ok(r)
}

/// Z₁/Z₂ = 1 − (α/π)·J₁(m).
///
/// Reproduces both limits: 1 − 3α/2π for m ≪ 1 and 1 − α/2m² for m ≫ 1.
/// The convergence flag and error estimate of the underlying integral are
/// passed through (error scaled by the α/π prefactor).
pub fn z1_over_z2(
    m: f64,
    coupling: Coupling,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult, RenormError> {
    let j1 = j1_integral(m, cfg)?;
    let scale = coupling.alpha() / PI;
    Ok(QuadratureResult {
        value: 1.0 - scale * j1.value,
        error_estimate: scale * j1.error_estimate,
        evaluations: j1.evaluations,
        converged: j1.converged,
    })
}

/// On-shell polarization coefficient for spin-½ pair production:
/// I^(1/2)(0) = −e²/48π² = −α/12π.
pub fn i_half_on_shell(coupling: Coupling) -> f64 {
    -coupling.alpha() / (12.0 * PI)
}

/// On-shell polarization coefficient for spin-0 pair production:
/// I^(0)(0) = −e²/24π² = −α/6π.
pub fn i_zero_on_shell(coupling: Coupling) -> f64 {
    -coupling.alpha() / (6.0 * PI)
}

/// Z₄/Z₃ = 1 + I^(1/2)(0) + I^(0)(0) = 1 − α/4π.
pub fn z4_over_z3(coupling: Coupling) -> f64 {
    let value = 1.0 - coupling.alpha() / (4.0 * PI);
    let via_sum = 1.0 + i_half_on_shell(coupling) + i_zero_on_shell(coupling);
    debug_assert!(
        (value - via_sum).abs() <= 4.0 * f64::EPSILON,
        "closed form and coefficient sum disagree: {value} vs {via_sum}"
    );
    value
}

/// One σ-moment confirmation at a positive weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmaMomentCheck {
    pub weight: f64,
    /// ∫₀^∞ σ(σ+w)⁻³ dσ by quadrature; closed form 1/(2w).
    pub cubic: QuadratureResult,
    pub cubic_closed_form: f64,
    /// ∫₀^∞ σ²(σ+w)⁻⁴ dσ by quadrature; closed form 1/(3w).
    pub quartic: QuadratureResult,
    pub quartic_closed_form: f64,
}

/// The two dimensionless on-shell coefficients I(0)/e² rebuilt by explicit
/// integration, with the σ-moment confirmations that back them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OnShellCoefficients {
    /// Target −1/48π².
    pub spin_half: f64,
    /// Target −1/24π².
    pub spin_zero: f64,
    pub sigma_checks: Vec<SigmaMomentCheck>,
}

const SIGMA_CHECK_WEIGHTS: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 1.0];
const SIGMA_CHECK_REL_TOL: f64 = 1e-8;

/// Rebuilds (−1/48π², −1/24π²) by explicit integration.
///
/// The z-integrals are done analytically (∫₀¹(1/2 − 2σz/(σ+w))dz =
/// 1/2 − σ/(σ+w) for spin ½, ∫₀¹ z dz = 1/2 for spin 0). The σ-integrals
/// are confirmed by semi-infinite quadrature against their closed forms
/// 1/(2w) and 1/(3w) at sampled positive weights, then extended to w < 0
/// by analytic continuation of those closed forms — the unique
/// prescription that keeps the weight integrand finite (it becomes the
/// constant −1/24 per unit weight for spin ½, +1/12 for spin 0). The
/// final weight integral runs over w ∈ [−1, 1] with measure w·dw/2.
pub fn verify_i_on_shell_by_quadrature(
    cfg: &QuadratureConfig,
) -> Result<OnShellCoefficients, RenormError> {
    let mut sigma_checks = Vec::with_capacity(SIGMA_CHECK_WEIGHTS.len());
    for &w in &SIGMA_CHECK_WEIGHTS {
        let cubic = quadrature::integrate_semi_infinite(|s| s / (s + w).powi(3), 0.0, cfg)?;
        let quartic =
            quadrature::integrate_semi_infinite(|s| s * s / (s + w).powi(4), 0.0, cfg)?;
        if !cubic.converged || !quartic.converged {
            return Err(RenormError::SigmaMomentNotConverged { weight: w });
        }
        let cubic_cf = sigma_cubic_closed_form(w);
        let quartic_cf = sigma_quartic_closed_form(w);
        for (observed, expected) in [(cubic.value, cubic_cf), (quartic.value, quartic_cf)] {
            if ((observed - expected) / expected).abs() > SIGMA_CHECK_REL_TOL {
                return Err(RenormError::SigmaMomentMismatch { weight: w, observed, expected });
            }
        }
        sigma_checks.push(SigmaMomentCheck {
            weight: w,
            cubic,
            cubic_closed_form: cubic_cf,
            quartic,
            quartic_closed_form: quartic_cf,
        });
    }

    // Weight integrands via the analytically continued closed forms; the
    // w = 0 node takes the (removable) limit value.
    let half = quadrature::integrate_finite(spin_half_weight_integrand, -1.0, 1.0, cfg)?;
    let zero = quadrature::integrate_finite(spin_zero_weight_integrand, -1.0, 1.0, cfg)?;
    if !half.converged || !zero.converged {
        return Err(RenormError::WeightIntegralNotConverged);
    }
    let norm = 1.0 / (4.0 * PI * PI);
    Ok(OnShellCoefficients {
        spin_half: norm * half.value,
        spin_zero: -norm * zero.value,
        sigma_checks,
    })
}

fn sigma_cubic_closed_form(w: f64) -> f64 {
    0.5 / w
}

fn sigma_quartic_closed_form(w: f64) -> f64 {
    1.0 / (3.0 * w)
}

/// (w/2)·[½·∫σ(σ+w)⁻³ − ∫σ²(σ+w)⁻⁴] via continued closed forms; constant −1/24.
fn spin_half_weight_integrand(w: f64) -> f64 {
    if w == 0.0 {
        return -1.0 / 24.0;
    }
    (w / 2.0) * (0.5 * sigma_cubic_closed_form(w) - sigma_quartic_closed_form(w))
}

/// (w/2)·½·∫σ²(σ+w)⁻⁴ via the continued closed form; constant 1/12.
fn spin_zero_weight_integrand(w: f64) -> f64 {
    if w == 0.0 {
        return 1.0 / 12.0;
    }
    (w / 2.0) * 0.5 * sigma_quartic_closed_form(w)
}

/// Full Z-ratio report: both ratios, the first-order combination, and
/// α̃⁻¹ = α⁻¹ + 13/4π.
///
/// The additive form is normative; the unexpanded ratio product is kept
/// as a diagnostic only.
pub fn renormalized_alpha_inv(
    mass: f64,
    coupling: Coupling,
    cfg: &QuadratureConfig,
) -> Result<ZRatioReport, RenormError> {
    let j1 = j1_integral(mass, cfg)?;
    let alpha = coupling.alpha();
    Ok(ZRatioReport {
        alpha_inv: coupling.alpha_inv(),
        mass,
        z1_over_z2: 1.0 - (alpha / PI) * j1.value,
        z4_over_z3: z4_over_z3(coupling),
        combined_first_order: 1.0 + 13.0 * alpha / (4.0 * PI),
        combined_exact_product: (1.0 + 3.0 * alpha / PI) * (1.0 + alpha / (4.0 * PI)),
        renormalized_alpha_inv: coupling.alpha_inv() + ALPHA_INV_SHIFT,
        j1,
    })
}

//! Self-verification: every acceptance check with its pinned tolerance,
//! plus the independent reference oracles the checks compare against.
//!
//! The oracles deliberately avoid the production code paths: tanh-sinh
//! quadrature instead of Gauss–Kronrod, and the defining integral
//! representation of K₁ instead of the series/continued-fraction split.

use crate::gauge;
use crate::moments;
use crate::quadrature::{self, QuadratureConfig};
use crate::renorm::{self, Coupling, ALPHA_INV_SHIFT};
use crate::report::{self, ReportOptions};
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

/// Result of one verification check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub description: &'static str,
    pub observed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckOutcome {
    fn within(
        id: &'static str,
        description: &'static str,
        observed: f64,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        let passed = (observed - expected).abs() <= tolerance;
        CheckOutcome { id, description, observed, expected, tolerance, passed }
    }

    fn within_relative(
        id: &'static str,
        description: &'static str,
        observed: f64,
        expected: f64,
        rel_tolerance: f64,
    ) -> Self {
        let passed = ((observed - expected) / expected).abs() <= rel_tolerance;
        CheckOutcome { id, description, observed, expected, tolerance: rel_tolerance, passed }
    }

    fn below(id: &'static str, description: &'static str, observed: f64, limit: f64) -> Self {
        CheckOutcome {
            id,
            description,
            observed,
            expected: limit,
            tolerance: 0.0,
            passed: observed < limit,
        }
    }

    fn failed(id: &'static str, description: &'static str) -> Self {
        CheckOutcome {
            id,
            description,
            observed: f64::NAN,
            expected: f64::NAN,
            tolerance: 0.0,
            passed: false,
        }
    }
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} [{:>3}] {}: observed {:.12e}, expected {:.12e}, tol {:.1e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.description,
            self.observed,
            self.expected,
            self.tolerance
        )
    }
}

/// Runs the complete acceptance suite in order.
pub fn run_acceptance() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    out.extend(criterion_1_renormalized_constant());
    out.extend(criterion_2_on_shell_coefficients());
    out.extend(criterion_3_vertex_ratio_branches());
    out.extend(criterion_4_gauge_condition());
    out.push(criterion_5_schwinger_limit());
    out.extend(criterion_6_muon_correction());
    out.push(criterion_7_electron_correction());
    out.push(criterion_8_tau_prediction());
    out.extend(criterion_9_local_theory_fixture());
    out.extend(criterion_10_property_suites());
    out
}

/// Criterion 1: α̃⁻¹(136) = 137.0345 ± 5e-4, shift exactly 13/4π.
pub fn criterion_1_renormalized_constant() -> Vec<CheckOutcome> {
    let cfg = QuadratureConfig::default();
    let Ok(report) = renorm::renormalized_alpha_inv(5e-4, Coupling::BARE, &cfg) else {
        return vec![CheckOutcome::failed("1a", "renormalized alpha_inv")];
    };
    vec![
        CheckOutcome::within(
            "1a",
            "renormalized alpha_inv at bare 136",
            report.renormalized_alpha_inv,
            137.0345,
            5e-4,
        ),
        CheckOutcome::within(
            "1b",
            "shift alpha_inv_tilde - alpha_inv equals 13/4pi",
            report.renormalized_alpha_inv - report.alpha_inv,
            ALPHA_INV_SHIFT,
            1e-13,
        ),
    ]
}

/// Criterion 2: quadrature rebuild of (−1/48π², −1/24π²) to rel 1e-8.
pub fn criterion_2_on_shell_coefficients() -> Vec<CheckOutcome> {
    let cfg = QuadratureConfig::default();
    let Ok(coeffs) = renorm::verify_i_on_shell_by_quadrature(&cfg) else {
        return vec![CheckOutcome::failed("2a", "on-shell polarization coefficients")];
    };
    vec![
        CheckOutcome::within_relative(
            "2a",
            "spin-1/2 on-shell coefficient -1/48pi^2",
            coeffs.spin_half,
            -1.0 / (48.0 * PI * PI),
            1e-8,
        ),
        CheckOutcome::within_relative(
            "2b",
            "spin-0 on-shell coefficient -1/24pi^2",
            coeffs.spin_zero,
            -1.0 / (24.0 * PI * PI),
            1e-8,
        ),
    ]
}

/// Criterion 3: both published limits of the Z₁/Z₂ formula.
pub fn criterion_3_vertex_ratio_branches() -> Vec<CheckOutcome> {
    let cfg = QuadratureConfig::default();
    let c = Coupling::BARE;
    let mut out = Vec::new();
    match renorm::z1_over_z2(1e-3, c, &cfg) {
        Ok(r) => out.push(CheckOutcome::within(
            "3a",
            "Z1/Z2 small-mass branch 1 - 3a/2pi",
            r.value,
            1.0 - 3.0 * c.alpha() / (2.0 * PI),
            1e-7,
        )),
        Err(_) => out.push(CheckOutcome::failed("3a", "Z1/Z2 small-mass branch")),
    }
    match renorm::z1_over_z2(30.0, c, &cfg) {
        Ok(r) => out.push(CheckOutcome::within_relative(
            "3b",
            "Z1/Z2 large-mass correction a/2m^2",
            1.0 - r.value,
            c.alpha() / (2.0 * 900.0),
            0.02,
        )),
        Err(_) => out.push(CheckOutcome::failed("3b", "Z1/Z2 large-mass branch")),
    }
    out
}

/// Criterion 4: G(0) = π/2 exactly; no root on [0.01, 50]; G(1) fixture.
pub fn criterion_4_gauge_condition() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let g0 = gauge::gauge_lhs(0.0);
    out.push(CheckOutcome {
        id: "4a",
        description: "gauge LHS at m = 0 equals pi/2 exactly",
        observed: g0,
        expected: FRAC_PI_2,
        tolerance: 0.0,
        passed: g0 == FRAC_PI_2,
    });
    match gauge::certify_unique_root(0.01, 50.0, 500) {
        Ok(scan) => {
            out.push(CheckOutcome::within(
                "4b",
                "sign-change brackets on [0.01, 50] (500 points)",
                scan.brackets.len() as f64,
                0.0,
                0.0,
            ));
            let max_residual =
                scan.grid.iter().map(|p| p.residual).fold(f64::NEG_INFINITY, f64::max);
            out.push(CheckOutcome::below(
                "4c",
                "max gauge residual on grid (must stay negative)",
                max_residual,
                0.0,
            ));
        }
        Err(_) => out.push(CheckOutcome::failed("4b", "gauge scan")),
    }
    out.push(CheckOutcome::within(
        "4d",
        "G(1) against the Ci/Si oracle fixture",
        gauge::gauge_lhs(1.0),
        0.9648,
        1e-3,
    ));
    out
}

/// Criterion 5: Schwinger limit, Δμ(1e-4)·2π/α = 1 ± 1e-6.
pub fn criterion_5_schwinger_limit() -> CheckOutcome {
    let cfg = QuadratureConfig::default();
    let c = Coupling::EXPERIMENTAL;
    match moments::anomalous_moment_exact(1e-4, c, &cfg) {
        Ok(r) => CheckOutcome::within(
            "5",
            "Schwinger limit: exact moment at m = 1e-4 times 2pi/alpha",
            r.value * 2.0 * PI / c.alpha(),
            1.0,
            1e-6,
        ),
        Err(_) => CheckOutcome::failed("5", "Schwinger limit"),
    }
}

/// Criterion 6: muon correction −5.6e-8 ± 0.1e-8, matched by quadrature to 5%.
pub fn criterion_6_muon_correction() -> Vec<CheckOutcome> {
    let cfg = QuadratureConfig::with_rel_tol(1e-12);
    let c = Coupling::EXPERIMENTAL;
    let schwinger = moments::schwinger_term(c);
    let small_corr = moments::anomalous_moment_small_m(0.1, c) - schwinger;
    let mut out = vec![CheckOutcome::within(
        "6a",
        "muon small-m correction",
        small_corr,
        -5.6e-8,
        0.1e-8,
    )];
    match moments::anomalous_moment_exact(0.1, c, &cfg) {
        Ok(r) => {
            let exact_corr = r.value - schwinger;
            out.push(CheckOutcome::within(
                "6b",
                "exact quadrature reproduces the muon correction (5%)",
                exact_corr,
                small_corr,
                0.05 * small_corr.abs(),
            ));
        }
        Err(_) => out.push(CheckOutcome::failed("6b", "exact muon correction")),
    }
    out
}

/// Criterion 7: electron correction via the expansion, −9.8e-17 ± 0.3e-17.
///
/// Deliberately never checked by double-precision quadrature: the
/// correction sits ~14 orders below the leading term.
pub fn criterion_7_electron_correction() -> CheckOutcome {
    // The correction term is formed directly rather than by subtracting
    // the assembled moment from alpha/2pi, which would only recover it to
    // half an ulp of the leading term.
    let c = Coupling::EXPERIMENTAL;
    let corr = moments::schwinger_term(c) * moments::small_m_relative_correction(5e-4);
    CheckOutcome::within("7", "electron small-m correction", corr, -9.8e-17, 0.3e-17)
}

/// Criterion 8: tau prediction α/2m² = 0.001151584 ± 2e-9.
pub fn criterion_8_tau_prediction() -> CheckOutcome {
    let c = Coupling::EXPERIMENTAL;
    CheckOutcome::within(
        "8",
        "tau (g-2)/2 prediction at m = 1.78",
        moments::anomalous_moment_large_m(1.78, c),
        0.001_151_584,
        2e-9,
    )
}

/// Criterion 9: the published local-theory fixture at α⁻¹ = 137.0359.
///
/// Exact evaluation of α/2π + 0.76(α/π)² at α⁻¹ = 137.0359 gives
/// 0.00116551115118…, which misses the published 0.0011655102 by 9.5e-10
/// (those digits correspond to α⁻¹ ≈ 137.03601). The checks stay
/// pinned to the published digits; they fail honestly rather than being
/// loosened to match.
pub fn criterion_9_local_theory_fixture() -> Vec<CheckOutcome> {
    let g2 = moments::g_minus2_comparison(Coupling::EXPERIMENTAL);
    vec![
        CheckOutcome::within(
            "9a",
            "local-theory a/2pi + 0.76(a/pi)^2 vs published value",
            g2.local_theory,
            moments::G2_PUBLISHED_LOCAL_THEORY,
            1e-10,
        ),
        CheckOutcome::within(
            "9b",
            "experiment - theory vs published difference",
            g2.difference,
            moments::G2_PUBLISHED_DIFFERENCE,
            1e-9,
        ),
    ]
}

/// Criterion 10: property suites — quadrature additivity and linearity,
/// K₁ against its integral-representation oracle, the two Bessel moments,
/// and byte-identical repeat runs.
pub fn criterion_10_property_suites() -> Vec<CheckOutcome> {
    let cfg = QuadratureConfig::default();
    let mut out = Vec::new();

    // 10a: interval additivity on a deterministic case set.
    type Case = (fn(f64) -> f64, f64, f64, f64);
    let additivity_cases: [Case; 3] = [
        (|x| x.exp(), 0.0, 2.0, 0.7),
        (|x| 1.0 / (1.0 + x * x), -3.0, 5.0, 0.5),
        (|x| (3.0 * x).sin() * x, 0.0, 7.0, 4.2),
    ];
    let mut worst = 0.0_f64;
    let mut ok = true;
    for (f, a, b, c) in additivity_cases {
        let (Ok(whole), Ok(left), Ok(right)) = (
            quadrature::integrate_finite(f, a, b, &cfg),
            quadrature::integrate_finite(f, a, c, &cfg),
            quadrature::integrate_finite(f, c, b, &cfg),
        ) else {
            ok = false;
            break;
        };
        let diff = (whole.value - left.value - right.value).abs();
        let budget =
            3.0 * (whole.error_estimate + left.error_estimate + right.error_estimate);
        worst = worst.max(diff / budget.max(1e-300));
    }
    out.push(CheckOutcome {
        id: "10a",
        description: "quadrature additivity |I(a,b)-I(a,c)-I(c,b)| within 3x error budget",
        observed: worst,
        expected: 1.0,
        tolerance: 0.0,
        passed: ok && worst <= 1.0,
    });

    // 10b: linearity of the integral.
    let f = |x: f64| x.exp();
    let g = |x: f64| (2.5 * x).cos();
    let (alpha, beta) = (2.25, -0.75);
    let combo = quadrature::integrate_finite(|x| alpha * f(x) + beta * g(x), 0.0, 3.0, &cfg);
    let fi = quadrature::integrate_finite(f, 0.0, 3.0, &cfg);
    let gi = quadrature::integrate_finite(g, 0.0, 3.0, &cfg);
    match (combo, fi, gi) {
        (Ok(combo), Ok(fi), Ok(gi)) => {
            let diff = (combo.value - alpha * fi.value - beta * gi.value).abs();
            let budget = combo.error_estimate
                + alpha.abs() * fi.error_estimate
                + beta.abs() * gi.error_estimate
                + 1e-12;
            out.push(CheckOutcome {
                id: "10b",
                description: "quadrature linearity within combined tolerances",
                observed: diff,
                expected: budget,
                tolerance: 0.0,
                passed: diff <= budget,
            });
        }
        _ => out.push(CheckOutcome::failed("10b", "quadrature linearity")),
    }

    // 10c: K1 against the integral-representation oracle on [1e-6, 50].
    let mut max_rel = 0.0_f64;
    for i in 0..=30 {
        let x = 1e-6 * (5e7_f64).powf(i as f64 / 30.0);
        let reference = reference::bessel_k1_integral(x);
        let produced = crate::specfun::bessel_k1(x).expect("grid is positive");
        max_rel = max_rel.max(((produced - reference) / reference).abs());
    }
    out.push(CheckOutcome {
        id: "10c",
        description: "K1 vs integral-representation oracle, max relative deviation",
        observed: max_rel,
        expected: 0.0,
        tolerance: 1e-10,
        passed: max_rel <= 1e-10,
    });

    // 10d/10e: Bessel moments.
    match quadrature::integrate_semi_infinite(
        |u| crate::specfun::x_bessel_k1(u).expect("u > 0"),
        0.0,
        &cfg,
    ) {
        Ok(r) => out.push(CheckOutcome::within(
            "10d",
            "first Bessel moment: integral of u*K1 equals pi/2",
            r.value,
            FRAC_PI_2,
            1e-9,
        )),
        Err(_) => out.push(CheckOutcome::failed("10d", "first Bessel moment")),
    }
    match quadrature::integrate_semi_infinite(
        |u| u * crate::specfun::x_bessel_k1(u).expect("u > 0"),
        0.0,
        &cfg,
    ) {
        Ok(r) => out.push(CheckOutcome::within(
            "10e",
            "second Bessel moment: integral of u^2*K1 equals 2",
            r.value,
            2.0,
            1e-9,
        )),
        Err(_) => out.push(CheckOutcome::failed("10e", "second Bessel moment")),
    }

    // 10f: determinism — repeat report runs must serialize identically.
    let opts = ReportOptions::default();
    let passed = match (report::run_report(&opts), report::run_report(&opts)) {
        (Ok(a), Ok(b)) => match (report::to_json(&a), report::to_json(&b)) {
            (Ok(ja), Ok(jb)) => ja == jb,
            _ => false,
        },
        _ => false,
    };
    out.push(CheckOutcome {
        id: "10f",
        description: "byte-identical repeated report runs",
        observed: if passed { 0.0 } else { 1.0 },
        expected: 0.0,
        tolerance: 0.0,
        passed,
    });

    out
}

/// Independent numerical oracles, kept apart from every production path.
pub mod reference {
    use std::f64::consts::FRAC_PI_2;

    /// Tanh-sinh (double-exponential) quadrature on a finite interval.
    ///
    /// Refines the step until two successive levels agree to ~1e-14 or
    /// twelve halvings are exhausted; endpoint singularities integrable
    /// in the double-exponential sense are handled without special cases.
    pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        if half == 0.0 {
            return 0.0;
        }
        let mut h = 1.0_f64;
        let mut prev = f64::INFINITY;
        let mut result = 0.0;
        for level in 0..=12 {
            let mut sum = FRAC_PI_2 * f(mid);
            let mut k = 1u64;
            loop {
                let t = k as f64 * h;
                let u = FRAC_PI_2 * t.sinh();
                if u > 350.0 {
                    break;
                }
                let offset = u.tanh();
                if offset >= 1.0 {
                    break;
                }
                let ch = u.cosh();
                let weight = FRAC_PI_2 * t.cosh() / (ch * ch);
                if weight < 1e-300 {
                    break;
                }
                sum += weight * (f(mid + half * offset) + f(mid - half * offset));
                k += 1;
                if k > 20_000 {
                    break;
                }
            }
            result = sum * h * half;
            if level > 0 && (result - prev).abs() <= 1e-14 * result.abs().max(1e-30) {
                break;
            }
            prev = result;
            h *= 0.5;
        }
        result
    }

    /// K₁ from its defining integral ∫₀^∞ e^(−x·cosh t)·cosh t dt.
    ///
    /// The upper limit is cut where the exponent reaches −745 (below the
    /// smallest subnormal), so the truncation error is identically zero
    /// in f64.
    pub fn bessel_k1_integral(x: f64) -> f64 {
        assert!(x > 0.0 && x.is_finite());
        let c = 745.0 / x;
        if c <= 1.0 {
            return 0.0;
        }
        let t_max = (c + (c * c - 1.0).sqrt()).ln();
        tanh_sinh(|t| (-x * t.cosh()).exp() * t.cosh(), 0.0, t_max)
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_complete_and_ordered() {
        let outcomes = run_acceptance();
        let ids: Vec<&str> = outcomes.iter().map(|o| o.id).collect();
        assert_eq!(
            ids,
            vec![
                "1a", "1b", "2a", "2b", "3a", "3b", "4a", "4b", "4c", "4d", "5", "6a", "6b",
                "7", "8", "9a", "9b", "10a", "10b", "10c", "10d", "10e", "10f"
            ]
        );
    }

    #[test]
    fn display_shows_verdict_and_numbers() {
        let line = criterion_8_tau_prediction().to_string();
        assert!(line.starts_with("PASS") || line.starts_with("FAIL"));
        assert!(line.contains("observed"));
        assert!(line.contains("tol"));
    }

    #[test]
    fn mutation_sanity_perturbed_shift_fails() {
        // A perturbed 13/4pi must trip the machine-precision shift check.
        let perturbed = ALPHA_INV_SHIFT + 1e-9;
        let outcome = CheckOutcome::within(
            "1b",
            "shift alpha_inv_tilde - alpha_inv equals 13/4pi",
            perturbed,
            ALPHA_INV_SHIFT,
            1e-13,
        );
        assert!(!outcome.passed);
    }
}

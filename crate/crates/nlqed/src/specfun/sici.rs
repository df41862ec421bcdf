//! Sine and cosine integrals and the auxiliary functions
//! f(a) = ∫₀^∞ sin x/(x+a) dx and g(a) = ∫₀^∞ cos x/(x+a) dx.
//!
//! Si and Ci use their power series for x ≤ 8. Above that the pair (g, f)
//! is evaluated directly as the complex continued fraction
//! g(x) + i·f(x) = 1/(z+1 − 1²/(z+3 − 2²/(z+5 − …))) at z = −ix
//! (the exponential-integral fraction), and Si, Ci follow from
//! Si = π/2 − f·cos − g·sin, Ci = f·sin − g·cos.
//!
//! The production auxiliaries `aux_f`/`aux_g` always go through the Si/Ci
//! closed forms; no semi-infinite oscillatory quadrature is ever used.

use super::{SpecFunError, EULER_GAMMA};
use std::f64::consts::FRAC_PI_2;

const SERIES_CUTOFF: f64 = 8.0;
const SERIES_MAX_TERMS: usize = 80;
const CF_MAX_ITER: usize = 2000;

/// Si(x) = ∫₀ˣ sin t/t dt for x ≥ 0.
pub fn sin_integral(x: f64) -> Result<f64, SpecFunError> {
    if !x.is_finite() || x < 0.0 {
        return Err(SpecFunError {
            function: "sin_integral",
            argument: x,
            requirement: "non-negative and finite",
        });
    }
    if x <= SERIES_CUTOFF {
        Ok(si_series(x))
    } else {
        let (f, g) = aux_pair_cf(x);
        let (s, c) = x.sin_cos();
        Ok(FRAC_PI_2 - f * c - g * s)
    }
}

/// Ci(x) = γ + ln x + ∫₀ˣ (cos t − 1)/t dt for x > 0.
pub fn cos_integral(x: f64) -> Result<f64, SpecFunError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(SpecFunError {
            function: "cos_integral",
            argument: x,
            requirement: "positive and finite",
        });
    }
    if x <= SERIES_CUTOFF {
        Ok(ci_series(x))
    } else {
        let (f, g) = aux_pair_cf(x);
        let (s, c) = x.sin_cos();
        Ok(f * s - g * c)
    }
}

/// f(a) = ∫₀^∞ sin x/(x+a) dx = Ci(a)·sin a + (π/2 − Si(a))·cos a, a > 0.
pub fn aux_f(a: f64) -> Result<f64, SpecFunError> {
    if !a.is_finite() || a <= 0.0 {
        return Err(SpecFunError {
            function: "aux_f",
            argument: a,
            requirement: "positive and finite",
        });
    }
    Ok(aux_f_raw(a))
}

/// g(a) = ∫₀^∞ cos x/(x+a) dx = −Ci(a)·cos a + (π/2 − Si(a))·sin a, a > 0.
pub fn aux_g(a: f64) -> Result<f64, SpecFunError> {
    if !a.is_finite() || a <= 0.0 {
        return Err(SpecFunError {
            function: "aux_g",
            argument: a,
            requirement: "positive and finite",
        });
    }
    Ok(aux_g_raw(a))
}

pub(crate) fn aux_f_raw(a: f64) -> f64 {
    let (si, ci) = sici_raw(a);
    let (s, c) = a.sin_cos();
    ci * s + (FRAC_PI_2 - si) * c
}

pub(crate) fn aux_g_raw(a: f64) -> f64 {
    let (si, ci) = sici_raw(a);
    let (s, c) = a.sin_cos();
    -ci * c + (FRAC_PI_2 - si) * s
}

fn sici_raw(x: f64) -> (f64, f64) {
    if x <= SERIES_CUTOFF {
        (si_series(x), ci_series(x))
    } else {
        let (f, g) = aux_pair_cf(x);
        let (s, c) = x.sin_cos();
        (FRAC_PI_2 - f * c - g * s, f * s - g * c)
    }
}

fn si_series(x: f64) -> f64 {
    // sum_k (-1)^k x^(2k+1) / ((2k+1)(2k+1)!)
    let x2 = x * x;
    let mut power = x; // (-1)^k x^(2k+1)/(2k+1)!
    let mut sum = 0.0;
    for k in 0..SERIES_MAX_TERMS {
        let term = power / (2 * k + 1) as f64;
        sum += term;
        if term.abs() < 1e-17 * (sum.abs() + 1e-300) {
            break;
        }
        power *= -x2 / ((2 * k + 2) as f64 * (2 * k + 3) as f64);
    }
    sum
}

fn ci_series(x: f64) -> f64 {
    // gamma + ln x + sum_{k>=1} (-1)^k x^(2k) / ((2k)(2k)!)
    let x2 = x * x;
    let mut power = -0.5 * x2; // (-1)^k x^(2k)/(2k)!
    let mut sum = 0.0;
    for k in 1..SERIES_MAX_TERMS {
        let term = power / (2 * k) as f64;
        sum += term;
        if term.abs() < 1e-17 * (sum.abs() + 1e-300) {
            break;
        }
        power *= -x2 / ((2 * k + 1) as f64 * (2 * k + 2) as f64);
    }
    EULER_GAMMA + x.ln() + sum
}

/// Modified Lentz evaluation of g(x) + i·f(x) at z = −ix.
///
/// Partial denominators z + (2j−1), partial numerators −(j−1)²; converges
/// for every x above the series cutoff, fastest for large x.
fn aux_pair_cf(x: f64) -> (f64, f64) {
    // Lentz placeholder for the vanishing leading term: small enough to
    // drop out of the result, large enough that its square stays normal
    // inside Complex::inv. The first step's 1/TINY cancels it again.
    const TINY: f64 = 1e-150;
    let mut value = Complex { re: TINY, im: 0.0 };
    let mut c = value;
    let mut d = Complex { re: 0.0, im: 0.0 };
    for j in 1..=CF_MAX_ITER {
        let jf = j as f64;
        let a = if j == 1 { 1.0 } else { -(jf - 1.0) * (jf - 1.0) };
        let b = Complex { re: 2.0 * jf - 1.0, im: -x };
        d = b.add(d.scale(a)).inv();
        c = b.add(c.inv().scale(a));
        let delta = c.mul(d);
        value = value.mul(delta);
        if (delta.re - 1.0).abs() + delta.im.abs() < f64::EPSILON {
            break;
        }
    }
    (value.im, value.re)
}

#[derive(Clone, Copy)]
struct Complex {
    re: f64,
    im: f64,
}

impl Complex {
    fn add(self, other: Complex) -> Complex {
        Complex { re: self.re + other.re, im: self.im + other.im }
    }
    fn mul(self, other: Complex) -> Complex {
        Complex {
            re: self.re * other.re - self.im * other.im,
            im: self.re * other.im + self.im * other.re,
        }
    }
    fn scale(self, s: f64) -> Complex {
        Complex { re: self.re * s, im: self.im * s }
    }
    fn inv(self) -> Complex {
        let n = self.re * self.re + self.im * self.im;
        Complex { re: self.re / n, im: -self.im / n }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    // 50-digit reference values of the defining integrals, truncated to f64.
    #[allow(clippy::excessive_precision)]
    const SI_FIXTURES: [(f64, f64); 11] = [
        (0.5, 0.493_107_418_043_066_69),
        (1.0, 0.946_083_070_367_183_01),
        (2.0, 1.605_412_976_802_694_8),
        (4.0, 1.758_203_138_949_053_1),
        (7.9, 1.561_671_070_214_550_2),
        (8.0, 1.574_186_821_706_942_1),
        (8.1, 1.586_366_622_463_643_1),
        (10.0, 1.658_347_594_218_874_0),
        (20.0, 1.548_241_701_043_439_8),
        (100.0, 1.562_225_466_889_056_3),
        (700.0, 1.571_993_932_237_491_6),
    ];

    #[allow(clippy::excessive_precision)]
    const CI_FIXTURES: [(f64, f64); 11] = [
        (0.5, -0.177_784_078_806_612_9),
        (1.0, 0.337_403_922_900_968_13),
        (2.0, 0.422_980_828_774_865),
        (4.0, -0.140_981_697_886_930_41),
        (7.9, 0.123_638_007_059_717_84),
        (8.0, 0.122_433_882_532_009_56),
        (8.1, 0.120_016_673_260_596_57),
        (10.0, -0.045_456_433_004_455_372),
        (20.0, 0.044_419_820_845_353_317),
        (100.0, -0.005_148_825_142_610_492),
        (700.0, 0.000_778_810_012_739_756_3),
    ];

    #[test]
    fn si_matches_reference_values() {
        for (x, expected) in SI_FIXTURES {
            let got = sin_integral(x).unwrap();
            let rel = ((got - expected) / expected).abs();
            assert!(rel < 1e-13, "Si({x}): got {got}, want {expected}, rel {rel:.2e}");
        }
    }

    #[test]
    fn ci_matches_reference_values() {
        for (x, expected) in CI_FIXTURES {
            let got = cos_integral(x).unwrap();
            let rel = ((got - expected) / expected).abs();
            assert!(rel < 1e-12, "Ci({x}): got {got}, want {expected}, rel {rel:.2e}");
        }
    }

    #[test]
    fn si_at_zero_and_asymptote() {
        assert_eq!(sin_integral(0.0).unwrap(), 0.0);
        // Si(x) -> pi/2 with tail bound 1/x
        assert!((sin_integral(1e4).unwrap() - FRAC_PI_2).abs() < 1e-4);
    }

    #[test]
    fn si_strictly_increasing_up_to_pi() {
        let mut prev = -1.0;
        for i in 0..=100 {
            let x = PI * i as f64 / 100.0;
            let v = sin_integral(x).unwrap();
            assert!(v > prev, "Si must increase on [0, pi], x = {x}");
            prev = v;
        }
    }

    // Reference values for the auxiliaries from Ci/Si at 50 digits.
    #[allow(clippy::excessive_precision)]
    const AUX_FIXTURES: [(f64, f64, f64); 8] = [
        (0.001, 1.563_465_003_143_363_5, 6.332_106_494_876_143_3),
        (0.01, 1.520_439_219_298_237_3, 4.043_385_827_376_735_3),
        (0.1, 1.291_004_728_309_101_2, 1.866_076_408_909_089_3),
        (1.0, 0.621_449_624_235_813_36, 0.343_377_961_556_427_03),
        (2.0, 0.399_020_988_594_183_85, 0.144_545_303_037_332_42),
        (10.0, 0.098_191_035_010_170_169, 0.009_488_539_016_354_807_4),
        (100.0, 0.009_998_002_392_839_961_8, 9.994_011_949_958_949_3e-5),
        (2500.0, 3.999_998_720_002_457_6e-4, 1.599_998_464_004_915_2e-7),
    ];

    #[test]
    fn aux_matches_reference_values() {
        for (a, f_expected, g_expected) in AUX_FIXTURES {
            let f = aux_f(a).unwrap();
            let g = aux_g(a).unwrap();
            assert!(
                ((f - f_expected) / f_expected).abs() < 1e-10,
                "aux_f({a}): got {f}, want {f_expected}"
            );
            assert!(
                ((g - g_expected) / g_expected).abs() < 1e-10,
                "aux_g({a}): got {g}, want {g_expected}"
            );
        }
    }

    #[test]
    fn aux_f_small_argument_limit() {
        // f(a) -> pi/2 as a -> 0+ (reduces to the Dirichlet integral)
        assert!((aux_f(1e-10).unwrap() - FRAC_PI_2).abs() < 1e-8);
    }

    #[test]
    fn aux_positive_and_strictly_decreasing() {
        let mut prev_f = f64::INFINITY;
        let mut prev_g = f64::INFINITY;
        for i in 0..=120 {
            let a = 1e-3 * (1e5_f64).powf(i as f64 / 120.0);
            let f = aux_f(a).unwrap();
            let g = aux_g(a).unwrap();
            assert!(f > 0.0 && f < prev_f, "aux_f not decreasing at a = {a}");
            assert!(g > 0.0 && g < prev_g, "aux_g not decreasing at a = {a}");
            prev_f = f;
            prev_g = g;
        }
    }

    #[test]
    fn aux_f_agrees_with_truncated_oscillatory_quadrature() {
        // Direct quadrature of sin x/(x+2) over [0, 200*pi], one half-period
        // per panel; the discarded tail is bounded by 1/(200*pi).
        let a = 2.0;
        let mut truncated = 0.0;
        for k in 0..400 {
            let lo = k as f64 * PI / 2.0;
            let hi = (k + 1) as f64 * PI / 2.0;
            truncated += crate::verify::reference::tanh_sinh(|x| x.sin() / (x + a), lo, hi);
        }
        let tail_bound = 1.0 / (200.0 * PI);
        let diff = (aux_f(a).unwrap() - truncated).abs();
        assert!(diff < tail_bound, "diff {diff:.3e} vs tail bound {tail_bound:.3e}");
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(sin_integral(-0.1).is_err());
        assert!(sin_integral(f64::NAN).is_err());
        assert!(cos_integral(0.0).is_err());
        assert!(cos_integral(-2.0).is_err());
        assert!(aux_f(0.0).is_err());
        assert!(aux_g(-1.0).is_err());
    }
}

//! Modified Bessel function of the second kind, order one (MacDonald function).
//!
//! Two regimes split at x = 2:
//!
//! - `x <= 2`: the ascending series
//!   K₁(x) = 1/x + ln(x/2)·I₁(x) − (x/4)·Σₖ [ψ(k+1)+ψ(k+2)]·(x²/4)ᵏ/(k!(k+1)!),
//! - `x > 2`: Steed's continued fraction (Thompson–Barnett CF2) for K₀,
//!   followed by the exact ladder K₁ = K₀·(1/2 + x − f/4)/x.
//!
//! Both regimes agree to a few ulp at the boundary; relative accuracy is
//! better than 1e-13 throughout [1e-8, 700]. Beyond x ≈ 705 the value
//! underflows toward zero through the subnormals, monotonically.

use super::{SpecFunError, EULER_GAMMA};

const CF_MAX_ITER: usize = 1000;
const SERIES_MAX_TERMS: usize = 60;

/// K₁(x), the modified Bessel function of the second kind of order one.
///
/// Domain: x > 0 and finite. Underflows to 0 for x ≳ 745 without ever
/// oscillating or going negative. Subnormal arguments are rejected: the
/// 1/x pole exceeds the f64 range there, and no infinity may escape.
pub fn bessel_k1(x: f64) -> Result<f64, SpecFunError> {
    if !x.is_finite() || x < f64::MIN_POSITIVE {
        return Err(SpecFunError {
            function: "bessel_k1",
            argument: x,
            requirement: "positive, finite, and not subnormal",
        });
    }
    Ok(k1_raw(x))
}

/// x·K₁(x), computed without forming the 1/x pole.
///
/// Tends to 1 as x → 0⁺; this is the bounded kernel that the vertex and
/// moment integrands actually need, so endpoint evaluations near zero
/// stay finite even for subnormal arguments.
pub fn x_bessel_k1(x: f64) -> Result<f64, SpecFunError> {
    check_positive("x_bessel_k1", x)?;
    Ok(x_bessel_k1_raw(x))
}

fn check_positive(function: &'static str, x: f64) -> Result<(), SpecFunError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(SpecFunError {
            function,
            argument: x,
            requirement: "positive and finite",
        });
    }
    Ok(())
}

pub(crate) fn k1_raw(x: f64) -> f64 {
    if x <= 2.0 {
        let (log_part, psi_part) = k1_series_parts(x);
        1.0 / x + log_part + psi_part
    } else {
        k1_continued_fraction(x)
    }
}

pub(crate) fn x_bessel_k1_raw(x: f64) -> f64 {
    if x <= 2.0 {
        let (log_part, psi_part) = k1_series_parts(x);
        // x*(1/x) is exactly 1; the remaining pieces are O(x^2 ln x).
        1.0 + x * (log_part + psi_part)
    } else {
        x * k1_continued_fraction(x)
    }
}

/// Returns (ln(x/2)·I₁(x), −(x/4)·Σₖ [ψ(k+1)+ψ(k+2)]·qᵏ/(k!(k+1)!)) with q = x²/4.
fn k1_series_parts(x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let mut term = 1.0; // q^k / (k! (k+1)!)
    let mut psi_a = -EULER_GAMMA; // psi(k+1)
    let mut psi_b = 1.0 - EULER_GAMMA; // psi(k+2)
    let mut sum_i1 = 0.0;
    let mut sum_psi = 0.0;
    for k in 0..SERIES_MAX_TERMS {
        sum_i1 += term;
        sum_psi += (psi_a + psi_b) * term;
        if term < 1e-18 * sum_i1.abs() && k > 2 {
            break;
        }
        let kf = (k + 1) as f64;
        term *= q / (kf * (kf + 1.0));
        psi_a += 1.0 / kf;
        psi_b += 1.0 / (kf + 1.0);
    }
    let i1 = 0.5 * x * sum_i1;
    ((0.5 * x).ln() * i1, -0.25 * x * sum_psi)
}

/// Steed's algorithm for K₀(x), x > 2, then the order-one ladder.
///
/// Thompson & Barnett, J. Comput. Phys. 64, 490 (1986); ν = 0 so the
/// seed coefficient is ν² − 1/4 = −1/4.
fn k1_continued_fraction(x: f64) -> f64 {
    let mut a = -0.25;
    let mut b = 2.0 * (x + 1.0);
    let mut d = 1.0 / b;
    let mut f = d;
    let mut delta = d;
    let mut prev = 0.0;
    let mut current = 1.0;
    let mut q = -a;
    let mut c = -a;
    let mut s = 1.0 + q * delta;
    for k in 2..=CF_MAX_ITER {
        a -= 2.0 * (k - 1) as f64;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delta *= b * d - 1.0;
        f += delta;
        let qk = (prev - (b - 2.0) * current) / a;
        prev = current;
        current = qk;
        c *= -a / k as f64;
        q += c * qk;
        s += q * delta;
        if (q * delta).abs() < s.abs() * f64::EPSILON {
            break;
        }
    }
    let k0 = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let k1 = k0 * (0.5 + x - 0.25 * f) / x;
    // Subnormal results carry no usable precision and can wobble at the
    // last quantum; flush them so the far tail decays to zero cleanly.
    if k1 < f64::MIN_POSITIVE {
        0.0
    } else {
        k1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values: 50-digit evaluation of the defining integral
    // K1(x) = \int_0^inf exp(-x cosh t) cosh t dt, truncated to f64.
    #[allow(clippy::excessive_precision)]
    const K1_FIXTURES: [(f64, f64); 10] = [
        (0.5, 1.656_441_120_003_300_9),
        (1.0, 0.601_907_230_197_234_6),
        (1.9, 0.159_660_153_032_667_61),
        (1.99, 0.141_717_561_622_401_3),
        (2.0, 0.139_865_881_816_522_43),
        (2.01, 0.138_040_877_319_207_67),
        (2.1, 0.122_746_411_533_507_91),
        (5.0, 4.044_613_445_452_164e-3),
        (10.0, 1.864_877_345_382_558_5e-5),
        (100.0, 4.679_853_735_636_909e-45),
    ];

    #[test]
    fn matches_reference_values() {
        for (x, expected) in K1_FIXTURES {
            let got = bessel_k1(x).unwrap();
            let rel = ((got - expected) / expected).abs();
            assert!(rel < 1e-13, "K1({x}): got {got}, want {expected}, rel {rel:.2e}");
        }
    }

    #[test]
    fn extreme_arguments() {
        // K1(650) and K1(700) stay normal; 50-digit reference values.
        let k650 = bessel_k1(650.0).unwrap();
        assert!(((k650 - 2.514_434_836_986_32e-284) / k650).abs() < 1e-12);
        let k700 = bessel_k1(700.0).unwrap();
        assert!(((k700 - 4.673_110_796_707_966e-306) / k700).abs() < 1e-11);
        // Far tail underflows cleanly to zero.
        assert_eq!(bessel_k1(800.0).unwrap(), 0.0);
    }

    #[test]
    fn underflow_is_monotone() {
        let mut last = f64::INFINITY;
        let mut x = 690.0;
        while x <= 780.0 {
            let v = x * bessel_k1(x).unwrap();
            assert!(v >= 0.0 && v <= last, "x*K1 must decay monotonically at x={x}");
            last = v;
            x += 1.0;
        }
        assert_eq!(last, 0.0);
    }

    #[test]
    fn small_argument_product_limit() {
        // x*K1(x) -> 1 as x -> 0+
        let v = bessel_k1(1e-6).unwrap() * 1e-6;
        assert!((v - 1.0).abs() < 1e-10, "1e-6*K1(1e-6) = {v}");
        assert!((x_bessel_k1(1e-6).unwrap() - 0.999_999_999_992_784_3).abs() < 1e-13);
        // The product form stays exact even where 1/x would overflow.
        assert_eq!(x_bessel_k1(1e-320).unwrap(), 1.0);
    }

    #[test]
    fn product_form_consistent_with_plain_form() {
        for x in [1e-4, 0.03, 0.7, 1.999, 2.001, 3.0, 17.0, 250.0] {
            let a = x_bessel_k1(x).unwrap();
            let b = x * bessel_k1(x).unwrap();
            assert!(((a - b) / a).abs() < 1e-14, "x = {x}");
        }
    }

    #[test]
    fn strictly_positive_and_decreasing() {
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let x = 1e-6 * (700.0_f64 / 1e-6).powf(i as f64 / 199.0);
            let v = bessel_k1(x).unwrap();
            assert!(v > 0.0 && v < prev, "K1 must decrease strictly, x = {x}");
            prev = v;
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(bessel_k1(0.0).is_err());
        assert!(bessel_k1(-3.0).is_err());
        assert!(bessel_k1(f64::NAN).is_err());
        assert!(bessel_k1(f64::INFINITY).is_err());
        // Subnormal input would need K1 > f64::MAX; the product form still works.
        assert!(bessel_k1(1e-320).is_err());
        assert!(bessel_k1(f64::MIN_POSITIVE).unwrap().is_finite());
        assert!(x_bessel_k1(0.0).is_err());
    }
}

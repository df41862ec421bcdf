//! Reference-accuracy scalar special functions.
//!
//! All arguments and results are dimensionless (κ-units). Every public
//! operation either returns a finite value or a [`SpecFunError`]; NaN and
//! infinity never escape.

mod bessel;
mod sici;

pub use bessel::{bessel_k1, x_bessel_k1};
pub use sici::{aux_f, aux_g, cos_integral, sin_integral};

pub(crate) use bessel::x_bessel_k1_raw;
pub(crate) use sici::{aux_f_raw, aux_g_raw};

/// Euler–Mascheroni constant, 20+ significant digits.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.57721566490153286061;

/// Argument outside a function's domain.
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("{function}({argument}): argument must be {requirement}")]
pub struct SpecFunError {
    pub function: &'static str,
    pub argument: f64,
    pub requirement: &'static str,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_gamma_digits() {
        // gamma = 0.57721566490153286060651209... rounded to f64
        assert_eq!(EULER_GAMMA, 0.577_215_664_901_532_9_f64);
    }

    #[test]
    fn domain_errors_carry_context() {
        let err = bessel_k1(-1.0).unwrap_err();
        assert_eq!(err.function, "bessel_k1");
        assert_eq!(err.argument, -1.0);
        assert!(err.to_string().contains("bessel_k1"));
    }
}

//! Charge renormalization in QED with bilocal fields, in κ-units (c = ħ = κ = 1).
//!
//! The crate evaluates the one-dimensional integrals that a bilocal vertex
//! form factor leaves behind once everything is put on the mass shell:
//!
//! - the MacDonald-kernel vertex integrals giving the ratio Z₁/Z₂ and the
//!   fermion anomalous magnetic moment,
//! - the on-shell polarization coefficients giving Z₄/Z₃,
//! - the gauge condition f(m²) + m²·g(m²) = π/2 whose only root is m = 0,
//! - the renormalized fine-structure constant α̃⁻¹ = α⁻¹ + 13/4π
//!   (136 → 137.0345),
//! - the electron, muon, and tau anomalous-moment predictions.
//!
//! Everything is deterministic double-precision arithmetic: adaptive
//! Gauss–Kronrod quadrature plus reference-accuracy scalar special
//! functions, with no randomized methods anywhere.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`specfun`] | K₁, Si, Ci, and the auxiliary integrals f, g |
//! | [`quadrature`] | adaptive quadrature, semi-infinite transform, sign scan |
//! | [`renorm`] | Z-ratios, on-shell polarization coefficients, α̃⁻¹ |
//! | [`gauge`] | gauge-condition scan and root certification |
//! | [`moments`] | anomalous magnetic moments and the g−2 comparison |
//! | [`report`] | report assembly, JSON/CSV/text serialization |
//! | [`verify`] | self-verification checks and reference oracles |

pub mod gauge;
pub mod moments;
pub mod quadrature;
pub mod renorm;
pub mod report;
pub mod specfun;
pub mod verify;

pub use quadrature::{QuadratureConfig, QuadratureResult};
pub use renorm::Coupling;

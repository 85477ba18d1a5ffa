//! Complex special functions: Γ family, confluent hypergeometric Φ/Ψ, Bessel.

mod bessel;
mod gamma;
mod kummer;
mod taylor;

pub use bessel::{bessel, bessel_with_derivative, BesselKind};
pub use gamma::{
    digamma, factorial, gamma, gamma_ln, gamma_real, pochhammer, rgamma, trigamma, trigamma_complex, EULER_GAMMA,
};
pub(crate) use gamma::nonpositive_integer;
pub use kummer::{
    kummer_companion, kummer_m, kummer_m_param_derivative, kummer_m_with_derivative, tricomi_u, tricomi_u_with_derivative,
    SeriesControl,
};

/// ψ(1) = −γ.
pub const PSI_ONE: f64 = -EULER_GAMMA;

//! Special functions: zeta, gamma, the polylogarithm on the unit circle, the
//! discrete strong-range couplings and the quadrature rules behind them.

mod gamma;
mod polylog;
pub mod quad;
mod strong;
mod zeta;

pub use gamma::{factorial, gamma, harmonic};
pub use polylog::{polylog_unit_circle, PolylogKernel, PolylogValue};
pub use strong::{
    strong_range_couplings, strong_range_couplings_quadrature, strong_range_hopping_integral,
    strong_range_pairing_integral,
};
pub use zeta::riemann_zeta;
pub(crate) use zeta::zeta_real;

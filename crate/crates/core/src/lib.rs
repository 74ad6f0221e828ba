//! Entanglement entropies of the Kitaev chain with power-law hopping and pairing.
//!
//! The ground state is a fermionic Gaussian state, so the Renyi entropy of an
//! interval follows from the spectrum of its correlation matrix
//! ([`gaussian_state`]). The logarithmic growth of that entropy is predicted
//! from the jumps of the momentum-space symbol ([`asymptotics`]) and compared
//! against fits of the numerics ([`analysis`]). Small rings can be checked
//! against an explicit many-body state ([`oracle`]).
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the `*F64`
//! aliases below name the common double-precision instantiations.
//!
//! ```
//! use lrkitaev::{build_correlation_matrix, renyi_entropy, ChainParamsF64, Populations};
//!
//! let params = ChainParamsF64::new(64, 1.5, 1.5, 0.5, false).unwrap();
//! let corr = build_correlation_matrix(&params, 16, &Populations::vacuum()).unwrap();
//! let s2 = renyi_entropy(&corr, 2.0).unwrap();
//! assert!(s2.value > 0.0);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod asymptotics;
pub mod error;
pub mod gaussian_state;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod scalar;
pub mod specfun;

pub use analysis::{
    fit_log_plus_subleading, fit_log_slope, fit_power_law_exponent, sweep, FitOptions, GridPoint, PowerLawFit, ScalingFit,
    SweepRow, SweepTask,
};
pub use asymptotics::{
    effective_central_charge, h0_scaling_exponent, jump_coefficient_branch_cut, jump_coefficient_residues,
    single_discontinuity_approx, strong_regime_B, weak_regime_B, AlternatingExpansion, Discontinuity,
    FHCoefficient, FHMethod, JumpLocation,
};
pub use error::{Error, Result};
pub use gaussian_state::{
    build_correlation_matrix, build_symbol, fh_volume_term, renyi_entropy, CorrelationMatrix, EntropyResult,
    Populations, SymbolValue,
};
pub use model::{
    critical_fields, phase_diagnostics, q_invariant, winding_number, ChainParams, Couplings, ModeData,
    PhaseDiagnostics,
};
pub use oracle::{build_bcs_vacuum, exact_entropy, FockState};
pub use scalar::Real;

pub type ChainParamsF64 = ChainParams<f64>;
pub type ModeDataF64 = ModeData<f64>;
pub type CouplingsF64 = Couplings<f64>;
pub type PopulationsF64 = Populations<f64>;
pub type SymbolValueF64 = SymbolValue<f64>;
pub type CorrelationMatrixF64 = CorrelationMatrix<f64>;
pub type EntropyResultF64 = EntropyResult<f64>;
pub type DiscontinuityF64 = Discontinuity<f64>;
pub type FHCoefficientF64 = FHCoefficient<f64>;
pub type ScalingFitF64 = ScalingFit<f64>;
pub type GridPointF64 = GridPoint<f64>;

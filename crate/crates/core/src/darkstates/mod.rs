//! Dark states of two-level atoms in a cavity: closed-form eigenstructure of
//! the two-atom block, singlet-product factories, and numerical detection.

pub mod analytic;
mod dark;

pub use analytic::{
    analytic_spectrum,
    analytic_spectrum_degenerate,
    analytic_spectrum_shifted,
    cubic_coefficients,
    AnalyticSpectrum,
    Branch,
};
pub use dark::{
    dark_state_block,
    dark_state_degenerate,
    find_dark_states,
    is_dark,
    singlet_ensemble,
    DarknessReport,
    Subspace,
};

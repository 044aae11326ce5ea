//! Two-level atoms in a single-mode cavity: Tavis-Cummings Hamiltonians,
//! dark states (closed form and numerical), and simulation of dark-state
//! preparation by an abrupt Stark/Zeeman shift jump followed by photon drain.
//!
//! All frequencies are angular and stored with hbar = 1; protocol work is
//! nondimensionalized by the cavity frequency.

pub mod darkstates;
pub mod error;
pub mod model;
pub mod numerics;
pub mod protocol;
pub mod verify;

pub use num_complex::Complex64 as C64;

pub use crate::{
    darkstates::{ AnalyticSpectrum, Branch, DarknessReport, Subspace },
    error::{ Error, Result },
    model::{ AtomParams, BasisLabel, CavityModel },
    numerics::{ ComplexMatrix, RandomSource, Spectrum, StateVector },
    protocol::{ CycleRecord, DeltaT, Outcome, SweepResult, ZSJumpConfig },
};

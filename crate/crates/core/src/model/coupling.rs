//! Atom-field coupling from the position of an atom in a half-wavelength
//! cavity, `g(x) = d E0 sin(omega_c x / c) / hbar`.

use std::f64::consts::PI;
use crate::error::{ Error, Result };

/// Speed of light [m/s].
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Reduced Planck constant [J s].
pub const HBAR: f64 = 1.054_571_817e-34;
/// Vacuum permittivity [F/m].
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;

/// SI description of a cavity for position-dependent couplings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalCavity {
    /// Cavity angular frequency [rad/s].
    pub omega_c: f64,
    /// Transition dipole matrix element [C m].
    pub dipole: f64,
    /// Mode volume [m^3].
    pub volume: f64,
}

impl PhysicalCavity {
    pub fn length(&self) -> f64 { cavity_length(self.omega_c) }

    /// Dimensionless coupling `g(x) / omega_c`.
    pub fn coupling(&self, x: f64) -> Result<f64> {
        coupling_from_position(x, self.length(), self.omega_c, self.dipole, self.volume)
    }
}

/// `L = pi c / omega_c`.
pub fn cavity_length(omega_c: f64) -> f64 {
    PI * SPEED_OF_LIGHT / omega_c
}

/// Peak coupling `d E0 / hbar` divided by `omega_c`, with
/// `E0 = sqrt(hbar omega_c / (2 eps0 V))`.
pub fn max_coupling(omega_c: f64, dipole: f64, volume: f64) -> Result<f64> {
    for (v, name) in [(omega_c, "omega_c"), (dipole, "dipole"), (volume, "volume")] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::InvalidParameter(format!("{name} must be finite and > 0")));
        }
    }
    let e0 = (HBAR * omega_c / (2.0 * EPSILON_0 * volume)).sqrt();
    Ok(dipole * e0 / HBAR / omega_c)
}

/// Dimensionless coupling `g(x) / omega_c` for an atom at `x` in `[0, L]`.
///
/// `length` must be `pi c / omega_c` (relative tolerance 1e-9).
pub fn coupling_from_position(x: f64, length: f64, omega_c: f64, dipole: f64, volume: f64) -> Result<f64> {
    let g_max = max_coupling(omega_c, dipole, volume)?;
    let expected = cavity_length(omega_c);
    if !((length - expected).abs() <= 1e-9 * expected) {
        return Err(Error::InvalidParameter(format!(
            "cavity length {length} m does not match pi c / omega_c = {expected} m"
        )));
    }
    if !(x.is_finite() && (0.0..=length).contains(&x)) {
        return Err(Error::PositionOutOfRange { x, length });
    }
    Ok(g_max * (omega_c * x / SPEED_OF_LIGHT).sin().max(0.0))
}

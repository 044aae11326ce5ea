//! Dark-state preparation by a Stark/Zeeman jump.
//!
//! Start in `|1>_p|00>_a` with atom 1 shifted by `(ds, dg)`, evolve for `dt`
//! under the shifted two-atom block, switch the shift off and drain the
//! photon. The dark-state yield is `|<dark(g1, g2)| exp(-i H_ZS dt) |1>_p|00>_a>|^2`
//! where the dark state belongs to the unshifted block.
//!
//! Times are dimensionless, `tau = omega_c * t`, when `omega_c = 1`.

use std::f64::consts::TAU;
use num_complex::Complex64 as C64;
use crate::{
    darkstates::dark_state_block,
    error::{ Error, Result },
    model::{ apply_zs_shift, single_excitation_block, CavityModel },
    numerics::{ herm_eig, propagate_weights, ComplexMatrix, Spectrum, StateVector },
};

mod cycles;
mod stats;
mod sweep;

pub use cycles::{ run_trials, simulate_cycles, CycleRecord, Outcome, TrialSummary };
pub use stats::{ empirical_success, ks_geometric, success_after_k, KsResult, KS_CRITICAL_1PCT };
pub use sweep::{ linspace, sweep, GridAxis, SweepResult };

/// How the waiting time before switch-off is chosen each cycle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DeltaT {
    /// Uniform on `[0, t_max]` of the configuration's horizon.
    Uniform,
    /// Always the same time.
    Fixed(f64),
}

/// All parameters of the jump protocol.
#[derive(Clone, Debug, PartialEq)]
pub struct ZSJumpConfig {
    pub omega_c: f64,
    /// Unshifted frequency of both atoms.
    pub omega_a: f64,
    pub g1: f64,
    pub g2: f64,
    /// Frequency shift of atom 1.
    pub ds: f64,
    /// Coupling shift of atom 1.
    pub dg: f64,
    /// Time horizon; `None` means one slowest beat period `2 pi / min gap`
    /// of the shifted block.
    pub t_max: Option<f64>,
    pub t_steps: usize,
    pub delta_t: DeltaT,
    pub seed: u64,
}

impl Default for ZSJumpConfig {
    fn default() -> Self {
        Self::with_half_coupling(0.01)
    }
}

impl ZSJumpConfig {
    /// Resonant atoms, `g2 = g1 / 2`, no shift, dimensionless units.
    pub fn with_half_coupling(g1: f64) -> Self {
        Self {
            omega_c: 1.0,
            omega_a: 1.0,
            g1,
            g2: g1 / 2.0,
            ds: 0.0,
            dg: 0.0,
            t_max: None,
            t_steps: 2000,
            delta_t: DeltaT::Uniform,
            seed: 0,
        }
    }

    pub fn with_shift(mut self, ds: f64, dg: f64) -> Self {
        self.ds = ds;
        self.dg = dg;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let vals = [self.omega_c, self.omega_a, self.g1, self.g2, self.ds, self.dg];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("protocol parameters"));
        }
        if self.omega_c <= 0.0 || self.omega_a <= 0.0 || self.omega_a + self.ds <= 0.0 {
            return Err(Error::InvalidParameter("frequencies must be > 0".into()));
        }
        if !(self.g1 > 0.0 && self.g2 > 0.0) {
            return Err(Error::InvalidParameter("g1 and g2 must be > 0".into()));
        }
        if self.g1 + self.dg < 0.0 {
            return Err(Error::InvalidParameter("g1 + dg must be >= 0".into()));
        }
        if let Some(t) = self.t_max {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::InvalidParameter("t_max must be > 0".into()));
            }
        }
        if self.t_steps < 2 {
            return Err(Error::InvalidParameter("t_steps must be >= 2".into()));
        }
        if let DeltaT::Fixed(t) = self.delta_t {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::InvalidParameter("fixed delta t must be >= 0".into()));
            }
        }
        Ok(())
    }

    /// Unshifted two-atom model.
    pub fn base_model(&self) -> Result<CavityModel> {
        CavityModel::two_atoms(self.omega_c, self.omega_a, self.omega_a, self.g1, self.g2)
    }

    /// `H_ZS(ds, dg)`: the two-atom block with atom 1 shifted.
    pub fn shifted_block(&self) -> Result<ComplexMatrix> {
        single_excitation_block(&apply_zs_shift(&self.base_model()?, 0, self.ds, self.dg)?)
    }
}

/// Precomputed spectral data for one configuration.
#[derive(Clone, Debug)]
pub struct ZSJump {
    config: ZSJumpConfig,
    spectrum: Spectrum,
    weights: Vec<C64>,
    horizon: f64,
}

impl ZSJump {
    pub fn new(config: &ZSJumpConfig) -> Result<Self> {
        config.validate()?;
        let spectrum = herm_eig(&config.shifted_block()?)?;
        let dark = dark_state_block(config.g1, config.g2)?;
        let photon = StateVector::basis(3, 2);
        let weights = spectrum.transition_weights(&dark, &photon)?;
        let horizon = match config.t_max {
            Some(t) => t,
            None => TAU / min_gap(spectrum.eigenvalues()),
        };
        Ok(Self { config: config.clone(), spectrum, weights, horizon })
    }

    pub fn config(&self) -> &ZSJumpConfig { &self.config }

    /// Eigenvalues of the shifted block, ascending.
    pub fn shifted_eigenvalues(&self) -> &[f64] { self.spectrum.eigenvalues() }

    pub fn spectrum(&self) -> &Spectrum { &self.spectrum }

    /// Configured `t_max`, or one slowest beat period.
    pub fn horizon(&self) -> f64 { self.horizon }

    /// `lambda_ds(t)`.
    pub fn amplitude(&self, t: f64) -> C64 {
        propagate_weights(self.spectrum.eigenvalues(), &self.weights, t)
    }

    /// `p_ds(t) = |lambda_ds(t)|^2`, clamped into `[0, 1]`.
    pub fn yield_at(&self, t: f64) -> f64 {
        self.amplitude(t).norm_sqr().min(1.0)
    }

    pub fn time_grid(&self) -> Vec<f64> {
        linspace(0.0, self.horizon, self.config.t_steps)
    }

    pub fn curve(&self) -> Vec<(f64, f64)> {
        self.time_grid().into_iter().map(|t| (t, self.yield_at(t))).collect()
    }

    /// Best grid point, refined by golden-section search on its neighbours.
    pub fn max_yield(&self) -> (f64, f64) {
        let grid = self.time_grid();
        let (mut best_k, mut best_p) = (0, f64::NEG_INFINITY);
        for (k, &t) in grid.iter().enumerate() {
            let p = self.yield_at(t);
            if p > best_p {
                best_k = k;
                best_p = p;
            }
        }
        let lo = grid[best_k.saturating_sub(1)];
        let hi = grid[(best_k + 1).min(grid.len() - 1)];
        let (t, p) = golden_max(|t| self.yield_at(t), lo, hi, 1e-6);
        if p > best_p { (t, p) } else { (grid[best_k], best_p) }
    }

    /// Mean yield over the waiting-time distribution (trapezoid rule on the
    /// time grid for the uniform case).
    pub fn mean_yield(&self) -> f64 {
        match self.config.delta_t {
            DeltaT::Fixed(t) => self.yield_at(t),
            DeltaT::Uniform => {
                let c = self.curve();
                let n = c.len() - 1;
                let inner: f64 = c[1..n].iter().map(|x| x.1).sum();
                (inner + 0.5 * (c[0].1 + c[n].1)) / n as f64
            },
        }
    }
}

fn min_gap(sorted: &[f64]) -> f64 {
    sorted.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

/// Maximize a unimodal `f` on `[lo, hi]` to width `tol`.
fn golden_max<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64)
where F: Fn(f64) -> f64
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    let t = 0.5 * (lo + hi);
    (t, f(t))
}

/// `lambda_ds(t)` for one configuration.
pub fn dark_amplitude(cfg: &ZSJumpConfig, t: f64) -> Result<C64> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParameter("t must be >= 0".into()));
    }
    Ok(ZSJump::new(cfg)?.amplitude(t))
}

/// `(t, p_ds(t))` on the uniform time grid.
pub fn pds_curve(cfg: &ZSJumpConfig) -> Result<Vec<(f64, f64)>> {
    Ok(ZSJump::new(cfg)?.curve())
}

/// `(t_star, p_star)`, the maximal yield over the time horizon.
pub fn pds_max(cfg: &ZSJumpConfig) -> Result<(f64, f64)> {
    Ok(ZSJump::new(cfg)?.max_yield())
}

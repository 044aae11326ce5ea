//! Repeat-until-success cycles: pump a photon, wait, switch the shift off,
//! drain the cavity. No detector click means the atoms were projected onto
//! the dark state.

use rayon::prelude::*;
use crate::{
    error::{ Error, Result },
    numerics::RandomSource,
};
use super::{ DeltaT, ZSJump, ZSJumpConfig };

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    PhotonDetected,
    DarkSuccess,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CycleRecord {
    /// 1-based cycle number within the trial.
    pub cycle_index: usize,
    pub delta_t: f64,
    pub p_ds: f64,
    pub outcome: Outcome,
}

/// Outcome of one trial without the per-cycle records.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialSummary {
    pub trial: usize,
    /// Cycles run, including the successful one.
    pub cycles_used: usize,
    pub success: bool,
}

fn draw_delta_t(jump: &ZSJump, rng: &mut RandomSource) -> f64 {
    match jump.config().delta_t {
        DeltaT::Fixed(t) => t,
        DeltaT::Uniform => rng.uniform_in(0.0, jump.horizon()),
    }
}

/// Run cycles until success or `max_cycles`, calling `record` after each.
fn run_cycles<F>(jump: &ZSJump, max_cycles: usize, rng: &mut RandomSource, mut record: F) -> usize
where F: FnMut(CycleRecord)
{
    let fixed = match jump.config().delta_t {
        DeltaT::Fixed(t) => Some(jump.yield_at(t)),
        DeltaT::Uniform => None,
    };
    for k in 1..=max_cycles {
        let delta_t = draw_delta_t(jump, rng);
        let p_ds = fixed.unwrap_or_else(|| jump.yield_at(delta_t));
        // ideal projective photon measurement
        let outcome = if rng.bernoulli(p_ds) { Outcome::DarkSuccess } else { Outcome::PhotonDetected };
        record(CycleRecord { cycle_index: k, delta_t, p_ds, outcome });
        if outcome == Outcome::DarkSuccess {
            return k;
        }
    }
    max_cycles
}

/// Per-cycle records of one trial.
pub fn simulate_cycles(cfg: &ZSJumpConfig, max_cycles: usize, rng: &mut RandomSource) -> Result<Vec<CycleRecord>> {
    if max_cycles < 1 {
        return Err(Error::InvalidParameter("max_cycles must be >= 1".into()));
    }
    let jump = ZSJump::new(cfg)?;
    let mut out = Vec::new();
    run_cycles(&jump, max_cycles, rng, |r| out.push(r));
    Ok(out)
}

/// `trials` independent trials, trial `k` drawing from stream `k` of
/// `cfg.seed`. Results are in trial order regardless of thread count.
pub fn run_trials(cfg: &ZSJumpConfig, trials: usize, max_cycles: usize) -> Result<Vec<TrialSummary>> {
    if max_cycles < 1 {
        return Err(Error::InvalidParameter("max_cycles must be >= 1".into()));
    }
    let jump = ZSJump::new(cfg)?;
    Ok((0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = RandomSource::with_stream(cfg.seed, trial as u64);
            let mut success = false;
            let cycles_used = run_cycles(&jump, max_cycles, &mut rng, |r| {
                success = r.outcome == Outcome::DarkSuccess;
            });
            TrialSummary { trial, cycles_used, success }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unshifted_never_succeeds() {
        let cfg = ZSJumpConfig::default();
        let mut rng = RandomSource::new(3);
        let recs = simulate_cycles(&cfg, 50, &mut rng).unwrap();
        assert_eq!(recs.len(), 50);
        assert!(recs.iter().all(|r| r.outcome == Outcome::PhotonDetected));
        assert!(recs.iter().all(|r| r.p_ds < 1e-28));
        assert_eq!(recs.last().unwrap().cycle_index, 50);
    }

    #[test]
    fn seeded_reproducibility() {
        let cfg = ZSJumpConfig::default().with_shift(0.002, 0.001);
        let a = simulate_cycles(&cfg, 200, &mut RandomSource::new(11)).unwrap();
        let b = simulate_cycles(&cfg, 200, &mut RandomSource::new(11)).unwrap();
        assert_eq!(a, b);
        let t1 = run_trials(&cfg, 64, 100).unwrap();
        let t2 = run_trials(&cfg, 64, 100).unwrap();
        assert_eq!(t1, t2);
    }

    #[test]
    fn success_terminates_trial() {
        let mut cfg = ZSJumpConfig::default().with_shift(0.01, 0.007);
        let (t_star, p) = super::super::pds_max(&cfg).unwrap();
        assert!(p > 0.05);
        cfg.delta_t = DeltaT::Fixed(t_star);
        let recs = simulate_cycles(&cfg, 10_000, &mut RandomSource::new(5)).unwrap();
        let last = recs.last().unwrap();
        assert_eq!(last.outcome, Outcome::DarkSuccess);
        assert!(recs[..recs.len() - 1].iter().all(|r| r.outcome == Outcome::PhotonDetected));
        assert!(recs.iter().all(|r| r.delta_t == t_star && (0.0..=1.0).contains(&r.p_ds)));
        assert!(simulate_cycles(&cfg, 0, &mut RandomSource::new(5)).is_err());
    }
}

//! Randomized invariant checks over all modules, shared by the `verify`
//! subcommand and the test suites.

use std::fmt;
use num_complex::Complex64 as C64;
use crate::{
    darkstates::{
        analytic_spectrum_degenerate,
        analytic_spectrum_shifted,
        cubic_coefficients,
        dark_state_block,
        find_dark_states,
        is_dark,
        singlet_ensemble,
        AnalyticSpectrum,
        Subspace,
    },
    error::{ Error, Result },
    model::{
        build_full_hamiltonian,
        excitation_number,
        single_excitation_block,
        single_excitation_indices,
        AtomParams,
        CavityModel,
    },
    numerics::{ evolve, herm_eig, subspace_distance, ComplexMatrix, RandomSource, StateVector },
    protocol::{ ZSJump, ZSJumpConfig },
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Hermiticity,
    AnalyticNumeric,
    Vieta,
    DarkEigenpair,
    NoDarkUnderShift,
    Unitarity,
    GroupLaw,
    SpectralReconstruction,
    ExcitationConservation,
    BlockConsistency,
    DarknessInvariance,
    NullProtocol,
    ScalingInvariance,
}

impl Check {
    pub const ALL: [Check; 13] = [
        Check::Hermiticity,
        Check::AnalyticNumeric,
        Check::Vieta,
        Check::DarkEigenpair,
        Check::NoDarkUnderShift,
        Check::Unitarity,
        Check::GroupLaw,
        Check::SpectralReconstruction,
        Check::ExcitationConservation,
        Check::BlockConsistency,
        Check::DarknessInvariance,
        Check::NullProtocol,
        Check::ScalingInvariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Hermiticity => "hermiticity",
            Check::AnalyticNumeric => "analytic-numeric",
            Check::Vieta => "vieta",
            Check::DarkEigenpair => "dark-eigenpair",
            Check::NoDarkUnderShift => "no-dark-under-shift",
            Check::Unitarity => "unitarity",
            Check::GroupLaw => "group-law",
            Check::SpectralReconstruction => "spectral-reconstruction",
            Check::ExcitationConservation => "excitation-conservation",
            Check::BlockConsistency => "block-consistency",
            Check::DarknessInvariance => "darkness-invariance",
            Check::NullProtocol => "null-protocol",
            Check::ScalingInvariance => "scaling-invariance",
        }
    }

    pub fn from_name(name: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == name)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Random instances per check.
    pub draws: usize,
    /// Test hook: corrupt one off-diagonal entry of every built Hamiltonian
    /// before the Hermiticity check sees it.
    pub inject_non_hermitian: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: 0, draws: 200, inject_non_hermitian: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub check: Check,
    pub passed: bool,
    /// Worst observed value of the checked quantity.
    pub worst: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f, "{} {:<24} worst {:.3e} (tol {:.1e}) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.check.name(), self.worst, self.tolerance, self.detail,
        )
    }
}

/// Run the selected checks in order.
pub fn run_checks(checks: &[Check], opts: &VerifyOptions) -> Result<Vec<CheckReport>> {
    if checks.is_empty() {
        return Err(Error::InvalidParameter("no checks selected".into()));
    }
    checks.iter().map(|&c| run_check(c, opts)).collect()
}

pub fn run_check(check: Check, opts: &VerifyOptions) -> Result<CheckReport> {
    // each check gets its own stream so selections do not shift each other
    let mut rng = RandomSource::with_stream(opts.seed, check as u64);
    let n = opts.draws.max(1);
    let mut extra_ok = true;
    let (worst, tolerance, detail) = match check {
        Check::Hermiticity => hermiticity(&mut rng, n, opts.inject_non_hermitian)?,
        Check::AnalyticNumeric => {
            let (ev, vec) = analytic_numeric(&mut rng, n)?;
            extra_ok = vec <= 1e-7;
            (ev, 1e-8, format!("eigenvalues; vector distance {vec:.2e} (tol 1e-7)"))
        },
        Check::Vieta => (vieta(&mut rng, n)?, 1e-9, String::new()),
        Check::DarkEigenpair => (dark_eigenpair(&mut rng, n)?, 1e-12, "H v - w_a v".into()),
        Check::NoDarkUnderShift => {
            let found = no_dark_under_shift(&mut rng, n)?;
            (found as f64, 0.0, "dark states found with ds > 0".into())
        },
        Check::Unitarity => (unitarity(&mut rng, n)?, 1e-10, String::new()),
        Check::GroupLaw => (group_law(&mut rng, n)?, 1e-9, String::new()),
        Check::SpectralReconstruction => (reconstruction(&mut rng, n)?, 1e-9, "relative".into()),
        Check::ExcitationConservation => excitation_conservation(&mut rng, n)?,
        Check::BlockConsistency => (block_consistency(&mut rng, n)?, 0.0, "exact".into()),
        Check::DarknessInvariance => {
            let bad = darkness_invariance(&mut rng, n)?;
            (bad as f64, 0.0, "states losing darkness".into())
        },
        Check::NullProtocol => (null_protocol(&mut rng, n)?, 1e-12, String::new()),
        Check::ScalingInvariance => (scaling_invariance(&mut rng, n)?, 1e-10, String::new()),
    };
    Ok(CheckReport { check, passed: extra_ok && worst <= tolerance, worst, tolerance, detail })
}

/// Near-resonant model: `omega_c = 1`, `|1 - omega_i| <= 0.05`, `g_i <= 0.05`.
pub fn random_model(rng: &mut RandomSource, n_atoms: usize, cutoff: usize, rwa: bool) -> CavityModel {
    let atoms = (0..n_atoms)
        .map(|_| AtomParams::new(1.0 + rng.uniform_in(-0.05, 0.05), rng.uniform_in(0.0, 0.05)))
        .collect();
    CavityModel::new(1.0, atoms, cutoff, rwa).expect("parameters are in range")
}

/// Dense Hermitian matrix with entries uniform in the unit square.
pub fn random_hermitian(rng: &mut RandomSource, dim: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = C64::new(rng.uniform_in(-1.0, 1.0), 0.0);
        for j in i + 1..dim {
            let z = C64::new(rng.uniform_in(-1.0, 1.0), rng.uniform_in(-1.0, 1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

pub fn random_state(rng: &mut RandomSource, dim: usize) -> StateVector {
    let amps = (0..dim)
        .map(|_| C64::new(rng.uniform_in(-1.0, 1.0), rng.uniform_in(-1.0, 1.0)))
        .collect();
    StateVector::normalized(amps).expect("random vector is nonzero")
}

/// Worst eigenvalue error and worst eigenvector subspace distance between
/// an analytic spectrum and the numerical eigensolver on the same block.
pub fn compare_with_numeric(h: &ComplexMatrix, analytic: &AnalyticSpectrum) -> Result<(f64, f64)> {
    let num = herm_eig(h)?;
    let sorted = analytic.sorted();
    let mut ev: f64 = 0.0;
    let mut vec: f64 = 0.0;
    for (k, &l) in num.eigenvalues().iter().enumerate() {
        ev = ev.max((l - sorted[k].0).abs());
    }
    for range in num.clusters() {
        let a: Vec<StateVector> = sorted[range.clone()].iter().map(|x| x.1.clone()).collect();
        vec = vec.max(subspace_distance(&a, &num.eigenvectors()[range]));
    }
    Ok((ev, vec))
}

fn block(wc: f64, w1: f64, w2: f64, g1: f64, g2: f64) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[w1, 0.0, g1], &[0.0, w2, g2], &[g1, g2, wc]])
}

/// Both analytic branches against the eigensolver; half the draws use
/// equal atomic frequencies.
pub fn analytic_numeric(rng: &mut RandomSource, draws: usize) -> Result<(f64, f64)> {
    let mut worst = (0.0f64, 0.0f64);
    for k in 0..draws {
        let w1 = 1.0 - rng.uniform_in(-0.05, 0.05);
        let g1 = rng.uniform_in(0.0, 0.05);
        let g2 = rng.uniform_in(0.0, 0.05);
        let (w2, analytic) = if k % 2 == 0 {
            (w1, analytic_spectrum_degenerate(1.0, w1, g1, g2)?)
        } else {
            let w2 = 1.0 - rng.uniform_in(-0.05, 0.05);
            (w2, analytic_spectrum_shifted(1.0, w1, w2, g1, g2)?)
        };
        let (ev, vec) = compare_with_numeric(&block(1.0, w1, w2, g1, g2), &analytic)?;
        worst = (worst.0.max(ev), worst.1.max(vec));
    }
    Ok(worst)
}

fn hermiticity(rng: &mut RandomSource, draws: usize, inject: bool) -> Result<(f64, f64, String)> {
    let mut worst: f64 = 0.0;
    for k in 0..draws {
        let n = 1 + k % 4;
        let cutoff = 1 + (k / 4) % 3;
        let m = random_model(rng, n, cutoff, k % 2 == 0);
        let mut mats = vec![build_full_hamiltonian(&m)?];
        if m.rwa() {
            mats.push(single_excitation_block(&m)?);
        }
        for mut h in mats {
            if inject {
                h[(0, 1)] += C64::new(1e-3, 0.0);
            }
            let scale = h.max_abs().max(f64::MIN_POSITIVE);
            worst = worst.max(h.hermitian_residual()? / scale);
        }
    }
    Ok((worst, 1e-14, "relative to max|H|".into()))
}

/// Largest relative Vieta violation over random blocks.
pub fn vieta(rng: &mut RandomSource, draws: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..draws {
        let (w1, w2) = (1.0 + rng.uniform_in(-0.05, 0.05), 1.0 + rng.uniform_in(-0.05, 0.05));
        let (g1, g2) = (rng.uniform_in(0.0, 0.05), rng.uniform_in(0.0, 0.05));
        let (a, b, c) = cubic_coefficients(1.0, w1, w2, g1, g2);
        let r = crate::numerics::cubic_roots(a, b, c)?;
        let rel = |x: f64, y: f64| (x - y).abs() / y.abs().max(f64::MIN_POSITIVE);
        worst = worst
            .max(rel(r[0] + r[1] + r[2], -a))
            .max(rel(r[0] * r[1] + r[0] * r[2] + r[1] * r[2], b))
            .max(rel(r[0] * r[1] * r[2], -c));
    }
    Ok(worst)
}

/// Largest `|H v - w_a v|` for the equal-frequency dark state.
pub fn dark_eigenpair(rng: &mut RandomSource, draws: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..draws {
        let wa = 1.0 + rng.uniform_in(-0.05, 0.05);
        let (g1, g2) = (rng.uniform_in(0.0, 0.05), rng.uniform_in(0.0, 0.05));
        worst = worst.max(dark_residual(1.0, wa, g1, g2, wa)?);
    }
    Ok(worst)
}

/// `|H v - lambda v|` for `v = (-g2, g1, 0)/norm` in the equal-frequency block.
pub fn dark_residual(wc: f64, wa: f64, g1: f64, g2: f64, lambda: f64) -> Result<f64> {
    let v = dark_state_block(g1, g2)?;
    let hv = block(wc, wa, wa, g1, g2).mul_vec(v.amplitudes())?;
    Ok(hv.iter().zip(v.amplitudes()).map(|(a, b)| (a - b * lambda).norm_sqr()).sum::<f64>().sqrt())
}

/// Number of dark states found in shifted blocks (`ds` in `(0, 0.01]`,
/// photon-support threshold 1e-6).
pub fn no_dark_under_shift(rng: &mut RandomSource, draws: usize) -> Result<usize> {
    let mut found = 0;
    for _ in 0..draws {
        let wa = 1.0 + rng.uniform_in(-0.05, 0.05);
        let ds = 0.01 * (1.0 - rng.uniform());
        let dg = rng.uniform_in(0.0, 0.007);
        let (g1, g2) = (rng.uniform_in(0.005, 0.05), rng.uniform_in(0.005, 0.05));
        let m = CavityModel::two_atoms(1.0, wa + ds, wa, g1 + dg, g2)?;
        found += find_dark_states(&m, Subspace::SingleExcitation, 1e-6)?.len();
    }
    Ok(found)
}

const EVOLVE_TIMES: [f64; 4] = [0.1, 1.0, 10.0, 100.0];

/// Largest `| |psi(t)| - 1 |` for random Hermitian matrices up to 16x16.
pub fn unitarity(rng: &mut RandomSource, draws: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 0..draws {
        let dim = 1 + k % 16;
        let spec = herm_eig(&random_hermitian(rng, dim))?;
        let psi = random_state(rng, dim);
        for t in EVOLVE_TIMES {
            worst = worst.max((evolve(&spec, &psi, t)?.norm() - 1.0).abs());
        }
    }
    Ok(worst)
}

/// Largest componentwise gap between `U(t2) U(t1) psi` and `U(t1 + t2) psi`.
pub fn group_law(rng: &mut RandomSource, draws: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 0..draws {
        let dim = 1 + k % 16;
        let spec = herm_eig(&random_hermitian(rng, dim))?;
        let psi = random_state(rng, dim);
        let (t1, t2) = (rng.uniform_in(0.0, 20.0), rng.uniform_in(0.0, 20.0));
        let a = evolve(&spec, &evolve(&spec, &psi, t1)?, t2)?;
        let b = evolve(&spec, &psi, t1 + t2)?;
        for i in 0..dim {
            worst = worst.max((a[i] - b[i]).norm());
        }
    }
    Ok(worst)
}

/// Largest `|sum_k l_k v_k v_k^* - M| / max|M|`.
pub fn reconstruction(rng: &mut RandomSource, draws: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 0..draws {
        let m = random_hermitian(rng, 1 + k % 16);
        let r = herm_eig(&m)?.reconstruct().sub(&m)?;
        worst = worst.max(r.max_abs() / m.max_abs());
    }
    Ok(worst)
}

fn excitation_conservation(rng: &mut RandomSource, draws: usize) -> Result<(f64, f64, String)> {
    let mut worst: f64 = 0.0;
    let mut min_broken = f64::INFINITY;
    for k in 0..draws {
        let m = random_model(rng, 1 + k % 4, 1 + (k / 4) % 3, true);
        let n_op = excitation_number(&m);
        worst = worst.max(build_full_hamiltonian(&m)?.commutator(&n_op)?.max_abs());
        let full = m.with_rwa(false);
        if full.atoms().iter().any(|a| a.g > 0.0) {
            min_broken = min_broken.min(build_full_hamiltonian(&full)?.commutator(&n_op)?.max_abs());
        }
    }
    // without RWA the commutator must not vanish
    let value = if min_broken > 0.0 { worst } else { f64::INFINITY };
    Ok((value, 1e-12, format!("|[H, N]| under RWA; min without RWA {min_broken:.2e}")))
}

/// Largest entry gap between the block and the corresponding full submatrix.
pub fn block_consistency(rng: &mut RandomSource, draws: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 0..draws {
        let n = 1 + k % 4;
        let m = random_model(rng, n, 1 + (k / 4) % 3, true);
        let full = build_full_hamiltonian(&m)?.submatrix(&single_excitation_indices(n));
        worst = worst.max(single_excitation_block(&m)?.sub(&full)?.max_abs());
    }
    Ok(worst)
}

/// Count of dark states that stop being dark after evolution for
/// `t = 1, 10, 100`.
pub fn darkness_invariance(rng: &mut RandomSource, draws: usize) -> Result<usize> {
    let tol = 1e-9;
    let mut bad = 0;
    for k in 0..draws {
        let (g1, g2) = (rng.uniform_in(0.001, 0.05), rng.uniform_in(0.001, 0.05));
        let wa = 1.0 + rng.uniform_in(-0.05, 0.05);
        let m = CavityModel::two_atoms(1.0, wa, wa, g1, g2)?;
        let (psi, h, subspace) = if k % 2 == 0 {
            (dark_state_block(g1, g2)?, single_excitation_block(&m)?, Subspace::SingleExcitation)
        } else {
            // equal couplings: the singlet is dark in the full space
            let m = CavityModel::two_atoms(1.0, wa, wa, g1, g1)?;
            let mut amps = singlet_ensemble(2, &[])?.into_amplitudes();
            amps.resize(m.full_dim(), C64::new(0.0, 0.0));
            let psi = StateVector::normalized(amps)?;
            let h = build_full_hamiltonian(&m)?;
            let spec = herm_eig(&h)?;
            for t in [1.0, 10.0, 100.0] {
                if !is_dark(&m, &evolve(&spec, &psi, t)?, Subspace::Full, tol)?.is_dark {
                    bad += 1;
                }
            }
            continue;
        };
        let spec = herm_eig(&h)?;
        for t in [1.0, 10.0, 100.0] {
            if !is_dark(&m, &evolve(&spec, &psi, t)?, subspace, tol)?.is_dark {
                bad += 1;
            }
        }
    }
    Ok(bad)
}

/// Largest `p_ds(t)` with no shift.
pub fn null_protocol(rng: &mut RandomSource, draws: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..draws {
        let mut cfg = ZSJumpConfig::with_half_coupling(rng.uniform_in(0.001, 0.05));
        cfg.g2 = rng.uniform_in(0.001, 0.05);
        cfg.omega_a = 1.0 + rng.uniform_in(-0.05, 0.05);
        let jump = ZSJump::new(&cfg)?;
        for _ in 0..8 {
            worst = worst.max(jump.yield_at(rng.uniform_in(0.0, 1e4)));
        }
    }
    Ok(worst)
}

/// Largest `|p_ds(t) - p_ds'(t / s)|` where every frequency is scaled by `s`.
pub fn scaling_invariance(rng: &mut RandomSource, draws: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..draws {
        let mut cfg = ZSJumpConfig::with_half_coupling(rng.uniform_in(0.001, 0.05));
        cfg.omega_a = 1.0 + rng.uniform_in(-0.05, 0.05);
        cfg.ds = rng.uniform_in(0.0, 0.01);
        cfg.dg = rng.uniform_in(0.0, 0.007);
        let s = rng.uniform_in(0.1, 10.0);
        let scaled = ZSJumpConfig {
            omega_c: cfg.omega_c * s,
            omega_a: cfg.omega_a * s,
            g1: cfg.g1 * s,
            g2: cfg.g2 * s,
            ds: cfg.ds * s,
            dg: cfg.dg * s,
            ..cfg.clone()
        };
        let (a, b) = (ZSJump::new(&cfg)?, ZSJump::new(&scaled)?);
        let t = rng.uniform_in(0.0, 2000.0);
        worst = worst.max((a.yield_at(t) - b.yield_at(t / s)).abs());
    }
    Ok(worst)
}

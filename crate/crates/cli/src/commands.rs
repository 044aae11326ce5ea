use std::f64::consts::TAU;
use anyhow::{ bail, Result };
use num_complex::Complex64 as C64;
use tavis::{
    darkstates::{ analytic_spectrum, find_dark_states, is_dark, Subspace },
    model::{ build_full_hamiltonian, single_excitation_block },
    numerics::{ herm_eig, subspace_distance, ComplexMatrix, Spectrum, StateVector },
    protocol::{
        empirical_success,
        ks_geometric,
        pds_max,
        run_trials,
        success_after_k,
        sweep,
        DeltaT,
        GridAxis,
        ZSJump,
        ZSJumpConfig,
    },
    verify::{ run_checks, Check, VerifyOptions },
    CavityModel,
};
use crate::csv::{ float, Table };

/// Report frequencies in units of `omega_c`, or in Hz given the cavity
/// frequency in Hz. Times follow as `omega_c t` or seconds.
#[derive(Clone, Copy, Debug)]
pub struct Units {
    omega_c: f64,
    physical_hz: Option<f64>,
}

impl Units {
    pub fn new(omega_c: f64, physical_hz: Option<f64>) -> Result<Self> {
        if let Some(f) = physical_hz {
            if !(f.is_finite() && f > 0.0) {
                bail!("--physical must be a positive frequency in Hz");
            }
        }
        Ok(Self { omega_c, physical_hz })
    }

    fn freq(&self, w: f64) -> f64 {
        w / self.omega_c * self.physical_hz.unwrap_or(1.0)
    }

    fn time(&self, t: f64) -> f64 {
        match self.physical_hz {
            Some(f) => t * self.omega_c / (TAU * f),
            None => t * self.omega_c,
        }
    }
}

/// Output of one subcommand: CSV body and a human summary for stderr.
pub struct Report {
    pub csv: String,
    pub summary: String,
}

fn component_header(prefix: &str, dim: usize) -> Vec<String> {
    (0..dim).flat_map(|k| [format!("{prefix}{k}_re"), format!("{prefix}{k}_im")]).collect()
}

fn components(v: &[C64]) -> Vec<String> {
    v.iter().flat_map(|z| [float(z.re), float(z.im)]).collect()
}

fn hamiltonian(m: &CavityModel, subspace: Subspace) -> Result<ComplexMatrix> {
    Ok(match subspace {
        Subspace::SingleExcitation => single_excitation_block(m)?,
        Subspace::Full => build_full_hamiltonian(m)?,
    })
}

pub fn spectrum(m: &CavityModel, subspace: Subspace, units: Units) -> Result<Report> {
    let h = hamiltonian(m, subspace)?;
    let spec = herm_eig(&h)?;
    let dim = spec.dim();
    if subspace == Subspace::SingleExcitation && m.n_atoms() == 2 {
        return two_atom_spectrum(m, &spec, units);
    }
    let mut header = vec!["index".to_string(), "eigenvalue".to_string()];
    header.extend(component_header("v", dim));
    let mut t = Table::new(&header);
    for (k, (l, v)) in spec.pairs().enumerate() {
        let mut row = vec![k.to_string(), float(units.freq(l))];
        row.extend(components(v.amplitudes()));
        t.row(row);
    }
    Ok(Report { csv: t.into_string(), summary: format!("{dim} eigenpairs") })
}

/// Rows in closed-form order (for equal frequencies the dark state first),
/// numerical pair matched by rank, then the closed-form pair.
fn two_atom_spectrum(m: &CavityModel, spec: &Spectrum, units: Units) -> Result<Report> {
    let [a, b] = m.atoms() else { unreachable!("two atoms") };
    let analytic = analytic_spectrum(m.omega_c(), a.omega, b.omega, a.g, b.g)?;
    let mut rank: Vec<usize> = (0..3).collect();
    rank.sort_by(|&i, &j| analytic.eigenvalues[i].total_cmp(&analytic.eigenvalues[j]).then(i.cmp(&j)));
    let clusters = spec.clusters();

    let mut header: Vec<String> = ["index", "eigenvalue", "analytic_eigenvalue", "discrepancy"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend(component_header("v", 3));
    header.extend(component_header("a", 3));
    let mut t = Table::new(&header);
    let mut worst: f64 = 0.0;
    for (r, v_analytic) in analytic.eigenvectors.iter().enumerate() {
        let k = rank.iter().position(|&i| i == r).expect("rank is a permutation");
        let cluster = clusters.iter().find(|c| c.contains(&k)).expect("clusters cover all").clone();
        let numeric_span = &spec.eigenvectors()[cluster.clone()];
        let analytic_span: Vec<StateVector> = cluster
            .clone()
            .map(|j| analytic.eigenvectors[rank[j]].clone())
            .collect();
        let (l, v) = (spec.eigenvalues()[k], &spec.eigenvectors()[k]);
        let la = analytic.eigenvalues[r];
        let disc = (l - la).abs().max(subspace_distance(&analytic_span, numeric_span));
        worst = worst.max(disc);
        let mut row = vec![r.to_string(), float(units.freq(l)), float(units.freq(la)), float(disc)];
        row.extend(components(v.amplitudes()));
        row.extend(components(v_analytic.amplitudes()));
        t.row(row);
    }
    Ok(Report {
        csv: t.into_string(),
        summary: format!("3 eigenpairs, {:?} branch, worst analytic-numeric discrepancy {worst:.3e}", analytic.branch),
    })
}

pub fn dark_find(m: &CavityModel, subspace: Subspace, tol: f64, units: Units) -> Result<Report> {
    if !(tol.is_finite() && tol >= 0.0) {
        bail!("--tol must be a finite number >= 0");
    }
    let h = hamiltonian(m, subspace)?;
    let dark = find_dark_states(m, subspace, tol)?;
    let dim = h.rows();
    let mut header: Vec<String> = ["index", "eigenvalue", "emit_residual", "absorb_residual", "photon_support"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend(component_header("v", dim));
    let mut t = Table::new(&header);
    for (k, v) in dark.iter().enumerate() {
        let hv = h.mul_vec(v.amplitudes())?;
        let energy: f64 = v.amplitudes().iter().zip(&hv).map(|(a, b)| (a.conj() * b).re).sum();
        let report = is_dark(m, v, subspace, tol)?;
        let mut row = vec![
            k.to_string(),
            float(units.freq(energy)),
            float(report.emit_residual),
            float(report.absorb_residual),
            float(report.photon_support),
        ];
        row.extend(components(v.amplitudes()));
        t.row(row);
    }
    Ok(Report {
        csv: t.into_string(),
        summary: format!("{} dark state(s) in the {subspace:?} space at tol {tol:e}", dark.len()),
    })
}

pub fn run_sweep(cfg: &ZSJumpConfig, ds: GridAxis, dg: GridAxis, units: Units) -> Result<Report> {
    let r = sweep(cfg, ds, dg)?;
    let mut t = Table::new(&["ds", "dg", "p_max", "t_star"]);
    for (s, g, p, ts) in r.rows() {
        t.row(vec![float(units.freq(s)), float(units.freq(g)), float(p), float(units.time(ts))]);
    }
    let (i, j, p) = r.global_max();
    let summary = format!(
        "global max p_star = {p:.6e} at ds = {:.6e}, dg = {:.6e}, t_star = {:.6e} ({} x {} grid)",
        units.freq(r.ds_grid[i]), units.freq(r.dg_grid[j]), units.time(r.t_star[i][j]),
        r.ds_grid.len(), r.dg_grid.len(),
    );
    Ok(Report { csv: t.into_string(), summary })
}

/// How `--delta-t` picks the waiting time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WaitMode {
    Uniform,
    /// Fixed at the time of maximal yield.
    Star,
    Fixed(f64),
}

pub fn parse_wait(s: &str) -> Result<WaitMode, String> {
    match s {
        "uniform" => Ok(WaitMode::Uniform),
        "star" => Ok(WaitMode::Star),
        _ => match s.parse::<f64>() {
            Ok(t) if t.is_finite() && t >= 0.0 => Ok(WaitMode::Fixed(t)),
            _ => Err(format!("expected 'uniform', 'star' or a time >= 0, got '{s}'")),
        },
    }
}

pub fn run_protocol(cfg: &ZSJumpConfig, wait: WaitMode, trials: usize, max_cycles: usize, units: Units) -> Result<Report> {
    if trials == 0 {
        bail!("--trials must be >= 1");
    }
    let mut cfg = cfg.clone();
    cfg.delta_t = match wait {
        WaitMode::Uniform => DeltaT::Uniform,
        WaitMode::Star => DeltaT::Fixed(pds_max(&cfg)?.0),
        WaitMode::Fixed(t) => DeltaT::Fixed(t),
    };
    let jump = ZSJump::new(&cfg)?;
    let p = jump.mean_yield();
    let results = run_trials(&cfg, trials, max_cycles)?;

    let mut t = Table::new(&["trial", "cycles_used", "outcome"]);
    for r in &results {
        let outcome = if r.success { "dark_success" } else { "photon_detected" };
        t.row(vec![r.trial.to_string(), r.cycles_used.to_string(), outcome.to_string()]);
    }

    let mut s = String::new();
    let wait_desc = match cfg.delta_t {
        DeltaT::Uniform => format!("uniform on [0, {:.6e}]", units.time(jump.horizon())),
        DeltaT::Fixed(t) => format!("fixed {:.6e}", units.time(t)),
    };
    s += &format!("per-cycle success probability p = {p:.6e} (wait {wait_desc})\n");
    if cfg.ds == 0.0 && cfg.dg == 0.0 {
        s += "no shift: the dark state is orthogonal to the pumped photon state and stays so, p_ds = 0\n";
    }
    let n = results.len() as f64;
    let mut ks: Vec<usize> = std::iter::successors(Some(1usize), |k| k.checked_mul(10))
        .take_while(|&k| k < max_cycles)
        .collect();
    ks.push(max_cycles);
    s += "cycles  empirical  closed-form  z\n";
    let mut worst_z: f64 = 0.0;
    for k in ks {
        let expect = success_after_k(p, k as u64);
        let got = empirical_success(&results, k);
        let se = (expect * (1.0 - expect) / n).sqrt();
        let z = if se > 0.0 { (got - expect) / se } else { 0.0 };
        worst_z = worst_z.max(z.abs());
        s += &format!("{k:>6}  {got:.6}   {expect:.6}     {z:+.2}\n");
    }
    let successes = results.iter().filter(|r| r.success).count();
    s += &format!("{successes} of {trials} trials succeeded; max |z| = {worst_z:.2}");
    if let DeltaT::Fixed(_) = cfg.delta_t {
        let k = ks_geometric(&results, p, max_cycles);
        s += &format!(
            "\nKS vs geometric: D = {:.3e}, 1% critical {:.3e}: {}",
            k.statistic, k.critical, if k.pass { "consistent" } else { "rejected" },
        );
    }
    Ok(Report { csv: t.into_string(), summary: s })
}

/// Parsed `--checks` value.
#[derive(Clone, Debug)]
pub struct CheckList(pub Vec<Check>);

pub fn parse_checks(s: &str) -> Result<CheckList, String> {
    if s.trim() == "all" {
        return Ok(CheckList(Check::ALL.to_vec()));
    }
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|name| {
            Check::from_name(name).ok_or_else(|| {
                let known: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
                format!("unknown check '{name}' (known: {})", known.join(", "))
            })
        })
        .collect::<Result<_, _>>()
        .map(CheckList)
}

/// Runs the checks; the flag is false when any failed.
pub fn run_verify(checks: &[Check], opts: &VerifyOptions) -> Result<(String, bool)> {
    let reports = run_checks(checks, opts)?;
    let mut out = String::new();
    for r in &reports {
        out += &format!("{r}\n");
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    out += &format!("{passed} of {} checks passed\n", reports.len());
    Ok((out, passed == reports.len()))
}

use tavis::protocol::{
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
};

#[test]
fn larger_frequency_shift_gives_larger_yield() {
    let (_, small) = pds_max(&ZSJumpConfig::default().with_shift(0.001, 0.0)).unwrap();
    let (_, large) = pds_max(&ZSJumpConfig::default().with_shift(0.01, 0.0)).unwrap();
    assert!(large > small, "{large} vs {small}");
}

/// `p_star` grows like `ds^2` for small shifts, so a step `h` moves it by
/// about `2h/ds` relative. The response must be that smooth and linear.
#[test]
fn peak_yield_is_continuous_in_the_shift() {
    let h = 1e-6;
    for (ds, dg) in [(0.002, 0.0), (0.004, 0.002), (0.01, 0.007), (0.01, 0.0)] {
        let at = |x: f64| pds_max(&ZSJumpConfig::default().with_shift(x, dg)).unwrap().1;
        let (p0, p1, p2) = (at(ds), at(ds + h), at(ds + 2.0 * h));
        let rel = (p1 - p0).abs() / p0;
        assert!(rel <= 3.0 * h / ds, "ds = {ds}: relative change {rel:e}");
        let (d1, d2) = (p1 - p0, p2 - p0);
        assert!((d2 - 2.0 * d1).abs() <= 0.01 * d2.abs(), "ds = {ds}: {d1:e}, {d2:e}");
    }
}

#[test]
fn doubling_time_steps_barely_moves_the_sweep() {
    let ds = GridAxis::new(0.0, 0.01, 6).unwrap();
    let dg = GridAxis::new(0.0, 0.007, 5).unwrap();
    let coarse = sweep(&ZSJumpConfig::default(), ds, dg).unwrap();
    let fine_cfg = ZSJumpConfig { t_steps: 4000, ..ZSJumpConfig::default() };
    let fine = sweep(&fine_cfg, ds, dg).unwrap();
    for (a, b) in coarse.rows().zip(fine.rows()) {
        assert!((a.2 - b.2).abs() <= 0.01 * b.2 + 1e-15, "{a:?} vs {b:?}");
    }
}

#[test]
fn sweep_matches_pointwise_maxima() {
    let ds = GridAxis::new(0.002, 0.01, 3).unwrap();
    let dg = GridAxis::new(0.0, 0.007, 3).unwrap();
    let r = sweep(&ZSJumpConfig::default(), ds, dg).unwrap();
    for (s, g, p, t) in r.rows() {
        let (t1, p1) = pds_max(&ZSJumpConfig::default().with_shift(s, g)).unwrap();
        assert_eq!((t, p), (t1, p1));
    }
}

#[test]
fn trials_follow_the_geometric_law() {
    let mut cfg = ZSJumpConfig::default().with_shift(0.002, 0.001);
    let (t_star, p) = pds_max(&cfg).unwrap();
    cfg.delta_t = DeltaT::Fixed(t_star);
    cfg.seed = 2024;
    let n = 20_000;
    let trials = run_trials(&cfg, n, 2000).unwrap();
    for k in [1, 10, 100, 1000] {
        let expect = success_after_k(p, k as u64);
        let se = (expect * (1.0 - expect) / n as f64).sqrt();
        let got = empirical_success(&trials, k);
        assert!((got - expect).abs() <= 4.0 * se + 1e-12, "k = {k}: {got} vs {expect}");
    }
    assert!(ks_geometric(&trials, p, 2000).pass);
}

#[test]
fn trials_do_not_depend_on_thread_count() {
    let cfg = ZSJumpConfig { seed: 9, ..ZSJumpConfig::default().with_shift(0.005, 0.003) };
    let serial = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let wide = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = serial.install(|| run_trials(&cfg, 500, 300).unwrap());
    let b = wide.install(|| run_trials(&cfg, 500, 300).unwrap());
    assert_eq!(a, b);
    let mut other = cfg.clone();
    other.seed = 10;
    assert_ne!(a, run_trials(&other, 500, 300).unwrap());
}

#[test]
fn uniform_waiting_time_uses_mean_yield() {
    let cfg = ZSJumpConfig { seed: 77, ..ZSJumpConfig::default().with_shift(0.01, 0.007) };
    let jump = ZSJump::new(&cfg).unwrap();
    let p = jump.mean_yield();
    let n = 20_000;
    let trials = run_trials(&cfg, n, 1).unwrap();
    let got = empirical_success(&trials, 1);
    let se = (p * (1.0 - p) / n as f64).sqrt();
    assert!((got - p).abs() <= 4.0 * se, "{got} vs {p}");
}

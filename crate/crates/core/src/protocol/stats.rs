use super::TrialSummary;

/// Kolmogorov-Smirnov critical coefficient at 1% significance:
/// reject when `sqrt(n) * D > 1.628`.
pub const KS_CRITICAL_1PCT: f64 = 1.628;

/// `1 - (1 - p)^k`, evaluated as `-expm1(k * ln1p(-p))`.
pub fn success_after_k(p: f64, k: u64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    if k == 0 || p == 0.0 {
        return 0.0;
    }
    if p == 1.0 {
        return 1.0;
    }
    -(k as f64 * (-p).ln_1p()).exp_m1()
}

/// Fraction of trials that succeeded within `k` cycles.
pub fn empirical_success(trials: &[TrialSummary], k: usize) -> f64 {
    if trials.is_empty() {
        return 0.0;
    }
    let hits = trials.iter().filter(|t| t.success && t.cycles_used <= k).count();
    hits as f64 / trials.len() as f64
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KsResult {
    /// `max_k |F_emp(k) - F_geom(k)|` over `k = 1..=max_cycles`.
    pub statistic: f64,
    /// `KS_CRITICAL_1PCT / sqrt(n)`.
    pub critical: f64,
    pub pass: bool,
}

/// One-sample KS test of the success-cycle distribution against a
/// geometric law with success probability `p`, up to the censoring cap
/// `max_cycles` (both CDFs are compared only where both are observed).
pub fn ks_geometric(trials: &[TrialSummary], p: f64, max_cycles: usize) -> KsResult {
    let n = trials.len();
    let mut counts = vec![0usize; max_cycles + 1];
    for t in trials.iter().filter(|t| t.success && t.cycles_used <= max_cycles) {
        counts[t.cycles_used] += 1;
    }
    let mut cum = 0usize;
    let mut statistic: f64 = 0.0;
    for (k, &c) in counts.iter().enumerate().skip(1) {
        cum += c;
        let emp = cum as f64 / n.max(1) as f64;
        statistic = statistic.max((emp - success_after_k(p, k as u64)).abs());
    }
    let critical = KS_CRITICAL_1PCT / (n.max(1) as f64).sqrt();
    KsResult { statistic, critical, pass: statistic <= critical }
}

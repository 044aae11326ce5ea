use rayon::prelude::*;
use crate::error::{ Error, Result };
use super::{ ZSJump, ZSJumpConfig };

/// `n` evenly spaced points from `lo` to `hi` inclusive. `n = 1` gives `[lo]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n).map(|k| if k == n - 1 { hi } else { lo + step * k as f64 }).collect()
        },
    }
}

/// One sweep axis, `points` values from `lo` to `hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridAxis {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl GridAxis {
    pub fn new(lo: f64, hi: f64, points: usize) -> Result<Self> {
        let axis = Self { lo, hi, points };
        axis.validate()?;
        Ok(axis)
    }

    fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite()) {
            return Err(Error::NonFinite("grid range"));
        }
        if self.lo < 0.0 || self.hi < self.lo {
            return Err(Error::InvalidParameter(format!(
                "range {}:{} must satisfy 0 <= lo <= hi", self.lo, self.hi,
            )));
        }
        // a single point only makes sense for a zero-width range
        let ok = match self.points {
            0 => false,
            1 => self.lo == self.hi,
            _ => self.hi > self.lo,
        };
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "range {}:{} cannot have {} points", self.lo, self.hi, self.points,
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.lo, self.hi, self.points)
    }
}

/// Maximal yields over a `(ds, dg)` grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub ds_grid: Vec<f64>,
    pub dg_grid: Vec<f64>,
    /// `p_max[i][j]` at `(ds_grid[i], dg_grid[j])`.
    pub p_max: Vec<Vec<f64>>,
    pub t_star: Vec<Vec<f64>>,
}

impl SweepResult {
    /// `(i, j, p)` of the largest entry; first occurrence in row-major order.
    pub fn global_max(&self) -> (usize, usize, f64) {
        let mut best = (0, 0, f64::NEG_INFINITY);
        for (i, row) in self.p_max.iter().enumerate() {
            for (j, &p) in row.iter().enumerate() {
                if p > best.2 {
                    best = (i, j, p);
                }
            }
        }
        best
    }

    /// Rows `(ds, dg, p_max, t_star)`, row-major in `ds`.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64, f64)> + '_ {
        self.ds_grid.iter().enumerate().flat_map(move |(i, &ds)| {
            self.dg_grid
                .iter()
                .enumerate()
                .map(move |(j, &dg)| (ds, dg, self.p_max[i][j], self.t_star[i][j]))
        })
    }
}

/// Evaluate `pds_max` at every grid point. Points run in parallel; the
/// result does not depend on scheduling.
pub fn sweep(base: &ZSJumpConfig, ds: GridAxis, dg: GridAxis) -> Result<SweepResult> {
    ds.validate()?;
    dg.validate()?;
    let ds_grid = ds.values();
    let dg_grid = dg.values();
    let points: Vec<(f64, f64)> = ds_grid
        .iter()
        .flat_map(|&a| dg_grid.iter().map(move |&b| (a, b)))
        .collect();
    let results: Vec<(f64, f64)> = points
        .par_iter()
        .map(|&(a, b)| Ok(ZSJump::new(&base.clone().with_shift(a, b))?.max_yield()))
        .collect::<Result<_>>()?;
    let cols = dg_grid.len();
    let p_max = results.chunks(cols).map(|r| r.iter().map(|x| x.1).collect()).collect();
    let t_star = results.chunks(cols).map(|r| r.iter().map(|x| x.0).collect()).collect();
    Ok(SweepResult { ds_grid, dg_grid, p_max, t_star })
}

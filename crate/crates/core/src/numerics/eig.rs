//! Hermitian eigendecomposition, spectral time evolution and kernels.

use std::ops::Range;
use nalgebra::{ DMatrix, SymmetricEigen, SVD };
use num_complex::Complex64 as C64;
use crate::error::{ Error, Result };
use super::{
    matrix::ComplexMatrix,
    state::{ self, StateVector },
};

/// Eigenvalues closer than this fraction of `max|M|` form one cluster.
pub const CLUSTER_TOL: f64 = 1e-9;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<StateVector>,
    scale: f64,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] { &self.eigenvalues }

    pub fn eigenvectors(&self) -> &[StateVector] { &self.eigenvectors }

    pub fn dim(&self) -> usize { self.eigenvalues.len() }

    /// `max|M|` of the decomposed matrix.
    pub fn scale(&self) -> f64 { self.scale }

    pub fn pairs(&self) -> impl Iterator<Item = (f64, &StateVector)> {
        self.eigenvalues.iter().copied().zip(self.eigenvectors.iter())
    }

    /// Index ranges of eigenvalue clusters (consecutive gaps below
    /// `CLUSTER_TOL * max|M|`).
    pub fn clusters(&self) -> Vec<Range<usize>> {
        cluster_ranges(&self.eigenvalues, CLUSTER_TOL * self.scale)
    }

    /// `sum_k lambda_k |v_k><v_k|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |i, j| {
            self.pairs().map(|(l, v)| v[i] * v[j].conj() * l).sum()
        })
    }

    /// Weights `w_k = <bra|v_k><v_k|ket>` so that
    /// `<bra| exp(-iHt) |ket> = sum_k w_k exp(-i lambda_k t)`.
    pub fn transition_weights(&self, bra: &StateVector, ket: &StateVector) -> Result<Vec<C64>> {
        self.check_dim(bra.dim())?;
        self.check_dim(ket.dim())?;
        self.eigenvectors
            .iter()
            .map(|v| Ok(bra.inner(v)? * v.inner(ket)?))
            .collect()
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), got })
        }
    }
}

/// Evaluate `sum_k w_k exp(-i lambda_k t)`.
pub fn propagate_weights(eigenvalues: &[f64], weights: &[C64], t: f64) -> C64 {
    eigenvalues
        .iter()
        .zip(weights)
        .map(|(&l, &w)| w * C64::from_polar(1.0, -l * t))
        .sum()
}

pub(crate) fn cluster_ranges(sorted: &[f64], gap: f64) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=sorted.len() {
        if k == sorted.len() || sorted[k] - sorted[k - 1] > gap {
            out.push(start..k);
            start = k;
        }
    }
    out
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvectors are orthonormalized within degenerate clusters and each is
/// phase-fixed so its largest component is real positive.
pub fn herm_eig(m: &ComplexMatrix) -> Result<Spectrum> {
    let n = m.dim()?;
    if n == 0 {
        return Err(Error::InvalidParameter("empty matrix".into()));
    }
    if m.as_slice().iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::NonFinite("matrix entries"));
    }
    m.check_hermitian()?;
    let scale = m.max_abs();
    // Remove the mean diagonal first: eigenvector accuracy scales with the
    // matrix norm over the gap, and the spread is often far below the mean.
    let mean = (0..n).map(|i| m[(i, i)].re).sum::<f64>() / n as f64;
    // symmetrize so the solver sees an exactly Hermitian input
    let sym = DMatrix::from_fn(n, n, |i, j| {
        let z = 0.5 * (m[(i, j)] + m[(j, i)].conj());
        if i == j { z - mean } else { z }
    });
    let eig = SymmetricEigen::new(sym);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]).then(a.cmp(&b)));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k] + mean).collect();
    let mut columns: Vec<Vec<C64>> = order
        .iter()
        .map(|&k| eig.eigenvectors.column(k).iter().copied().collect())
        .collect();

    for range in cluster_ranges(&eigenvalues, CLUSTER_TOL * scale) {
        gram_schmidt(&mut columns[range]);
    }
    let eigenvectors = columns
        .into_iter()
        .map(|mut c| {
            state::fix_phase(&mut c);
            StateVector::from_unit_unchecked(c)
        })
        .collect();
    Ok(Spectrum { eigenvalues, eigenvectors, scale })
}

fn gram_schmidt(vs: &mut [Vec<C64>]) {
    for k in 0..vs.len() {
        let (done, rest) = vs.split_at_mut(k);
        let v = &mut rest[0];
        for u in done.iter() {
            let c: C64 = u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= c * y;
            }
        }
        let norm = state::l2_norm(v);
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

/// `exp(-i H t) |psi0>` through the spectral decomposition of `H`.
pub fn evolve(spec: &Spectrum, psi0: &StateVector, t: f64) -> Result<StateVector> {
    spec.check_dim(psi0.dim())?;
    if !t.is_finite() {
        return Err(Error::NonFinite("time"));
    }
    let mut out = vec![C64::new(0.0, 0.0); spec.dim()];
    for (l, v) in spec.pairs() {
        let c = v.inner(psi0)? * C64::from_polar(1.0, -l * t);
        for (o, a) in out.iter_mut().zip(v.amplitudes()) {
            *o += c * a;
        }
    }
    Ok(StateVector::from_unit_unchecked(out))
}

/// Orthonormal basis of `{v : |Mv| <= tol * max|M| * |v|}`, from the right
/// singular vectors of `M`.
pub fn null_space(m: &ComplexMatrix, tol: f64) -> Vec<StateVector> {
    let (rows, cols) = (m.rows(), m.cols());
    if cols == 0 {
        return Vec::new();
    }
    let threshold = tol * m.max_abs();
    // pad with zero rows so V is square
    let padded = DMatrix::from_fn(rows.max(cols), cols, |i, j| {
        if i < rows { m[(i, j)] } else { C64::new(0.0, 0.0) }
    });
    let svd = SVD::new(padded, false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut out: Vec<(f64, usize)> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= threshold)
        .map(|(k, &s)| (s, k))
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    out.into_iter()
        .map(|(_, k)| {
            let mut v: Vec<C64> = v_t.row(k).iter().map(|z| z.conj()).collect();
            state::fix_phase(&mut v);
            StateVector::from_unit_unchecked(v)
        })
        .collect()
}

/// Largest `|(1 - P_b) a_k|` or `|(1 - P_a) b_k|` over both sets: the sine
/// of the largest principal angle when both spans have equal dimension.
pub fn subspace_distance(a: &[StateVector], b: &[StateVector]) -> f64 {
    fn one_way(a: &[StateVector], b: &[StateVector]) -> f64 {
        a.iter()
            .map(|v| {
                let mut r: Vec<C64> = v.amplitudes().to_vec();
                for u in b {
                    let c = u.inner(v).unwrap_or_default();
                    for (x, y) in r.iter_mut().zip(u.amplitudes()) {
                        *x -= c * y;
                    }
                }
                state::l2_norm(&r)
            })
            .fold(0.0, f64::max)
    }
    one_way(a, b).max(one_way(b, a))
}

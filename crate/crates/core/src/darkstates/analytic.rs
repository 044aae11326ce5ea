//! Closed-form eigenstructure of the two-atom single-excitation block
//!
//! ```text
//!     | w1  0   g1 |
//! H = | 0   w2  g2 |      basis (|0>_p|10>_a, |0>_p|01>_a, |1>_p|00>_a)
//!     | g1  g2  wc |
//! ```
//!
//! Equal atomic frequencies give one dark eigenvector `(-g2, g1, 0)` plus two
//! bright polaritons split by `S = sqrt(4 g1^2 + 4 g2^2 + d^2)`. Unequal
//! frequencies give eigenvalues as roots of the characteristic cubic and
//! eigenvectors in a closed form that is singular at `w1 = w2`.

use num_complex::Complex64 as C64;
use crate::{
    error::{ Error, Result },
    model::{ single_excitation_block, CavityModel },
    numerics::{ cubic_roots, herm_eig, StateVector },
};

/// `|w1 - w2| <= DEGENERATE_TOL * wc` selects the degenerate branch.
pub const DEGENERATE_TOL: f64 = 1e-9;
/// The shifted-branch form is treated as singular when `|w2 - alpha|` or
/// `g1` falls below this fraction of `wc`.
pub const SINGULAR_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Equal atomic frequencies.
    Degenerate,
    /// Equal frequencies, zero couplings and zero detuning: all three
    /// eigenvalues coincide and any basis is an eigenbasis.
    DegenerateCluster,
    /// Unequal atomic frequencies. `numeric_fallback[k]` marks roots whose
    /// closed-form eigenvector was singular and came from the numerical
    /// eigensolver instead.
    Shifted { numeric_fallback: [bool; 3] },
}

/// Three eigenpairs of the two-atom block.
#[derive(Clone, Debug)]
pub struct AnalyticSpectrum {
    /// Degenerate branch: `[w_a, (wc + wa - S)/2, (wc + wa + S)/2]` with the
    /// dark state first. Shifted branch: cubic roots ascending.
    pub eigenvalues: [f64; 3],
    pub eigenvectors: [StateVector; 3],
    pub branch: Branch,
}

impl AnalyticSpectrum {
    /// Eigenpairs sorted by eigenvalue (stable).
    pub fn sorted(&self) -> Vec<(f64, StateVector)> {
        let mut v: Vec<(f64, StateVector)> = self.eigenvalues
            .iter()
            .copied()
            .zip(self.eigenvectors.iter().cloned())
            .collect();
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        v
    }
}

fn finite(vals: &[f64]) -> Result<()> {
    if vals.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite("spectrum parameters"))
    }
}

fn real_state(v: [f64; 3]) -> StateVector {
    StateVector::normalized(v.iter().map(|&x| C64::new(x, 0.0)).collect())
        .expect("eigenvector components are finite and not all zero")
        .phase_fixed()
}

/// Unnormalized eigenvectors for equal atomic frequencies, exactly as the
/// closed form reads: `{-g2, g1, 0}`,
/// `{-2g1/(wa - wc + S), -2g2/(wa - wc + S), 1}`,
/// `{2g1/(wc - wa + S), 2g2/(wc - wa + S), 1}`.
pub fn degenerate_vectors_verbatim(omega_c: f64, omega_a: f64, g1: f64, g2: f64) -> [[f64; 3]; 3] {
    let d = omega_c - omega_a;
    let s = (4.0 * g1 * g1 + 4.0 * g2 * g2 + d * d).sqrt();
    let lo = omega_a - omega_c + s;
    let hi = omega_c - omega_a + s;
    [
        [-g2, g1, 0.0],
        [-2.0 * g1 / lo, -2.0 * g2 / lo, 1.0],
        [2.0 * g1 / hi, 2.0 * g2 / hi, 1.0],
    ]
}

/// Spectrum for equal atomic frequencies `omega_a`.
///
/// Eigenvectors use the verbatim closed form when its denominator is the
/// larger of the two equivalent expressions and the row-2 form otherwise, so
/// the zero-coupling limits stay finite.
pub fn analytic_spectrum_degenerate(omega_c: f64, omega_a: f64, g1: f64, g2: f64) -> Result<AnalyticSpectrum> {
    finite(&[omega_c, omega_a, g1, g2])?;
    let d = omega_c - omega_a;
    let g = g1.hypot(g2);
    let s = (4.0 * g * g + d * d).sqrt();
    // unit vector of the bright atomic combination
    let (u1, u2) = if g > 0.0 { (g1 / g, g2 / g) } else { (1.0, 0.0) };

    let dark = real_state([-u2, u1, 0.0]);
    if g == 0.0 && d == 0.0 {
        // H is a multiple of the identity
        return Ok(AnalyticSpectrum {
            eigenvalues: [omega_a; 3],
            eigenvectors: [dark, real_state([u1, u2, 0.0]), real_state([0.0, 0.0, 1.0])],
            branch: Branch::DegenerateCluster,
        });
    }
    // lower polariton: (-2G u, S - d) ~ (-(S + d) u, 2G)
    let lower = if d <= 0.0 {
        real_state([-2.0 * g * u1, -2.0 * g * u2, s - d])
    } else {
        real_state([-(s + d) * u1, -(s + d) * u2, 2.0 * g])
    };
    // upper polariton: (2G u, S + d) ~ ((S - d) u, 2G)
    let upper = if d >= 0.0 {
        real_state([2.0 * g * u1, 2.0 * g * u2, s + d])
    } else {
        real_state([(s - d) * u1, (s - d) * u2, 2.0 * g])
    };
    Ok(AnalyticSpectrum {
        eigenvalues: [omega_a, 0.5 * (omega_c + omega_a - s), 0.5 * (omega_c + omega_a + s)],
        eigenvectors: [dark, lower, upper],
        branch: Branch::Degenerate,
    })
}

/// Coefficients `(A, B, C)` of the characteristic cubic
/// `x^3 + A x^2 + B x + C` of the two-atom block.
pub fn cubic_coefficients(omega_c: f64, omega_a1: f64, omega_a2: f64, g1: f64, g2: f64) -> (f64, f64, f64) {
    let a = -(omega_c + omega_a1 + omega_a2);
    let b = omega_c * omega_a1 + omega_c * omega_a2 + omega_a1 * omega_a2 - g1 * g1 - g2 * g2;
    let c = g1 * g1 * omega_a2 + g2 * g2 * omega_a1 - omega_c * omega_a1 * omega_a2;
    (a, b, c)
}

/// Unnormalized shifted-branch eigenvector for eigenvalue `alpha`:
/// `{-(wc - alpha)/g1 + g2^2/(g1 (w2 - alpha)), g2/(w2 - alpha), 1}`.
pub fn shifted_vector_verbatim(omega_c: f64, omega_a2: f64, g1: f64, g2: f64, alpha: f64) -> [f64; 3] {
    [
        -(omega_c - alpha) / g1 + g2 * g2 / (g1 * (omega_a2 - alpha)),
        g2 / (omega_a2 - alpha),
        1.0,
    ]
}

/// Shifted-branch eigenvector for eigenvalue `alpha`. Same as the verbatim
/// form but with the second component `g2/(alpha - w2)`, which is what the
/// second row of `H` requires; the verbatim sign only solves the first and
/// third rows when `g2 = 0`.
pub fn shifted_vector(omega_c: f64, omega_a2: f64, g1: f64, g2: f64, alpha: f64) -> [f64; 3] {
    let mut v = shifted_vector_verbatim(omega_c, omega_a2, g1, g2, alpha);
    v[1] = -v[1];
    v
}

/// Spectrum for unequal atomic frequencies.
pub fn analytic_spectrum_shifted(
    omega_c: f64,
    omega_a1: f64,
    omega_a2: f64,
    g1: f64,
    g2: f64,
) -> Result<AnalyticSpectrum> {
    finite(&[omega_c, omega_a1, omega_a2, g1, g2])?;
    let gap = (omega_a1 - omega_a2).abs();
    if gap <= DEGENERATE_TOL * omega_c.abs() {
        return Err(Error::UseDegenerateBranch { gap });
    }
    // Solve in the frame rotating at wc: the coefficients are then of the
    // size of the detunings and keep their relative precision.
    let (a, b, c) = cubic_coefficients(0.0, omega_a1 - omega_c, omega_a2 - omega_c, g1, g2);
    let roots = cubic_roots(a, b, c)?.map(|y| y + omega_c);

    let tol = SINGULAR_TOL * omega_c.abs();
    let mut numeric_fallback = [false; 3];
    let mut numeric = None;
    let mut vectors = Vec::with_capacity(3);
    for (k, &alpha) in roots.iter().enumerate() {
        if g1.abs() > tol && (omega_a2 - alpha).abs() > tol {
            vectors.push(real_state(shifted_vector(omega_c, omega_a2, g1, g2, alpha)));
            continue;
        }
        numeric_fallback[k] = true;
        if numeric.is_none() {
            let m = CavityModel::two_atoms(omega_c, omega_a1, omega_a2, g1, g2)?;
            numeric = Some(herm_eig(&single_excitation_block(&m)?)?);
        }
        // roots and numerical eigenvalues are both ascending
        let spec = numeric.as_ref().expect("computed above");
        vectors.push(spec.eigenvectors()[k].clone());
    }
    let eigenvectors: [StateVector; 3] = vectors.try_into().expect("three roots");
    Ok(AnalyticSpectrum {
        eigenvalues: roots,
        eigenvectors,
        branch: Branch::Shifted { numeric_fallback },
    })
}

/// Closed-form spectrum of the two-atom block, choosing the branch by the
/// frequency gap.
pub fn analytic_spectrum(omega_c: f64, omega_a1: f64, omega_a2: f64, g1: f64, g2: f64) -> Result<AnalyticSpectrum> {
    if (omega_a1 - omega_a2).abs() <= DEGENERATE_TOL * omega_c.abs() {
        analytic_spectrum_degenerate(omega_c, omega_a1, g1, g2)
    } else {
        analytic_spectrum_shifted(omega_c, omega_a1, omega_a2, g1, g2)
    }
}

use std::ops::Index;
use num_complex::Complex64 as C64;
use crate::error::{ Error, Result };

/// Tolerance on the unit-norm invariant.
pub const NORM_TOL: f64 = 1e-10;

/// Normalized complex state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    /// Normalize `amps`. Fails on a zero or non-finite vector.
    pub fn normalized(amps: Vec<C64>) -> Result<Self> {
        let norm = l2_norm(&amps);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { amps: amps.into_iter().map(|a| a / norm).collect() })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::normalized(amps.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Standard basis vector `e_k` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[k] = C64::new(1.0, 0.0);
        Self { amps }
    }

    /// Wrap amplitudes that are already unit-norm within `NORM_TOL`.
    pub fn from_unit(amps: Vec<C64>) -> Result<Self> {
        let norm = l2_norm(&amps);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParameter(format!("state norm {norm} is not 1")));
        }
        Ok(Self { amps })
    }

    /// Wrap amplitudes without checks. For outputs of unitary maps.
    pub(crate) fn from_unit_unchecked(amps: Vec<C64>) -> Self {
        Self { amps }
    }

    pub fn dim(&self) -> usize { self.amps.len() }

    pub fn amplitudes(&self) -> &[C64] { &self.amps }

    pub fn into_amplitudes(self) -> Vec<C64> { self.amps }

    pub fn norm(&self) -> f64 { l2_norm(&self.amps) }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        inner(&self.amps, &other.amps)
    }

    /// Multiply by the global phase that makes the largest-magnitude
    /// component real and positive. Ties go to the lowest index.
    pub fn phase_fixed(mut self) -> Self {
        fix_phase(&mut self.amps);
        self
    }
}

impl Index<usize> for StateVector {
    type Output = C64;

    fn index(&self, k: usize) -> &C64 { &self.amps[k] }
}

pub(crate) fn l2_norm(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn inner(a: &[C64], b: &[C64]) -> Result<C64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
    }
    Ok(a.iter().zip(b).map(|(x, y)| x.conj() * y).sum())
}

pub(crate) fn fix_phase(v: &mut [C64]) {
    let mut best = 0;
    let mut best_mag = -1.0;
    for (k, a) in v.iter().enumerate() {
        // small slack so numerically tied components resolve to the first one
        if a.norm() > best_mag * (1.0 + 1e-12) {
            best = k;
            best_mag = a.norm();
        }
    }
    if best_mag <= 0.0 {
        return;
    }
    let phase = v[best].conj() / best_mag;
    for a in v.iter_mut() {
        *a *= phase;
    }
    v[best] = C64::new(v[best].re, 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_and_rejects_zero() {
        let s = StateVector::from_real(&[3.0, 4.0]).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        assert!((s[0].re - 0.6).abs() < 1e-15);
        assert_eq!(StateVector::from_real(&[0.0, 0.0]), Err(Error::ZeroVector));
        assert!(StateVector::normalized(vec![C64::new(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn phase_fix_makes_largest_component_positive() {
        let s = StateVector::normalized(vec![C64::new(0.0, 0.3), C64::new(0.0, -0.9)])
            .unwrap()
            .phase_fixed();
        assert!(s[1].im == 0.0 && s[1].re > 0.0);
        assert!(s[0].re < 0.0);
    }
}

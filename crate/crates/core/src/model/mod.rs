//! Tavis-Cummings models: full Fock-times-atoms Hamiltonians with a photon
//! cutoff, the single-excitation block, Stark/Zeeman shifts and couplings
//! from atom positions.

use std::fmt;
use num_complex::Complex64 as C64;
use crate::{
    error::{ Error, Result },
    numerics::ComplexMatrix,
};

mod coupling;
pub mod file;

pub use coupling::{ cavity_length, coupling_from_position, max_coupling, PhysicalCavity };
pub use file::{ is_model_key, parse_model, write_model };

/// Largest number of atoms accepted by `build_full_hamiltonian`.
pub const MAX_ATOMS: usize = 12;
/// Largest total dimension accepted by `build_full_hamiltonian`.
pub const MAX_DIM: usize = 65536;

/// One two-level atom.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomParams {
    pub omega: f64,
    pub g: f64,
    /// Position along the cavity axis, when the coupling came from one.
    pub position: Option<f64>,
}

impl AtomParams {
    pub fn new(omega: f64, g: f64) -> Self {
        Self { omega, g, position: None }
    }

    fn validate(&self, k: usize) -> Result<()> {
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::InvalidParameter(format!("atom {}: omega must be > 0", k + 1)));
        }
        if !(self.g.is_finite() && self.g >= 0.0) {
            return Err(Error::InvalidParameter(format!("atom {}: g must be >= 0", k + 1)));
        }
        if let Some(x) = self.position {
            if !x.is_finite() || x < 0.0 {
                return Err(Error::InvalidParameter(format!("atom {}: bad position {x}", k + 1)));
            }
        }
        Ok(())
    }
}

/// Cavity mode plus atoms. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct CavityModel {
    omega_c: f64,
    atoms: Vec<AtomParams>,
    photon_cutoff: usize,
    rwa: bool,
}

/// Validity diagnostics for one atom: detuning `d = omega_c - omega` and
/// coupling ratio `g / omega_c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AtomDiagnostic {
    pub detuning: f64,
    pub relative_detuning: f64,
    pub coupling_ratio: f64,
}

impl CavityModel {
    pub fn new(omega_c: f64, atoms: Vec<AtomParams>, photon_cutoff: usize, rwa: bool) -> Result<Self> {
        if !(omega_c.is_finite() && omega_c > 0.0) {
            return Err(Error::InvalidParameter("omega_c must be > 0".into()));
        }
        if photon_cutoff < 1 {
            return Err(Error::InvalidParameter("photon cutoff must be >= 1".into()));
        }
        for (k, a) in atoms.iter().enumerate() {
            a.validate(k)?;
        }
        Ok(Self { omega_c, atoms, photon_cutoff, rwa })
    }

    /// Two atoms under RWA with cutoff 1, in the order of the 3x3 block.
    pub fn two_atoms(omega_c: f64, omega1: f64, omega2: f64, g1: f64, g2: f64) -> Result<Self> {
        Self::new(omega_c, vec![AtomParams::new(omega1, g1), AtomParams::new(omega2, g2)], 1, true)
    }

    pub fn omega_c(&self) -> f64 { self.omega_c }

    pub fn atoms(&self) -> &[AtomParams] { &self.atoms }

    pub fn n_atoms(&self) -> usize { self.atoms.len() }

    pub fn photon_cutoff(&self) -> usize { self.photon_cutoff }

    pub fn rwa(&self) -> bool { self.rwa }

    pub fn with_rwa(&self, rwa: bool) -> Self {
        Self { rwa, ..self.clone() }
    }

    pub fn with_photon_cutoff(&self, photon_cutoff: usize) -> Result<Self> {
        Self::new(self.omega_c, self.atoms.clone(), photon_cutoff, self.rwa)
    }

    /// Dimension of the full Hilbert space, `(n_max + 1) * 2^n`.
    pub fn full_dim(&self) -> usize {
        (self.photon_cutoff + 1) << self.atoms.len()
    }

    pub fn diagnostics(&self) -> Vec<AtomDiagnostic> {
        self.atoms
            .iter()
            .map(|a| AtomDiagnostic {
                detuning: self.omega_c - a.omega,
                relative_detuning: (self.omega_c - a.omega) / self.omega_c,
                coupling_ratio: a.g / self.omega_c,
            })
            .collect()
    }

    /// Every quantity divided by `omega_c`.
    pub fn nondimensionalized(&self) -> Self {
        let s = self.omega_c;
        Self {
            omega_c: 1.0,
            atoms: self.atoms
                .iter()
                .map(|a| AtomParams { omega: a.omega / s, g: a.g / s, position: a.position })
                .collect(),
            photon_cutoff: self.photon_cutoff,
            rwa: self.rwa,
        }
    }
}

/// Basis state `|n>_p |b_1 ... b_N>_a`.
///
/// States are ordered lexicographically: photon number first, then the atomic
/// bit-string read with atom 1 leftmost (most significant).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    pub photons: usize,
    pub excited: Vec<bool>,
}

impl BasisLabel {
    pub fn from_index(index: usize, n_atoms: usize) -> Self {
        let bits = index & ((1 << n_atoms) - 1);
        Self {
            photons: index >> n_atoms,
            excited: (0..n_atoms).map(|i| bits >> (n_atoms - 1 - i) & 1 == 1).collect(),
        }
    }

    pub fn index(&self) -> usize {
        let n = self.excited.len();
        let bits = self.excited
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | usize::from(b));
        (self.photons << n) | bits
    }

    /// Photon number plus atomic excitations.
    pub fn excitations(&self) -> usize {
        self.photons + self.excited.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}>_p|", self.photons)?;
        for &b in &self.excited {
            write!(f, "{}", u8::from(b))?;
        }
        write!(f, ">_a")
    }
}

/// Atom bit mask for atom `i` (0-based) among `n` atoms.
pub(crate) fn atom_bit(i: usize, n: usize) -> usize {
    1 << (n - 1 - i)
}

/// `H/hbar` on the truncated Fock space tensored with all atoms.
///
/// With RWA the interaction is `sum_i g_i (a^+ s_i^- + a s_i^+)`; without it
/// the full `g_i (s_i^+ + s_i^-)(a^+ + a)`.
pub fn build_full_hamiltonian(m: &CavityModel) -> Result<ComplexMatrix> {
    let n = m.n_atoms();
    let nmax = m.photon_cutoff();
    let dim = if n > MAX_ATOMS { usize::MAX } else { m.full_dim() };
    if n > MAX_ATOMS || dim > MAX_DIM {
        return Err(Error::DimensionGuard { atoms: n, cutoff: nmax, dim });
    }
    let mut h = ComplexMatrix::zeros(dim, dim);
    let atom_mask = (1 << n) - 1;
    for idx in 0..dim {
        let photons = idx >> n;
        let bits = idx & atom_mask;
        let mut diag = m.omega_c() * photons as f64;
        for (i, atom) in m.atoms().iter().enumerate() {
            if bits & atom_bit(i, n) != 0 {
                diag += atom.omega;
            }
        }
        h[(idx, idx)] = C64::new(diag, 0.0);
        if photons == nmax {
            continue;
        }
        // transitions that create a photon; their adjoints fill the other triangle
        let amp = ((photons + 1) as f64).sqrt();
        for (i, atom) in m.atoms().iter().enumerate() {
            let bit = atom_bit(i, n);
            let excited = bits & bit != 0;
            if !excited && m.rwa() {
                continue;
            }
            let target = ((photons + 1) << n) | (bits ^ bit);
            let v = C64::new(atom.g * amp, 0.0);
            h[(target, idx)] += v;
            h[(idx, target)] += v;
        }
    }
    Ok(h)
}

/// Excitation number `a^+ a + sum_i s_i^+ s_i^-` on the full space.
pub fn excitation_number(m: &CavityModel) -> ComplexMatrix {
    let n = m.n_atoms();
    let diag: Vec<f64> = (0..m.full_dim())
        .map(|k| BasisLabel::from_index(k, n).excitations() as f64)
        .collect();
    ComplexMatrix::diagonal(&diag)
}

/// Full-space indices of the single-excitation block, in block order:
/// atom `i` excited with no photon for each `i`, then one photon.
pub fn single_excitation_indices(n_atoms: usize) -> Vec<usize> {
    (0..n_atoms)
        .map(|i| atom_bit(i, n_atoms))
        .chain(std::iter::once(1 << n_atoms))
        .collect()
}

/// `H/hbar` restricted to the one-excitation subspace.
pub fn single_excitation_block(m: &CavityModel) -> Result<ComplexMatrix> {
    if !m.rwa() {
        return Err(Error::BlockWithoutRwa);
    }
    let n = m.n_atoms();
    if n == 0 {
        return Err(Error::InvalidParameter("model has no atoms".into()));
    }
    let mut h = ComplexMatrix::zeros(n + 1, n + 1);
    for (i, atom) in m.atoms().iter().enumerate() {
        h[(i, i)] = C64::new(atom.omega, 0.0);
        h[(i, n)] = C64::new(atom.g, 0.0);
        h[(n, i)] = C64::new(atom.g, 0.0);
    }
    h[(n, n)] = C64::new(m.omega_c(), 0.0);
    Ok(h)
}

/// Shift one atom's frequency by `ds` and coupling by `dg`.
pub fn apply_zs_shift(m: &CavityModel, atom_index: usize, ds: f64, dg: f64) -> Result<CavityModel> {
    let count = m.n_atoms();
    if atom_index >= count {
        return Err(Error::AtomIndex { index: atom_index, count });
    }
    if !(ds.is_finite() && dg.is_finite()) {
        return Err(Error::NonFinite("shift"));
    }
    let mut atoms = m.atoms().to_vec();
    let atom = &mut atoms[atom_index];
    if atom.g + dg < 0.0 {
        return Err(Error::InvalidParameter(format!("shifted coupling {} < 0", atom.g + dg)));
    }
    atom.omega += ds;
    atom.g += dg;
    CavityModel::new(m.omega_c(), atoms, m.photon_cutoff(), m.rwa())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_matrix_eq(a: &ComplexMatrix, b: &ComplexMatrix) {
        assert_eq!(a.rows(), b.rows());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                assert_eq!(a[(i, j)], b[(i, j)], "entry ({i}, {j})");
            }
        }
    }

    #[test]
    fn basis_ordering() {
        // photon major, atom 1 leftmost
        let labels: Vec<String> = (0..8).map(|k| BasisLabel::from_index(k, 2).to_string()).collect();
        assert_eq!(labels[1], "|0>_p|01>_a");
        assert_eq!(labels[2], "|0>_p|10>_a");
        assert_eq!(labels[4], "|1>_p|00>_a");
        for k in 0..32 {
            assert_eq!(BasisLabel::from_index(k, 3).index(), k);
        }
    }

    #[test]
    fn decoupled_single_atom_is_diagonal() {
        let m = CavityModel::new(1.0, vec![AtomParams::new(0.9, 0.0)], 1, true).unwrap();
        let h = build_full_hamiltonian(&m).unwrap();
        assert_matrix_eq(&h, &ComplexMatrix::diagonal(&[0.0, 0.9, 1.0, 1.9]));
    }

    #[test]
    fn two_atom_block_matches_matrix() {
        let (w1, w2, g1, g2, wc) = (1.01, 0.99, 0.02, 0.03, 1.0);
        let m = CavityModel::two_atoms(wc, w1, w2, g1, g2).unwrap();
        let block = single_excitation_block(&m).unwrap();
        let expect = ComplexMatrix::from_real_rows(&[&[w1, 0.0, g1], &[0.0, w2, g2], &[g1, g2, wc]]);
        assert_matrix_eq(&block, &expect);
        let full = build_full_hamiltonian(&m).unwrap();
        assert_matrix_eq(&full.submatrix(&single_excitation_indices(2)), &expect);
    }

    #[test]
    fn single_atom_block_is_doublet() {
        let m = CavityModel::new(1.0, vec![AtomParams::new(0.95, 0.1)], 1, true).unwrap();
        let expect = ComplexMatrix::from_real_rows(&[&[0.95, 0.1], &[0.1, 1.0]]);
        assert_matrix_eq(&single_excitation_block(&m).unwrap(), &expect);
        assert_eq!(single_excitation_block(&m.with_rwa(false)), Err(Error::BlockWithoutRwa));
    }

    #[test]
    fn rwa_difference_is_counter_rotating() {
        let g = 0.2;
        let m = CavityModel::new(1.0, vec![AtomParams::new(1.0, g)], 2, true).unwrap();
        let with = build_full_hamiltonian(&m).unwrap();
        let without = build_full_hamiltonian(&m.with_rwa(false)).unwrap();
        let diff = without.sub(&with).unwrap();
        for i in 0..diff.rows() {
            for j in 0..diff.cols() {
                let z = diff[(i, j)];
                if z.norm() == 0.0 {
                    continue;
                }
                let (a, b) = (BasisLabel::from_index(i, 1), BasisLabel::from_index(j, 1));
                // a^+ s^+ or a s^-: photon and atom change in the same direction
                let dp = a.photons as i64 - b.photons as i64;
                let da = i64::from(a.excited[0]) - i64::from(b.excited[0]);
                assert_eq!(dp.abs(), 1);
                assert_eq!(dp, da);
                let n = a.photons.max(b.photons) as f64;
                assert!((z.re - g * n.sqrt()).abs() < 1e-15);
            }
        }
        assert!(diff.max_abs() > 0.0);
    }

    #[test]
    fn zs_shift_touches_one_atom() {
        let m = CavityModel::two_atoms(1.0, 1.0, 1.0, 0.01, 0.005).unwrap();
        assert_eq!(apply_zs_shift(&m, 0, 0.0, 0.0).unwrap(), m);
        let s = apply_zs_shift(&m, 0, 0.01, 0.007).unwrap();
        assert_eq!(s.atoms()[0].omega, 1.01);
        assert_eq!(s.atoms()[0].g, 0.017);
        assert_eq!(s.atoms()[1], m.atoms()[1]);
        assert_eq!(m.atoms()[0].omega, 1.0);
        let back = apply_zs_shift(&s, 0, -0.01, -0.007).unwrap();
        assert!((back.atoms()[0].omega - 1.0).abs() < 1e-15);
        assert!((back.atoms()[0].g - 0.01).abs() < 1e-15);
        assert!(matches!(apply_zs_shift(&m, 2, 0.0, 0.0), Err(Error::AtomIndex { .. })));
        assert!(apply_zs_shift(&m, 1, 0.0, -0.01).is_err());
    }

    #[test]
    fn dimension_guard() {
        let atoms = vec![AtomParams::new(1.0, 0.1); 13];
        let m = CavityModel::new(1.0, atoms, 1, true).unwrap();
        assert!(matches!(build_full_hamiltonian(&m), Err(Error::DimensionGuard { .. })));
        let atoms = vec![AtomParams::new(1.0, 0.1); 12];
        let m = CavityModel::new(1.0, atoms, 16, true).unwrap();
        assert!(matches!(build_full_hamiltonian(&m), Err(Error::DimensionGuard { .. })));
    }

    #[test]
    fn diagnostics_report_detuning() {
        let m = CavityModel::two_atoms(2.0, 1.9, 2.0, 0.02, 0.0).unwrap();
        let d = m.diagnostics();
        assert!((d[0].detuning - 0.1).abs() < 1e-15);
        assert!((d[0].relative_detuning - 0.05).abs() < 1e-15);
        assert_eq!(d[1].coupling_ratio, 0.0);
        assert!(CavityModel::two_atoms(1.0, -1.0, 1.0, 0.0, 0.0).is_err());
    }
}

use num_complex::Complex64 as C64;
use crate::{
    error::{ Error, Result },
    model::{ atom_bit, build_full_hamiltonian, single_excitation_block, CavityModel },
    numerics::{ herm_eig, null_space, ComplexMatrix, StateVector },
};

/// Representation a state is given in when testing darkness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subspace {
    /// `(n + 1)`-dim vectors over the one-excitation block: atom `i`
    /// excited for each `i`, then one photon with all atoms in ground.
    SingleExcitation,
    /// Atomic-sector vectors (`2^n`, photon vacuum implied) or full
    /// Fock-times-atoms vectors (`(n_max + 1) 2^n`).
    Full,
}

/// Outcome of a darkness test.
#[derive(Clone, Debug, PartialEq)]
pub struct DarknessReport {
    pub is_dark: bool,
    /// `| sum_i g_i s_i^- |psi_atomic> |`
    pub emit_residual: f64,
    /// `| sum_i g_i s_i^+ |psi_atomic> |`; informational in the
    /// single-excitation subspace, which has no absorption channel.
    pub absorb_residual: f64,
    /// Probability outside the zero-photon sector.
    pub photon_support: f64,
    /// Probability carried by states with at least one excited atom.
    pub atomic_excitation: f64,
    pub subspace: Subspace,
}

/// Two-atom dark state `(-g2 |10> + g1 |01>) / norm` over `(|10>, |01>)`.
pub fn dark_state_degenerate(g1: f64, g2: f64) -> Result<StateVector> {
    if !(g1.is_finite() && g2.is_finite()) {
        return Err(Error::NonFinite("couplings"));
    }
    if g1 == 0.0 && g2 == 0.0 {
        return Err(Error::UndefinedDarkState);
    }
    StateVector::from_real(&[-g2, g1])
}

/// The same state embedded in the one-excitation block with zero photon
/// amplitude.
pub fn dark_state_block(g1: f64, g2: f64) -> Result<StateVector> {
    let d = dark_state_degenerate(g1, g2)?;
    StateVector::normalized(vec![d[0], d[1], C64::new(0.0, 0.0)])
}

/// Product of pair dark states over consecutive atom pairs `(1,2), (3,4), ...`
/// as a `2^n` atomic-sector vector (atom 1 most significant).
///
/// Pair `j` with couplings `(ga, gb)` contributes `(-gb |10> + ga |01>)/norm`.
/// An empty `pair_couplings` means equal couplings, i.e. a product of
/// singlets `(|01> - |10>)/sqrt(2)`.
pub fn singlet_ensemble(n: usize, pair_couplings: &[(f64, f64)]) -> Result<StateVector> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::OddAtomCount(n));
    }
    let pairs = n / 2;
    if !pair_couplings.is_empty() && pair_couplings.len() != pairs {
        return Err(Error::DimensionMismatch { expected: pairs, got: pair_couplings.len() });
    }
    let mut amps = vec![C64::new(1.0, 0.0)];
    for j in 0..pairs {
        let (ga, gb) = pair_couplings.get(j).copied().unwrap_or((1.0, 1.0));
        let pair = dark_state_degenerate(ga, gb)?;
        // |00>, |01>, |10>, |11>
        let local = [C64::new(0.0, 0.0), pair[1], pair[0], C64::new(0.0, 0.0)];
        amps = amps
            .iter()
            .flat_map(|&a| local.iter().map(move |&b| a * b))
            .collect();
    }
    StateVector::normalized(amps)
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// `sum_i g_i s_i^-` (lowering) or `sum_i g_i s_i^+` (raising) on the atomic
/// sector.
fn atomic_channel(m: &CavityModel, atomic: &[C64], raising: bool) -> Vec<C64> {
    let n = m.n_atoms();
    let mut out = vec![C64::new(0.0, 0.0); atomic.len()];
    for (bits, &c) in atomic.iter().enumerate() {
        if c == C64::new(0.0, 0.0) {
            continue;
        }
        for (i, atom) in m.atoms().iter().enumerate() {
            let bit = atom_bit(i, n);
            if (bits & bit != 0) != raising {
                out[bits ^ bit] += c * atom.g;
            }
        }
    }
    out
}

/// Test whether `psi` neither emits nor (in the full subspace) absorbs.
///
/// Residuals are absolute, in the units of the couplings. In the
/// single-excitation subspace a state is dark when its emission residual and
/// photon support are at most `tol`; in the full subspace the absorption
/// residual must also be at most `tol`. States without atomic excitation
/// are never dark.
pub fn is_dark(m: &CavityModel, psi: &StateVector, subspace: Subspace, tol: f64) -> Result<DarknessReport> {
    let n = m.n_atoms();
    let amps = psi.amplitudes();
    let (atomic, photon_support): (Vec<C64>, f64) = match subspace {
        Subspace::SingleExcitation => {
            if psi.dim() != n + 1 {
                return Err(Error::DimensionMismatch { expected: n + 1, got: psi.dim() });
            }
            let mut atomic = vec![C64::new(0.0, 0.0); 1 << n];
            for i in 0..n {
                atomic[atom_bit(i, n)] = amps[i];
            }
            (atomic, amps[n].norm_sqr())
        },
        Subspace::Full => {
            let sector = 1 << n;
            if psi.dim() != sector && psi.dim() != m.full_dim() {
                return Err(Error::DimensionMismatch { expected: m.full_dim(), got: psi.dim() });
            }
            let rest = amps[sector..].iter().map(|a| a.norm_sqr()).sum();
            (amps[..sector].to_vec(), rest)
        },
    };
    let emit_residual = norm(&atomic_channel(m, &atomic, false));
    let absorb_residual = norm(&atomic_channel(m, &atomic, true));
    let atomic_excitation: f64 = atomic[1..].iter().map(|a| a.norm_sqr()).sum();
    let channels_quiet = match subspace {
        Subspace::SingleExcitation => emit_residual <= tol,
        Subspace::Full => emit_residual <= tol && absorb_residual <= tol,
    };
    Ok(DarknessReport {
        is_dark: channels_quiet && photon_support <= tol && atomic_excitation > tol,
        emit_residual,
        absorb_residual,
        photon_support,
        atomic_excitation,
        subspace,
    })
}

/// Rows whose kernel is the set of candidate dark vectors: photon-sector
/// coordinates, then the emission (and in the full space absorption)
/// channel on the zero-photon sector.
fn darkness_constraints(m: &CavityModel, subspace: Subspace) -> ComplexMatrix {
    let n = m.n_atoms();
    match subspace {
        Subspace::SingleExcitation => {
            let mut c = ComplexMatrix::zeros(2, n + 1);
            c[(0, n)] = C64::new(1.0, 0.0);
            for (i, a) in m.atoms().iter().enumerate() {
                c[(1, i)] = C64::new(a.g, 0.0);
            }
            c
        },
        Subspace::Full => {
            let dim = m.full_dim();
            let sector = 1 << n;
            let photon_rows = dim - sector;
            let mut c = ComplexMatrix::zeros(photon_rows + 2 * sector, dim);
            for k in 0..photon_rows {
                c[(k, sector + k)] = C64::new(1.0, 0.0);
            }
            for bits in 0..sector {
                for (i, a) in m.atoms().iter().enumerate() {
                    let bit = atom_bit(i, n);
                    let g = C64::new(a.g, 0.0);
                    let row = if bits & bit != 0 {
                        photon_rows + (bits ^ bit)
                    } else {
                        photon_rows + sector + (bits ^ bit)
                    };
                    c[(row, bits)] += g;
                }
            }
            c
        },
    }
}

/// Eigenvectors (or, inside degenerate clusters, eigenspace combinations)
/// of the relevant Hamiltonian that pass `is_dark`.
pub fn find_dark_states(m: &CavityModel, subspace: Subspace, tol: f64) -> Result<Vec<StateVector>> {
    let h = match subspace {
        Subspace::SingleExcitation => single_excitation_block(m)?,
        Subspace::Full => build_full_hamiltonian(m)?,
    };
    let spec = herm_eig(&h)?;
    let constraints = darkness_constraints(m, subspace);
    let mut out = Vec::new();
    for range in spec.clusters() {
        let vecs = &spec.eigenvectors()[range];
        let candidates: Vec<StateVector> = if vecs.len() == 1 {
            vecs.to_vec()
        } else {
            // restrict the constraints to the cluster and take its kernel
            let dim = h.rows();
            let k = vecs.len();
            let basis = ComplexMatrix::from_fn(dim, k, |i, j| vecs[j][i]);
            let restricted = constraints.matmul(&basis)?;
            let scale = restricted.max_abs();
            let rel = if scale > 0.0 { tol / scale } else { 1.0 };
            null_space(&restricted, rel)
                .into_iter()
                .map(|z| {
                    let w = basis.mul_vec(z.amplitudes())?;
                    Ok(StateVector::normalized(w)?.phase_fixed())
                })
                .collect::<Result<_>>()?
        };
        for v in candidates {
            if is_dark(m, &v, subspace, tol)?.is_dark {
                out.push(v);
            }
        }
    }
    Ok(out)
}

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use tavis::{
    darkstates::{ analytic_spectrum, find_dark_states, is_dark, singlet_ensemble, Subspace },
    model::{ build_full_hamiltonian, parse_model, single_excitation_block, write_model, AtomParams },
    numerics::{ evolve, herm_eig, subspace_distance, ComplexMatrix, StateVector },
    protocol::{ ZSJump, ZSJumpConfig },
    CavityModel,
};

fn block(wc: f64, w1: f64, w2: f64, g1: f64, g2: f64) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[w1, 0.0, g1], &[0.0, w2, g2], &[g1, g2, wc]])
}

fn hermitian(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim).prop_map(move |raw| {
        let mut m = ComplexMatrix::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(raw[i * dim + i].0, 0.0);
            for j in i + 1..dim {
                let (re, im) = raw[i * dim + j];
                m[(i, j)] = C64::new(re, im);
                m[(j, i)] = C64::new(re, -im);
            }
        }
        m
    })
}

fn state(dim: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
        .prop_filter_map("nonzero", |raw| {
            StateVector::normalized(raw.into_iter().map(|(a, b)| C64::new(a, b)).collect()).ok()
        })
}

fn matrix_and_state() -> impl Strategy<Value = (ComplexMatrix, StateVector)> {
    (1usize..10).prop_flat_map(|n| (hermitian(n), state(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn eigendecomposition_reconstructs((m, _) in matrix_and_state()) {
        let spec = herm_eig(&m).unwrap();
        let r = spec.reconstruct().sub(&m).unwrap().max_abs();
        prop_assert!(r <= 1e-12 * m.max_abs().max(1.0));
        prop_assert!(spec.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
        for v in spec.eigenvectors() {
            prop_assert!((v.norm() - 1.0).abs() < 1e-12);
            // largest component real positive
            let big = v.amplitudes().iter().map(|z| z.norm()).fold(0.0, f64::max);
            let first = v.amplitudes().iter().find(|z| z.norm() == big).unwrap();
            prop_assert!(first.im == 0.0 && first.re > 0.0);
        }
    }

    #[test]
    fn evolution_is_unitary((m, psi) in matrix_and_state(), t in 0.0f64..200.0) {
        let spec = herm_eig(&m).unwrap();
        prop_assert!((evolve(&spec, &psi, t).unwrap().norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn evolution_group_law((m, psi) in matrix_and_state(), t1 in 0.0f64..50.0, t2 in 0.0f64..50.0) {
        let spec = herm_eig(&m).unwrap();
        let a = evolve(&spec, &evolve(&spec, &psi, t1).unwrap(), t2).unwrap();
        let b = evolve(&spec, &psi, t1 + t2).unwrap();
        for i in 0..psi.dim() {
            prop_assert!((a[i] - b[i]).norm() < 1e-10);
        }
    }

    #[test]
    fn analytic_agrees_with_solver(
        d1 in -0.05f64..0.05,
        d2 in -0.05f64..0.05,
        equal in any::<bool>(),
        g1 in 0.0f64..0.05,
        g2 in 0.0f64..0.05,
    ) {
        let (w1, w2) = (1.0 - d1, if equal { 1.0 - d1 } else { 1.0 - d2 });
        let s = analytic_spectrum(1.0, w1, w2, g1, g2).unwrap();
        let num = herm_eig(&block(1.0, w1, w2, g1, g2)).unwrap();
        let sorted = s.sorted();
        for (k, &l) in num.eigenvalues().iter().enumerate() {
            prop_assert!((l - sorted[k].0).abs() < 1e-8);
        }
        for range in num.clusters() {
            let a: Vec<_> = sorted[range.clone()].iter().map(|x| x.1.clone()).collect();
            prop_assert!(subspace_distance(&a, &num.eigenvectors()[range]) < 1e-7);
        }
    }

    #[test]
    fn yield_is_a_probability(
        g1 in 0.001f64..0.05,
        ds in 0.0f64..0.01,
        dg in 0.0f64..0.007,
        t in 0.0f64..5000.0,
    ) {
        let jump = ZSJump::new(&ZSJumpConfig::with_half_coupling(g1).with_shift(ds, dg)).unwrap();
        let p = jump.yield_at(t);
        prop_assert!((0.0..=1.0).contains(&p));
    }

    #[test]
    fn block_is_submatrix_of_full(
        n in 1usize..5,
        cutoff in 1usize..3,
        seed in prop::collection::vec((0.95f64..1.05, 0.0f64..0.05), 4),
    ) {
        let atoms = seed[..n].iter().map(|&(w, g)| AtomParams::new(w, g)).collect();
        let m = CavityModel::new(1.0, atoms, cutoff, true).unwrap();
        let full = build_full_hamiltonian(&m).unwrap();
        prop_assert!(full.check_hermitian().is_ok());
        let idx = tavis::model::single_excitation_indices(n);
        prop_assert_eq!(single_excitation_block(&m).unwrap(), full.submatrix(&idx));
    }

    #[test]
    fn model_file_round_trips(
        atoms in prop::collection::vec((0.5f64..1.5, 0.0f64..0.1), 1..5),
        cutoff in 1usize..4,
        rwa in any::<bool>(),
    ) {
        let atoms = atoms.into_iter().map(|(w, g)| AtomParams::new(w, g)).collect();
        let m = CavityModel::new(1.0, atoms, cutoff, rwa).unwrap();
        let back = parse_model(&write_model(&m)).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn singlets_stay_dark(pairs in 1usize..3, g in 0.001f64..0.05, w in 0.95f64..1.05, t in 0.0f64..500.0) {
        let n = 2 * pairs;
        let atoms = vec![AtomParams::new(w, g); n];
        let m = CavityModel::new(1.0, atoms, 1, true).unwrap();
        let mut amps = singlet_ensemble(n, &[]).unwrap().into_amplitudes();
        amps.resize(m.full_dim(), C64::new(0.0, 0.0));
        let psi = StateVector::normalized(amps).unwrap();
        let spec = herm_eig(&build_full_hamiltonian(&m).unwrap()).unwrap();
        let out = evolve(&spec, &psi, t).unwrap();
        prop_assert!(is_dark(&m, &out, Subspace::Full, 1e-9).unwrap().is_dark);
    }

    #[test]
    fn shifted_pairs_have_no_dark_state(
        ds in 1e-4f64..0.01,
        g1 in 0.005f64..0.05,
        g2 in 0.005f64..0.05,
    ) {
        // leading-order emission residual of the near-dark eigenvector:
        // (energy shift) * (photon amplitude) = ds^2 g1 g2^3 / G^5
        let big_g = g1.hypot(g2);
        let leak = ds * ds * g1 * g2.powi(3) / big_g.powi(5);
        let m = CavityModel::two_atoms(1.0, 1.0 + ds, 1.0, g1, g2).unwrap();
        prop_assert!(find_dark_states(&m, Subspace::SingleExcitation, 0.1 * leak).unwrap().is_empty());
        let m = CavityModel::two_atoms(1.0, 1.0, 1.0, g1, g2).unwrap();
        prop_assert_eq!(find_dark_states(&m, Subspace::SingleExcitation, 1e-6).unwrap().len(), 1);
    }
}

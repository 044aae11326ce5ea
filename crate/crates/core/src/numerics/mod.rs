//! Dense complex linear algebra: Hermitian eigenproblems, spectral time
//! evolution, cubic roots, kernels, and the seeded random source.

pub mod cubic;
pub mod eig;
pub mod matrix;
pub mod rng;
pub mod state;

pub use cubic::{ cubic_residual, cubic_roots };
pub use eig::{ evolve, herm_eig, null_space, propagate_weights, subspace_distance, Spectrum };
pub use matrix::ComplexMatrix;
pub use rng::RandomSource;
pub use state::StateVector;

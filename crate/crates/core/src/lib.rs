//! Exact dynamics of a two-mode bosonic field coupled by two-photon exchange,
//! `H = ω(n₁ + n₂) + g(a₁†² a₂² + a₁² a₂†²)`, at fixed total photon number.
//!
//! The sector with `N` photons splits into two parity ladders that are
//! isospectral when `N` is odd, so every energy is twofold degenerate. Time
//! evolution of a Fock product state `|N−L⟩_A|L⟩_B` stays on one ladder, and
//! that ladder is already the Schmidt basis, so the entanglement entropy is
//! read directly off the ladder amplitudes.
//!
//! Module map:
//! - [`sector_basis`]: `|j,m⟩` labels, Fock mapping, ladder matrix elements.
//! - [`hamiltonian`]: sector matrix, parity blocks, general multi-photon builder.
//! - [`spectrum`]: tridiagonal eigensolver and the paired spectrum.
//! - [`dynamics`]: spectral time evolution of product states.
//! - [`entanglement`]: Schmidt probabilities, entropy, trajectories.
//! - [`scenario`]: scenario configs, CSV records, peak statistics.

pub mod dynamics;
pub mod entanglement;
mod error;
pub mod hamiltonian;
#[doc(hidden)]
pub mod oracle;
pub mod scenario;
pub mod sector_basis;
pub mod spectrum;
mod tridiag;

pub use dynamics::{amplitude_phase_convention, evolve, EvolvedState, ProductStateSpec};
pub use entanglement::{
    entropy_trajectory, max_entangled_state, schmidt_profile, von_neumann_entropy,
    ReferenceState, SchmidtProfile,
};
pub use error::{Error, Result};
pub use hamiltonian::{
    build_general_kk, build_sector_matrix, coupling_a, split_parity_blocks, GeneralKkParams,
    HamiltonianParams, ParityBlock, ParityBlocks,
};
pub use scenario::{
    emit_csv, report_peaks, run_scenario, PeakSummary, ScenarioConfig, TrajectoryRecord,
};
pub use sector_basis::{FockPair, JMIndex, Parity, SectorBasis};
pub use spectrum::{
    assemble_spectrum, char_poly_eval, diagonalize_block, verify_recursion, BlockEigen,
    EnergyLevel, SpectralDecomposition,
};

pub use num_complex::Complex64;

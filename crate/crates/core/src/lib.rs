//! Phase-estimation metrology for zero-mean Gaussian states of N bosonic
//! modes.
//!
//! States are covariance matrices in the convention where the vacuum
//! variance is 1 (`ħ = 2`), with quadratures interleaved as
//! x₁, p₁, …, x_N, p_N. On top of that representation the crate provides:
//!
//! * [`gaussian`] — covariance-matrix construction and validation,
//!   symplectic spectra, photon numbers.
//! * [`transform`] — passive (photon-number-preserving) networks: phases,
//!   beam splitters, Haar-random networks, and a universal rectangular
//!   coupler mesh.
//! * [`metrology`] — quantum Fisher information for phase shifts generated
//!   by `Σ g_a n̂_a`, its closed forms, trade-off identities, and the
//!   analytic optimum over all passive networks.
//! * [`entanglement`] — reduced states, purity, entanglement entropy of
//!   mode bipartitions, and the structural predicates (decoupled, properly
//!   ordered) that characterize QFI-optimal states.
//! * [`search`] — the entanglement/QFI trade-off scan, a simplex-based
//!   QFI maximizer with an analytic certificate, and a seeded randomized
//!   verification suite over the whole property inventory.
//!
//! Every fallible operation returns [`Result`]; numerical tolerances are
//! named constants next to the routines that use them.

pub mod entanglement;
mod error;
pub mod gaussian;
pub mod metrology;
pub mod search;
pub mod transform;

pub use entanglement::{
    entanglement_entropy, entropy_from_purity, is_decoupled, is_properly_ordered, purity,
    reduced_covariance, ModeSubset,
};
pub use error::{Error, Result};
pub use gaussian::{
    input_state, mean_photon_number, symplectic_eigenvalues, symplectic_form,
    total_photon_number, vacuum_state, CovarianceMatrix, SqueezingVector, ValidationReport,
};
pub use metrology::{
    h_sqz, optimal_qfi, qfi_budget_bound, qfi_common, qfi_epr, qfi_general, qfi_single_mode,
    qfi_single_mode_bounds, qfi_single_mode_tradeoff, qfi_two_mode_decomposition,
    qfi_two_mode_tradeoff, qfi_two_mode_tradeoff_from_network, Exactness, GeneratorWeights,
    QfiResult, TwoModeDecomposition,
};
pub use search::{
    maximize_qfi, scan_entanglement, verify_suite, CheckResult, OptimizationResult,
    OptimizeOptions, ScanRow, VerificationReport,
};
pub use transform::{
    apply, beam_splitter, compose, coupler_layout, from_unitary, haar_unitary,
    mesh_to_transform, phase_shift, random_passive, MeshParams, PassiveTransform,
};

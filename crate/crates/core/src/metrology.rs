//! Quantum Fisher information (QFI) of Gaussian states under phase shifts.
//!
//! The estimation scenario: every mode `a` of an N-mode zero-mean Gaussian
//! state acquires a phase `g_a·φ`, with fixed dimensionless weights `g_a`,
//! and the task is to estimate φ. The generator on quadratures is
//! `G = diag(g₁, g₁, g₂, g₂, …, g_N, g_N)`, and the QFI `H` bounds any
//! unbiased estimator's variance through the quantum Cramér–Rao relation
//! `Δφ² ≥ 1/H`. The value of φ itself never enters any formula here.
//!
//! For a pure state with covariance matrix V,
//!
//! ```text
//! H = Tr((VG)² − G²) / 2,
//! ```
//!
//! and for mixed states the same expression is an upper bound on the QFI;
//! results carry an [`Exactness`] flag to keep the two readings apart.
//!
//! The remaining operations are closed forms derived from this trace
//! expression: per-mode and common-phase decompositions, the trade-off
//! between sensitivity and inter-mode entanglement (via the reduced purity
//! μ), the twin-beam special case, the maximum attainable over all passive
//! networks, and the squeezing-budget bound. `h_sqz(n) = 8n² + 8n` — the
//! QFI of a single squeezed vacuum carrying `n` photons — is the recurring
//! yardstick.

use serde::{Deserialize, Serialize};

use nalgebra::DMatrix;

use crate::entanglement::{purity, reduced_covariance, ModeSubset};
use crate::error::{Error, Result};
use crate::gaussian::{mean_photon_number, CovarianceMatrix};
use crate::transform::{apply, PassiveTransform};

/// Round-off floor: computed QFI values in `[-QFI_CLAMP_TOL, 0]` are
/// clamped to 0; anything more negative is reported as a numerical failure.
pub const QFI_CLAMP_TOL: f64 = 1e-9;

/// Per-mode phase-shift weights g_a.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorWeights {
    g: Vec<f64>,
}

impl GeneratorWeights {
    /// Checks that the weights are non-empty and finite. All-zero weights
    /// are allowed (the QFI is then trivially 0).
    pub fn new(g: Vec<f64>) -> Result<Self> {
        if g.is_empty() {
            return Err(Error::invalid_argument("generator weights must be non-empty"));
        }
        if g.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid_argument("generator weights must be finite"));
        }
        Ok(Self { g })
    }

    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.g
    }

    /// Σ_a g_a².
    pub fn sum_of_squares(&self) -> f64 {
        self.g.iter().map(|x| x * x).sum()
    }
}

/// Whether a reported value is the exact QFI or only an upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    /// The state passed the purity check; the trace formula is the QFI.
    ExactPure,
    /// Mixed state; the trace formula upper-bounds the QFI.
    UpperBoundMixed,
}

/// A QFI value together with its [`Exactness`] reading.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QfiResult {
    pub value: f64,
    pub exactness: Exactness,
}

/// Evaluates `Tr((VG)² − G²)/2` for an arbitrary weighted phase shift.
///
/// The state must be physical; mixed states are accepted and flagged
/// [`Exactness::UpperBoundMixed`].
pub fn qfi_general(v: &CovarianceMatrix, g: &GeneratorWeights) -> Result<QfiResult> {
    if g.len() != v.n_modes() {
        return Err(Error::invalid_argument(format!(
            "{} generator weights do not match {} modes",
            g.len(),
            v.n_modes()
        )));
    }
    let report = v.validate();
    if !report.physical {
        return Err(Error::invalid_state(format!(
            "state is unphysical (min symplectic eigenvalue {})",
            report.min_symplectic_eigenvalue
        )));
    }
    let value = clamp_qfi(qfi_trace(v.matrix(), g.weights()))?;
    Ok(QfiResult {
        value,
        exactness: if report.pure {
            Exactness::ExactPure
        } else {
            Exactness::UpperBoundMixed
        },
    })
}

/// Raw trace expression `(Σ_ij V_ij² γ_i γ_j − 2 Σ_a g_a²)/2` with
/// γ_{2a} = γ_{2a+1} = g_a. No validation and no clamping: the optimizer's
/// inner loop, where the state is pure by construction.
pub(crate) fn qfi_trace(v: &DMatrix<f64>, g: &[f64]) -> f64 {
    let dim = v.nrows();
    debug_assert_eq!(dim, 2 * g.len());
    let mut quad = 0.0;
    for i in 0..dim {
        let gi = g[i / 2];
        if gi == 0.0 {
            continue;
        }
        for j in 0..dim {
            let x = v[(i, j)];
            quad += x * x * gi * g[j / 2];
        }
    }
    let sum_sq: f64 = g.iter().map(|x| x * x).sum();
    (quad - 2.0 * sum_sq) / 2.0
}

fn clamp_qfi(value: f64) -> Result<f64> {
    if value < -QFI_CLAMP_TOL {
        return Err(Error::numerical(format!(
            "QFI evaluated to {value}, beyond round-off tolerance below zero"
        )));
    }
    Ok(value.max(0.0))
}

/// QFI of a single squeezed vacuum with mean photon number n:
/// `h_sqz(n) = 8n² + 8n`, equal to `2 sinh²(2r)` when `n = sinh²(r)`.
pub fn h_sqz(n: f64) -> Result<f64> {
    if !n.is_finite() || n < 0.0 {
        return Err(Error::invalid_argument(format!(
            "mean photon number must be non-negative, got {n}"
        )));
    }
    Ok(8.0 * n * n + 8.0 * n)
}

/// QFI under a phase shift on one mode only, from that mode's reduced 2×2
/// block V₁: `H = ‖V₁‖²/2 − 1` with `‖V₁‖² = Tr(V₁)² − 2 det(V₁)`.
/// Agrees with [`qfi_general`] weighted by the unit vector on that mode.
pub fn qfi_single_mode(v: &CovarianceMatrix, mode: usize) -> Result<QfiResult> {
    if mode >= v.n_modes() {
        return Err(Error::invalid_argument(format!(
            "mode {mode} out of range for {} modes",
            v.n_modes()
        )));
    }
    let report = v.validate();
    if !report.physical {
        return Err(Error::invalid_state(format!(
            "state is unphysical (min symplectic eigenvalue {})",
            report.min_symplectic_eigenvalue
        )));
    }
    let m = v.matrix();
    let (i, j) = (2 * mode, 2 * mode + 1);
    let trace = m[(i, i)] + m[(j, j)];
    let det = m[(i, i)] * m[(j, j)] - m[(i, j)] * m[(j, i)];
    let norm_sq = trace * trace - 2.0 * det;
    let value = clamp_qfi(norm_sq / 2.0 - 1.0)?;
    Ok(QfiResult {
        value,
        exactness: if report.pure {
            Exactness::ExactPure
        } else {
            Exactness::UpperBoundMixed
        },
    })
}

/// Single-mode sensitivity/entanglement trade-off:
/// `H = h_sqz(n₁) − (1/μ² − 1)`, where n₁ is the probed mode's mean photon
/// number and μ the purity of its reduced state. For a pure global state
/// this equals [`qfi_single_mode`] on that mode.
pub fn qfi_single_mode_tradeoff(n1: f64, mu: f64) -> Result<f64> {
    check_purity_domain(mu)?;
    Ok(h_sqz(n1)? - (1.0 / (mu * mu) - 1.0))
}

/// Range of the single-mode QFI at fixed mean photon number n₁:
/// `(h_sqz(n₁)/2, h_sqz(n₁))`. The upper end is reached by an unentangled
/// mode, the lower end at maximal path entanglement.
pub fn qfi_single_mode_bounds(n1: f64) -> (f64, f64) {
    debug_assert!(n1 >= 0.0, "mean photon number must be non-negative");
    (4.0 * n1 * n1 + 4.0 * n1, 8.0 * n1 * n1 + 8.0 * n1)
}

/// QFI of a common phase shift (g = (1, 1)) on a two-mode state:
/// `H_com = Tr(V²)/2 − 2`. Invariant under every passive network, so it
/// equals the sum of the input modes' individual QFIs.
pub fn qfi_common(v: &CovarianceMatrix) -> Result<QfiResult> {
    if v.n_modes() != 2 {
        return Err(Error::invalid_argument(format!(
            "common-phase QFI is a two-mode quantity, got {} modes",
            v.n_modes()
        )));
    }
    let report = v.validate();
    if !report.physical {
        return Err(Error::invalid_state(format!(
            "state is unphysical (min symplectic eigenvalue {})",
            report.min_symplectic_eigenvalue
        )));
    }
    let m = v.matrix();
    let trace_sq = (m * m).trace();
    let value = clamp_qfi(trace_sq / 2.0 - 2.0)?;
    Ok(QfiResult {
        value,
        exactness: if report.pure {
            Exactness::ExactPure
        } else {
            Exactness::UpperBoundMixed
        },
    })
}

/// The three-part split of a two-mode QFI; see
/// [`qfi_two_mode_decomposition`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoModeDecomposition {
    /// QFI of a phase shift on mode 0 alone.
    pub h1: f64,
    /// QFI of a phase shift on mode 1 alone.
    pub h2: f64,
    /// QFI of the common phase shift.
    pub h_com: f64,
    /// `(g₁² − g₁g₂)·h1 + (g₂² − g₁g₂)·h2 + g₁g₂·h_com`; equals
    /// [`qfi_general`] of the same state and weights.
    pub combined: f64,
}

/// Splits a two-mode QFI into single-mode and common-phase contributions:
///
/// ```text
/// H = (g₁² − g₁g₂)·H₁ + (g₂² − g₁g₂)·H₂ + g₁g₂·H_com.
/// ```
///
/// The assembly is an algebraic identity of the trace expression, so
/// `combined` matches [`qfi_general`] for every physical state.
pub fn qfi_two_mode_decomposition(
    v: &CovarianceMatrix,
    g: &GeneratorWeights,
) -> Result<TwoModeDecomposition> {
    if v.n_modes() != 2 || g.len() != 2 {
        return Err(Error::invalid_argument(
            "two-mode decomposition requires a two-mode state and two weights",
        ));
    }
    let h1 = qfi_single_mode(v, 0)?.value;
    let h2 = qfi_single_mode(v, 1)?.value;
    let h_com = qfi_common(v)?.value;
    let (g1, g2) = (g.weights()[0], g.weights()[1]);
    let combined = clamp_qfi((g1 * g1 - g1 * g2) * h1 + (g2 * g2 - g1 * g2) * h2 + g1 * g2 * h_com)?;
    Ok(TwoModeDecomposition {
        h1,
        h2,
        h_com,
        combined,
    })
}

/// Two-mode trade-off between sensitivity and path entanglement, as a pure
/// formula in the photon numbers of the input state (`n_in`), of the
/// entangled state (`n_rot`), and the reduced purity μ:
///
/// ```text
/// H = g₁g₂·(h_sqz(n_in,1) + h_sqz(n_in,2))
///   + (g₁² − g₁g₂)·h_sqz(n_rot,1) + (g₂² − g₁g₂)·h_sqz(n_rot,2)
///   − (g₁ − g₂)²·(1/μ² − 1).
/// ```
///
/// With all four photon numbers equal (equally squeezed inputs — passive
/// networks then leave the per-mode photon number at n) this reduces to
/// `H = (g₁² + g₂²)·h_sqz(n) − (g₁ − g₂)²·(1/μ² − 1)`: only the
/// differential weight difference pays the entanglement penalty, and a
/// common phase (g₁ = g₂) escapes it entirely.
pub fn qfi_two_mode_tradeoff(
    g: &GeneratorWeights,
    n_in: (f64, f64),
    n_rot: (f64, f64),
    mu: f64,
) -> Result<f64> {
    if g.len() != 2 {
        return Err(Error::invalid_argument(
            "two-mode trade-off requires exactly two weights",
        ));
    }
    check_purity_domain(mu)?;
    let (g1, g2) = (g.weights()[0], g.weights()[1]);
    Ok(g1 * g2 * (h_sqz(n_in.0)? + h_sqz(n_in.1)?)
        + (g1 * g1 - g1 * g2) * h_sqz(n_rot.0)?
        + (g2 * g2 - g1 * g2) * h_sqz(n_rot.1)?
        - (g1 - g2) * (g1 - g2) * (1.0 / (mu * mu) - 1.0))
}

/// Convenience form of [`qfi_two_mode_tradeoff`] that derives the photon
/// numbers and the reduced purity from an input state and the network
/// applied to it.
pub fn qfi_two_mode_tradeoff_from_network(
    v_in: &CovarianceMatrix,
    k: &PassiveTransform,
    g: &GeneratorWeights,
) -> Result<f64> {
    if v_in.n_modes() != 2 {
        return Err(Error::invalid_argument(format!(
            "two-mode trade-off requires a two-mode input, got {} modes",
            v_in.n_modes()
        )));
    }
    let v = apply(k, v_in)?;
    // Clamp parts-in-1e16 round-off so a vacuum mode cannot fall below the
    // photon-number domain.
    let n_in = (
        mean_photon_number(v_in, 0)?.max(0.0),
        mean_photon_number(v_in, 1)?.max(0.0),
    );
    let n_rot = (
        mean_photon_number(&v, 0)?.max(0.0),
        mean_photon_number(&v, 1)?.max(0.0),
    );
    let reduced = reduced_covariance(&v, &ModeSubset::new(vec![0], 2)?)?;
    let mu = purity(&reduced)?;
    qfi_two_mode_tradeoff(g, n_in, n_rot, mu)
}

/// QFI of the maximally path-entangled twin-beam state built from two
/// equally squeezed inputs of photon number n each:
/// `H = (g₁ + g₂)²/2 · h_sqz(n)`. Fully sensitive to common phases,
/// completely insensitive to differential ones.
pub fn qfi_epr(g: &GeneratorWeights, n: f64) -> Result<f64> {
    if g.len() != 2 {
        return Err(Error::invalid_argument(
            "twin-beam QFI requires exactly two weights",
        ));
    }
    let (g1, g2) = (g.weights()[0], g.weights()[1]);
    Ok((g1 + g2) * (g1 + g2) / 2.0 * h_sqz(n)?)
}

/// Maximum of [`qfi_general`] over every passive network applied to the
/// squeezed inputs `r`:
///
/// ```text
/// H_max = 2 Σ_a g_(a)² sinh²(2 r_(a)),
/// ```
///
/// where the weights are sorted by descending g² and the squeezing
/// magnitudes |r| descending, matched by rank — the strongest squeezer
/// serves the heaviest weight. (Magnitudes, because a phase shift converts
/// −r into +r at no cost; ties break by original mode index, and any
/// assignment among tied weights gives the same value.) The maximum is
/// attained, with no network at all, by routing the sorted inputs straight
/// through.
pub fn optimal_qfi(r: &crate::gaussian::SqueezingVector, g: &GeneratorWeights) -> Result<f64> {
    if r.len() != g.len() {
        return Err(Error::invalid_argument(format!(
            "{} squeezing parameters do not match {} weights",
            r.len(),
            g.len()
        )));
    }
    let mut g_sq: Vec<f64> = g.weights().iter().map(|x| x * x).collect();
    let mut r_abs: Vec<f64> = r.params().iter().map(|x| x.abs()).collect();
    sort_descending(&mut g_sq);
    sort_descending(&mut r_abs);
    Ok(2.0
        * g_sq
            .iter()
            .zip(&r_abs)
            .map(|(gs, ra)| gs * (2.0 * ra).sinh().powi(2))
            .sum::<f64>())
}

/// Ceiling on the QFI when every input's squeezing is capped at `r_max`:
/// `H ≤ ‖G‖² sinh²(2 r_max)` with `‖G‖² = 2 Σ_a g_a²` the squared
/// Frobenius norm of the generator.
pub fn qfi_budget_bound(g: &GeneratorWeights, r_max: f64) -> Result<f64> {
    if !r_max.is_finite() || r_max < 0.0 {
        return Err(Error::invalid_argument(format!(
            "squeezing budget must be non-negative, got {r_max}"
        )));
    }
    Ok(2.0 * g.sum_of_squares() * (2.0 * r_max).sinh().powi(2))
}

fn check_purity_domain(mu: f64) -> Result<()> {
    if !mu.is_finite() || mu <= 0.0 || mu > 1.0 {
        return Err(Error::invalid_argument(format!(
            "purity must lie in (0, 1], got {mu}"
        )));
    }
    Ok(())
}

/// Sorts descending; stable, so ties keep their original mode order.
fn sort_descending(xs: &mut [f64]) {
    xs.sort_by(|a, b| b.partial_cmp(a).expect("finite values"));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{input_state, vacuum_state, SqueezingVector};
    use crate::transform::{beam_splitter, compose, phase_shift, random_passive};
    use approx::assert_relative_eq;

    /// Maximally path-entangled two-mode state from r = 0.5 inputs:
    /// quarter-wave phase on mode 0, then a balanced beam splitter.
    fn twin_beam() -> CovarianceMatrix {
        let r = SqueezingVector::new(vec![0.5, 0.5]).unwrap();
        let net = compose(
            &beam_splitter(2, 0, 1, std::f64::consts::FRAC_PI_4).unwrap(),
            &phase_shift(2, 0, std::f64::consts::FRAC_PI_2).unwrap(),
        )
        .unwrap();
        apply(&net, &input_state(&r)).unwrap()
    }

    fn weights(g: &[f64]) -> GeneratorWeights {
        GeneratorWeights::new(g.to_vec()).unwrap()
    }

    #[test]
    fn qfi_general_vacuum_is_zero() {
        for n in 1..=3 {
            let v = vacuum_state(n).unwrap();
            let g = weights(&vec![1.25; n]);
            let res = qfi_general(&v, &g).unwrap();
            assert_eq!(res.value, 0.0);
            assert_eq!(res.exactness, Exactness::ExactPure);
        }
    }

    #[test]
    fn qfi_general_single_squeezed_mode() {
        let r = SqueezingVector::new(vec![0.5]).unwrap();
        let v = input_state(&r);
        let res = qfi_general(&v, &weights(&[1.0])).unwrap();
        // cosh(4r) − 1 = 2 sinh²(2r) at r = 0.5.
        assert_relative_eq!(res.value, 2.0 * 1.0f64.sinh().powi(2), max_relative = 1e-12);
        assert_relative_eq!(res.value, 2.762195691083631, max_relative = 1e-12);
        assert_eq!(res.exactness, Exactness::ExactPure);
    }

    #[test]
    fn qfi_general_twin_beam_differential_blindness() {
        let res = qfi_general(&twin_beam(), &weights(&[1.0, -1.0])).unwrap();
        assert!(res.value.abs() <= 1e-12, "got {}", res.value);
    }

    #[test]
    fn qfi_general_flags_mixed_states() {
        let thermal =
            CovarianceMatrix::from_matrix(DMatrix::from_diagonal_element(2, 2, 2.0)).unwrap();
        let res = qfi_general(&thermal, &weights(&[1.0])).unwrap();
        assert_eq!(res.exactness, Exactness::UpperBoundMixed);
        assert_relative_eq!(res.value, 3.0, max_relative = 1e-12);
    }

    #[test]
    fn qfi_general_rejects_bad_inputs() {
        let v = vacuum_state(2).unwrap();
        assert!(matches!(
            qfi_general(&v, &weights(&[1.0])),
            Err(Error::InvalidArgument(_))
        ));
        let squeezed_too_far =
            CovarianceMatrix::from_matrix(DMatrix::from_diagonal_element(2, 2, 0.5)).unwrap();
        assert!(matches!(
            qfi_general(&squeezed_too_far, &weights(&[1.0])),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn h_sqz_values() {
        assert_eq!(h_sqz(0.0).unwrap(), 0.0);
        assert_eq!(h_sqz(1.0).unwrap(), 16.0);
        // 8n² + 8n = 2 sinh²(2r) at n = sinh²(r).
        let n = 0.5f64.sinh().powi(2);
        assert_relative_eq!(
            h_sqz(n).unwrap(),
            2.0 * 1.0f64.sinh().powi(2),
            max_relative = 1e-12
        );
        assert!(h_sqz(-0.1).is_err());
    }

    #[test]
    fn qfi_single_mode_examples() {
        let vac = vacuum_state(2).unwrap();
        assert_eq!(qfi_single_mode(&vac, 0).unwrap().value, 0.0);

        let r = SqueezingVector::new(vec![0.5, 0.3]).unwrap();
        let v = input_state(&r);
        assert_relative_eq!(
            qfi_single_mode(&v, 0).unwrap().value,
            2.0 * 1.0f64.sinh().powi(2),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            qfi_single_mode(&v, 1).unwrap().value,
            2.0 * 0.6f64.sinh().powi(2),
            max_relative = 1e-12
        );

        // Maximal entanglement halves the single-mode value: the reduced
        // block is cosh(2r)·I₂, giving sinh²(2r) = h_sqz(n)/2.
        let epr = qfi_single_mode(&twin_beam(), 0).unwrap();
        assert_relative_eq!(epr.value, 1.0f64.sinh().powi(2), max_relative = 1e-12);
        assert_relative_eq!(epr.value, 1.381097845541816, max_relative = 1e-12);

        assert!(qfi_single_mode(&vac, 2).is_err());
    }

    #[test]
    fn qfi_single_mode_matches_unit_weight_general() {
        for seed in 0..20u64 {
            let r = SqueezingVector::new(vec![0.7, -0.4, 0.2]).unwrap();
            let k = random_passive(3, seed).unwrap();
            let v = apply(&k, &input_state(&r)).unwrap();
            for mode in 0..3 {
                let mut g = vec![0.0; 3];
                g[mode] = 1.0;
                let direct = qfi_single_mode(&v, mode).unwrap().value;
                let general = qfi_general(&v, &weights(&g)).unwrap().value;
                assert_relative_eq!(direct, general, max_relative = 1e-10, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn single_mode_tradeoff_examples() {
        let n = 0.5f64.sinh().powi(2);
        assert_relative_eq!(
            qfi_single_mode_tradeoff(n, 1.0).unwrap(),
            h_sqz(n).unwrap(),
            max_relative = 1e-12
        );
        assert_eq!(qfi_single_mode_tradeoff(0.0, 1.0).unwrap(), 0.0);

        // Twin-beam reduced state: μ = 1/cosh(2r) leaves exactly half of
        // h_sqz(n).
        let mu = 1.0 / 1.0f64.cosh();
        assert_relative_eq!(
            qfi_single_mode_tradeoff(n, mu).unwrap(),
            1.0f64.sinh().powi(2),
            max_relative = 1e-12
        );

        assert!(qfi_single_mode_tradeoff(n, 0.0).is_err());
        assert!(qfi_single_mode_tradeoff(n, 1.5).is_err());
        assert!(qfi_single_mode_tradeoff(-0.1, 0.5).is_err());
    }

    #[test]
    fn single_mode_tradeoff_matches_reduced_state_quantities() {
        // For pure global states the trade-off formula reproduces the
        // single-mode QFI computed directly from the block.
        for seed in 0..20u64 {
            let r = SqueezingVector::new(vec![0.6, -0.8]).unwrap();
            let k = random_passive(2, 1000 + seed).unwrap();
            let v = apply(&k, &input_state(&r)).unwrap();
            let n1 = mean_photon_number(&v, 0).unwrap().max(0.0);
            let reduced = reduced_covariance(&v, &ModeSubset::new(vec![0], 2).unwrap()).unwrap();
            let mu = purity(&reduced).unwrap();
            let direct = qfi_single_mode(&v, 0).unwrap().value;
            let via_tradeoff = qfi_single_mode_tradeoff(n1, mu).unwrap();
            assert_relative_eq!(direct, via_tradeoff, max_relative = 1e-9, epsilon = 1e-9);
        }
    }

    #[test]
    fn single_mode_bounds_examples() {
        assert_eq!(qfi_single_mode_bounds(0.0), (0.0, 0.0));
        assert_eq!(qfi_single_mode_bounds(1.0), (8.0, 16.0));
        let n = 0.5f64.sinh().powi(2);
        let (lo, hi) = qfi_single_mode_bounds(n);
        assert_relative_eq!(lo, 1.0f64.sinh().powi(2), max_relative = 1e-12);
        assert_relative_eq!(hi, 2.0 * 1.0f64.sinh().powi(2), max_relative = 1e-12);
    }

    #[test]
    fn qfi_common_examples() {
        assert_eq!(qfi_common(&vacuum_state(2).unwrap()).unwrap().value, 0.0);

        let r = SqueezingVector::new(vec![0.5, 0.5]).unwrap();
        let separable = qfi_common(&input_state(&r)).unwrap().value;
        assert_relative_eq!(
            separable,
            4.0 * 1.0f64.sinh().powi(2),
            max_relative = 1e-12
        );
        assert_relative_eq!(separable, 5.524391382167263, max_relative = 1e-12);

        // Entangling the inputs leaves the common-phase QFI untouched.
        let entangled = qfi_common(&twin_beam()).unwrap().value;
        assert_relative_eq!(entangled, separable, max_relative = 1e-12);

        assert!(qfi_common(&vacuum_state(3).unwrap()).is_err());
    }

    #[test]
    fn two_mode_decomposition_collapses() {
        for seed in 0..10u64 {
            let r = SqueezingVector::new(vec![0.5, -0.7]).unwrap();
            let k = random_passive(2, 300 + seed).unwrap();
            let v = apply(&k, &input_state(&r)).unwrap();

            let only_first = qfi_two_mode_decomposition(&v, &weights(&[1.0, 0.0])).unwrap();
            assert_relative_eq!(only_first.combined, only_first.h1, max_relative = 1e-12);

            let common = qfi_two_mode_decomposition(&v, &weights(&[1.0, 1.0])).unwrap();
            assert_relative_eq!(common.combined, common.h_com, max_relative = 1e-12);
        }
    }

    #[test]
    fn two_mode_decomposition_twin_beam_differential() {
        let d = qfi_two_mode_decomposition(&twin_beam(), &weights(&[1.0, -1.0])).unwrap();
        let half = 1.0f64.sinh().powi(2);
        assert_relative_eq!(d.h1, half, max_relative = 1e-12);
        assert_relative_eq!(d.h2, half, max_relative = 1e-12);
        assert_relative_eq!(d.h_com, 4.0 * half, max_relative = 1e-12);
        assert!(d.combined.abs() <= 1e-12);
    }

    #[test]
    fn two_mode_decomposition_matches_general() {
        for seed in 0..25u64 {
            let r = SqueezingVector::new(vec![0.9, 0.2]).unwrap();
            let k = random_passive(2, 40 + seed).unwrap();
            let v = apply(&k, &input_state(&r)).unwrap();
            let g = weights(&[1.3, -0.4]);
            let d = qfi_two_mode_decomposition(&v, &g).unwrap();
            let general = qfi_general(&v, &g).unwrap().value;
            assert_relative_eq!(d.combined, general, max_relative = 1e-9, epsilon = 1e-9);
        }
    }

    #[test]
    fn two_mode_tradeoff_formula_cases() {
        let n = 0.5f64.sinh().powi(2);
        let g_common = weights(&[1.0, 1.0]);
        // Common phase escapes the trade-off: μ drops out entirely.
        for mu in [0.3, 0.6480542736638855, 1.0] {
            assert_relative_eq!(
                qfi_two_mode_tradeoff(&g_common, (n, n), (n, n), mu).unwrap(),
                2.0 * h_sqz(n).unwrap(),
                max_relative = 1e-12
            );
        }

        let g_diff = weights(&[1.0, -1.0]);
        assert_relative_eq!(
            qfi_two_mode_tradeoff(&g_diff, (n, n), (n, n), 1.0).unwrap(),
            2.0 * h_sqz(n).unwrap(),
            max_relative = 1e-12
        );
        // Maximal entanglement (μ = 1/cosh(2r)) kills differential
        // sensitivity completely.
        let mu_epr = 1.0 / 1.0f64.cosh();
        let at_epr = qfi_two_mode_tradeoff(&g_diff, (n, n), (n, n), mu_epr).unwrap();
        assert!(at_epr.abs() <= 1e-12, "got {at_epr}");

        assert!(qfi_two_mode_tradeoff(&g_diff, (n, n), (n, n), 0.0).is_err());
        assert!(qfi_two_mode_tradeoff(&g_diff, (-0.1, n), (n, n), 1.0).is_err());
    }

    #[test]
    fn two_mode_tradeoff_equal_photon_reduction() {
        // With all four photon numbers equal the full formula collapses to
        // (g₁² + g₂²)·h_sqz(n) − (g₁ − g₂)²·(1/μ² − 1).
        let n = 0.8;
        let (g1, g2) = (1.7, -0.6);
        let g = weights(&[g1, g2]);
        for mu in [0.4, 0.9, 1.0] {
            let full = qfi_two_mode_tradeoff(&g, (n, n), (n, n), mu).unwrap();
            let reduced = (g1 * g1 + g2 * g2) * h_sqz(n).unwrap()
                - (g1 - g2) * (g1 - g2) * (1.0 / (mu * mu) - 1.0);
            assert_relative_eq!(full, reduced, max_relative = 1e-12);
        }
    }

    #[test]
    fn two_mode_tradeoff_network_wrapper_matches_general() {
        for seed in 0..20u64 {
            let r = SqueezingVector::new(vec![0.5, 0.5]).unwrap();
            let v_in = input_state(&r);
            let k = random_passive(2, 7000 + seed).unwrap();
            let g = weights(&[0.9, -1.1]);
            let via_formula = qfi_two_mode_tradeoff_from_network(&v_in, &k, &g).unwrap();
            let direct = qfi_general(&apply(&k, &v_in).unwrap(), &g).unwrap().value;
            assert_relative_eq!(via_formula, direct, max_relative = 1e-9, epsilon = 1e-9);
        }
    }

    #[test]
    fn qfi_epr_examples() {
        let n = 0.5f64.sinh().powi(2);
        assert_eq!(qfi_epr(&weights(&[1.0, -1.0]), n).unwrap(), 0.0);
        assert_relative_eq!(
            qfi_epr(&weights(&[1.0, 1.0]), n).unwrap(),
            2.0 * h_sqz(n).unwrap(),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            qfi_epr(&weights(&[1.0, 0.0]), n).unwrap(),
            h_sqz(n).unwrap() / 2.0,
            max_relative = 1e-12
        );
        assert!(qfi_epr(&weights(&[1.0]), n).is_err());
    }

    #[test]
    fn qfi_epr_matches_twin_beam_state() {
        let n = 0.5f64.sinh().powi(2);
        let v = twin_beam();
        for g in [[1.0, 1.0], [1.0, -1.0], [0.3, 0.8]] {
            let formula = qfi_epr(&weights(&g), n).unwrap();
            let direct = qfi_general(&v, &weights(&g)).unwrap().value;
            assert_relative_eq!(formula, direct, max_relative = 1e-9, epsilon = 1e-9);
        }
    }

    #[test]
    fn optimal_qfi_examples() {
        let single = optimal_qfi(
            &SqueezingVector::new(vec![0.5]).unwrap(),
            &weights(&[1.0]),
        )
        .unwrap();
        assert_relative_eq!(single, 2.0 * 1.0f64.sinh().powi(2), max_relative = 1e-12);

        let differential = optimal_qfi(
            &SqueezingVector::new(vec![0.5, 0.5]).unwrap(),
            &weights(&[1.0, -1.0]),
        )
        .unwrap();
        assert_relative_eq!(differential, 4.0 * 1.0f64.sinh().powi(2), max_relative = 1e-12);

        // Rank matching: the larger |r| serves the larger g².
        let sorted = optimal_qfi(
            &SqueezingVector::new(vec![0.3, 0.9]).unwrap(),
            &weights(&[2.0, 1.0]),
        )
        .unwrap();
        let expect = 2.0 * (4.0 * 1.8f64.sinh().powi(2) + 0.6f64.sinh().powi(2));
        assert_relative_eq!(sorted, expect, max_relative = 1e-12);
        assert_relative_eq!(sorted, 70.06177189957494, max_relative = 1e-12);

        // Orientation is free for a passive network, so magnitudes sort.
        let negative = optimal_qfi(
            &SqueezingVector::new(vec![-0.9, 0.3]).unwrap(),
            &weights(&[2.0, 1.0]),
        )
        .unwrap();
        assert_relative_eq!(negative, expect, max_relative = 1e-12);

        assert!(optimal_qfi(
            &SqueezingVector::new(vec![0.5]).unwrap(),
            &weights(&[1.0, 1.0])
        )
        .is_err());
    }

    #[test]
    fn optimal_qfi_is_input_state_value_when_sorted() {
        // A decoupled input whose squeezing already decreases with g²
        // attains the optimum with no network at all.
        let r = SqueezingVector::new(vec![0.9, 0.3]).unwrap();
        let g = weights(&[2.0, 1.0]);
        let direct = qfi_general(&input_state(&r), &g).unwrap().value;
        assert_relative_eq!(direct, optimal_qfi(&r, &g).unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn budget_bound_examples() {
        assert_eq!(qfi_budget_bound(&weights(&[1.0, -1.0]), 0.0).unwrap(), 0.0);
        assert_relative_eq!(
            qfi_budget_bound(&weights(&[1.0, -1.0]), 0.5).unwrap(),
            4.0 * 1.0f64.sinh().powi(2),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            qfi_budget_bound(&weights(&[1.0, 0.0, 0.0]), 1.0).unwrap(),
            2.0 * 2.0f64.sinh().powi(2),
            max_relative = 1e-12
        );
        assert!(qfi_budget_bound(&weights(&[1.0]), -0.2).is_err());
    }

    #[test]
    fn budget_bound_dominates_optimum() {
        let cases: [(&[f64], &[f64]); 3] = [
            (&[0.5, 0.5], &[1.0, -1.0]),
            (&[0.3, 0.9, -0.2], &[2.0, 1.0, 0.7]),
            (&[0.0, 1.2], &[0.4, 0.4]),
        ];
        for (rs, gs) in cases {
            let r = SqueezingVector::new(rs.to_vec()).unwrap();
            let g = weights(gs);
            let r_max = rs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            let opt = optimal_qfi(&r, &g).unwrap();
            let bound = qfi_budget_bound(&g, r_max).unwrap();
            assert!(opt <= bound + 1e-12, "optimum {opt} exceeds budget {bound}");
        }
    }

    #[test]
    fn generator_weights_guards() {
        assert!(GeneratorWeights::new(vec![]).is_err());
        assert!(GeneratorWeights::new(vec![f64::INFINITY]).is_err());
        assert!(GeneratorWeights::new(vec![0.0, 0.0]).is_ok());
        assert_eq!(weights(&[3.0, -4.0]).sum_of_squares(), 25.0);
    }
}

//! Path entanglement of Gaussian states: reduced states, purity, von
//! Neumann entropy, and the structural predicates used by the optimality
//! results.
//!
//! For a globally pure state, the entanglement between a subset of modes
//! and the rest is measured by the von Neumann entropy of the reduced
//! state. Two closed forms are used, and their agreement is one of the
//! library's cross-checks:
//!
//! * from the reduced purity μ = 1/√det V_sub (single-mode reductions):
//!   `S = (1−μ)/(2μ)·ln((1+μ)/(1−μ)) − ln(2μ/(1+μ))`;
//! * from the reduced symplectic spectrum (any reduction):
//!   `S = Σ_k [(ν_k+1)/2·ln((ν_k+1)/2) − (ν_k−1)/2·ln((ν_k−1)/2)]`.
//!
//! Entropies are in nats throughout.
//!
//! A state is *decoupled* when every inter-mode covariance vanishes; for
//! states built by passive networks from squeezed inputs this happens
//! exactly when the state is a tensor product of the input squeezed states
//! in some order and orientation. A state is *properly ordered* for weights
//! g when the per-mode photon numbers decrease wherever g² strictly
//! decreases; decoupled, properly ordered states are the QFI-optimal ones.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::gaussian::{mean_photon_number, symplectic_eigenvalues, CovarianceMatrix, DEFAULT_NU_TOL};
use crate::metrology::GeneratorWeights;

/// Default absolute threshold for [`is_decoupled`]. For states whose
/// entries are far from unit scale, rescale by `‖V‖_max`.
pub const DEFAULT_DECOUPLING_TOL: f64 = 1e-9;

/// Reductions with purity below this raise out-of-domain rather than
/// returning a diverging entropy.
pub const MIN_PURITY: f64 = 1e-8;

/// A proper, non-empty subset of the modes {0, …, N−1}, kept strictly
/// increasing. Carries N so the complement is well-defined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeSubset {
    indices: Vec<usize>,
    n_modes: usize,
}

impl ModeSubset {
    /// Checks that the indices are strictly increasing, in range, and form
    /// a non-empty **proper** subset (the complement must be non-empty
    /// too, or there is no bipartition).
    pub fn new(indices: Vec<usize>, n_modes: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::invalid_argument("mode subset must be non-empty"));
        }
        if !indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::invalid_argument(
                "mode subset indices must be strictly increasing",
            ));
        }
        if *indices.last().expect("non-empty") >= n_modes {
            return Err(Error::invalid_argument(format!(
                "mode index {} out of range for {n_modes} modes",
                indices.last().expect("non-empty")
            )));
        }
        if indices.len() == n_modes {
            return Err(Error::invalid_argument(
                "mode subset must be proper (its complement must be non-empty)",
            ));
        }
        Ok(Self { indices, n_modes })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// The other side of the bipartition.
    pub fn complement(&self) -> ModeSubset {
        let indices: Vec<usize> =
            (0..self.n_modes).filter(|i| !self.indices.contains(i)).collect();
        ModeSubset {
            indices,
            n_modes: self.n_modes,
        }
    }
}

/// Principal submatrix on the subset's quadrature rows and columns: the
/// covariance matrix of the reduced state. Physical whenever the input is.
pub fn reduced_covariance(v: &CovarianceMatrix, s: &ModeSubset) -> Result<CovarianceMatrix> {
    if s.n_modes() != v.n_modes() {
        return Err(Error::invalid_argument(format!(
            "subset over {} modes does not match a {}-mode state",
            s.n_modes(),
            v.n_modes()
        )));
    }
    let k = s.len();
    let m = v.matrix();
    let mut out = DMatrix::zeros(2 * k, 2 * k);
    for (row, &a) in s.indices().iter().enumerate() {
        for (col, &b) in s.indices().iter().enumerate() {
            for qa in 0..2 {
                for qb in 0..2 {
                    out[(2 * row + qa, 2 * col + qb)] = m[(2 * a + qa, 2 * b + qb)];
                }
            }
        }
    }
    Ok(CovarianceMatrix::from_symmetric_unchecked(out))
}

/// Purity μ = 1/√det V of a (typically reduced) state; 1 exactly for pure
/// states, smaller the more mixed the reduction is. Round-off overshoots
/// above 1 by at most [`DEFAULT_NU_TOL`] are clamped to 1.
pub fn purity(v: &CovarianceMatrix) -> Result<f64> {
    let chol = v.matrix().clone().cholesky().ok_or_else(|| {
        Error::invalid_argument("covariance matrix is not positive-definite")
    })?;
    let mu = 1.0 / chol.determinant().sqrt();
    if mu > 1.0 + DEFAULT_NU_TOL {
        return Err(Error::invalid_argument(format!(
            "determinant {} below 1: not a physical state",
            1.0 / (mu * mu)
        )));
    }
    Ok(mu.min(1.0))
}

/// Von Neumann entropy (nats) of a single-mode state of purity μ:
/// `S = (1−μ)/(2μ)·ln((1+μ)/(1−μ)) − ln(2μ/(1+μ))`, with S(1) = 0 taken
/// as the explicit limit. Strictly decreasing in μ.
pub fn entropy_from_purity(mu: f64) -> Result<f64> {
    if !mu.is_finite() || mu <= 0.0 || mu > 1.0 {
        return Err(Error::invalid_argument(format!(
            "purity must lie in (0, 1], got {mu}"
        )));
    }
    if mu < MIN_PURITY {
        return Err(Error::out_of_domain(format!(
            "entropy diverges as purity → 0 (got {mu} < {MIN_PURITY:e})"
        )));
    }
    if mu == 1.0 {
        return Ok(0.0);
    }
    Ok((1.0 - mu) / (2.0 * mu) * ((1.0 + mu) / (1.0 - mu)).ln() - (2.0 * mu / (1.0 + mu)).ln())
}

/// Entanglement entropy (nats) between a mode subset and its complement,
/// for a globally pure state: the entropy of the reduced state, computed
/// from its symplectic eigenvalues as
/// `Σ_k [(ν_k+1)/2·ln((ν_k+1)/2) − (ν_k−1)/2·ln((ν_k−1)/2)]`.
///
/// Mixed global states are rejected — their reduced entropy would mix
/// classical and quantum correlations and is not an entanglement measure.
pub fn entanglement_entropy(v: &CovarianceMatrix, s: &ModeSubset) -> Result<f64> {
    if s.n_modes() != v.n_modes() {
        return Err(Error::invalid_argument(format!(
            "subset over {} modes does not match a {}-mode state",
            s.n_modes(),
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
    if !report.pure {
        return Err(Error::invalid_state(
            "entanglement entropy requires a globally pure state",
        ));
    }
    let reduced = reduced_covariance(v, s)?;
    let nus = symplectic_eigenvalues(&reduced)?;
    Ok(nus.iter().map(|&nu| entropy_term(nu)).sum::<f64>().max(0.0))
}

/// One symplectic eigenvalue's entropy contribution. The mixed term
/// `(ν−1)/2·ln((ν−1)/2)` has limit 0 as ν → 1 and is taken as exactly 0
/// for ν ≤ 1 + tolerance, so pure reductions contribute nothing.
fn entropy_term(nu: f64) -> f64 {
    let plus = (nu + 1.0) / 2.0;
    let mut s = plus * plus.ln();
    if nu > 1.0 + DEFAULT_NU_TOL {
        let minus = (nu - 1.0) / 2.0;
        s -= minus * minus.ln();
    }
    s
}

/// True when every inter-mode covariance block is entrywise ≤ tol in
/// absolute value: no correlations between any pair of modes.
pub fn is_decoupled(v: &CovarianceMatrix, tol: f64) -> Result<bool> {
    if !tol.is_finite() || tol < 0.0 {
        return Err(Error::invalid_argument(format!(
            "decoupling tolerance must be non-negative, got {tol}"
        )));
    }
    let n = v.n_modes();
    let m = v.matrix();
    for a in 0..n {
        for b in (a + 1)..n {
            for qa in 0..2 {
                for qb in 0..2 {
                    if m[(2 * a + qa, 2 * b + qb)].abs() > tol {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// True when the photon-number ordering is compatible with the weights:
/// for every pair with `g_a² > g_b² + tol`, mode a holds at least as many
/// photons as mode b (up to tol). States violating this waste their
/// strongest squeezing on lightly-weighted modes.
pub fn is_properly_ordered(
    v: &CovarianceMatrix,
    g: &GeneratorWeights,
    tol: f64,
) -> Result<bool> {
    if g.len() != v.n_modes() {
        return Err(Error::invalid_argument(format!(
            "{} weights do not match {} modes",
            g.len(),
            v.n_modes()
        )));
    }
    if !tol.is_finite() || tol < 0.0 {
        return Err(Error::invalid_argument(format!(
            "ordering tolerance must be non-negative, got {tol}"
        )));
    }
    let n: Vec<f64> = (0..v.n_modes())
        .map(|a| mean_photon_number(v, a))
        .collect::<Result<_>>()?;
    let gs: Vec<f64> = g.weights().iter().map(|x| x * x).collect();
    for a in 0..gs.len() {
        for b in 0..gs.len() {
            if gs[a] > gs[b] + tol && n[a] < n[b] - tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{input_state, vacuum_state, SqueezingVector};
    use crate::transform::{apply, beam_splitter, compose, phase_shift, random_passive};
    use approx::assert_relative_eq;

    fn twin_beam() -> CovarianceMatrix {
        let r = SqueezingVector::new(vec![0.5, 0.5]).unwrap();
        let net = compose(
            &beam_splitter(2, 0, 1, std::f64::consts::FRAC_PI_4).unwrap(),
            &phase_shift(2, 0, std::f64::consts::FRAC_PI_2).unwrap(),
        )
        .unwrap();
        apply(&net, &input_state(&r)).unwrap()
    }

    fn subset(indices: &[usize], n: usize) -> ModeSubset {
        ModeSubset::new(indices.to_vec(), n).unwrap()
    }

    #[test]
    fn mode_subset_guards_and_complement() {
        assert!(ModeSubset::new(vec![], 3).is_err());
        assert!(ModeSubset::new(vec![1, 1], 3).is_err());
        assert!(ModeSubset::new(vec![2, 1], 3).is_err());
        assert!(ModeSubset::new(vec![3], 3).is_err());
        assert!(ModeSubset::new(vec![0, 1, 2], 3).is_err());

        let s = subset(&[0, 2], 4);
        assert_eq!(s.complement().indices(), &[1, 3]);
        assert_eq!(s.complement().complement(), s);
    }

    #[test]
    fn reduced_covariance_examples() {
        let r = SqueezingVector::new(vec![0.5, 0.3]).unwrap();
        let v = input_state(&r);
        let first = reduced_covariance(&v, &subset(&[0], 2)).unwrap();
        let e = std::f64::consts::E;
        assert_relative_eq!(first.matrix()[(0, 0)], 1.0 / e, max_relative = 1e-15);
        assert_relative_eq!(first.matrix()[(1, 1)], e, max_relative = 1e-15);

        // Tracing out half of a maximally entangled pair leaves a thermal
        // state cosh(2r)·I₂.
        let half = reduced_covariance(&twin_beam(), &subset(&[0], 2)).unwrap();
        assert_relative_eq!(
            half.matrix(),
            &DMatrix::from_diagonal_element(2, 2, 1.0f64.cosh()),
            epsilon = 1e-12
        );

        // Subset bookkeeping must match the state.
        assert!(reduced_covariance(&v, &subset(&[0], 3)).is_err());
    }

    #[test]
    fn reduced_covariance_multimode_subset() {
        let r = SqueezingVector::new(vec![0.2, 0.4, -0.6]).unwrap();
        let v = input_state(&r);
        let pair = reduced_covariance(&v, &subset(&[0, 2], 3)).unwrap();
        let expect = input_state(&SqueezingVector::new(vec![0.2, -0.6]).unwrap());
        assert_relative_eq!(pair.matrix(), expect.matrix(), epsilon = 1e-15);
    }

    #[test]
    fn purity_examples() {
        let one = vacuum_state(1).unwrap();
        assert_eq!(purity(&one).unwrap(), 1.0);

        let thermal = CovarianceMatrix::from_matrix(DMatrix::from_diagonal_element(
            2,
            2,
            1.0f64.cosh(),
        ))
        .unwrap();
        assert_relative_eq!(
            purity(&thermal).unwrap(),
            1.0 / 1.0f64.cosh(),
            max_relative = 1e-12
        );
        assert_relative_eq!(purity(&thermal).unwrap(), 0.6480542736638855, max_relative = 1e-12);

        let r = SqueezingVector::new(vec![0.5]).unwrap();
        assert_relative_eq!(purity(&input_state(&r)).unwrap(), 1.0, epsilon = 1e-12);

        let indefinite =
            CovarianceMatrix::from_matrix(DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(
                &[1.0, -1.0],
            )))
            .unwrap();
        assert!(purity(&indefinite).is_err());
    }

    #[test]
    fn purity_clamps_round_off_overshoot() {
        let barely = CovarianceMatrix::from_matrix(DMatrix::from_diagonal(
            &nalgebra::DVector::from_row_slice(&[1.0 - 1e-12, 1.0]),
        ))
        .unwrap();
        assert_eq!(purity(&barely).unwrap(), 1.0);

        let far = CovarianceMatrix::from_matrix(DMatrix::from_diagonal(
            &nalgebra::DVector::from_row_slice(&[0.5, 0.5]),
        ))
        .unwrap();
        assert!(purity(&far).is_err());
    }

    #[test]
    fn entropy_from_purity_examples() {
        assert_eq!(entropy_from_purity(1.0).unwrap(), 0.0);

        // Same quantity through the symplectic spectrum: the reduced state
        // of purity μ has the single eigenvalue ν = 1/μ.
        for nu in [1.0f64.cosh(), 1.2, 3.7] {
            let via_purity = entropy_from_purity(1.0 / nu).unwrap();
            let via_spectrum = entropy_term(nu);
            assert_relative_eq!(via_purity, via_spectrum, max_relative = 1e-12);
        }
        assert_relative_eq!(
            entropy_from_purity(1.0 / 1.0f64.cosh()).unwrap(),
            0.65947,
            max_relative = 1e-4
        );

        // Strictly decreasing in μ.
        let grid: Vec<f64> = (1..=40).map(|k| k as f64 / 40.0).collect();
        for w in grid.windows(2) {
            assert!(entropy_from_purity(w[0]).unwrap() > entropy_from_purity(w[1]).unwrap());
        }

        assert!(matches!(
            entropy_from_purity(1e-9),
            Err(Error::OutOfDomain(_))
        ));
        assert!(entropy_from_purity(0.0).is_err());
        assert!(entropy_from_purity(1.5).is_err());
        assert!(entropy_from_purity(-0.3).is_err());
    }

    #[test]
    fn entanglement_entropy_examples() {
        let r = SqueezingVector::new(vec![0.5, -0.8]).unwrap();
        let decoupled = input_state(&r);
        assert!(entanglement_entropy(&decoupled, &subset(&[0], 2)).unwrap() <= 1e-9);

        let v = twin_beam();
        let left = entanglement_entropy(&v, &subset(&[0], 2)).unwrap();
        let right = entanglement_entropy(&v, &subset(&[1], 2)).unwrap();
        let expect = entropy_from_purity(1.0 / 1.0f64.cosh()).unwrap();
        assert_relative_eq!(left, expect, max_relative = 1e-9);
        assert_relative_eq!(left, right, epsilon = 1e-9);
    }

    #[test]
    fn entanglement_entropy_schmidt_symmetry() {
        for seed in 0..10u64 {
            let r = SqueezingVector::new(vec![0.4, -0.9, 0.7]).unwrap();
            let k = random_passive(3, 500 + seed).unwrap();
            let v = apply(&k, &input_state(&r)).unwrap();
            let s = subset(&[0, 1], 3);
            let a = entanglement_entropy(&v, &s).unwrap();
            let b = entanglement_entropy(&v, &s.complement()).unwrap();
            assert_relative_eq!(a, b, epsilon = 1e-9, max_relative = 1e-9);
        }
    }

    #[test]
    fn entanglement_entropy_agrees_with_purity_form() {
        for seed in 0..10u64 {
            let r = SqueezingVector::new(vec![0.6, 0.3]).unwrap();
            let k = random_passive(2, 800 + seed).unwrap();
            let v = apply(&k, &input_state(&r)).unwrap();
            let s = subset(&[0], 2);
            let reduced = reduced_covariance(&v, &s).unwrap();
            let via_nu = entanglement_entropy(&v, &s).unwrap();
            let via_mu = entropy_from_purity(purity(&reduced).unwrap()).unwrap();
            assert_relative_eq!(via_nu, via_mu, epsilon = 1e-9, max_relative = 1e-9);
        }
    }

    #[test]
    fn entanglement_entropy_rejects_mixed_global_states() {
        let thermal =
            CovarianceMatrix::from_matrix(DMatrix::from_diagonal_element(4, 4, 2.0)).unwrap();
        assert!(matches!(
            entanglement_entropy(&thermal, &subset(&[0], 2)),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn decoupling_predicate() {
        let r = SqueezingVector::new(vec![0.5, 0.5]).unwrap();
        assert!(is_decoupled(&input_state(&r), 1e-9).unwrap());
        assert!(!is_decoupled(&twin_beam(), 1e-9).unwrap());

        // Per-mode phases and mode swaps preserve decoupling.
        let swap_and_phase = compose(
            &beam_splitter(2, 0, 1, std::f64::consts::FRAC_PI_2).unwrap(),
            &phase_shift(2, 0, 1.1).unwrap(),
        )
        .unwrap();
        let permuted = apply(&swap_and_phase, &input_state(&r)).unwrap();
        assert!(is_decoupled(&permuted, 1e-9).unwrap());

        assert!(is_decoupled(&input_state(&r), -1.0).is_err());
    }

    #[test]
    fn proper_ordering_predicate() {
        let equal_g = GeneratorWeights::new(vec![1.0, 1.0]).unwrap();
        let unequal_g = GeneratorWeights::new(vec![2.0, 1.0]).unwrap();

        let well_ordered = input_state(&SqueezingVector::new(vec![0.9, 0.3]).unwrap());
        let ill_ordered = input_state(&SqueezingVector::new(vec![0.3, 0.9]).unwrap());

        assert!(is_properly_ordered(&ill_ordered, &equal_g, 1e-9).unwrap());
        assert!(is_properly_ordered(&well_ordered, &unequal_g, 1e-9).unwrap());
        assert!(!is_properly_ordered(&ill_ordered, &unequal_g, 1e-9).unwrap());

        let three = GeneratorWeights::new(vec![1.0, 1.0, 1.0]).unwrap();
        assert!(is_properly_ordered(&well_ordered, &three, 1e-9).is_err());
    }
}

//! Passive (photon-number-preserving) transformations of Gaussian states.
//!
//! A passive transformation acts on quadratures as a 2N×2N matrix K that is
//! simultaneously orthogonal (KᵀK = I) and symplectic (KᵀΩK = Ω), and maps a
//! covariance matrix to K V Kᵀ. Equivalently it is an N×N unitary U on the
//! mode operators; [`from_unitary`] realizes the correspondence.
//!
//! # Sign convention
//!
//! `phase_shift(θ)` puts `[[cos θ, sin θ], [-sin θ, cos θ]]` on the mode's
//! quadrature block, which corresponds to `â → e^{-iθ} â`. Consequently
//! `from_unitary(diag(e^{-iθ})) == phase_shift(θ)`. Nothing downstream
//! depends on the sign choice; it is fixed so that golden outputs are
//! reproducible.
//!
//! # Mesh layout
//!
//! [`MeshParams`] parametrizes a rectangular lattice of two-mode couplers
//! (the Clements arrangement): layers ℓ = 0, …, N−1, where layer ℓ couples
//! the pairs (i, i+1) for i = ℓ mod 2, ℓ mod 2 + 2, … < N−1. Couplers are
//! ordered layer by layer, ascending in i within a layer, N(N−1)/2 in total.
//! A coupler with angles (θ, φ) applies `phase_shift(i, φ)` followed by
//! `beam_splitter(i, i+1, θ)`; after the last layer each mode a gets a final
//! `phase_shift(a, output_phases[a])`. Any passive transformation can be
//! represented this way.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{symmetrize, symplectic_form, CovarianceMatrix};

/// Entrywise tolerance for the orthogonality and symplecticity invariants.
pub const PASSIVE_CHECK_TOL: f64 = 1e-10;

/// A 2N×2N symplectic-orthogonal quadrature map: the linear-optics network.
#[derive(Debug, Clone, PartialEq)]
pub struct PassiveTransform {
    n_modes: usize,
    data: DMatrix<f64>,
}

impl PassiveTransform {
    /// Wraps a matrix after checking shape, finiteness, orthogonality, and
    /// symplecticity (each entrywise within [`PASSIVE_CHECK_TOL`]).
    pub fn from_matrix(data: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = data.shape();
        if rows != cols || rows == 0 || rows % 2 != 0 {
            return Err(Error::invalid_argument(format!(
                "passive transform must be square with even dimension, got {rows}x{cols}"
            )));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid_argument(
                "passive transform has non-finite entries",
            ));
        }
        let n_modes = rows / 2;
        let gram_defect = (&data.transpose() * &data - DMatrix::identity(rows, rows)).amax();
        if gram_defect > PASSIVE_CHECK_TOL {
            return Err(Error::invalid_argument(format!(
                "matrix is not orthogonal (max |KᵀK - I| = {gram_defect:e})"
            )));
        }
        let omega = symplectic_form(n_modes);
        let sympl_defect = (&data.transpose() * &omega * &data - omega).amax();
        if sympl_defect > PASSIVE_CHECK_TOL {
            return Err(Error::invalid_argument(format!(
                "matrix is not symplectic (max |KᵀΩK - Ω| = {sympl_defect:e})"
            )));
        }
        Ok(Self { n_modes, data })
    }

    /// Wraps a matrix that is symplectic-orthogonal by construction.
    pub(crate) fn from_parts_unchecked(n_modes: usize, data: DMatrix<f64>) -> Self {
        debug_assert_eq!(data.nrows(), 2 * n_modes);
        debug_assert_eq!(data.ncols(), 2 * n_modes);
        Self { n_modes, data }
    }

    /// The do-nothing network on `n_modes` modes.
    pub fn identity(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::invalid_argument("n_modes must be at least 1"));
        }
        Ok(Self::from_parts_unchecked(
            n_modes,
            DMatrix::identity(2 * n_modes, 2 * n_modes),
        ))
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Full quadrature dimension 2N.
    pub fn dim(&self) -> usize {
        2 * self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.data
    }
}

/// Phase shift θ on one mode: identity except that mode's block is
/// `[[cos θ, sin θ], [-sin θ, cos θ]]`.
pub fn phase_shift(n_modes: usize, mode: usize, theta: f64) -> Result<PassiveTransform> {
    if mode >= n_modes {
        return Err(Error::invalid_argument(format!(
            "mode {mode} out of range for {n_modes} modes"
        )));
    }
    if !theta.is_finite() {
        return Err(Error::invalid_argument("phase angle must be finite"));
    }
    let mut k = DMatrix::identity(2 * n_modes, 2 * n_modes);
    let (s, c) = theta.sin_cos();
    k[(2 * mode, 2 * mode)] = c;
    k[(2 * mode, 2 * mode + 1)] = s;
    k[(2 * mode + 1, 2 * mode)] = -s;
    k[(2 * mode + 1, 2 * mode + 1)] = c;
    Ok(PassiveTransform::from_parts_unchecked(n_modes, k))
}

/// Beam splitter of mixing angle η between two modes: identity except the
/// 4×4 block on (a, b) is `[[cos η · I₂, sin η · I₂], [-sin η · I₂, cos η · I₂]]`.
/// η = π/4 is the balanced (50/50) splitter.
pub fn beam_splitter(
    n_modes: usize,
    mode_a: usize,
    mode_b: usize,
    eta: f64,
) -> Result<PassiveTransform> {
    if mode_a >= n_modes || mode_b >= n_modes {
        return Err(Error::invalid_argument(format!(
            "modes ({mode_a}, {mode_b}) out of range for {n_modes} modes"
        )));
    }
    if mode_a == mode_b {
        return Err(Error::invalid_argument(
            "beam splitter requires two distinct modes",
        ));
    }
    if !eta.is_finite() {
        return Err(Error::invalid_argument("mixing angle must be finite"));
    }
    let mut k = DMatrix::identity(2 * n_modes, 2 * n_modes);
    let (s, c) = eta.sin_cos();
    for q in 0..2 {
        let (ia, ib) = (2 * mode_a + q, 2 * mode_b + q);
        k[(ia, ia)] = c;
        k[(ia, ib)] = s;
        k[(ib, ia)] = -s;
        k[(ib, ib)] = c;
    }
    Ok(PassiveTransform::from_parts_unchecked(n_modes, k))
}

/// Quadrature map of an N×N mode-operator unitary: the 2×2 block (a, b) of
/// K is `[[Re u_ab, -Im u_ab], [Im u_ab, Re u_ab]]`, so that
/// `from_unitary(diag(e^{-iθ})) == phase_shift(θ)`.
pub fn from_unitary(u: &DMatrix<Complex64>) -> Result<PassiveTransform> {
    let n = u.nrows();
    if n == 0 || u.ncols() != n {
        return Err(Error::invalid_argument(format!(
            "mode unitary must be square and non-empty, got {}x{}",
            u.nrows(),
            u.ncols()
        )));
    }
    if u.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::invalid_argument("mode unitary has non-finite entries"));
    }
    let defect = (u.adjoint() * u - DMatrix::<Complex64>::identity(n, n))
        .iter()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max);
    if defect > PASSIVE_CHECK_TOL {
        return Err(Error::invalid_argument(format!(
            "matrix is not unitary (max |U†U - I| = {defect:e})"
        )));
    }
    let mut k = DMatrix::zeros(2 * n, 2 * n);
    for a in 0..n {
        for b in 0..n {
            let z = u[(a, b)];
            k[(2 * a, 2 * b)] = z.re;
            k[(2 * a, 2 * b + 1)] = -z.im;
            k[(2 * a + 1, 2 * b)] = z.im;
            k[(2 * a + 1, 2 * b + 1)] = z.re;
        }
    }
    Ok(PassiveTransform::from_parts_unchecked(n, k))
}

/// Haar-distributed N×N unitary from the supplied generator.
///
/// Algorithm (fixed so that seeded outputs are portable): fill an N×N
/// complex Ginibre matrix row by row, each entry (g₁ + i·g₂)/√2 with g₁, g₂
/// consecutive standard normals; orthonormalize its columns left to right by
/// modified Gram–Schmidt, running the projection sweep twice per column for
/// numerical orthogonality. The implicit triangular factor then has a
/// positive real diagonal, which makes the Q factor Haar-distributed.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    assert!(n > 0, "haar_unitary requires at least one mode");
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut cols: Vec<DVector<Complex64>> = (0..n).map(|_| DVector::zeros(n)).collect();
    for i in 0..n {
        for col in cols.iter_mut() {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            col[i] = Complex64::new(re * inv_sqrt2, im * inv_sqrt2);
        }
    }
    for j in 0..n {
        for _pass in 0..2 {
            for i in 0..j {
                let coeff = cols[i].dotc(&cols[j]);
                let proj = &cols[i] * coeff;
                cols[j] -= proj;
            }
        }
        let norm = cols[j].norm();
        // A Ginibre matrix is full rank with probability one; a vanishing
        // column indicates a broken generator rather than bad luck.
        assert!(norm > 0.0, "Gram-Schmidt encountered a zero column");
        cols[j].unscale_mut(norm);
    }
    DMatrix::from_columns(&cols)
}

/// Haar-random passive transformation, deterministic in the seed.
pub fn random_passive(n_modes: usize, seed: u64) -> Result<PassiveTransform> {
    if n_modes == 0 {
        return Err(Error::invalid_argument("n_modes must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = haar_unitary(n_modes, &mut rng);
    from_unitary(&u)
}

/// Sequential composition: the network that applies `k1` first, then `k2`
/// (matrix product K₂·K₁).
pub fn compose(k2: &PassiveTransform, k1: &PassiveTransform) -> Result<PassiveTransform> {
    if k2.n_modes() != k1.n_modes() {
        return Err(Error::invalid_argument(format!(
            "cannot compose transforms on {} and {} modes",
            k2.n_modes(),
            k1.n_modes()
        )));
    }
    Ok(PassiveTransform::from_parts_unchecked(
        k2.n_modes(),
        k2.matrix() * k1.matrix(),
    ))
}

/// Action on a state: V ↦ K V Kᵀ (equal to K V K⁻¹ by orthogonality).
/// Preserves the symplectic spectrum, purity, det V, Tr V, and the total
/// photon number.
pub fn apply(k: &PassiveTransform, v: &CovarianceMatrix) -> Result<CovarianceMatrix> {
    if k.n_modes() != v.n_modes() {
        return Err(Error::invalid_argument(format!(
            "transform on {} modes cannot act on a {}-mode state",
            k.n_modes(),
            v.n_modes()
        )));
    }
    let mut out = k.matrix() * v.matrix() * k.matrix().transpose();
    // K V Kᵀ is symmetric in exact arithmetic; scrub the roundoff so the
    // result satisfies the covariance-matrix symmetry invariant exactly.
    symmetrize(&mut out);
    Ok(CovarianceMatrix::from_symmetric_unchecked(out))
}

/// Angles of the rectangular coupler lattice described in the
/// [module docs](self): one (θ, φ) pair per coupler in layout order plus a
/// final phase per mode. All-zero angles give the identity network.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeshParams {
    n_modes: usize,
    rotation_angles: Vec<(f64, f64)>,
    output_phases: Vec<f64>,
}

impl MeshParams {
    /// Checks the coupler count N(N−1)/2, the phase count N, and
    /// finiteness of every angle.
    pub fn new(
        n_modes: usize,
        rotation_angles: Vec<(f64, f64)>,
        output_phases: Vec<f64>,
    ) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::invalid_argument("n_modes must be at least 1"));
        }
        let expected = n_modes * (n_modes - 1) / 2;
        if rotation_angles.len() != expected {
            return Err(Error::invalid_argument(format!(
                "expected {expected} coupler angle pairs for {n_modes} modes, got {}",
                rotation_angles.len()
            )));
        }
        if output_phases.len() != n_modes {
            return Err(Error::invalid_argument(format!(
                "expected {n_modes} output phases, got {}",
                output_phases.len()
            )));
        }
        let finite = rotation_angles
            .iter()
            .all(|&(t, p)| t.is_finite() && p.is_finite())
            && output_phases.iter().all(|p| p.is_finite());
        if !finite {
            return Err(Error::invalid_argument("mesh angles must be finite"));
        }
        Ok(Self {
            n_modes,
            rotation_angles,
            output_phases,
        })
    }

    /// All angles zero: the identity network.
    pub fn identity(n_modes: usize) -> Result<Self> {
        Self::new(
            n_modes,
            vec![(0.0, 0.0); n_modes * (n_modes - 1) / 2],
            vec![0.0; n_modes],
        )
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn rotation_angles(&self) -> &[(f64, f64)] {
        &self.rotation_angles
    }

    pub fn output_phases(&self) -> &[f64] {
        &self.output_phases
    }

    /// Total number of free angles, N².
    pub fn param_count(n_modes: usize) -> usize {
        n_modes * n_modes
    }

    /// Flattens to `[θ₁, φ₁, θ₂, φ₂, …, out₁, …, out_N]` (length N²), the
    /// layout the optimizer works in.
    pub fn to_flat(&self) -> Vec<f64> {
        let mut flat = Vec::with_capacity(Self::param_count(self.n_modes));
        for &(theta, phi) in &self.rotation_angles {
            flat.push(theta);
            flat.push(phi);
        }
        flat.extend_from_slice(&self.output_phases);
        flat
    }

    /// Inverse of [`MeshParams::to_flat`].
    pub fn from_flat(n_modes: usize, flat: &[f64]) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::invalid_argument("n_modes must be at least 1"));
        }
        if flat.len() != Self::param_count(n_modes) {
            return Err(Error::invalid_argument(format!(
                "expected {} flat mesh parameters for {n_modes} modes, got {}",
                Self::param_count(n_modes),
                flat.len()
            )));
        }
        let n_couplers = n_modes * (n_modes - 1) / 2;
        let rotation_angles = (0..n_couplers)
            .map(|c| (flat[2 * c], flat[2 * c + 1]))
            .collect();
        let output_phases = flat[2 * n_couplers..].to_vec();
        Self::new(n_modes, rotation_angles, output_phases)
    }
}

/// Ordered (i, i+1) pairs of the rectangular lattice for `n_modes` modes;
/// `rotation_angles` entries correspond to this list one-to-one.
pub fn coupler_layout(n_modes: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n_modes * n_modes.saturating_sub(1) / 2);
    for layer in 0..n_modes {
        let mut i = layer % 2;
        while i + 1 < n_modes {
            pairs.push((i, i + 1));
            i += 2;
        }
    }
    pairs
}

/// Builds the network the mesh angles describe: couplers in layout order
/// (each `beam_splitter(i, i+1, θ) ∘ phase_shift(i, φ)`), then the output
/// phases.
pub fn mesh_to_transform(p: &MeshParams) -> PassiveTransform {
    let n = p.n_modes();
    let mut k = DMatrix::identity(2 * n, 2 * n);
    for (&(i, _j), &(theta, phi)) in coupler_layout(n).iter().zip(p.rotation_angles()) {
        let ps = phase_shift(n, i, phi).expect("layout indices are in range");
        let bs = beam_splitter(n, i, i + 1, theta).expect("layout indices are in range");
        k = bs.matrix() * ps.matrix() * k;
    }
    for (a, &phase) in p.output_phases().iter().enumerate() {
        let ps = phase_shift(n, a, phase).expect("mode index in range");
        k = ps.matrix() * k;
    }
    PassiveTransform::from_parts_unchecked(n, k)
}

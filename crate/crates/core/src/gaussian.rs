//! Covariance-matrix representation of zero-mean Gaussian states.
//!
//! # Conventions
//!
//! **ħ = 2 throughout.** Quadratures obey `[x̂_a, p̂_a] = 2i`, so the vacuum
//! has unit variance in every quadrature and the covariance matrix of the
//! N-mode vacuum is the 2N×2N identity. Many other libraries use ħ = 1
//! (vacuum variance 1/2); divide by two to convert.
//!
//! Quadratures are **interleaved**: the operator vector is
//! `(x̂₁, p̂₁, x̂₂, p̂₂, …, x̂_N, p̂_N)` and every matrix in this crate uses that
//! ordering. The covariance matrix is `V_ij = ⟨{q̂_i, q̂_j}⟩/2` for a
//! zero-mean state.
//!
//! A state is physical iff all its symplectic eigenvalues satisfy ν ≥ 1,
//! and pure iff they all equal 1.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Absolute entrywise tolerance for symmetry checks.
pub const DEFAULT_SYMMETRY_TOL: f64 = 1e-12;

/// Tolerance on symplectic eigenvalues for physicality and purity checks.
pub const DEFAULT_NU_TOL: f64 = 1e-9;

/// Relative tolerance when pairing the doubled symplectic spectrum.
pub const PAIRING_REL_TOL: f64 = 1e-7;

/// Cap on |r| so that e^{4r} stays well inside double-precision range for
/// the QFI trace formula. A library limit, not physics.
pub const MAX_SQUEEZING: f64 = 10.0;

/// 2N×2N covariance matrix of an N-mode zero-mean Gaussian state,
/// interleaved quadrature ordering, ħ = 2 units.
///
/// Construction enforces shape and symmetry only. Physicality (ν ≥ 1) is a
/// separate, reportable property: see [`CovarianceMatrix::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    n_modes: usize,
    data: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Wraps a dense matrix, checking that it is square with even dimension
    /// ≥ 2, has finite entries, and is symmetric to within
    /// [`DEFAULT_SYMMETRY_TOL`].
    pub fn from_matrix(data: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = data.shape();
        if rows != cols {
            return Err(Error::invalid_argument(format!(
                "covariance matrix must be square, got {rows}x{cols}"
            )));
        }
        if rows == 0 || rows % 2 != 0 {
            return Err(Error::invalid_argument(format!(
                "covariance matrix dimension must be even and positive, got {rows}"
            )));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid_argument(
                "covariance matrix has non-finite entries",
            ));
        }
        let asym = max_asymmetry(&data);
        if asym > DEFAULT_SYMMETRY_TOL {
            return Err(Error::invalid_argument(format!(
                "covariance matrix asymmetric beyond {DEFAULT_SYMMETRY_TOL:e} (max |V - Vᵀ| = {asym:e})"
            )));
        }
        Ok(Self {
            n_modes: rows / 2,
            data,
        })
    }

    /// Wraps a matrix that is symmetric by construction. Crate-internal;
    /// callers guarantee shape and exact symmetry.
    pub(crate) fn from_symmetric_unchecked(data: DMatrix<f64>) -> Self {
        debug_assert!(data.is_square() && data.nrows().is_multiple_of(2));
        Self {
            n_modes: data.nrows() / 2,
            data,
        }
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

    /// Validity report at the default tolerances.
    pub fn validate(&self) -> ValidationReport {
        self.validate_with(DEFAULT_SYMMETRY_TOL, DEFAULT_NU_TOL)
    }

    /// Validity report with caller-chosen tolerances: `symmetry_tol` bounds
    /// `max |V - Vᵀ|`, `nu_tol` is the slack on the ν ≥ 1 physicality test
    /// and the |ν - 1| purity test.
    ///
    /// If the matrix is not positive-definite its symplectic spectrum is
    /// undefined; the report then carries `physical: false` and a NaN
    /// minimum eigenvalue.
    pub fn validate_with(&self, symmetry_tol: f64, nu_tol: f64) -> ValidationReport {
        let symmetric = max_asymmetry(&self.data) <= symmetry_tol;
        match symplectic_eigenvalues(self) {
            Ok(nus) => {
                let min_nu = *nus.last().expect("at least one mode");
                let physical = min_nu >= 1.0 - nu_tol;
                let pure = nus.iter().all(|nu| (nu - 1.0).abs() <= nu_tol);
                ValidationReport {
                    symmetric,
                    physical,
                    pure,
                    min_symplectic_eigenvalue: min_nu,
                }
            }
            Err(_) => ValidationReport {
                symmetric,
                physical: false,
                pure: false,
                min_symplectic_eigenvalue: f64::NAN,
            },
        }
    }
}

/// Outcome of checking a covariance matrix against the state-space rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    /// Symmetric to within the requested tolerance.
    pub symmetric: bool,
    /// Every symplectic eigenvalue satisfies ν ≥ 1 (up to tolerance).
    pub physical: bool,
    /// Every symplectic eigenvalue equals 1 (up to tolerance). Implies
    /// `physical`.
    pub pure: bool,
    /// Smallest symplectic eigenvalue, or NaN if the spectrum is undefined.
    pub min_symplectic_eigenvalue: f64,
}

/// Per-mode squeezing parameters of the input state.
///
/// Negative entries are legal and mean the orthogonal squeezing orientation
/// (the squeezed and anti-squeezed quadratures swap).
#[derive(Debug, Clone, PartialEq)]
pub struct SqueezingVector {
    r: Vec<f64>,
}

impl SqueezingVector {
    /// Checks that the list is non-empty, finite, and within the
    /// [`MAX_SQUEEZING`] overflow guard.
    pub fn new(r: Vec<f64>) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::invalid_argument("squeezing vector must be non-empty"));
        }
        if r.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid_argument("squeezing parameters must be finite"));
        }
        if let Some(bad) = r.iter().find(|x| x.abs() > MAX_SQUEEZING) {
            return Err(Error::invalid_argument(format!(
                "|r| = {} exceeds the supported squeezing cap {MAX_SQUEEZING}",
                bad.abs()
            )));
        }
        Ok(Self { r })
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn params(&self) -> &[f64] {
        &self.r
    }
}

/// The symplectic form Ω: block-diagonal with per-mode blocks
/// `[[0, 1], [-1, 0]]`. Satisfies Ω² = -I and Ωᵀ = -Ω exactly.
pub fn symplectic_form(n_modes: usize) -> DMatrix<f64> {
    let mut omega = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for a in 0..n_modes {
        omega[(2 * a, 2 * a + 1)] = 1.0;
        omega[(2 * a + 1, 2 * a)] = -1.0;
    }
    omega
}

/// N-mode vacuum: the 2N×2N identity.
pub fn vacuum_state(n_modes: usize) -> Result<CovarianceMatrix> {
    if n_modes == 0 {
        return Err(Error::invalid_argument("n_modes must be at least 1"));
    }
    Ok(CovarianceMatrix::from_symmetric_unchecked(
        DMatrix::identity(2 * n_modes, 2 * n_modes),
    ))
}

/// Product of single-mode squeezed vacua:
/// `diag(e^{-2r₁}, e^{2r₁}, …, e^{-2r_N}, e^{2r_N})`.
pub fn input_state(r: &SqueezingVector) -> CovarianceMatrix {
    let n = r.len();
    let mut data = DMatrix::zeros(2 * n, 2 * n);
    for (a, &ra) in r.params().iter().enumerate() {
        data[(2 * a, 2 * a)] = (-2.0 * ra).exp();
        data[(2 * a + 1, 2 * a + 1)] = (2.0 * ra).exp();
    }
    CovarianceMatrix::from_symmetric_unchecked(data)
}

/// Symplectic eigenvalues ν₁ ≥ … ≥ ν_N of a symmetric positive-definite
/// covariance matrix, at the default pairing tolerance.
///
/// They are the positive square roots of the eigenvalues of -(ΩV)², each of
/// which appears with multiplicity two. The computation stays in symmetric
/// eigensolvers: -(ΩV)² is similar to M Mᵀ with M = V^{1/2} Ω V^{1/2}.
pub fn symplectic_eigenvalues(v: &CovarianceMatrix) -> Result<Vec<f64>> {
    symplectic_eigenvalues_with(v, PAIRING_REL_TOL)
}

/// Same as [`symplectic_eigenvalues`] with an explicit relative tolerance
/// for pairing the doubled spectrum.
pub fn symplectic_eigenvalues_with(v: &CovarianceMatrix, pair_tol: f64) -> Result<Vec<f64>> {
    let root = symmetric_sqrt(&v.data)?;
    let omega = symplectic_form(v.n_modes());
    let m = &root * omega * &root;
    // MMᵀ is symmetric PSD with the ν_k² each doubled; symmetrize away the
    // last bits of roundoff before the eigensolve.
    let mut p = &m * m.transpose();
    symmetrize(&mut p);
    let eig = p.symmetric_eigenvalues();
    let mut doubled: Vec<f64> = eig.iter().map(|&lam| lam.max(0.0).sqrt()).collect();
    doubled.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));

    let mut nus = Vec::with_capacity(v.n_modes());
    for pair in doubled.chunks_exact(2) {
        let (hi, lo) = (pair[0], pair[1]);
        if hi - lo > pair_tol * hi.max(1.0) {
            return Err(Error::numerical(format!(
                "symplectic spectrum failed to pair: {hi} vs {lo}"
            )));
        }
        nus.push(0.5 * (hi + lo));
    }
    Ok(nus)
}

/// Mean photon number of one mode: `(⟨x̂²⟩ + ⟨p̂²⟩)/4 - 1/2`, i.e.
/// `Tr(V_a)/4 - 1/2` on the mode's 2×2 diagonal block.
pub fn mean_photon_number(v: &CovarianceMatrix, mode: usize) -> Result<f64> {
    if mode >= v.n_modes() {
        return Err(Error::invalid_argument(format!(
            "mode {mode} out of range for {} modes",
            v.n_modes()
        )));
    }
    let trace = v.data[(2 * mode, 2 * mode)] + v.data[(2 * mode + 1, 2 * mode + 1)];
    Ok(trace / 4.0 - 0.5)
}

/// Total mean photon number `Tr(V)/4 - N/2`; passive transformations
/// preserve it.
pub fn total_photon_number(v: &CovarianceMatrix) -> f64 {
    v.data.trace() / 4.0 - v.n_modes() as f64 / 2.0
}

/// Symmetric square root via eigendecomposition. Fails with
/// `InvalidArgument` if the matrix is not positive-definite.
fn symmetric_sqrt(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    if eig.eigenvalues.iter().any(|&lam| lam <= 0.0) {
        return Err(Error::invalid_argument(
            "matrix is not positive-definite; symplectic spectrum undefined",
        ));
    }
    let mut scaled = eig.eigenvectors.clone();
    for (j, &lam) in eig.eigenvalues.iter().enumerate() {
        let s = lam.sqrt();
        scaled.column_mut(j).scale_mut(s);
    }
    Ok(&scaled * eig.eigenvectors.transpose())
}

fn max_asymmetry(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

pub(crate) fn symmetrize(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
}

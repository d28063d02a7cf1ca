//! Declarative network files: a JSON description of squeezed inputs
//! flowing through an ordered list of passive elements, plus an exact
//! serialization of the resulting covariance matrix.
//!
//! The schema is deliberately small:
//!
//! ```json
//! {
//!   "n_modes": 2,
//!   "input_squeezing": [0.5, 0.5],
//!   "elements": [
//!     {"kind": "phase", "mode": 0, "theta": 1.5707963267948966},
//!     {"kind": "bs", "mode_a": 0, "mode_b": 1, "eta": 0.7853981633974483}
//!   ]
//! }
//! ```
//!
//! All angles are radians. `random_passive` elements carry their seed, so
//! a file fully reproduces its state on any machine.

use cvqfi_core::{
    apply, beam_splitter, input_state, mesh_to_transform, phase_shift, random_passive,
    CovarianceMatrix, Error, MeshParams, PassiveTransform, SqueezingVector,
};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Parsed form of a network file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSpec {
    /// Number of optical modes; every element must stay within range.
    pub n_modes: usize,
    /// Squeezing parameter per input mode, length `n_modes`.
    pub input_squeezing: Vec<f64>,
    /// Passive elements applied in file order.
    #[serde(default)]
    pub elements: Vec<Element>,
}

/// One passive element. The JSON `kind` field selects the variant;
/// anything else is rejected at parse time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Element {
    /// Phase rotation `theta` (radians) on one mode.
    Phase { mode: usize, theta: f64 },
    /// Beam splitter with mixing angle `eta` (radians) between two modes.
    Bs {
        mode_a: usize,
        mode_b: usize,
        eta: f64,
    },
    /// Haar-random passive network drawn deterministically from `seed`.
    RandomPassive { seed: u64 },
    /// Rectangular coupler mesh with explicit angles (radians), in the
    /// layout order the library documents.
    Mesh {
        rotation_angles: Vec<(f64, f64)>,
        output_phases: Vec<f64>,
    },
}

/// Parses a network file, wrapping I/O and JSON failures into one
/// user-facing message.
pub fn load_network(path: &Path) -> Result<NetworkSpec, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

/// Realizes one element as a transform on `n_modes` modes.
pub fn element_transform(n_modes: usize, element: &Element) -> cvqfi_core::Result<PassiveTransform> {
    match element {
        Element::Phase { mode, theta } => phase_shift(n_modes, *mode, *theta),
        Element::Bs {
            mode_a,
            mode_b,
            eta,
        } => beam_splitter(n_modes, *mode_a, *mode_b, *eta),
        Element::RandomPassive { seed } => random_passive(n_modes, *seed),
        Element::Mesh {
            rotation_angles,
            output_phases,
        } => Ok(mesh_to_transform(&MeshParams::new(
            n_modes,
            rotation_angles.clone(),
            output_phases.clone(),
        )?)),
    }
}

/// Builds the output covariance matrix a network file describes.
pub fn build_state(spec: &NetworkSpec) -> cvqfi_core::Result<CovarianceMatrix> {
    if spec.input_squeezing.len() != spec.n_modes {
        return Err(Error::InvalidArgument(format!(
            "network declares {} modes but {} input squeezing parameters",
            spec.n_modes,
            spec.input_squeezing.len()
        )));
    }
    let r = SqueezingVector::new(spec.input_squeezing.clone())?;
    let mut v = input_state(&r);
    for element in &spec.elements {
        v = apply(&element_transform(spec.n_modes, element)?, &v)?;
    }
    Ok(v)
}

/// Exact JSON form of a covariance matrix (row-major, full f64
/// round-trip precision).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateJson {
    pub n_modes: usize,
    pub covariance: Vec<Vec<f64>>,
}

/// Serializes a state for exact persistence.
pub fn state_to_json(v: &CovarianceMatrix) -> StateJson {
    let m = v.matrix();
    StateJson {
        n_modes: v.n_modes(),
        covariance: (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
            .collect(),
    }
}

/// Rebuilds a state from its JSON form, re-checking every invariant.
pub fn state_from_json(s: &StateJson) -> cvqfi_core::Result<CovarianceMatrix> {
    let dim = 2 * s.n_modes;
    if s.covariance.len() != dim || s.covariance.iter().any(|row| row.len() != dim) {
        return Err(Error::InvalidArgument(format!(
            "covariance must be {dim}x{dim} for {} modes",
            s.n_modes
        )));
    }
    CovarianceMatrix::from_matrix(DMatrix::from_fn(dim, dim, |i, j| s.covariance[i][j]))
}

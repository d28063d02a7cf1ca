//! Derivative-free simplex minimizer (Nelder–Mead with the standard
//! reflection/expansion/contraction/shrink moves).
//!
//! The QFI landscape over mesh angles is smooth but non-convex with large
//! flat symmetry orbits; a simplex search with multi-restart (handled by
//! the caller) is robust there, and finite-difference gradients would add
//! cost without robustness at the dimensions involved (≤ 64).

/// Reflection, expansion, contraction, and shrink coefficients — the
/// textbook values.
const ALPHA: f64 = 1.0;
const GAMMA: f64 = 2.0;
const RHO: f64 = 0.5;
const SIGMA: f64 = 0.5;

/// Stopping thresholds and budget for one simplex run.
#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    /// Iteration budget for this run.
    pub max_iters: usize,
    /// Converged when every vertex is within this of the best, per
    /// coordinate…
    pub xtol: f64,
    /// …and the objective spread across the simplex is within this.
    pub ftol: f64,
    /// Offset of the initial simplex's vertices from the start point.
    pub initial_step: f64,
}

/// Where a simplex run ended up.
#[derive(Debug, Clone)]
pub struct SimplexOutcome {
    pub best_x: Vec<f64>,
    pub best_f: f64,
    pub iterations: usize,
    /// True when both tolerance tests passed before the budget ran out.
    pub converged: bool,
}

/// Minimizes `f` from `x0`. The objective must return finite values for
/// finite inputs.
pub fn minimize<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    opts: &SimplexOptions,
) -> SimplexOutcome {
    let d = x0.len();
    assert!(d >= 1, "simplex search needs at least one dimension");

    // Initial simplex: the start point plus one vertex stepped along each
    // coordinate axis.
    let mut verts: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    let f0 = f(x0);
    verts.push((x0.to_vec(), f0));
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] += opts.initial_step;
        let fx = f(&x);
        verts.push((x, fx));
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iters {
        verts.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite objective"));

        let f_best = verts[0].1;
        let f_worst = verts[d].1;
        let x_spread = verts
            .iter()
            .flat_map(|(x, _)| x.iter().zip(&verts[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0f64, f64::max);
        if f_worst - f_best <= opts.ftol && x_spread <= opts.xtol {
            converged = true;
            break;
        }
        iterations += 1;

        // Centroid of all vertices but the worst.
        let mut centroid = vec![0.0; d];
        for (x, _) in verts.iter().take(d) {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi;
            }
        }
        for c in centroid.iter_mut() {
            *c /= d as f64;
        }

        let worst = verts[d].0.clone();
        let reflected: Vec<f64> = centroid
            .iter()
            .zip(&worst)
            .map(|(c, w)| c + ALPHA * (c - w))
            .collect();
        let f_reflected = f(&reflected);

        if f_reflected < f_best {
            let expanded: Vec<f64> = centroid
                .iter()
                .zip(&reflected)
                .map(|(c, r)| c + GAMMA * (r - c))
                .collect();
            let f_expanded = f(&expanded);
            verts[d] = if f_expanded < f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
            continue;
        }
        if f_reflected < verts[d - 1].1 {
            verts[d] = (reflected, f_reflected);
            continue;
        }

        // Reflection did not beat the second-worst vertex: contract.
        // Inside contraction needs strict improvement, otherwise a tied
        // (locally flat) objective would re-contract the same vertex
        // forever instead of falling through to the shrink step.
        let accepted = if f_reflected < f_worst {
            let outside: Vec<f64> = centroid
                .iter()
                .zip(&reflected)
                .map(|(c, r)| c + RHO * (r - c))
                .collect();
            let fc = f(&outside);
            (fc <= f_reflected).then_some((outside, fc))
        } else {
            let inside: Vec<f64> = centroid
                .iter()
                .zip(&worst)
                .map(|(c, w)| c + RHO * (w - c))
                .collect();
            let fc = f(&inside);
            (fc < f_worst).then_some((inside, fc))
        };
        if let Some(vertex) = accepted {
            verts[d] = vertex;
            continue;
        }

        // Contraction failed too: shrink everything toward the best vertex.
        let best_x = verts[0].0.clone();
        for (x, fx) in verts.iter_mut().skip(1) {
            for (xi, bi) in x.iter_mut().zip(&best_x) {
                *xi = bi + SIGMA * (*xi - bi);
            }
            *fx = f(x);
        }
    }

    verts.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite objective"));
    let (best_x, best_f) = verts.swap_remove(0);
    SimplexOutcome {
        best_x,
        best_f,
        iterations,
        converged,
    }
}

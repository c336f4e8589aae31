//! Weierstrass (Durand-Kerner) simultaneous root iteration.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::algebra::{Complex, UnivariatePoly, ZERO_TOLERANCE};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 200;

/// All roots of a polynomial, in the order the iteration left them.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex>,
    /// `max |p(root)|`.
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RootError {
    /// The iteration hit `max_iter`; the last iterate is kept for diagnostics.
    NonConvergence(RootSet),
    DegenerateLeadingCoefficient,
}

impl fmt::Display for RootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootError::NonConvergence(r) => write!(
                f,
                "root iteration did not converge after {} steps (residual {:e})",
                r.iterations, r.residual
            ),
            RootError::DegenerateLeadingCoefficient => {
                f.write_str("leading coefficient is numerically zero")
            }
        }
    }
}

impl core::error::Error for RootError {}

/// Finds all `deg p` roots simultaneously.
///
/// Starts from `r * (0.4 + 0.9i)^k` with the Cauchy radius
/// `r = 1 + max |a_k / a_0|` and updates roots in place until the largest
/// correction is below `tol * max(1, |root|)`. A constant polynomial has
/// no roots.
pub fn solve_all_roots(
    p: &UnivariatePoly,
    tol: f64,
    max_iter: usize,
) -> Result<RootSet, RootError> {
    let coeffs = p.coeffs();
    let lead = coeffs[0];
    if lead.norm() <= ZERO_TOLERANCE * p.max_abs_coeff() || lead.is_zero() {
        return Err(RootError::DegenerateLeadingCoefficient);
    }
    let degree = p.degree();
    if degree == 0 {
        return Ok(RootSet {
            roots: Vec::new(),
            residual: 0.0,
            iterations: 0,
        });
    }
    let monic: Vec<Complex> = coeffs.iter().map(|&c| c / lead).collect();
    let radius = 1.0 + monic[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);

    let seed = Complex::new(0.4, 0.9);
    let mut roots: Vec<Complex> = Vec::with_capacity(degree);
    let mut power = Complex::new(radius, 0.0);
    for _ in 0..degree {
        roots.push(power);
        power *= seed;
    }

    let eval = |z: Complex| monic.iter().fold(Complex::zero(), |acc, &c| acc * z + c);

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        iterations += 1;
        let mut max_step: f64 = 0.0;
        for i in 0..degree {
            let zi = roots[i];
            let mut denom = Complex::new(1.0, 0.0);
            for (j, &zj) in roots.iter().enumerate() {
                if j != i {
                    denom *= zi - zj;
                }
            }
            if denom.is_zero() {
                // coincident iterates: nudge apart
                denom = Complex::new(f64::EPSILON * radius, 0.0);
            }
            let step = eval(zi) / denom;
            roots[i] = zi - step;
            max_step = max_step.max(step.norm() / roots[i].norm().max(1.0));
        }
        if max_step < tol {
            converged = true;
            break;
        }
        if !max_step.is_finite() {
            break;
        }
    }

    let residual = roots.iter().map(|&z| p.eval(z).norm()).fold(0.0, f64::max);
    let set = RootSet {
        roots,
        residual,
        iterations,
    };
    if converged && residual.is_finite() {
        Ok(set)
    } else {
        Err(RootError::NonConvergence(set))
    }
}

/// Replaces every cluster of roots closer than `radius` by copies of its
/// centroid. The mean of a cluster around a multiple root is far more
/// accurate than its members.
pub fn merge_clusters(roots: &[Complex], radius: f64) -> Vec<Complex> {
    let n = roots.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() < radius {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[b.max(a)] = a.min(b);
                }
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let root = find(&mut label, i);
        let mut sum = Complex::zero();
        let mut count = 0.0;
        for (j, &r) in roots.iter().enumerate() {
            if find(&mut label, j) == root {
                sum += r;
                count += 1.0;
            }
        }
        out.push(sum / count);
    }
    out
}

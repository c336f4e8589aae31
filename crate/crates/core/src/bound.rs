//! Epsilon-delta bound for the branches `y_j(x)` of a plane algebraic curve.
//!
//! For a point `x1` away from the zeros of `a_0` and of the discriminant,
//! and `eps` equal to half the minimum distance between the fibre values
//! at `x1`, the bound yields `delta` such that every branch moves by less
//! than `eps` while `x` stays within `delta` of `x1`. The curve-wide
//! ingredients (singular `x`-values and absolute coefficient table) are
//! computed once in [`CurveGlobals::compute`]; [`CurveGlobals::point_bound`]
//! is cheap and pure so that it can run per mesh vertex.

use alloc::vec::Vec;
use core::fmt;

#[cfg(not(any(feature = "std", test)))]
use num_traits::Float;

use crate::algebra::{AlgebraError, BivariatePoly, Complex, UnivariatePoly, ZERO_TOLERANCE};
use crate::roots::{merge_clusters, solve_all_roots, RootError};

/// Which power of `(|x1| + rho)` weights `|a_kl|` in the coefficient bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AtildeExponent {
    /// `n - l`, with `n` the degree in `y`. The default.
    #[default]
    FiberDegree,
    /// `m_k - l`, the actual power of `x` carried by `a_kl`.
    CoefficientDegree,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundConfig {
    /// `rho = rho_factor * (distance to the nearest singular x)`, in (0, 1).
    pub rho_factor: f64,
    /// Stand-in for the distance to the singular set when it is empty.
    pub r_max: f64,
    pub exponent: AtildeExponent,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig {
            rho_factor: 0.5,
            r_max: 10.0,
            exponent: AtildeExponent::FiberDegree,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoundError {
    NotACurve,
    CurveNotSquarefree,
    /// Zeros of `a_0` or of the discriminant could not be located.
    GlobalRoots(RootError),
}

impl fmt::Display for BoundError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundError::NotACurve => f.write_str("polynomial does not depend on y"),
            BoundError::CurveNotSquarefree => {
                f.write_str("curve is not squarefree in y (discriminant vanishes identically)")
            }
            BoundError::GlobalRoots(e) => write!(f, "singular x-values: {}", e),
        }
    }
}

impl core::error::Error for BoundError {}

impl From<AlgebraError> for BoundError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::NotACurve => BoundError::NotACurve,
            AlgebraError::NotSquarefree => BoundError::CurveNotSquarefree,
        }
    }
}

/// Per-curve ingredients of the bound.
#[derive(Clone, Debug)]
pub struct CurveGlobals {
    pub curve: BivariatePoly,
    pub fx: BivariatePoly,
    pub fy: BivariatePoly,
    /// Zeros of `a_0(x)` with multiplicity (`m_0` entries).
    pub a0_zeros: Vec<Complex>,
    /// Zeros of the `y`-discriminant with multiplicity.
    pub disc_zeros: Vec<Complex>,
    /// `abs_coeffs[k][l] = |a_kl|`, `l` counting from the highest power.
    pub abs_coeffs: Vec<Vec<f64>>,
}

/// Result of the bound at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointBound {
    pub rho: f64,
    /// `Y = max_j |f_x / f_y|` over the fibre.
    pub y_bound: f64,
    /// `M = 2 max_k (atilde_k / atilde_0)^(1/k)`.
    pub m_bound: f64,
    pub atilde: Vec<f64>,
    /// Half the minimum fibre separation; infinite for a single sheet.
    pub epsilon: f64,
    pub delta: f64,
    /// Fibre values (nearly) coincide or the point sits on the singular set.
    pub singular: bool,
}

const GLOBAL_MAX_ITER: usize = 5000;

fn zeros_of(p: &UnivariatePoly) -> Result<Vec<Complex>, BoundError> {
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    // exact zeros at the origin first
    let coeffs = p.coeffs();
    let trailing = coeffs.iter().rev().take_while(|c| c.norm() == 0.0).count();
    let mut zeros = alloc::vec![Complex::new(0.0, 0.0); trailing];
    let rest = UnivariatePoly::new(coeffs[..coeffs.len() - trailing].to_vec());
    if rest.degree() == 0 {
        return Ok(zeros);
    }
    let roots = match solve_all_roots(&rest, 1e-14, GLOBAL_MAX_ITER) {
        Ok(set) => set.roots,
        Err(RootError::NonConvergence(set)) => {
            // multiple roots converge linearly; accept a small residual
            let scale = rest.max_abs_coeff()
                * (1.0 + set.roots.iter().map(|r| r.norm()).fold(0.0, f64::max))
                    .powi(rest.degree() as i32);
            if set.residual <= 1e-10 * scale {
                set.roots
            } else {
                return Err(BoundError::GlobalRoots(RootError::NonConvergence(set)));
            }
        }
        Err(e) => return Err(BoundError::GlobalRoots(e)),
    };
    let extent = 1.0 + roots.iter().map(|r| r.norm()).fold(0.0, f64::max);
    zeros.extend(merge_clusters(&roots, 1e-5 * extent));
    Ok(zeros)
}

impl CurveGlobals {
    /// Singular `x`-values and the coefficient table of `f`.
    pub fn compute(f: &BivariatePoly) -> Result<Self, BoundError> {
        if f.degree_y() == 0 || f.coeff(0).is_zero() {
            return Err(BoundError::NotACurve);
        }
        let disc = f.discriminant_x()?;
        let a0_zeros = zeros_of(f.coeff(0))?;
        let disc_zeros = zeros_of(&disc)?;
        let abs_coeffs = f
            .coeffs()
            .iter()
            .map(|a| a.coeffs().iter().map(|c| c.norm()).collect())
            .collect();
        let (fx, fy) = f.partials();
        Ok(CurveGlobals {
            curve: f.clone(),
            fx,
            fy,
            a0_zeros,
            disc_zeros,
            abs_coeffs,
        })
    }

    pub fn degree_y(&self) -> usize {
        self.curve.degree_y()
    }

    /// Every singular `x`-value: zeros of `a_0` followed by discriminant zeros.
    pub fn singular_points(&self) -> impl Iterator<Item = &Complex> {
        self.a0_zeros.iter().chain(self.disc_zeros.iter())
    }

    /// Distance from `x1` to the nearest singular value, `None` if there is none.
    pub fn singular_distance(&self, x1: Complex) -> Option<f64> {
        self.singular_points()
            .map(|z| (z - x1).norm())
            .fold(None, |acc, d| Some(acc.map_or(d, |a: f64| a.min(d))))
    }

    /// Clearance radius `rho = rho_factor * d_min`, or `rho_factor * r_max`
    /// when the curve has no singular `x`-values.
    pub fn rho_at(&self, x1: Complex, config: &BoundConfig) -> f64 {
        match self.singular_distance(x1) {
            Some(d) => config.rho_factor * d,
            None => config.rho_factor * config.r_max,
        }
    }

    /// Evaluates the bound at `x1` for the fibre `fiber` (all `n` roots of
    /// `f(x1, y)`).
    pub fn point_bound(&self, x1: Complex, fiber: &[Complex], config: &BoundConfig) -> PointBound {
        let n = self.degree_y();
        let rho = self.rho_at(x1, config);

        let mut y_bound: f64 = 0.0;
        let mut degenerate = rho <= 0.0 || fiber.len() != n;
        for &y in fiber {
            let fy = self.fy.eval(x1, y);
            if fy.norm() == 0.0 {
                degenerate = true;
                continue;
            }
            y_bound = y_bound.max((self.fx.eval(x1, y) / fy).norm());
        }

        let atilde = self.atilde(x1, rho, config.exponent);
        let m_bound = (1..=n)
            .map(|k| 2.0 * (atilde[k] / atilde[0]).powf(1.0 / k as f64))
            .fold(0.0, f64::max);
        if atilde[0].is_nan() || atilde[0] <= 0.0 {
            degenerate = true;
        }

        let epsilon = if n == 1 {
            f64::INFINITY
        } else {
            let mut min = f64::INFINITY;
            for i in 0..fiber.len() {
                for j in i + 1..fiber.len() {
                    min = min.min((fiber[i] - fiber[j]).norm());
                }
            }
            0.5 * min
        };
        let extent = 1.0 + fiber.iter().map(|y| y.norm()).fold(0.0, f64::max);
        if epsilon <= SEPARATION_TOLERANCE * extent {
            degenerate = true;
        }

        let delta = if degenerate {
            0.0
        } else if n == 1 {
            rho
        } else {
            delta_formula(epsilon, rho, y_bound, m_bound)
        };
        PointBound {
            rho,
            y_bound,
            m_bound,
            atilde,
            epsilon,
            delta,
            singular: degenerate,
        }
    }

    /// `atilde_0 = |a_00| prod (|xbar_l - x1| - rho)` and
    /// `atilde_k = sum_l |a_kl| (|x1| + rho)^e` with `e` per `exponent`.
    pub fn atilde(&self, x1: Complex, rho: f64, exponent: AtildeExponent) -> Vec<f64> {
        let n = self.degree_y();
        let base = x1.norm() + rho.abs();
        let mut out = Vec::with_capacity(n + 1);
        let lead = self.abs_coeffs[0][0];
        out.push(
            self.a0_zeros
                .iter()
                .fold(lead, |acc, z| acc * ((z - x1).norm() - rho)),
        );
        for k in 1..=n {
            let row = &self.abs_coeffs[k];
            let m_k = row.len() - 1;
            let sum = row
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0.0)
                .map(|(l, &a)| {
                    let e = match exponent {
                        AtildeExponent::FiberDegree => n as i32 - l as i32,
                        AtildeExponent::CoefficientDegree => (m_k - l) as i32,
                    };
                    a * base.powi(e)
                })
                .sum();
            out.push(sum);
        }
        out
    }
}

/// Fibre values closer than this (relative to their magnitude) count as equal.
pub const SEPARATION_TOLERANCE: f64 = 1e-10;

/// `delta(eps, rho, Y, M)`: the positive root in `delta` of
/// `(M - rho Y) delta^2 + rho (rho Y + eps) delta - rho^2 eps = 0`.
///
/// Evaluated in the rationalised form
/// `2 rho eps / ((rho Y + eps) + sqrt((rho Y - eps)^2 + 4 eps M))`, which
/// equals the quotient with denominator `2 (M - rho Y)` and stays finite
/// where `M = rho Y` (value `rho eps / (eps + rho Y)` there). Clamped to
/// `[0, rho]`.
pub fn delta_formula(epsilon: f64, rho: f64, y_bound: f64, m_bound: f64) -> f64 {
    if epsilon.is_nan() || rho.is_nan() || epsilon <= 0.0 || rho <= 0.0 {
        return 0.0;
    }
    if epsilon.is_infinite() {
        return rho;
    }
    let ry = rho * y_bound;
    let root = ((ry - epsilon) * (ry - epsilon) + 4.0 * epsilon * m_bound).sqrt();
    let delta = 2.0 * rho * epsilon / ((ry + epsilon) + root);
    delta.clamp(0.0, rho)
}

/// Relative size below which `M - rho Y` is treated as zero by
/// [`delta_formula_quotient`].
pub const DEGENERATE_DENOMINATOR: f64 = ZERO_TOLERANCE;

/// The quotient form of the bound with its `M = rho Y` limit, kept as an
/// independent route for cross-checking [`delta_formula`].
pub fn delta_formula_quotient(epsilon: f64, rho: f64, y_bound: f64, m_bound: f64) -> f64 {
    let ry = rho * y_bound;
    let raw = if (m_bound - ry).abs() < DEGENERATE_DENOMINATOR * m_bound {
        rho * epsilon / (epsilon + ry)
    } else {
        rho * (((ry - epsilon) * (ry - epsilon) + 4.0 * epsilon * m_bound).sqrt() - (ry + epsilon))
            / (2.0 * (m_bound - ry))
    };
    if raw.is_nan() {
        0.0
    } else {
        raw.clamp(0.0, rho)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_curve;
    use crate::roots::{DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn globals(src: &str) -> CurveGlobals {
        CurveGlobals::compute(&parse_curve(src).unwrap()).unwrap()
    }

    fn fiber(g: &CurveGlobals, x: Complex) -> Vec<Complex> {
        solve_all_roots(&g.curve.fiber_poly(x), DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)
            .unwrap()
            .roots
    }

    fn assert_same_set(got: &[Complex], want: &[Complex], tol: f64) {
        assert_eq!(got.len(), want.len(), "{:?} vs {:?}", got, want);
        let mut used = vec![false; want.len()];
        for g in got {
            let hit = want
                .iter()
                .enumerate()
                .position(|(i, w)| !used[i] && (g - w).norm() < tol);
            match hit {
                Some(i) => used[i] = true,
                None => panic!("{} not expected in {:?}", g, want),
            }
        }
    }

    #[test]
    fn globals_of_sqrt() {
        let g = globals("y^2 - x");
        assert!(g.a0_zeros.is_empty());
        assert_same_set(&g.disc_zeros, &[c(0.0, 0.0)], 1e-12);
        assert_eq!(g.abs_coeffs, vec![vec![1.0], vec![0.0], vec![1.0, 0.0]]);
    }

    #[test]
    fn globals_of_folium() {
        let g = globals("x^3 + y^3 - 3*x*y");
        assert!(g.a0_zeros.is_empty());
        let r = 4f64.powf(1.0 / 3.0);
        let w = Complex::from_polar(1.0, 2.0 * core::f64::consts::PI / 3.0);
        let expect = [
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(r, 0.0),
            w * r,
            w * w * r,
        ];
        assert_same_set(&g.disc_zeros, &expect, 1e-8);
    }

    #[test]
    fn globals_of_hyperbola() {
        // (x - 1) y - 1: Res_y(f, f_y) = a_0 = x - 1, discriminant is constant
        let g = globals("(x - 1)*y - 1");
        assert_same_set(&g.a0_zeros, &[c(1.0, 0.0)], 1e-12);
        assert!(g.disc_zeros.is_empty());
    }

    #[test]
    fn not_squarefree() {
        let f = parse_curve("(y - x)^2").unwrap();
        assert!(matches!(
            CurveGlobals::compute(&f),
            Err(BoundError::CurveNotSquarefree)
        ));
    }

    #[test]
    fn rho_examples() {
        let g = globals("y^2 - x");
        let cfg = BoundConfig::default();
        assert_eq!(g.rho_at(c(1.0, 0.0), &cfg), 0.5);
        assert_eq!(g.rho_at(c(0.0, 0.0), &cfg), 0.0);
        let line = globals("y - x");
        assert_eq!(line.rho_at(c(3.0, -2.0), &cfg), 5.0);
    }

    #[test]
    fn point_bound_sqrt_at_one() {
        let g = globals("y^2 - x");
        let b = g.point_bound(
            c(1.0, 0.0),
            &fiber(&g, c(1.0, 0.0)),
            &BoundConfig::default(),
        );
        assert!(!b.singular);
        assert!((b.epsilon - 1.0).abs() < 1e-12);
        assert!((b.y_bound - 0.5).abs() < 1e-12);
        assert_eq!(b.rho, 0.5);
        assert_eq!(b.atilde[0], 1.0);
        assert_eq!(b.atilde[1], 0.0);
        assert!((b.atilde[2] - 2.25).abs() < 1e-15);
        assert!((b.m_bound - 3.0).abs() < 1e-12);
        assert!((b.delta - 0.208_578).abs() < 1e-6);
    }

    #[test]
    fn point_bound_coefficient_degree_variant() {
        let g = globals("y^2 - x");
        let cfg = BoundConfig {
            exponent: AtildeExponent::CoefficientDegree,
            ..BoundConfig::default()
        };
        let b = g.point_bound(c(1.0, 0.0), &fiber(&g, c(1.0, 0.0)), &cfg);
        assert!((b.atilde[2] - 1.5).abs() < 1e-15);
        assert!((b.m_bound - 2.0 * 1.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn point_bound_at_ramification_point() {
        let g = globals("y^2 - x");
        let b = g.point_bound(
            c(0.0, 0.0),
            &[c(0.0, 0.0), c(0.0, 0.0)],
            &BoundConfig::default(),
        );
        assert!(b.singular);
        assert_eq!(b.epsilon, 0.0);
        assert_eq!(b.delta, 0.0);
    }

    #[test]
    fn point_bound_single_sheet() {
        let g = globals("y - x");
        let x = c(2.0, 1.0);
        let b = g.point_bound(x, &fiber(&g, x), &BoundConfig::default());
        assert!(b.epsilon.is_infinite());
        assert_eq!(b.delta, b.rho);
        assert_eq!(b.rho, 5.0);
    }

    #[test]
    fn atilde_zero_positive_inside_clearance() {
        let g = globals("(x^2 + 1)*y^2 - x");
        let cfg = BoundConfig::default();
        for &x in &[c(0.3, 0.2), c(-2.0, 0.5), c(0.0, 0.4), c(4.0, -4.0)] {
            let rho = g.rho_at(x, &cfg);
            assert!(g.atilde(x, rho, cfg.exponent)[0] > 0.0);
        }
    }

    #[test]
    fn delta_spot_value() {
        // rho (sqrt((rho Y - eps)^2 + 4 eps M) - (rho Y + eps)) / (2 (M - rho Y))
        // = 0.5 (sqrt(12.5625) - 1.25) / 5.5
        let hand = 0.5 * (12.5625f64.sqrt() - 1.25) / 5.5;
        assert!((hand - 0.20858).abs() < 1e-4);
        assert!((delta_formula(1.0, 0.5, 0.5, 3.0) - hand).abs() < 1e-15);
        assert!((delta_formula_quotient(1.0, 0.5, 0.5, 3.0) - hand).abs() < 1e-15);
    }

    #[test]
    fn delta_zero_epsilon() {
        assert_eq!(delta_formula(0.0, 0.7, 2.0, 5.0), 0.0);
        assert_eq!(delta_formula_quotient(0.0, 0.7, 2.0, 5.0), 0.0);
    }

    #[test]
    fn delta_degenerate_denominator_limit() {
        // M = rho Y: the quadratic becomes linear, delta = rho eps / (eps + rho Y)
        let (eps, rho, y) = (0.3, 0.5, 4.0);
        let m = rho * y;
        let limit = rho * eps / (eps + rho * y);
        assert!((delta_formula(eps, rho, y, m) - limit).abs() < 1e-15);
        assert!((delta_formula_quotient(eps, rho, y, m) - limit).abs() < 1e-15);
        // continuity: the quotient form approaches the same value
        let near = delta_formula_quotient(eps, rho, y, m * (1.0 + 1e-7));
        assert!((near - limit).abs() < 1e-6);
    }
}

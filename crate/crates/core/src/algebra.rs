//! Complex polynomials in one and two variables.
//!
//! Univariate polynomials are dense and stored degree-descending. A curve
//! `f(x, y) = sum_k a_k(x) * y^(n-k)` is stored as the list of its
//! `y`-coefficients `a_0(x), ..., a_n(x)`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

#[cfg(not(any(feature = "std", test)))]
use num_traits::Float;
use num_traits::Zero;

/// Double precision complex number.
pub type Complex = num_complex::Complex64;

/// Relative tolerance below which a coefficient is treated as zero.
pub const ZERO_TOLERANCE: f64 = 1e-12;

/// Dense univariate polynomial, coefficients in degree-descending order.
///
/// Exact leading zeros are stripped on construction, so `coeffs()[0]` is
/// nonzero unless the polynomial is the zero polynomial (stored as `[0]`).
#[derive(Clone, Debug, PartialEq)]
pub struct UnivariatePoly {
    coeffs: Vec<Complex>,
}

impl UnivariatePoly {
    pub fn new(coeffs: Vec<Complex>) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        let coeffs = match lead {
            Some(i) => coeffs[i..].to_vec(),
            None => vec![Complex::zero()],
        };
        UnivariatePoly { coeffs }
    }

    /// Builds from real coefficients, degree-descending.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    /// Builds from coefficients in degree-ascending order.
    pub fn from_ascending(mut coeffs: Vec<Complex>) -> Self {
        coeffs.reverse();
        Self::new(coeffs)
    }

    pub fn zero() -> Self {
        UnivariatePoly {
            coeffs: vec![Complex::zero()],
        }
    }

    pub fn constant(c: Complex) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Complex, k: usize) -> Self {
        let mut coeffs = vec![Complex::zero(); k + 1];
        coeffs[0] = c;
        Self::new(coeffs)
    }

    /// `lead * prod (x - r)` over the given roots.
    pub fn from_roots(lead: Complex, roots: &[Complex]) -> Self {
        let mut p = Self::constant(lead);
        for &r in roots {
            p = p.mul(&Self::new(vec![Complex::new(1.0, 0.0), -r]));
        }
        p
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex {
        self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff_of_power(&self, k: usize) -> Complex {
        let d = self.degree();
        if k > d {
            Complex::zero()
        } else {
            self.coeffs[d - k]
        }
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Complex) -> Complex {
        self.coeffs
            .iter()
            .fold(Complex::zero(), |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[..d]
                .iter()
                .enumerate()
                .map(|(i, &c)| c * (d - i) as f64)
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Complex::zero(); len];
        for (i, &c) in self.coeffs.iter().rev().enumerate() {
            out[len - 1 - i] += c;
        }
        for (i, &c) in other.coeffs.iter().rev().enumerate() {
            out[len - 1 - i] += c;
        }
        Self::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![Complex::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Drops leading coefficients whose magnitude is at most `tol`.
    pub fn trimmed(&self, tol: f64) -> Self {
        let lead = self.coeffs.iter().position(|c| c.norm() > tol);
        match lead {
            Some(i) => Self::new(self.coeffs[i..].to_vec()),
            None => Self::zero(),
        }
    }
}

/// Errors raised by the algebra routines.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraError {
    /// `f` has no `y` term, or its leading `y`-coefficient is zero.
    NotACurve,
    /// The `y`-discriminant vanishes identically (repeated component).
    NotSquarefree,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::NotACurve => f.write_str("polynomial does not depend on y"),
            AlgebraError::NotSquarefree => {
                f.write_str("curve is not squarefree in y (discriminant vanishes identically)")
            }
        }
    }
}

impl core::error::Error for AlgebraError {}

/// Polynomial in `x` and `y`, stored by descending powers of `y`.
///
/// `coeffs[k]` multiplies `y^(n-k)`. The formal `y`-degree `n` is
/// `coeffs.len() - 1`; partial derivatives keep their formal layout, so
/// `coeffs[0]` may be zero for them. Curves built by [`BivariatePoly::curve`]
/// always have `n >= 1` and a nonzero leading coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariatePoly {
    coeffs: Vec<UnivariatePoly>,
}

impl BivariatePoly {
    /// Container without curve validation.
    pub fn from_coeffs(coeffs: Vec<UnivariatePoly>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "bivariate polynomial needs at least one coefficient"
        );
        BivariatePoly { coeffs }
    }

    /// Validated curve: `n >= 1` and `a_0` not the zero polynomial.
    pub fn curve(coeffs: Vec<UnivariatePoly>) -> Result<Self, AlgebraError> {
        let lead = coeffs.iter().position(|a| !a.is_zero());
        match lead {
            Some(i) if coeffs.len() - 1 - i >= 1 => Ok(BivariatePoly {
                coeffs: coeffs[i..].to_vec(),
            }),
            _ => Err(AlgebraError::NotACurve),
        }
    }

    /// Formal `y`-degree `n`.
    pub fn degree_y(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `a_k(x)`, the coefficient of `y^(n-k)`.
    pub fn coeff(&self, k: usize) -> &UnivariatePoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[UnivariatePoly] {
        &self.coeffs
    }

    /// `x`-degrees `m_k` of the coefficients.
    pub fn x_degrees(&self) -> Vec<usize> {
        self.coeffs.iter().map(UnivariatePoly::degree).collect()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(UnivariatePoly::max_abs_coeff)
            .fold(0.0, f64::max)
    }

    /// Drops leading zero `y`-coefficients (keeps at least one).
    pub fn trim_y(&self) -> Self {
        let lead = self.coeffs.iter().position(|a| !a.is_zero());
        match lead {
            Some(i) => BivariatePoly {
                coeffs: self.coeffs[i..].to_vec(),
            },
            None => BivariatePoly {
                coeffs: vec![UnivariatePoly::zero()],
            },
        }
    }

    pub fn eval(&self, x: Complex, y: Complex) -> Complex {
        self.coeffs
            .iter()
            .fold(Complex::zero(), |acc, a| acc * y + a.eval(x))
    }

    /// The fibre polynomial `p(y) = f(x, y)` at a fixed `x`.
    ///
    /// Its degree drops below `n` where `a_0(x)` vanishes.
    pub fn fiber_poly(&self, x: Complex) -> UnivariatePoly {
        UnivariatePoly::new(self.coeffs.iter().map(|a| a.eval(x)).collect())
    }

    pub fn partial_x(&self) -> Self {
        BivariatePoly {
            coeffs: self.coeffs.iter().map(UnivariatePoly::derivative).collect(),
        }
    }

    pub fn partial_y(&self) -> Self {
        let n = self.degree_y();
        if n == 0 {
            return BivariatePoly {
                coeffs: vec![UnivariatePoly::zero()],
            };
        }
        BivariatePoly {
            coeffs: self.coeffs[..n]
                .iter()
                .enumerate()
                .map(|(k, a)| a.scale(Complex::new((n - k) as f64, 0.0)))
                .collect(),
        }
    }

    /// `(f_x, f_y)`.
    pub fn partials(&self) -> (Self, Self) {
        (self.partial_x(), self.partial_y())
    }

    /// Sylvester resultant `Res_y(f, f_y)` evaluated at a single `x`,
    /// taking `f` with its formal degree `n`.
    pub fn resultant_with_derivative_at(&self, x: Complex) -> Complex {
        let (matrix, size) = self.sylvester_at(x);
        determinant(matrix, size)
    }

    fn sylvester_at(&self, x: Complex) -> (Vec<Complex>, usize) {
        let n = self.degree_y();
        let p: Vec<Complex> = self.coeffs.iter().map(|a| a.eval(x)).collect();
        let q: Vec<Complex> = self.coeffs[..n]
            .iter()
            .enumerate()
            .map(|(k, a)| a.eval(x) * (n - k) as f64)
            .collect();
        let size = 2 * n - 1;
        let mut m = vec![Complex::zero(); size * size];
        // n - 1 shifted rows of f, then n shifted rows of f_y
        for r in 0..n - 1 {
            for (c, &v) in p.iter().enumerate() {
                m[r * size + r + c] = v;
            }
        }
        for r in 0..n {
            for (c, &v) in q.iter().enumerate() {
                m[(n - 1 + r) * size + r + c] = v;
            }
        }
        (m, size)
    }

    /// The `y`-discriminant of `f` as a polynomial in `x`.
    ///
    /// Computed as `(-1)^(n(n-1)/2) Res_y(f, f_y) / a_0` by evaluating the
    /// Sylvester determinant on a circle of sample points and interpolating
    /// with an inverse DFT. Coefficients below the rounding noise of the
    /// determinants are set to zero, so exact zeros of integer curves (such
    /// as the triple zero at the origin of the folium) survive.
    ///
    /// Fails with [`AlgebraError::NotSquarefree`] if the discriminant
    /// vanishes identically.
    pub fn discriminant_x(&self) -> Result<UnivariatePoly, AlgebraError> {
        let n = self.degree_y();
        if n == 0 || self.coeffs[0].is_zero() {
            return Err(AlgebraError::NotACurve);
        }
        if n == 1 {
            return Ok(UnivariatePoly::constant(Complex::new(1.0, 0.0)));
        }
        let max_m = self.x_degrees().into_iter().max().unwrap_or(0);
        let samples = (2 * n - 2) * max_m + 1;
        let sign = if (n * (n - 1) / 2).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };

        let a0 = &self.coeffs[0];
        let (radius, offset) = sample_circle(a0, samples);
        let mut values = Vec::with_capacity(samples);
        let mut noise_scale: f64 = 0.0;
        for j in 0..samples {
            let x = Complex::from_polar(radius, offset + 2.0 * PI * j as f64 / samples as f64);
            let (matrix, size) = self.sylvester_at(x);
            let hadamard: f64 = (0..size)
                .map(|r| {
                    matrix[r * size..(r + 1) * size]
                        .iter()
                        .map(|c| c.norm_sqr())
                        .sum::<f64>()
                        .sqrt()
                })
                .product();
            let lead = a0.eval(x);
            noise_scale = noise_scale.max(hadamard / lead.norm());
            values.push(determinant(matrix, size) * sign / lead);
        }

        // inverse DFT: values[j] = sum_k c_k (R e^{i offset})^k w^{jk}
        let mut ascending = Vec::with_capacity(samples);
        let threshold = ZERO_TOLERANCE * noise_scale;
        for k in 0..samples {
            let mut acc = Complex::zero();
            for (j, v) in values.iter().enumerate() {
                let angle = -2.0 * PI * ((j * k) % samples) as f64 / samples as f64;
                acc += v * Complex::from_polar(1.0, angle);
            }
            let on_circle = acc / samples as f64;
            if on_circle.norm() < threshold {
                ascending.push(Complex::zero());
            } else {
                let rk = radius.powi(k as i32);
                ascending.push(on_circle * Complex::from_polar(1.0 / rk, -offset * k as f64));
            }
        }
        let disc = UnivariatePoly::from_ascending(ascending);
        if disc.is_zero() {
            Err(AlgebraError::NotSquarefree)
        } else {
            Ok(disc)
        }
    }
}

/// Picks a sampling circle on which `a_0` stays well away from zero.
fn sample_circle(a0: &UnivariatePoly, samples: usize) -> (f64, f64) {
    const RADII: [f64; 6] = [1.0, 0.8, 1.25, 0.65, 1.5, 0.5];
    const OFFSET: f64 = 0.1234567;
    let scale = a0.max_abs_coeff();
    let mut best = (RADII[0], f64::NEG_INFINITY);
    for &r in &RADII {
        let min = (0..samples)
            .map(|j| {
                let x = Complex::from_polar(r, OFFSET + 2.0 * PI * j as f64 / samples as f64);
                a0.eval(x).norm()
            })
            .fold(f64::INFINITY, f64::min);
        if min >= 1e-3 * scale {
            return (r, OFFSET);
        }
        if min > best.1 {
            best = (r, min);
        }
    }
    (best.0, OFFSET)
}

/// Determinant by Gaussian elimination with partial pivoting.
/// `m` is row-major `size x size`.
pub(crate) fn determinant(mut m: Vec<Complex>, size: usize) -> Complex {
    let mut det = Complex::new(1.0, 0.0);
    for col in 0..size {
        let pivot = (col..size)
            .max_by(|&a, &b| {
                m[a * size + col]
                    .norm()
                    .partial_cmp(&m[b * size + col].norm())
                    .unwrap_or(core::cmp::Ordering::Equal)
            })
            .unwrap_or(col);
        if m[pivot * size + col].is_zero() {
            return Complex::zero();
        }
        if pivot != col {
            for c in 0..size {
                m.swap(pivot * size + c, col * size + c);
            }
            det = -det;
        }
        let p = m[col * size + col];
        det *= p;
        for r in col + 1..size {
            let factor = m[r * size + col] / p;
            if factor.is_zero() {
                continue;
            }
            for c in col..size {
                let v = m[col * size + c];
                m[r * size + c] -= factor * v;
            }
        }
    }
    det
}

fn write_real(f: &mut fmt::Formatter<'_>, v: f64) -> fmt::Result {
    write!(f, "{:?}", v)
}

/// Prints the polynomial in the curve grammar accepted by
/// [`crate::parser::parse_curve`], one term per monomial with full
/// precision coefficients, e.g. `(1.0+0.0*i)*y^2 + (-1.0+0.0*i)*x`.
impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree_y();
        let mut first = true;
        for (k, a) in self.coeffs.iter().enumerate() {
            let ypow = n - k;
            let d = a.degree();
            for (l, c) in a.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let xpow = d - l;
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                f.write_str("(")?;
                write_real(f, c.re)?;
                if c.im.is_sign_negative() {
                    f.write_str("-")?;
                } else {
                    f.write_str("+")?;
                }
                write_real(f, c.im.abs())?;
                f.write_str("*i)")?;
                match xpow {
                    0 => {}
                    1 => f.write_str("*x")?,
                    p => write!(f, "*x^{}", p)?,
                }
                match ypow {
                    0 => {}
                    1 => f.write_str("*y")?,
                    p => write!(f, "*y^{}", p)?,
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

//! Enhanced phase portrait colouring.
//!
//! Phase maps to hue on a six-sector colour wheel (phase 0 is red, phase
//! pi is cyan). Intensity is multiplied by two sawtooth functions, one
//! periodic in phase and one periodic in `log |y|`, which draw contour
//! lines of constant phase and of constant modulus.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[cfg(not(any(feature = "std", test)))]
use num_traits::Float;
use num_traits::Zero;

use crate::algebra::{BivariatePoly, Complex};
use crate::mesher::Domain;
use crate::roots::{solve_all_roots, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ColorParams {
    /// Intensity at a contour line; the sawtooth rises to 1 between lines.
    pub base_intensity: f64,
    /// Phase contour lines per full turn.
    pub phase_sectors: u32,
    /// Spacing of modulus contour lines in `log |y|`.
    pub modulus_log_spacing: f64,
    pub enable_phase_lines: bool,
    pub enable_modulus_lines: bool,
}

impl Default for ColorParams {
    fn default() -> Self {
        ColorParams {
            base_intensity: 0.7,
            phase_sectors: 24,
            modulus_log_spacing: PI / 12.0,
            enable_phase_lines: true,
            enable_modulus_lines: true,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Rgb {
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

impl Rgb {
    pub const BLACK: Rgb = Rgb {
        r: 0.0,
        g: 0.0,
        b: 0.0,
    };

    pub fn new(r: f64, g: f64, b: f64) -> Self {
        Rgb {
            r: r.clamp(0.0, 1.0),
            g: g.clamp(0.0, 1.0),
            b: b.clamp(0.0, 1.0),
        }
    }

    pub fn scale(self, s: f64) -> Self {
        Rgb::new(self.r * s, self.g * s, self.b * s)
    }

    /// 8-bit channels, rounding half up.
    pub fn to_rgb8(self) -> [u8; 3] {
        let q = |v: f64| (v.clamp(0.0, 1.0) * 255.0 + 0.5).floor() as u8;
        [q(self.r), q(self.g), q(self.b)]
    }
}

/// Phase in `[0, 2 pi)`.
pub fn phase(y: Complex) -> f64 {
    let p = y.im.atan2(y.re);
    if p < 0.0 {
        let shifted = p + 2.0 * PI;
        if shifted >= 2.0 * PI {
            0.0
        } else {
            shifted
        }
    } else {
        p
    }
}

/// Hue in `[0, 1)`: `phase / 2 pi`.
pub fn hue(y: Complex) -> f64 {
    phase(y) / (2.0 * PI)
}

/// Fully saturated colour of the given hue on the six-sector wheel.
pub fn hue_to_rgb(hue: f64) -> Rgb {
    let h6 = (hue - hue.floor()) * 6.0;
    let sector = h6.floor();
    let f = h6 - sector;
    match sector as u32 {
        0 => Rgb::new(1.0, f, 0.0),
        1 => Rgb::new(1.0 - f, 1.0, 0.0),
        2 => Rgb::new(0.0, 1.0, f),
        3 => Rgb::new(0.0, 1.0 - f, 1.0),
        4 => Rgb::new(f, 0.0, 1.0),
        5 => Rgb::new(1.0, 0.0, 1.0 - f),
        _ => Rgb::new(1.0, 0.0, 0.0),
    }
}

/// `base + (1 - base) * frac(t / spacing)`.
pub fn sawtooth(t: f64, spacing: f64, base: f64) -> f64 {
    let s = t / spacing;
    base + (1.0 - base) * (s - s.floor())
}

pub fn phase_factor(y: Complex, params: &ColorParams) -> f64 {
    if !params.enable_phase_lines {
        return 1.0;
    }
    let spacing = 2.0 * PI / params.phase_sectors as f64;
    sawtooth(phase(y), spacing, params.base_intensity)
}

pub fn modulus_factor(y: Complex, params: &ColorParams) -> f64 {
    if !params.enable_modulus_lines {
        return 1.0;
    }
    sawtooth(
        y.norm().ln(),
        params.modulus_log_spacing,
        params.base_intensity,
    )
}

/// Reference-image colour of `y`. Zero (no phase) is black.
pub fn domain_color(y: Complex, params: &ColorParams) -> Rgb {
    if y.is_zero() || !y.re.is_finite() || !y.im.is_finite() {
        return Rgb::BLACK;
    }
    hue_to_rgb(hue(y)).scale(phase_factor(y, params) * modulus_factor(y, params))
}

/// Row-major image, row 0 at the top (largest imaginary part).
#[derive(Clone, Debug, PartialEq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<Rgb>,
}

impl Image {
    pub fn get(&self, col: usize, row: usize) -> Rgb {
        self.pixels[row * self.width + col]
    }

    /// Packed 8-bit RGB, row-major.
    pub fn to_rgb8(&self) -> Vec<u8> {
        self.pixels.iter().flat_map(|p| p.to_rgb8()).collect()
    }
}

/// Complex coordinate of the centre of pixel `(col, row)`.
pub fn pixel_center(domain: &Domain, size: usize, col: usize, row: usize) -> Complex {
    let w = domain.re_max - domain.re_min;
    let h = domain.im_max - domain.im_min;
    Complex::new(
        domain.re_min + (col as f64 + 0.5) * w / size as f64,
        domain.im_max - (row as f64 + 0.5) * h / size as f64,
    )
}

/// Domain colouring of the identity over `window`.
pub fn render_reference(size: usize, window: &Domain, params: &ColorParams) -> Image {
    let rows: Vec<usize> = (0..size).collect();
    let pixels = crate::par::map(&rows, |&row| {
        (0..size)
            .map(|col| domain_color(pixel_center(window, size, col, row), params))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    Image {
        width: size,
        height: size,
        pixels,
    }
}

/// Per-pixel fibres sorted into sheets by real part.
#[derive(Clone, Debug)]
pub struct SheetImages {
    pub size: usize,
    /// `values[k][pixel]`: the `k`-th smallest fibre value by real part
    /// (ties broken by imaginary part), `None` where the solve failed.
    pub values: Vec<Vec<Option<Complex>>>,
    pub images: Vec<Image>,
    pub failures: usize,
}

/// Orders fibre values by real part, then imaginary part.
pub fn sort_fiber(values: &mut [Complex]) {
    values.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(
                a.im.partial_cmp(&b.im)
                    .unwrap_or(core::cmp::Ordering::Equal),
            )
    });
}

/// Splits the fibres over `domain` into `n` sheet images.
pub fn render_sheets(
    f: &BivariatePoly,
    domain: &Domain,
    size: usize,
    params: &ColorParams,
) -> SheetImages {
    let n = f.degree_y();
    let rows: Vec<usize> = (0..size).collect();
    let solved: Vec<Option<Vec<Complex>>> = crate::par::map(&rows, |&row| {
        (0..size)
            .map(|col| {
                let x = pixel_center(domain, size, col, row);
                let p = f.fiber_poly(x);
                if p.degree() != n {
                    return None;
                }
                solve_all_roots(&p, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)
                    .ok()
                    .map(|mut set| {
                        sort_fiber(&mut set.roots);
                        set.roots
                    })
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();

    let mut values = vec![Vec::with_capacity(size * size); n];
    let mut images: Vec<Image> = (0..n)
        .map(|_| Image {
            width: size,
            height: size,
            pixels: Vec::with_capacity(size * size),
        })
        .collect();
    let mut failures = 0;
    for pixel in solved {
        match pixel {
            Some(fiber) => {
                for (k, y) in fiber.into_iter().enumerate() {
                    values[k].push(Some(y));
                    images[k].pixels.push(domain_color(y, params));
                }
            }
            None => {
                failures += 1;
                for k in 0..n {
                    values[k].push(None);
                    images[k].pixels.push(Rgb::BLACK);
                }
            }
        }
    }
    SheetImages {
        size,
        values,
        images,
        failures,
    }
}

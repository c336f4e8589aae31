//! Test oracles that do not go through the library's algebra: curves are
//! hand-written closures and fibre values are carried by Newton tracking.
#![allow(dead_code)]

use riemann_core::Complex as C;

pub struct Curve {
    pub source: &'static str,
    pub f: fn(C, C) -> C,
    pub fy: fn(C, C) -> C,
}

pub const SQRT: Curve = Curve {
    source: "y^2 - x",
    f: |x, y| y * y - x,
    fy: |_, y| y * 2.0,
};

pub const FOLIUM: Curve = Curve {
    source: "x^3 + y^3 - 3*x*y",
    f: |x, y| x * x * x + y * y * y - x * y * 3.0,
    fy: |x, y| y * y * 3.0 - x * 3.0,
};

pub const CUBIC: Curve = Curve {
    source: "y^3 - 1 - x*y",
    f: |x, y| y * y * y - 1.0 - x * y,
    fy: |x, y| y * y * 3.0 - x,
};

pub const SUBSTEPS: usize = 100;

/// Follows `y0` (a root over `x0`) along the segment to `x1` with
/// `substeps` Newton-corrected steps, each seeded with a linear predictor.
pub fn continue_root(curve: &Curve, x0: C, x1: C, y0: C, substeps: usize) -> C {
    let mut y = y0;
    let mut prev = y0;
    for s in 1..=substeps {
        let x = x0 + (x1 - x0) * (s as f64 / substeps as f64);
        let guess = if s == 1 { y } else { y + (y - prev) };
        prev = y;
        y = guess;
        for _ in 0..30 {
            let step = (curve.f)(x, y) / (curve.fy)(x, y);
            y -= step;
            if step.norm() <= 1e-15 * y.norm().max(1.0) {
                break;
            }
        }
    }
    y
}

/// Continuation of every root in `fiber` along a closed polygon; returns
/// the index each value ends closest to.
pub fn loop_permutation(curve: &Curve, path: &[C], fiber: &[C]) -> Vec<usize> {
    fiber
        .iter()
        .map(|&y0| {
            let mut y = y0;
            for k in 0..path.len() {
                let a = path[k];
                let b = path[(k + 1) % path.len()];
                y = continue_root(curve, a, b, y, SUBSTEPS);
            }
            nearest(y, fiber)
        })
        .collect()
}

pub fn nearest(y: C, fiber: &[C]) -> usize {
    let mut best = 0;
    for (l, v) in fiber.iter().enumerate() {
        if (y - v).norm() < (y - fiber[best]).norm() {
            best = l;
        }
    }
    best
}

/// Newton on the hand-written curve until the step stalls.
pub fn polish(curve: &Curve, x: C, y: C) -> C {
    let mut y = y;
    for _ in 0..50 {
        let step = (curve.f)(x, y) / (curve.fy)(x, y);
        y -= step;
        if step.norm() <= 1e-16 * y.norm().max(1.0) {
            break;
        }
    }
    y
}

pub struct SoundnessReport {
    pub pairs: usize,
    pub violations: Vec<String>,
}

/// Random `(x1, x2)` pairs with `|x1 - x2| < delta(x1)`, half of them drawn
/// near singular points. Each pair is checked against continuation: the
/// tracked value must stay within `epsilon(x1)` along the whole segment and
/// end on the fibre value that proximity matching selects.
pub fn soundness_suite(curve: &Curve, pairs: usize, seed: u64) -> SoundnessReport {
    soundness_suite_with(curve, pairs, seed, &riemann_core::MeshConfig::default())
}

pub fn soundness_suite_with(
    curve: &Curve,
    pairs: usize,
    seed: u64,
    config: &riemann_core::MeshConfig,
) -> SoundnessReport {
    use rand::{Rng, SeedableRng};
    use riemann_core::mesher::{proximity_match, solve_vertex, Fiber};
    use riemann_core::{parse_curve, CurveGlobals};

    let f = parse_curve(curve.source).unwrap();
    let globals = CurveGlobals::compute(&f).unwrap();
    let singular: Vec<C> = globals.singular_points().copied().collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let mut done = 0;
    let mut attempts = 0;
    while done < pairs {
        attempts += 1;
        assert!(
            attempts < 100 * pairs,
            "could not sample enough regular points"
        );
        let x1 = if done % 2 == 1 && !singular.is_empty() {
            let s = singular[rng.gen_range(0..singular.len())];
            s + C::from_polar(
                rng.gen_range(0.0..0.5),
                rng.gen_range(0.0..std::f64::consts::TAU),
            )
        } else {
            C::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0))
        };
        let (fiber1, bound) = match solve_vertex(&globals, x1, config) {
            (Fiber::Solved(set), Some(b)) if b.delta > 0.0 => (set.roots, b),
            _ => continue,
        };
        let len = bound.delta * rng.gen_range(0.0..1.0);
        let x2 = x1 + C::from_polar(len, rng.gen_range(0.0..std::f64::consts::TAU));
        let fiber2 = match solve_vertex(&globals, x2, config) {
            (Fiber::Solved(set), _) => set.roots,
            _ => {
                violations.push(format!(
                    "{}: no fibre at x2={} (x1={})",
                    curve.source, x2, x1
                ));
                done += 1;
                continue;
            }
        };
        let matching = proximity_match(&fiber1, &fiber2);
        for (k, &y1) in fiber1.iter().enumerate() {
            let y1 = polish(curve, x1, y1);
            let mut y = y1;
            let mut prev = y1;
            let mut max_move: f64 = 0.0;
            for s in 1..=SUBSTEPS {
                let x = x1 + (x2 - x1) * (s as f64 / SUBSTEPS as f64);
                let step_start = if s == 1 { y } else { y + (y - prev) };
                prev = y;
                y = polish(curve, x, step_start);
                max_move = max_move.max((y - y1).norm());
            }
            let target = nearest(y, &fiber2);
            let ok_match = matching.as_ref().is_some_and(|m| m[k] == target);
            if max_move >= bound.epsilon || !ok_match {
                violations.push(format!(
                    "{}: x1={} x2={} sheet {}: moved {:.3e} (eps {:.3e}), match ok {}",
                    curve.source, x1, x2, k, max_move, bound.epsilon, ok_match
                ));
            }
        }
        done += 1;
    }
    SoundnessReport {
        pairs: done,
        violations,
    }
}

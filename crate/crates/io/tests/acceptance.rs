//! Acceptance gate: one PASS/FAIL line per criterion, then a single assert.
//!
//! Run with `cargo test -p riemann-io --test acceptance -- --nocapture`.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use riemann_core::bound::delta_formula;
use riemann_core::coloring::{hue, render_sheets};
use riemann_core::mesher::{circle_loop, solve_vertex, Fiber, Mesher};
use riemann_core::{
    domain_color, generate_surface, monodromy_permutation, parse_curve, AtildeExponent,
    BoundConfig, ColorParams, Complex, CurveGlobals, Domain, MeshConfig, Permutation,
};
use riemann_io::rsm;
use support::{loop_permutation, soundness_suite, Curve, CUBIC, FOLIUM, SQRT};

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn report(outcomes: &mut Vec<Outcome>, name: &'static str, pass: bool, detail: String) {
    println!(
        "{} {}: {}",
        if pass { "PASS" } else { "FAIL" },
        name,
        detail
    );
    outcomes.push(Outcome { name, pass, detail });
}

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn bound_soundness(out: &mut Vec<Outcome>) {
    let start = Instant::now();
    let mut pairs = 0;
    let mut violations = Vec::new();
    for (i, curve) in [&SQRT, &FOLIUM, &CUBIC].into_iter().enumerate() {
        let r = soundness_suite(curve, 200, 1000 + i as u64);
        pairs += r.pairs;
        violations.extend(r.violations);
    }
    let elapsed = start.elapsed();
    let detail = match violations.first() {
        Some(v) => format!(
            "{} violations in {} pairs, first: {}",
            violations.len(),
            pairs,
            v
        ),
        None => format!("0 violations in {} pairs, {:.2?}", pairs, elapsed),
    };
    report(
        out,
        "bound soundness",
        violations.is_empty() && pairs >= 600 && elapsed < Duration::from_secs(30),
        detail,
    );
}

fn spot_value(out: &mut Vec<Outcome>) {
    // positive root of (M - rho Y) d^2 + rho (rho Y + eps) d - rho^2 eps = 0
    // with eps = 1, rho = 0.5, Y = 0.5, M = 3: 2.75 d^2 + 0.625 d - 0.25 = 0
    let expected = (-0.625 + (0.625f64 * 0.625 + 4.0 * 2.75 * 0.25).sqrt()) / (2.0 * 2.75);
    let d = delta_formula(1.0, 0.5, 0.5, 3.0);
    report(
        out,
        "delta spot value",
        (d - 0.20858).abs() <= 1e-4 && (d - expected).abs() < 1e-14,
        format!(
            "delta(1, 0.5, 0.5, 3) = {:.10} (hand value {:.10})",
            d, expected
        ),
    );
}

fn monodromy_case(
    curve: &Curve,
    center: Complex,
    radius: f64,
) -> Result<(Permutation, Permutation), String> {
    let globals = CurveGlobals::compute(&parse_curve(curve.source).unwrap()).unwrap();
    let config = MeshConfig::default();
    let path = circle_loop(center, radius, 64);
    let perm = monodromy_permutation(&globals, &path, &config).map_err(|e| e.to_string())?;
    let fiber = match solve_vertex(&globals, path[0], &config).0 {
        Fiber::Solved(set) => set.roots,
        _ => return Err("no fibre at loop start".into()),
    };
    Ok((perm, Permutation(loop_permutation(curve, &path, &fiber))))
}

fn monodromy(out: &mut Vec<Outcome>) {
    type Case<'a> = (&'a Curve, Complex, f64, fn(&Permutation) -> bool, &'a str);
    let cases: [Case; 3] = [
        (
            &SQRT,
            c(0.0, 0.0),
            1.0,
            |p| *p == Permutation(vec![1, 0]),
            "(1 2)",
        ),
        (&SQRT, c(5.0, 0.0), 1.0, |p| p.is_identity(), "()"),
        (
            &FOLIUM,
            c(0.0, 0.0),
            0.5,
            |p| {
                let cy = p.cycles();
                cy.len() == 1 && cy[0].len() == 2
            },
            "a 2-cycle",
        ),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (curve, center, radius, check, want) in cases {
        match monodromy_case(curve, center, radius) {
            Ok((perm, oracle)) => {
                let ok = check(&perm) && perm == oracle;
                pass &= ok;
                parts.push(format!(
                    "{} about {}: {} (oracle {}, want {})",
                    curve.source, center, perm, oracle, want
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{} about {}: error {}", curve.source, center, e));
            }
        }
    }
    report(out, "monodromy", pass, parts.join("; "));
}

fn point_triangle_distance(p: Complex, t: [Complex; 3]) -> f64 {
    let cross = |a: Complex, b: Complex| a.re * b.im - a.im * b.re;
    let s = [
        cross(t[1] - t[0], p - t[0]),
        cross(t[2] - t[1], p - t[1]),
        cross(t[0] - t[2], p - t[2]),
    ];
    if s.iter().all(|&v| v >= 0.0) || s.iter().all(|&v| v <= 0.0) {
        return 0.0;
    }
    let seg = |a: Complex, b: Complex| {
        let ab = b - a;
        let u = (((p - a) * ab.conj()).re / ab.norm_sqr()).clamp(0.0, 1.0);
        (a + ab * u - p).norm()
    };
    seg(t[0], t[1]).min(seg(t[1], t[2])).min(seg(t[2], t[0]))
}

struct MeshCheck {
    watertight: bool,
    count_ok: bool,
    max_residual: f64,
    farthest_discard: f64,
    summary: String,
}

fn check_mesh(source: &str, config: MeshConfig) -> MeshCheck {
    let f = parse_curve(source).unwrap();
    let domain = Domain::centered_square(10.0);
    let mut mesher = Mesher::new(&f, source, domain, config).unwrap();
    let mut watertight = mesher.mesh.is_watertight(&domain);
    for _ in 0..config.max_depth {
        mesher.refine_pass();
        watertight &= mesher.mesh.is_watertight(&domain);
    }
    let singular: Vec<Complex> = mesher.globals.singular_points().copied().collect();
    let g = mesher.finish();
    let n = g.surface.meta.degree;
    let count_ok = g.surface.triangles.len() == n * g.stats.kept_triangles;
    let max_residual = g
        .surface
        .vertices
        .iter()
        .map(|&(x, y)| f.eval(x, y).norm())
        .fold(0.0, f64::max);
    let m = &g.domain_mesh;
    let farthest_discard = m
        .triangles
        .iter()
        .filter(|t| t.depth as usize == config.max_depth && !m.is_resolved(t))
        .map(|t| {
            let pts = t.v.map(|i| m.vertices[i as usize].x);
            singular
                .iter()
                .map(|&s| point_triangle_distance(s, pts))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    MeshCheck {
        watertight,
        count_ok,
        max_residual,
        farthest_discard,
        summary: format!(
            "{}: n={} kept={} discarded={} surface triangles={} watertight={} max|f|={:.1e} farthest discard {:.4}",
            source,
            n,
            g.stats.kept_triangles,
            g.stats.discarded_triangles,
            g.surface.triangles.len(),
            watertight,
            max_residual,
            farthest_discard
        ),
    }
}

fn mesh_structure(out: &mut Vec<Outcome>) {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for source in ["y^2 - x", "x^3 + y^3 - 3*x*y"] {
        let m = check_mesh(source, MeshConfig::default());
        pass &= m.watertight && m.count_ok && m.max_residual < 1e-6 && m.farthest_discard <= 0.2;
        parts.push(m.summary);
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(60);
    parts.push(format!("{:.2?}", elapsed));
    report(out, "mesh structure", pass, parts.join("; "));

    // not a criterion: the same check with the m_k - l exponent variant
    let variant = MeshConfig {
        bound: BoundConfig {
            exponent: AtildeExponent::CoefficientDegree,
            ..BoundConfig::default()
        },
        ..MeshConfig::default()
    };
    let m = check_mesh("x^3 + y^3 - 3*x*y", variant);
    println!("INFO coefficient-degree exponent variant: {}", m.summary);
}

fn discriminant_zeros(out: &mut Vec<Outcome>) {
    let expected: [(&str, Vec<Complex>); 2] = [
        ("y^2 - x", vec![c(0.0, 0.0)]),
        (
            // disc = 27 x^3 (4 - x^3) up to sign
            "x^3 + y^3 - 3*x*y",
            {
                let r = 4f64.cbrt();
                vec![
                    c(0.0, 0.0),
                    c(r, 0.0),
                    Complex::from_polar(r, 2.0 * PI / 3.0),
                    Complex::from_polar(r, -2.0 * PI / 3.0),
                ]
            },
        ),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (source, want) in expected {
        let g = CurveGlobals::compute(&parse_curve(source).unwrap()).unwrap();
        let got = &g.disc_zeros;
        let worst_got = got
            .iter()
            .map(|z| {
                want.iter()
                    .map(|w| (z - w).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max);
        let worst_want = want
            .iter()
            .map(|w| {
                got.iter()
                    .map(|z| (z - w).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max);
        let err = worst_got.max(worst_want);
        pass &= err <= 1e-8 && g.a0_zeros.is_empty();
        parts.push(format!(
            "{}: {} zeros, worst error {:.1e}",
            source,
            got.len(),
            err
        ));
    }
    report(out, "discriminant zeros", pass, parts.join("; "));
}

fn independent_hue(y: Complex) -> f64 {
    let mut phi = y.im.atan2(y.re);
    if phi < 0.0 {
        phi += 2.0 * PI;
    }
    if phi >= 2.0 * PI {
        phi = 0.0;
    }
    phi / (2.0 * PI)
}

fn sheet_images(out: &mut Vec<Outcome>) {
    let f = parse_curve("y^2 - x").unwrap();
    let size = 128;
    let params = ColorParams::default();
    let s = render_sheets(&f, &Domain::centered_square(10.0), size, &params);
    let mut sign_ok = s.failures == 0 && s.values.len() == 2;
    let mut hue_ok = true;
    let mut worst_sum: f64 = 0.0;
    for px in 0..size * size {
        let (Some(a), Some(b)) = (s.values[0][px], s.values[1][px]) else {
            sign_ok = false;
            continue;
        };
        sign_ok &= a.re <= 0.0 && b.re >= 0.0;
        worst_sum = worst_sum.max((a + b).norm());
        if px % 37 == 0 {
            for (k, y) in [(0, a), (1, b)] {
                hue_ok &= hue(y) == independent_hue(y);
                hue_ok &= s.images[k].pixels[px] == domain_color(y, &params);
            }
        }
    }
    report(
        out,
        "sheet images",
        sign_ok && hue_ok && worst_sum <= 1e-8,
        format!(
            "{}x{} sqrt sheets: sign split {}, hue = phase/2pi {}, max |y1 + y2| = {:.1e}",
            size, size, sign_ok, hue_ok, worst_sum
        ),
    );
}

fn determinism(out: &mut Vec<Outcome>) {
    let text = |threads: usize, source: &str| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let f = parse_curve(source).unwrap();
            let g = generate_surface(&f, source, Domain::default(), MeshConfig::default()).unwrap();
            rsm::to_string(&g.surface).unwrap()
        })
    };
    let mut pass = true;
    let mut parts = Vec::new();
    for source in ["y^2 - x", "x^3 + y^3 - 3*x*y"] {
        let one = text(1, source);
        let again = text(1, source);
        let many = text(4, source);
        let same = one == again && one == many;
        pass &= same;
        parts.push(format!(
            "{}: {} bytes, identical {}",
            source,
            one.len(),
            same
        ));
    }
    report(out, "determinism", pass, parts.join("; "));
}

#[test]
fn acceptance() {
    let mut outcomes = Vec::new();
    bound_soundness(&mut outcomes);
    spot_value(&mut outcomes);
    monodromy(&mut outcomes);
    mesh_structure(&mut outcomes);
    discriminant_zeros(&mut outcomes);
    sheet_images(&mut outcomes);
    determinism(&mut outcomes);
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.pass)
        .map(|o| format!("{}: {}", o.name, o.detail))
        .collect();
    println!(
        "{} of {} criteria passed",
        outcomes.len() - failed.len(),
        outcomes.len()
    );
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}

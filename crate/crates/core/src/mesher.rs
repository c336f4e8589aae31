//! Adaptive Riemann surface mesh generation.
//!
//! A rectangle in the `x`-plane is triangulated and every vertex gets its
//! fibre (the `n` values of `y`) and its bound `delta`. An edge is too long
//! when its length reaches the smaller `delta` of its endpoints; each pass
//! splits all too-long edges at their midpoints and re-triangulates with
//! one of eight refinement patterns. Midpoints are keyed by their edge, so
//! neighbouring triangles always agree and the subdivision stays conforming.
//! After the last pass, triangles that still have a long edge are dropped
//! (they surround ramification points) and the others are lifted to `n`
//! surface triangles by matching fibre values by proximity.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[cfg(not(any(feature = "std", test)))]
use num_traits::Float;

use crate::algebra::{BivariatePoly, Complex};
use crate::bound::{BoundConfig, BoundError, CurveGlobals, PointBound};
use crate::roots::{solve_all_roots, RootSet, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};

/// Axis-aligned rectangle in the `x`-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domain {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Domain {
    /// Square of side `side` centred at the origin.
    pub fn centered_square(side: f64) -> Self {
        let h = 0.5 * side;
        Domain {
            re_min: -h,
            re_max: h,
            im_min: -h,
            im_max: h,
        }
    }

    pub fn is_valid(&self) -> bool {
        [self.re_min, self.re_max, self.im_min, self.im_max]
            .iter()
            .all(|v| v.is_finite())
            && self.re_max > self.re_min
            && self.im_max > self.im_min
    }

    /// True if `x` lies on the boundary of the rectangle.
    pub fn on_boundary(&self, x: Complex) -> bool {
        x.re == self.re_min || x.re == self.re_max || x.im == self.im_min || x.im == self.im_max
    }
}

impl Default for Domain {
    fn default() -> Self {
        Domain::centered_square(10.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeshConfig {
    /// Cells per side of the initial triangulation.
    pub grid: usize,
    /// Number of refinement passes.
    pub max_depth: usize,
    pub bound: BoundConfig,
    /// Edges shorter than this are never split.
    pub min_edge_length: f64,
    pub root_tolerance: f64,
    pub root_max_iter: usize,
    /// Vertices whose fibre residual exceeds this (times the coefficient
    /// scale) are treated as singular.
    pub residual_tolerance: f64,
}

impl Default for MeshConfig {
    fn default() -> Self {
        MeshConfig {
            grid: 16,
            max_depth: 6,
            bound: BoundConfig::default(),
            min_edge_length: 0.0,
            root_tolerance: DEFAULT_TOLERANCE,
            root_max_iter: DEFAULT_MAX_ITER,
            residual_tolerance: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MeshError {
    InvalidConfig(&'static str),
    NotACurve,
    CurveNotSquarefree,
    Globals(BoundError),
    /// Loop tracking could not get below the local `delta`.
    StepTooLarge {
        at: Complex,
    },
    /// Proximity matching along a loop was not a bijection.
    MatchNotBijective {
        at: Complex,
    },
}

impl fmt::Display for MeshError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeshError::InvalidConfig(m) => write!(f, "invalid configuration: {}", m),
            MeshError::NotACurve => f.write_str("polynomial does not depend on y"),
            MeshError::CurveNotSquarefree => {
                f.write_str("curve is not squarefree in y (discriminant vanishes identically)")
            }
            MeshError::Globals(e) => write!(f, "{}", e),
            MeshError::StepTooLarge { at } => {
                write!(f, "path passes too close to a singular point near {}", at)
            }
            MeshError::MatchNotBijective { at } => {
                write!(f, "fibre matching is not a bijection near {}", at)
            }
        }
    }
}

impl core::error::Error for MeshError {}

impl From<BoundError> for MeshError {
    fn from(e: BoundError) -> Self {
        match e {
            BoundError::NotACurve => MeshError::NotACurve,
            BoundError::CurveNotSquarefree => MeshError::CurveNotSquarefree,
            other => MeshError::Globals(other),
        }
    }
}

/// Fibre state of a domain vertex.
#[derive(Clone, Debug, PartialEq)]
pub enum Fiber {
    Unsolved,
    Solved(RootSet),
    /// No usable fibre: degree drop, non-convergence or excessive residual.
    Singular,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DomainVertex {
    pub x: Complex,
    pub fiber: Fiber,
    pub bound: Option<PointBound>,
    /// 0 for singular or unsolved vertices.
    pub delta: f64,
    /// Pass in which the vertex was created (0 for the initial grid).
    pub depth: u32,
}

impl DomainVertex {
    fn new(x: Complex, depth: u32) -> Self {
        DomainVertex {
            x,
            fiber: Fiber::Unsolved,
            bound: None,
            delta: 0.0,
            depth,
        }
    }

    pub fn roots(&self) -> Option<&[Complex]> {
        match &self.fiber {
            Fiber::Solved(set) => Some(&set.roots),
            _ => None,
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.bound.as_ref().map_or(0.0, |b| b.epsilon)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DomainTriangle {
    /// Counter-clockwise vertex indices.
    pub v: [u32; 3],
    pub depth: u32,
}

/// Split pattern for one 3-bit edge mask. Edge `j` is opposite corner `j`.
/// Sub-triangle entries `0..3` name corners, `3 + j` the midpoint of edge `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RefinementPattern {
    pub mask: u8,
    pub sub_triangles: &'static [[u8; 3]],
}

/// The eight refinement patterns, indexed by mask. With two split edges the
/// quadrilateral is cut from the corner following the unsplit edge.
pub const PATTERNS: [RefinementPattern; 8] = [
    RefinementPattern {
        mask: 0b000,
        sub_triangles: &[[0, 1, 2]],
    },
    RefinementPattern {
        mask: 0b001,
        sub_triangles: &[[0, 1, 3], [0, 3, 2]],
    },
    RefinementPattern {
        mask: 0b010,
        sub_triangles: &[[1, 2, 4], [1, 4, 0]],
    },
    RefinementPattern {
        mask: 0b011,
        sub_triangles: &[[0, 1, 3], [0, 3, 4], [4, 3, 2]],
    },
    RefinementPattern {
        mask: 0b100,
        sub_triangles: &[[2, 0, 5], [2, 5, 1]],
    },
    RefinementPattern {
        mask: 0b101,
        sub_triangles: &[[5, 1, 3], [0, 5, 2], [5, 3, 2]],
    },
    RefinementPattern {
        mask: 0b110,
        sub_triangles: &[[0, 5, 4], [5, 1, 4], [1, 2, 4]],
    },
    RefinementPattern {
        mask: 0b111,
        sub_triangles: &[[0, 5, 4], [5, 1, 3], [4, 3, 2], [5, 3, 4]],
    },
];

fn edge_key(a: u32, b: u32) -> (u32, u32) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Corner pairs of edges 0, 1, 2.
const EDGES: [(usize, usize); 3] = [(1, 2), (2, 0), (0, 1)];

/// Triangulated domain with per-vertex fibres.
#[derive(Clone, Debug, Default)]
pub struct DomainMesh {
    pub vertices: Vec<DomainVertex>,
    pub triangles: Vec<DomainTriangle>,
    /// Canonical edge `(min, max)` to midpoint vertex index.
    pub edge_midpoints: BTreeMap<(u32, u32), u32>,
}

impl DomainMesh {
    /// `grid x grid` cells, each cut along its lower-left to upper-right
    /// diagonal. Vertices are unsolved.
    pub fn triangulate_rectangle(domain: &Domain, grid: usize) -> Self {
        let side = grid + 1;
        let mut vertices = Vec::with_capacity(side * side);
        for j in 0..side {
            for i in 0..side {
                let re = if i == grid {
                    domain.re_max
                } else {
                    domain.re_min + (domain.re_max - domain.re_min) * i as f64 / grid as f64
                };
                let im = if j == grid {
                    domain.im_max
                } else {
                    domain.im_min + (domain.im_max - domain.im_min) * j as f64 / grid as f64
                };
                vertices.push(DomainVertex::new(Complex::new(re, im), 0));
            }
        }
        let mut triangles = Vec::with_capacity(2 * grid * grid);
        for j in 0..grid {
            for i in 0..grid {
                let v00 = (j * side + i) as u32;
                let v10 = v00 + 1;
                let v01 = v00 + side as u32;
                let v11 = v01 + 1;
                triangles.push(DomainTriangle {
                    v: [v00, v10, v11],
                    depth: 0,
                });
                triangles.push(DomainTriangle {
                    v: [v00, v11, v01],
                    depth: 0,
                });
            }
        }
        DomainMesh {
            vertices,
            triangles,
            edge_midpoints: BTreeMap::new(),
        }
    }

    /// `|x_i - x_j| >= min(delta_i, delta_j)`; always true next to a
    /// singular vertex.
    pub fn edge_too_long(&self, i: u32, j: u32) -> bool {
        let a = &self.vertices[i as usize];
        let b = &self.vertices[j as usize];
        edge_too_long(a.x, a.delta, b.x, b.delta)
    }

    /// True if none of the triangle's edges is too long.
    pub fn is_resolved(&self, t: &DomainTriangle) -> bool {
        EDGES
            .iter()
            .all(|&(p, q)| !self.edge_too_long(t.v[p], t.v[q]))
    }

    fn split_mask(&self, t: &DomainTriangle, min_edge_length: f64) -> u8 {
        let mut mask = 0;
        for (j, &(p, q)) in EDGES.iter().enumerate() {
            let (a, b) = (t.v[p], t.v[q]);
            let len = (self.vertices[a as usize].x - self.vertices[b as usize].x).norm();
            if self.edge_too_long(a, b) && len > min_edge_length {
                mask |= 1 << j;
            }
        }
        mask
    }

    /// Signed area of a triangle (positive when counter-clockwise).
    pub fn signed_area(&self, t: &DomainTriangle) -> f64 {
        let [a, b, c] = t.v.map(|i| self.vertices[i as usize].x);
        0.5 * ((b - a).re * (c - a).im - (b - a).im * (c - a).re)
    }

    /// Number of triangles using each edge.
    pub fn edge_usage(&self) -> BTreeMap<(u32, u32), u32> {
        let mut usage = BTreeMap::new();
        for t in &self.triangles {
            for &(p, q) in &EDGES {
                *usage.entry(edge_key(t.v[p], t.v[q])).or_insert(0) += 1;
            }
        }
        usage
    }

    /// Checks that every edge inside the domain is shared by exactly two
    /// triangles and every edge on its boundary by exactly one.
    pub fn is_watertight(&self, domain: &Domain) -> bool {
        self.edge_usage().into_iter().all(|((a, b), count)| {
            let xa = self.vertices[a as usize].x;
            let xb = self.vertices[b as usize].x;
            let boundary = (xa.re == xb.re && (xa.re == domain.re_min || xa.re == domain.re_max))
                || (xa.im == xb.im && (xa.im == domain.im_min || xa.im == domain.im_max));
            count == if boundary { 1 } else { 2 }
        })
    }

    fn solve_pending(&mut self, globals: &CurveGlobals, config: &MeshConfig, from: usize) {
        let xs: Vec<Complex> = self.vertices[from..].iter().map(|v| v.x).collect();
        let solved = crate::par::map(&xs, |&x| solve_vertex(globals, x, config));
        for (v, (fiber, bound)) in self.vertices[from..].iter_mut().zip(solved) {
            v.delta = bound.as_ref().map_or(0.0, |b| b.delta);
            v.fiber = fiber;
            v.bound = bound;
        }
    }

    /// One refinement pass; returns the number of edges split.
    pub fn refine_pass(&mut self, globals: &CurveGlobals, config: &MeshConfig, pass: u32) -> usize {
        let min_len = config.min_edge_length;
        let masks: Vec<u8> = crate::par::map(&self.triangles, |t| self.split_mask(t, min_len));

        let mut split: BTreeSet<(u32, u32)> = BTreeSet::new();
        for (t, &mask) in self.triangles.iter().zip(&masks) {
            for (j, &(p, q)) in EDGES.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    split.insert(edge_key(t.v[p], t.v[q]));
                }
            }
        }
        if split.is_empty() {
            return 0;
        }

        let first_new = self.vertices.len();
        for &(a, b) in &split {
            if self.edge_midpoints.contains_key(&(a, b)) {
                continue;
            }
            let x = (self.vertices[a as usize].x + self.vertices[b as usize].x) * 0.5;
            let idx = self.vertices.len() as u32;
            self.vertices.push(DomainVertex::new(x, pass));
            self.edge_midpoints.insert((a, b), idx);
        }
        self.solve_pending(globals, config, first_new);

        let mut next = Vec::with_capacity(self.triangles.len() * 2);
        for (t, &mask) in self.triangles.iter().zip(&masks) {
            if mask == 0 {
                next.push(*t);
                continue;
            }
            let mut local = [0u32; 6];
            local[..3].copy_from_slice(&t.v);
            for (j, &(p, q)) in EDGES.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    local[3 + j] = self.edge_midpoints[&edge_key(t.v[p], t.v[q])];
                }
            }
            for sub in PATTERNS[mask as usize].sub_triangles {
                next.push(DomainTriangle {
                    v: sub.map(|s| local[s as usize]),
                    depth: t.depth + 1,
                });
            }
        }
        self.triangles = next;
        split.len()
    }
}

/// `|xa - xb| >= min(delta_a, delta_b)`.
pub fn edge_too_long(xa: Complex, delta_a: f64, xb: Complex, delta_b: f64) -> bool {
    (xa - xb).norm() >= delta_a.min(delta_b)
}

/// Fibre and bound at `x`; singular vertices carry no bound.
pub fn solve_vertex(
    globals: &CurveGlobals,
    x: Complex,
    config: &MeshConfig,
) -> (Fiber, Option<PointBound>) {
    let n = globals.degree_y();
    let p = globals.curve.fiber_poly(x);
    if p.degree() != n {
        return (Fiber::Singular, None);
    }
    let set = match solve_all_roots(&p, config.root_tolerance, config.root_max_iter) {
        Ok(set) => set,
        Err(_) => return (Fiber::Singular, None),
    };
    let extent = set.roots.iter().map(|y| y.norm()).fold(1.0, f64::max);
    let scale = p.max_abs_coeff() * extent.powi(n as i32);
    if set.residual.is_nan() || set.residual > config.residual_tolerance * scale {
        return (Fiber::Singular, None);
    }
    let bound = globals.point_bound(x, &set.roots, &config.bound);
    (Fiber::Solved(set), Some(bound))
}

fn argmin(y: Complex, fiber: &[Complex]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (l, &v) in fiber.iter().enumerate() {
        let d = (y - v).norm();
        if d < best_d {
            best_d = d;
            best = l;
        }
    }
    best
}

/// `match[k] = argmin_l |from[k] - to[l]|`; `None` unless a permutation.
pub fn proximity_match(from: &[Complex], to: &[Complex]) -> Option<Vec<usize>> {
    let mut seen = vec![false; to.len()];
    let mut out = Vec::with_capacity(from.len());
    for &y in from {
        let l = argmin(y, to);
        if seen[l] {
            return None;
        }
        seen[l] = true;
        out.push(l);
    }
    Some(out)
}

/// Sheet choices for one resolved domain triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct AssembledTriangle {
    /// `sheets[k] = [k, match at x2, match at x3]`.
    pub sheets: Vec<[usize; 3]>,
    /// Matching the `x2` values directly against `x3` disagrees somewhere.
    pub inconsistent: bool,
}

/// Lifts a domain triangle to `n` surface triangles by proximity to the
/// fibre at its first vertex.
pub fn assemble_triangle(fibers: [&[Complex]; 3]) -> Option<AssembledTriangle> {
    let m2 = proximity_match(fibers[0], fibers[1])?;
    let m3 = proximity_match(fibers[0], fibers[2])?;
    let inconsistent = m2
        .iter()
        .zip(&m3)
        .any(|(&l2, &l3)| argmin(fibers[1][l2], fibers[2]) != l3);
    Some(AssembledTriangle {
        sheets: (0..fibers[0].len()).map(|k| [k, m2[k], m3[k]]).collect(),
        inconsistent,
    })
}

/// Parameters recorded alongside a surface mesh.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceMeta {
    pub curve: String,
    pub degree: usize,
    pub domain: Domain,
    pub grid: usize,
    pub max_depth: usize,
    pub rho_factor: f64,
}

/// Triangle mesh on the surface: vertices are points `(x, y)` of the curve.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceMesh {
    pub vertices: Vec<(Complex, Complex)>,
    pub triangles: Vec<[u32; 3]>,
    pub meta: SurfaceMeta,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct MeshStats {
    pub passes: usize,
    /// Edges split in each pass.
    pub splits_per_pass: Vec<usize>,
    pub kept_triangles: usize,
    pub discarded_triangles: usize,
    /// Kept triangles whose proximity matching was not a bijection.
    pub non_bijective: usize,
    /// Triangles where the `x2`-`x3` matching disagrees (output unchanged).
    pub inconsistent: usize,
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub surface: SurfaceMesh,
    pub domain_mesh: DomainMesh,
    pub stats: MeshStats,
}

impl Generated {
    /// Every triangle was discarded.
    pub fn is_empty(&self) -> bool {
        self.surface.triangles.is_empty()
    }
}

/// Step-by-step driver of the mesh generation.
pub struct Mesher {
    pub globals: CurveGlobals,
    pub config: MeshConfig,
    pub domain: Domain,
    pub mesh: DomainMesh,
    source: String,
    stats: MeshStats,
}

impl Mesher {
    /// Computes the curve globals, triangulates the domain and solves the
    /// initial vertices.
    pub fn new(
        curve: &BivariatePoly,
        source: &str,
        domain: Domain,
        config: MeshConfig,
    ) -> Result<Self, MeshError> {
        if config.grid == 0 {
            return Err(MeshError::InvalidConfig("grid must be at least 1"));
        }
        if !domain.is_valid() {
            return Err(MeshError::InvalidConfig("domain rectangle is degenerate"));
        }
        if !(config.bound.rho_factor > 0.0 && config.bound.rho_factor < 1.0) {
            return Err(MeshError::InvalidConfig("rho factor must lie in (0, 1)"));
        }
        let globals = CurveGlobals::compute(curve)?;
        let mut mesh = DomainMesh::triangulate_rectangle(&domain, config.grid);
        mesh.solve_pending(&globals, &config, 0);
        Ok(Mesher {
            globals,
            config,
            domain,
            mesh,
            source: String::from(source),
            stats: MeshStats::default(),
        })
    }

    /// Runs one pass; returns the number of split edges (0 at a fixed point).
    pub fn refine_pass(&mut self) -> usize {
        let pass = self.stats.passes as u32 + 1;
        let splits = self.mesh.refine_pass(&self.globals, &self.config, pass);
        self.stats.passes += 1;
        self.stats.splits_per_pass.push(splits);
        splits
    }

    /// Refines until `max_depth` passes have run or nothing changes.
    pub fn refine(&mut self) {
        while self.stats.passes < self.config.max_depth {
            if self.refine_pass() == 0 {
                break;
            }
        }
    }

    /// Discards unresolved triangles and assembles the surface.
    pub fn finish(self) -> Generated {
        let Mesher {
            globals,
            config,
            domain,
            mesh,
            source,
            mut stats,
        } = self;
        let n = globals.degree_y();

        let assembled: Vec<Option<Option<AssembledTriangle>>> =
            crate::par::map(&mesh.triangles, |t| {
                if !mesh.is_resolved(t) {
                    return None;
                }
                let fibers =
                    t.v.map(|i| mesh.vertices[i as usize].roots().unwrap_or(&[]));
                Some(assemble_triangle(fibers))
            });

        let mut base: Vec<Option<u32>> = vec![None; mesh.vertices.len()];
        for (t, a) in mesh.triangles.iter().zip(&assembled) {
            if let Some(Some(_)) = a {
                for &i in &t.v {
                    base[i as usize] = Some(0);
                }
            }
        }
        let mut vertices = Vec::new();
        for (i, slot) in base.iter_mut().enumerate() {
            if slot.is_some() {
                *slot = Some(vertices.len() as u32);
                let v = &mesh.vertices[i];
                for &y in v.roots().unwrap_or(&[]) {
                    vertices.push((v.x, y));
                }
            }
        }

        let mut triangles = Vec::new();
        for (t, a) in mesh.triangles.iter().zip(assembled) {
            match a {
                None => stats.discarded_triangles += 1,
                Some(None) => {
                    stats.discarded_triangles += 1;
                    stats.non_bijective += 1;
                }
                Some(Some(a)) => {
                    stats.kept_triangles += 1;
                    if a.inconsistent {
                        stats.inconsistent += 1;
                    }
                    let b = t.v.map(|i| base[i as usize].unwrap_or(0));
                    for s in a.sheets {
                        triangles.push([
                            b[0] + s[0] as u32,
                            b[1] + s[1] as u32,
                            b[2] + s[2] as u32,
                        ]);
                    }
                }
            }
        }
        debug_assert_eq!(triangles.len(), n * stats.kept_triangles);

        Generated {
            surface: SurfaceMesh {
                vertices,
                triangles,
                meta: SurfaceMeta {
                    curve: source,
                    degree: n,
                    domain,
                    grid: config.grid,
                    max_depth: config.max_depth,
                    rho_factor: config.bound.rho_factor,
                },
            },
            domain_mesh: mesh,
            stats,
        }
    }
}

/// Full pipeline: globals, triangulation, refinement, discard, assembly.
pub fn generate_surface(
    curve: &BivariatePoly,
    source: &str,
    domain: Domain,
    config: MeshConfig,
) -> Result<Generated, MeshError> {
    let mut mesher = Mesher::new(curve, source, domain, config)?;
    mesher.refine();
    Ok(mesher.finish())
}

/// A permutation of the sheets, `map[k]` being the sheet that sheet `k`
/// ends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Non-trivial cycles, 0-based, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                cycle.push(k);
                k = self.0[k];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

/// Cycle notation with 1-based sheets, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, k) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", k + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Closed polygon with `segments` vertices on a circle.
pub fn circle_loop(center: Complex, radius: f64, segments: usize) -> Vec<Complex> {
    (0..segments)
        .map(|k| {
            center
                + Complex::from_polar(
                    radius,
                    2.0 * core::f64::consts::PI * k as f64 / segments as f64,
                )
        })
        .collect()
}

const MAX_HALVINGS: usize = 60;
const MAX_LOOP_STEPS: usize = 1_000_000;

/// Monodromy of the fibre around a closed polyline (implicitly closed from
/// the last point back to the first). Steps longer than the local `delta`
/// are bisected; the fibre is carried along by proximity matching.
pub fn monodromy_permutation(
    globals: &CurveGlobals,
    path: &[Complex],
    config: &MeshConfig,
) -> Result<Permutation, MeshError> {
    let n = globals.degree_y();
    let Some(&start) = path.first() else {
        return Ok(Permutation::identity(n));
    };
    let solve = |x: Complex| -> Result<(Vec<Complex>, f64), MeshError> {
        match solve_vertex(globals, x, config) {
            (Fiber::Solved(set), Some(b)) if b.delta > 0.0 => Ok((set.roots, b.delta)),
            _ => Err(MeshError::StepTooLarge { at: x }),
        }
    };
    let (initial, mut delta) = solve(start)?;
    let mut tracked = initial.clone();
    let mut here = start;
    let mut steps = 0;

    let targets = path[1..].iter().copied().chain(core::iter::once(start));
    for target in targets {
        while here != target {
            let mut next = target;
            let mut halvings = 0;
            while (next - here).norm() >= delta {
                next = (here + next) * 0.5;
                halvings += 1;
                if halvings > MAX_HALVINGS {
                    return Err(MeshError::StepTooLarge { at: here });
                }
            }
            let (fiber, d) = if next == start {
                (initial.clone(), solve(start)?.1)
            } else {
                solve(next)?
            };
            let m = proximity_match(&tracked, &fiber)
                .ok_or(MeshError::MatchNotBijective { at: next })?;
            tracked = m.iter().map(|&l| fiber[l]).collect();
            here = next;
            delta = d;
            steps += 1;
            if steps > MAX_LOOP_STEPS {
                return Err(MeshError::StepTooLarge { at: here });
            }
        }
    }
    let m =
        proximity_match(&tracked, &initial).ok_or(MeshError::MatchNotBijective { at: start })?;
    Ok(Permutation(m))
}

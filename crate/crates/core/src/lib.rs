//! Riemann surface meshes of complex plane algebraic curves `f(x, y) = 0`.
//!
//! The crate covers the whole numeric pipeline: polynomial algebra and
//! discriminants, a curve expression parser, simultaneous root finding,
//! the epsilon-delta bound that decides how far `x` may move before the
//! fibre above it could be confused, adaptive subdivision of a domain in
//! the `x`-plane, assembly of the `n`-sheeted surface, and the domain
//! colouring used to display it.
//!
//! It is `no_std` (with `alloc`) when built without the default `std`
//! feature. File formats, image encoding and the command line live in the
//! companion `riemann-io` crate.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebra;
pub mod bound;
pub mod coloring;
pub mod mesher;
pub mod parser;
pub mod roots;

mod par;

pub use algebra::{BivariatePoly, Complex, UnivariatePoly};
pub use bound::{AtildeExponent, BoundConfig, BoundError, CurveGlobals, PointBound};
pub use coloring::{domain_color, ColorParams, Image, Rgb};
pub use mesher::{
    generate_surface, monodromy_permutation, Domain, DomainMesh, MeshConfig, MeshError,
    Permutation, SurfaceMesh,
};
pub use parser::{parse_curve, ParseError};
pub use roots::{solve_all_roots, RootError, RootSet};

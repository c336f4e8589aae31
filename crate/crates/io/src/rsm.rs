//! `.rsm.json`: a surface mesh as plain JSON.
//!
//! ```text
//! {
//!   "format_version": 1,
//!   "curve": "y^2 - x",
//!   "degree": 2,
//!   "domain": {"re_min": ..., "re_max": ..., "im_min": ..., "im_max": ...},
//!   "config": {"grid": 16, "max_depth": 6, "rho_factor": ...},
//!   "vertices": [[re_x, im_x, re_y, im_y], ...],
//!   "triangles": [[i, j, k], ...]
//! }
//! ```
//!
//! Fields are written in this order, one vertex or triangle per line, and
//! floats with 17 significant digits so that reading gives back the same
//! doubles. Writing the same mesh always yields the same bytes.

use std::fmt::Write as _;
use std::path::Path;

use riemann_core::mesher::SurfaceMeta;
use riemann_core::{Complex, Domain, SurfaceMesh};
use serde::Deserialize;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, thiserror::Error)]
pub enum RsmError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed document at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format_version {found} (this reader understands {FORMAT_VERSION})")]
    Version { found: u64 },
    #[error("invalid field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("cannot serialize non-finite value in `{field}`")]
    NonFinite { field: String },
}

impl From<serde_json::Error> for RsmError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep only the message
        let message = match message.rfind(" at line ") {
            Some(cut) => message[..cut].to_string(),
            None => message,
        };
        RsmError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

fn float(out: &mut String, field: &str, v: f64) -> Result<(), RsmError> {
    if !v.is_finite() {
        return Err(RsmError::NonFinite {
            field: field.to_string(),
        });
    }
    write!(out, "{:.16e}", v).unwrap();
    Ok(())
}

/// Canonical text of a mesh, newline-terminated.
pub fn to_string(mesh: &SurfaceMesh) -> Result<String, RsmError> {
    let meta = &mesh.meta;
    let d = &meta.domain;
    let mut out = String::with_capacity(96 * mesh.vertices.len() + 32 * mesh.triangles.len() + 256);
    out.push_str("{\n");
    writeln!(out, "  \"format_version\": {},", FORMAT_VERSION).unwrap();
    writeln!(out, "  \"curve\": {},", serde_json::to_string(&meta.curve)?).unwrap();
    writeln!(out, "  \"degree\": {},", meta.degree).unwrap();
    out.push_str("  \"domain\": {\"re_min\": ");
    float(&mut out, "domain.re_min", d.re_min)?;
    out.push_str(", \"re_max\": ");
    float(&mut out, "domain.re_max", d.re_max)?;
    out.push_str(", \"im_min\": ");
    float(&mut out, "domain.im_min", d.im_min)?;
    out.push_str(", \"im_max\": ");
    float(&mut out, "domain.im_max", d.im_max)?;
    out.push_str("},\n");
    write!(
        out,
        "  \"config\": {{\"grid\": {}, \"max_depth\": {}, \"rho_factor\": ",
        meta.grid, meta.max_depth
    )
    .unwrap();
    float(&mut out, "config.rho_factor", meta.rho_factor)?;
    out.push_str("},\n");

    out.push_str("  \"vertices\": [");
    for (i, (x, y)) in mesh.vertices.iter().enumerate() {
        out.push_str(if i == 0 { "\n    [" } else { ",\n    [" });
        for (j, v) in [x.re, x.im, y.re, y.im].into_iter().enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            float(&mut out, "vertices", v)?;
        }
        out.push(']');
    }
    out.push_str(if mesh.vertices.is_empty() {
        "],\n"
    } else {
        "\n  ],\n"
    });

    out.push_str("  \"triangles\": [");
    for (i, t) in mesh.triangles.iter().enumerate() {
        out.push_str(if i == 0 { "\n    [" } else { ",\n    [" });
        write!(out, "{}, {}, {}]", t[0], t[1], t[2]).unwrap();
    }
    out.push_str(if mesh.triangles.is_empty() {
        "]\n"
    } else {
        "\n  ]\n"
    });
    out.push_str("}\n");
    Ok(out)
}

#[derive(Deserialize)]
struct VersionProbe {
    format_version: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDomain {
    re_min: f64,
    re_max: f64,
    im_min: f64,
    im_max: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    grid: usize,
    max_depth: usize,
    rho_factor: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[allow(dead_code)]
    format_version: u64,
    curve: String,
    degree: usize,
    domain: RawDomain,
    config: RawConfig,
    vertices: Vec<[f64; 4]>,
    triangles: Vec<[u32; 3]>,
}

fn field(name: impl Into<String>, message: impl Into<String>) -> RsmError {
    RsmError::Field {
        field: name.into(),
        message: message.into(),
    }
}

/// Parses and validates a document.
pub fn from_str(text: &str) -> Result<SurfaceMesh, RsmError> {
    let probe: VersionProbe = serde_json::from_str(text)?;
    if probe.format_version != FORMAT_VERSION {
        return Err(RsmError::Version {
            found: probe.format_version,
        });
    }
    let raw: RawDocument = serde_json::from_str(text)?;

    if raw.degree == 0 {
        return Err(field("degree", "must be at least 1"));
    }
    let domain = Domain {
        re_min: raw.domain.re_min,
        re_max: raw.domain.re_max,
        im_min: raw.domain.im_min,
        im_max: raw.domain.im_max,
    };
    if !domain.is_valid() {
        return Err(field("domain", "needs re_min < re_max and im_min < im_max"));
    }
    if !raw.vertices.len().is_multiple_of(raw.degree) {
        return Err(field(
            "vertices",
            format!(
                "{} vertices is not a multiple of degree {}",
                raw.vertices.len(),
                raw.degree
            ),
        ));
    }
    let count = raw.vertices.len() as u64;
    for (i, t) in raw.triangles.iter().enumerate() {
        if let Some(bad) = t.iter().find(|&&v| v as u64 >= count) {
            return Err(field(
                format!("triangles[{}]", i),
                format!("index {} out of range (0..{})", bad, count),
            ));
        }
    }
    let vertices = raw
        .vertices
        .iter()
        .map(|v| (Complex::new(v[0], v[1]), Complex::new(v[2], v[3])))
        .collect();
    Ok(SurfaceMesh {
        vertices,
        triangles: raw.triangles,
        meta: SurfaceMeta {
            curve: raw.curve,
            degree: raw.degree,
            domain,
            grid: raw.config.grid,
            max_depth: raw.config.max_depth,
            rho_factor: raw.config.rho_factor,
        },
    })
}

pub fn write(mesh: &SurfaceMesh, path: &Path) -> Result<(), RsmError> {
    let text = to_string(mesh)?;
    std::fs::write(path, text).map_err(|source| RsmError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read(path: &Path) -> Result<SurfaceMesh, RsmError> {
    let text = std::fs::read_to_string(path).map_err(|source| RsmError::Io {
        path: path.display().to_string(),
        source,
    })?;
    from_str(&text)
}

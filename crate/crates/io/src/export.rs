//! 3D export of a surface mesh: `(x, y)` goes to `(Re x, Im x, H(y))` with
//! `H` the real or imaginary part, and each vertex carries the domain
//! colour of its `y`.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use riemann_core::{domain_color, ColorParams, Complex, SurfaceMesh};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Height {
    Re,
    Im,
}

impl Height {
    pub fn apply(self, y: Complex) -> f64 {
        match self {
            Height::Re => y.re,
            Height::Im => y.im,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Obj,
    Ply,
}

impl FromStr for Height {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "re" => Ok(Height::Re),
            "im" => Ok(Height::Im),
            _ => Err(format!("unknown height `{}` (expected re or im)", s)),
        }
    }
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "obj" => Ok(Format::Obj),
            "ply" => Ok(Format::Ply),
            _ => Err(format!("unknown format `{}` (expected obj or ply)", s)),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Obj => "obj",
            Format::Ply => "ply",
        })
    }
}

/// Position and baked colour of one exported vertex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExportVertex {
    pub position: [f64; 3],
    pub color: [u8; 3],
    pub color_f: [f64; 3],
}

pub fn export_vertices(
    mesh: &SurfaceMesh,
    height: Height,
    params: &ColorParams,
) -> Vec<ExportVertex> {
    mesh.vertices
        .iter()
        .map(|&(x, y)| {
            let c = domain_color(y, params);
            ExportVertex {
                position: [x.re, x.im, height.apply(y)],
                color: c.to_rgb8(),
                color_f: [c.r, c.g, c.b],
            }
        })
        .collect()
}

/// Wavefront OBJ with `v x y z r g b` vertex colours and 1-based faces.
pub fn write_obj<W: Write>(
    mesh: &SurfaceMesh,
    height: Height,
    params: &ColorParams,
    mut out: W,
) -> std::io::Result<()> {
    writeln!(out, "# {}", mesh.meta.curve)?;
    for v in export_vertices(mesh, height, params) {
        let [x, y, z] = v.position;
        let [r, g, b] = v.color_f;
        writeln!(out, "v {} {} {} {:.6} {:.6} {:.6}", x, y, z, r, g, b)?;
    }
    for t in &mesh.triangles {
        writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
    }
    out.flush()
}

/// ASCII PLY with float positions and uchar colours.
pub fn write_ply<W: Write>(
    mesh: &SurfaceMesh,
    height: Height,
    params: &ColorParams,
    mut out: W,
) -> std::io::Result<()> {
    writeln!(out, "ply")?;
    writeln!(out, "format ascii 1.0")?;
    writeln!(out, "comment curve {}", mesh.meta.curve.replace('\n', " "))?;
    writeln!(out, "element vertex {}", mesh.vertices.len())?;
    for p in ["x", "y", "z"] {
        writeln!(out, "property float {}", p)?;
    }
    for p in ["red", "green", "blue"] {
        writeln!(out, "property uchar {}", p)?;
    }
    writeln!(out, "element face {}", mesh.triangles.len())?;
    writeln!(out, "property list uchar int vertex_indices")?;
    writeln!(out, "end_header")?;
    for v in export_vertices(mesh, height, params) {
        let [x, y, z] = v.position.map(|c| c as f32);
        let [r, g, b] = v.color;
        writeln!(out, "{} {} {} {} {} {}", x, y, z, r, g, b)?;
    }
    for t in &mesh.triangles {
        writeln!(out, "3 {} {} {}", t[0], t[1], t[2])?;
    }
    out.flush()
}

pub fn export_mesh(
    mesh: &SurfaceMesh,
    height: Height,
    format: Format,
    params: &ColorParams,
    path: &Path,
) -> std::io::Result<()> {
    let out = BufWriter::new(File::create(path)?);
    match format {
        Format::Obj => write_obj(mesh, height, params, out),
        Format::Ply => write_ply(mesh, height, params, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use riemann_core::mesher::SurfaceMeta;
    use riemann_core::Domain;

    fn mesh() -> SurfaceMesh {
        let c = Complex::new;
        SurfaceMesh {
            vertices: vec![
                (c(1.0, 0.0), c(1.0, 0.0)),
                (c(1.0, 0.0), c(-1.0, 0.0)),
                (c(2.0, 1.0), c(0.0, 0.5)),
            ],
            triangles: vec![[0, 1, 2]],
            meta: SurfaceMeta {
                curve: "y^2 - x".into(),
                degree: 2,
                domain: Domain::default(),
                grid: 1,
                max_depth: 0,
                rho_factor: 0.5,
            },
        }
    }

    #[test]
    fn obj_lines() {
        let mut buf = Vec::new();
        write_obj(&mesh(), Height::Re, &ColorParams::default(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "v 1 0 1 0.490000 0.000000 0.000000");
        let c = domain_color(Complex::new(0.0, 0.5), &ColorParams::default());
        assert_eq!(
            lines[3],
            format!("v 2 1 0 {:.6} {:.6} {:.6}", c.r, c.g, c.b)
        );
        assert_eq!(lines[4], "f 1 2 3");
    }

    #[test]
    fn ply_header_and_body() {
        let mut buf = Vec::new();
        write_ply(&mesh(), Height::Im, &ColorParams::default(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("ply\nformat ascii 1.0\n"));
        assert!(text.contains("element vertex 3\n"));
        assert!(text.contains("property uchar red\n"));
        assert!(text.contains("element face 1\n"));
        let body: Vec<&str> = text.split("end_header\n").nth(1).unwrap().lines().collect();
        assert_eq!(body[0], "1 0 0 125 0 0");
        let [r, g, b] = domain_color(Complex::new(0.0, 0.5), &ColorParams::default()).to_rgb8();
        assert_eq!(body[2], format!("2 1 0.5 {} {} {}", r, g, b));
        assert_eq!(body[3], "3 0 1 2");
    }

    #[test]
    fn sheets_over_one_point_differ_in_colour() {
        let v = export_vertices(&mesh(), Height::Im, &ColorParams::default());
        // both fibre values over x = 1 have Im y = 0: same (x, H), different colour
        assert_eq!(v[0].position, v[1].position);
        assert_ne!(v[0].color, v[1].color);
    }

    #[test]
    fn parse_options() {
        assert_eq!("re".parse::<Height>().unwrap(), Height::Re);
        assert_eq!("ply".parse::<Format>().unwrap(), Format::Ply);
        assert!("z".parse::<Height>().is_err());
    }
}

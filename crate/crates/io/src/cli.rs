//! The `riemann` command.
//!
//! Exit codes: 0 on success, 1 for usage errors (bad flags, unparsable
//! curve, unreadable or unwritable files), 2 for numeric failures.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use riemann_core::coloring::{render_reference, render_sheets};
use riemann_core::mesher::circle_loop;
use riemann_core::{
    generate_surface, monodromy_permutation, parse_curve, BivariatePoly, BoundConfig, ColorParams,
    Complex, CurveGlobals, Domain, MeshConfig, MeshError,
};

use crate::export::{export_mesh, Format, Height};

#[derive(Debug, Parser)]
#[command(
    name = "riemann",
    version,
    about = "Riemann surface meshes of plane algebraic curves"
)]
pub struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a surface mesh and write it as .rsm.json.
    Generate {
        #[arg(long)]
        curve: String,
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, default_value_t = 16)]
        grid: usize,
        #[arg(long, default_value_t = 6)]
        max_depth: usize,
        #[arg(long, default_value_t = 0.5)]
        rho_factor: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render one domain-coloured PNG per sheet: <prefix>1.png ... <prefix>n.png.
    Sheets {
        #[arg(long)]
        curve: String,
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, default_value_t = 512)]
        size: usize,
        #[arg(long)]
        out_prefix: String,
    },
    /// Render the colour wheel reference image on the side-10 square.
    Wheel {
        #[arg(long, default_value_t = 512)]
        size: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Export a mesh to OBJ or PLY with (Re x, Im x, H(y)) positions.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "re")]
        height: Height,
        #[arg(long, default_value = "obj")]
        format: Format,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the sheet permutation around a circle in cycle notation.
    Monodromy {
        #[arg(long)]
        curve: String,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        center: Complex,
        #[arg(long)]
        radius: f64,
        /// Polygon vertices approximating the circle.
        #[arg(long, default_value_t = 64)]
        segments: usize,
    },
}

#[derive(Debug, Args, Clone, Copy)]
pub struct DomainArgs {
    #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
    pub re_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub re_max: f64,
    #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
    pub im_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub im_max: f64,
}

impl From<DomainArgs> for Domain {
    fn from(a: DomainArgs) -> Self {
        Domain {
            re_min: a.re_min,
            re_max: a.re_max,
            im_min: a.im_min,
            im_max: a.im_max,
        }
    }
}

/// `re,im`.
pub fn parse_point(s: &str) -> Result<Complex, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `re,im`, got `{}`", s))?;
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|e| format!("bad number `{}`: {}", t.trim(), e))
    };
    Ok(Complex::new(num(re)?, num(im)?))
}

enum Failure {
    Usage(String),
    Numeric(String),
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn numeric(e: impl std::fmt::Display) -> Failure {
    Failure::Numeric(e.to_string())
}

fn curve(source: &str) -> Result<BivariatePoly, Failure> {
    parse_curve(source).map_err(|e| usage(format!("cannot parse curve: {}", e)))
}

fn mesh_failure(e: MeshError) -> Failure {
    match e {
        MeshError::InvalidConfig(_) => usage(e),
        other => numeric(other),
    }
}

fn check_domain(domain: &Domain) -> Result<(), Failure> {
    if domain.is_valid() {
        Ok(())
    } else {
        Err(usage("domain needs re-min < re-max and im-min < im-max"))
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", text);
                    0
                }
                _ => {
                    let _ = write!(err, "{}", text);
                    1
                }
            };
        }
    };
    let result = match cli.threads {
        Some(0) => Err(usage("--threads must be at least 1")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => {
                let (mut o, mut e) = (Vec::new(), Vec::new());
                let r = pool.install(|| execute(cli.command, &mut o, &mut e));
                let _ = out.write_all(&o);
                let _ = err.write_all(&e);
                r
            }
            Err(e) => Err(usage(e)),
        },
        None => execute(cli.command, out, err),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {}", m);
            1
        }
        Err(Failure::Numeric(m)) => {
            let _ = writeln!(err, "error: {}", m);
            2
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Generate {
            curve: source,
            domain,
            grid,
            max_depth,
            rho_factor,
            out: path,
        } => {
            let f = curve(&source)?;
            let config = MeshConfig {
                grid,
                max_depth,
                bound: BoundConfig {
                    rho_factor,
                    ..BoundConfig::default()
                },
                ..MeshConfig::default()
            };
            let g = generate_surface(&f, &source, domain.into(), config).map_err(mesh_failure)?;
            let s = &g.stats;
            let _ = writeln!(
                err,
                "{} passes, {} domain triangles kept, {} discarded, {} surface triangles, {} vertices",
                s.passes,
                s.kept_triangles,
                s.discarded_triangles,
                g.surface.triangles.len(),
                g.surface.vertices.len()
            );
            if s.non_bijective > 0 || s.inconsistent > 0 {
                let _ = writeln!(
                    err,
                    "note: {} triangles dropped for non-bijective matching, {} with inconsistent x2-x3 matching",
                    s.non_bijective, s.inconsistent
                );
            }
            if g.is_empty() {
                let _ = writeln!(
                    err,
                    "warning: every triangle was discarded; try a finer grid or a larger max depth"
                );
            }
            crate::rsm::write(&g.surface, &path).map_err(usage)
        }
        Command::Sheets {
            curve: source,
            domain,
            size,
            out_prefix,
        } => {
            let f = curve(&source)?;
            let domain: Domain = domain.into();
            check_domain(&domain)?;
            if size == 0 {
                return Err(usage("--size must be at least 1"));
            }
            let sheets = render_sheets(&f, &domain, size, &ColorParams::default());
            if sheets.failures > 0 {
                let _ = writeln!(
                    err,
                    "warning: {} pixels without a fibre rendered black",
                    sheets.failures
                );
            }
            for (k, image) in sheets.images.iter().enumerate() {
                let path = PathBuf::from(format!("{}{}.png", out_prefix, k + 1));
                crate::image::write_png(image, &path).map_err(usage)?;
                let _ = writeln!(out, "{}", path.display());
            }
            Ok(())
        }
        Command::Wheel { size, out: path } => {
            if size == 0 {
                return Err(usage("--size must be at least 1"));
            }
            let image = render_reference(size, &Domain::default(), &ColorParams::default());
            crate::image::write_png(&image, &path).map_err(usage)
        }
        Command::Export {
            input,
            height,
            format,
            out: path,
        } => {
            let mesh = crate::rsm::read(&input).map_err(usage)?;
            export_mesh(&mesh, height, format, &ColorParams::default(), &path)
                .map_err(|e| usage(format!("cannot write {}: {}", path.display(), e)))
        }
        Command::Monodromy {
            curve: source,
            center,
            radius,
            segments,
        } => {
            let f = curve(&source)?;
            if !(radius > 0.0 && radius.is_finite()) || segments < 3 {
                return Err(usage("need a positive radius and at least 3 segments"));
            }
            let globals = CurveGlobals::compute(&f).map_err(|e| mesh_failure(e.into()))?;
            let path = circle_loop(center, radius, segments);
            let perm = monodromy_permutation(&globals, &path, &MeshConfig::default())
                .map_err(mesh_failure)?;
            let _ = writeln!(out, "{}", perm);
            Ok(())
        }
    }
}

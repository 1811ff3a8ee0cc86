use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use wvd_core::boundary::{boundary_dual_points, certify_boundary, switch_to_delaunay, TruncatedTriangulation};
use wvd_core::delaunay::{extract_dual, flip_to_delaunay, FlipConfig};
use wvd_core::finiteness::{sweep, Sampler, SweepConfig, SweepSurface};
use wvd_core::mesh::io::{import_obj, to_canonical_json, FileGeometry, SurfaceFile};
use wvd_core::mesh::{validate_weights, DeltaTriangulation, WeightClass, WeightVector};
use wvd_core::{Error, Tolerance};

mod svg;

const EXIT_SURROGATE: u8 = 1;
const EXIT_REJECTED: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_LIMIT: u8 = 70;

#[derive(Parser)]
#[command(name = "wvd", version, about = "Weighted Delaunay triangulations and Voronoi decompositions of polyhedral surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the weights of a closed surface (exit 0, 1 or 2).
    Validate(Common),
    /// Flip to the weighted Delaunay triangulation and print certificates.
    Delaunay(Common),
    /// Dual complex of an already certified triangulation.
    Voronoi {
        #[command(flatten)]
        common: Common,
        /// Also draw the decomposition (flat surfaces only).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Count distinct tessellations over sampled weights.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Regular grid over the weight box.
        #[arg(long, conflicts_with = "random")]
        grid: bool,
        /// Independent uniform draws (default).
        #[arg(long)]
        random: bool,
    },
    /// Draw a flat surface and its vertex disks as SVG.
    Render(Common),
}

#[derive(Args)]
struct Common {
    /// Surface file (JSON, or OBJ for flat closed surfaces).
    #[arg(long)]
    input: PathBuf,
    /// Output file; standard output if absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Relative tie tolerance for edge certificates.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    flip_cap: Option<usize>,
}

impl Common {
    fn tolerance(&self) -> Result<Tolerance, Failure> {
        let mut tol = Tolerance::default();
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Failure::usage(format!("--tol must be positive, got {t}")));
            }
            tol.tie = t;
        }
        Ok(tol)
    }

    fn flip_config(&self) -> Result<FlipConfig, Failure> {
        if self.flip_cap == Some(0) {
            return Err(Failure::usage("--flip-cap must be positive"));
        }
        Ok(FlipConfig {
            tol: self.tolerance()?,
            flip_cap: self.flip_cap,
        })
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        write_output(self.output.as_deref(), text)
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Parse(_)
            | Error::InvalidMesh(_)
            | Error::InfeasibleFace { .. }
            | Error::InvalidEdge { .. }
            | Error::WeightCount { .. }
            | Error::InvalidHexagon { .. } => EXIT_USAGE,
            Error::FlipLimitExceeded { .. } | Error::SwitchLimitExceeded { .. } => EXIT_LIMIT,
            _ => EXIT_REJECTED,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

enum Surface {
    Closed(DeltaTriangulation),
    Boundary(TruncatedTriangulation),
}

struct Input {
    surface: Surface,
    weights: Option<WeightVector>,
}

impl Input {
    fn load(path: &Path) -> Result<Self, Failure> {
        let text =
            fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        if path.extension().is_some_and(|x| x.eq_ignore_ascii_case("obj")) {
            return Ok(Self {
                surface: Surface::Closed(import_obj(&text)?),
                weights: None,
            });
        }
        let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        // Reports written by `delaunay` carry the surface under "mesh".
        let value = match value {
            Value::Object(mut map) if map.contains_key("mesh") => map.remove("mesh").unwrap_or_default(),
            other => other,
        };
        let file: SurfaceFile = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        let surface = match file.geometry {
            FileGeometry::Boundary => Surface::Boundary(TruncatedTriangulation::from_file(&file)?),
            _ => Surface::Closed(file.to_mesh()?),
        };
        Ok(Self {
            surface,
            weights: file.weights,
        })
    }

    fn num_vertices(&self) -> usize {
        match &self.surface {
            Surface::Closed(m) => m.num_vertices(),
            Surface::Boundary(t) => t.num_boundaries(),
        }
    }

    /// Weights from the file; closed surfaces default to all zeros.
    fn weights(&self) -> Result<WeightVector, Failure> {
        match (&self.weights, &self.surface) {
            (Some(w), _) => Ok(w.clone()),
            (None, Surface::Closed(_)) => Ok(WeightVector::uniform(self.num_vertices(), 0.0)),
            (None, Surface::Boundary(_)) => Err(Failure::usage("boundary surfaces need a `weights` field")),
        }
    }
}

fn cmd_validate(args: &Common) -> Result<u8, Failure> {
    let input = Input::load(&args.input)?;
    let Surface::Closed(mesh) = &input.surface else {
        return Err(Failure::usage("validate applies to closed surfaces"));
    };
    let weights = input
        .weights
        .as_ref()
        .ok_or_else(|| Failure::usage("input has no `weights` field"))?;
    let report = validate_weights(mesh, weights)?;
    args.emit(&to_canonical_json(&report))?;
    Ok(match report.class {
        WeightClass::EdgeAdmissible => 0,
        WeightClass::Surrogate => EXIT_SURROGATE,
        WeightClass::Rejected => EXIT_REJECTED,
    })
}

fn cmd_delaunay(args: &Common) -> Result<u8, Failure> {
    let input = Input::load(&args.input)?;
    let weights = input.weights()?;
    let config = args.flip_config()?;
    let out = match input.surface {
        Surface::Closed(mut mesh) => {
            let report = flip_to_delaunay(&mut mesh, &weights, &config)?;
            json!({
                "mesh": SurfaceFile::from_mesh(&mesh, Some(&weights)),
                "flips": report.flips,
                "ties": report.ties,
                "self_glued": report.self_glued,
                "certificates": report.certificates,
            })
        }
        Surface::Boundary(mut tt) => {
            let report = switch_to_delaunay(&mut tt, &weights, &config)?;
            json!({
                "mesh": tt.to_file(Some(&weights)),
                "flips": report.switches,
                "ties": report.ties,
                "certificates": report.certificates,
                "boundary_lengths": report.boundary_lengths,
            })
        }
    };
    args.emit(&to_canonical_json(&out))?;
    Ok(0)
}

fn cmd_voronoi(args: &Common, svg_path: Option<&Path>) -> Result<u8, Failure> {
    let input = Input::load(&args.input)?;
    let weights = input.weights()?;
    let tol = args.tolerance()?;
    let out = match &input.surface {
        Surface::Closed(mesh) => {
            let dual = extract_dual(mesh, &weights, &tol)?;
            if let Some(p) = svg_path {
                write_output(Some(p), &svg::render(mesh, &weights, true, &tol)?)?;
            }
            serde_json::to_value(&dual).map_err(|e| Failure::usage(e.to_string()))?
        }
        Surface::Boundary(tt) => {
            if svg_path.is_some() {
                return Err(Failure::usage("SVG output is only available for flat surfaces"));
            }
            let cert = certify_boundary(tt, &weights, &tol)?;
            if !cert.certified {
                return Err(Error::NotCertified {
                    violations: cert.violations.len(),
                }
                .into());
            }
            json!({
                "dual_vertices": boundary_dual_points(tt, &weights, &tol)?,
                "certificates": cert.certificates,
            })
        }
    };
    args.emit(&to_canonical_json(&out))?;
    Ok(0)
}

fn cmd_sweep(args: &Common, samples: usize, seed: u64, grid: bool) -> Result<u8, Failure> {
    if samples == 0 {
        return Err(Failure::usage("--samples must be positive"));
    }
    let input = Input::load(&args.input)?;
    let surface = match input.surface {
        Surface::Closed(m) => SweepSurface::Closed(m),
        Surface::Boundary(t) => SweepSurface::Boundary(t),
    };
    let config = SweepConfig {
        sampler: if grid { Sampler::Grid } else { Sampler::Random },
        samples,
        seed,
        flip: args.flip_config()?,
    };
    let id = args.input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let report = sweep(&id, &surface, &config)?;
    args.emit(&to_canonical_json(&report))?;
    Ok(0)
}

fn cmd_render(args: &Common) -> Result<u8, Failure> {
    let input = Input::load(&args.input)?;
    let Surface::Closed(mesh) = &input.surface else {
        return Err(Failure::usage("only flat closed surfaces can be drawn"));
    };
    let weights = input.weights()?;
    args.emit(&svg::render(mesh, &weights, false, &args.tolerance()?)?)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Validate(args) => cmd_validate(args),
        Command::Delaunay(args) => cmd_delaunay(args),
        Command::Voronoi { common, svg } => cmd_voronoi(common, svg.as_deref()),
        Command::Sweep {
            common,
            samples,
            seed,
            grid,
            random: _,
        } => cmd_sweep(common, *samples, *seed, *grid),
        Command::Render(args) => cmd_render(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("wvd: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

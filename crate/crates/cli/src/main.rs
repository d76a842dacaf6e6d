use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use orthotope::floral::{facet, FloralError, FloralVertex};
use orthotope::genericize::{hausdorff_boxes, random_generic, thicken, BoxUnion, CubeFace, GenericizeError};
use orthotope::io::{analyze, load_model, model_to_json, parse_faces, render_svg, ModelError};
use orthotope::lattice::{EulerMethod, GenericCheck, IntegralOrthotope, OrthotopeError, VolumeMethod};
use orthotope::spd::{enumerate_shapes, Minor, SignedSpd, SpdError};

/// Exit status for unreadable or malformed input.
const EXIT_MALFORMED: u8 = 2;
/// Exit status when a formula needs a generic orthotope and the input is not.
const EXIT_NOT_GENERIC: u8 = 3;
/// Exit status when two independent computations disagree.
const EXIT_CONSISTENCY: u8 = 4;

#[derive(Parser)]
#[command(name = "orthotope", version, about = "Analyze generic orthogonal polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the full report for a model.
    Analyze { model: PathBuf },
    /// Print the vertex census of a generic model.
    Census { model: PathBuf },
    /// Print the volume.
    Volume {
        model: PathBuf,
        #[arg(long, value_enum, default_value = "mu-sum")]
        method: VolumeArg,
    },
    /// Print the Euler characteristic.
    Euler {
        model: PathBuf,
        #[arg(long, value_enum, default_value = "sigma-sum")]
        method: EulerArg,
    },
    /// Check genericity; exits 3 with a witness point if degenerate.
    Check { model: PathBuf },
    /// Print the facet of a floral vertex along one axis.
    Facet {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        axis: usize,
    },
    /// Slice a model by axis-parallel hyperplanes.
    Slice {
        model: PathBuf,
        /// `axis=value`, value an integer or `p/q`; repeatable.
        #[arg(long = "at", required = true)]
        at: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the diagram shapes with `d` edges, one per line.
    EnumSpd { d: usize },
    /// Thicken a face list into a generic orthotope.
    Genericize {
        faces: PathBuf,
        #[arg(long, default_value = "1")]
        eps: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random generic union of boxes.
    Random {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        extent: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a two-dimensional model as SVG.
    Render2d {
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VolumeArg {
    MuSum,
    Determinantal,
    Voxel,
}

#[derive(Clone, Copy, ValueEnum)]
enum EulerArg {
    SigmaSum,
    Cubical,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        let orthotope = cause
            .downcast_ref::<OrthotopeError>()
            .or_else(|| match cause.downcast_ref::<ModelError>() {
                Some(ModelError::Orthotope(e)) => Some(e),
                _ => None,
            })
            .or_else(|| match cause.downcast_ref::<GenericizeError>() {
                Some(GenericizeError::Orthotope(e)) => Some(e),
                _ => None,
            });
        match orthotope {
            Some(OrthotopeError::NotGeneric { .. }) => return EXIT_NOT_GENERIC,
            Some(OrthotopeError::Consistency(_)) => return EXIT_CONSISTENCY,
            Some(_) => return EXIT_MALFORMED,
            None => {}
        }
        if cause.is::<ModelError>()
            || cause.is::<SpdError>()
            || cause.is::<FloralError>()
            || cause.is::<GenericizeError>()
            || cause.is::<Malformed>()
        {
            return EXIT_MALFORMED;
        }
    }
    1
}

/// Bad flag values or files that fail before reaching the library.
#[derive(Debug)]
struct Malformed(String);

impl std::error::Error for Malformed {}

impl std::fmt::Display for Malformed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn malformed(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Malformed(msg.into()))
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> anyhow::Result<IntegralOrthotope> {
    Ok(load_model(path)?)
}

fn run(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Analyze { model } => {
            let report = analyze(&load(&model)?)?;
            print!("{}", report.to_json());
        }
        Command::Census { model } => {
            let census = load(&model)?.vertex_census()?;
            let by_mu: BTreeMap<String, u64> = census.by_mu.iter().map(|(k, v)| (k.to_string(), *v)).collect();
            let by_class: BTreeMap<String, u64> = census
                .by_class
                .iter()
                .map(|(k, v)| (SignedSpd::positive(k.representative()).to_string(), *v))
                .collect();
            let json = serde_json::json!({ "census_by_mu": by_mu, "census_by_class": by_class });
            println!("{}", serde_json::to_string_pretty(&json)?);
        }
        Command::Volume { model, method } => {
            let method = match method {
                VolumeArg::MuSum => VolumeMethod::MuSum,
                VolumeArg::Determinantal => VolumeMethod::Determinantal,
                VolumeArg::Voxel => VolumeMethod::VoxelCount,
            };
            println!("{}", load(&model)?.volume(method)?);
        }
        Command::Euler { model, method } => {
            let method = match method {
                EulerArg::SigmaSum => EulerMethod::SigmaSum,
                EulerArg::Cubical => EulerMethod::CubicalComplex,
            };
            println!("{}", load(&model)?.euler(method)?);
        }
        Command::Check { model } => match load(&model)?.check_generic() {
            GenericCheck::Generic => println!("generic"),
            GenericCheck::NotGeneric { witness } => {
                let w: Vec<String> = witness.iter().map(|x| x.to_string()).collect();
                println!("not generic: degenerate point ({})", w.join(", "));
                return Ok(EXIT_NOT_GENERIC);
            }
        },
        Command::Facet { expr, axis } => {
            let diagram: SignedSpd = expr.parse()?;
            let vertex = FloralVertex::new(diagram)?;
            match facet(&vertex, axis)? {
                Minor::Diagram(d) => println!("{d}"),
                Minor::Trivial => println!("trivial"),
            }
        }
        Command::Slice { model, at, out } => {
            let p = load(&model)?;
            let mut fixed = BTreeMap::new();
            for arg in &at {
                let (axis, value) = arg
                    .split_once('=')
                    .ok_or_else(|| malformed(format!("--at expects axis=value, got `{arg}`")))?;
                let axis: usize = axis
                    .trim()
                    .parse()
                    .map_err(|_| malformed(format!("bad axis in `{arg}`")))?;
                let value: Rational64 = value
                    .trim()
                    .parse()
                    .map_err(|_| malformed(format!("bad value in `{arg}`")))?;
                if fixed.insert(axis, value).is_some() {
                    return Err(malformed(format!("axis {axis} fixed twice")));
                }
            }
            let section = p.cross_section_at(&fixed)?;
            emit(&model_to_json(&section), out.as_deref())?;
        }
        Command::EnumSpd { d } => {
            for shape in enumerate_shapes(d)? {
                println!("{}", SignedSpd::positive(shape));
            }
        }
        Command::Genericize { faces, eps, out } => {
            let text = std::fs::read_to_string(&faces).map_err(|e| malformed(format!("{}: {e}", faces.display())))?;
            let (dim, bounds) = parse_faces(&text)?;
            let eps: Rational64 = eps.parse().map_err(|_| malformed(format!("bad --eps `{eps}`")))?;
            let faces: Vec<CubeFace> = bounds
                .iter()
                .enumerate()
                .map(|(i, (lo, hi))| {
                    CubeFace::from_bounds(lo, hi)
                        .filter(|f| f.corner.len() == dim)
                        .ok_or_else(|| malformed(format!("face {i} is not a unit-cube face in dimension {dim}")))
                })
                .collect::<anyhow::Result<_>>()?;
            let (p, _) = thicken(dim, &faces, eps)?;
            let source = BoxUnion::from_faces(dim, &faces).ok_or_else(|| anyhow!("faces out of shape"))?;
            let dist = hausdorff_boxes(&BoxUnion::from_orthotope(&p), &source)?;
            eprintln!("hausdorff distance {dist} (bound {eps})");
            emit(&model_to_json(&p), out.as_deref())?;
        }
        Command::Random {
            dim,
            count,
            extent,
            seed,
            out,
        } => {
            let p = random_generic(dim, count, extent, seed)?;
            emit(&model_to_json(&p), out.as_deref())?;
        }
        Command::Render2d { model, out } => {
            emit(&render_svg(&load(&model)?)?, out.as_deref())?;
        }
    }
    Ok(0)
}

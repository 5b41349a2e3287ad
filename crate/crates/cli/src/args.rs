use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use girth::formats::AnnotationFormat;
use girth::{AxisMap, DEFAULT_KNN, DEFAULT_STEP};
use nalgebra::Vector3;

#[derive(Debug, Parser)]
#[command(
    name = "girth",
    version,
    about = "Chest, waist and pelvis circumference from body meshes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Measure one mesh and print its annotation record.
    Measure {
        /// Triangle mesh (OBJ).
        mesh: PathBuf,
        /// Skeleton JSON with Pelvis, Spine1, R_Hip and R_Shoulder.
        skeleton: PathBuf,
        #[command(flatten)]
        options: MeasureOptions,
        /// Write the annotation here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write the slice signature as CSV.
        #[arg(long)]
        signature: Option<PathBuf>,
        /// Print the axilla point and region bounds to stderr.
        #[arg(long)]
        debug: bool,
    },
    /// Annotate every `<id>.obj` / `<id>.skeleton.json` pair in a directory.
    Batch {
        corpus: PathBuf,
        #[command(flatten)]
        options: MeasureOptions,
        /// Annotation file [default: <corpus>/annotations.<format>].
        /// Failures go to `<output>.errors.json`.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Worker threads [default: available cores].
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Export the boundary length of every slice of a mesh as CSV.
    Signature {
        mesh: PathBuf,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
        #[arg(long, default_value = "0,1,0")]
        normal: Normal,
        #[arg(long, default_value = "x,y,z")]
        axis_map: AxisMap,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write a synthetic mesh, skeleton and oracle JSON.
    Fixture(FixtureArgs),
}

/// Flags shared by `measure` and `batch`.
#[derive(Debug, Clone, Args)]
pub struct MeasureOptions {
    /// Slicing step in meters.
    #[arg(long, default_value_t = DEFAULT_STEP)]
    pub step: f64,
    /// Neighbours searched around the armpit ray hit.
    #[arg(long, default_value_t = DEFAULT_KNN)]
    pub knn: usize,
    /// Slicing plane normal; measurement slices along +y after alignment.
    #[arg(long, default_value = "0,1,0")]
    pub normal: Normal,
    /// Where each output axis comes from in the file, e.g. `x,z,-y` for a
    /// z-up mesh.
    #[arg(long, default_value = "x,y,z")]
    pub axis_map: AxisMap,
    /// JSON object renaming skeleton joints, `{"file_name": "Pelvis", ...}`.
    #[arg(long)]
    pub joint_map: Option<PathBuf>,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    pub format: AnnotationFormat,
}

impl Default for MeasureOptions {
    fn default() -> Self {
        Self {
            step: DEFAULT_STEP,
            knn: DEFAULT_KNN,
            normal: Normal(Vector3::y()),
            axis_map: AxisMap::IDENTITY,
            joint_map: None,
            format: AnnotationFormat::Json,
        }
    }
}

fn parse_format(s: &str) -> Result<AnnotationFormat, String> {
    s.parse().map_err(|e: girth::Error| e.to_string())
}

/// A direction given as `x,y,z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normal(pub Vector3<f64>);

impl FromStr for Normal {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [x, y, z] = parts[..] else {
            return Err(format!("expected x,y,z, got {s:?}"));
        };
        let num = |t: &str| t.parse::<f64>().map_err(|_| format!("invalid number {t:?}"));
        let v = Vector3::new(num(x)?, num(y)?, num(z)?);
        if !v.iter().all(|c| c.is_finite()) || v.norm() == 0.0 {
            return Err("normal must be a finite non-zero vector".into());
        }
        Ok(Self(v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FixtureShape {
    Cylinder,
    Sphere,
    Hourglass,
    Humanoid,
}

#[derive(Debug, Clone, Args)]
pub struct FixtureArgs {
    #[arg(required_unless_present = "spec", conflicts_with = "spec")]
    pub shape: Option<FixtureShape>,
    /// Full fixture description as JSON instead of a shape and flags.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub height: Option<f64>,
    /// Vertices per ring.
    #[arg(long)]
    pub n: Option<usize>,
    /// Rings along the axis.
    #[arg(long)]
    pub rings: Option<usize>,
    #[arg(long)]
    pub end_radius: Option<f64>,
    #[arg(long)]
    pub waist_radius: Option<f64>,
    #[arg(long)]
    pub waist_y: Option<f64>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub output: PathBuf,
    /// File stem [default: the shape name].
    #[arg(long)]
    pub id: Option<String>,
    /// Write this many copies scaled evenly from 0.9 to 1.1, named
    /// `<id>_000`, `<id>_001`, ...
    #[arg(long)]
    pub count: Option<usize>,
}

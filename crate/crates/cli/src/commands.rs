use std::collections::HashMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use girth::formats::{
    parse_joint_map, parse_obj, parse_skeleton, parse_skeleton_with_map, write_annotation, write_obj,
    write_signature_csv, write_skeleton, AnnotationFormat, AnnotationRecord,
};
use girth::{
    generate, lsa_align, mesh_signature, run_pipeline, Error, FixtureKind, FixtureSpec, HumanoidParams, Mesh,
    PipelineConfig, PipelineOutput, Skeleton,
};
use nalgebra::Vector3;

use crate::args::{Cli, Command, FixtureArgs, FixtureShape, MeasureOptions};
use crate::batch::{annotate_corpus, discover_corpus};
use crate::{read_file, write_file, CliError};

/// Validated measurement settings shared by `measure` and `batch`.
#[derive(Debug, Clone)]
pub(crate) struct Settings {
    pub pipeline: PipelineConfig,
    pub joint_map: Option<HashMap<String, String>>,
    pub format: AnnotationFormat,
}

impl Settings {
    pub fn from_options(options: &MeasureOptions) -> Result<Self, CliError> {
        if !(options.step > 0.0) || !options.step.is_finite() {
            return Err(CliError::from_core(Error::NonPositiveStep, None));
        }
        if options.knn == 0 {
            return Err(CliError::from_core(Error::ZeroNeighbors, None));
        }
        let n = options.normal.0.normalize();
        if (n - Vector3::y()).norm() > 1e-12 {
            return Err(CliError::input(
                "measurement slices along +y (0,1,0); orient the mesh with --axis-map instead of --normal",
            ));
        }
        let joint_map = match &options.joint_map {
            Some(path) => {
                Some(parse_joint_map(&read_file(path)?).map_err(|e| CliError::from_core(e, Some(path)))?)
            }
            None => None,
        };
        Ok(Self {
            pipeline: PipelineConfig {
                step: options.step,
                knn: options.knn,
                axis_map: options.axis_map,
            },
            joint_map,
            format: options.format,
        })
    }
}

pub(crate) fn load_mesh(path: &Path) -> Result<Mesh, CliError> {
    parse_obj(&read_file(path)?).map_err(|e| CliError::from_core(e, Some(path)))
}

pub(crate) fn load_skeleton(
    path: &Path,
    joint_map: Option<&HashMap<String, String>>,
) -> Result<Skeleton, CliError> {
    let text = read_file(path)?;
    match joint_map {
        Some(table) => parse_skeleton_with_map(&text, table),
        None => parse_skeleton(&text),
    }
    .map_err(|e| CliError::from_core(e, Some(path)))
}

/// Loads both files and runs the pipeline. Geometric failures name the
/// mesh file and the failing stage.
pub(crate) fn measure_files(
    mesh_path: &Path,
    skeleton_path: &Path,
    settings: &Settings,
) -> Result<PipelineOutput, CliError> {
    let mesh = load_mesh(mesh_path)?;
    let skeleton = load_skeleton(skeleton_path, settings.joint_map.as_ref())?;
    run_pipeline(&mesh, &skeleton, &settings.pipeline).map_err(|e| CliError::from_core(e, Some(mesh_path)))
}

/// `subject.obj` -> `subject`.
pub(crate) fn mesh_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn emit(output: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match output {
        Some(path) => write_file(path, contents),
        None => std::io::stdout()
            .write_all(contents.as_bytes())
            .map_err(|e| CliError::input(format!("cannot write to stdout: {e}"))),
    }
}

fn print_debug(out: &PipelineOutput) {
    let a = &out.axilla;
    eprintln!(
        "axilla ray hit ({:.6}, {:.6}, {:.6}) on triangle {}",
        a.hit.x, a.hit.y, a.hit.z, a.hit_triangle
    );
    eprintln!(
        "axilla point ({:.6}, {:.6}, {:.6}) = vertex {} of {} neighbours",
        a.point.x, a.point.y, a.point.z, a.vertex, a.neighbor_count
    );
    for (name, iv) in [
        ("chest", out.regions.chest),
        ("waist", out.regions.waist),
        ("pelvis", out.regions.pelvis),
    ] {
        eprintln!("{name:<7}[{:.6}, {:.6})", iv.lower, iv.upper);
    }
}

/// Executes one parsed command line.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Measure {
            mesh,
            skeleton,
            options,
            output,
            signature,
            debug,
        } => {
            let settings = Settings::from_options(&options)?;
            let out = measure_files(&mesh, &skeleton, &settings)?;
            if debug {
                print_debug(&out);
            }
            if let Some(path) = &signature {
                let csv = write_signature_csv(&out.signature).map_err(|e| CliError::from_core(e, None))?;
                write_file(path, &csv)?;
            }
            let record = AnnotationRecord::new(mesh_id(&mesh), &out.measurements);
            emit(output.as_deref(), &write_annotation(&[record], settings.format))
        }
        Command::Batch {
            corpus,
            options,
            output,
            jobs,
        } => {
            let settings = Settings::from_options(&options)?;
            let jobs = match jobs {
                Some(0) => return Err(CliError::input("--jobs must be at least 1")),
                Some(j) => j,
                None => std::thread::available_parallelism().map_or(1, |n| n.get()),
            };
            let entries = discover_corpus(&corpus)?;
            let report = annotate_corpus(&entries, &settings, jobs)?;

            let extension = match settings.format {
                AnnotationFormat::Json => "json",
                AnnotationFormat::Csv => "csv",
            };
            let output = output.unwrap_or_else(|| corpus.join(format!("annotations.{extension}")));
            write_file(&output, &write_annotation(&report.records, settings.format))?;
            let sidecar = errors_path(&output);
            let mut errors = serde_json::to_string_pretty(&report.failures).expect("failures serialize");
            errors.push('\n');
            write_file(&sidecar, &errors)?;

            eprintln!(
                "annotated {} of {} meshes into {}",
                report.records.len(),
                entries.len(),
                output.display()
            );
            match report.failures.first() {
                None => Ok(()),
                Some(first) => Err(CliError {
                    code: first.exit_code,
                    message: format!(
                        "{} of {} meshes failed; see {}",
                        report.failures.len(),
                        entries.len(),
                        sidecar.display()
                    ),
                }),
            }
        }
        Command::Signature {
            mesh,
            step,
            normal,
            axis_map,
            output,
        } => {
            if !(step > 0.0) || !step.is_finite() {
                return Err(CliError::from_core(Error::NonPositiveStep, None));
            }
            let mut loaded = load_mesh(&mesh)?;
            if !axis_map.is_identity() {
                loaded = lsa_align(&loaded, &axis_map);
            }
            let signature =
                mesh_signature(&loaded, normal.0, step).map_err(|e| CliError::from_core(e, Some(&mesh)))?;
            let csv = write_signature_csv(&signature).map_err(|e| CliError::from_core(e, Some(&mesh)))?;
            emit(output.as_deref(), &csv)
        }
        Command::Fixture(args) => write_fixtures(&args),
    }
}

/// `<output>.errors.json` next to the annotation file.
pub(crate) fn errors_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".errors.json");
    PathBuf::from(name)
}

fn fixture_spec(args: &FixtureArgs) -> Result<FixtureSpec, CliError> {
    if let Some(path) = &args.spec {
        return serde_json::from_str(&read_file(path)?)
            .map_err(|e| CliError::input(format!("{}: line {}: {e}", path.display(), e.line())));
    }
    let shape = args.shape.expect("clap requires a shape without --spec");
    let mut spec = match shape {
        FixtureShape::Cylinder => FixtureSpec::cylinder(
            args.radius.unwrap_or(0.5),
            args.height.unwrap_or(1.0),
            args.n.unwrap_or(64),
        ),
        FixtureShape::Sphere => FixtureSpec::sphere(args.radius.unwrap_or(1.0), args.n.unwrap_or(64)),
        FixtureShape::Hourglass => {
            let height = args.height.unwrap_or(1.0);
            FixtureSpec::hourglass(
                height,
                args.end_radius.unwrap_or(0.3),
                args.waist_radius.unwrap_or(0.1),
                args.waist_y.unwrap_or(height / 2.0),
            )
        }
        FixtureShape::Humanoid => {
            let mut params = HumanoidParams::default();
            if let Some(r) = args.waist_radius {
                params.waist_radius = r;
            }
            if let Some(y) = args.waist_y {
                params.waist_y = y;
            }
            FixtureSpec::humanoid_with(params)
        }
    };
    let unused: &[(&str, bool)] = match shape {
        FixtureShape::Cylinder => &[
            ("--end-radius", args.end_radius.is_some()),
            ("--waist-radius", args.waist_radius.is_some()),
            ("--waist-y", args.waist_y.is_some()),
        ],
        FixtureShape::Sphere => &[
            ("--height", args.height.is_some()),
            ("--end-radius", args.end_radius.is_some()),
            ("--waist-radius", args.waist_radius.is_some()),
            ("--waist-y", args.waist_y.is_some()),
        ],
        FixtureShape::Hourglass => &[("--radius", args.radius.is_some())],
        FixtureShape::Humanoid => &[
            ("--radius", args.radius.is_some()),
            ("--height", args.height.is_some()),
            ("--end-radius", args.end_radius.is_some()),
        ],
    };
    if let Some((flag, _)) = unused.iter().find(|(_, set)| *set) {
        return Err(CliError::input(format!(
            "{flag} does not apply to a {} fixture",
            spec.kind_name()
        )));
    }
    if let Some(n) = args.n {
        spec.segments = n;
    }
    if let Some(rings) = args.rings {
        spec.rings = rings;
    }
    Ok(spec)
}

fn write_fixtures(args: &FixtureArgs) -> Result<(), CliError> {
    let spec = fixture_spec(args)?;
    let id = args.id.clone().unwrap_or_else(|| match spec.kind {
        FixtureKind::HumanoidProxy(_) => "humanoid".to_owned(),
        _ => spec.kind_name().to_owned(),
    });
    let jobs: Vec<(String, FixtureSpec)> = match args.count {
        None => vec![(id, spec)],
        Some(0) => return Err(CliError::input("--count must be at least 1")),
        Some(1) => vec![(format!("{id}_000"), spec)],
        Some(count) => (0..count)
            .map(|i| {
                let factor = 0.9 + 0.2 * i as f64 / (count - 1) as f64;
                (format!("{id}_{i:03}"), spec.scaled(factor))
            })
            .collect(),
    };
    std::fs::create_dir_all(&args.output)
        .map_err(|e| CliError::input(format!("cannot create {}: {e}", args.output.display())))?;
    for (id, spec) in &jobs {
        let fixture = generate(spec).map_err(|e| CliError::from_core(e, None))?;
        let base = args.output.join(id);
        let path = |suffix: &str| PathBuf::from(format!("{}{suffix}", base.display()));
        write_file(&path(".obj"), &write_obj(&fixture.mesh))?;
        write_file(&path(".skeleton.json"), &write_skeleton(&fixture.skeleton))?;
        let mut oracle = serde_json::to_string_pretty(&fixture.oracle).expect("oracle serializes");
        oracle.push('\n');
        write_file(&path(".oracle.json"), &oracle)?;
    }
    eprintln!("wrote {} fixture(s) to {}", jobs.len(), args.output.display());
    Ok(())
}

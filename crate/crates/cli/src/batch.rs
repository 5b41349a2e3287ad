//! Corpus annotation: one pipeline run per mesh on a bounded thread pool,
//! results merged in mesh-id order.

use std::path::{Path, PathBuf};

use girth::formats::AnnotationRecord;
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::{measure_files, mesh_id, Settings};
use crate::{CliError, MeasureOptions};

const MESH_EXT: &str = "obj";
const SKELETON_SUFFIX: &str = ".skeleton.json";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub mesh: PathBuf,
    pub skeleton: PathBuf,
}

/// One line of the `<output>.errors.json` sidecar.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchFailure {
    pub mesh_id: String,
    pub exit_code: i32,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchReport {
    pub records: Vec<AnnotationRecord>,
    pub failures: Vec<BatchFailure>,
}

/// Every `<id>.obj` in `dir`, paired with `<id>.skeleton.json`, sorted by
/// id. A missing skeleton surfaces later as that mesh's failure.
pub fn discover_corpus(dir: &Path) -> Result<Vec<CorpusEntry>, CliError> {
    let listing = std::fs::read_dir(dir)
        .map_err(|e| CliError::input(format!("cannot read corpus {}: {e}", dir.display())))?;
    let mut entries = Vec::new();
    for item in listing {
        let path = item
            .map_err(|e| CliError::input(format!("cannot read corpus {}: {e}", dir.display())))?
            .path();
        if !path.is_file() || path.extension().and_then(|e| e.to_str()) != Some(MESH_EXT) {
            continue;
        }
        let id = mesh_id(&path);
        let skeleton = dir.join(format!("{id}{SKELETON_SUFFIX}"));
        entries.push(CorpusEntry {
            id,
            mesh: path,
            skeleton,
        });
    }
    if entries.is_empty() {
        return Err(CliError::input(format!(
            "empty corpus: no .{MESH_EXT} files in {}",
            dir.display()
        )));
    }
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(entries)
}

/// Measures every entry with `jobs` worker threads. The report is the same
/// for any `jobs`.
pub(crate) fn annotate_corpus(
    entries: &[CorpusEntry],
    settings: &Settings,
    jobs: usize,
) -> Result<BatchReport, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::input(format!("cannot start {jobs} workers: {e}")))?;
    let outcomes: Vec<Result<AnnotationRecord, BatchFailure>> = pool.install(|| {
        entries
            .par_iter()
            .map(|entry| {
                measure_files(&entry.mesh, &entry.skeleton, settings)
                    .map(|out| AnnotationRecord::new(entry.id.clone(), &out.measurements))
                    .map_err(|err| {
                        log::error!("{}: {err}", entry.id);
                        BatchFailure {
                            mesh_id: entry.id.clone(),
                            exit_code: err.code,
                            message: err.message,
                        }
                    })
            })
            .collect()
    });
    let mut report = BatchReport {
        records: Vec::new(),
        failures: Vec::new(),
    };
    for outcome in outcomes {
        match outcome {
            Ok(record) => report.records.push(record),
            Err(failure) => report.failures.push(failure),
        }
    }
    Ok(report)
}

/// Library entry point for callers that do not go through the command line.
pub fn annotate_dir(dir: &Path, options: &MeasureOptions, jobs: usize) -> Result<BatchReport, CliError> {
    let settings = Settings::from_options(options)?;
    annotate_corpus(&discover_corpus(dir)?, &settings, jobs)
}

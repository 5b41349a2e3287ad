use std::fmt;

use thiserror::Error;

/// Named pipeline stage, attached to errors raised by [`crate::run_pipeline`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Validate,
    Align,
    Axilla,
    Segmentation,
    Signature,
    Measure,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Validate => "validate",
            Stage::Align => "align",
            Stage::Axilla => "axilla",
            Stage::Segmentation => "segmentation",
            Stage::Signature => "signature",
            Stage::Measure => "measure",
        };
        f.write_str(name)
    }
}

/// One of the three measured body regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Chest,
    Waist,
    Pelvis,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::Chest => "chest",
            Region::Waist => "waist",
            Region::Pelvis => "pelvis",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Text input could not be parsed. `line` is 1-based; 0 means the error
    /// is not tied to a line (e.g. malformed JSON reported by position).
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("missing joint {0}")]
    MissingJoint(String),

    #[error("joint {name} has non-finite coordinates")]
    NonFiniteJoint { name: String },

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("mesh has no vertices")]
    EmptyMesh,

    #[error("step must be positive")]
    NonPositiveStep,

    #[error("knn must be at least 1")]
    ZeroNeighbors,

    #[error("plane normal must be a finite non-zero vector")]
    InvalidNormal,

    #[error("invalid axis map: {0}")]
    InvalidAxisMap(String),

    #[error("axilla ray missed mesh")]
    AxillaRayMissed,

    #[error("{upper} (y = {upper_y}) must lie above {lower} (y = {lower_y})")]
    RegionOrder {
        upper: &'static str,
        upper_y: f64,
        lower: &'static str,
        lower_y: f64,
    },

    #[error("{0} region unsampled; decrease m")]
    RegionUnsampled(Region),

    #[error("empty cross-sections in {0} region")]
    EmptyCrossSections(Region),

    #[error("signature is empty")]
    EmptySignature,

    #[error("invalid fixture: {0}")]
    InvalidFixture(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn at(self, stage: Stage) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Innermost error with any stage wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }

    pub fn stage(&self) -> Option<Stage> {
        match self {
            Error::Stage { stage, .. } => Some(*stage),
            _ => None,
        }
    }

    /// True for errors caused by malformed input (files, flags, joint
    /// tables) as opposed to a geometric failure on well-formed input.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self.root(),
            Error::Parse { .. }
                | Error::MissingJoint(_)
                | Error::NonFiniteJoint { .. }
                | Error::NonPositiveStep
                | Error::ZeroNeighbors
                | Error::InvalidNormal
                | Error::InvalidAxisMap(_)
                | Error::InvalidFixture(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

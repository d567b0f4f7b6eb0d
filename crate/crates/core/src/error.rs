use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::text::ParseError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("generator `{name}`: {reason}")]
    InvalidGenerator { name: String, reason: &'static str },
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("degree {degree} is beyond the truncation {truncation}")]
    Truncation { degree: u32, truncation: u32 },
    #[error("invalid presentation: {0}")]
    Presentation(PresentationIssues),
    #[error("A⁺ = 0; nothing to model")]
    NothingToModel,
    #[error("d({name}) has degree {found}, expected {expected}")]
    DifferentialDegree {
        name: String,
        expected: u32,
        found: u32,
    },
    #[error("model is not standard: {0}")]
    NonStandard(String),
    #[error("integrity failure: {0}")]
    Integrity(String),
    #[error("α is keyed on `{name}` of degree {degree}, but the cell needs degree {expected}")]
    AlphaDegree {
        name: String,
        degree: u32,
        expected: u32,
    },
    #[error("unknown generator names in α: {}", .0.join(", "))]
    UnresolvedNames(Vec<String>),
    #[error("cell dimension {0} is not supported (need n ≥ 2)")]
    CellDimension(u32),
    #[error("u is zero in cohomology (η([α]) ≠ 0)")]
    UClassZero,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A single problem found while validating a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationIssue {
    LowDegreeGenerator {
        name: String,
        degree: u32,
    },
    Inhomogeneous {
        relation: usize,
    },
    ConstantRelation {
        relation: usize,
    },
    RelationAboveTruncation {
        relation: usize,
        degree: u32,
        truncation: u32,
    },
}

impl fmt::Display for PresentationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LowDegreeGenerator { name, degree } => {
                write!(f, "generator `{name}` has degree {degree} (need ≥ 2)")
            }
            Self::Inhomogeneous { relation } => {
                write!(f, "relation #{} is inhomogeneous", relation + 1)
            }
            Self::ConstantRelation { relation } => {
                write!(f, "relation #{} is a nonzero constant", relation + 1)
            }
            Self::RelationAboveTruncation {
                relation,
                degree,
                truncation,
            } => write!(
                f,
                "relation #{} has degree {degree}, beyond the truncation {truncation}",
                relation + 1
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationIssues(pub Vec<PresentationIssue>);

impl fmt::Display for PresentationIssues {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, issue) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

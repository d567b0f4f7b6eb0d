//! File formats, bundled fixtures, rendering and the subcommands behind the
//! `sullivan` binary.

pub mod fixtures;
pub mod job;
mod json;
mod render;

use std::path::PathBuf;

use sullivan::{
    build_minimal_model, even_complex_formality, even_skeleton, formality_verdict, AlphaFunctional,
    AttachmentModel, BigradedModel, CellSpec, Error, EvenComplexReport, FormalityVerdict,
    PresentedAlgebra, Status, Substitution,
};

pub use fixtures::{fixture, Fixture, FIXTURES};
pub use job::Job;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{origin}:{line}:{column}: {message}")]
    Parse {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error("unknown fixture `{id}`{}", suggestion.as_ref().map(|s| format!("; did you mean `{s}`?")).unwrap_or_default())]
    UnknownFixture {
        id: String,
        suggestion: Option<String>,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) | CliError::UnknownFixture { .. } => 64,
            CliError::Io { .. } => 66,
            CliError::Core(Error::Integrity(_)) => 70,
            CliError::Core(_) => 65,
        }
    }
}

pub fn exit_code(status: Status) -> u8 {
    match status {
        Status::Formal => 0,
        Status::NotFormal => 10,
        Status::Inconclusive => 20,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, Default)]
pub struct Request {
    pub fixture: Option<String>,
    pub input: Option<PathBuf>,
    pub truncation: Option<u32>,
    pub even_complex: Option<u32>,
    /// Overrides the cell dimension of the attach section, creating one if
    /// the job has none.
    pub cell: Option<u32>,
    /// Replaces α with an `alpha:` line given on the command line.
    pub alpha: Option<String>,
}

/// What a subcommand prints, and the process exit code.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

pub fn load(req: &Request) -> Result<Job, CliError> {
    let mut job = match (&req.fixture, &req.input) {
        (Some(id), None) => {
            let f = fixture(id)?;
            Job::parse(f.id, f.text)?
        }
        (None, Some(path)) => {
            let shown = path.display().to_string();
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: shown.clone(),
                source,
            })?;
            Job::parse(&shown, &text)?
        }
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "give either --fixture or --input, not both".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Usage(
                "one of --fixture or --input is required".into(),
            ))
        }
    };
    if req.cell.is_some() || req.alpha.is_some() {
        if job.cells.is_empty() {
            job.cells.push(job::CellJob::default());
        }
        let cell = job.cells.last_mut().unwrap();
        if let Some(n) = req.cell {
            cell.cell = Some(n);
        }
        if let Some(text) = &req.alpha {
            cell.alpha = job::parse_alpha("--alpha", text)?;
        }
    }
    if req.even_complex.is_some() {
        job.even_complex = req.even_complex;
    }
    Ok(job)
}

/// The standardized model with the job's aliases applied.
pub struct Prepared {
    pub algebra: PresentedAlgebra,
    pub model: BigradedModel,
    pub substitutions: Vec<Substitution>,
    /// `Some(k)` when this is the 2k-skeleton of an even complex.
    pub even: Option<u32>,
}

pub fn prepare(job: &Job, truncation: Option<u32>) -> Result<Prepared, CliError> {
    let (algebra, n, even) = match job.even_complex {
        Some(k) => {
            let a = job.presentation(job.model_truncation(truncation)?.max(4 * k))?;
            (even_skeleton(&a, k)?, 4 * k, Some(k))
        }
        None => {
            let n = job.model_truncation(truncation)?;
            (job.presentation(n)?, n, None)
        }
    };
    let mut model = build_minimal_model(&algebra, n)?;
    let substitutions = model.standardize()?;
    for (old, new) in &job.aliases {
        model.rename(old, new)?;
    }
    Ok(Prepared {
        algebra,
        model,
        substitutions,
        even,
    })
}

pub fn cmd_model(job: &Job, truncation: Option<u32>, format: Format) -> Result<Output, CliError> {
    let p = prepare(job, truncation)?;
    let text = match format {
        Format::Text => render::model(&p)?,
        Format::Json => json::to_string(json::model(&p)?),
    };
    Ok(Output::ok(text))
}

fn even_report(job: &Job, k: u32, truncation: Option<u32>) -> Result<EvenComplexReport, CliError> {
    let a = job.presentation(job.model_truncation(truncation)?.max(4 * k))?;
    let mut cells = Vec::new();
    for (i, c) in job.cells.iter().enumerate() {
        let mut aliases = if i == 0 {
            job.aliases.clone()
        } else {
            Vec::new()
        };
        aliases.extend(c.aliases.iter().cloned());
        cells.push(CellSpec {
            aliases,
            alpha: job.alpha_spec(c)?,
        });
    }
    if cells.is_empty() {
        return Err(CliError::Usage(format!(
            "{}: no `attach:` section",
            job.origin
        )));
    }
    Ok(even_complex_formality(&a, k, &cells)?)
}

/// A single attachment resolved against the prepared model.
pub struct Attached {
    pub prepared: Prepared,
    pub alpha: AlphaFunctional,
}

pub fn attach(job: &Job, truncation: Option<u32>) -> Result<Attached, CliError> {
    let cell = job.single_cell()?;
    let mut prepared = prepare(job, truncation)?;
    for (old, new) in &cell.aliases {
        prepared.model.rename(old, new)?;
    }
    let alpha = AlphaFunctional::resolve(&prepared.model, &job.alpha_spec(cell)?)?;
    Ok(Attached { prepared, alpha })
}

pub fn cmd_attach(job: &Job, truncation: Option<u32>, format: Format) -> Result<Output, CliError> {
    if let Some(k) = job.even_complex {
        let report = even_report(job, k, truncation)?;
        let text = match format {
            Format::Text => render::even_attach(&report)?,
            Format::Json => json::to_string(json::even_attach(&report)?),
        };
        return Ok(Output::ok(text));
    }
    let a = attach(job, truncation)?;
    let att = AttachmentModel::new(&a.prepared.model, a.alpha.clone())?;
    let text = match format {
        Format::Text => render::attach(&a.prepared, &att)?,
        Format::Json => json::to_string(json::attach(&a.prepared, &att)?),
    };
    Ok(Output::ok(text))
}

pub fn verdict(
    job: &Job,
    truncation: Option<u32>,
) -> Result<(Attached, FormalityVerdict), CliError> {
    let a = attach(job, truncation)?;
    let v = formality_verdict(&a.prepared.model, &a.alpha)?;
    Ok((a, v))
}

pub fn cmd_verdict(job: &Job, truncation: Option<u32>, format: Format) -> Result<Output, CliError> {
    if let Some(k) = job.even_complex {
        let report = even_report(job, k, truncation)?;
        let text = match format {
            Format::Text => render::even_verdict(&report),
            Format::Json => json::to_string(json::even_verdict(&report)),
        };
        return Ok(Output {
            text,
            code: exit_code(report.verdict.status),
        });
    }
    let (a, v) = verdict(job, truncation)?;
    let text = match format {
        Format::Text => render::verdict(&a.prepared.model, &a.alpha, &v),
        Format::Json => json::to_string(json::verdict(&a.prepared.model, &a.alpha, &v)),
    };
    Ok(Output {
        text,
        code: exit_code(v.status),
    })
}

pub fn cmd_examples(format: Format) -> Output {
    Output::ok(match format {
        Format::Text => render::examples(),
        Format::Json => json::to_string(json::examples()),
    })
}

//! The sectioned job format.
//!
//! ```text
//! # comment
//! algebra:
//!   generators: a1:2, a2:2
//!   relations: a1^2, a2^2
//!   truncation: 4
//!   even-complex: 1
//! aliases:
//!   v3_s1_2 = b12
//! attach:
//!   cell: 4
//!   alias: v3_s1_1 = b1
//!   alpha: b12 = 1
//! ```
//!
//! `generators` and `relations` may repeat and accumulate. Each `attach:`
//! section describes one cell; several are only allowed for even complexes.

use sullivan::{
    parse_element, parse_scalar, AlphaSpec, Error, FreeAlgebra, Generator, PresentedAlgebra, Scalar,
};

use crate::CliError;

/// A value together with where it was read.
#[derive(Clone, Debug)]
pub struct Spanned<T> {
    pub value: T,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, Default)]
pub struct CellJob {
    pub line: usize,
    pub cell: Option<u32>,
    pub alpha: Vec<(String, Scalar)>,
    pub aliases: Vec<(String, String)>,
}

#[derive(Clone, Debug, Default)]
pub struct Job {
    pub origin: String,
    pub generators: Vec<Spanned<(String, u32)>>,
    pub relations: Vec<Spanned<String>>,
    /// Model truncation `N`; the algebra is kept through `N + 1`.
    pub truncation: Option<u32>,
    pub even_complex: Option<u32>,
    pub aliases: Vec<(String, String)>,
    pub cells: Vec<CellJob>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Algebra,
    Aliases,
    Attach,
}

struct LineCtx<'a> {
    origin: &'a str,
    line: usize,
}

impl LineCtx<'_> {
    fn err(&self, column: usize, message: impl Into<String>) -> CliError {
        CliError::Parse {
            origin: self.origin.to_string(),
            line: self.line,
            column,
            message: message.into(),
        }
    }
}

/// 1-based column of the char at byte offset `byte` in `line`.
fn column_of(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

/// Splits `value` (starting at byte `offset` in `line`) on commas, keeping
/// each trimmed piece with its column.
fn pieces<'a>(line: &'a str, offset: usize, value: &'a str) -> Vec<(&'a str, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for part in value.split(',') {
        let lead = part.len() - part.trim_start().len();
        let trimmed = part.trim();
        if !trimmed.is_empty() {
            out.push((trimmed, column_of(line, offset + start + lead)));
        }
        start += part.len() + 1;
    }
    out
}

fn identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_u32(ctx: &LineCtx<'_>, text: &str, column: usize, what: &str) -> Result<u32, CliError> {
    text.trim().parse().map_err(|_| {
        ctx.err(
            column,
            format!("expected a non-negative integer for {what}, found `{text}`"),
        )
    })
}

/// `old = new`, checking both sides are identifiers.
fn parse_alias(ctx: &LineCtx<'_>, text: &str, column: usize) -> Result<(String, String), CliError> {
    let Some((old, new)) = text.split_once('=') else {
        return Err(ctx.err(column, "expected `old = new`"));
    };
    let (old, new) = (old.trim(), new.trim());
    if !identifier(old) {
        return Err(ctx.err(column, format!("`{old}` is not a generator name")));
    }
    if !identifier(new) {
        let at = column + text.find('=').unwrap_or(0) + 1;
        return Err(ctx.err(at, format!("`{new}` is not a generator name")));
    }
    Ok((old.to_string(), new.to_string()))
}

/// `name = value, ...` with rational values.
fn alpha_values(
    ctx: &LineCtx<'_>,
    raw: &str,
    offset: usize,
    value: &str,
) -> Result<Vec<(String, Scalar)>, CliError> {
    let mut out = Vec::new();
    for (piece, column) in pieces(raw, offset, value) {
        let Some((name, c)) = piece.split_once('=') else {
            return Err(ctx.err(column, format!("expected `name = value`, found `{piece}`")));
        };
        let name = name.trim();
        if !identifier(name) {
            return Err(ctx.err(column, format!("`{name}` is not a generator name")));
        }
        let vstart = column + piece[..piece.find('=').unwrap()].chars().count() + 1;
        let lead = c.len() - c.trim_start().len();
        let c =
            parse_scalar(c.trim()).map_err(|e| ctx.err(vstart + lead + e.column - 1, e.message))?;
        out.push((name.to_string(), c));
    }
    Ok(out)
}

/// An α list given outside a job file, e.g. on the command line.
pub fn parse_alpha(origin: &str, text: &str) -> Result<Vec<(String, Scalar)>, CliError> {
    let ctx = LineCtx { origin, line: 1 };
    alpha_values(&ctx, text, 0, text)
}

impl Job {
    pub fn parse(origin: &str, text: &str) -> Result<Job, CliError> {
        let mut job = Job {
            origin: origin.to_string(),
            ..Job::default()
        };
        let mut section = Section::None;
        for (i, raw) in text.lines().enumerate() {
            let ctx = LineCtx {
                origin,
                line: i + 1,
            };
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            let indent = content.len() - content.trim_start().len();
            let col0 = column_of(raw, indent);
            if let Some(name) = trimmed.strip_suffix(':').filter(|n| identifier(n)) {
                section = match name {
                    "algebra" => Section::Algebra,
                    "aliases" => Section::Aliases,
                    "attach" => {
                        job.cells.push(CellJob {
                            line: ctx.line,
                            ..CellJob::default()
                        });
                        Section::Attach
                    }
                    _ => return Err(ctx.err(col0, format!("unknown section `{name}`"))),
                };
                continue;
            }
            match section {
                Section::None => {
                    return Err(ctx.err(
                        col0,
                        "expected a section header (`algebra:`, `aliases:` or `attach:`)",
                    ))
                }
                Section::Aliases => job.aliases.push(parse_alias(&ctx, trimmed, col0)?),
                Section::Algebra | Section::Attach => {
                    let Some(colon) = trimmed.find(':') else {
                        return Err(ctx.err(col0, "expected `key: value`"));
                    };
                    let key = trimmed[..colon].trim();
                    let offset = indent + colon + 1;
                    let value = &content[offset..];
                    if section == Section::Algebra {
                        job.algebra_entry(&ctx, raw, key, offset, value, col0)?;
                    } else {
                        job.attach_entry(&ctx, raw, key, offset, value, col0)?;
                    }
                }
            }
        }
        Ok(job)
    }

    fn algebra_entry(
        &mut self,
        ctx: &LineCtx<'_>,
        raw: &str,
        key: &str,
        offset: usize,
        value: &str,
        col0: usize,
    ) -> Result<(), CliError> {
        let vcol = column_of(raw, offset + value.len() - value.trim_start().len());
        match key {
            "generators" => {
                for (piece, column) in pieces(raw, offset, value) {
                    let Some((name, degree)) = piece.split_once(':') else {
                        return Err(
                            ctx.err(column, format!("expected `name:degree`, found `{piece}`"))
                        );
                    };
                    let name = name.trim();
                    if !identifier(name) {
                        return Err(ctx.err(column, format!("`{name}` is not a generator name")));
                    }
                    let degree = parse_u32(
                        ctx,
                        degree,
                        column + piece.find(':').unwrap() + 1,
                        "a degree",
                    )?;
                    self.generators.push(Spanned {
                        value: (name.to_string(), degree),
                        line: ctx.line,
                        column,
                    });
                }
            }
            "relations" | "relation" => {
                for (piece, column) in pieces(raw, offset, value) {
                    self.relations.push(Spanned {
                        value: piece.to_string(),
                        line: ctx.line,
                        column,
                    });
                }
            }
            "truncation" => self.truncation = Some(parse_u32(ctx, value, vcol, "the truncation")?),
            "even-complex" => self.even_complex = Some(parse_u32(ctx, value, vcol, "k")?),
            _ => return Err(ctx.err(col0, format!("unknown algebra key `{key}`"))),
        }
        Ok(())
    }

    fn attach_entry(
        &mut self,
        ctx: &LineCtx<'_>,
        raw: &str,
        key: &str,
        offset: usize,
        value: &str,
        col0: usize,
    ) -> Result<(), CliError> {
        let vcol = column_of(raw, offset + value.len() - value.trim_start().len());
        let cell = self.cells.last_mut().expect("attach section opened");
        match key {
            "cell" => cell.cell = Some(parse_u32(ctx, value, vcol, "the cell dimension")?),
            "alpha" => cell.alpha.extend(alpha_values(ctx, raw, offset, value)?),
            "alias" | "aliases" => {
                for (piece, column) in pieces(raw, offset, value) {
                    cell.aliases.push(parse_alias(ctx, piece, column)?);
                }
            }
            _ => return Err(ctx.err(col0, format!("unknown attach key `{key}`"))),
        }
        Ok(())
    }

    fn located(&self, line: usize, column: usize, message: impl Into<String>) -> CliError {
        CliError::Parse {
            origin: self.origin.clone(),
            line,
            column,
            message: message.into(),
        }
    }

    /// Model truncation: the override if given, else the file's.
    pub fn model_truncation(&self, over: Option<u32>) -> Result<u32, CliError> {
        over.or(self.truncation).ok_or_else(|| {
            CliError::Usage(format!(
                "{}: no `truncation` in the algebra section",
                self.origin
            ))
        })
    }

    /// The presented algebra, kept through degree `n + 1` for a model
    /// truncated at `n`.
    pub fn presentation(&self, n: u32) -> Result<PresentedAlgebra, CliError> {
        let mut free = FreeAlgebra::new();
        for g in &self.generators {
            let (name, degree) = &g.value;
            free.push(Generator::new(name.clone(), *degree, 0))
                .map_err(|e| self.located(g.line, g.column, e.to_string()))?;
        }
        if free.is_empty() {
            return Err(CliError::Core(Error::NothingToModel));
        }
        let mut relations = Vec::new();
        for r in &self.relations {
            let x = parse_element(&free, &r.value)
                .map_err(|e| self.located(r.line, r.column + e.column - 1, e.message))?;
            relations.push(x);
        }
        Ok(PresentedAlgebra::new(free, relations, n + 1)?)
    }

    pub fn alpha_spec(&self, cell: &CellJob) -> Result<AlphaSpec, CliError> {
        let n = cell
            .cell
            .ok_or_else(|| self.located(cell.line, 1, "attach section without `cell`"))?;
        Ok(AlphaSpec {
            cell: n,
            values: cell.alpha.clone(),
        })
    }

    /// The single cell of a plain attachment job.
    pub fn single_cell(&self) -> Result<&CellJob, CliError> {
        match self.cells.as_slice() {
            [] => Err(CliError::Usage(format!(
                "{}: no `attach:` section",
                self.origin
            ))),
            [cell] => Ok(cell),
            [_, second, ..] => Err(self.located(
                second.line,
                1,
                "several `attach:` sections need even-complex mode",
            )),
        }
    }
}

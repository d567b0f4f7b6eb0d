//! Plain-text output.

use std::fmt::Write;

use num_traits::{One, Signed, Zero};
use sullivan::dgca::ClassProduct;
use sullivan::formality::CellStep;
use sullivan::{
    AlphaFunctional, AttachmentElement, AttachmentModel, BigradedModel, CohomologyClass, Element,
    EvenComplexReport, FormalityVerdict, GenId, PresentedAlgebra, Scalar, Witness,
};

use crate::{CliError, Prepared, FIXTURES};

/// Pads columns and joins them with ` | `.
pub(crate) fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str(" | ");
            }
            line.push_str(cell);
            if c + 1 < row.len() {
                line.extend(std::iter::repeat_n(' ', widths[c] - cell.chars().count()));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub(crate) fn show(model: &BigradedModel, x: &Element) -> String {
    model.free().display(x).to_string()
}

pub(crate) fn name(model: &BigradedModel, g: GenId) -> &str {
    &model.generator(g).name
}

/// `x + c*u_alpha`, or either part alone.
pub(crate) fn show_attachment(model: &BigradedModel, x: &AttachmentElement) -> String {
    let u = if x.u.is_zero() {
        None
    } else {
        Some(format!("{}u_alpha", coefficient(&x.u)))
    };
    match (x.base.is_zero(), u) {
        (true, None) => "0".into(),
        (true, Some(u)) => u,
        (false, None) => show(model, &x.base),
        (false, Some(u)) => match u.strip_prefix('-') {
            Some(rest) => format!("{} - {rest}", show(model, &x.base)),
            None => format!("{} + {u}", show(model, &x.base)),
        },
    }
}

/// Multiplier prefix: empty for 1, `-` for -1, else `c*`.
fn coefficient(c: &Scalar) -> String {
    if c.is_one() {
        String::new()
    } else if (-c).is_one() {
        "-".into()
    } else {
        format!("{c}*")
    }
}

pub(crate) fn alpha_line(model: &BigradedModel, alpha: &AlphaFunctional) -> String {
    if alpha.is_zero() {
        return "0".into();
    }
    alpha
        .support()
        .map(|(g, c)| {
            let gen = model.generator(g);
            format!(
                "{} = {c} (degree {}, stage {})",
                gen.name, gen.degree, gen.stage
            )
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// `Σ cᵢ [leftᵢ]*[rightᵢ]`.
pub(crate) fn product_sum(model: &BigradedModel, terms: &[(Scalar, ClassProduct)]) -> String {
    let mut out = String::new();
    for (i, (c, p)) in terms.iter().enumerate() {
        let factor = format!(
            "[{}]*[{}]",
            show(model, &p.left.representative),
            show(model, &p.right.representative)
        );
        let (neg, abs) = (c.is_negative(), c.abs());
        let body = format!("{}{factor}", coefficient(&abs));
        match (i, neg) {
            (0, true) => write!(out, "-{body}"),
            (0, false) => write!(out, "{body}"),
            (_, true) => write!(out, " - {body}"),
            (_, false) => write!(out, " + {body}"),
        }
        .unwrap();
    }
    out
}

/// The cocycle `Σ cᵢ leftᵢ·rightᵢ`, which represents `u`.
pub(crate) fn product_representative(
    model: &BigradedModel,
    terms: &[(Scalar, ClassProduct)],
) -> Element {
    let mut z = Element::zero();
    for (c, p) in terms {
        let lr = model
            .free()
            .multiply(&p.left.representative, &p.right.representative);
        z.add_scaled(&lr, c);
    }
    z
}

/// `-[x1*x2*x3]` for a single term, `[...]` otherwise.
pub(crate) fn bracketed(model: &BigradedModel, z: &Element) -> String {
    let mut terms = z.terms();
    if let (Some((m, c)), None) = (terms.next(), terms.next()) {
        return format!("{}[{}]", coefficient(c), model.free().display_monomial(m));
    }
    format!("[{}]", show(model, z))
}

fn dims_rows(label: &str, dims: &[usize]) -> Vec<String> {
    std::iter::once(label.to_string())
        .chain(dims.iter().map(usize::to_string))
        .collect()
}

fn degree_header(top: u32) -> Vec<String> {
    std::iter::once("m".to_string())
        .chain((0..=top).map(|m| m.to_string()))
        .collect()
}

pub(crate) fn algebra_dims(a: &PresentedAlgebra, top: u32) -> Result<Vec<usize>, CliError> {
    (0..=top)
        .map(|m| Ok(a.graded_component(m)?.dim()))
        .collect()
}

pub(crate) fn presentation(a: &PresentedAlgebra) -> (String, String) {
    let free = a.free();
    let gens = free
        .generators()
        .iter()
        .map(|g| format!("{}:{}", g.name, g.degree))
        .collect::<Vec<_>>()
        .join(", ");
    let rels = a
        .relations()
        .iter()
        .map(|r| free.display(r).to_string())
        .collect::<Vec<_>>()
        .join(", ");
    (gens, if rels.is_empty() { "none".into() } else { rels })
}

pub fn model(p: &Prepared) -> Result<String, CliError> {
    let m = &p.model;
    let top = m.truncation();
    let mut out = String::new();
    match p.even {
        Some(k) => writeln!(out, "model of the {}-skeleton through degree {top}", 2 * k),
        None => writeln!(out, "model through degree {top}"),
    }
    .unwrap();
    writeln!(
        out,
        "lower gradation: bigraded construction, standardized ({} substitutions)",
        p.substitutions.len()
    )
    .unwrap();
    out.push('\n');
    let mut rows = vec![vec!["deg".to_string(), "dim V^i".into(), "basis".into()]];
    for deg in 2..=top {
        let gens = m.generators_of_degree(deg);
        if gens.is_empty() {
            continue;
        }
        let names: Vec<&str> = gens.iter().map(|&g| name(m, g)).collect();
        rows.push(vec![
            deg.to_string(),
            gens.len().to_string(),
            names.join(", "),
        ]);
    }
    out.push_str(&table(&rows));
    out.push('\n');
    let mut rows = vec![vec![
        "generator".to_string(),
        "deg".into(),
        "stage".into(),
        "differential".into(),
        "rho".into(),
    ]];
    for deg in 2..=top {
        for g in m.generators_of_degree(deg) {
            let gen = m.generator(g);
            rows.push(vec![
                gen.name.clone(),
                gen.degree.to_string(),
                gen.stage.to_string(),
                show(m, m.differential(g)),
                show(m, m.rho(g)),
            ]);
        }
    }
    out.push_str(&table(&rows));
    out.push('\n');
    let mut h = Vec::new();
    for deg in 0..=top {
        h.push(m.dgca().cohomology(deg)?.dim());
    }
    out.push_str(&table(&[
        degree_header(top),
        dims_rows("dim A^m", &algebra_dims(&p.algebra, top)?),
        dims_rows("dim H^m(ΛV)", &h),
    ]));
    Ok(out)
}

/// The `u` paragraph shared by `attach` and the even-complex report.
fn u_report(out: &mut String, att: &AttachmentModel<'_>) -> Result<(), CliError> {
    let model = att.base();
    let n = att.n();
    let u = att.u_class()?;
    if u.is_zero() {
        let stage_zero: Vec<&str> = att
            .alpha()
            .support()
            .filter(|(g, _)| model.generator(*g).stage == 0)
            .map(|(g, _)| name(model, g))
            .collect();
        writeln!(
            out,
            "u = 0 in H^{n}: α is nonzero on stage-0 generators {}",
            stage_zero.join(", ")
        )
        .unwrap();
        return Ok(());
    }
    let hn = att.cohomology(n)?.dim();
    let dec = att.is_u_decomposable()?;
    match dec.witness {
        Some(terms) => {
            let z = product_representative(model, &terms);
            writeln!(out, "u = {} (decomposable)", bracketed(model, &z)).unwrap();
            writeln!(out, "witness: u = {}", product_sum(model, &terms)).unwrap();
        }
        None if hn == 1 => writeln!(out, "u spans H^{n}, indecomposable").unwrap(),
        None => writeln!(
            out,
            "u ≠ 0 in H^{n} (dim {hn}), indecomposable; products span {} dimensions",
            dec.subspace.dim()
        )
        .unwrap(),
    }
    Ok(())
}

pub fn attach(p: &Prepared, att: &AttachmentModel<'_>) -> Result<String, CliError> {
    let model = &p.model;
    let top = model.truncation();
    let n = att.n();
    let mut out = String::new();
    writeln!(
        out,
        "attach e^{n} along α: {}",
        alpha_line(model, att.alpha())
    )
    .unwrap();
    if att.alpha().coerced {
        writeln!(out, "a 2-cell attaches along π_1 = 0, so α = 0").unwrap();
    }
    writeln!(out, "model through degree {top}").unwrap();
    out.push('\n');
    let mut h = Vec::new();
    for m in 0..=top {
        h.push(att.cohomology(m)?.dim());
    }
    out.push_str(&table(&[
        degree_header(top),
        dims_rows("dim A^m", &algebra_dims(&p.algebra, top)?),
        dims_rows("dim H^m(M_α)", &h),
    ]));
    out.push('\n');
    u_report(&mut out, att)?;
    Ok(out)
}

fn names(model: &BigradedModel, gens: &[GenId]) -> String {
    gens.iter()
        .map(|&g| format!("{} (stage {})", name(model, g), model.generator(g).stage))
        .collect::<Vec<_>>()
        .join(", ")
}

fn u_line(model: &BigradedModel, u: &CohomologyClass<AttachmentElement>) -> String {
    format!(
        "[{}] ≠ 0 in H^{}",
        show_attachment(model, &u.representative),
        u.degree
    )
}

/// Status line and witness, without assumptions.
fn verdict_body(out: &mut String, model: &BigradedModel, v: &FormalityVerdict) {
    writeln!(
        out,
        "verdict: {}, clause {}",
        v.status.as_str(),
        v.clause.label()
    )
    .unwrap();
    match &v.witness {
        Witness::ZeroAlpha { coerced } => {
            writeln!(
                out,
                "  α = 0 in π ⊗ Q (zero or torsion), u is indecomposable"
            )
            .unwrap();
            if *coerced {
                writeln!(out, "  a 2-cell attaches along π_1 = 0").unwrap();
            }
        }
        Witness::Decomposition { u, terms } => {
            writeln!(out, "  u = {}", u_line(model, u)).unwrap();
            writeln!(
                out,
                "  u = {} = {}",
                bracketed(model, &product_representative(model, terms)),
                product_sum(model, terms)
            )
            .unwrap();
            writeln!(out, "  α is special: its support lies in stage 1").unwrap();
        }
        Witness::IndecomposableU { u } => {
            writeln!(
                out,
                "  u = {}, outside the span of products",
                u_line(model, u)
            )
            .unwrap();
        }
        Witness::NonSpecial {
            violators,
            u,
            terms,
        } => {
            writeln!(
                out,
                "  α is not special: nonzero on {}",
                names(model, violators)
            )
            .unwrap();
            writeln!(out, "  u = {}", u_line(model, u)).unwrap();
            writeln!(
                out,
                "  u = {} = {} (decomposable)",
                bracketed(model, &product_representative(model, terms)),
                product_sum(model, terms)
            )
            .unwrap();
            writeln!(
                out,
                "  the criterion does not decide a non-special α with decomposable u"
            )
            .unwrap();
        }
        Witness::HurewiczNonvanishing { generators } => {
            writeln!(
                out,
                "  η([α]) ≠ 0: α is nonzero on {}",
                names(model, generators)
            )
            .unwrap();
            writeln!(out, "  u = 0 in H^n, outside the criterion").unwrap();
        }
        Witness::Cells(_) => {}
    }
}

fn assumptions(out: &mut String, v: &FormalityVerdict) {
    writeln!(out, "assumptions:").unwrap();
    for a in &v.assumptions {
        writeln!(out, "  - {a}").unwrap();
    }
}

pub fn verdict(model: &BigradedModel, alpha: &AlphaFunctional, v: &FormalityVerdict) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "attach e^{} along α: {}",
        alpha.n,
        alpha_line(model, alpha)
    )
    .unwrap();
    verdict_body(&mut out, model, v);
    assumptions(&mut out, v);
    out
}

fn step_header(out: &mut String, i: usize, step: &CellStep) {
    writeln!(
        out,
        "cell {}: e^{} along α: {}",
        i + 1,
        step.alpha.n,
        alpha_line(&step.model, &step.alpha)
    )
    .unwrap();
}

fn step_presentation(out: &mut String, step: &CellStep) {
    let (gens, rels) = presentation(&step.presentation);
    writeln!(
        out,
        "  H* after the cell: generators {gens}; relations {rels}"
    )
    .unwrap();
    let dims: Vec<String> = step.dims.iter().map(usize::to_string).collect();
    writeln!(
        out,
        "  dim H^m, m = 0..{}: {}",
        step.dims.len() - 1,
        dims.join(" ")
    )
    .unwrap();
}

fn final_lines(out: &mut String, report: &EvenComplexReport) {
    let (gens, rels) = presentation(&report.presentation);
    writeln!(
        out,
        "final presentation: generators {gens}; relations {rels}"
    )
    .unwrap();
    writeln!(
        out,
        "agrees with the input through degree {}: {}",
        4 * report.k,
        if report.matches_input { "yes" } else { "no" }
    )
    .unwrap();
}

pub fn even_attach(report: &EvenComplexReport) -> Result<String, CliError> {
    let mut out = String::new();
    writeln!(
        out,
        "even complex, k = {}: cells attached in order to the {}-skeleton",
        report.k,
        2 * report.k
    )
    .unwrap();
    for (i, step) in report.steps.iter().enumerate() {
        out.push('\n');
        step_header(&mut out, i, step);
        let att = AttachmentModel::new(&step.model, step.alpha.clone())?;
        let mut body = String::new();
        u_report(&mut body, &att)?;
        for line in body.lines() {
            writeln!(out, "  {line}").unwrap();
        }
        step_presentation(&mut out, step);
    }
    out.push('\n');
    final_lines(&mut out, report);
    Ok(out)
}

pub fn even_verdict(report: &EvenComplexReport) -> String {
    let mut out = String::new();
    let v = &report.verdict;
    writeln!(
        out,
        "verdict: {}, clause {} (k = {}, {} cells)",
        v.status.as_str(),
        v.clause.label(),
        report.k,
        report.steps.len()
    )
    .unwrap();
    writeln!(
        out,
        "  2k-skeleton: V₀ = V^{}, V_(≥2) ∩ V^{} = 0",
        2 * report.k,
        4 * report.k - 1
    )
    .unwrap();
    for (i, step) in report.steps.iter().enumerate() {
        out.push('\n');
        step_header(&mut out, i, step);
        let mut body = String::new();
        verdict_body(&mut body, &step.model, &step.verdict);
        for line in body.lines() {
            writeln!(out, "  {line}").unwrap();
        }
        step_presentation(&mut out, step);
    }
    out.push('\n');
    final_lines(&mut out, report);
    assumptions(&mut out, v);
    if let Some(first) = report.steps.first() {
        for a in &first.verdict.assumptions {
            if !v.assumptions.contains(a) {
                writeln!(out, "  - {a}").unwrap();
            }
        }
    }
    out
}

pub fn examples() -> String {
    let mut rows = vec![vec![
        "id".to_string(),
        "expected".into(),
        "description".into(),
    ]];
    for f in FIXTURES {
        rows.push(vec![
            f.id.to_string(),
            f.expected.unwrap_or("model only").to_string(),
            f.title.to_string(),
        ]);
    }
    let mut out = table(&rows);
    out.push('\n');
    for f in FIXTURES {
        writeln!(out, "{}: {}", f.id, f.source).unwrap();
    }
    out
}

//! Machine-readable output, versioned by a top-level `schema` field.

use serde_json::{json, Map, Value};
use sullivan::dgca::ClassProduct;
use sullivan::{
    AlphaFunctional, AttachmentElement, AttachmentModel, BigradedModel, CohomologyClass,
    EvenComplexReport, FormalityVerdict, GenId, PresentedAlgebra, Scalar, Witness,
};

use crate::render::{algebra_dims, bracketed, name, product_representative, show, show_attachment};
use crate::{CliError, Prepared, FIXTURES};

pub const SCHEMA: u32 = 1;

pub fn to_string(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn envelope(command: &str, body: Value) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("command".into(), json!(command));
    if let Value::Object(fields) = body {
        out.extend(fields);
    }
    Value::Object(out)
}

fn scalar(c: &Scalar) -> Value {
    json!(c.to_string())
}

fn generator(model: &BigradedModel, g: GenId) -> Value {
    let gen = model.generator(g);
    json!({"name": gen.name, "degree": gen.degree, "stage": gen.stage})
}

fn alpha(model: &BigradedModel, a: &AlphaFunctional) -> Value {
    let values: Map<String, Value> = a
        .support()
        .map(|(g, c)| (name(model, g).to_string(), scalar(c)))
        .collect();
    json!({"cell": a.n, "values": values, "coerced": a.coerced})
}

fn class(model: &BigradedModel, u: &CohomologyClass<AttachmentElement>) -> Value {
    json!({
        "degree": u.degree,
        "representative": show_attachment(model, &u.representative),
        "coordinates": u.coordinates.iter().map(scalar).collect::<Vec<_>>(),
    })
}

fn terms(model: &BigradedModel, terms: &[(Scalar, ClassProduct)]) -> Value {
    let list: Vec<Value> = terms
        .iter()
        .map(|(c, p)| {
            json!({
                "coefficient": scalar(c),
                "left": show(model, &p.left.representative),
                "right": show(model, &p.right.representative),
            })
        })
        .collect();
    json!({
        "representative": bracketed(model, &product_representative(model, terms)),
        "products": list,
    })
}

fn presentation(a: &PresentedAlgebra) -> Value {
    let free = a.free();
    json!({
        "generators": free.generators().iter().map(|g| json!({"name": g.name, "degree": g.degree})).collect::<Vec<_>>(),
        "relations": a.relations().iter().map(|r| free.display(r).to_string()).collect::<Vec<_>>(),
    })
}

pub fn witness(model: &BigradedModel, w: &Witness) -> Value {
    match w {
        Witness::ZeroAlpha { coerced } => json!({"kind": "zero-alpha", "coerced": coerced}),
        Witness::Decomposition { u, terms: t } => json!({
            "kind": "decomposition",
            "u": class(model, u),
            "decomposition": terms(model, t),
        }),
        Witness::IndecomposableU { u } => json!({"kind": "indecomposable-u", "u": class(model, u)}),
        Witness::NonSpecial {
            violators,
            u,
            terms: t,
        } => json!({
            "kind": "non-special",
            "violators": violators.iter().map(|&g| generator(model, g)).collect::<Vec<_>>(),
            "u": class(model, u),
            "decomposition": terms(model, t),
        }),
        Witness::HurewiczNonvanishing { generators } => json!({
            "kind": "hurewicz-nonvanishing",
            "generators": generators.iter().map(|&g| generator(model, g)).collect::<Vec<_>>(),
        }),
        // per-cell witnesses need their own models; see `even_verdict`
        Witness::Cells(cells) => json!({"kind": "cells", "count": cells.len()}),
    }
}

pub fn verdict_value(model: &BigradedModel, v: &FormalityVerdict) -> Value {
    json!({
        "status": v.status.as_str(),
        "clause": v.clause.label(),
        "witness": witness(model, &v.witness),
        "assumptions": v.assumptions,
    })
}

pub fn model(p: &Prepared) -> Result<Value, CliError> {
    let m = &p.model;
    let top = m.truncation();
    let mut gens = Vec::new();
    for deg in 2..=top {
        for g in m.generators_of_degree(deg) {
            let gen = m.generator(g);
            gens.push(json!({
                "name": gen.name,
                "degree": gen.degree,
                "stage": gen.stage,
                "differential": show(m, m.differential(g)),
                "rho": show(m, m.rho(g)),
            }));
        }
    }
    let mut h = Vec::new();
    for deg in 0..=top {
        h.push(m.dgca().cohomology(deg)?.dim());
    }
    Ok(envelope(
        "model",
        json!({
            "truncation": top,
            "even_complex": p.even,
            "algebra": presentation(&p.algebra),
            "substitutions": p.substitutions.len(),
            "generators": gens,
            "dims": {"algebra": algebra_dims(&p.algebra, top)?, "model": h},
        }),
    ))
}

fn u_value(att: &AttachmentModel<'_>) -> Result<Value, CliError> {
    let model = att.base();
    let u = att.u_class()?;
    if u.is_zero() {
        return Ok(json!({"zero": true}));
    }
    let dec = att.is_u_decomposable()?;
    Ok(json!({
        "zero": false,
        "class": class(model, &u),
        "decomposable": dec.decomposable,
        "products_dim": dec.subspace.dim(),
        "decomposition": dec.witness.as_deref().map(|t| terms(model, t)),
    }))
}

pub fn attach(p: &Prepared, att: &AttachmentModel<'_>) -> Result<Value, CliError> {
    let top = p.model.truncation();
    let mut h = Vec::new();
    for m in 0..=top {
        h.push(att.cohomology(m)?.dim());
    }
    Ok(envelope(
        "attach",
        json!({
            "truncation": top,
            "alpha": alpha(&p.model, att.alpha()),
            "dims": {"algebra": algebra_dims(&p.algebra, top)?, "attachment": h},
            "u": u_value(att)?,
        }),
    ))
}

pub fn verdict(model: &BigradedModel, a: &AlphaFunctional, v: &FormalityVerdict) -> Value {
    envelope(
        "verdict",
        json!({"alpha": alpha(model, a), "verdict": verdict_value(model, v)}),
    )
}

fn cells(report: &EvenComplexReport, u: bool) -> Result<Vec<Value>, CliError> {
    report
        .steps
        .iter()
        .map(|step| {
            let mut cell = json!({
                "alpha": alpha(&step.model, &step.alpha),
                "verdict": verdict_value(&step.model, &step.verdict),
                "presentation": presentation(&step.presentation),
                "dims": step.dims,
            });
            if u {
                let att = AttachmentModel::new(&step.model, step.alpha.clone())?;
                cell["u"] = u_value(&att)?;
            }
            Ok(cell)
        })
        .collect()
}

pub fn even_attach(report: &EvenComplexReport) -> Result<Value, CliError> {
    Ok(envelope(
        "attach",
        json!({
            "even_complex": report.k,
            "cells": cells(report, true)?,
            "presentation": presentation(&report.presentation),
            "matches_input": report.matches_input,
        }),
    ))
}

pub fn even_verdict(report: &EvenComplexReport) -> Value {
    let v = &report.verdict;
    let cells = cells(report, false).expect("verdict cells do not rebuild attachments");
    envelope(
        "verdict",
        json!({
            "even_complex": report.k,
            "verdict": {
                "status": v.status.as_str(),
                "clause": v.clause.label(),
                "witness": {"kind": "cells", "cells": cells},
                "assumptions": v.assumptions,
            },
            "presentation": presentation(&report.presentation),
            "matches_input": report.matches_input,
        }),
    )
}

pub fn examples() -> Value {
    let list: Vec<Value> = FIXTURES
        .iter()
        .map(|f| {
            json!({
                "id": f.id,
                "title": f.title,
                "source": f.source,
                "expected": f.expected,
            })
        })
        .collect();
    envelope("examples", json!({"fixtures": list}))
}

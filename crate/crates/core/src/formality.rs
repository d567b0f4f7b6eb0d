//! Formality verdicts for one-cell attachments and for even complexes
//! generated in a single degree.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::attach::{AlphaFunctional, AlphaSpec, AttachmentElement, AttachmentModel};
use crate::dgca::{ClassProduct, CohomologyClass};
use crate::gca::{Element, FreeAlgebra, GenId, Generator};
use crate::linalg::{self, Scalar, SparseVec};
use crate::model::{build_minimal_model, BigradedModel};
use crate::presented::PresentedAlgebra;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Formal,
    NotFormal,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Formal => "Formal",
            Status::NotFormal => "NotFormal",
            Status::Inconclusive => "Inconclusive",
        }
    }
}

/// The criterion that decided the verdict, or the hypothesis that failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    /// α is zero in π ⊗ ℚ (torsion): `u` indecomposable, `Y` formal.
    Torsion,
    /// α special and `u` decomposable.
    SpecialDecomposable,
    /// `u` indecomposable for nonzero α.
    Indecomposable,
    /// Every cell of an even complex generated in degree 2k, dim ≤ 4k.
    EvenComplex,
    /// α pairs nontrivially with a stage-0 generator: η([α]) ≠ 0.
    HurewiczNonvanishing,
    /// `u` decomposable but α not special.
    NonSpecial,
}

impl Clause {
    pub fn label(self) -> &'static str {
        match self {
            Clause::Torsion => "(i)",
            Clause::SpecialDecomposable => "(ii)",
            Clause::Indecomposable => "(iii)",
            Clause::EvenComplex => "even-complex",
            Clause::HurewiczNonvanishing => "hurewicz-nonvanishing",
            Clause::NonSpecial => "non-special",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Witness {
    /// α = 0; `coerced` when a 2-cell forced it.
    ZeroAlpha { coerced: bool },
    /// `u = Σ cᵢ [leftᵢ]·[rightᵢ]` with α supported on stage 1.
    Decomposition {
        u: CohomologyClass<AttachmentElement>,
        terms: Vec<(Scalar, ClassProduct)>,
    },
    /// `u ≠ 0` lies outside the span of products.
    IndecomposableU {
        u: CohomologyClass<AttachmentElement>,
    },
    /// Generators off stage 1 where α is nonzero, with the decomposition of
    /// `u`.
    NonSpecial {
        violators: Vec<GenId>,
        u: CohomologyClass<AttachmentElement>,
        terms: Vec<(Scalar, ClassProduct)>,
    },
    /// Stage-0 generators where α is nonzero.
    HurewiczNonvanishing { generators: Vec<GenId> },
    /// One verdict per attached cell.
    Cells(Vec<FormalityVerdict>),
}

#[derive(Clone, Debug)]
pub struct FormalityVerdict {
    pub status: Status,
    pub clause: Clause,
    pub witness: Witness,
    pub assumptions: Vec<&'static str>,
}

pub const ASSUME_FORMAL_BASE: &str =
    "X is simply connected and formal, and the input algebra is H*(X; Q)";
pub const ASSUME_GRADATION: &str =
    "specialness is measured against the lower gradation of the bigraded model, after standardization";
pub const ASSUME_PAIRING: &str =
    "α is given by its pairing with V^(n-1); torsion classes pair to zero";

fn require_standard(model: &BigradedModel) -> Result<(), Error> {
    match model.verify_standard().first() {
        None => Ok(()),
        Some(v) => Err(Error::NonStandard(format!("{v:?}"))),
    }
}

/// Stage-0 generators of degree `n - 1` on which α is nonzero.
fn hurewicz_violators(model: &BigradedModel, alpha: &AlphaFunctional) -> Vec<GenId> {
    alpha
        .support()
        .filter(|(g, _)| model.generator(*g).stage == 0)
        .map(|(g, _)| g)
        .collect()
}

/// η([α]) = 0: α vanishes on every stage-0 generator of degree `n - 1`.
pub fn hurewicz_vanishes(model: &BigradedModel, alpha: &AlphaFunctional) -> Result<bool, Error> {
    require_standard(model)?;
    Ok(hurewicz_violators(model, alpha).is_empty())
}

/// α is special when its support lies in stage 1. Returns the generators
/// that violate this.
pub fn is_special(
    model: &BigradedModel,
    alpha: &AlphaFunctional,
) -> Result<(bool, Vec<GenId>), Error> {
    require_standard(model)?;
    let violators: Vec<GenId> = alpha
        .support()
        .filter(|(g, _)| model.generator(*g).stage != 1)
        .map(|(g, _)| g)
        .collect();
    Ok((violators.is_empty(), violators))
}

/// Applies the attachment criterion to `X ∪_α eⁿ`.
pub fn formality_verdict(
    model: &BigradedModel,
    alpha: &AlphaFunctional,
) -> Result<FormalityVerdict, Error> {
    require_standard(model)?;
    let assumptions = alloc::vec![ASSUME_FORMAL_BASE, ASSUME_GRADATION, ASSUME_PAIRING];
    if alpha.is_zero() {
        return Ok(FormalityVerdict {
            status: Status::Formal,
            clause: Clause::Torsion,
            witness: Witness::ZeroAlpha {
                coerced: alpha.coerced,
            },
            assumptions,
        });
    }
    let att = AttachmentModel::new(model, alpha.clone())?;
    let u = att.u_class()?;
    let stage_zero = hurewicz_violators(model, alpha);
    if stage_zero.is_empty() == u.is_zero() {
        return Err(Error::Integrity(String::from(
            "Hurewicz test and the class of u disagree",
        )));
    }
    if !stage_zero.is_empty() {
        return Ok(FormalityVerdict {
            status: Status::Inconclusive,
            clause: Clause::HurewiczNonvanishing,
            witness: Witness::HurewiczNonvanishing {
                generators: stage_zero,
            },
            assumptions,
        });
    }
    let (special, violators) = is_special(model, alpha)?;
    let dec = att.is_u_decomposable()?;
    let verdict = match (dec.witness, special) {
        (None, _) => FormalityVerdict {
            status: Status::NotFormal,
            clause: Clause::Indecomposable,
            witness: Witness::IndecomposableU { u },
            assumptions,
        },
        (Some(terms), true) => FormalityVerdict {
            status: Status::Formal,
            clause: Clause::SpecialDecomposable,
            witness: Witness::Decomposition { u, terms },
            assumptions,
        },
        (Some(terms), false) => FormalityVerdict {
            status: Status::Inconclusive,
            clause: Clause::NonSpecial,
            witness: Witness::NonSpecial {
                violators,
                u,
                terms,
            },
            assumptions,
        },
    };
    Ok(verdict)
}

/// One cell of an even complex: α, resolved against the model of the
/// complex built so far after applying `aliases`.
#[derive(Clone, Debug, Default)]
pub struct CellSpec {
    pub aliases: Vec<(String, String)>,
    pub alpha: AlphaSpec,
}

/// Per-cell data of [`even_complex_formality`].
#[derive(Clone, Debug)]
pub struct CellStep {
    /// Model of the complex before this cell, standardized, aliases applied.
    pub model: BigradedModel,
    pub alpha: AlphaFunctional,
    pub verdict: FormalityVerdict,
    /// Cohomology of the complex after this cell.
    pub presentation: PresentedAlgebra,
    /// `dim H^m` for `m = 0..=4k` after this cell.
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct EvenComplexReport {
    pub k: u32,
    pub steps: Vec<CellStep>,
    /// Cohomology presentation after the last cell.
    pub presentation: PresentedAlgebra,
    /// Whether that presentation agrees with the input algebra through
    /// degree `4k`.
    pub matches_input: bool,
    pub verdict: FormalityVerdict,
}

fn hypothesis(msg: String) -> Error {
    Error::Hypothesis(msg)
}

/// Cohomology of the `2k`-skeleton: the generators of `a` with every
/// degree-`4k` monomial killed, truncated at `4k + 1`.
pub fn even_skeleton(a: &PresentedAlgebra, k: u32) -> Result<PresentedAlgebra, Error> {
    wedge_presentation(a.free(), k)
}

/// All degree-`4k` monomials in generators of degree `2k`.
fn wedge_presentation(free: &FreeAlgebra, k: u32) -> Result<PresentedAlgebra, Error> {
    let rels = free
        .monomial_basis(4 * k)
        .into_iter()
        .map(|m| Element::monomial(m, Scalar::one()))
        .collect();
    PresentedAlgebra::new(free.clone(), rels, 4 * k + 1)
}

/// Reads off the cohomology of `M_α` as a presentation on the degree-`2k`
/// classes. Fails when `H^{4k}` is not spanned by products.
fn synthesize(att: &AttachmentModel<'_>, k: u32) -> Result<PresentedAlgebra, Error> {
    let model = att.base();
    let h2k = att.cohomology(2 * k)?;
    let h4k = att.cohomology(4 * k)?;
    // degree-2k generators of the model are the stage-0 ones, one per class
    let gens: Vec<GenId> = model.stage_slice(0, 2 * k);
    if gens.len() != h2k.dim() {
        return Err(Error::Integrity(String::from(
            "H^2k is not spanned by the generators",
        )));
    }
    let mut free = FreeAlgebra::new();
    for &g in &gens {
        free.push(Generator::new(model.generator(g).name.clone(), 2 * k, 0))?;
    }
    let squares = free.monomial_basis(4 * k);
    let mut images: Vec<SparseVec> = Vec::new();
    for mono in &squares {
        let ids: Vec<GenId> = mono.expanded().map(|i| gens[i]).collect();
        let x = model.free().product(
            ids.iter()
                .map(|&g| Element::generator(g))
                .collect::<Vec<_>>()
                .iter(),
        );
        let class = att.class_of(
            &h4k,
            &AttachmentElement {
                base: x,
                u: Scalar::zero(),
            },
        )?;
        images.push(linalg::from_dense(&class.coordinates));
    }
    let mut span = linalg::Echelon::new();
    for v in &images {
        span.insert(v);
    }
    if span.rank() < h4k.dim() {
        return Err(hypothesis(format!(
            "after attaching this cell H^{} is not generated by H^{}",
            4 * k,
            2 * k
        )));
    }
    let relations: Vec<Element> = linalg::kernel_of_images(&images)
        .into_iter()
        .map(|v| {
            let mut r = Element::zero();
            for (i, c) in v {
                r.add_term(squares[i].clone(), c);
            }
            r
        })
        .collect();
    PresentedAlgebra::new(free, relations, 4 * k + 1)
}

/// Whether two presentations on the same generator names define the same
/// algebra through degree `top`.
fn same_algebra(p: &PresentedAlgebra, q: &PresentedAlgebra, top: u32) -> Result<bool, Error> {
    let names = |a: &PresentedAlgebra| -> Vec<String> {
        a.free()
            .generators()
            .iter()
            .map(|g| g.name.clone())
            .collect()
    };
    if names(p) != names(q) || p.free().generators() != q.free().generators() {
        return Ok(false);
    }
    for (x, y) in [(p, q), (q, p)] {
        for r in x.relations() {
            if let Some(d) = x.free().degree(r)? {
                if d <= top && !y.graded_component(d)?.is_zero(r) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Formality of a complex with cells in dimensions 0, 2k and 4k whose
/// cohomology is generated in degree `2k`: the 2k-skeleton is a wedge of
/// spheres and the 4k-cells are attached one at a time.
pub fn even_complex_formality(
    a: &PresentedAlgebra,
    k: u32,
    cells: &[CellSpec],
) -> Result<EvenComplexReport, Error> {
    if k == 0 {
        return Err(hypothesis(String::from("k must be positive")));
    }
    for g in a.free().generators() {
        if g.degree != 2 * k {
            return Err(hypothesis(format!(
                "generator `{}` has degree {}, not 2k = {}",
                g.name,
                g.degree,
                2 * k
            )));
        }
    }
    if a.free().is_empty() {
        return Err(Error::NothingToModel);
    }
    for c in cells {
        let n = c.alpha.cell;
        if n > 4 * k {
            return Err(hypothesis(format!(
                "dim X ≤ 4k violated: cell of dimension {n} with 4k = {}",
                4 * k
            )));
        }
        if n != 4 * k {
            return Err(hypothesis(format!("cell dimension {n} ≠ 4k = {}", 4 * k)));
        }
    }
    let top = 4 * k;
    let mut current = wedge_presentation(a.free(), k)?;
    let mut steps = Vec::new();
    for cell in cells {
        let mut model = build_minimal_model(&current, top)?;
        model.standardize()?;
        for (old, new) in &cell.aliases {
            model.rename(old, new)?;
        }
        if !model.stage_slice(0, top - 1).is_empty() {
            return Err(hypothesis(format!("V₀ ∩ V^{} ≠ 0", top - 1)));
        }
        if model
            .generators_of_degree(top - 1)
            .iter()
            .any(|&g| model.generator(g).stage >= 2)
        {
            return Err(hypothesis(format!("V_(≥2) ∩ V^{} ≠ 0", top - 1)));
        }
        let alpha = AlphaFunctional::resolve(&model, &cell.alpha)?;
        let verdict = formality_verdict(&model, &alpha)?;
        let att = AttachmentModel::new(&model, alpha.clone())?;
        let next = synthesize(&att, k)?;
        let mut dims = Vec::new();
        for m in 0..=top {
            let h = att.cohomology(m)?.dim();
            if h != next.graded_component(m)?.dim() {
                return Err(Error::Integrity(format!(
                    "synthesized presentation disagrees with H^{m}(M_α)"
                )));
            }
            dims.push(h);
        }
        // the next round rebuilds the model from this presentation
        let check = build_minimal_model(&next, top)?;
        for m in 0..=top {
            if check.dgca().cohomology(m)?.dim() != next.graded_component(m)?.dim() {
                return Err(Error::Integrity(format!(
                    "model of the next stage fails in degree {m}"
                )));
            }
        }
        steps.push(CellStep {
            model,
            alpha,
            verdict,
            presentation: next.clone(),
            dims,
        });
        current = next;
    }
    let all_formal = steps.iter().all(|s| s.verdict.status == Status::Formal);
    let matches_input = same_algebra(&current, &restrict(a, top)?, top)?;
    let verdict = FormalityVerdict {
        status: if all_formal {
            Status::Formal
        } else {
            Status::Inconclusive
        },
        clause: Clause::EvenComplex,
        witness: Witness::Cells(steps.iter().map(|s| s.verdict.clone()).collect()),
        assumptions: alloc::vec![
            "X has cells only in dimensions 0, 2k and 4k and the cells are attached in input order"
        ],
    };
    Ok(EvenComplexReport {
        k,
        steps,
        presentation: current,
        matches_input,
        verdict,
    })
}

/// `a` with its relations cut to degrees ≤ `top` and truncation `top + 1`.
fn restrict(a: &PresentedAlgebra, top: u32) -> Result<PresentedAlgebra, Error> {
    let rels: Vec<Element> = a
        .relations()
        .iter()
        .filter(|r| a.free().degree(r).ok().flatten().is_some_and(|d| d <= top))
        .cloned()
        .collect();
    PresentedAlgebra::new(a.free().clone(), rels, top + 1)
}

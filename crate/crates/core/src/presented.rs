//! Finitely presented graded-commutative algebras `(A, 0)` with `A⁰ = ℚ`
//! and `A¹ = 0`.
//!
//! Each graded piece `A^m` is the quotient of the degree-`m` monomials of
//! the free cover by the span of all `monomial · relation` products of that
//! degree. Quotient representatives are the non-pivot monomials of that
//! span's RREF, so normal forms are stable across runs.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{PresentationIssue, PresentationIssues};
use crate::gca::{Element, FreeAlgebra, GenId, Homogeneity, Monomial};
use crate::linalg::{Echelon, Scalar, SparseVec};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedAlgebra {
    free: FreeAlgebra,
    relations: Vec<Element>,
    truncation: u32,
}

/// Checks generator degrees, relation homogeneity and relation degrees
/// against the truncation. Every problem is reported.
pub fn validate_presentation(
    free: &FreeAlgebra,
    relations: &[Element],
    truncation: u32,
) -> Result<(), Vec<PresentationIssue>> {
    let mut issues = Vec::new();
    for g in free.generators() {
        if g.degree < 2 {
            issues.push(PresentationIssue::LowDegreeGenerator {
                name: g.name.clone(),
                degree: g.degree,
            });
        }
    }
    for (i, r) in relations.iter().enumerate() {
        match free.homogeneity(r) {
            Homogeneity::Zero => {}
            Homogeneity::Mixed => issues.push(PresentationIssue::Inhomogeneous { relation: i }),
            Homogeneity::Degree(0) => {
                issues.push(PresentationIssue::ConstantRelation { relation: i })
            }
            Homogeneity::Degree(d) if d > truncation => {
                issues.push(PresentationIssue::RelationAboveTruncation {
                    relation: i,
                    degree: d,
                    truncation,
                })
            }
            Homogeneity::Degree(_) => {}
        }
    }
    if issues.is_empty() {
        Ok(())
    } else {
        Err(issues)
    }
}

impl PresentedAlgebra {
    /// `truncation` is the degree through which the relations are known to
    /// generate the whole ideal.
    pub fn new(free: FreeAlgebra, relations: Vec<Element>, truncation: u32) -> Result<Self, Error> {
        validate_presentation(&free, &relations, truncation)
            .map_err(|v| Error::Presentation(PresentationIssues(v)))?;
        if free.generators().iter().any(|g| g.stage != 0) {
            return Err(Error::Integrity(
                "presentation generators must have stage 0".into(),
            ));
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(Self {
            free,
            relations,
            truncation,
        })
    }

    pub fn free(&self) -> &FreeAlgebra {
        &self.free
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    fn check_degree(&self, m: u32) -> Result<(), Error> {
        if m > self.truncation {
            Err(Error::Truncation {
                degree: m,
                truncation: self.truncation,
            })
        } else {
            Ok(())
        }
    }

    fn ideal_slice(&self, m: u32, index: &BTreeMap<Monomial, usize>) -> Echelon {
        let mut ideal = Echelon::new();
        for r in &self.relations {
            let Some(d) = self.free.degree(r).ok().flatten() else {
                continue;
            };
            if d > m {
                continue;
            }
            for mono in self.free.monomial_basis(m - d) {
                let prod = self
                    .free
                    .multiply(&Element::monomial(mono, Scalar::from_integer(1.into())), r);
                ideal.insert(&to_vector(&prod, index));
            }
        }
        ideal
    }

    /// The degree-`m` component `A^m`.
    pub fn graded_component(&self, m: u32) -> Result<GradedComponent, Error> {
        self.check_degree(m)?;
        let monomials = self.free.monomial_basis(m);
        let index: BTreeMap<Monomial, usize> = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, mono)| (mono, i))
            .collect();
        let ideal = self.ideal_slice(m, &index);
        let representatives = (0..monomials.len())
            .filter(|&i| !ideal.is_pivot(i))
            .collect();
        Ok(GradedComponent {
            degree: m,
            monomials,
            index,
            ideal,
            representatives,
        })
    }

    /// Basis of `A^m / (A⁺·A⁺)^m`. Each class is lifted to a generator of
    /// the presentation.
    pub fn indecomposables(&self, m: u32) -> Result<Indecomposables, Error> {
        let comp = self.graded_component(m)?;
        let mut span = comp.ideal.clone();
        for (i, mono) in comp.monomials.iter().enumerate() {
            if mono.word_length() >= 2 {
                span.insert(&[(i, Scalar::from_integer(1.into()))]);
            }
        }
        let decomposable_dim = span.rank() - comp.ideal.rank();
        let generators: Vec<GenId> = (0..comp.monomials.len())
            .filter(|&i| !span.is_pivot(i))
            .map(|i| {
                comp.monomials[i]
                    .as_generator()
                    .expect("non-pivot column outside the decomposables is a generator")
            })
            .collect();
        Ok(Indecomposables {
            degree: m,
            lifts: generators.iter().map(|&g| Element::generator(g)).collect(),
            generators,
            decomposable_dim,
            component_dim: comp.dim(),
        })
    }

    /// Cup product, reduced to normal form.
    pub fn product(&self, x: &Element, y: &Element) -> Result<Element, Error> {
        let p = self.free.degree(x)?;
        let q = self.free.degree(y)?;
        let (Some(p), Some(q)) = (p, q) else {
            return Ok(Element::zero());
        };
        let comp = self.graded_component(p + q)?;
        Ok(comp.reduce(&self.free.multiply(x, y)))
    }
}

fn to_vector(x: &Element, index: &BTreeMap<Monomial, usize>) -> SparseVec {
    let mut v: SparseVec = x
        .terms()
        .map(|(m, c)| {
            (
                *index.get(m).expect("monomial of the expected degree"),
                c.clone(),
            )
        })
        .collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

/// The graded piece `A^m` with its normal-form machinery.
#[derive(Clone, Debug)]
pub struct GradedComponent {
    pub degree: u32,
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    ideal: Echelon,
    representatives: Vec<usize>,
}

impl GradedComponent {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn monomial_count(&self) -> usize {
        self.monomials.len()
    }

    pub fn ideal_rank(&self) -> usize {
        self.ideal.rank()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.representatives
            .iter()
            .map(move |&i| &self.monomials[i])
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    fn vector(&self, x: &Element) -> Result<SparseVec, Error> {
        let mut v = Vec::with_capacity(x.len());
        for (m, c) in x.terms() {
            match self.index.get(m) {
                Some(&i) => v.push((i, c.clone())),
                None => return Err(Error::Inhomogeneous),
            }
        }
        v.sort_by_key(|(i, _)| *i);
        Ok(v)
    }

    /// Coordinates on the representative monomials. Panics on elements of
    /// the wrong degree.
    pub fn coordinates(&self, x: &Element) -> Vec<Scalar> {
        let reduced = self
            .ideal
            .reduce(&self.vector(x).expect("element of this degree"));
        let pos: BTreeMap<usize, usize> = self
            .representatives
            .iter()
            .enumerate()
            .map(|(k, &i)| (i, k))
            .collect();
        let mut out = alloc::vec![Scalar::zero(); self.dim()];
        for (i, c) in reduced {
            out[pos[&i]] = c;
        }
        out
    }

    pub fn try_coordinates(&self, x: &Element) -> Result<Vec<Scalar>, Error> {
        self.vector(x)?;
        Ok(self.coordinates(x))
    }

    pub fn from_coordinates(&self, c: &[Scalar]) -> Element {
        let mut x = Element::zero();
        for (k, &i) in self.representatives.iter().enumerate() {
            x.add_term(self.monomials[i].clone(), c[k].clone());
        }
        x
    }

    /// Normal form: a combination of representative monomials.
    pub fn reduce(&self, x: &Element) -> Element {
        self.from_coordinates(&self.coordinates(x))
    }

    pub fn is_zero(&self, x: &Element) -> bool {
        self.coordinates(x).iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug)]
pub struct Indecomposables {
    pub degree: u32,
    /// Presentation generators lifting a basis of `A^m / 𝒟`.
    pub generators: Vec<GenId>,
    pub lifts: Vec<Element>,
    /// `dim 𝒟^m`, the decomposable part of `A^m`.
    pub decomposable_dim: usize,
    pub component_dim: usize,
}

impl Indecomposables {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }
}

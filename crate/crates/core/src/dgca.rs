//! Free differential graded-commutative algebras `(ΛV, d)` and their
//! cohomology, computed degree by degree.
//!
//! A [`FreeDgca`] with truncation `N` holds every generator of degree ≤ `N`
//! and their differentials; statements about `H^m` are only made for
//! `m ≤ N`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::gca::{Element, FreeAlgebra, GenId, Generator, Monomial};
use crate::linalg::{self, Echelon, Scalar, SparseVec};
use crate::Error;

/// Coordinate system for one degree of a cochain complex built on `ΛV`:
/// the degree-`m` monomials, optionally followed by one extra basis vector.
#[derive(Clone, Debug)]
pub(crate) struct Cochains {
    pub(crate) monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    pub(crate) extra: bool,
}

impl Cochains {
    pub(crate) fn new(monomials: Vec<Monomial>, extra: bool) -> Self {
        let index = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        Self {
            monomials,
            index,
            extra,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.monomials.len() + usize::from(self.extra)
    }

    pub(crate) fn extra_index(&self) -> Option<usize> {
        self.extra.then_some(self.monomials.len())
    }

    /// Vector of `x + u·extra`. `None` if `x` has a monomial of another
    /// degree or `u ≠ 0` without an extra slot.
    pub(crate) fn vector(&self, x: &Element, u: &Scalar) -> Option<SparseVec> {
        let mut v = Vec::with_capacity(x.len() + 1);
        for (m, c) in x.terms() {
            v.push((*self.index.get(m)?, c.clone()));
        }
        if !u.is_zero() {
            v.push((self.extra_index()?, u.clone()));
        }
        v.sort_by_key(|(i, _)| *i);
        Some(v)
    }

    pub(crate) fn element(&self, v: &[(usize, Scalar)]) -> (Element, Scalar) {
        let mut x = Element::zero();
        let mut u = Scalar::zero();
        for (i, c) in v {
            if Some(*i) == self.extra_index() {
                u = c.clone();
            } else {
                x.add_term(self.monomials[*i].clone(), c.clone());
            }
        }
        (x, u)
    }
}

/// Vectorizes elements of one degree against an index that grows on demand.
#[derive(Default)]
pub(crate) struct LazyIndex {
    index: BTreeMap<Monomial, usize>,
    extra: Option<usize>,
}

impl LazyIndex {
    pub(crate) fn vector(&mut self, x: &Element, u: &Scalar) -> SparseVec {
        let mut v: SparseVec = x
            .terms()
            .map(|(m, c)| {
                let next = self.index.len() + usize::from(self.extra.is_some());
                (*self.index.entry(m.clone()).or_insert(next), c.clone())
            })
            .collect();
        if !u.is_zero() {
            let next = self.index.len() + usize::from(self.extra.is_some());
            let slot = *self.extra.get_or_insert(next);
            v.push((slot, u.clone()));
        }
        v.sort_by_key(|(i, _)| *i);
        v
    }
}

/// `H^m` of a cochain complex with canonical representatives.
///
/// Representatives are the RREF basis of the cocycles that vanish on the
/// pivot columns of the boundary RREF. They depend only on the cocycle and
/// boundary subspaces and on the monomial order.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: u32,
    pub(crate) cochains: Cochains,
    boundaries: Echelon,
    reps: Echelon,
    rep_pivots: Vec<usize>,
    cocycle_dim: usize,
}

impl CohomologyGroup {
    pub(crate) fn from_images(
        degree: u32,
        cochains: Cochains,
        outgoing: &[SparseVec],
        incoming: &[SparseVec],
    ) -> Self {
        let cocycles = linalg::kernel_of_images(outgoing);
        let mut boundaries = Echelon::new();
        for b in incoming {
            boundaries.insert(b);
        }
        let reps = linalg::quotient_representatives(&boundaries, &cocycles);
        let rep_pivots = reps.pivot_columns().collect();
        Self {
            degree,
            cochains,
            boundaries,
            reps,
            rep_pivots,
            cocycle_dim: cocycles.len(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rep_pivots.len()
    }

    pub fn cocycle_dim(&self) -> usize {
        self.cocycle_dim
    }

    pub fn boundary_rank(&self) -> usize {
        self.boundaries.rank()
    }

    /// Number of cochains in this degree.
    pub fn cochain_dim(&self) -> usize {
        self.cochains.len()
    }

    pub(crate) fn rep_vector(&self, i: usize) -> &SparseVec {
        self.reps
            .row_for_pivot(self.rep_pivots[i])
            .expect("pivot row")
    }

    /// Coordinates of a cochain vector. `None` when it is not a cocycle.
    pub(crate) fn coordinates_of(&self, v: &[(usize, Scalar)]) -> Option<Vec<Scalar>> {
        let r = self.boundaries.reduce(v);
        let coords: Vec<Scalar> = self
            .rep_pivots
            .iter()
            .map(|p| linalg::entry(&r, *p).cloned().unwrap_or_else(Scalar::zero))
            .collect();
        let mut rest = r;
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                rest = linalg::axpy(&rest, &-c, self.rep_vector(i));
            }
        }
        rest.is_empty().then_some(coords)
    }
}

/// A cohomology class with its canonical cocycle representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass<R = Element> {
    pub degree: u32,
    pub representative: R,
    /// Coordinates in the canonical basis of `H^degree`.
    pub coordinates: Vec<Scalar>,
}

impl<R> CohomologyClass<R> {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Zero::is_zero)
    }
}

/// A product `[left]·[right]` of basis classes, with its image in `H^m`.
#[derive(Clone, Debug)]
pub struct ClassProduct {
    pub left: CohomologyClass,
    pub right: CohomologyClass,
    pub coordinates: Vec<Scalar>,
}

/// The span of products of positive-degree classes inside `H^m`.
#[derive(Clone, Debug)]
pub struct DecomposableSubspace {
    pub degree: u32,
    pub products: Vec<ClassProduct>,
    span: Echelon,
}

impl DecomposableSubspace {
    pub(crate) fn new(degree: u32, products: Vec<ClassProduct>) -> Self {
        let mut span = Echelon::new();
        for p in &products {
            span.insert(&linalg::from_dense(&p.coordinates));
        }
        Self {
            degree,
            products,
            span,
        }
    }

    pub fn dim(&self) -> usize {
        self.span.rank()
    }

    /// RREF basis in the coordinates of `H^m`.
    pub fn basis(&self, ambient_dim: usize) -> Vec<Vec<Scalar>> {
        self.span
            .rows()
            .map(|r| linalg::to_dense(r, ambient_dim))
            .collect()
    }

    pub fn contains(&self, coordinates: &[Scalar]) -> bool {
        self.span.contains(&linalg::from_dense(coordinates))
    }

    /// Expresses a class as a combination of the listed products:
    /// pairs `(coefficient, index into products)`.
    pub fn decompose(&self, coordinates: &[Scalar]) -> Option<Vec<(Scalar, usize)>> {
        let basis: Vec<SparseVec> = self
            .products
            .iter()
            .map(|p| linalg::from_dense(&p.coordinates))
            .collect();
        let c = linalg::solve_sparse(&basis, &linalg::from_dense(coordinates))?;
        Some(
            c.into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (x, i))
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSquaredFailure {
    pub generator: GenId,
    pub residue: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeDgca {
    algebra: FreeAlgebra,
    differential: Vec<Element>,
    truncation: u32,
}

impl FreeDgca {
    pub fn new(
        algebra: FreeAlgebra,
        differential: Vec<Element>,
        truncation: u32,
    ) -> Result<Self, Error> {
        if differential.len() != algebra.len() {
            return Err(Error::DimensionMismatch {
                expected: algebra.len(),
                found: differential.len(),
            });
        }
        for (g, dg) in differential.iter().enumerate() {
            let gen = algebra.generator(g);
            if gen.degree < 2 {
                return Err(Error::InvalidGenerator {
                    name: gen.name.clone(),
                    reason: "degree below 2",
                });
            }
            if gen.degree > truncation {
                return Err(Error::Truncation {
                    degree: gen.degree,
                    truncation,
                });
            }
            if let Some(d) = algebra.degree(dg)? {
                if d != gen.degree + 1 {
                    return Err(Error::DifferentialDegree {
                        name: gen.name.clone(),
                        expected: gen.degree + 1,
                        found: d,
                    });
                }
            }
        }
        Ok(Self {
            algebra,
            differential,
            truncation,
        })
    }

    pub(crate) fn empty(truncation: u32) -> Self {
        Self {
            algebra: FreeAlgebra::new(),
            differential: Vec::new(),
            truncation,
        }
    }

    /// Appends a generator with its differential; the caller guarantees the
    /// degree of `d` and the global order.
    pub(crate) fn push(&mut self, gen: Generator, d: Element) -> Result<GenId, Error> {
        let g = self.algebra.push(gen)?;
        self.differential.push(d);
        Ok(g)
    }

    pub fn algebra(&self) -> &FreeAlgebra {
        &self.algebra
    }

    pub(crate) fn algebra_mut(&mut self) -> &mut FreeAlgebra {
        &mut self.algebra
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn differential(&self, g: GenId) -> &Element {
        &self.differential[g]
    }

    pub(crate) fn set_differential(&mut self, g: GenId, dg: Element) {
        self.differential[g] = dg;
    }

    /// Every differential lies in `Λ^{≥2}V`.
    pub fn is_minimal(&self) -> bool {
        self.differential
            .iter()
            .all(|dg| dg.terms().all(|(m, _)| m.word_length() >= 2))
    }

    /// Leibniz extension to a monomial.
    pub fn d_monomial(&self, m: &Monomial) -> Element {
        let alg = &self.algebra;
        let mut out = Element::zero();
        let mut left_degree = 0u32;
        let factors = m.factors();
        for (k, &(g, e)) in factors.iter().enumerate() {
            let dg = &self.differential[g];
            if !dg.is_zero() {
                let left = Monomial::from_sorted(factors[..k].to_vec());
                let right = Monomial::from_sorted(factors[k + 1..].to_vec());
                let mut mid = Monomial::one();
                if e > 1 {
                    mid = Monomial::from_sorted(alloc::vec![(g, e - 1)]);
                }
                // d(g^e) = e g^{e-1} dg for even g; odd g has e = 1
                let sign = if left_degree % 2 == 1 {
                    -Scalar::one()
                } else {
                    Scalar::one()
                };
                let coeff = sign * Scalar::from_integer(e.into());
                let lhs = Element::monomial(left, coeff);
                let term = alg.product([
                    &lhs,
                    &Element::monomial(mid, Scalar::one()),
                    dg,
                    &Element::monomial(right, Scalar::one()),
                ]);
                out.add_scaled(&term, &Scalar::one());
            }
            left_degree += alg.generator(g).degree * e;
        }
        out
    }

    pub fn d_extend(&self, x: &Element) -> Result<Element, Error> {
        if let Some(d) = self.algebra.degree(x)? {
            if d > self.truncation {
                return Err(Error::Truncation {
                    degree: d,
                    truncation: self.truncation,
                });
            }
        }
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            out.add_scaled(&self.d_monomial(m), c);
        }
        Ok(out)
    }

    /// Checks `d(d(g)) = 0` on every generator.
    pub fn verify_d_squared(&self) -> Result<(), DSquaredFailure> {
        for (g, dg) in self.differential.iter().enumerate() {
            let mut dd = Element::zero();
            for (m, c) in dg.terms() {
                dd.add_scaled(&self.d_monomial(m), c);
            }
            if !dd.is_zero() {
                return Err(DSquaredFailure {
                    generator: g,
                    residue: dd,
                });
            }
        }
        Ok(())
    }

    pub(crate) fn check_degree(&self, m: u32) -> Result<(), Error> {
        if m > self.truncation {
            Err(Error::Truncation {
                degree: m,
                truncation: self.truncation,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn cochains(&self, m: u32, extra: bool) -> Cochains {
        Cochains::new(self.algebra.monomial_basis(m), extra)
    }

    /// `H^m = ker(d: Λ^m → Λ^{m+1}) / d(Λ^{m-1})`.
    pub fn cohomology(&self, m: u32) -> Result<CohomologyGroup, Error> {
        self.check_degree(m)?;
        let here = self.cochains(m, false);
        let mut target = LazyIndex::default();
        let outgoing: Vec<SparseVec> = here
            .monomials
            .iter()
            .map(|mono| target.vector(&self.d_monomial(mono), &Scalar::zero()))
            .collect();
        let incoming: Vec<SparseVec> = if m == 0 {
            Vec::new()
        } else {
            self.algebra
                .monomial_basis(m - 1)
                .iter()
                .map(|mono| {
                    here.vector(&self.d_monomial(mono), &Scalar::zero())
                        .expect("d raises degree by one")
                })
                .collect()
        };
        Ok(CohomologyGroup::from_images(m, here, &outgoing, &incoming))
    }

    /// Canonical basis classes of `H^m`.
    pub fn basis_classes(&self, group: &CohomologyGroup) -> Vec<CohomologyClass> {
        (0..group.dim())
            .map(|i| {
                let (rep, _) = group.cochains.element(group.rep_vector(i));
                let mut coordinates = alloc::vec![Scalar::zero(); group.dim()];
                coordinates[i] = Scalar::one();
                CohomologyClass {
                    degree: group.degree,
                    representative: rep,
                    coordinates,
                }
            })
            .collect()
    }

    /// Class of a cocycle in `group`; errors if `z` is not a cocycle of that
    /// degree.
    pub fn class_of(&self, group: &CohomologyGroup, z: &Element) -> Result<CohomologyClass, Error> {
        let v = group
            .cochains
            .vector(z, &Scalar::zero())
            .ok_or(Error::Inhomogeneous)?;
        let coordinates = group
            .coordinates_of(&v)
            .ok_or_else(|| Error::Integrity(format!("not a cocycle in degree {}", group.degree)))?;
        Ok(CohomologyClass {
            degree: group.degree,
            representative: z.clone(),
            coordinates,
        })
    }

    /// `[x]·[y]`, computed from the stored representatives.
    pub fn class_product(
        &self,
        x: &CohomologyClass,
        y: &CohomologyClass,
    ) -> Result<CohomologyClass, Error> {
        let group = self.cohomology(x.degree + y.degree)?;
        self.class_product_in(&group, x, y)
    }

    pub(crate) fn class_product_in(
        &self,
        group: &CohomologyGroup,
        x: &CohomologyClass,
        y: &CohomologyClass,
    ) -> Result<CohomologyClass, Error> {
        let z = self.algebra.multiply(&x.representative, &y.representative);
        let mut class = self.class_of(group, &z)?;
        class.degree = x.degree + y.degree;
        Ok(class)
    }

    /// Span of all products `H^p · H^{m-p}`, `0 < p < m`, inside `H^m`.
    pub fn decomposable_subspace(&self, m: u32) -> Result<DecomposableSubspace, Error> {
        let target = self.cohomology(m)?;
        let mut products = Vec::new();
        let mut p = 2;
        while 2 * p <= m {
            let left = self.basis_classes(&self.cohomology(p)?);
            let right = self.basis_classes(&self.cohomology(m - p)?);
            for l in &left {
                for r in &right {
                    let prod = self.class_product_in(&target, l, r)?;
                    products.push(ClassProduct {
                        left: l.clone(),
                        right: r.clone(),
                        coordinates: prod.coordinates,
                    });
                }
            }
            p += 1;
        }
        Ok(DecomposableSubspace::new(m, products))
    }
}

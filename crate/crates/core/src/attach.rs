//! The model `M_α = ΛV ⊕ ℚu_α` of a one-cell attachment `X ∪_α eⁿ`.
//!
//! Elements are pairs `(x, c)` meaning `x + c·u_α`. Products follow
//! `u_α² = 0` and `u_α·v = 0` for `v` of positive degree, and
//! `d_α(v) = dv + ⟨v, α⟩u_α` on generators.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::dgca::{
    ClassProduct, Cochains, CohomologyClass, CohomologyGroup, DecomposableSubspace, LazyIndex,
};
use crate::gca::{Element, GenId, Monomial};
use crate::linalg::{Scalar, SparseVec};
use crate::model::BigradedModel;
use crate::Error;

/// An attachment functional before name resolution: the cell dimension and
/// `(generator name, value)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlphaSpec {
    pub cell: u32,
    pub values: Vec<(String, Scalar)>,
}

/// `⟨-, α⟩` on the degree-`(n-1)` generators of a model; zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaFunctional {
    pub n: u32,
    coefficients: BTreeMap<GenId, Scalar>,
    /// Set when a 2-cell was requested: α is then zero since `X` is simply
    /// connected.
    pub coerced: bool,
}

impl AlphaFunctional {
    pub fn zero(n: u32) -> Self {
        Self {
            n,
            coefficients: BTreeMap::new(),
            coerced: false,
        }
    }

    /// Resolves generator names against `model`. Unknown names are all
    /// reported at once.
    pub fn resolve(model: &BigradedModel, spec: &AlphaSpec) -> Result<Self, Error> {
        let n = spec.cell;
        if n < 2 {
            return Err(Error::CellDimension(n));
        }
        if n > model.truncation() {
            return Err(Error::Truncation {
                degree: n,
                truncation: model.truncation(),
            });
        }
        let unknown: Vec<String> = spec
            .values
            .iter()
            .filter(|(name, _)| model.find(name).is_none())
            .map(|(name, _)| name.clone())
            .collect();
        if !unknown.is_empty() {
            return Err(Error::UnresolvedNames(unknown));
        }
        if n == 2 {
            let mut alpha = Self::zero(2);
            alpha.coerced = true;
            return Ok(alpha);
        }
        let mut alpha = Self::zero(n);
        for (name, c) in &spec.values {
            let g = model.find(name).expect("checked above");
            alpha.set(model, g, c.clone())?;
        }
        Ok(alpha)
    }

    /// Adds `c` to the value on `g`.
    pub fn set(&mut self, model: &BigradedModel, g: GenId, c: Scalar) -> Result<(), Error> {
        let gen = model.generator(g);
        if gen.degree + 1 != self.n {
            return Err(Error::AlphaDegree {
                name: gen.name.clone(),
                degree: gen.degree,
                expected: self.n - 1,
            });
        }
        let entry = self.coefficients.entry(g).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.coefficients.remove(&g);
        }
        Ok(())
    }

    pub fn value(&self, g: GenId) -> Scalar {
        self.coefficients
            .get(&g)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Generators with a nonzero value, in global order.
    pub fn support(&self) -> impl Iterator<Item = (GenId, &Scalar)> + '_ {
        self.coefficients.iter().map(|(g, c)| (*g, c))
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.coefficients.clear();
        } else {
            for v in out.coefficients.values_mut() {
                *v *= c;
            }
        }
        out
    }

    /// `⟨x, α⟩`, reading off the linear part of `x`.
    pub fn pair(&self, x: &Element) -> Scalar {
        let mut s = Scalar::zero();
        for (g, c) in x.linear_part() {
            s += c * self.value(g);
        }
        s
    }
}

/// `x + u·u_α`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AttachmentElement {
    pub base: Element,
    pub u: Scalar,
}

#[derive(Clone, Debug)]
pub struct AttachmentModel<'a> {
    base: &'a BigradedModel,
    alpha: AlphaFunctional,
}

/// Outcome of the decomposability test for `u`.
#[derive(Clone, Debug)]
pub struct Decomposability {
    pub decomposable: bool,
    /// `u = Σ cᵢ·[leftᵢ]·[rightᵢ]` when decomposable.
    pub witness: Option<Vec<(Scalar, ClassProduct)>>,
    pub subspace: DecomposableSubspace,
}

impl<'a> AttachmentModel<'a> {
    /// Builds `M_α` and checks `d_α² = 0` on generators.
    pub fn new(base: &'a BigradedModel, alpha: AlphaFunctional) -> Result<Self, Error> {
        if alpha.n > base.truncation() {
            return Err(Error::Truncation {
                degree: alpha.n,
                truncation: base.truncation(),
            });
        }
        for (g, _) in alpha.support() {
            let gen = base.generator(g);
            if gen.degree + 1 != alpha.n {
                return Err(Error::AlphaDegree {
                    name: gen.name.clone(),
                    degree: gen.degree,
                    expected: alpha.n - 1,
                });
            }
        }
        let m = Self { base, alpha };
        for g in 0..base.free().len() {
            let dg = m.d_alpha(&Element::generator(g));
            let dd = m.d_alpha(&dg.base);
            if !dd.base.is_zero() || !dd.u.is_zero() {
                return Err(Error::Integrity(alloc::format!(
                    "d_α² ≠ 0 on `{}`",
                    base.generator(g).name
                )));
            }
        }
        Ok(m)
    }

    pub fn base(&self) -> &'a BigradedModel {
        self.base
    }

    pub fn alpha(&self) -> &AlphaFunctional {
        &self.alpha
    }

    pub fn n(&self) -> u32 {
        self.alpha.n
    }

    /// `d_α(x)` for `x ∈ ΛV`; `d_α(u_α) = 0`.
    pub fn d_alpha(&self, x: &Element) -> AttachmentElement {
        let mut base = Element::zero();
        for (m, c) in x.terms() {
            base.add_scaled(&self.base.dgca().d_monomial(m), c);
        }
        AttachmentElement {
            base,
            u: self.alpha.pair(x),
        }
    }

    fn d_monomial(&self, m: &Monomial) -> AttachmentElement {
        self.d_alpha(&Element::monomial(m.clone(), Scalar::one()))
    }

    /// Product in `M_α`: `u_α` annihilates everything of positive degree.
    pub fn multiply(&self, x: &AttachmentElement, y: &AttachmentElement) -> AttachmentElement {
        let alg = self.base.free();
        let base = alg.multiply(&x.base, &y.base);
        let mut u = Scalar::zero();
        let x0 = x.base.coefficient(&Monomial::one());
        let y0 = y.base.coefficient(&Monomial::one());
        if !x0.is_zero() {
            u += &x0 * &y.u;
        }
        if !y0.is_zero() {
            u += &y0 * &x.u;
        }
        AttachmentElement { base, u }
    }

    /// `H^m(M_α)`.
    pub fn cohomology(&self, m: u32) -> Result<CohomologyGroup, Error> {
        self.base.dgca().check_degree(m)?;
        let n = self.n();
        let here = Cochains::new(self.base.free().monomial_basis(m), m == n);
        let mut target = LazyIndex::default();
        let mut outgoing: Vec<SparseVec> = here
            .monomials
            .iter()
            .map(|mono| {
                let d = self.d_monomial(mono);
                target.vector(&d.base, &d.u)
            })
            .collect();
        if here.extra {
            outgoing.push(Vec::new());
        }
        let incoming: Vec<SparseVec> = if m == 0 {
            Vec::new()
        } else {
            self.base
                .free()
                .monomial_basis(m - 1)
                .iter()
                .map(|mono| {
                    let d = self.d_monomial(mono);
                    here.vector(&d.base, &d.u)
                        .expect("d_α raises degree by one")
                })
                .collect()
        };
        Ok(CohomologyGroup::from_images(m, here, &outgoing, &incoming))
    }

    pub fn basis_classes(
        &self,
        group: &CohomologyGroup,
    ) -> Vec<CohomologyClass<AttachmentElement>> {
        (0..group.dim())
            .map(|i| {
                let (base, u) = group.cochains.element(group.rep_vector(i));
                let mut coordinates = alloc::vec![Scalar::zero(); group.dim()];
                coordinates[i] = Scalar::one();
                CohomologyClass {
                    degree: group.degree,
                    representative: AttachmentElement { base, u },
                    coordinates,
                }
            })
            .collect()
    }

    pub fn class_of(
        &self,
        group: &CohomologyGroup,
        z: &AttachmentElement,
    ) -> Result<CohomologyClass<AttachmentElement>, Error> {
        let v = group
            .cochains
            .vector(&z.base, &z.u)
            .ok_or(Error::Inhomogeneous)?;
        let coordinates = group.coordinates_of(&v).ok_or_else(|| {
            Error::Integrity(alloc::format!(
                "not a d_α-cocycle in degree {}",
                group.degree
            ))
        })?;
        Ok(CohomologyClass {
            degree: group.degree,
            representative: z.clone(),
            coordinates,
        })
    }

    /// The class `u = [u_α]` in `H^n(M_α)`; zero exactly when η([α]) ≠ 0.
    pub fn u_class(&self) -> Result<CohomologyClass<AttachmentElement>, Error> {
        let group = self.cohomology(self.n())?;
        let u = AttachmentElement {
            base: Element::zero(),
            u: Scalar::one(),
        };
        self.class_of(&group, &u)
    }

    /// Span of the products `H^p(M_α)·H^{m-p}(M_α)` inside `H^m(M_α)`.
    pub fn decomposable_subspace(&self, m: u32) -> Result<DecomposableSubspace, Error> {
        let target = self.cohomology(m)?;
        let mut products = Vec::new();
        let mut p = 2;
        while 2 * p <= m {
            let left = self.basis_classes(&self.cohomology(p)?);
            let right = self.basis_classes(&self.cohomology(m - p)?);
            for l in &left {
                for r in &right {
                    let z = self.multiply(&l.representative, &r.representative);
                    let class = self.class_of(&target, &z)?;
                    products.push(ClassProduct {
                        left: plain(l),
                        right: plain(r),
                        coordinates: class.coordinates,
                    });
                }
            }
            p += 1;
        }
        Ok(DecomposableSubspace::new(m, products))
    }

    /// Whether `u` lies in the span of products of positive-degree classes,
    /// with an explicit decomposition when it does. Errors when `u = 0`.
    pub fn is_u_decomposable(&self) -> Result<Decomposability, Error> {
        let u = self.u_class()?;
        if u.is_zero() {
            return Err(Error::UClassZero);
        }
        let subspace = self.decomposable_subspace(self.n())?;
        let witness = subspace.decompose(&u.coordinates).map(|terms| {
            terms
                .into_iter()
                .map(|(c, i)| (c, subspace.products[i].clone()))
                .collect()
        });
        Ok(Decomposability {
            decomposable: witness.is_some(),
            witness,
            subspace,
        })
    }
}

/// Below degree `n` every class has a representative without `u_α`.
fn plain(c: &CohomologyClass<AttachmentElement>) -> CohomologyClass {
    debug_assert!(c.representative.u.is_zero());
    CohomologyClass {
        degree: c.degree,
        representative: c.representative.base.clone(),
        coordinates: c.coordinates.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gca::{FreeAlgebra, Generator};
    use crate::linalg::{int, ratio};
    use crate::model::build_minimal_model;
    use crate::presented::PresentedAlgebra;
    use crate::text::parse_element;
    use alloc::string::ToString;
    use alloc::vec;

    fn present(gens: &[&str], rels: &[&str], trunc: u32) -> PresentedAlgebra {
        let free =
            FreeAlgebra::from_generators(gens.iter().map(|n| Generator::new(*n, 2, 0)).collect())
                .unwrap();
        let rels = rels
            .iter()
            .map(|r| parse_element(&free, r).unwrap())
            .collect();
        PresentedAlgebra::new(free, rels, trunc).unwrap()
    }

    fn sphere() -> BigradedModel {
        build_minimal_model(&present(&["a"], &["a^2"], 5), 4).unwrap()
    }

    fn spec(cell: u32, values: &[(&str, i64)]) -> AlphaSpec {
        AlphaSpec {
            cell,
            values: values.iter().map(|(n, c)| ((*n).into(), int(*c))).collect(),
        }
    }

    #[test]
    fn cp2_differential_and_u_class() {
        let m = sphere();
        let alpha = AlphaFunctional::resolve(&m, &spec(4, &[("v3_s1_1", 1)])).unwrap();
        let att = AttachmentModel::new(&m, alpha).unwrap();
        let b = m.find("v3_s1_1").unwrap();
        let db = att.d_alpha(&Element::generator(b));
        assert_eq!(m.free().display(&db.base).to_string(), "a^2");
        assert_eq!(db.u, int(1));

        let h4 = att.cohomology(4).unwrap();
        assert_eq!(h4.dim(), 1);
        let u = att.u_class().unwrap();
        assert!(!u.is_zero());
        // [u_α] = -[a²]
        let a = Element::generator(m.find("a").unwrap());
        let a2 = AttachmentElement {
            base: m.free().multiply(&a, &a),
            u: Scalar::zero(),
        };
        let a2_class = att.class_of(&h4, &a2).unwrap();
        assert_eq!(a2_class.coordinates[0], -&u.coordinates[0]);

        let dec = att.is_u_decomposable().unwrap();
        assert!(dec.decomposable);
        let w = dec.witness.unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].0, int(-1));
        assert_eq!(
            m.free().display(&w[0].1.left.representative).to_string(),
            "a"
        );
    }

    #[test]
    fn cp2_dims() {
        let m = sphere();
        let alpha = AlphaFunctional::resolve(&m, &spec(4, &[("v3_s1_1", 1)])).unwrap();
        let att = AttachmentModel::new(&m, alpha).unwrap();
        let dims: Vec<usize> = (0..=4).map(|d| att.cohomology(d).unwrap().dim()).collect();
        assert_eq!(dims, [1, 0, 1, 0, 1]);
    }

    #[test]
    fn zero_alpha_adds_a_class_in_degree_n() {
        let m = sphere();
        let att = AttachmentModel::new(&m, AlphaFunctional::zero(4)).unwrap();
        for d in 0..=4 {
            let base = m.dgca().cohomology(d).unwrap().dim();
            let extra = usize::from(d == 4);
            assert_eq!(att.cohomology(d).unwrap().dim(), base + extra);
        }
        assert!(!att.u_class().unwrap().is_zero());
        assert!(!att.is_u_decomposable().unwrap().decomposable);
    }

    #[test]
    fn stage_zero_alpha_kills_u() {
        let m = sphere();
        let alpha = AlphaFunctional::resolve(&m, &spec(3, &[("a", 3)])).unwrap();
        let att = AttachmentModel::new(&m, alpha).unwrap();
        assert!(att.u_class().unwrap().is_zero());
        assert_eq!(att.cohomology(2).unwrap().dim(), 0);
        assert_eq!(att.is_u_decomposable().unwrap_err(), Error::UClassZero);
    }

    #[test]
    fn resolution_errors() {
        let m = sphere();
        assert_eq!(
            AlphaFunctional::resolve(&m, &spec(4, &[("q", 1), ("v3_s1_1", 1), ("zz", 2)])),
            Err(Error::UnresolvedNames(vec!["q".into(), "zz".into()]))
        );
        assert!(matches!(
            AlphaFunctional::resolve(&m, &spec(4, &[("a", 1)])),
            Err(Error::AlphaDegree { expected: 3, .. })
        ));
        assert!(matches!(
            AlphaFunctional::resolve(&m, &spec(5, &[])),
            Err(Error::Truncation { degree: 5, .. })
        ));
        assert_eq!(
            AlphaFunctional::resolve(&m, &spec(1, &[])),
            Err(Error::CellDimension(1))
        );
        let two = AlphaFunctional::resolve(&m, &spec(2, &[])).unwrap();
        assert!(two.coerced && two.is_zero());
    }

    #[test]
    fn values_accumulate_and_scale() {
        let m = sphere();
        let b = m.find("v3_s1_1").unwrap();
        let mut alpha = AlphaFunctional::zero(4);
        alpha.set(&m, b, ratio(1, 2)).unwrap();
        alpha.set(&m, b, ratio(1, 2)).unwrap();
        assert_eq!(alpha.value(b), int(1));
        assert_eq!(alpha.scaled(&int(-3)).value(b), int(-3));
        alpha.set(&m, b, int(-1)).unwrap();
        assert!(alpha.is_zero());
    }

    #[test]
    fn low_degrees_match_the_base() {
        let a = present(&["x1", "x2"], &["x1^2", "x2^2"], 6);
        let m = build_minimal_model(&a, 5).unwrap();
        let g = m.generators_of_degree(3)[0];
        let mut alpha = AlphaFunctional::zero(4);
        alpha.set(&m, g, int(2)).unwrap();
        let att = AttachmentModel::new(&m, alpha).unwrap();
        for d in 0..3 {
            assert_eq!(
                att.cohomology(d).unwrap().dim(),
                m.dgca().cohomology(d).unwrap().dim()
            );
        }
    }
}

//! Bigraded minimal models of `(A, 0)` and standard lower gradations.
//!
//! The model is built degree by degree. At step `m` the stage-0 generators
//! of degree `m` lift the indecomposables of `A^m`; then, for the target
//! degree `m + 1`, lower degree `j = 0, 1, 2, ...` is made acyclic (or, for
//! `j = 0`, isomorphic to `A^{m+1}` via ρ) by adding stage-`(j+1)`
//! generators of degree `m`. The differential lowers the lower degree by
//! exactly one, so the resulting gradation is standard.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::dgca::{FreeDgca, LazyIndex};
use crate::gca::{Element, FreeAlgebra, GenId, Generator, Monomial};
use crate::linalg::{self, Echelon, Scalar, SparseVec};
use crate::presented::PresentedAlgebra;
use crate::Error;

/// A minimal model `(ΛV, d) → (A, 0)` through degree `N`, with stages.
#[derive(Clone, Debug)]
pub struct BigradedModel {
    dgca: FreeDgca,
    /// ρ on generators, as normal forms over the generators of `A`.
    rho: Vec<Element>,
    algebra: PresentedAlgebra,
}

/// A failure of the standardness conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardViolation {
    /// ρ(g) ≠ 0 for a generator of positive stage.
    RhoNonzero { generator: GenId },
    /// `d(g)`, stage ≥ 2, has a nonzero component in `Λ(V₀)`.
    PureComponent {
        generator: GenId,
        component: Element,
    },
}

/// One substitution made by [`BigradedModel::standardize`]: the generator
/// `y` was replaced by `y - shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub generator: GenId,
    pub shift: Element,
}

fn lower_degree_split(alg: &FreeAlgebra, monomials: Vec<Monomial>) -> BTreeMap<u32, Vec<Monomial>> {
    let mut out: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
    for m in monomials {
        out.entry(alg.lower_degree_of(&m)).or_default().push(m);
    }
    out
}

fn index_of(monomials: &[Monomial]) -> BTreeMap<Monomial, usize> {
    monomials
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect()
}

fn vector_in(x: &Element, index: &BTreeMap<Monomial, usize>) -> Result<SparseVec, Error> {
    let mut v = Vec::with_capacity(x.len());
    for (m, c) in x.terms() {
        let i = index.get(m).ok_or_else(|| {
            Error::Integrity(String::from("differential leaves its lower degree"))
        })?;
        v.push((*i, c.clone()));
    }
    v.sort_by_key(|(i, _)| *i);
    Ok(v)
}

fn unique_name(alg: &FreeAlgebra, base: String) -> String {
    let mut name = base;
    while alg.find(&name).is_some() {
        name.push('_');
    }
    name
}

/// Builds the bigraded minimal model of `(A, 0)` through degree `n`.
///
/// Needs `A` through degree `n + 1`.
pub fn build_minimal_model(a: &PresentedAlgebra, n: u32) -> Result<BigradedModel, Error> {
    if a.truncation() < n + 1 {
        return Err(Error::Truncation {
            degree: n + 1,
            truncation: a.truncation(),
        });
    }
    let mut positive = false;
    for m in 1..=n + 1 {
        positive |= a.graded_component(m)?.dim() > 0;
    }
    if !positive {
        return Err(Error::NothingToModel);
    }

    let mut dgca = FreeDgca::empty(n);
    let mut rho: Vec<Element> = Vec::new();
    for m in 2..=n {
        for g in a.indecomposables(m)?.generators {
            let name = a.free().generator(g).name.clone();
            dgca.push(Generator::new(name, m, 0), Element::zero())?;
            rho.push(Element::generator(g));
        }
        let target = a.graded_component(m + 1)?;
        let upper = lower_degree_split(dgca.algebra(), dgca.algebra().monomial_basis(m + 1));
        let lower = lower_degree_split(dgca.algebra(), dgca.algebra().monomial_basis(m));
        let top = upper.keys().next_back().copied().unwrap_or(0);
        let empty = Vec::new();
        for j in 0..=top {
            let here = upper.get(&j).unwrap_or(&empty);
            if here.is_empty() {
                continue;
            }
            let index = index_of(here);
            let cocycles = if j == 0 {
                let images: Vec<SparseVec> = here
                    .iter()
                    .map(|mono| {
                        let x = Element::monomial(mono.clone(), Scalar::one());
                        let r = rho_in(dgca.algebra(), &rho, a, &x);
                        linalg::from_dense(&target.coordinates(&r))
                    })
                    .collect();
                linalg::kernel_of_images(&images)
            } else {
                let mut next = LazyIndex::default();
                let images: Vec<SparseVec> = here
                    .iter()
                    .map(|mono| next.vector(&dgca.d_monomial(mono), &Scalar::zero()))
                    .collect();
                linalg::kernel_of_images(&images)
            };
            let mut boundaries = Echelon::new();
            for mono in lower.get(&(j + 1)).unwrap_or(&empty) {
                boundaries.insert(&vector_in(&dgca.d_monomial(mono), &index)?);
            }
            let reps = linalg::quotient_representatives(&boundaries, &cocycles);
            let stage = j + 1;
            for (k, row) in reps.rows().enumerate() {
                let mut d = Element::zero();
                for (i, c) in row {
                    d.add_term(here[*i].clone(), c.clone());
                }
                let name = unique_name(dgca.algebra(), format!("v{m}_s{stage}_{}", k + 1));
                dgca.push(Generator::new(name, m, stage), d)?;
                rho.push(Element::zero());
            }
        }
    }
    if let Err(fail) = dgca.verify_d_squared() {
        return Err(Error::Integrity(format!(
            "d² ≠ 0 on `{}`",
            dgca.algebra().generator(fail.generator).name
        )));
    }
    Ok(BigradedModel {
        dgca,
        rho,
        algebra: a.clone(),
    })
}

/// ρ of a homogeneous element, reduced in `A`.
fn rho_in(model: &FreeAlgebra, rho: &[Element], a: &PresentedAlgebra, x: &Element) -> Element {
    let raw = model.evaluate_hom(x, a.free(), |g| rho[g].clone());
    match a.free().degree(&raw) {
        Ok(Some(d)) if d <= a.truncation() => {
            a.graded_component(d).map(|c| c.reduce(&raw)).unwrap_or(raw)
        }
        _ => raw,
    }
}

impl BigradedModel {
    pub fn dgca(&self) -> &FreeDgca {
        &self.dgca
    }

    pub fn free(&self) -> &FreeAlgebra {
        self.dgca.algebra()
    }

    /// The source algebra `A`.
    pub fn algebra(&self) -> &PresentedAlgebra {
        &self.algebra
    }

    pub fn truncation(&self) -> u32 {
        self.dgca.truncation()
    }

    pub fn generator(&self, g: GenId) -> &Generator {
        self.free().generator(g)
    }

    pub fn find(&self, name: &str) -> Option<GenId> {
        self.free().find(name)
    }

    pub fn differential(&self, g: GenId) -> &Element {
        self.dgca.differential(g)
    }

    /// ρ(g), written over the generators of `A`.
    pub fn rho(&self, g: GenId) -> &Element {
        &self.rho[g]
    }

    /// ρ of a homogeneous element of `ΛV`, in normal form in `A`.
    pub fn rho_element(&self, x: &Element) -> Result<Element, Error> {
        self.free().degree(x)?;
        Ok(rho_in(self.free(), &self.rho, &self.algebra, x))
    }

    /// Generators of stage `k` and degree `m`, in global order.
    pub fn stage_slice(&self, k: u32, m: u32) -> Vec<GenId> {
        self.free()
            .generators()
            .iter()
            .enumerate()
            .filter(|(_, g)| g.stage == k && g.degree == m)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn generators_of_degree(&self, m: u32) -> Vec<GenId> {
        self.free()
            .generators()
            .iter()
            .enumerate()
            .filter(|(_, g)| g.degree == m)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn max_stage(&self) -> u32 {
        self.free()
            .generators()
            .iter()
            .map(|g| g.stage)
            .max()
            .unwrap_or(0)
    }

    pub fn rename(&mut self, old: &str, new: &str) -> Result<(), Error> {
        let g = self
            .find(old)
            .ok_or_else(|| Error::UnknownGenerator(old.into()))?;
        if new.is_empty() || !new.starts_with(char::is_alphabetic) {
            return Err(Error::InvalidGenerator {
                name: new.into(),
                reason: "not an identifier",
            });
        }
        self.dgca.algebra_mut().rename(g, new.into())
    }

    fn pure_component(&self, g: GenId) -> Element {
        let alg = self.free();
        self.differential(g).filter(|m| {
            m.factors()
                .iter()
                .all(|&(h, _)| alg.generator(h).stage == 0)
        })
    }

    /// Checks ρ(V_k) = 0 for k ≥ 1 and that `d(V_k)`, k ≥ 2, has no
    /// component in `Λ(V₀)`.
    pub fn verify_standard(&self) -> Vec<StandardViolation> {
        let mut out = Vec::new();
        for (g, gen) in self.free().generators().iter().enumerate() {
            if gen.stage >= 1 && !self.rho[g].is_zero() {
                out.push(StandardViolation::RhoNonzero { generator: g });
            }
            if gen.stage >= 2 {
                let component = self.pure_component(g);
                if !component.is_zero() {
                    out.push(StandardViolation::PureComponent {
                        generator: g,
                        component,
                    });
                }
            }
        }
        out
    }

    pub fn is_standard(&self) -> bool {
        self.verify_standard().is_empty()
    }

    /// Replaces the generator `g` by `g' = g + s`, keeping its name.
    ///
    /// `s` must be decomposable, of the degree of `g`, free of `g`, and
    /// killed by ρ. Differentials are rewritten through the substitution
    /// `g = g' - s`.
    pub fn change_variable(&mut self, g: GenId, s: &Element) -> Result<(), Error> {
        let alg = self.free();
        let gen = alg.generator(g).clone();
        if let Some(d) = alg.degree(s)? {
            if d != gen.degree {
                return Err(Error::Inhomogeneous);
            }
        }
        if s.terms().any(|(m, _)| m.word_length() < 2 || m.contains(g)) {
            return Err(Error::InvalidGenerator {
                name: gen.name,
                reason: "shift must be decomposable and must not involve the generator",
            });
        }
        if !self.rho_element(s)?.is_zero() && gen.stage >= 1 {
            return Err(Error::InvalidGenerator {
                name: gen.name,
                reason: "shift is not killed by ρ",
            });
        }
        let ds = self.dgca.d_extend(s)?;
        let new_dg = self.differential(g) + &ds;
        self.substitute(g, &-s);
        self.dgca.set_differential(g, new_dg);
        Ok(())
    }

    /// Rewrites every other differential through `g ↦ g + s`.
    fn substitute(&mut self, g: GenId, s: &Element) {
        let alg = self.free().clone();
        let mut image = Element::generator(g);
        image.add_scaled(s, &Scalar::one());
        for h in 0..alg.len() {
            if h == g {
                continue;
            }
            let dh = self.differential(h);
            if !dh.terms().any(|(m, _)| m.contains(g)) {
                continue;
            }
            let new = alg.evaluate_hom(dh, &alg, |k| {
                if k == g {
                    image.clone()
                } else {
                    Element::generator(k)
                }
            });
            self.dgca.set_differential(h, new);
        }
    }

    /// Moves the `Λ(V₀)`-pure part of every `d(y)`, stage ≥ 2, into a
    /// change of variables `y ← y - Σ fᵢvᵢ` with `fᵢ ∈ Λ(V₀)`, `vᵢ ∈ V₁`.
    /// Returns the substitutions made; an already standard model is left
    /// unchanged.
    pub fn standardize(&mut self) -> Result<Vec<Substitution>, Error> {
        let mut done = Vec::new();
        let stage_one: Vec<GenId> = (0..self.free().len())
            .filter(|&g| self.generator(g).stage == 1)
            .collect();
        for y in 0..self.free().len() {
            let gen = self.generator(y).clone();
            if gen.stage < 2 {
                continue;
            }
            let u0 = self.pure_component(y);
            if u0.is_zero() {
                continue;
            }
            let mut index = LazyIndex::default();
            let target = index.vector(&u0, &Scalar::zero());
            let mut candidates = Vec::new();
            let mut basis = Vec::new();
            for &v in &stage_one {
                let dv = self.generator(v).degree;
                if dv > gen.degree {
                    continue;
                }
                let fs = self
                    .free()
                    .monomial_basis_with(gen.degree - dv, |h| self.generator(h).stage == 0);
                for f in fs {
                    let fv = self
                        .free()
                        .multiply(&Element::monomial(f, Scalar::one()), &Element::generator(v));
                    let dfv = self.dgca.d_extend(&fv)?;
                    basis.push(index.vector(&dfv, &Scalar::zero()));
                    candidates.push(fv);
                }
            }
            let Some(coeffs) = linalg::solve_sparse(&basis, &target) else {
                return Err(Error::Integrity(format!(
                    "no Λ(V₀)·V₁ preimage for the pure part of d({})",
                    gen.name
                )));
            };
            let mut shift = Element::zero();
            for (c, fv) in coeffs.iter().zip(&candidates) {
                shift.add_scaled(fv, c);
            }
            // y' = y - shift: d(y') = dy - u0, and y = y' + shift elsewhere
            let new_dy = self.differential(y) - &u0;
            self.substitute(y, &shift);
            self.dgca.set_differential(y, new_dy);
            done.push(Substitution {
                generator: y,
                shift,
            });
        }
        if let Some(v) = self.verify_standard().first() {
            return Err(Error::NonStandard(format!("{v:?}")));
        }
        Ok(done)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_element;
    use alloc::string::ToString;
    use alloc::vec;
    use alloc::vec::Vec;

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

    fn wedge(k: usize, trunc: u32) -> PresentedAlgebra {
        let names: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
        let mut rels = Vec::new();
        for i in 0..k {
            for j in i..k {
                rels.push(format!("{}*{}", names[i], names[j]));
            }
        }
        let gens: Vec<&str> = names.iter().map(String::as_str).collect();
        let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
        present(&gens, &rels, trunc)
    }

    fn shown(m: &BigradedModel, x: &Element) -> String {
        m.free().display(x).to_string()
    }

    fn assert_quasi_iso(m: &BigradedModel) {
        for deg in 0..=m.truncation() {
            let h = m.dgca().cohomology(deg).unwrap().dim();
            let a = m.algebra().graded_component(deg).unwrap().dim();
            assert_eq!(h, a, "degree {deg}");
        }
    }

    /// Dimensions of the free graded Lie algebra on `k` generators of
    /// degree one, from the product formula for its enveloping algebra
    /// `T(W)`: `1/(1-kt) = Π_odd (1+t^i)^{l_i} / Π_even (1-t^i)^{l_i}`.
    fn free_lie_dims(k: i64, top: usize) -> Vec<i64> {
        let mut l = vec![0i64; top + 1];
        for i in 1..=top {
            let mut series = vec![0i64; top + 1];
            series[0] = 1;
            for (deg, &li) in l.iter().enumerate().take(i).skip(1) {
                for _ in 0..li {
                    if deg % 2 == 1 {
                        for t in (deg..=top).rev() {
                            series[t] += series[t - deg];
                        }
                    } else {
                        for t in deg..=top {
                            series[t] += series[t - deg];
                        }
                    }
                }
            }
            l[i] = k.pow(i as u32) - series[i];
        }
        l
    }

    #[test]
    fn lie_oracle_sanity() {
        assert_eq!(&free_lie_dims(3, 4)[1..], &[3, 6, 8, 18]);
        assert_eq!(&free_lie_dims(2, 3)[1..], &[2, 3, 2]);
    }

    #[test]
    fn sphere_model() {
        let a = present(&["a"], &["a^2"], 5);
        let m = build_minimal_model(&a, 4).unwrap();
        assert_eq!(m.free().len(), 2);
        let b = m.stage_slice(1, 3);
        assert_eq!(b.len(), 1);
        assert_eq!(shown(&m, m.differential(b[0])), "a^2");
        assert!(m.rho(b[0]).is_zero());
        assert_quasi_iso(&m);
        assert!(m.is_standard());
    }

    #[test]
    fn wedge_of_three_low_degrees() {
        let m = build_minimal_model(&wedge(3, 4), 3).unwrap();
        let names: Vec<&str> = m
            .stage_slice(0, 2)
            .iter()
            .map(|&g| m.generator(g).name.as_str())
            .collect();
        assert_eq!(names, ["a1", "a2", "a3"]);
        let mut ds: Vec<String> = m
            .stage_slice(1, 3)
            .iter()
            .map(|&g| shown(&m, m.differential(g)))
            .collect();
        ds.sort();
        assert_eq!(ds, ["a1*a2", "a1*a3", "a1^2", "a2*a3", "a2^2", "a3^2"]);
        assert_eq!(m.stage_slice(5, 2), Vec::<GenId>::new());
    }

    #[test]
    fn wedge_dimensions_match_free_lie_algebra() {
        let m = build_minimal_model(&wedge(3, 6), 5).unwrap();
        let lie = free_lie_dims(3, 4);
        for deg in 2..=5u32 {
            assert_eq!(
                m.generators_of_degree(deg).len() as i64,
                lie[deg as usize - 1],
                "V^{deg}"
            );
        }
        assert_quasi_iso(&m);
        assert!(m.is_standard());
        assert!(m.dgca().is_minimal());
    }

    #[test]
    fn stages_decrease_along_d() {
        let m = build_minimal_model(&wedge(2, 6), 5).unwrap();
        for g in 0..m.free().len() {
            let s = m.generator(g).stage;
            for (mono, _) in m.differential(g).terms() {
                assert_eq!(m.free().lower_degree_of(mono) + 1, s);
            }
        }
    }

    #[test]
    fn rho_is_multiplicative_on_products() {
        let a = present(
            &["x1", "x2", "x3"],
            &["x1^2", "x2^2", "x3^2", "x1*x2*x3"],
            6,
        );
        let m = build_minimal_model(&a, 5).unwrap();
        assert_quasi_iso(&m);
        let x1 = Element::generator(m.find("x1").unwrap());
        let x2 = Element::generator(m.find("x2").unwrap());
        let p = m.rho_element(&m.free().multiply(&x1, &x2)).unwrap();
        let q = m
            .algebra()
            .product(&m.rho_element(&x1).unwrap(), &m.rho_element(&x2).unwrap())
            .unwrap();
        assert_eq!(p, q);
        // z kills x1x2x3
        let z = m.stage_slice(1, 5);
        assert_eq!(z.len(), 1);
        assert_eq!(shown(&m, m.differential(z[0])), "x1*x2*x3");
    }

    #[test]
    fn needs_algebra_one_degree_higher() {
        let a = present(&["a"], &["a^2"], 4);
        assert!(matches!(
            build_minimal_model(&a, 4),
            Err(Error::Truncation { degree: 5, .. })
        ));
    }

    #[test]
    fn nothing_to_model() {
        let a = PresentedAlgebra::new(FreeAlgebra::new(), Vec::new(), 5).unwrap();
        assert_eq!(
            build_minimal_model(&a, 4).unwrap_err(),
            Error::NothingToModel
        );
    }

    fn perturbed() -> (BigradedModel, GenId) {
        let mut m = build_minimal_model(&wedge(2, 6), 5).unwrap();
        let c = m.generators_of_degree(5)[0];
        assert!(m.generator(c).stage >= 2);
        let a1 = m.find("a1").unwrap();
        let b1 = m.stage_slice(1, 3)[0];
        assert_eq!(shown(&m, m.differential(b1)), "a1^2");
        let shift = m
            .free()
            .multiply(&Element::generator(a1), &Element::generator(b1));
        m.change_variable(c, &shift).unwrap();
        (m, c)
    }

    #[test]
    fn perturbation_is_reported_and_undone() {
        let original = build_minimal_model(&wedge(2, 6), 5).unwrap();
        let (mut m, c) = perturbed();
        let violations = m.verify_standard();
        assert_eq!(violations.len(), 1);
        match &violations[0] {
            StandardViolation::PureComponent {
                generator,
                component,
            } => {
                assert_eq!(*generator, c);
                assert_eq!(shown(&m, component), "a1^3");
            }
            v => panic!("unexpected {v:?}"),
        }
        let subs = m.standardize().unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(shown(&m, &subs[0].shift), "a1*v3_s1_1");
        for g in 0..m.free().len() {
            assert_eq!(m.differential(g), original.differential(g));
        }
        assert!(m.verify_standard().is_empty());
    }

    #[test]
    fn standardize_is_idempotent_and_trivial_on_standard_models() {
        let mut m = build_minimal_model(&wedge(2, 6), 5).unwrap();
        let before = m.dgca().clone();
        assert!(m.standardize().unwrap().is_empty());
        assert_eq!(m.dgca(), &before);

        let (mut p, _) = perturbed();
        p.standardize().unwrap();
        let once = p.dgca().clone();
        assert!(p.standardize().unwrap().is_empty());
        assert_eq!(p.dgca(), &once);
        assert!(p.dgca().verify_d_squared().is_ok());
    }

    #[test]
    fn renaming() {
        let mut m = build_minimal_model(&wedge(1, 5), 4).unwrap();
        m.rename("v3_s1_1", "b").unwrap();
        assert!(m.find("b").is_some());
        assert_eq!(
            m.rename("b", "a1"),
            Err(Error::DuplicateGenerator("a1".into()))
        );
        assert_eq!(
            m.rename("zz", "q"),
            Err(Error::UnknownGenerator("zz".into()))
        );
    }
}

//! Free graded-commutative algebras `ΛV = S(V^even) ⊗ E(V^odd)`.
//!
//! Generators live in a [`FreeAlgebra`] table whose index order is the
//! global generator order `(degree, stage, creation index, name)`. Monomials
//! and elements are plain data that only make sense together with the table
//! they were built against.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::iter;

use num_traits::{One, Zero};

use crate::linalg::Scalar;
use crate::Error;

pub type GenId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    /// Lower degree `k` of the slot `V_k` this generator belongs to.
    pub stage: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32, stage: u32) -> Self {
        Self {
            name: name.into(),
            degree,
            stage,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// A normalized monomial: generator ids in increasing order with positive
/// exponents, odd generators with exponent 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<(GenId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn generator(g: GenId) -> Self {
        Self {
            factors: alloc::vec![(g, 1)],
        }
    }

    /// Caller guarantees the factors are already normalized.
    pub(crate) fn from_sorted(factors: Vec<(GenId, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        Self { factors }
    }

    pub fn factors(&self) -> &[(GenId, u32)] {
        &self.factors
    }

    /// Factors with multiplicity, in order.
    pub fn expanded(&self) -> impl Iterator<Item = GenId> + '_ {
        self.factors
            .iter()
            .flat_map(|&(g, e)| iter::repeat_n(g, e as usize))
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn word_length(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, g: GenId) -> u32 {
        self.factors
            .iter()
            .find(|(h, _)| *h == g)
            .map_or(0, |(_, e)| *e)
    }

    pub fn contains(&self, g: GenId) -> bool {
        self.exponent(g) > 0
    }

    pub fn as_generator(&self) -> Option<GenId> {
        match self.factors.as_slice() {
            [(g, 1)] => Some(*g),
            _ => None,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.expanded().cmp(other.expanded())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite linear combination of monomials with nonzero rational
/// coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one(), Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn generator(g: GenId) -> Self {
        Self::monomial(Monomial::generator(g), Scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut x = Self::zero();
        x.add_term(m, c);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, x)| (m.clone(), x.clone()))
                .collect(),
        }
    }

    /// The linear part: coefficients of single generators.
    pub fn linear_part(&self) -> impl Iterator<Item = (GenId, &Scalar)> + '_ {
        self.terms
            .iter()
            .filter_map(|(m, x)| m.as_generator().map(|g| (g, x)))
    }

    /// Splits by word length (number of factors with multiplicity).
    pub fn word_length_split(&self) -> BTreeMap<u32, Element> {
        let mut out: BTreeMap<u32, Element> = BTreeMap::new();
        for (m, x) in &self.terms {
            out.entry(m.word_length())
                .or_default()
                .terms
                .insert(m.clone(), x.clone());
        }
        out
    }
}

impl core::ops::Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl core::ops::Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl core::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scaled(&-Scalar::one())
    }
}

impl core::ops::Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl core::ops::Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl core::ops::Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

/// Degree bookkeeping for an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(u32),
    Mixed,
}

/// The generator table of a free graded-commutative algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeAlgebra {
    gens: Vec<Generator>,
}

fn sort_key(g: &Generator) -> (u32, u32) {
    (g.degree, g.stage)
}

impl FreeAlgebra {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table from generators listed in creation order; they are
    /// stably sorted into the global order.
    pub fn from_generators(gens: Vec<Generator>) -> Result<Self, Error> {
        let mut sorted = gens;
        sorted.sort_by(|a, b| sort_key(a).cmp(&sort_key(b)));
        let mut alg = Self::new();
        for g in sorted {
            alg.push(g)?;
        }
        Ok(alg)
    }

    /// Appends a generator. It must not precede the current last generator
    /// in `(degree, stage)` order, so that ids stay in global order.
    pub fn push(&mut self, g: Generator) -> Result<GenId, Error> {
        if g.degree == 0 {
            return Err(Error::InvalidGenerator {
                name: g.name,
                reason: "degree 0",
            });
        }
        if self.find(&g.name).is_some() {
            return Err(Error::DuplicateGenerator(g.name));
        }
        if let Some(last) = self.gens.last() {
            if sort_key(&g) < sort_key(last) {
                return Err(Error::InvalidGenerator {
                    name: g.name,
                    reason: "out of (degree, stage) order",
                });
            }
        }
        self.gens.push(g);
        Ok(self.gens.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, g: GenId) -> &Generator {
        &self.gens[g]
    }

    pub fn find(&self, name: &str) -> Option<GenId> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub(crate) fn rename(&mut self, g: GenId, name: String) -> Result<(), Error> {
        if self.gens[g].name == name {
            return Ok(());
        }
        if self.find(&name).is_some() {
            return Err(Error::DuplicateGenerator(name));
        }
        self.gens[g].name = name;
        Ok(())
    }

    pub fn is_odd(&self, g: GenId) -> bool {
        self.gens[g].is_odd()
    }

    pub fn degree_of(&self, m: &Monomial) -> u32 {
        m.factors
            .iter()
            .map(|&(g, e)| self.gens[g].degree * e)
            .sum()
    }

    /// Sum of stages with multiplicity: the lower degree of a monomial.
    pub fn lower_degree_of(&self, m: &Monomial) -> u32 {
        m.factors.iter().map(|&(g, e)| self.gens[g].stage * e).sum()
    }

    pub fn homogeneity(&self, x: &Element) -> Homogeneity {
        let mut degrees = x.terms.keys().map(|m| self.degree_of(m));
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(d) if degrees.all(|e| e == d) => Homogeneity::Degree(d),
            Some(_) => Homogeneity::Mixed,
        }
    }

    /// Degree of a homogeneous element; zero counts as any degree and
    /// reports `None`.
    pub fn degree(&self, x: &Element) -> Result<Option<u32>, Error> {
        match self.homogeneity(x) {
            Homogeneity::Zero => Ok(None),
            Homogeneity::Degree(d) => Ok(Some(d)),
            Homogeneity::Mixed => Err(Error::Inhomogeneous),
        }
    }

    /// Sorts a list of generators into normal form, tracking the Koszul
    /// sign. Returns `None` when an odd generator is repeated.
    pub fn normalize_monomial(&self, factors: &[GenId]) -> Option<(i8, Monomial)> {
        let mut seq = factors.to_vec();
        let mut sign = 1i8;
        // insertion sort; each swap of two odd factors flips the sign
        for i in 1..seq.len() {
            let mut j = i;
            while j > 0 && seq[j - 1] > seq[j] {
                if self.is_odd(seq[j - 1]) && self.is_odd(seq[j]) {
                    sign = -sign;
                }
                seq.swap(j - 1, j);
                j -= 1;
            }
        }
        let mut out: Vec<(GenId, u32)> = Vec::new();
        for g in seq {
            match out.last_mut() {
                Some((h, e)) if *h == g => {
                    if self.is_odd(g) {
                        return None;
                    }
                    *e += 1;
                }
                _ => out.push((g, 1)),
            }
        }
        Some((sign, Monomial { factors: out }))
    }

    /// Product of two normalized monomials with its Koszul sign.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(i8, Monomial)> {
        let mut flips = 0usize;
        for &(y, _) in b.factors.iter().filter(|(y, _)| self.is_odd(*y)) {
            for &(x, _) in a.factors.iter().filter(|(x, _)| self.is_odd(*x)) {
                match x.cmp(&y) {
                    Ordering::Greater => flips += 1,
                    Ordering::Equal => return None,
                    Ordering::Less => {}
                }
            }
        }
        let mut out = Vec::with_capacity(a.factors.len() + b.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < a.factors.len() || j < b.factors.len() {
            let next = match (a.factors.get(i), b.factors.get(j)) {
                (Some(&(x, e)), Some(&(y, f))) => match x.cmp(&y) {
                    Ordering::Less => {
                        i += 1;
                        (x, e)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (y, f)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (x, e + f)
                    }
                },
                (Some(&p), None) => {
                    i += 1;
                    p
                }
                (None, Some(&q)) => {
                    j += 1;
                    q
                }
                (None, None) => unreachable!(),
            };
            out.push(next);
        }
        let sign = if flips % 2 == 0 { 1 } else { -1 };
        Some((sign, Monomial { factors: out }))
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (a, p) in &x.terms {
            for (b, q) in &y.terms {
                if let Some((sign, m)) = self.mul_monomials(a, b) {
                    let c = p * q;
                    out.add_term(m, if sign < 0 { -c } else { c });
                }
            }
        }
        out
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Element>>(&self, xs: I) -> Element {
        xs.into_iter()
            .fold(Element::one(), |acc, x| self.multiply(&acc, x))
    }

    /// Applies the algebra homomorphism determined by `image` on generators.
    /// The images must respect degree parity so that Koszul signs carry
    /// over; the target algebra supplies the multiplication.
    pub fn evaluate_hom(
        &self,
        x: &Element,
        target: &FreeAlgebra,
        mut image: impl FnMut(GenId) -> Element,
    ) -> Element {
        let mut cache: BTreeMap<GenId, Element> = BTreeMap::new();
        let mut out = Element::zero();
        for (m, c) in &x.terms {
            let mut acc = Element::constant(c.clone());
            for g in m.expanded() {
                let img = cache.entry(g).or_insert_with(|| image(g));
                acc = target.multiply(&acc, img);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(&acc, &Scalar::one());
        }
        out
    }

    /// All degree-`m` monomials in the generators accepted by `keep`, in
    /// monomial order.
    pub fn monomial_basis_with(&self, m: u32, keep: impl Fn(GenId) -> bool) -> Vec<Monomial> {
        let usable: Vec<GenId> = (0..self.gens.len())
            .filter(|&g| self.gens[g].degree > 0 && keep(g))
            .collect();
        let mut out = Vec::new();
        let mut current: Vec<(GenId, u32)> = Vec::new();
        self.enumerate(&usable, 0, m, &mut current, &mut out);
        out.sort();
        out
    }

    pub fn monomial_basis(&self, m: u32) -> Vec<Monomial> {
        self.monomial_basis_with(m, |_| true)
    }

    fn enumerate(
        &self,
        usable: &[GenId],
        start: usize,
        remaining: u32,
        current: &mut Vec<(GenId, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push(Monomial {
                factors: current.clone(),
            });
            return;
        }
        for (k, &g) in usable.iter().enumerate().skip(start) {
            let gen = &self.gens[g];
            if gen.degree > remaining {
                // ids are sorted by degree
                break;
            }
            let max_exp = if gen.is_odd() {
                1
            } else {
                remaining / gen.degree
            };
            for e in 1..=max_exp {
                current.push((g, e));
                self.enumerate(usable, k + 1, remaining - e * gen.degree, current, out);
                current.pop();
            }
        }
    }

    pub fn display<'a>(&'a self, x: &'a Element) -> ElementDisplay<'a> {
        ElementDisplay { alg: self, x }
    }

    pub fn display_monomial<'a>(&'a self, m: &'a Monomial) -> MonomialDisplay<'a> {
        MonomialDisplay { alg: self, m }
    }
}

pub struct MonomialDisplay<'a> {
    alg: &'a FreeAlgebra,
    m: &'a Monomial,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return write!(f, "1");
        }
        for (i, &(g, e)) in self.m.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", self.alg.gens[g].name)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Renders in the shared element grammar, e.g. `a1^2*b - 3/2*c`.
pub struct ElementDisplay<'a> {
    alg: &'a FreeAlgebra,
    x: &'a Element,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.x.terms.iter().enumerate() {
            let negative = c < &Scalar::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = self.alg.display_monomial(m);
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use alloc::string::ToString;
    use alloc::vec;

    fn alg(spec: &[(&str, u32)]) -> FreeAlgebra {
        FreeAlgebra::from_generators(
            spec.iter()
                .map(|(n, d)| Generator::new(*n, *d, 0))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn odd_square_vanishes() {
        let a = alg(&[("b", 3)]);
        assert_eq!(a.normalize_monomial(&[0, 0]), None);
    }

    #[test]
    fn odd_transposition_flips_sign() {
        let a = alg(&[("b", 3), ("c", 3)]);
        let (sign, m) = a.normalize_monomial(&[1, 0]).unwrap();
        assert_eq!(sign, -1);
        assert_eq!(a.display_monomial(&m).to_string(), "b*c");
    }

    #[test]
    fn even_square_is_a_power() {
        let a = alg(&[("a", 2)]);
        let (sign, m) = a.normalize_monomial(&[0, 0]).unwrap();
        assert_eq!(sign, 1);
        assert_eq!(a.display_monomial(&m).to_string(), "a^2");
    }

    #[test]
    fn normalize_is_stable() {
        let a = alg(&[("a", 2), ("b", 3), ("c", 3)]);
        let (_, m) = a.normalize_monomial(&[2, 0, 1, 0]).unwrap();
        let again: Vec<GenId> = m.expanded().collect();
        assert_eq!(a.normalize_monomial(&again), Some((1, m)));
    }

    #[test]
    fn multiply_examples() {
        let a = alg(&[("a", 2), ("b", 2)]);
        let x = Element::generator(0);
        let sum = &Element::generator(0) + &Element::generator(1);
        assert_eq!(a.display(&a.multiply(&x, &sum)).to_string(), "a^2 + a*b");

        let diff = &Element::generator(0) - &Element::generator(1);
        assert_eq!(a.display(&a.multiply(&sum, &diff)).to_string(), "a^2 - b^2");

        let o = alg(&[("b", 3), ("c", 3)]);
        let bc = o.multiply(&Element::generator(0), &Element::generator(1));
        let cb = o.multiply(&Element::generator(1), &Element::generator(0));
        assert_eq!(bc, -cb);
    }

    #[test]
    fn monomial_basis_examples() {
        let a = alg(&[("a", 2)]);
        let b = a.monomial_basis(6);
        assert_eq!(b.len(), 1);
        assert_eq!(a.display_monomial(&b[0]).to_string(), "a^3");

        let three = alg(&[("a1", 2), ("a2", 2), ("a3", 2)]);
        assert_eq!(three.monomial_basis(4).len(), 6);

        let mixed = alg(&[("a", 2), ("b", 3)]);
        let b = mixed.monomial_basis(7);
        assert_eq!(b.len(), 1);
        assert_eq!(mixed.display_monomial(&b[0]).to_string(), "a^2*b");
    }

    #[test]
    fn word_length_split_examples() {
        let a = alg(&[("a", 2), ("b", 3)]);
        let mut x = Element::generator(1);
        x.add_term(Monomial::from_sorted(vec![(0, 2)]), int(1));
        let split = x.word_length_split();
        assert_eq!(split.len(), 2);
        assert_eq!(a.display(&split[&1]).to_string(), "b");
        assert_eq!(a.display(&split[&2]).to_string(), "a^2");
        assert!(Element::zero().word_length_split().is_empty());

        let t = alg(&[("a1", 2), ("a2", 2), ("a3", 2)]);
        let mut y = Element::zero();
        y.add_term(Monomial::from_sorted(vec![(0, 1), (1, 1)]), int(1));
        y.add_term(Monomial::from_sorted(vec![(0, 1), (1, 1), (2, 1)]), int(1));
        let split = y.word_length_split();
        assert_eq!(t.display(&split[&2]).to_string(), "a1*a2");
        assert_eq!(t.display(&split[&3]).to_string(), "a1*a2*a3");
    }

    #[test]
    fn display_grammar() {
        let a = alg(&[("a1", 2), ("b", 3), ("c", 7)]);
        let mut x = Element::zero();
        x.add_term(Monomial::from_sorted(vec![(0, 2), (1, 1)]), int(1));
        x.add_term(Monomial::generator(2), crate::linalg::ratio(-3, 2));
        assert_eq!(a.display(&x).to_string(), "a1^2*b - 3/2*c");
        assert_eq!(a.display(&Element::constant(int(-2))).to_string(), "-2");
        assert_eq!(a.display(&Element::zero()).to_string(), "0");
    }

    #[test]
    fn generators_are_sorted_on_construction() {
        let a = alg(&[("z", 5), ("x", 2), ("y", 3)]);
        let names: Vec<&str> = a.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["x", "y", "z"]);
    }

    #[test]
    fn duplicate_names_rejected() {
        let err = FreeAlgebra::from_generators(vec![
            Generator::new("a", 2, 0),
            Generator::new("a", 4, 0),
        ]);
        assert!(matches!(err, Err(Error::DuplicateGenerator(_))));
    }
}

//! Strategies and property bodies shared by the property suite and the
//! acceptance harness.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError};
use sullivan::*;

pub type Checked = Result<(), TestCaseError>;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        max_global_rejects: 20 * cases,
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}

/// Random presentation: `k` generators of degree 2, optionally one odd
/// generator `y` of degree 3, and random relations in degrees 4 and 5.
#[derive(Clone, Debug)]
pub struct Shape {
    pub k: usize,
    pub odd: bool,
    pub quadratic: Vec<Vec<i64>>,
    pub mixed: Vec<Vec<i64>>,
}

pub fn shape() -> impl Strategy<Value = Shape> {
    (1usize..=3, any::<bool>()).prop_flat_map(|(k, odd)| {
        let quads = k * (k + 1) / 2;
        (
            Just(k),
            Just(odd),
            prop::collection::vec(prop::collection::vec(-2i64..=2, quads), 0..=3),
            prop::collection::vec(
                prop::collection::vec(-1i64..=1, k),
                0..=if odd { 2 } else { 0 },
            ),
        )
            .prop_map(|(k, odd, quadratic, mixed)| Shape {
                k,
                odd,
                quadratic,
                mixed,
            })
    })
}

pub fn presentation(s: &Shape, trunc: u32) -> PresentedAlgebra {
    let mut gens: Vec<Generator> = (1..=s.k)
        .map(|i| Generator::new(format!("a{i}"), 2, 0))
        .collect();
    if s.odd {
        gens.push(Generator::new("y", 3, 0));
    }
    let free = FreeAlgebra::from_generators(gens).unwrap();
    let quads = free.monomial_basis_with(4, |g| g < s.k);
    let mut rels = Vec::new();
    for coeffs in &s.quadratic {
        let mut r = Element::zero();
        for (m, c) in quads.iter().zip(coeffs) {
            r.add_term(m.clone(), int(*c));
        }
        rels.push(r);
    }
    if s.odd {
        let y = free.find("y").unwrap();
        for coeffs in &s.mixed {
            let mut r = Element::zero();
            for (i, c) in coeffs.iter().enumerate() {
                let ay = free.multiply(&Element::generator(i), &Element::generator(y));
                r.add_scaled(&ay, &int(*c));
            }
            rels.push(r);
        }
    }
    PresentedAlgebra::new(free, rels, trunc).unwrap()
}

/// The model of a random presentation through degree 5.
pub fn model(s: &Shape) -> BigradedModel {
    build_minimal_model(&presentation(s, 6), 5).unwrap()
}

/// Picks a homogeneous element of degree `m` from index/coefficient seeds.
pub fn element(alg: &FreeAlgebra, m: u32, seeds: &[(usize, i64)]) -> Element {
    let basis = alg.monomial_basis(m);
    let mut x = Element::zero();
    if basis.is_empty() {
        return x;
    }
    for (i, c) in seeds {
        x.add_term(basis[i % basis.len()].clone(), int(*c));
    }
    x
}

pub fn seeds() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((any::<usize>(), -3i64..=3), 1..4)
}

/// Degrees `p, q ≥ 2` with `p + q ≤ 5`, inside a model truncated at 5.
pub fn degree_pair() -> impl Strategy<Value = (u32, u32)> {
    (2u32..=3).prop_flat_map(|p| (Just(p), 2..=5 - p))
}

/// Nonzero rationals `p/q` with small numerator and denominator.
pub fn nonzero_ratio() -> impl Strategy<Value = Scalar> {
    (prop_oneof![-5i64..=-1, 1i64..=5], 1i64..=4).prop_map(|(p, q)| Scalar::new(p.into(), q.into()))
}

/// A functional on a random subset of `V^(n-1)`.
pub fn random_alpha(m: &BigradedModel, n: u32, vals: &[i64]) -> Option<AlphaFunctional> {
    let slice = m.generators_of_degree(n - 1);
    if slice.is_empty() {
        return None;
    }
    let mut alpha = AlphaFunctional::zero(n);
    for (i, v) in vals.iter().enumerate() {
        alpha.set(m, slice[i % slice.len()], int(*v)).unwrap();
    }
    Some(alpha)
}

fn sign(p: u32, q: u32) -> Scalar {
    if p % 2 == 1 && q % 2 == 1 {
        int(-1)
    } else {
        int(1)
    }
}

pub fn mixed_algebra() -> FreeAlgebra {
    FreeAlgebra::from_generators(vec![
        Generator::new("a", 2, 0),
        Generator::new("b", 2, 0),
        Generator::new("x", 3, 0),
        Generator::new("y", 3, 0),
        Generator::new("w", 5, 0),
    ])
    .unwrap()
}

pub fn graded_commutativity_and_associativity(
    (p, q, r): (u32, u32, u32),
    sx: &[(usize, i64)],
    sy: &[(usize, i64)],
    sz: &[(usize, i64)],
) -> Checked {
    let alg = mixed_algebra();
    let x = element(&alg, p, sx);
    let y = element(&alg, q, sy);
    let z = element(&alg, r, sz);
    let xy = alg.multiply(&x, &y);
    prop_assert_eq!(&xy, &alg.multiply(&y, &x).scaled(&sign(p, q)));
    prop_assert_eq!(
        alg.multiply(&xy, &z),
        alg.multiply(&x, &alg.multiply(&y, &z))
    );
    Ok(())
}

pub fn printed_elements_parse_back(p: u32, sx: &[(usize, i64)]) -> Checked {
    let alg = mixed_algebra();
    let x = element(&alg, p, sx);
    let text = alg.display(&x).to_string();
    prop_assert_eq!(parse_element(&alg, &text).unwrap(), x);
    Ok(())
}

pub fn models_are_minimal_and_quasi_isomorphic(s: &Shape) -> Checked {
    let a = presentation(s, 6);
    let m = build_minimal_model(&a, 5).unwrap();
    prop_assert!(m.dgca().verify_d_squared().is_ok());
    prop_assert!(m.dgca().is_minimal());
    prop_assert!(m.is_standard());
    for deg in 0..=5 {
        prop_assert_eq!(
            m.dgca().cohomology(deg).unwrap().dim(),
            a.graded_component(deg).unwrap().dim()
        );
    }
    for g in 0..m.free().len() {
        let rho_d = m.rho_element(m.differential(g)).unwrap();
        prop_assert!(rho_d.is_zero());
    }
    Ok(())
}

pub fn leibniz_rule(
    s: &Shape,
    (p, q): (u32, u32),
    sx: &[(usize, i64)],
    sy: &[(usize, i64)],
) -> Checked {
    let m = model(s);
    let (alg, d) = (m.free(), m.dgca());
    let x = element(alg, p, sx);
    let y = element(alg, q, sy);
    let lhs = d.d_extend(&alg.multiply(&x, &y)).unwrap();
    let mut rhs = alg.multiply(&d.d_extend(&x).unwrap(), &y);
    let right = alg.multiply(&x, &d.d_extend(&y).unwrap());
    rhs.add_scaled(&right, &if p % 2 == 1 { int(-1) } else { int(1) });
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn class_products_ignore_representatives(
    s: &Shape,
    (p, q): (u32, u32),
    pick: (usize, usize),
    bx: &[(usize, i64)],
    by: &[(usize, i64)],
) -> Checked {
    let m = model(s);
    let d = m.dgca();
    let (hp, hq) = (d.cohomology(p).unwrap(), d.cohomology(q).unwrap());
    let (basis_p, basis_q) = (d.basis_classes(&hp), d.basis_classes(&hq));
    prop_assume!(!basis_p.is_empty() && !basis_q.is_empty());
    let x = &basis_p[pick.0 % basis_p.len()];
    let y = &basis_q[pick.1 % basis_q.len()];
    let shift = |z: &CohomologyClass, seeds: &[(usize, i64)]| {
        let b = d.d_extend(&element(m.free(), z.degree - 1, seeds)).unwrap();
        let group = d.cohomology(z.degree).unwrap();
        d.class_of(&group, &(&z.representative + &b)).unwrap()
    };
    let direct = d.class_product(x, y).unwrap();
    let moved = d.class_product(&shift(x, bx), &shift(y, by)).unwrap();
    prop_assert_eq!(direct.coordinates, moved.coordinates);
    Ok(())
}

/// Perturbs a stage-≥2 generator `y ↦ y + c·f·v` (f pure in `V₀`, v in
/// `V₁`) and checks that standardize restores a standard model.
pub fn standardize_undoes_perturbations(
    s: &Shape,
    pick: usize,
    fs: &[(usize, i64)],
    c: i64,
) -> Checked {
    let m0 = model(s);
    let targets: Vec<GenId> = (0..m0.free().len())
        .filter(|&g| m0.generator(g).stage >= 2 && m0.generator(g).degree >= 5)
        .collect();
    prop_assume!(!targets.is_empty());
    let y = targets[pick % targets.len()];
    let deg = m0.generator(y).degree;
    let stage_one = m0.stage_slice(1, 3);
    prop_assume!(!stage_one.is_empty());
    let v = stage_one[fs[0].0 % stage_one.len()];
    let f = element(m0.free(), deg - 3, fs);
    let pure_f = f.terms().all(|(mono, _)| {
        mono.factors()
            .iter()
            .all(|&(g, _)| m0.generator(g).stage == 0)
    });
    prop_assume!(pure_f);
    let shift = m0
        .free()
        .multiply(&f, &Element::generator(v))
        .scaled(&int(c));
    let mut m = m0.clone();
    m.change_variable(y, &shift).unwrap();
    m.standardize().unwrap();
    prop_assert!(m.verify_standard().is_empty());
    prop_assert!(m.dgca().verify_d_squared().is_ok());
    for g in 0..m.free().len() {
        prop_assert_eq!(m.generator(g), m0.generator(g));
        prop_assert!(m.generator(g).stage == 0 || m.rho(g).is_zero());
    }
    for deg in 0..=5 {
        prop_assert_eq!(
            m.dgca().cohomology(deg).unwrap().dim(),
            m0.dgca().cohomology(deg).unwrap().dim()
        );
    }
    let once = m.dgca().clone();
    prop_assert!(m.standardize().unwrap().is_empty());
    prop_assert_eq!(m.dgca(), &once);
    Ok(())
}

/// `[u] ≠ 0` exactly when α vanishes on stage 0, with the matching change
/// in `dim H^n` or `dim H^(n-1)`.
pub fn u_class_detects_stage_zero_support(s: &Shape, n: u32, vals: &[i64]) -> Checked {
    let m = model(s);
    let alpha = random_alpha(&m, n, vals);
    prop_assume!(alpha.is_some());
    let alpha = alpha.unwrap();
    let att = AttachmentModel::new(&m, alpha.clone()).unwrap();
    let u = att.u_class().unwrap();
    let hurewicz = hurewicz_vanishes(&m, &alpha).unwrap();
    prop_assert_eq!(hurewicz, !u.is_zero());
    prop_assert!(!is_special(&m, &alpha).unwrap().0 || hurewicz);
    let h_n = att.cohomology(n).unwrap().dim();
    let h_n1 = att.cohomology(n - 1).unwrap().dim();
    let a = m.algebra();
    if hurewicz {
        prop_assert_eq!(h_n, a.graded_component(n).unwrap().dim() + 1);
    } else {
        prop_assert_eq!(h_n1 + 1, a.graded_component(n - 1).unwrap().dim());
    }
    Ok(())
}

pub fn verdict_ignores_scaling(s: &Shape, n: u32, vals: &[i64], c: &Scalar) -> Checked {
    let m = model(s);
    let alpha = random_alpha(&m, n, vals);
    prop_assume!(alpha.is_some());
    let alpha = alpha.unwrap();
    let v1 = formality_verdict(&m, &alpha).unwrap();
    let v2 = formality_verdict(&m, &alpha.scaled(c)).unwrap();
    prop_assert_eq!(v1.status, v2.status);
    prop_assert_eq!(v1.clause, v2.clause);
    Ok(())
}

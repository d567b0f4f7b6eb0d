//! End-to-end runs on the worked examples: wedges of spheres, the 5-cell
//! attachment on a wedge of three 2-spheres, and the X₀ ∨ X₁ attachment.

use sullivan::*;

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

fn int(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}

fn wedge3(trunc: u32) -> PresentedAlgebra {
    present(
        &["a1", "a2", "a3"],
        &["a1^2", "a2^2", "a3^2", "a1*a2", "a2*a3", "a1*a3"],
        trunc,
    )
}

fn x_algebra() -> PresentedAlgebra {
    let mut rels = vec![
        "a1^2", "a2^2", "a3^2", "a1*a2", "a2*a3", "a1*a3", "x1^2", "x2^2", "x3^2", "x1*x2*x3",
    ];
    let mixed: Vec<String> = (1..=3)
        .flat_map(|i| (1..=3).map(move |j| format!("a{i}*x{j}")))
        .collect();
    rels.extend(mixed.iter().map(String::as_str));
    present(&["a1", "a2", "a3", "x1", "x2", "x3"], &rels, 7)
}

fn shown(m: &BigradedModel, x: &Element) -> String {
    m.free().display(x).to_string()
}

fn find_by_differential(m: &BigradedModel, degree: u32, d: &str) -> GenId {
    *m.generators_of_degree(degree)
        .iter()
        .find(|&&g| shown(m, m.differential(g)) == d)
        .unwrap_or_else(|| panic!("no generator with d = {d}"))
}

#[test]
fn wedge3_model_table() {
    let m = build_minimal_model(&wedge3(6), 5).unwrap();
    assert_eq!(m.stage_slice(0, 2).len(), 3);
    assert_eq!(m.stage_slice(1, 3).len(), 6);
    for d in ["a1^2", "a2^2", "a3^2", "a1*a2", "a2*a3", "a1*a3"] {
        find_by_differential(&m, 3, d);
    }
    // every degree-4 generator is stage 2 and the listed c_ij shapes occur
    assert_eq!(m.stage_slice(2, 4).len(), m.generators_of_degree(4).len());
    let b1 = find_by_differential(&m, 3, "a1^2");
    let b12 = find_by_differential(&m, 3, "a1*a2");
    let c = format!("a1*{} - a2*{}", m.generator(b12).name, m.generator(b1).name);
    find_by_differential(&m, 4, &c);
    for deg in 0..=5 {
        assert_eq!(
            m.dgca().cohomology(deg).unwrap().dim(),
            m.algebra().graded_component(deg).unwrap().dim()
        );
    }
}

#[test]
fn wedge3_six_cell_is_not_formal() {
    let m = build_minimal_model(&wedge3(7), 6).unwrap();
    let b1 = m
        .generator(find_by_differential(&m, 3, "a1^2"))
        .name
        .clone();
    let b2 = m
        .generator(find_by_differential(&m, 3, "a2^2"))
        .name
        .clone();
    let product = format!("{b1}*{b2}");
    let k12 = *m
        .stage_slice(3, 5)
        .iter()
        .find(|&&g| shown(&m, m.differential(g)).contains(&product))
        .unwrap();
    let mut alpha = AlphaFunctional::zero(6);
    alpha.set(&m, k12, int(1)).unwrap();
    assert!(hurewicz_vanishes(&m, &alpha).unwrap());
    let att = AttachmentModel::new(&m, alpha.clone()).unwrap();
    let u = att.u_class().unwrap();
    assert!(!u.is_zero());
    assert_eq!(att.cohomology(6).unwrap().dim(), 1);
    assert!(!att.is_u_decomposable().unwrap().decomposable);
    let v = formality_verdict(&m, &alpha).unwrap();
    assert_eq!(
        (v.status, v.clause),
        (Status::NotFormal, Clause::Indecomposable)
    );
}

#[test]
fn x_model_contains_listed_differentials() {
    let m = build_minimal_model(&x_algebra(), 6).unwrap();
    for i in 1..=3 {
        find_by_differential(&m, 3, &format!("x{i}^2"));
        for j in 1..=3 {
            find_by_differential(&m, 3, &format!("a{i}*x{j}"));
        }
    }
    let z = find_by_differential(&m, 5, "x1*x2*x3");
    assert_eq!(m.generator(z).stage, 1);
}

#[test]
fn x_attachment_is_inconclusive() {
    let m = build_minimal_model(&x_algebra(), 6).unwrap();
    let z = find_by_differential(&m, 5, "x1*x2*x3");
    let c11 = m
        .generator(find_by_differential(&m, 3, "a1^2"))
        .name
        .clone();
    let c22 = m
        .generator(find_by_differential(&m, 3, "a2^2"))
        .name
        .clone();
    let product = format!("{c11}*{c22}");
    let g12 = *m
        .stage_slice(3, 5)
        .iter()
        .find(|&&g| shown(&m, m.differential(g)).contains(&product))
        .unwrap();
    let mut alpha = AlphaFunctional::zero(6);
    alpha.set(&m, g12, int(1)).unwrap();
    alpha.set(&m, z, int(1)).unwrap();

    let att = AttachmentModel::new(&m, alpha.clone()).unwrap();
    let h6 = att.cohomology(6).unwrap();
    let u = att.u_class().unwrap();
    let x123 = AttachmentElement {
        base: parse_element(m.free(), "-x1*x2*x3").unwrap(),
        u: Scalar::from_integer(0.into()),
    };
    assert_eq!(att.class_of(&h6, &x123).unwrap().coordinates, u.coordinates);

    let (special, violators) = is_special(&m, &alpha).unwrap();
    assert!(!special);
    assert_eq!(violators, vec![g12]);
    assert_eq!(m.generator(g12).stage, 3);

    let v = formality_verdict(&m, &alpha).unwrap();
    assert_eq!(
        (v.status, v.clause),
        (Status::Inconclusive, Clause::NonSpecial)
    );
    let Witness::NonSpecial { terms, .. } = v.witness else {
        panic!("expected non-special witness");
    };
    assert!(!terms.is_empty());
}

#[test]
fn x_attachment_u_scales_with_the_z_value() {
    let m = build_minimal_model(&x_algebra(), 6).unwrap();
    let z = find_by_differential(&m, 5, "x1*x2*x3");
    for mz in [1i64, 2, -3] {
        let mut alpha = AlphaFunctional::zero(6);
        alpha.set(&m, z, int(mz)).unwrap();
        let att = AttachmentModel::new(&m, alpha).unwrap();
        let h6 = att.cohomology(6).unwrap();
        // u = (-1/m) x1x2x3
        let expected = AttachmentElement {
            base: parse_element(m.free(), &format!("-1/{}*x1*x2*x3", mz.abs())).unwrap(),
            u: int(0),
        };
        let mut c = att.class_of(&h6, &expected).unwrap().coordinates;
        if mz < 0 {
            c.iter_mut().for_each(|x| *x = -x.clone());
        }
        assert_eq!(c, att.u_class().unwrap().coordinates);
    }
}

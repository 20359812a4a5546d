use quasihom_core::embedding::{check_extension, minimal_embedding};
use quasihom_core::exactnum::GaussianRational;
use quasihom_core::invariant::{quasi_homogenize, verify_result, IdealPresentation, InvariantError, QhOptions, Stage};
use quasihom_core::normalform::{poincare_dulac, verify_conjugacy, NormalFormError};
use quasihom_core::polyring::{is_weighted_homogeneous, PolyMap, Polynomial};
use quasihom_core::spectrum::Exponent;

type GR = GaussianRational;

fn poly(d: usize, terms: &[(&[u32], &str)]) -> Polynomial {
    Polynomial::from_terms(d, terms.iter().map(|(a, c)| (Exponent::new(a.to_vec()), c.parse::<GR>().unwrap()))).unwrap()
}

fn map(d: usize, comps: &[&[(&[u32], &str)]]) -> PolyMap {
    PolyMap::new(comps.iter().map(|c| poly(d, c)).collect()).unwrap()
}

#[test]
fn nonlinear_map_is_normalized_before_extraction() {
    // y + 8x^3 is invariant under (x/2, y/4 + x^3) and becomes y in normal-form coordinates
    let f = map(2, &[&[(&[1, 0], "1/2")], &[(&[0, 1], "1/4"), (&[3, 0], "1")]]);
    let i = IdealPresentation::new(2, vec![poly(2, &[(&[0, 1], "1"), (&[3, 0], "8")])]).unwrap();
    let r = quasi_homogenize(&i, &f, &QhOptions::default()).unwrap();
    assert!(r.normal_form.is_some());
    assert_eq!(r.generators_p, vec![poly(2, &[(&[0, 1], "1")])]);
    verify_result(&i, &f, &r).unwrap();
}

#[test]
fn permuted_coordinates() {
    // the slow direction comes second; the pipeline reorders by modulus
    let f = map(2, &[&[(&[1, 0], "1/4")], &[(&[0, 1], "1/2")]]);
    let i = IdealPresentation::new(2, vec![poly(2, &[(&[0, 2], "1"), (&[1, 0], "-1")])]).unwrap();
    let r = quasi_homogenize(&i, &f, &QhOptions::default()).unwrap();
    assert_eq!(r.generators_p.len(), 1);
    assert!(is_weighted_homogeneous(&r.generators_p[0], &r.weights).is_some());
    verify_result(&i, &f, &r).unwrap();
}

#[test]
fn complex_spectrum_with_a_cusp() {
    let f = map(2, &[&[(&[1, 0], "1/2*i")], &[(&[0, 1], "-1/4+1/4*i")]]);
    // λ_2^2 = (−1/4 + i/4)^2 = −i/8 = λ_1^3, so y^2 − x^3 is λ-homogeneous
    let i = IdealPresentation::new(2, vec![poly(2, &[(&[0, 2], "1"), (&[3, 0], "-1")])]).unwrap();
    let r = quasi_homogenize(&i, &f, &QhOptions::default()).unwrap();
    assert_eq!(r.generators_p, i.generators().to_vec());
    assert_eq!(r.degrees.len(), 1);
    verify_result(&i, &f, &r).unwrap();
}

#[test]
fn jordan_block_map() {
    // (x/2, x + y/2) preserves x = 0
    let f = map(2, &[&[(&[1, 0], "1/2")], &[(&[1, 0], "1"), (&[0, 1], "1/2")]]);
    let i = IdealPresentation::new(2, vec![poly(2, &[(&[1, 0], "1"), (&[2, 0], "3")])]).unwrap();
    let r = quasi_homogenize(&i, &f, &QhOptions::default()).unwrap();
    assert_eq!(r.generators_p.len(), 1);
    verify_result(&i, &f, &r).unwrap();
}

#[test]
fn non_invariant_ideal_reports_the_stage() {
    let f = map(2, &[&[(&[1, 0], "1/2")], &[(&[0, 1], "1/2")]]);
    let i = IdealPresentation::new(2, vec![poly(2, &[(&[2, 0], "1"), (&[0, 1], "-1")])]).unwrap();
    let err = quasi_homogenize(&i, &f, &QhOptions::default()).unwrap_err();
    assert_eq!(err.stage, Stage::CofactorMatrix);
    assert!(matches!(err.error, InvariantError::NotInvariant { .. }));
}

#[test]
fn irrational_and_expanding_maps_are_rejected() {
    let rot = map(2, &[&[(&[0, 1], "1/2")], &[(&[1, 0], "1/4")]]);
    let i = IdealPresentation::new(2, vec![poly(2, &[(&[1, 1], "1")])]).unwrap();
    let err = quasi_homogenize(&i, &rot, &QhOptions::default()).unwrap_err();
    assert!(matches!(err.error, InvariantError::NormalForm(NormalFormError::IrrationalSpectrum { .. })));

    let big = map(1, &[&[(&[1], "2")]]);
    assert!(matches!(poincare_dulac(&big, 3), Err(NormalFormError::NotContracting { .. })));
}

#[test]
fn embedding_then_extraction() {
    // ⟨y − x², z² − x⁴⟩ under (x/2, y/4, z/4): eliminate y, then extract in (x, z)
    let f = map(3, &[&[(&[1, 0, 0], "1/2")], &[(&[0, 1, 0], "1/4")], &[(&[0, 0, 1], "1/4")]]);
    let i = IdealPresentation::new(
        3,
        vec![poly(3, &[(&[0, 1, 0], "1"), (&[2, 0, 0], "-1")]), poly(3, &[(&[0, 0, 2], "1"), (&[4, 0, 0], "-1")])],
    )
    .unwrap();
    let ext = check_extension(&f, &i, 6).unwrap();
    assert!(ext.invertible && ext.contracting && ext.invariant);
    let (small, steps) = minimal_embedding(&i, 6).unwrap();
    assert_eq!(steps.len(), 1);
    let g = map(2, &[&[(&[1, 0], "1/2")], &[(&[0, 1], "1/4")]]);
    let r = quasi_homogenize(&small, &g, &QhOptions::default()).unwrap();
    assert_eq!(r.weights, vec![1, 2]);
    assert_eq!(r.degrees, vec![4]);

    // the same ideal in three variables keeps both generators
    let r3 = quasi_homogenize(&i, &f, &QhOptions::default()).unwrap();
    assert_eq!(r3.generators_p.len(), 2);
    verify_result(&i, &f, &r3).unwrap();
}

#[test]
fn normal_form_of_a_resonant_triple() {
    // λ = (1/2, 1/4, 1/8): x², xy, x³ and so on are resonant
    let f = map(
        3,
        &[
            &[(&[1, 0, 0], "1/2"), (&[0, 1, 0], "1")],
            &[(&[0, 1, 0], "1/4"), (&[2, 0, 0], "3"), (&[1, 0, 1], "1")],
            &[(&[0, 0, 1], "1/8"), (&[1, 1, 0], "-2"), (&[3, 0, 0], "1/3"), (&[0, 2, 0], "5")],
        ],
    );
    let cert = poincare_dulac(&f, 5).unwrap();
    assert!(verify_conjugacy(&cert));
    let s = cert.spectrum().unwrap();
    assert_eq!(s.entries(), &["1/2".parse::<GR>().unwrap(), "1/4".parse().unwrap(), "1/8".parse().unwrap()]);
}

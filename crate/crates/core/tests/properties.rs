use std::cmp::Ordering;

use num_bigint::BigInt;
use proptest::prelude::*;

use quasihom_core::embedding::roots_in_unit_disk;
use quasihom_core::exactnum::GaussianRational;
use quasihom_core::lattice::{hermite_normal_form, integer_kernel, lattice_coordinates};
use quasihom_core::normalform::exponents_of_degree;
use quasihom_core::polyring::{compose, map_compose, map_inverse, PolyMap, Polynomial};
use quasihom_core::spectrum::{nicely_order, Exponent, OrderedSpectrum};

type GR = GaussianRational;

const POOL: [&str; 11] = ["1/2", "-1/2", "1/2*i", "1/2+1/2*i", "2/3", "-1/3", "1/4", "-1/4*i", "3/4", "1/8", "-3/5"];

fn gr(s: &str) -> GR {
    s.parse().unwrap()
}

fn spectrum() -> impl Strategy<Value = OrderedSpectrum> {
    prop::collection::vec(0..POOL.len(), 1..=3).prop_map(|idx| {
        let raw: Vec<GR> = idx.iter().map(|&k| gr(POOL[k])).collect();
        nicely_order(&raw).unwrap().0
    })
}

fn exponent(d: usize, max: u32) -> impl Strategy<Value = Exponent> {
    prop::collection::vec(0..=max, d).prop_map(Exponent::new)
}

fn small_gr() -> impl Strategy<Value = GR> {
    (-6i64..=6, 1i64..=6, -3i64..=3, 1i64..=4).prop_map(|(a, b, c, d)| GR::from_parts(a, b, c, d))
}

/// A polynomial in `d` variables with terms of degree `lo..=hi`.
fn polynomial(d: usize, lo: u32, hi: u32) -> impl Strategy<Value = Polynomial> {
    let exps: Vec<Exponent> = (lo..=hi).flat_map(|k| exponents_of_degree(d, k)).collect();
    let n = exps.len();
    prop::collection::vec((any::<bool>(), small_gr()), n).prop_map(move |picks| {
        let mut p = Polynomial::zero(d);
        for (a, (keep, c)) in exps.iter().zip(picks) {
            if keep {
                p.add_term(a.clone(), &c);
            }
        }
        p
    })
}

/// An invertible map: diagonal linear part plus terms of degree 2 and 3.
fn invertible_map(d: usize) -> impl Strategy<Value = PolyMap> {
    (prop::collection::vec(1i64..=5, d), prop::collection::vec(polynomial(d, 2, 3), d)).prop_map(move |(diag, rest)| {
        let comps = rest
            .into_iter()
            .enumerate()
            .map(|(i, p)| &Polynomial::monomial(Exponent::unit(d, i), GR::ratio(diag[i], 6)) + &p)
            .collect();
        PolyMap::new(comps).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lambda_order_is_total_and_additive(
        (s, a, b, c) in spectrum().prop_flat_map(|s| {
            let d = s.dim();
            (Just(s), exponent(d, 4), exponent(d, 4), exponent(d, 4))
        })
    ) {
        prop_assert_eq!(s.lambda_compare(&a, &b), s.lambda_compare(&b, &a).reverse());
        prop_assert_eq!(s.lambda_compare(&a, &a), Ordering::Equal);
        if s.lambda_compare(&a, &b).is_le() && s.lambda_compare(&b, &c).is_le() {
            prop_assert!(s.lambda_compare(&a, &c).is_le());
        }
        if s.lambda_compare(&a, &b).is_ge() {
            prop_assert!(s.lambda_compare(&a.add(&c), &b.add(&c)).is_ge());
        }
    }

    #[test]
    fn weight_classes_partition(
        (s, a) in spectrum().prop_flat_map(|s| { let d = s.dim(); (Just(s), exponent(d, 3)) })
    ) {
        let class = s.weight_class(&a).unwrap();
        prop_assert!(class.contains(&a));
        let n = s.weight_vector().unwrap();
        prop_assert!(n.iter().all(|&w| w >= 1));
        let dot = |e: &Exponent| e.as_slice().iter().zip(&n).map(|(&x, &w)| x as u64 * w).sum::<u64>();
        for b in class.members() {
            prop_assert_eq!(&s.value(b), class.value());
            prop_assert!(s.weight_class(b).unwrap().contains(&a));
            prop_assert_eq!(dot(b), dot(&a));
        }
        for v in &s.relation_lattice().basis {
            prop_assert!(s.signed_value(v).is_one());
            prop_assert_eq!(v.iter().zip(&n).map(|(&x, &w)| x * w as i64).sum::<i64>(), 0);
        }
    }

    #[test]
    fn resonance_bound_is_least(s in spectrum()) {
        let m = s.resonance_bound() as i64;
        let m1 = s.modulus_squared_of(0).clone();
        let md = s.modulus_squared_of(s.dim() - 1).clone();
        let pow = |k: i64| (0..k).fold(num_rational::BigRational::from_integer(1.into()), |acc, _| acc * &m1);
        prop_assert!(pow(m + 1) < md);
        prop_assert!(m == 0 || pow(m) >= md);
    }

    #[test]
    fn composition_is_associative(
        (p, f, g) in (1usize..=2).prop_flat_map(|d| (polynomial(d, 1, 3), invertible_map(d), invertible_map(d)))
    ) {
        let n = 5;
        let lhs = compose(&compose(&p, &f, Some(n)).unwrap(), &g, Some(n)).unwrap();
        let rhs = compose(&p, &map_compose(&f, &g, n).unwrap(), Some(n)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_jets_compose_to_identity(f in (1usize..=2).prop_flat_map(invertible_map)) {
        let n = 6;
        let g = map_inverse(&f, n).unwrap();
        let id = PolyMap::identity(f.dim());
        prop_assert_eq!(map_compose(&f, &g, n).unwrap(), id.clone());
        prop_assert_eq!(map_compose(&g, &f, n).unwrap(), id);
    }

    #[test]
    fn schur_cohn_matches_known_roots(roots in prop::collection::vec(small_gr(), 1..=4)) {
        // coefficients of Π (z − r), low to high
        let mut c = vec![GR::one()];
        for r in &roots {
            let mut next = vec![GR::zero(); c.len() + 1];
            for (k, a) in c.iter().enumerate() {
                next[k + 1] = &next[k + 1] + a;
                next[k] = &next[k] - &(a * r);
            }
            c = next;
        }
        let inside = roots.iter().all(|r| r.modulus_squared() < GR::one().modulus_squared());
        prop_assert_eq!(roots_in_unit_disk(&c), inside);
    }

    #[test]
    fn kernel_vectors_annihilate(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 1..=3)) {
        let a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let ker = integer_kernel(&a, 4);
        let hnf = hermite_normal_form(&ker);
        prop_assert_eq!(hnf.len(), ker.len());
        for v in &ker {
            for r in &a {
                let dot: BigInt = r.iter().zip(v).map(|(x, y)| x * y).sum();
                prop_assert_eq!(dot, BigInt::from(0));
            }
            prop_assert!(lattice_coordinates(&hnf, v).is_some());
        }
    }
}

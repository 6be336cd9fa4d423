use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use homstab::apalgebra::{ap_multiply, bar_tor_module, random_presentation, ApAlgebra, FiniteAbelianGroup, Monomial};
use homstab::boundprop::{propagate, Flags};
use homstab::complexes::{FinitePoset, SimplicialComplex};
use homstab::exactalg::smith::determinant;
use homstab::exactalg::{homology, rank, CoefficientDomain, ExactMatrix, SmithForm};
use homstab::jwcdga::{partitions, Partition};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

fn small_complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0usize..6, 1..=4), 1..6).prop_map(|facets| {
        let facets: Vec<Vec<usize>> = facets.into_iter().map(|f| f.into_iter().collect()).collect();
        SimplicialComplex::from_index_facets(6, &facets).unwrap()
    })
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn fp(p: u64) -> CoefficientDomain {
    CoefficientDomain::prime_field(p).unwrap()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn smith_transforms_diagonalize(dense in small_matrix()) {
        let m = ExactMatrix::from_dense(&dense).unwrap();
        let s = SmithForm::with_transforms(&m);
        let (u, v) = s.transforms.clone().unwrap();
        prop_assert_eq!(u.mul(&m).unwrap().mul(&v).unwrap(), s.diagonal(m.rows(), m.cols()));
        prop_assert!(determinant(&u).unwrap().abs().is_one());
        prop_assert!(determinant(&v).unwrap().abs().is_one());
        for w in s.invariant_factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert_eq!(&SmithForm::compute(&m).invariant_factors, &s.invariant_factors);
    }

    #[test]
    fn smith_matches_determinant_and_field_ranks(dense in small_matrix()) {
        let m = ExactMatrix::from_dense(&dense).unwrap();
        let s = SmithForm::compute(&m);
        prop_assert_eq!(rank(&m, CoefficientDomain::Rationals), s.rank);
        for p in [2u64, 3, 5] {
            let unit = s.invariant_factors.iter().filter(|d| !(*d % BigInt::from(p)).is_zero()).count();
            prop_assert_eq!(rank(&m, fp(p)), unit);
        }
        if m.rows() == m.cols() {
            let prod: BigInt = if s.rank == m.rows() { s.invariant_factors.iter().product() } else { BigInt::zero() };
            prop_assert_eq!(determinant(&m).unwrap().abs(), prod);
        }
    }

    #[test]
    fn universal_coefficients(k in small_complex()) {
        let c = k.chain_complex();
        let hz = homology(&c, CoefficientDomain::Integers);
        for p in [2u64, 3] {
            let hp = homology(&c, fp(p));
            let divisible = |d: i64| hz.degree(d).torsion.iter().filter(|t| (*t % BigInt::from(p)).is_zero()).count();
            for d in c.min_degree()..=c.max_degree() {
                prop_assert_eq!(hp.rank(d), hz.rank(d) + divisible(d) + divisible(d - 1));
            }
        }
    }

    #[test]
    fn euler_characteristic_from_betti_numbers(k in small_complex()) {
        let c = k.chain_complex();
        let h = homology(&c, CoefficientDomain::Rationals);
        let alt: i64 = (c.min_degree()..=c.max_degree())
            .map(|d| if d % 2 == 0 { h.rank(d) as i64 } else { -(h.rank(d) as i64) })
            .sum();
        prop_assert_eq!(alt, c.euler_characteristic());
    }

    #[test]
    fn subdivision_and_face_poset_preserve_homology(k in small_complex()) {
        let z = CoefficientDomain::Integers;
        let h = k.reduced_homology(z);
        let sd = k.barycentric_subdivision().reduced_homology(z);
        prop_assert_eq!(sd.nonzero(), h.nonzero());
        let order = FinitePoset::face_poset(&k).order_complex().reduced_homology(z);
        prop_assert_eq!(order.nonzero(), h.nonzero());
    }

    #[test]
    fn complex_text_round_trip(k in small_complex()) {
        let back = SimplicialComplex::parse(&k.to_text()).unwrap();
        prop_assert_eq!(back, k);
    }

    #[test]
    fn conjugation_is_an_involution(mut parts in prop::collection::vec(1usize..7, 0..6)) {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let p = Partition::new(parts).unwrap();
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().size(), p.size());
        prop_assert_eq!(p.conjugate().diagonal_length(), p.diagonal_length());
    }

    #[test]
    fn ap_multiplication_is_associative(
        orders in prop::collection::vec(2u32..4, 0..3),
        xs in prop::collection::vec((0usize..3, 0usize..64), 3),
    ) {
        let g = FiniteAbelianGroup::new(orders).unwrap();
        let m: Vec<Monomial> = xs.iter().map(|&(n, e)| if n == 0 { Monomial::unit() } else { Monomial::new(n, e % g.order()) }).collect();
        let left = ap_multiply(&g, ap_multiply(&g, m[0], m[1]), m[2]);
        let right = ap_multiply(&g, m[0], ap_multiply(&g, m[1], m[2]));
        prop_assert_eq!(left, right);
        prop_assert_eq!(ap_multiply(&g, m[0], m[1]), ap_multiply(&g, m[1], m[0]));
    }

    #[test]
    fn bounds_do_not_depend_on_window(t_max in 0usize..8, s_max in 0usize..6) {
        for flags in Flags::all() {
            let big = propagate(flags, t_max + 3, s_max + 3);
            let small = propagate(flags, t_max, s_max);
            for t in 0..=t_max {
                for s in 0..=s_max {
                    prop_assert_eq!(small.get(s, t), big.get(s, t));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn tor_is_additive(seed in any::<u64>()) {
        let g = FiniteAbelianGroup::cyclic(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_presentation(&g, &mut rng, 2, 2, 2);
        let b = random_presentation(&g, &mut rng, 2, 2, 2);
        let sum = a.direct_sum(&b).unwrap();
        let alg = ApAlgebra::new(g, fp(2));
        let (ta, tb, ts) = (
            bar_tor_module(&alg, &a, 5, 2).unwrap(),
            bar_tor_module(&alg, &b, 5, 2).unwrap(),
            bar_tor_module(&alg, &sum, 5, 2).unwrap(),
        );
        for n in 0..=5 {
            for d in 0..=2 {
                prop_assert_eq!(ts.get(n, d), ta.get(n, d) + tb.get(n, d));
            }
        }
    }
}

/// `sum over partitions of n of dim S_lambda(k^m) * f^lambda = m^n`, with
/// `f^lambda` from the hook length formula.
#[test]
fn schur_dimensions_sum_to_tensor_power() {
    for m in 1..=4usize {
        for n in 0..=6usize {
            let mut total = num_bigint::BigUint::zero();
            for p in partitions(n) {
                let hooks: usize = p.cells().map(|(i, j)| p.hook(i, j)).product();
                let syt = (1..=n).product::<usize>() / hooks;
                total += p.schur_dim(m) * syt;
            }
            assert_eq!(total, num_bigint::BigUint::from(m).pow(n as u32), "m={m} n={n}");
        }
    }
}

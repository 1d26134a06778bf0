use proptest::prelude::*;

use asl_core::catalog;
use asl_core::construct::{direct_product, fiber_product, quotient, semidirect_product};
use asl_core::derived::{derived_series, is_solvable};
use asl_core::fp::{self, FpSubspace, GSet};
use asl_core::group::{Caps, Group};
use asl_core::hom::Homomorphism;
use asl_core::iso::is_isomorphic;
use asl_core::matrix;
use asl_core::normal::all_normal_subgroups;
use asl_core::oracle;
use asl_core::perm::group_from_images;
use asl_core::series::{abelian_simple_length, generalized_derived_series};
use asl_core::wreath::{self, GroupAction};

fn perm(d: usize) -> impl Strategy<Value = Vec<u32>> {
    Just((0..d as u32).collect::<Vec<_>>()).prop_shuffle()
}

/// A subgroup of `S_d`, `2 <= d <= max_degree`, on one or two random
/// generators.
fn perm_group(max_degree: usize) -> impl Strategy<Value = Group> {
    (2..=max_degree)
        .prop_flat_map(|d| (Just(d), prop::collection::vec(perm(d), 1..=2)))
        .prop_map(|(d, gens)| group_from_images("P", d, &gens, Caps::default()).unwrap())
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn axioms_hold(g in perm_group(6), seed in any::<u64>()) {
        prop_assert!(g.check_axioms(seed).is_ok());
    }

    #[test]
    fn length_is_logarithmic(g in perm_group(6)) {
        let l = abelian_simple_length(&g).unwrap();
        prop_assert!(1usize << l <= g.order());
    }

    #[test]
    fn solvable_series_coincide(g in perm_group(5)) {
        prop_assume!(is_solvable(&g));
        let a = generalized_derived_series(&g).unwrap();
        let b = derived_series(&g).unwrap();
        prop_assert_eq!(a.orders(), b.orders());
        for (x, y) in a.terms.iter().zip(&b.terms) {
            prop_assert_eq!(x.members(), y.members());
        }
    }

    #[test]
    fn quotients_by_normals(g in perm_group(5)) {
        let l = abelian_simple_length(&g).unwrap();
        let series = generalized_derived_series(&g).unwrap();
        for n in all_normal_subgroups(&g).unwrap().subgroups() {
            let (q, pi) = quotient(&g, n).unwrap();
            let kernel = pi.kernel();
            prop_assert_eq!(kernel.members(), n.members());
            let qs = generalized_derived_series(&q).unwrap();
            for (i, t) in series.terms.iter().enumerate() {
                let expected = qs.terms.get(i).map_or(1, |s| s.order());
                prop_assert_eq!(pi.image_of(t).order(), expected);
            }
            let ln = abelian_simple_length(&n.to_group().0).unwrap();
            prop_assert!(qs.length <= l);
            prop_assert!(l <= ln + qs.length);
        }
    }

    #[test]
    fn lattice_matches_oracle(g in perm_group(5)) {
        prop_assume!(g.class_count() <= 16);
        let main: Vec<Vec<u32>> = all_normal_subgroups(&g).unwrap().subgroups().iter().map(|s| s.members().to_vec()).collect();
        let brute: Vec<Vec<u32>> = oracle::oracle_normal_subgroups(&g).unwrap().iter().map(|s| s.members().to_vec()).collect();
        prop_assert_eq!(main, brute);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn class_counts_multiply(g in perm_group(4), h in perm_group(4)) {
        let p = direct_product(&g, &h).unwrap();
        prop_assert_eq!(p.group.class_count(), g.class_count() * h.class_count());
    }

    #[test]
    fn trivial_semidirect_is_direct(g in perm_group(4), h in perm_group(3)) {
        let s = semidirect_product(&g, &h, |n, _| n).unwrap();
        let d = direct_product(&g, &h).unwrap();
        prop_assert!(is_isomorphic(&s, &d.group));
    }

    #[test]
    fn fiber_over_trivial_is_direct(g in perm_group(4), h in perm_group(4)) {
        let t = Group::trivial();
        let to_t = |x: &Group| Homomorphism::new(x.clone(), t.clone(), vec![0; x.order()]).unwrap();
        let f = fiber_product(&to_t(&g), &to_t(&h)).unwrap();
        prop_assert_eq!(f.group.order(), g.order() * h.order());
        let diag = fiber_product(&Homomorphism::identity(&g), &Homomorphism::identity(&g)).unwrap();
        prop_assert_eq!(diag.group.order(), g.order());
    }

    #[test]
    fn induced_orders_and_chain(a in 2usize..=4, g in perm_group(4), pick in any::<prop::sample::Index>()) {
        let x = pick.index(g.order()) as u32;
        let g0 = g.generate(&[x]);
        let index = g.order() / g0.order();
        prop_assume!(a.pow(index as u32) * g.order() <= 20_000);
        let act = GroupAction::trivial(&catalog::cyclic(a).unwrap(), &g0);
        let w = wreath::twisted_wreath_product(&act).unwrap();
        prop_assert_eq!(w.ind.group.order(), a.pow(index as u32));
        let chain = wreath::realization_chain(&w);
        prop_assert_eq!(chain.indices, vec![index, g0.order(), a, a.pow(index as u32 - 1)]);
    }
}

fn vectors(p: u32, dim: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..p, dim), 0..=5)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn echelon_form_is_canonical(
        (p, rows, ops) in prop::sample::select(vec![2u32, 3, 5, 7]).prop_flat_map(|p| {
            (Just(p), vectors(p, 4), prop::collection::vec((0usize..5, 0usize..5, 1..p), 0..8))
        })
    ) {
        let a = FpSubspace::span(p, 4, &rows);
        // elementary row operations keep the span
        let mut other = rows.clone();
        for (i, j, c) in ops {
            if i < other.len() && j < other.len() && i != j {
                let rj = other[j].clone();
                for (x, y) in other[i].iter_mut().zip(rj) {
                    *x = (*x + c * y) % p;
                }
            }
        }
        other.reverse();
        let b = FpSubspace::span(p, 4, &other);
        prop_assert_eq!(&a, &b);
        prop_assert!(rows.iter().all(|r| a.contains(r)));
    }

    #[test]
    fn residue_kernel_orders(n in 1usize..=2, ell in prop::sample::select(vec![2u32, 3]), k in 1u32..=2) {
        let (_, ker) = matrix::residue_kernel(n, ell, k, Caps::default()).unwrap();
        prop_assert_eq!(ker.order(), (ell as usize).pow((n * n) as u32 * (k - 1)));
        prop_assert!(matrix::is_l_group(&ker.to_group().0, ell));
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn v_chains_decrease(g in perm_group(4), pick in any::<prop::sample::Index>(), p in prop::sample::select(vec![2u32, 3])) {
        let g0 = g.generate(&[pick.index(g.order()) as u32]);
        let x = GSet::right_cosets(&g0).unwrap();
        let chain = fp::v_chain(&x, p, 3).unwrap();
        for w in chain.windows(2) {
            prop_assert!(w[1].is_subspace_of(&w[0]));
        }
        for m in 0..2 {
            if fp::orbit_hypothesis(&x, m).unwrap() {
                prop_assert!(!chain[m + 1].is_zero());
            }
        }
    }
}

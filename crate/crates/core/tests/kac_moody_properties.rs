//! Randomized invariants of Cartan data, weight systems and quiver slices.

use proptest::prelude::*;

use coulomb_core::kac_moody::{
    dominance_leq, named, reflect, tensor_weight_mult, tensor_weight_pairs, CartanMatrix, Weight, WeightSystem,
};
use coulomb_core::quiver::{
    dims_from_weights, fixed_point_nonempty, mv_dimension, slice_params, strata_finite, tensor_fixed_components,
    DimVectors, Quiver,
};
use coulomb_core::CancelToken;

fn gcm_rows() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec((0i64..=3, 0i64..=3), n * (n - 1) / 2).prop_map(move |pairs| {
            let mut a = vec![vec![0i64; n]; n];
            let mut it = pairs.into_iter();
            for i in 0..n {
                a[i][i] = 2;
                for j in i + 1..n {
                    let (x, y) = it.next().unwrap();
                    if x > 0 && y > 0 {
                        a[i][j] = -x;
                        a[j][i] = -y;
                    }
                }
            }
            a
        })
    })
}

fn gcm() -> impl Strategy<Value = CartanMatrix> {
    gcm_rows().prop_filter_map("not symmetrizable", |rows| CartanMatrix::from_rows(rows).ok())
}

fn finite_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["A1", "A2", "A3", "B2", "C2", "G2", "B3", "C3"])
}

fn dominant(rank: usize, max: i64) -> impl Strategy<Value = Weight> {
    prop::collection::vec(0i64..=max, rank).prop_map(Weight::finite)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn langlands_dual_is_an_involution(g in gcm()) {
        let d = g.langlands_dual();
        let dd = d.langlands_dual();
        prop_assert_eq!(dd.rows(), g.rows());
        prop_assert_eq!(d.kind(), g.kind());
        for i in 0..g.size() {
            for j in 0..g.size() {
                prop_assert_eq!(d.entry(i, j), g.entry(j, i));
            }
        }
        let s = g.symmetrized();
        for i in 0..g.size() {
            prop_assert!(g.symmetrizers()[i] > 0);
            for j in 0..g.size() {
                prop_assert_eq!(s[i][j], s[j][i]);
            }
        }
    }

    #[test]
    fn dominance_is_a_partial_order(
        name in finite_name(),
        seeds in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 3),
    ) {
        let g = named(name).unwrap();
        let n = g.size();
        let ws: Vec<Weight> = seeds.iter().map(|s| Weight::finite(s[..n].to_vec())).collect();
        let (a, b, c) = (&ws[0], &ws[1], &ws[2]);
        prop_assert!(dominance_leq(&g, a, a).unwrap());
        if dominance_leq(&g, a, b).unwrap() && dominance_leq(&g, b, a).unwrap() {
            prop_assert_eq!(a, b);
        }
        if dominance_leq(&g, a, b).unwrap() && dominance_leq(&g, b, c).unwrap() {
            prop_assert!(dominance_leq(&g, a, c).unwrap());
        }
    }

    #[test]
    fn tensor_multiplicity_is_symmetric(
        name in finite_name(),
        l1 in prop::collection::vec(0i64..=1, 3),
        l2 in prop::collection::vec(0i64..=1, 3),
        beta in prop::collection::vec(0i64..=2, 3),
    ) {
        let g = named(name).unwrap();
        let n = g.size();
        let (l1, l2) = (Weight::finite(l1[..n].to_vec()), Weight::finite(l2[..n].to_vec()));
        let mu = l1.add(&l2).sub(&g.root_combination(&beta[..n]));
        let c = CancelToken::new();
        prop_assert_eq!(
            tensor_weight_mult(&g, &l1, &l2, &mu, &c).unwrap(),
            tensor_weight_mult(&g, &l2, &l1, &mu, &c).unwrap()
        );
    }

    #[test]
    fn slice_parameters_round_trip(n in 1usize..=4, w in prop::collection::vec(0u64..=3, 4), v in prop::collection::vec(0u64..=3, 4)) {
        let q = Quiver::linear(n);
        let d = DimVectors::new(v[..n].to_vec(), w[..n].to_vec());
        let p = slice_params(&q, &d).unwrap();
        let g = q.cartan_matrix().unwrap();
        prop_assert_eq!(dims_from_weights(&g, &p.lam, &p.mu).unwrap(), d.clone());
        prop_assert_eq!(mv_dimension(&g, &p.lam, &p.mu).unwrap(), d.v.iter().sum::<u64>());
        prop_assert_eq!(p.mu_dominant, p.mu.is_dominant());
    }

    #[test]
    fn mv_dimension_is_additive(
        name in finite_name(),
        lam in prop::collection::vec(0i64..=3, 3),
        b1 in prop::collection::vec(0i64..=2, 3),
        b2 in prop::collection::vec(0i64..=2, 3),
    ) {
        let g = named(name).unwrap();
        let n = g.size();
        let lam = Weight::finite(lam[..n].to_vec());
        let kappa = lam.sub(&g.root_combination(&b1[..n]));
        let mu = kappa.sub(&g.root_combination(&b2[..n]));
        prop_assert_eq!(
            mv_dimension(&g, &lam, &mu).unwrap(),
            mv_dimension(&g, &lam, &kappa).unwrap() + mv_dimension(&g, &kappa, &mu).unwrap()
        );
    }

    #[test]
    fn finite_strata_bracket_the_interval(
        name in finite_name(),
        lam in prop::collection::vec(0i64..=2, 3),
        beta in prop::collection::vec(0i64..=2, 3),
    ) {
        let g = named(name).unwrap();
        let n = g.size();
        let lam = Weight::finite(lam[..n].to_vec());
        let mu = lam.sub(&g.root_combination(&beta[..n]));
        let strata = strata_finite(&g, &lam, &mu, &CancelToken::new()).unwrap();
        prop_assert_eq!(&strata[0], &lam);
        prop_assert_eq!(strata.contains(&mu), mu.is_dominant());
        for k in &strata {
            prop_assert!(k.is_dominant());
            prop_assert!(dominance_leq(&g, k, &lam).unwrap());
            prop_assert!(dominance_leq(&g, &mu, k).unwrap());
        }
    }

    #[test]
    fn fixed_components_match_dual_pairs(
        name in finite_name(),
        l1 in prop::collection::vec(0i64..=1, 3),
        l2 in prop::collection::vec(0i64..=1, 3),
        beta in prop::collection::vec(0i64..=2, 3),
    ) {
        let g = named(name).unwrap();
        let n = g.size();
        let (l1, l2) = (Weight::finite(l1[..n].to_vec()), Weight::finite(l2[..n].to_vec()));
        let dual = g.langlands_dual();
        let mu = l1.add(&l2).sub(&dual.root_combination(&beta[..n]));
        let c = CancelToken::new();
        let comps = tensor_fixed_components(&g, &l1, &l2, &mu, None, &c).unwrap();
        let pairs = tensor_weight_pairs(&dual, &l1, &l2, &mu, &c).unwrap();
        prop_assert_eq!(comps.len(), pairs.iter().filter(|p| p.2 > 0).count());
    }

    #[test]
    fn fixed_points_are_weyl_invariant(name in finite_name(), lam in dominant(3, 2), beta in prop::collection::vec(0i64..=3, 3), i in 0usize..3) {
        let g = named(name).unwrap();
        let n = g.size();
        let lam = Weight::finite(lam.fund[..n].to_vec());
        let i = i % n;
        let dual = g.langlands_dual();
        let mu = lam.sub(&dual.root_combination(&beta[..n]));
        let c = CancelToken::new();
        let here = fixed_point_nonempty(&g, &lam, &mu, &c).unwrap();
        prop_assert_eq!(here, fixed_point_nonempty(&g, &lam, &reflect(&dual, i, &mu), &c).unwrap());
        let ws = WeightSystem::new(&dual, &lam, None, &c).unwrap();
        prop_assert_eq!(here, ws.multiplicity(&mu).unwrap() > 0);
    }
}

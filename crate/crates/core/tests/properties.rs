use lazard::bchgroup::{LazardGroup, LieView};
use lazard::cohomology::lie_h1;
use lazard::liering::{free_nilpotent, heisenberg, NilLieRing};
use lazard::ring::AbelianPGroup;
use lazard::triples::LieTriple;
use proptest::prelude::*;

fn element(l: &NilLieRing) -> impl Strategy<Value = Vec<u64>> {
    let p = l.module.p;
    let bounds: Vec<_> = l.exps().iter().map(|&e| 0..p.pow(e)).collect();
    bounds
}

fn free() -> NilLieRing {
    free_nilpotent(2, 3, 5, 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bch_product_is_associative(
        (a, b, c) in (element(&free()), element(&free()), element(&free()))
    ) {
        let g = LazardGroup::new(free()).unwrap();
        let lhs = g.g_mul(&g.g_mul(&a, &b), &c);
        let rhs = g.g_mul(&a, &g.g_mul(&b, &c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn powers_are_multiples((a, k) in (element(&free()), 0i128..25)) {
        let g = LazardGroup::new(free()).unwrap();
        let mut acc = g.identity();
        for _ in 0..k {
            acc = g.g_mul(&acc, &a);
        }
        prop_assert_eq!(acc, g.g_pow(&a, k));
        prop_assert_eq!(g.g_mul(&a, &g.g_inv(&a)), g.identity());
    }

    #[test]
    fn bracket_is_bilinear(
        (a, b, c, k) in (element(&free()), element(&free()), element(&free()), 0i128..5)
    ) {
        let l = free();
        prop_assert_eq!(l.bracket(&l.add(&a, &b), &c), l.add(&l.bracket(&a, &c), &l.bracket(&b, &c)));
        prop_assert_eq!(l.bracket(&l.scale(&a, k), &b), l.scale(&l.bracket(&a, &b), k));
        prop_assert_eq!(l.bracket(&a, &a), l.zero());
    }

    #[test]
    fn lie_view_recovers_ring((a, b) in (element(&heisenberg(7, 1)), element(&heisenberg(7, 1)))) {
        let l = heisenberg(7, 1);
        let g = LazardGroup::new(l.clone()).unwrap();
        let cay = g.to_cayley();
        let view = LieView::new(&cay, 2).unwrap();
        let (i, j) = (g.index_of(&a), g.index_of(&b));
        prop_assert_eq!(view.add(i, j), g.index_of(&l.add(&a, &b)));
        prop_assert_eq!(view.bracket(i, j), g.index_of(&l.bracket(&a, &b)));
    }

    #[test]
    fn class_addition_is_a_group_law(seed in any::<u64>()) {
        let t = LieTriple::trivial(heisenberg(5, 1), AbelianPGroup::new(5, vec![2]));
        let h = lie_h1(&t);
        let c = h.classes();
        let pick = |s: u64| -> Vec<u64> {
            (0..c.rank()).map(|i| (s >> (8 * i)) % c.modulus(i)).collect()
        };
        let (x, y, z) = (pick(seed), pick(seed.rotate_left(21)), pick(seed.rotate_left(42)));
        prop_assert_eq!(h.add_classes(&x, &y), h.add_classes(&y, &x));
        prop_assert_eq!(h.add_classes(&h.add_classes(&x, &y), &z), h.add_classes(&x, &h.add_classes(&y, &z)));
        prop_assert_eq!(h.classify(&h.representative(&x)), Some(x));
    }
}

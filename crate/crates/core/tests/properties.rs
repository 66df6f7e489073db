mod common;

use proptest::prelude::*;

use cyclix::algebras::{small_algebras, twisted_small_algebra, AlgebraAction, StructureAlgebra};
use cyclix::forms::build_forms;
use cyclix::groups::{extension_cocycle, CentralExtensionByZ, FiniteGroup};
use cyclix::homology::cyclic_dims;

fn twisted() -> impl Strategy<Value = StructureAlgebra> {
    (0..small_algebras().len(), prop::collection::vec(-3i64..=3, 6))
        .prop_map(|(c, e)| twisted_small_algebra(c, &e).unwrap())
}

fn small_group() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![
        (1usize..=8).prop_map(FiniteGroup::cyclic),
        (1usize..=4).prop_map(FiniteGroup::symmetric),
        (2usize..=5).prop_map(FiniteGroup::dihedral),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn b_and_big_b_square_to_zero(a in twisted()) {
        build_forms(&a, 4).unwrap().complex().check_identities().unwrap();
    }

    #[test]
    fn cyclic_homology_is_basis_independent(c in 0usize..8, e in prop::collection::vec(-2i64..=2, 6)) {
        let base = &small_algebras()[c];
        let a = twisted_small_algebra(c, &e).unwrap();
        let hc = |x: &StructureAlgebra| cyclic_dims(build_forms(x, 3).unwrap().complex(), 2).unwrap().dims;
        prop_assert_eq!(hc(&a), hc(base));
    }

    #[test]
    fn twisted_unital_algebras_match_the_bicomplex(c in 0usize..8, e in prop::collection::vec(-2i64..=2, 6)) {
        let a = twisted_small_algebra(c, &e).unwrap();
        prop_assume!(a.is_unital());
        let engine = cyclic_dims(build_forms(&a, 3).unwrap().complex(), 2).unwrap().dims;
        prop_assert_eq!(engine, common::bicomplex_hc(&a, 2));
    }

    #[test]
    fn class_equation(g in small_group()) {
        let cl = g.conjugacy_classes();
        let sizes: usize = cl.classes().iter().map(Vec::len).sum();
        prop_assert_eq!(sizes, g.order());
        for c in cl.classes() {
            prop_assert_eq!(c.len() * cl.centralizer(c[0]).order(), g.order());
        }
    }

    #[test]
    fn crossed_products_are_associative_and_graded(g in small_group()) {
        prop_assume!(g.order() <= 6);
        let a = StructureAlgebra::dual_numbers();
        let act = AlgebraAction::sign(&a, &g, &[0, 1]).unwrap_or_else(|_| AlgebraAction::trivial(&a, &g));
        let c = StructureAlgebra::crossed_product(&a, &act).unwrap();
        prop_assert_eq!(c.dim(), 2 * g.order());
        let grading = c.grading().unwrap();
        for i in 0..c.dim() {
            for j in 0..c.dim() {
                for (k, _) in c.mul_basis(i, j).entries() {
                    prop_assert_eq!(grading[*k], g.mul(grading[i], grading[j]));
                }
            }
        }
    }

    #[test]
    fn extension_cocycles_are_cocycles(n in 2usize..=8) {
        let c = extension_cocycle(&CentralExtensionByZ::standard(n));
        prop_assert!(c.is_cocycle());
        prop_assert!(c.alternate().is_cocycle());
    }

    #[test]
    fn normal_quotients_have_the_right_order(g in small_group()) {
        for u in g.subgroups().into_iter().filter(|u| u.is_normal_in(&g)) {
            let (q, sec) = g.quotient(&u).unwrap();
            prop_assert_eq!(q.order() * u.order(), g.order());
            prop_assert_eq!(sec.num_cosets(), q.order());
        }
    }
}

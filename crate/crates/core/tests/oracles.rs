mod common;

use common::bicomplex_hc;
use cyclix::algebras::{small_algebras, StructureAlgebra};
use cyclix::forms::build_forms;
use cyclix::groups::{group_homology, FiniteGroup, GroupModule};
use cyclix::homology::{cyclic_dims, hochschild_dims, periodic_dims};

fn engine_hc(a: &StructureAlgebra, up_to: usize) -> Vec<usize> {
    cyclic_dims(build_forms(a, up_to + 1).unwrap().complex(), up_to).unwrap().dims
}

#[test]
fn ground_field_profile() {
    let k = StructureAlgebra::field();
    assert_eq!(bicomplex_hc(&k, 4), vec![1, 0, 1, 0, 1]);
    assert_eq!(engine_hc(&k, 4), vec![1, 0, 1, 0, 1]);
    let hp = periodic_dims(build_forms(&k, 5).unwrap().complex(), 2).unwrap();
    assert_eq!(hp.dims(), Some((1, 0)));
}

#[test]
fn engine_matches_bicomplex_on_unital_presets() {
    for a in small_algebras().iter().filter(|a| a.is_unital()) {
        let up_to = if a.dim() <= 2 { 4 } else { 3 };
        assert_eq!(engine_hc(a, up_to), bicomplex_hc(a, up_to), "{:?}", a.labels());
    }
}

#[test]
fn group_algebras_count_classes() {
    let cases = [(FiniteGroup::cyclic(2), 4), (FiniteGroup::cyclic(3), 4), (FiniteGroup::symmetric(3), 2)];
    for (g, up_to) in cases {
        let c = g.conjugacy_classes().num_classes();
        let kg = StructureAlgebra::group_algebra(&g);
        let want: Vec<usize> = (0..=up_to).map(|n| if n % 2 == 0 { c } else { 0 }).collect();
        assert_eq!(bicomplex_hc(&kg, up_to), want);
        assert_eq!(engine_hc(&kg, up_to), want);
    }
}

#[test]
fn hochschild_zero_of_group_algebra_is_the_center() {
    let g = FiniteGroup::symmetric(3);
    let kg = StructureAlgebra::group_algebra(&g);
    let hh = hochschild_dims(build_forms(&kg, 2).unwrap().complex(), 1).unwrap();
    assert_eq!(hh.dims, vec![3, 0]);
}

#[test]
fn periodic_values() {
    // HP of k[x]/(x^2) agrees with HP of k; HP of kZ3 counts classes.
    let dual = StructureAlgebra::dual_numbers();
    assert_eq!(periodic_dims(build_forms(&dual, 5).unwrap().complex(), 2).unwrap().dims(), Some((1, 0)));
    let kz3 = StructureAlgebra::group_algebra(&FiniteGroup::cyclic(3));
    assert_eq!(periodic_dims(build_forms(&kz3, 5).unwrap().complex(), 2).unwrap().dims(), Some((3, 0)));
}

#[test]
fn too_short_a_window_does_not_stabilize() {
    let dual = StructureAlgebra::dual_numbers();
    let err = periodic_dims(build_forms(&dual, 2).unwrap().complex(), 2);
    match err {
        Ok(p) => assert!(!p.stabilized),
        Err(e) => assert!(matches!(e, cyclix::Error::Truncation(_)), "{e}"),
    }
}

#[test]
fn maschke_on_adjoint_modules() {
    for g in [FiniteGroup::cyclic(4), FiniteGroup::symmetric(3), FiniteGroup::dihedral(4)] {
        let ad = GroupModule::adjoint(&g, &g.elements().collect::<Vec<_>>()).unwrap();
        assert_eq!(group_homology(&g, &ad, 0, 3).unwrap(), g.conjugacy_classes().num_classes());
        for n in 1..=2 {
            assert_eq!(group_homology(&g, &ad, n, 3).unwrap(), 0);
        }
    }
}

use cyclix::groups::{CosetSection, FiniteGroup};
use cyclix::theorems::{
    named_example, pinned, verify_burghelea, verify_centralizer_extension, verify_class_reduction, verify_cocycles,
    verify_coset_embedding, verify_decomposition, verify_elliptic, verify_free_module, verify_goodwillie,
    verify_homogeneous, Setting, TheoremId, Truncation, Verdict,
};
use cyclix::algebras::StructureAlgebra;

fn setting(id: &str) -> Setting {
    named_example(id).unwrap().setting().unwrap()
}

fn assert_pass(r: &cyclix::theorems::VerificationReport) {
    assert_eq!(r.verdict, Verdict::Pass, "{r:#?}");
}

#[test]
fn decomposition_on_small_examples() {
    for id in ["k-z2", "k-s3", "dual-z2", "dual-z3"] {
        assert_pass(&verify_decomposition(&setting(id), pinned(TheoremId::Decomposition, id)).unwrap());
    }
}

#[test]
fn coset_embedding_over_every_subgroup() {
    for id in ["k-z2", "k-z4", "k-s3", "dual-z2"] {
        let s = setting(id);
        for u in s.group().subgroups() {
            let sec = CosetSection::canonical(s.group(), &u);
            assert_pass(&verify_coset_embedding(&s, &u, &sec, pinned(TheoremId::CosetEmbedding, id)).unwrap());
        }
    }
}

#[test]
fn coset_embedding_with_other_representatives() {
    let s = setting("k-s3");
    let g = s.group();
    let u = g.cyclic_subgroup(1);
    let canon = CosetSection::canonical(g, &u);
    let reps: Vec<usize> = canon.cosets().iter().map(|c| *c.last().unwrap()).collect();
    let sec = CosetSection::with_representatives(g, &u, reps).unwrap();
    assert_pass(&verify_coset_embedding(&s, &u, &sec, Truncation::new(2)).unwrap());
}

#[test]
fn free_module_over_every_subgroup() {
    for id in ["k-z2", "dual-z2", "k-s3"] {
        let s = setting(id);
        for u in s.group().subgroups() {
            assert_pass(&verify_free_module(&s, &u, pinned(TheoremId::FreeModule, id)).unwrap());
        }
    }
}

#[test]
fn class_reduction_on_every_class() {
    for id in ["k-z2", "k-s3", "dual-z2"] {
        let s = setting(id);
        let classes = s.group().conjugacy_classes();
        for c in 0..classes.num_classes() {
            let r = verify_class_reduction(&s, classes.representative(c), pinned(TheoremId::ClassReduction, id)).unwrap();
            assert_pass(&r);
        }
    }
}

#[test]
fn homogeneous_part() {
    for id in ["k-z2", "dual-z2", "dual-z3"] {
        let r = verify_homogeneous(&setting(id), pinned(TheoremId::Homogeneous, id)).unwrap();
        assert_pass(&r);
    }
}

#[test]
fn elliptic_part() {
    for id in ["k-z2", "dual-z2", "k-s3"] {
        let r = verify_elliptic(&setting(id), pinned(TheoremId::Elliptic, id)).unwrap();
        assert_pass(&r);
    }
}

#[test]
fn centralizer_extension() {
    for id in ["dual-z2", "k-s3"] {
        let s = setting(id);
        let classes = s.group().conjugacy_classes();
        for c in 0..classes.num_classes() {
            let v = classes.representative(c);
            let r = verify_centralizer_extension(&s, v, pinned(TheoremId::CentralizerExtension, id)).unwrap();
            assert_pass(&r);
        }
    }
}

#[test]
fn burghelea_for_small_groups() {
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)] {
        let r = verify_burghelea(&g, pinned(TheoremId::Burghelea, "*")).unwrap();
        assert_pass(&r);
    }
}

#[test]
fn goodwillie_invariance() {
    let t = pinned(TheoremId::Goodwillie, "*");
    let dual = StructureAlgebra::dual_numbers();
    assert_pass(&verify_goodwillie("dual numbers", &dual, None, 2, t).unwrap());
    let g = FiniteGroup::cyclic(2);
    let kg = StructureAlgebra::group_algebra(&g);
    assert_pass(&verify_goodwillie("kZ2", &kg, Some(&g), 2, t).unwrap());
}

#[test]
fn cocycles() {
    assert_pass(&verify_cocycles(pinned(TheoremId::Cocycles, "*")).unwrap());
}

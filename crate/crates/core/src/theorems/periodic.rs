//! Periodic comparisons: class blocks of `A⋊G` against hyperhomology, the
//! group algebra case and nilpotent invariance.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::algebras::{diagonal_action_on_extension, inner_action_on_crossed, StructureAlgebra};
use crate::error::Result;
use crate::forms::{
    build_forms_with_cap, build_orbit_block, class_block, class_orbit_block, group_action_on_forms, CrossedForms,
    MixedComplex, WordIndex,
};
use crate::groups::{group_homology, FiniteGroup, GroupModule, Subgroup};
use crate::homology::{
    cyclic_dims, hypercohomology, hyperhomology, periodic_cohomology_dims, periodic_dims, EquivariantComplex,
    HyperProfile, PeriodicProfile,
};

use super::setting::{Setting, Truncation};
use super::{action_failure, Recorder, TheoremId, Truncations, VerificationReport};

fn periodic_truncations(t: &Truncation, bar: Option<usize>) -> Truncations {
    Truncations { forms: t.forms, bar, windows: Some([t.window, t.window]) }
}

fn fits(d: usize, top: usize, cap: usize) -> bool {
    WordIndex { d }.dim(top).is_some_and(|x| x <= cap)
}

type Profiles = (PeriodicProfile, Option<PeriodicProfile>, bool);

fn cache() -> &'static Mutex<HashMap<String, Profiles>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Profiles>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Drops the block profiles remembered by this process.
pub fn clear_block_cache() {
    cache().lock().expect("cache lock").clear();
}

/// HP of the `[v]`-block of `Ω(A⋊G)` (and HP-cohomology when asked), with
/// whether the conjugation-orbit reduction was used. A class listing every
/// element gives the whole complex. Results are remembered per process.
fn block_profile(s: &Setting, class: &[usize], t: &Truncation, cohomology: bool) -> Result<Profiles> {
    let key = format!(
        "{:?}|{:?}|{class:?}|{}|{}|{}|{cohomology}",
        s.algebra,
        s.action.matrices(),
        t.forms,
        t.window,
        t.cap
    );
    if let Some(hit) = cache().lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let g = s.group();
    let c = s.crossed()?;
    let whole = class.len() == g.order();
    let reduced = !fits(c.dim(), t.forms, t.cap);
    let complex: MixedComplex = match (reduced, whole) {
        (false, true) => build_forms_with_cap(&c, t.forms, t.cap)?.into_complex(),
        (false, false) => class_block(&c, g, class, t.forms, t.cap)?.into_complex(),
        (true, true) => {
            build_orbit_block(&c, &inner_action_on_crossed(&s.algebra, &s.action)?, t.forms, t.orbit_cap, |_| true)?
                .into_complex()
        }
        (true, false) => {
            let inner = inner_action_on_crossed(&s.algebra, &s.action)?;
            class_orbit_block(&c, g, &inner, class, t.forms, t.orbit_cap)?.into_complex()
        }
    };
    let hp = periodic_dims(&complex, t.window)?;
    let co = if cohomology { Some(periodic_cohomology_dims(&complex, [t.window, t.window])?) } else { None };
    let out = (hp, co, reduced);
    cache().lock().expect("cache lock").insert(key, out.clone());
    Ok(out)
}

fn note_reduction(rec: &mut Recorder, label: &str, reduced: bool) {
    if reduced {
        rec.note(format!("{label}: computed on coinvariants under conjugation by G"));
    }
}

fn class_label(g: &FiniteGroup, v: usize) -> String {
    if v == g.identity() {
        "[e]".into()
    } else {
        format!("[{v}]")
    }
}

/// `HP` of the `[e]`-block against periodic hyperhomology of `G` with
/// coefficients in the forms of `A`, in homology and cohomology.
pub fn verify_homogeneous(s: &Setting, t: Truncation) -> Result<VerificationReport> {
    let mut rec = Recorder::new();
    let g = s.group();
    let (hp, co, reduced) = block_profile(s, &[g.identity()], &t, true)?;
    note_reduction(&mut rec, "[e]-block", reduced);
    let left = rec.periodic("[e]-block", &hp);
    let left_co = rec.periodic("[e]-block cohomology", co.as_ref().expect("requested"));

    let fc = build_forms_with_cap(&s.algebra, t.forms, t.cap)?;
    let modules = rec.absorb("G acts on Ω(A) by chain maps", group_action_on_forms(&fc, &s.action))?;
    let trunc = periodic_truncations(&t, Some(t.bar));
    let Some(modules) = modules else {
        return Ok(rec.finish(TheoremId::Homogeneous, &s.name, left, vec![], trunc));
    };
    let ec = EquivariantComplex::new(g, fc.into_complex(), modules).map_err(action_failure);
    let Some(ec) = rec.absorb("equivariant complex", ec)? else {
        return Ok(rec.finish(TheoremId::Homogeneous, &s.name, left, vec![], trunc));
    };
    let mut right = vec![];
    if let Some(h) = rec.absorb("bar pipeline agrees with coinvariants", hyperhomology(&ec, t.window, t.bar))? {
        right = rec.periodic("hyperhomology", &h.shortcut);
    }
    if let Some(h) = rec.absorb("bar pipeline agrees with invariants", hypercohomology(&ec, t.window, t.bar))? {
        let r = rec.periodic("hypercohomology", &h.shortcut);
        rec.part("cohomology", left_co, r);
    }
    Ok(rec.finish(TheoremId::Homogeneous, &s.name, left, right, trunc))
}

/// Hyperhomology of `Z_v` with coefficients in the `{v}`-summand of the
/// relative forms of `A⋊⟨v⟩`.
fn elliptic_side(rec: &mut Recorder, s: &Setting, v: usize, t: &Truncation) -> Result<Option<HyperProfile>> {
    let g = s.group();
    let u = g.cyclic_subgroup(v);
    let classes = g.conjugacy_classes();
    let z = classes.centralizer(v);
    let v_local = u.local_index(v).expect("v generates U");
    let model = CrossedForms::build(&s.algebra, &s.action.restrict(&u), t.forms, Some(&[v_local]), t.cap)?;
    let ec = (|| -> Result<EquivariantComplex> {
        let modules = (0..=t.forms)
            .map(|n| {
                let mats = z
                    .members()
                    .iter()
                    .map(|&h| model.centralizer_action(n, s.action.matrix(h)))
                    .collect::<Result<Vec<_>>>()?;
                GroupModule::new(z.group(), model.complex().dim(n), mats)
            })
            .collect::<Result<Vec<_>>>()?;
        EquivariantComplex::new(z.group(), model.complex().clone(), modules).map_err(action_failure)
    })();
    let label = class_label(g, v);
    let Some(ec) = rec.absorb(&format!("{label}: Z_v acts by chain maps"), ec)? else {
        return Ok(None);
    };
    rec.absorb(&format!("{label}: bar pipeline agrees with coinvariants"), hyperhomology(&ec, t.window, t.bar))
}

/// Per non-trivial class, block HP against hyperhomology of `Z_v`; the
/// blocks over all classes must add up to HP of `A⋊G`.
pub fn verify_elliptic(s: &Setting, t: Truncation) -> Result<VerificationReport> {
    let mut rec = Recorder::new();
    let g = s.group();
    let classes = g.conjugacy_classes();
    let mut left = vec![0, 0];
    let mut right = vec![0, 0];
    let mut all_blocks = vec![0, 0];
    for (ci, class) in classes.classes().iter().enumerate() {
        let v = classes.representative(ci);
        let label = class_label(g, v);
        let (hp, _, reduced) = block_profile(s, class, &t, false)?;
        note_reduction(&mut rec, &label, reduced);
        let l = rec.periodic(&format!("{label}-block"), &hp);
        all_blocks[0] += l[0];
        all_blocks[1] += l[1];
        if v == g.identity() {
            continue;
        }
        let r = match elliptic_side(&mut rec, s, v, &t)? {
            Some(h) => rec.periodic(&format!("{label} hyperhomology"), &h.shortcut),
            None => vec![],
        };
        for k in 0..2 {
            left[k] += l[k];
            right[k] += r.get(k).copied().unwrap_or(0);
        }
        rec.part(label, l, r);
    }
    let (total, _, reduced) = block_profile(s, &g.elements().collect::<Vec<_>>(), &t, false)?;
    note_reduction(&mut rec, "A⋊G", reduced);
    let total = rec.periodic("A⋊G", &total);
    rec.part("sum over all classes against HP(A⋊G)", all_blocks, total);
    Ok(rec.finish(TheoremId::Elliptic, &s.name, left, right, periodic_truncations(&t, Some(t.bar))))
}

/// Block HP against hyperhomology of `N_v = Z_v/⟨v⟩` with coefficients in
/// the `{v}`-summand of the relative forms of `A⟨Z_v⟩⋊⟨v⟩`. When it fits the
/// cap the same is done with `A⟨G⟩` in place of `A⟨Z_v⟩`.
pub fn verify_centralizer_extension(s: &Setting, v: usize, t: Truncation) -> Result<VerificationReport> {
    let mut rec = Recorder::new();
    let g = s.group();
    let input = format!("{}, class of {v}", s.name);
    let trunc = periodic_truncations(&t, Some(t.bar));
    let classes = g.conjugacy_classes();
    let class = classes.classes()[classes.class_of(v)].clone();
    let label = class_label(g, v);
    let (hp, co, reduced) = block_profile(s, &class, &t, true)?;
    note_reduction(&mut rec, &label, reduced);
    let left = rec.periodic(&format!("{label}-block"), &hp);
    let left_co = rec.periodic(&format!("{label}-block cohomology"), co.as_ref().expect("requested"));

    let u = g.cyclic_subgroup(v);
    let z = classes.centralizer(v).clone();
    let zg = z.group();
    let u_in_z = Subgroup::from_members(zg, u.members().iter().map(|&x| z.local_index(x).expect("U ⊂ Z_v")).collect())?;
    let (nv, sec) = zg.quotient(&u_in_z)?;
    let v_in_u = u_in_z.local_index(z.local_index(v).expect("v ∈ Z_v")).expect("v ∈ U");

    let cz = StructureAlgebra::tensor_with_set(&s.algebra, zg.order())?;
    let act_z = diagonal_action_on_extension(&s.action.restrict(&z), &cz)?;
    let model = CrossedForms::build(&cz, &act_z.restrict(&u_in_z), t.forms, Some(&[v_in_u]), t.cap)?;
    let reps: Vec<usize> = nv.elements().map(|q| sec.representative(q)).collect();
    let mut right = vec![];
    if let Some(ec) = quotient_side(&mut rec, "A<Z_v>", &model, &nv, &u_in_z, |h| act_z.matrix(h), &reps, &t)? {
        let bar = rec.absorb("A<Z_v>: bar pipeline agrees with coinvariants", hyperhomology(&ec, t.window, t.bar))?;
        if let Some(h) = bar {
            right = rec.periodic("hyperhomology of N_v", &h.shortcut);
        }
        let bar = rec.absorb("A<Z_v>: bar pipeline agrees with invariants", hypercohomology(&ec, t.window, t.bar))?;
        if let Some(h) = bar {
            let r = rec.periodic("hypercohomology of N_v", &h.shortcut);
            rec.part("cohomology", left_co, r);
        }
    }

    let ag = StructureAlgebra::tensor_with_set(&s.algebra, g.order())?;
    if fits(ag.dim(), t.forms, t.cap) {
        let full = diagonal_action_on_extension(&s.action, &ag)?;
        let model = CrossedForms::build(&ag, &full.restrict(&u), t.forms, Some(&[u.local_index(v).expect("v ∈ U")]), t.cap)?;
        let reps_g: Vec<usize> = reps.iter().map(|&r| z.parent_element(r)).collect();
        let side = match quotient_side(&mut rec, "A<G>", &model, &nv, &u, |h| full.matrix(h), &reps_g, &t)? {
            Some(ec) => rec.absorb("A<G>: bar pipeline agrees with coinvariants", hyperhomology(&ec, t.window, t.bar))?,
            None => None,
        };
        if let Some(h) = side {
            let r = rec.periodic("hyperhomology of N_v over A<G>", &h.shortcut);
            rec.part("A<G> coefficients against A<Z_v> coefficients", r, right.clone());
        }
    } else {
        rec.note("A<G> coefficients skipped: the model exceeds the cap");
    }
    Ok(rec.finish(TheoremId::CentralizerExtension, &input, left, right, trunc))
}

/// Checks that `U` acts trivially on the summand and returns it as a
/// complex of modules over the quotient group, acting through the coset
/// representatives `reps`.
#[allow(clippy::too_many_arguments)]
fn quotient_side<'a>(
    rec: &mut Recorder,
    label: &str,
    model: &CrossedForms,
    quotient: &FiniteGroup,
    u: &Subgroup,
    matrix: impl Fn(usize) -> &'a crate::exactlin::SparseMatrix,
    reps: &[usize],
    t: &Truncation,
) -> Result<Option<EquivariantComplex>> {
    let ec = (|| -> Result<EquivariantComplex> {
        for n in 0..=t.forms {
            let id = crate::exactlin::SparseMatrix::identity(model.complex().dim(n));
            for &x in u.members() {
                if model.centralizer_action(n, matrix(x))? != id {
                    return Err(crate::error::Error::IdentityFailure(format!("U does not act trivially in degree {n}")));
                }
            }
        }
        let modules = (0..=t.forms)
            .map(|n| {
                let mats = reps.iter().map(|&r| model.centralizer_action(n, matrix(r))).collect::<Result<Vec<_>>>()?;
                GroupModule::new(quotient, model.complex().dim(n), mats)
            })
            .collect::<Result<Vec<_>>>()?;
        EquivariantComplex::new(quotient, model.complex().clone(), modules).map_err(action_failure)
    })();
    rec.absorb(&format!("{label}: N_v acts, U trivially"), ec)
}

/// `HC_n(kG) = ⊕_i H_{n-2i}(G; k[G]^ad)`, with `H_0` counting conjugacy
/// classes and higher group homology vanishing.
pub fn verify_burghelea(group: &FiniteGroup, t: Truncation) -> Result<VerificationReport> {
    let mut rec = Recorder::new();
    let input = format!("k{}", group.name());
    let kg = StructureAlgebra::group_algebra(group);
    let fc = build_forms_with_cap(&kg, t.forms, t.cap)?;
    let up_to = t.forms.saturating_sub(1);
    let left = cyclic_dims(fc.complex(), up_to)?.dims;
    let ad = GroupModule::adjoint(group, &group.elements().collect::<Vec<_>>())?;
    let h = (0..=up_to).map(|j| group_homology(group, &ad, j, t.bar)).collect::<Result<Vec<_>>>()?;
    let classes = group.conjugacy_classes().num_classes();
    rec.check("H_0 counts conjugacy classes", h[0] == classes, format!("H_0 = {}, classes = {classes}", h[0]));
    rec.check("higher group homology vanishes", h[1..].iter().all(|&x| x == 0), format!("{h:?}"));
    let right: Vec<usize> = (0..left.len()).map(|n| (0..=n / 2).map(|i| h[n - 2 * i]).sum()).collect();
    let trunc = Truncations { forms: t.forms, bar: Some(t.bar), windows: None };
    Ok(rec.finish(TheoremId::Burghelea, &input, left, right, trunc))
}

/// `HP(A⟨X⟩) = HP(A)` for a set `X` of `points` points. When `A` is graded
/// by `grading`, the comparison is also made block by block.
pub fn verify_goodwillie(
    name: &str,
    a: &StructureAlgebra,
    grading: Option<&FiniteGroup>,
    points: usize,
    t: Truncation,
) -> Result<VerificationReport> {
    let mut rec = Recorder::new();
    let input = format!("{name} on {points} points");
    let ax = StructureAlgebra::tensor_with_set(a, points)?;
    let hp_x = periodic_dims(build_forms_with_cap(&ax, t.forms, t.cap)?.complex(), t.window)?;
    let hp_a = periodic_dims(build_forms_with_cap(a, t.forms, t.cap)?.complex(), t.window)?;
    let left = rec.periodic("A<X>", &hp_x);
    let right = rec.periodic("A", &hp_a);
    if let Some(g) = grading {
        let classes = g.conjugacy_classes();
        for (ci, class) in classes.classes().iter().enumerate() {
            let label = class_label(g, classes.representative(ci));
            let bx = periodic_dims(class_block(&ax, g, class, t.forms, t.cap)?.complex(), t.window)?;
            let ba = periodic_dims(class_block(a, g, class, t.forms, t.cap)?.complex(), t.window)?;
            let l = rec.periodic(&format!("{label} of A<X>"), &bx);
            let r = rec.periodic(&format!("{label} of A"), &ba);
            rec.part(label, l, r);
        }
    }
    Ok(rec.finish(TheoremId::Goodwillie, &input, left, right, periodic_truncations(&t, None)))
}

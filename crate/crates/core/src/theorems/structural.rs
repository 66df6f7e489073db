//! Degreewise isomorphisms of form complexes: the class decomposition, the
//! coset embedding, the free-module description and the class reduction.

use crate::algebras::{crossed_bimodule_structure, diagonal_action_on_extension, iota_sigma, StructureAlgebra};
use crate::error::Result;
use crate::exactlin::{rank, Rational, SparseMatrix, SparseVec};
use crate::forms::{
    build_forms_with_cap, build_relative_forms, class_block, degreewise_bijective, free_module_basis,
    homogeneous_labeling, letter_map_of, letter_map_to_relative, CrossedForms, Word, WordIndex,
};
use crate::groups::{CosetSection, GroupModule, Subgroup};
use crate::homology::EquivariantComplex;

use super::setting::{Setting, Truncation};
use super::{action_failure, Recorder, TheoremId, Truncations, VerificationReport};

fn forms_only(forms: usize) -> Truncations {
    Truncations { forms, bar: None, windows: None }
}

/// Forms of `A⋊G` are the direct sum of the class blocks, each built
/// directly from its words.
pub fn verify_decomposition(s: &Setting, t: Truncation) -> Result<VerificationReport> {
    let mut rec = Recorder::new();
    let g = s.group();
    let c = s.crossed()?;
    let fc = build_forms_with_cap(&c, t.forms, t.cap)?;
    let left = fc.complex().dims().to_vec();
    let labeling = rec.absorb("b and B preserve the class labels", homogeneous_labeling(&fc, &c, g))?;
    let classes = g.conjugacy_classes();
    let mut right = vec![0; t.forms + 1];
    for (ci, class) in classes.classes().iter().enumerate() {
        let label = format!("class of {}", classes.representative(ci));
        let blk = class_block(&c, g, class, t.forms, t.cap)?;
        for (n, r) in right.iter_mut().enumerate() {
            *r += blk.complex().dim(n);
        }
        rec.absorb(&format!("{label}: block identities"), blk.complex().check_identities())?;
        if let Some(l) = &labeling {
            let restricted = l.block(fc.complex(), ci)?;
            rec.check(format!("{label}: restriction equals the direct block"), &restricted == blk.complex(), "");
            rec.part(label, restricted.dims().to_vec(), blk.complex().dims().to_vec());
        }
    }
    Ok(rec.finish(TheoremId::Decomposition, &s.name, left, right, forms_only(t.forms)))
}

/// `ι_σ` induces a degreewise isomorphism of mixed complexes
/// `Ω((A⋊U)⟨U\G⟩) → Ω(A⟨G⟩⋊U : kU)_♮`.
pub fn verify_coset_embedding(
    s: &Setting,
    u: &Subgroup,
    section: &CosetSection,
    t: Truncation,
) -> Result<VerificationReport> {
    let mut rec = Recorder::new();
    let input = format!("{} over a subgroup of order {}", s.name, u.order());
    let trunc = forms_only(t.forms);
    let Some(io) = rec.absorb("ι_σ is an injective algebra map", iota_sigma(&s.algebra, &s.action, u, section))? else {
        return Ok(rec.finish(TheoremId::CosetEmbedding, &input, vec![], vec![1], trunc));
    };
    let source = build_forms_with_cap(io.hom.source(), t.forms, t.cap)?;
    let ag = StructureAlgebra::tensor_with_set(&s.algebra, s.group().order())?;
    let target = CrossedForms::build(&ag, &io.extension_action, t.forms, None, t.cap)?;
    let maps = letter_map_to_relative(&source, &letter_map_of(io.hom.matrix())?, &target)?;
    rec.check("degreewise bijective", degreewise_bijective(&maps), "");
    let chain = source.complex().is_chain_map_to(target.complex(), &maps);
    if let Some(ok) = rec.absorb("commutes with b and B", chain)? {
        rec.check("chain map", ok, "");
    }
    let left = source.complex().dims().to_vec();
    let right = target.complex().dims().to_vec();
    Ok(rec.finish(TheoremId::CosetEmbedding, &input, left, right, trunc))
}

/// Largest degree `n ≤ top` whose words over a `d`-dimensional algebra fit
/// the cap.
fn degree_under_cap(d: usize, top: usize, cap: usize) -> usize {
    let ix = WordIndex { d };
    (0..=top).rev().find(|&n| ix.dim(n).is_some_and(|x| x <= cap)).unwrap_or(0)
}

/// Relative forms of `C⋊U` over `kU`, `C = A⟨G⟩`, are the `U`-coinvariants
/// of `Vect(Ad U) ⊗ Ω(C)` through `u_g ⊗ ω ↦ u_g·ω`.
pub fn verify_free_module(s: &Setting, u: &Subgroup, t: Truncation) -> Result<VerificationReport> {
    let mut rec = Recorder::new();
    let input = format!("{} over a subgroup of order {}", s.name, u.order());
    let ag = StructureAlgebra::tensor_with_set(&s.algebra, s.group().order())?;
    let ext = diagonal_action_on_extension(&s.action, &ag)?.restrict(u);
    // The generic relative construction enumerates words of C⋊U.
    let n = degree_under_cap(ag.dim() * u.order(), t.forms, t.cap);
    if n < t.forms {
        rec.note(format!("relative forms enumerated up to degree {n} to stay under the cap"));
    }
    let model = CrossedForms::build(&ag, &ext, n, None, t.cap)?;
    let rel = build_relative_forms(model.cross_algebra(), &crossed_bimodule_structure(&ag, &ext), n, t.cap)?;
    rec.absorb("Φ is an isomorphism on coinvariants with Φ∘σ′ = id", free_module_basis(&model, &rel))?;
    let left = model.complex().dims().to_vec();
    let right = rel.complex().dims().to_vec();
    Ok(rec.finish(TheoremId::FreeModule, &input, left, right, forms_only(n)))
}

/// The `{v}`-summand of the relative forms over `⟨v⟩`, taken modulo the
/// centralizer `Z_v`, is isomorphic to the `[v]`-summand over `G`, which is
/// in turn the `[v]`-block of `Ω(A⋊G)`.
pub fn verify_class_reduction(s: &Setting, v: usize, t: Truncation) -> Result<VerificationReport> {
    let mut rec = Recorder::new();
    let g = s.group();
    let input = format!("{}, class of {v}", s.name);
    let trunc = forms_only(t.forms);
    let classes = g.conjugacy_classes();
    let class = classes.classes()[classes.class_of(v)].clone();
    let u = g.cyclic_subgroup(v);
    let z = classes.centralizer(v).clone();
    let ag = StructureAlgebra::tensor_with_set(&s.algebra, g.order())?;
    let full = diagonal_action_on_extension(&s.action, &ag)?;
    let v_local = u.local_index(v).expect("v generates U");
    let mu = CrossedForms::build(&ag, &full.restrict(&u), t.forms, Some(&[v_local]), t.cap)?;
    let mg = CrossedForms::build(&ag, &full, t.forms, Some(&class), t.cap)?;

    let equivariant = (|| -> Result<EquivariantComplex> {
        let modules = (0..=t.forms)
            .map(|n| {
                let mats = z
                    .members()
                    .iter()
                    .map(|&h| mu.centralizer_action(n, full.matrix(h)))
                    .collect::<Result<Vec<_>>>()?;
                GroupModule::new(z.group(), mu.complex().dim(n), mats)
            })
            .collect::<Result<Vec<_>>>()?;
        EquivariantComplex::new(z.group(), mu.complex().clone(), modules).map_err(action_failure)
    })();
    let Some(ec) = rec.absorb("Z_v acts on the summand by chain maps", equivariant)? else {
        return Ok(rec.finish(TheoremId::ClassReduction, &input, vec![], vec![1], trunc));
    };
    let quots = ec.coinvariant_quotients();
    let Some(coinv) = rec.absorb("b and B descend to Z_v-coinvariants", mu.complex().induced_on_quotients(&quots))?
    else {
        return Ok(rec.finish(TheoremId::ClassReduction, &input, vec![], vec![1], trunc));
    };

    // F: u_x ⊗ ω over U ↦ u_x ⊗ ω over G.
    let d = ag.dim();
    let lift_letters = |w: Word| Word {
        a0: w.a0,
        letters: w.letters.iter().map(|&l| u.parent_element(l / d) * d + l % d).collect(),
    };
    let mut maps = Vec::new();
    let mut kills = true;
    for n in 0..=t.forms {
        let cols = (0..mu.complex().dim(n))
            .map(|k| {
                let (x, w) = mu.rep(n, k);
                mg.project_cross_terms(n, [(lift_letters(mu.cross_word(x, &w)), Rational::ONE)])
            })
            .collect::<Result<Vec<_>>>()?;
        let f = SparseMatrix::from_columns(mg.complex().dim(n), &cols)?;
        kills &= quots[n].relation_subspace().basis().iter().all(|r| f.mul_vec(r).is_zero());
        let comp: Vec<SparseVec> = quots[n].canonical_complement().iter().map(|&i| cols[i].clone()).collect();
        maps.push(SparseMatrix::from_columns(mg.complex().dim(n), &comp)?);
    }
    rec.check("the map kills the Z_v relations", kills, "");
    rec.check("induced map is degreewise bijective", degreewise_bijective(&maps), "");
    if let Some(ok) = rec.absorb("induced map commutes with b and B", coinv.is_chain_map_to(mg.complex(), &maps))? {
        rec.check("induced map is a chain map", ok, "");
    }

    // The [v]-summand over G against the [v]-block of Ω(A⋊G), through ι_σ for U = G.
    let whole = Subgroup::from_members(g, g.elements().collect())?;
    let sec = CosetSection::canonical(g, &whole);
    let io = iota_sigma(&s.algebra, &s.action, &whole, &sec)?;
    let blk = class_block(io.hom.source(), g, &class, t.forms, t.cap)?;
    let to_g = letter_map_to_relative(&blk, &letter_map_of(io.hom.matrix())?, &mg)?;
    rec.check("[v]-block maps bijectively onto the [v]-summand", degreewise_bijective(&to_g), "");
    if let Some(ok) = rec.absorb("block map commutes with b and B", blk.complex().is_chain_map_to(mg.complex(), &to_g))? {
        rec.check("block map is a chain map", ok, "");
    }
    rec.part("[v]-summand over G against the [v]-block", mg.complex().dims().to_vec(), blk.complex().dims().to_vec());
    let ranks: Vec<usize> = maps.iter().map(rank).collect();
    rec.note(format!("ranks of the reduction map per degree: {ranks:?}"));
    let left = coinv.dims().to_vec();
    let right = blk.complex().dims().to_vec();
    Ok(rec.finish(TheoremId::ClassReduction, &input, left, right, trunc))
}

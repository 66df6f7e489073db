//! Finite groups, bar resolutions, group homology and cocycles.

mod bar;
mod cocycle;
mod group;
mod module;

pub use bar::{group_homology, BarResolution, DEFAULT_BAR_CAP, DEFAULT_BAR_DEGREE};
pub(crate) use bar::coinvariant_boundary_entries;
pub use cocycle::{
    extension_cocycle, group_to_cyclic_cocycle, CentralExtensionByZ, CyclicCochain, GroupCochain,
};
pub use group::{ConjugacyData, CosetSection, FiniteGroup, Subgroup};
pub use module::{sign_character, GroupModule};

/// `conjugacy_classes(G)`.
pub fn conjugacy_classes(g: &FiniteGroup) -> ConjugacyData {
    g.conjugacy_classes()
}

/// `cyclic_subgroup(G, v)`.
pub fn cyclic_subgroup(g: &FiniteGroup, v: usize) -> Subgroup {
    g.cyclic_subgroup(v)
}

/// Canonical right-coset section of `U\G`.
pub fn coset_section(g: &FiniteGroup, u: &Subgroup) -> CosetSection {
    CosetSection::canonical(g, u)
}

//! Algebraic differential forms `Ω(A:R)_♮` with the operators `b` and `B`,
//! homogeneous decompositions for crossed products and the structural maps
//! between them.

mod build;
mod crossed;
mod labeling;
mod maps;
mod mixed;
mod orbits;
mod relative;
mod words;

pub use build::{build_forms, build_forms_block, build_forms_with_cap, induced_form_map, FormComplex, DEFAULT_AMBIENT_CAP};
pub use crossed::CrossedForms;
pub use labeling::{class_block, group_action_on_forms, homogeneous_labeling, word_group_element, HomogeneousLabeling};
pub use maps::{degreewise_bijective, free_module_basis, letter_map_of, letter_map_to_relative, FreeModuleData};
pub use mixed::MixedComplex;
pub use orbits::{build_orbit_block, class_orbit_block};
pub use relative::{base_change_projection, build_relative_forms, BimoduleAction};
pub use words::{b_word, big_b_word, Word, WordIndex};

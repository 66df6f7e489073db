//! Named examples and the truncations pinned for each check, so that runs
//! are reproducible. Larger truncations can always be passed explicitly.

use super::setting::{ActionPreset, AlgebraPreset, GroupPreset, Setting, Truncation};
use super::TheoremId;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NamedExample {
    pub id: &'static str,
    pub algebra: AlgebraPreset,
    pub group: GroupPreset,
    pub action: ActionPreset,
}

impl NamedExample {
    pub fn setting(&self) -> Result<Setting> {
        Setting::from_presets(self.algebra, self.group, self.action)
    }
}

const fn ex(id: &'static str, algebra: AlgebraPreset, group: GroupPreset, action: ActionPreset) -> NamedExample {
    NamedExample { id, algebra, group, action }
}

use ActionPreset::{Sign, Trivial};
use AlgebraPreset::{DualNumbers, Field};
use GroupPreset::{Cyclic, Symmetric};

pub const NAMED_EXAMPLES: [NamedExample; 8] = [
    ex("k-z2", Field, Cyclic(2), Trivial),
    ex("k-z3", Field, Cyclic(3), Trivial),
    ex("k-z4", Field, Cyclic(4), Trivial),
    ex("k-s3", Field, Symmetric(3), Trivial),
    ex("dual-z2", DualNumbers, Cyclic(2), Sign),
    ex("dual-z3", DualNumbers, Cyclic(3), Trivial),
    ex("dual-z4", DualNumbers, Cyclic(4), Sign),
    ex("dual-s3", DualNumbers, Symmetric(3), Sign),
];

pub fn named_examples() -> &'static [NamedExample] {
    &NAMED_EXAMPLES
}

pub fn named_example(id: &str) -> Result<NamedExample> {
    NAMED_EXAMPLES
        .iter()
        .copied()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::InvalidAlgebra(format!("unknown named example {id:?}")))
}

/// A pinned override: `example` is a named example id, or `"*"` for the
/// theorem default.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pin {
    pub theorem: TheoremId,
    pub example: &'static str,
    pub forms: usize,
    pub bar: usize,
}

const fn pin(theorem: TheoremId, example: &'static str, forms: usize, bar: usize) -> Pin {
    Pin { theorem, example, forms, bar }
}

pub const MANIFEST: [Pin; 13] = [
    pin(TheoremId::Decomposition, "*", 4, 4),
    pin(TheoremId::Decomposition, "dual-s3", 3, 4),
    pin(TheoremId::CosetEmbedding, "*", 3, 4),
    // The generic relative construction enumerates words of A<G>⋊U; the
    // largest cases drop to the biggest degree under the cap.
    pin(TheoremId::FreeModule, "*", 3, 4),
    pin(TheoremId::ClassReduction, "*", 3, 4),
    pin(TheoremId::ClassReduction, "k-s3", 2, 4),
    pin(TheoremId::ClassReduction, "dual-s3", 2, 4),
    pin(TheoremId::CentralizerExtension, "*", 5, 4),
    pin(TheoremId::Homogeneous, "*", 5, 4),
    pin(TheoremId::Elliptic, "*", 5, 4),
    pin(TheoremId::Burghelea, "*", 5, 5),
    pin(TheoremId::Goodwillie, "*", 5, 4),
    pin(TheoremId::Cocycles, "*", 3, 4),
];

/// The pinned truncation of `theorem` on the named example `example`.
pub fn pinned(theorem: TheoremId, example: &str) -> Truncation {
    let find = |ex: &str| MANIFEST.iter().find(|p| p.theorem == theorem && p.example == ex);
    let p = find(example).or_else(|| find("*")).expect("every theorem has a default pin");
    Truncation::new(p.forms).with_bar(p.bar)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_theorem_has_a_default() {
        for t in TheoremId::ALL {
            assert!(MANIFEST.iter().any(|p| p.theorem == t && p.example == "*"), "{t}");
        }
    }

    #[test]
    fn named_examples_build() {
        for e in named_examples() {
            e.setting().unwrap();
        }
        assert_eq!(pinned(TheoremId::ClassReduction, "k-s3").forms, 2);
        assert_eq!(pinned(TheoremId::ClassReduction, "k-z2").forms, 3);
    }
}

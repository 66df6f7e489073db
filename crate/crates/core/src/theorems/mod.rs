//! Verification of the structural isomorphisms on concrete inputs.
//!
//! Every check computes both sides through separate constructions and
//! records the outcome in a [`VerificationReport`]. Broken internal
//! identities become failed checks; bad input and resource caps are errors.

mod cocycles;
mod manifest;
mod periodic;
mod setting;
mod structural;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::PeriodicProfile;

pub use cocycles::verify_cocycles;
pub use manifest::{named_example, named_examples, pinned, NamedExample, Pin, MANIFEST};
pub use periodic::{
    clear_block_cache,
    verify_burghelea, verify_centralizer_extension, verify_elliptic, verify_goodwillie, verify_homogeneous,
};
pub use setting::{ActionPreset, AlgebraPreset, GroupPreset, Setting, Truncation};
pub use structural::{verify_class_reduction, verify_coset_embedding, verify_decomposition, verify_free_module};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// Forms of `A⋊G` split into conjugacy-class blocks.
    Decomposition,
    /// `Ω((A⋊U)⟨U\G⟩) ≅ Ω(A⟨G⟩⋊U : kU)_♮` through `ι_σ`.
    CosetEmbedding,
    /// Relative forms over `kU` are `U`-coinvariants of `Vect(U) ⊗ Ω(C)`.
    FreeModule,
    /// The `{v}`-summand over `⟨v⟩`, taken modulo `Z_v`, is the `[v]`-block.
    ClassReduction,
    /// `[v]`-block HP as hyperhomology of `Z_v/⟨v⟩`.
    CentralizerExtension,
    /// `[e]`-block HP as hyperhomology of `G` with coefficients in `CC(A)`.
    Homogeneous,
    /// `[v]`-block HP as hyperhomology of `Z_v`, summed over classes.
    Elliptic,
    /// Cyclic homology of a group algebra from conjugacy classes.
    Burghelea,
    /// HP is invariant under the nilpotent extension `A⟨X⟩ → A`.
    Goodwillie,
    /// Group cocycles of the central extension and their cyclic images.
    Cocycles,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::Decomposition,
        TheoremId::CosetEmbedding,
        TheoremId::FreeModule,
        TheoremId::ClassReduction,
        TheoremId::CentralizerExtension,
        TheoremId::Homogeneous,
        TheoremId::Elliptic,
        TheoremId::Burghelea,
        TheoremId::Goodwillie,
        TheoremId::Cocycles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Decomposition => "decomposition",
            TheoremId::CosetEmbedding => "coset-embedding",
            TheoremId::FreeModule => "free-module",
            TheoremId::ClassReduction => "class-reduction",
            TheoremId::CentralizerExtension => "centralizer-extension",
            TheoremId::Homogeneous => "homogeneous",
            TheoremId::Elliptic => "elliptic",
            TheoremId::Burghelea => "burghelea",
            TheoremId::Goodwillie => "goodwillie",
            TheoremId::Cocycles => "cocycles",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == s)
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Some periodic side did not stabilize within the truncation.
    NotStabilized,
}

/// One internal assertion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A labeled sub-comparison, e.g. one conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part {
    pub label: String,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub matched: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncations {
    /// Highest form degree.
    pub forms: usize,
    /// Bar resolution degree, when a group homology pipeline ran.
    pub bar: Option<usize>,
    /// Periodicity windows `[even, odd]`, when HP was compared.
    pub windows: Option<[usize; 2]>,
}

/// A theorem check on one input. For periodic comparisons `left` and
/// `right` are `[HP_even, HP_odd]`; otherwise they are dims per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub input: String,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    pub parts: Vec<Part>,
    pub truncations: Truncations,
    pub notes: Vec<String>,
    pub wall_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// The report with its timing zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        Self { wall_ms: 0, ..self.clone() }
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Collects checks while a verification runs.
pub(crate) struct Recorder {
    start: Instant,
    checks: Vec<Check>,
    parts: Vec<Part>,
    notes: Vec<String>,
    unstable: bool,
}

impl Recorder {
    pub(crate) fn new() -> Self {
        Self { start: Instant::now(), checks: Vec::new(), parts: Vec::new(), notes: Vec::new(), unstable: false }
    }

    pub(crate) fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
        passed
    }

    /// Records `r` as a check. Internal failures become a failed check and
    /// `None`; other errors propagate.
    pub(crate) fn absorb<T>(&mut self, name: &str, r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(v) => {
                self.check(name, true, "");
                Ok(Some(v))
            }
            Err(e) if e.is_internal() => {
                self.check(name, false, e.to_string());
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// `[HP_even, HP_odd]` of a profile, marking the report unstable when
    /// the profile did not settle.
    pub(crate) fn periodic(&mut self, label: &str, p: &PeriodicProfile) -> Vec<usize> {
        if !p.stabilized {
            self.unstable = true;
            self.note(format!(
                "{label}: not stabilized, S-ranks even {:?} odd {:?}",
                p.even_s_ranks, p.odd_s_ranks
            ));
        }
        vec![p.even, p.odd]
    }

    pub(crate) fn part(&mut self, label: impl Into<String>, left: Vec<usize>, right: Vec<usize>) -> bool {
        let matched = left == right;
        self.parts.push(Part { label: label.into(), left, right, matched });
        matched
    }

    pub(crate) fn finish(
        self,
        theorem: TheoremId,
        input: &str,
        left: Vec<usize>,
        right: Vec<usize>,
        truncations: Truncations,
    ) -> VerificationReport {
        let ok = left == right && self.checks.iter().all(|c| c.passed) && self.parts.iter().all(|p| p.matched);
        let verdict = if self.unstable {
            Verdict::NotStabilized
        } else if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        VerificationReport {
            theorem,
            input: input.to_string(),
            left,
            right,
            verdict,
            checks: self.checks,
            parts: self.parts,
            truncations,
            notes: self.notes,
            wall_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

/// Maps an invalid-action error raised while checking that a group acts by
/// chain maps to an internal failure.
pub(crate) fn action_failure(e: Error) -> Error {
    match e {
        Error::InvalidAction(s) => Error::IdentityFailure(s),
        other => other,
    }
}

use serde::{Deserialize, Serialize};

use crate::algebras::{AlgebraAction, StructureAlgebra};
use crate::error::{Error, Result};
use crate::forms::DEFAULT_AMBIENT_CAP;
use crate::groups::FiniteGroup;
use crate::homology::DEFAULT_WINDOW;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "n")]
pub enum GroupPreset {
    Trivial,
    Cyclic(usize),
    Symmetric(usize),
    Dihedral(usize),
}

impl GroupPreset {
    pub fn build(self) -> Result<FiniteGroup> {
        match self {
            GroupPreset::Trivial => Ok(FiniteGroup::trivial()),
            GroupPreset::Cyclic(n) if n >= 1 => Ok(FiniteGroup::cyclic(n)),
            GroupPreset::Symmetric(n) if (1..=5).contains(&n) => Ok(FiniteGroup::symmetric(n)),
            GroupPreset::Dihedral(n) if n >= 2 => Ok(FiniteGroup::dihedral(n)),
            other => Err(Error::InvalidGroup(format!("unsupported preset {other:?}"))),
        }
    }

    pub fn label(self) -> String {
        match self {
            GroupPreset::Trivial => "1".into(),
            GroupPreset::Cyclic(n) => format!("Z{n}"),
            GroupPreset::Symmetric(n) => format!("S{n}"),
            GroupPreset::Dihedral(n) => format!("D{n}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "of")]
pub enum AlgebraPreset {
    Field,
    DualNumbers,
    /// `k[x]/(x^n)`.
    TruncatedPoly(usize),
    GroupAlgebra(GroupPreset),
}

impl AlgebraPreset {
    pub fn build(self) -> Result<StructureAlgebra> {
        match self {
            AlgebraPreset::Field => Ok(StructureAlgebra::field()),
            AlgebraPreset::DualNumbers => Ok(StructureAlgebra::dual_numbers()),
            AlgebraPreset::TruncatedPoly(n) if n >= 1 => Ok(StructureAlgebra::truncated_poly(n)),
            AlgebraPreset::TruncatedPoly(_) => Err(Error::InvalidAlgebra("k[x]/(x^0) is zero".into())),
            AlgebraPreset::GroupAlgebra(g) => Ok(StructureAlgebra::group_algebra(&g.build()?)),
        }
    }

    pub fn label(self) -> String {
        match self {
            AlgebraPreset::Field => "k".into(),
            AlgebraPreset::DualNumbers => "k[x]/(x^2)".into(),
            AlgebraPreset::TruncatedPoly(n) => format!("k[x]/(x^{n})"),
            AlgebraPreset::GroupAlgebra(g) => format!("k{}", g.label()),
        }
    }

    /// Weights for the sign action `x ↦ -x`, when it is an automorphism.
    fn sign_degrees(self) -> Result<Vec<usize>> {
        match self {
            AlgebraPreset::Field => Ok(vec![0]),
            AlgebraPreset::DualNumbers => Ok(vec![0, 1]),
            AlgebraPreset::TruncatedPoly(n) => Ok((0..n).collect()),
            AlgebraPreset::GroupAlgebra(_) => {
                Err(Error::InvalidAction("no sign action preset on a group algebra".into()))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ActionPreset {
    Trivial,
    /// `x ↦ χ(g) x` for the sign character `χ`.
    Sign,
}

impl ActionPreset {
    pub fn label(self) -> &'static str {
        match self {
            ActionPreset::Trivial => "trivial",
            ActionPreset::Sign => "sign",
        }
    }
}

/// A finite group acting on a finite-dimensional algebra.
#[derive(Clone, Debug)]
pub struct Setting {
    pub name: String,
    pub algebra: StructureAlgebra,
    pub action: AlgebraAction,
}

impl Setting {
    pub fn new(name: impl Into<String>, algebra: StructureAlgebra, action: AlgebraAction) -> Result<Self> {
        if action.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch("action and algebra dimensions differ".into()));
        }
        Ok(Self { name: name.into(), algebra, action })
    }

    pub fn from_presets(a: AlgebraPreset, g: GroupPreset, act: ActionPreset) -> Result<Self> {
        let algebra = a.build()?;
        let group = g.build()?;
        let action = match act {
            ActionPreset::Trivial => AlgebraAction::trivial(&algebra, &group),
            ActionPreset::Sign => AlgebraAction::sign(&algebra, &group, &a.sign_degrees()?)?,
        };
        Self::new(format!("{} with {} acting by {}", a.label(), g.label(), act.label()), algebra, action)
    }

    /// An algebra with the trivial group acting.
    pub fn plain(name: impl Into<String>, algebra: StructureAlgebra) -> Self {
        let action = AlgebraAction::trivial(&algebra, &FiniteGroup::trivial());
        Self { name: name.into(), algebra, action }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    pub fn crossed(&self) -> Result<StructureAlgebra> {
        StructureAlgebra::crossed_product(&self.algebra, &self.action)
    }
}

/// Truncation and size limits for one verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    /// Highest form degree `N`.
    pub forms: usize,
    /// Bar resolution degree.
    pub bar: usize,
    /// Periodicity window.
    pub window: usize,
    /// Limit on ambient words per degree for complexes built in full.
    pub cap: usize,
    /// Limit on words enumerated when only orbit representatives are kept.
    pub orbit_cap: usize,
}

impl Truncation {
    pub const fn new(forms: usize) -> Self {
        Self { forms, bar: 4, window: DEFAULT_WINDOW, cap: DEFAULT_AMBIENT_CAP, orbit_cap: 8_000_000 }
    }

    pub const fn with_bar(self, bar: usize) -> Self {
        Self { bar, ..self }
    }

    pub const fn with_cap(self, cap: usize) -> Self {
        Self { cap, ..self }
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Self::new(5)
    }
}

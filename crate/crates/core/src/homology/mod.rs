//! Homology dimensions of mixed complexes and group hyperhomology.

mod cyclic;
mod hyper;
mod twisted;

use serde::{Deserialize, Serialize};

pub use cyclic::{cyclic_dims, hochschild_dims, periodic_dims, periodic_dims_windows};
pub use hyper::{hypercohomology, hyperhomology, periodic_cohomology_dims, EquivariantComplex, HyperProfile};
pub use twisted::{twisted_hochschild_dims, DEFAULT_TWISTED_CAP};

/// Default number of periodicity steps observed before declaring HP stable.
pub const DEFAULT_WINDOW: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theory {
    Hochschild,
    TwistedHochschild,
    Cyclic,
    PeriodicEven,
    PeriodicOdd,
    Hyper,
    HyperCohomology,
}

/// Dimensions per degree, starting at degree 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub theory: Theory,
    pub dims: Vec<usize>,
    /// Set for periodic theories only.
    pub stabilized: Option<bool>,
    /// Highest form degree of the underlying complex.
    pub truncation: usize,
}

/// Periodic dims together with the raw stabilization data.
///
/// `even_s_ranks[k-1]` is the rank of `S^k: HC_{2k} → HC_0`, and
/// `odd_s_ranks[k-1]` that of `S^k: HC_{2k+1} → HC_1`. HP is the common value
/// once these agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicProfile {
    pub even: usize,
    pub odd: usize,
    pub stabilized: bool,
    pub even_s_ranks: Vec<usize>,
    pub odd_s_ranks: Vec<usize>,
    /// `HC_n` for `n < truncation`.
    pub hc: Vec<usize>,
    pub truncation: usize,
    pub windows: [usize; 2],
}

impl PeriodicProfile {
    /// `(HP_even, HP_odd)` when stabilized.
    pub fn dims(&self) -> Option<(usize, usize)> {
        self.stabilized.then_some((self.even, self.odd))
    }

    pub fn to_profiles(&self) -> [HomologyProfile; 2] {
        let mk = |theory, d| HomologyProfile {
            theory,
            dims: vec![d],
            stabilized: Some(self.stabilized),
            truncation: self.truncation,
        };
        [mk(Theory::PeriodicEven, self.even), mk(Theory::PeriodicOdd, self.odd)]
    }

    pub fn cyclic_profile(&self) -> HomologyProfile {
        HomologyProfile { theory: Theory::Cyclic, dims: self.hc.clone(), stabilized: None, truncation: self.truncation }
    }
}

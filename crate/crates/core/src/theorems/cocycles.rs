//! The cocycle of the central extension by `Z` and its cyclic image.

use crate::algebras::{diagonal_action_on_extension, AlgebraAction, StructureAlgebra};
use crate::error::Result;
use crate::exactlin::Rational;
use crate::forms::{build_forms_with_cap, group_action_on_forms};
use crate::groups::{extension_cocycle, group_to_cyclic_cocycle, CentralExtensionByZ, FiniteGroup};

use super::setting::Truncation;
use super::{Recorder, TheoremId, Truncations, VerificationReport};

/// Orders of the cyclic quotients checked for the cocycle identity.
const COCYCLE_ORDERS: std::ops::RangeInclusive<usize> = 2..=6;
/// Orders whose cyclic image is checked on the forms of `k⟨G⟩`.
const CYCLIC_ORDERS: [usize; 2] = [2, 3];

/// The extension cocycle of `0 → Z → Z → Z/n → 0` satisfies the cocycle
/// identity; alternated, it gives a `(b, B)`-closed, `G`-invariant functional
/// on the forms of `k⟨G⟩`. `left`/`right` compare `c(0, 1, 0)` for `n = 2`
/// with its value from the carries.
pub fn verify_cocycles(t: Truncation) -> Result<VerificationReport> {
    let mut rec = Recorder::new();
    for n in COCYCLE_ORDERS {
        let c = extension_cocycle(&CentralExtensionByZ::standard(n));
        rec.check(format!("Z/{n}: cocycle identity"), c.is_cocycle(), "");
        rec.check(format!("Z/{n}: homogeneous"), c.is_homogeneous(), "");
    }
    let z2 = extension_cocycle(&CentralExtensionByZ::standard(2));
    let sample = z2.get(&[0, 1, 0]).clone();
    // 0 → 1 → 0 wraps once upward across a carry and once down: 1 - (-1).
    let left = vec![2];
    let right = vec![sample.to_string().parse::<usize>().unwrap_or(usize::MAX)];
    let k = StructureAlgebra::field();
    for n in CYCLIC_ORDERS {
        let g = FiniteGroup::cyclic(n);
        let alt = extension_cocycle(&CentralExtensionByZ::standard(n)).alternate();
        let Some(phi) = rec.absorb(&format!("Z/{n}: cyclic image is defined"), group_to_cyclic_cocycle(&g, &alt))? else {
            continue;
        };
        let kg = StructureAlgebra::tensor_with_set(&k, n)?;
        let fc = build_forms_with_cap(&kg, t.forms, t.cap)?;
        rec.check(format!("Z/{n}: closed under b and B"), phi.is_closed(fc.complex()), "");
        let act = diagonal_action_on_extension(&AlgebraAction::trivial(&k, &g), &kg)?;
        if let Some(modules) = rec.absorb(&format!("Z/{n}: translations act on forms"), group_action_on_forms(&fc, &act))? {
            let m = &modules[phi.degree()];
            let invariant = g.elements().all(|h| m.action(h).transpose().mul_vec(phi.functional()) == *phi.functional());
            rec.check(format!("Z/{n}: invariant under translation"), invariant, "");
        }
        // An alternating cochain needs degree + 1 distinct group elements.
        let nonzero = phi.functional().entries().iter().any(|(_, x)| *x != Rational::ZERO);
        rec.check(format!("Z/{n}: functional is nonzero iff n > degree"), nonzero == (n > phi.degree()), "");
    }
    let trunc = Truncations { forms: t.forms, bar: None, windows: None };
    Ok(rec.finish(TheoremId::Cocycles, "central extension of Z/n by Z", left, right, trunc))
}

//! Decision procedures for spherical unitarizability.

pub mod classify;
pub mod fiber;
pub mod forms;
pub mod isolation;
pub mod prv;
pub mod scan;

pub use classify::{
    classify_su3, classify_su3_detailed, norm_bound_for_parameter, norm_bound_test, NormBound, NormBoundMode,
    Su3Classification,
};
pub use fiber::{fiber_dimension_allowed, FiberVerdict};
pub use forms::{has_invariant_form, invariant_form_witness, is_cospherical, is_l_irreducible, is_spherical_cyclic};
pub use isolation::{isolation_witness, prop_t_conditions, IsolationCertificate, IsolationSteps, IsolationVerdict};
pub use prv::{prv_determinant, prv_invertible, spherical_multiplicity, SphericalMultiplicity};
pub use scan::{box_grid, cube_grid, scan, write_csv, Axis, ScanGroup, ScanRow, MAX_SCAN_POINTS};

use serde::Serialize;

use crate::weyl::{CartanData, DominantWeight};

/// Verdict on the spherical principal series `V(0,ν)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "class")]
pub enum UnitaryClass {
    Principal,
    /// `ν ≡ (t+is, −t+is, −2is)`; in rank one `ν ≡ t + is`.
    Complementary {
        t: f64,
        s: f64,
    },
    Character,
    NotUnitarizable {
        reason: NonUnitaryReason,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NonUnitaryReason {
    NoInvariantForm,
    FormIndefinite,
    NormBoundViolated,
}

impl UnitaryClass {
    pub fn is_unitarizable(&self) -> bool {
        !matches!(self, UnitaryClass::NotUnitarizable { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            UnitaryClass::Principal => "Principal",
            UnitaryClass::Complementary { .. } => "Complementary",
            UnitaryClass::Character => "Character",
            UnitaryClass::NotUnitarizable { .. } => "NotUnitarizable",
        }
    }

    pub fn reason(&self) -> Option<NonUnitaryReason> {
        match self {
            UnitaryClass::NotUnitarizable { reason } => Some(*reason),
            _ => None,
        }
    }
}

impl NonUnitaryReason {
    pub fn name(&self) -> &'static str {
        match self {
            NonUnitaryReason::NoInvariantForm => "NoInvariantForm",
            NonUnitaryReason::FormIndefinite => "FormIndefinite",
            NonUnitaryReason::NormBoundViolated => "NormBoundViolated",
        }
    }
}

/// The first `count` dominant weights in partition order:
/// `[0,0], [1,0], [1,1], [2,0], …` for 𝔰𝔩₃.
pub fn first_dominant_weights(cd: &CartanData, count: usize) -> Vec<DominantWeight> {
    let n = cd.n();
    let mut bound = 0u32;
    loop {
        let mut all = Vec::new();
        let mut parts = vec![0u32; n];
        partitions_below(cd, bound, 0, &mut parts, &mut all);
        if all.len() >= count {
            all.sort();
            all.truncate(count);
            return all;
        }
        bound += 1;
    }
}

fn partitions_below(cd: &CartanData, bound: u32, k: usize, parts: &mut Vec<u32>, out: &mut Vec<DominantWeight>) {
    if k + 1 == parts.len() {
        out.push(DominantWeight::new(cd, parts).expect("nonincreasing by construction"));
        return;
    }
    let cap = if k == 0 { bound } else { parts[k - 1] };
    for x in 0..=cap {
        parts[k] = x;
        partitions_below(cd, bound, k + 1, parts, out);
    }
    parts[k] = 0;
}

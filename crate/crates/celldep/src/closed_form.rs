//! Analytic per-tier dependency probabilities and the tier-weighted aggregate.
//!
//! For a tier at normalized center distance `nu` and interference reach
//! `gamma`, the three dependency types split into gamma intervals:
//!
//!   Type I  (station-station only)
//!     nu-2 <= gamma < nu-1:  (gamma + 2 - nu)^4 / (18*sqrt(3))
//!     nu-1 <= gamma < nu:    (1 - u^4 - v^4/2) / (9*sqrt(3)) + u^4 / 54
//!                            with u = gamma + 1 - nu, v = nu - gamma
//!     otherwise 0
//!   Type II (access points interfere)
//!     1 if nu <= gamma, else 0
//!   Type III (access point reaches the far station)
//!     nu-1 <= gamma < nu:    1 - (1 - u^2/3)^2
//!     otherwise 0
//!
//! Interval boundaries are left-closed, right-open in gamma, except Type II
//! which is closed at `nu <= gamma`. Tiers beyond reach (gamma < nu - 2)
//! yield zero for every type, so the per-tier functions are total.

use std::fmt;

use crate::lattice::{Tier, TierTable};

#[derive(Debug, Clone, PartialEq)]
pub enum ClosedFormError {
    TierTableTooSmall { nu_max: f64, required: f64 },
}

impl fmt::Display for ClosedFormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedFormError::TierTableTooSmall { nu_max, required } => write!(
                f,
                "tier table truncated at nu_max {nu_max} but gamma + 2 = {required} is required"
            ),
        }
    }
}

impl std::error::Error for ClosedFormError {}

/// Which case of which dependency type applies at (gamma, nu).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CaseLabel {
    pub dependency_type: u8,
    pub case_index: u8,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "type {} case {}", self.dependency_type, self.case_index)
    }
}

/// Case selector shared by all three types. Case 0 means "out of reach"
/// (gamma < nu - 2, handled before the three printed cases).
fn case_index(gamma: f64, nu: f64) -> u8 {
    if gamma < nu - 2.0 {
        0
    } else if gamma < nu - 1.0 {
        1
    } else if gamma < nu {
        2
    } else {
        3
    }
}

pub fn case_label(dependency_type: u8, gamma: f64, nu: f64) -> CaseLabel {
    debug_assert!(matches!(dependency_type, 1..=3));
    CaseLabel {
        dependency_type,
        case_index: case_index(gamma, nu),
    }
}

/// Type I (station-station only) probability for one tier.
pub fn type1_probability(gamma: f64, nu: f64) -> f64 {
    let sqrt3 = 3f64.sqrt();
    match case_index(gamma, nu) {
        1 => {
            let t = gamma + 2.0 - nu;
            t.powi(4) / (18.0 * sqrt3)
        }
        2 => {
            let u = gamma + 1.0 - nu;
            let v = nu - gamma;
            (1.0 - u.powi(4) - 0.5 * v.powi(4)) / (9.0 * sqrt3) + u.powi(4) / 54.0
        }
        _ => 0.0,
    }
}

/// Type II (access points interfere) probability: a step at `nu <= gamma`.
pub fn type2_probability(gamma: f64, nu: f64) -> f64 {
    if nu <= gamma {
        1.0
    } else {
        0.0
    }
}

/// Type III (cross access-point/station) probability for one tier.
pub fn type3_probability(gamma: f64, nu: f64) -> f64 {
    if case_index(gamma, nu) == 2 {
        let u = gamma + 1.0 - nu;
        let w = 1.0 - u * u / 3.0;
        1.0 - w * w
    } else {
        0.0
    }
}

/// All three per-tier probabilities together with the case labels used.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TierProbability {
    pub tier_index: usize,
    pub nu: f64,
    pub count: u64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub cases: [CaseLabel; 3],
}

pub fn tier_probability(gamma: f64, tier: &Tier) -> TierProbability {
    TierProbability {
        tier_index: tier.index,
        nu: tier.nu,
        count: tier.count,
        p1: type1_probability(gamma, tier.nu),
        p2: type2_probability(gamma, tier.nu),
        p3: type3_probability(gamma, tier.nu),
        cases: [
            case_label(1, gamma, tier.nu),
            case_label(2, gamma, tier.nu),
            case_label(3, gamma, tier.nu),
        ],
    }
}

/// Tier-weighted aggregate over all reachable tiers (`nu < gamma + 2`):
/// `p_i = sum_j p_i(j) * n_j / sum_j n_j`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AggregateProbability {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    /// Index of the farthest reachable tier; 0 when no tier is reachable,
    /// in which case all three probabilities are zero.
    pub j0: usize,
    pub cell_count: u64,
}

impl AggregateProbability {
    pub fn no_reachable_tiers(&self) -> bool {
        self.j0 == 0
    }
}

pub fn aggregate(tiers: &TierTable, gamma: f64) -> Result<AggregateProbability, ClosedFormError> {
    if tiers.nu_max() < gamma + 2.0 {
        return Err(ClosedFormError::TierTableTooSmall {
            nu_max: tiers.nu_max(),
            required: gamma + 2.0,
        });
    }
    let reachable = tiers.reachable(gamma);
    let cell_count: u64 = reachable.iter().map(|t| t.count).sum();
    if reachable.is_empty() {
        return Ok(AggregateProbability {
            p1: 0.0,
            p2: 0.0,
            p3: 0.0,
            j0: 0,
            cell_count: 0,
        });
    }
    let mut sums = [0.0f64; 3];
    for t in reachable {
        sums[0] += type1_probability(gamma, t.nu) * t.count as f64;
        sums[1] += type2_probability(gamma, t.nu) * t.count as f64;
        sums[2] += type3_probability(gamma, t.nu) * t.count as f64;
    }
    let total = cell_count as f64;
    Ok(AggregateProbability {
        p1: sums[0] / total,
        p2: sums[1] / total,
        p3: sums[2] / total,
        j0: reachable.last().expect("non-empty").index,
        cell_count,
    })
}

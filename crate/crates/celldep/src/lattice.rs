//! Hexagonal layout with 3-channel reuse: co-channel tier enumeration.
//!
//! With unit-radius cells, adjacent cell centers sit sqrt(3) apart along the
//! basis directions sqrt(3)*(cos30, sin30) and sqrt(3)*(cos90, sin90), and
//! the coloring `channel = (i - k) mod 3` makes same-channel centers a
//! triangular sublattice of spacing 3. Its shells are exactly the distances
//! `nu = 3*sqrt(m^2 + m*n + n^2)` over integer (m, n) != (0, 0), grouped by
//! the integer norm, so tier grouping is exact.

use std::collections::BTreeMap;
use std::fmt;

use crate::hexgeom::Point;

const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, PartialEq)]
pub enum LatticeError {
    InvalidNuMax(f64),
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::InvalidNuMax(v) => write!(f, "nu_max must be > 0, got {v}"),
        }
    }
}

impl std::error::Error for LatticeError {}

/// One shell of co-channel cells: all centers at distance `nu` (in units of
/// the cell radius) from the reference cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Tier {
    /// 1-based index in ascending `nu` order.
    pub index: usize,
    /// Integer shell norm; `nu = 3 * sqrt(norm)`.
    pub norm: u64,
    /// Center distance in cell-radius units.
    pub nu: f64,
    /// Number of cells in the shell.
    pub count: u64,
    /// Canonical shell member: the lattice point with the smallest
    /// non-negative polar angle.
    pub representative: Point,
}

/// Ordered tier list up to a distance bound.
#[derive(Debug, Clone, PartialEq)]
pub struct TierTable {
    tiers: Vec<Tier>,
    nu_max: f64,
}

/// Coordinates of a co-channel sublattice point `(m, n)`:
/// `3 * (m + n/2, n*sqrt(3)/2)`.
fn sublattice_point(m: i64, n: i64) -> Point {
    Point::new(
        3.0 * (m as f64 + n as f64 / 2.0),
        3.0 * n as f64 * SQRT3 / 2.0,
    )
}

/// All sublattice points of a given integer norm `m^2 + m*n + n^2`.
pub fn shell_points(norm: u64) -> Vec<Point> {
    let bound = (norm as f64).sqrt().ceil() as i64 * 2 + 1;
    let mut points = Vec::new();
    for m in -bound..=bound {
        for n in -bound..=bound {
            if m == 0 && n == 0 {
                continue;
            }
            if (m * m + m * n + n * n) as u64 == norm {
                points.push(sublattice_point(m, n));
            }
        }
    }
    points
}

fn polar_angle(p: Point) -> f64 {
    let mut a = p.y.atan2(p.x);
    if a < 0.0 {
        a += std::f64::consts::TAU;
    }
    a
}

/// Enumerates co-channel tiers with `nu < nu_max`, ascending.
pub fn cochannel_tiers(nu_max: f64) -> Result<Vec<Tier>, LatticeError> {
    if !nu_max.is_finite() || nu_max <= 0.0 {
        return Err(LatticeError::InvalidNuMax(nu_max));
    }
    let bound = (nu_max / 3.0).ceil() as i64 + 1;
    let mut shells: BTreeMap<u64, Vec<(i64, i64)>> = BTreeMap::new();
    for m in -2 * bound..=2 * bound {
        for n in -2 * bound..=2 * bound {
            if m == 0 && n == 0 {
                continue;
            }
            let norm = m * m + m * n + n * n;
            debug_assert!(norm > 0);
            let nu = 3.0 * (norm as f64).sqrt();
            if nu < nu_max {
                shells.entry(norm as u64).or_default().push((m, n));
            }
        }
    }
    let tiers = shells
        .into_iter()
        .enumerate()
        .map(|(i, (norm, members))| {
            let representative = members
                .iter()
                .map(|&(m, n)| sublattice_point(m, n))
                .min_by(|a, b| polar_angle(*a).total_cmp(&polar_angle(*b)))
                .expect("shell is non-empty");
            Tier {
                index: i + 1,
                norm,
                nu: 3.0 * (norm as f64).sqrt(),
                count: members.len() as u64,
                representative,
            }
        })
        .collect();
    Ok(tiers)
}

impl TierTable {
    pub fn build(nu_max: f64) -> Result<Self, LatticeError> {
        Ok(Self {
            tiers: cochannel_tiers(nu_max)?,
            nu_max,
        })
    }

    pub fn tiers(&self) -> &[Tier] {
        &self.tiers
    }

    pub fn nu_max(&self) -> f64 {
        self.nu_max
    }

    /// Largest tier index with `nu < gamma + 2` (0 when no tier qualifies):
    /// beyond that distance even the closest station pair is out of reach.
    pub fn j0(&self, gamma: f64) -> usize {
        self.tiers
            .iter()
            .take_while(|t| t.nu < gamma + 2.0)
            .count()
    }

    /// Tiers up to and including `j0(gamma)`.
    pub fn reachable(&self, gamma: f64) -> &[Tier] {
        &self.tiers[..self.j0(gamma)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent shell oracle: brute-force (i, k) enumeration grouped by
    /// integer norm, no shared code with `cochannel_tiers`.
    fn brute_shells(norm_max: u64) -> BTreeMap<u64, u64> {
        let r = (norm_max as f64).sqrt() as i64 + 2;
        let mut counts = BTreeMap::new();
        for i in -2 * r..=2 * r {
            for k in -2 * r..=2 * r {
                if i == 0 && k == 0 {
                    continue;
                }
                let n = (i * i + i * k + k * k) as u64;
                if n <= norm_max {
                    *counts.entry(n).or_insert(0u64) += 1;
                }
            }
        }
        counts
    }

    #[test]
    fn tier_examples() {
        // nu_max = 7 keeps norms with 9n < 49: 1, 3, 4
        let tiers = cochannel_tiers(7.0).unwrap();
        let got: Vec<(f64, u64)> = tiers.iter().map(|t| (t.nu, t.count)).collect();
        assert_eq!(got.len(), 3);
        assert_eq!(got[0], (3.0, 6));
        assert!((got[1].0 - 3.0 * 3f64.sqrt()).abs() < 1e-12 && got[1].1 == 6);
        assert_eq!(got[2], (6.0, 6));

        // nu_max = 8 adds the norm-7 shell with 12 members
        let tiers = cochannel_tiers(8.0).unwrap();
        assert_eq!(tiers.len(), 4);
        assert!((tiers[3].nu - 3.0 * 7f64.sqrt()).abs() < 1e-12);
        assert_eq!(tiers[3].count, 12);

        // nu_max = 3 excludes the first tier (strict bound)
        assert!(cochannel_tiers(3.0).unwrap().is_empty());

        assert!(matches!(
            cochannel_tiers(0.0).unwrap_err(),
            LatticeError::InvalidNuMax(_)
        ));
    }

    #[test]
    fn shells_match_brute_force() {
        let tiers = cochannel_tiers(30.0).unwrap();
        let oracle = brute_shells(110);
        assert_eq!(tiers.len(), oracle.iter().filter(|(n, _)| **n < 100).count());
        for t in &tiers {
            assert_eq!(Some(&t.count), oracle.get(&t.norm), "norm {}", t.norm);
            assert!((t.nu - 3.0 * (t.norm as f64).sqrt()).abs() < 1e-12);
        }
        // indices ascend with nu
        for w in tiers.windows(2) {
            assert!(w[0].nu < w[1].nu);
            assert_eq!(w[0].index + 1, w[1].index);
        }
    }

    #[test]
    fn sublattice_is_the_reuse3_coloring() {
        // The co-channel subset of the full cell lattice under the coloring
        // channel = (i - k) mod 3 has squared distances 3*(i^2+ik+k^2); the
        // shell norms above must be exactly those divided by 3.
        let mut full: BTreeMap<u64, u64> = BTreeMap::new();
        let r = 12i64;
        for i in -r..=r {
            for k in -r..=r {
                if i == 0 && k == 0 {
                    continue;
                }
                if (i - k).rem_euclid(3) != 0 {
                    continue;
                }
                let norm3 = (i * i + i * k + k * k) as u64;
                assert_eq!(norm3 % 3, 0, "co-channel norms are divisible by 3");
                *full.entry(norm3 / 3).or_insert(0) += 1;
            }
        }
        let oracle = brute_shells(36);
        for (norm, count) in oracle.iter().filter(|(n, _)| **n <= 36) {
            assert_eq!(full.get(norm), Some(count), "norm {norm}");
        }
    }

    #[test]
    fn j0_examples() {
        let table = TierTable::build(60.0).unwrap();
        // gamma = 2: nu_1 = 3 < 4 but nu_2 = 5.196 >= 4
        assert_eq!(table.j0(2.0), 1);
        // below the model floor nothing qualifies
        assert_eq!(table.j0(0.5), 0);
        // the 48 Mbps operating point: tiers through norm 28, 108 cells
        let gamma = 14.393713460023038;
        let j0 = table.j0(gamma);
        assert_eq!(table.tiers()[j0 - 1].norm, 28);
        assert_eq!(table.tiers()[j0].norm, 31); // first excluded shell
        let total: u64 = table.reachable(gamma).iter().map(|t| t.count).sum();
        assert_eq!(total, 108);
    }

    #[test]
    fn j0_nondecreasing_in_gamma() {
        let table = TierTable::build(40.0).unwrap();
        let mut last = 0;
        let mut g = 0.5;
        while g < 35.0 {
            let j = table.j0(g);
            assert!(j >= last);
            last = j;
            g += 0.37;
        }
    }

    #[test]
    fn shell_sizes_multiple_of_six_and_loeschian() {
        let tiers = cochannel_tiers(30.0 + 1e-9).unwrap();
        let mut unusual = Vec::new();
        for t in &tiers {
            assert!(t.count > 0 && t.count % 6 == 0, "shell {} size {}", t.norm, t.count);
            // nu^2 / 9 is the integer shell norm (Loeschian number)
            let q = t.nu * t.nu / 9.0;
            assert!((q - q.round()).abs() < 1e-6);
            assert_eq!(q.round() as u64, t.norm);
            if t.count != 6 && t.count != 12 {
                unusual.push((t.norm, t.count));
            }
        }
        // The {6, 12} rule has exceptions within nu <= 30: norm 49 (18 cells,
        // nu = 21) and norm 91 (24 cells, nu ~ 28.6).
        assert_eq!(unusual, vec![(49, 18), (91, 24)]);
    }

    #[test]
    fn shells_closed_under_rotation() {
        // Rotating by 60 degrees maps (m, n) to (-n, m + n) and preserves the
        // norm; each shell must be closed under that map.
        let r = 8i64;
        let mut shells: BTreeMap<u64, Vec<(i64, i64)>> = BTreeMap::new();
        for m in -r..=r {
            for n in -r..=r {
                if (m, n) == (0, 0) {
                    continue;
                }
                shells
                    .entry((m * m + m * n + n * n) as u64)
                    .or_default()
                    .push((m, n));
            }
        }
        for (norm, members) in shells.iter().filter(|(n, _)| **n <= (r * r / 2) as u64) {
            for &(m, n) in members {
                let rotated = (-n, m + n);
                assert!(
                    members.contains(&rotated),
                    "norm {norm}: rotation of ({m},{n}) missing"
                );
            }
        }
    }

    #[test]
    fn representatives_are_canonical() {
        let tiers = cochannel_tiers(12.0).unwrap();
        // first tier representative is (3, 0)
        assert!((tiers[0].representative.x - 3.0).abs() < 1e-12);
        assert!(tiers[0].representative.y.abs() < 1e-12);
        // second tier (norm 3) sits at 30 degrees: (4.5, 3*sqrt(3)/2)
        assert!((tiers[1].representative.x - 4.5).abs() < 1e-12);
        assert!((tiers[1].representative.y - 4.5 * 3f64.sqrt() / 3.0).abs() < 1e-9);
        // deterministic: re-enumeration returns identical representatives
        let again = cochannel_tiers(12.0).unwrap();
        for (a, b) in tiers.iter().zip(&again) {
            assert_eq!(a.representative, b.representative);
        }
        // representative distance matches nu
        for t in &tiers {
            assert!((t.representative.norm() - t.nu).abs() < 1e-9);
        }
    }
}

//! Model-truth oracles for the dependency probabilities.
//!
//! Two independent routes evaluate the same geometric model that the closed
//! forms approximate:
//!
//! * a midpoint-rule quadrature of the Type I integral
//!   `p1 = (4/27) * int_{D1} Area(H((x,y),gamma) ^ D2) dx dy`
//!   with every area term an exact convex clip, and
//! * a seeded Monte Carlo simulation of the event definitions.
//!
//! Station-station and access-point-to-station reach is evaluated with the
//! interference hexagons. Access-point-to-access-point interference is a
//! center-distance comparison (`nu <= gamma`), matching the tier-counting
//! step function; see `classify_pair`.
//!
//! Both oracles are deterministic: the quadrature by construction, the Monte
//! Carlo through per-worker counter-based substreams (ChaCha8 stream = worker
//! index) with fixed per-worker quotas, so estimates are bit-identical for a
//! fixed (seed, samples, workers) triple regardless of thread scheduling.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hexgeom::{clip_convex, sample_uniform, Hexagon, Point};
use crate::lattice::{Tier, TierTable};

#[derive(Debug, Clone, PartialEq)]
pub enum OracleError {
    StationOutsideCell { station: u8 },
    InvalidSampleCount(u64),
    InvalidWorkerCount(u32),
    InvalidGridSize(u32),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::StationOutsideCell { station } => {
                write!(f, "station {station} is outside its cell")
            }
            OracleError::InvalidSampleCount(n) => write!(f, "sample count must be >= 1, got {n}"),
            OracleError::InvalidWorkerCount(w) => write!(f, "worker count must be >= 1, got {w}"),
            OracleError::InvalidGridSize(n) => write!(f, "grid size must be >= 16, got {n}"),
        }
    }
}

impl std::error::Error for OracleError {}

/// Dependency classes of a station pair in co-channel cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Dependency {
    /// Stations reach each other; neither reaches the other's access point,
    /// and the access points do not interfere.
    TypeI,
    /// The access points interfere with each other.
    TypeII,
    /// An access point reaches the other cell's station (and the access
    /// points do not interfere).
    TypeIII,
}

impl Dependency {
    pub fn type_number(self) -> u8 {
        match self {
            Dependency::TypeI => 1,
            Dependency::TypeII => 2,
            Dependency::TypeIII => 3,
        }
    }
}

/// One co-channel pair geometry: the reference cell at the origin and one
/// cell of a tier at its canonical representative, both unit radius, with
/// interference hexagons of radius `gamma`.
#[derive(Debug, Clone)]
pub struct Scenario {
    gamma: f64,
    nu: f64,
    cell1: Hexagon,
    cell2: Hexagon,
    reach_a1: Hexagon,
    reach_a2: Hexagon,
}

impl Scenario {
    pub fn new(gamma: f64, tier: &Tier) -> Self {
        Self::at(gamma, tier.nu, tier.representative)
    }

    /// Scenario with an explicit cell-2 center (used to spot-check that every
    /// member of a shell orbit yields the same probabilities).
    pub fn at(gamma: f64, nu: f64, cell2_center: Point) -> Self {
        assert!(
            (cell2_center.norm() - nu).abs() <= 1e-9,
            "cell 2 center must sit at distance nu"
        );
        let origin = Point::new(0.0, 0.0);
        Self {
            gamma,
            nu,
            cell1: Hexagon::new(origin, 1.0),
            cell2: Hexagon::new(cell2_center, 1.0),
            reach_a1: Hexagon::new(origin, gamma),
            reach_a2: Hexagon::new(cell2_center, gamma),
        }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn cell1(&self) -> &Hexagon {
        &self.cell1
    }

    pub fn cell2(&self) -> &Hexagon {
        &self.cell2
    }

    /// Access points interfere when their distance is within the reach:
    /// the station-independent Type II condition.
    pub fn aps_interfere(&self) -> bool {
        self.nu <= self.gamma
    }

    /// Station-position classification with precedence II > III > I,
    /// mirroring the mutually exclusive event definitions.
    fn classify(&self, sta1: Point, sta2: Point) -> Option<Dependency> {
        if self.aps_interfere() {
            return Some(Dependency::TypeII);
        }
        if self.reach_a1.contains(sta2) || self.reach_a2.contains(sta1) {
            return Some(Dependency::TypeIII);
        }
        // co-oriented equal hexagons make mutual reach symmetric
        if Hexagon::new(sta1, self.gamma).contains(sta2) {
            return Some(Dependency::TypeI);
        }
        None
    }
}

/// Classifies a station pair; `None` means the stations are independent.
pub fn classify_pair(
    s: &Scenario,
    sta1: Point,
    sta2: Point,
) -> Result<Option<Dependency>, OracleError> {
    if !s.cell1.contains(sta1) {
        return Err(OracleError::StationOutsideCell { station: 1 });
    }
    if !s.cell2.contains(sta2) {
        return Err(OracleError::StationOutsideCell { station: 2 });
    }
    Ok(s.classify(sta1, sta2))
}

/// Monte Carlo run parameters. Estimates are reproducible for a fixed
/// (seed, samples, workers) triple.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub workers: u32,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64, workers: u32) -> Result<Self, OracleError> {
        if samples == 0 {
            return Err(OracleError::InvalidSampleCount(samples));
        }
        if workers == 0 {
            return Err(OracleError::InvalidWorkerCount(workers));
        }
        Ok(Self {
            samples,
            seed,
            workers,
        })
    }
}

/// Binomial estimate with its plug-in standard error.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
}

impl McEstimate {
    fn from_hits(hits: u64, samples: u64) -> Self {
        let p = hits as f64 / samples as f64;
        Self {
            estimate: p,
            stderr: (p * (1.0 - p) / samples as f64).sqrt(),
            samples,
        }
    }

    fn exact(value: f64, samples: u64) -> Self {
        Self {
            estimate: value,
            stderr: 0.0,
            samples,
        }
    }
}

/// Tier-weighted Monte Carlo aggregate; `j0 == 0` flags an empty tier set.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct McAggregate {
    pub estimate: McEstimate,
    pub j0: usize,
    pub cell_count: u64,
}

impl McAggregate {
    pub fn no_reachable_tiers(&self) -> bool {
        self.j0 == 0
    }
}

/// Splits the sample budget across workers (remainder to the first workers)
/// and sums per-worker hit counts in worker order.
fn mc_hits<F>(cfg: &McConfig, body: F) -> u64
where
    F: Fn(&mut ChaCha8Rng, u64) -> u64 + Sync,
{
    let workers = cfg.workers as u64;
    let base = cfg.samples / workers;
    let rem = cfg.samples % workers;
    let seed = cfg.seed;

    if cfg.workers == 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(0);
        return body(&mut rng, cfg.samples);
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let body = &body;
                let quota = base + u64::from(w < rem);
                scope.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(w);
                    body(&mut rng, quota)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .sum()
    })
}

/// Estimates one dependency-type probability for a single tier by sampling
/// station pairs uniformly in their cells.
pub fn mc_tier_probability(s: &Scenario, dep: Dependency, cfg: &McConfig) -> McEstimate {
    // When the access points interfere every pair is Type II: the outcome is
    // station-independent and needs no sampling.
    if s.aps_interfere() {
        let v = if dep == Dependency::TypeII { 1.0 } else { 0.0 };
        return McEstimate::exact(v, cfg.samples);
    }
    if dep == Dependency::TypeII {
        return McEstimate::exact(0.0, cfg.samples);
    }
    let hits = mc_hits(cfg, |rng, quota| {
        let mut h = 0u64;
        for _ in 0..quota {
            let sta1 = sample_uniform(&s.cell1, rng);
            let sta2 = sample_uniform(&s.cell2, rng);
            if s.classify(sta1, sta2) == Some(dep) {
                h += 1;
            }
        }
        h
    });
    McEstimate::from_hits(hits, cfg.samples)
}

/// Estimates the aggregate probability over all reachable tiers: a tier is
/// drawn with probability `n_j / sum n_j`, then one pair is drawn in it.
///
/// Type II depends only on the tier, so its aggregate is computed exactly
/// from the tier weights (stderr 0). The caller is expected to build the
/// tier table with `nu_max >= gamma + 2`.
pub fn mc_aggregate(
    tiers: &TierTable,
    gamma: f64,
    dep: Dependency,
    cfg: &McConfig,
) -> McAggregate {
    debug_assert!(tiers.nu_max() >= gamma + 2.0, "tier table truncated");
    let reachable = tiers.reachable(gamma);
    let cell_count: u64 = reachable.iter().map(|t| t.count).sum();
    let j0 = reachable.last().map_or(0, |t| t.index);
    if reachable.is_empty() {
        return McAggregate {
            estimate: McEstimate::exact(0.0, cfg.samples),
            j0: 0,
            cell_count: 0,
        };
    }
    if dep == Dependency::TypeII {
        let interfering: u64 = reachable
            .iter()
            .filter(|t| t.nu <= gamma)
            .map(|t| t.count)
            .sum();
        return McAggregate {
            estimate: McEstimate::exact(interfering as f64 / cell_count as f64, cfg.samples),
            j0,
            cell_count,
        };
    }

    let scenarios: Vec<Scenario> = reachable.iter().map(|t| Scenario::new(gamma, t)).collect();
    let cumulative: Vec<u64> = reachable
        .iter()
        .scan(0u64, |acc, t| {
            *acc += t.count;
            Some(*acc)
        })
        .collect();

    let hits = mc_hits(cfg, |rng, quota| {
        let mut h = 0u64;
        for _ in 0..quota {
            let r = rng.gen_range(0..cell_count);
            let idx = cumulative.partition_point(|&c| c <= r);
            let sc = &scenarios[idx];
            if sc.aps_interfere() {
                continue; // whole tier is Type II; dep is I or III here
            }
            let sta1 = sample_uniform(&sc.cell1, rng);
            let sta2 = sample_uniform(&sc.cell2, rng);
            if sc.classify(sta1, sta2) == Some(dep) {
                h += 1;
            }
        }
        h
    });
    McAggregate {
        estimate: McEstimate::from_hits(hits, cfg.samples),
        j0,
        cell_count,
    }
}

/// Midpoint-rule evaluation of the Type I integral on a `grid_n x grid_n`
/// grid over the bounding box of cell 1.
///
/// Integrand at a station-1 position p: zero if p is outside cell 1, inside
/// the far access point's reach, or the access points interfere; otherwise
/// `Area(H(p, gamma) ^ cell2) - Area(H(p, gamma) ^ cell2 ^ H(A1, gamma))`,
/// both terms exact convex clips.
pub fn quadrature_p1(s: &Scenario, grid_n: u32) -> f64 {
    assert!(grid_n >= 16, "grid_n must be >= 16");
    if s.aps_interfere() {
        return 0.0; // every pair is Type II
    }
    let cell2_poly = s.cell2.to_polygon();
    let reach_a1_poly = s.reach_a1.to_polygon();
    // the A1 reach hexagon only matters once it can touch cell 2
    let subtract_a1 = s.gamma >= s.nu - 1.0;
    let c2 = s.cell2.center();

    let (lo, hi) = s.cell1.bounding_box();
    let n = grid_n as usize;
    let dx = (hi.x - lo.x) / grid_n as f64;
    let dy = (hi.y - lo.y) / grid_n as f64;
    let mut total = 0.0;
    for i in 0..n {
        let x = lo.x + (i as f64 + 0.5) * dx;
        for j in 0..n {
            let y = lo.y + (j as f64 + 0.5) * dy;
            let p = Point::new(x, y);
            if !s.cell1.contains(p) || s.reach_a2.contains(p) {
                continue;
            }
            // the station's reach hexagon cannot touch cell 2 from farther
            // than gamma + 1 away
            if p.distance(c2) > s.gamma + 1.0 {
                continue;
            }
            let reach = Hexagon::new(p, s.gamma).to_polygon();
            let overlap = clip_convex(&reach, &cell2_poly);
            if overlap.is_empty() {
                continue;
            }
            let mut value = overlap.area();
            if subtract_a1 {
                value -= clip_convex(&overlap, &reach_a1_poly).area();
            }
            total += value;
        }
    }
    total * dx * dy * 4.0 / 27.0
}

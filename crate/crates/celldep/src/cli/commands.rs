//! Command implementations behind the CLI subcommands. Each returns a
//! serializable report; rendering and exit-code mapping live in the binary.

use std::fmt;

use crate::cli::config::{ConfigError, RunConfig};
use crate::cli::report::{
    ClosedFormReport, DiscrepancyRow, GammaReport, GammaRow, Probabilities, QuadratureReport,
    SimulateReport, TableReport, TableRow, TierDetail, TierRow, TiersReport,
};
use crate::closed_form::{self, tier_probability, type1_probability};
use crate::lattice::{LatticeError, TierTable};
use crate::oracle::{self, Dependency, McEstimate, Scenario};
use crate::radio::RadioError;

/// Reference aggregate probabilities for the default configuration
/// (alpha = 1, eta = 3.5, minimum-rate sensitivity -90 dBm), keyed by
/// (rate, sensitivity). `table` attaches them to matching rows and reports
/// every deviation; they are comparison targets, not asserted truth.
pub const REFERENCE_AGGREGATES: [(f64, f64, Probabilities); 6] = [
    (54.0, -44.0, Probabilities { p1: 0.0010, p2: 0.9510, p3: 0.0112 }),
    (48.0, -60.0, Probabilities { p1: 0.0074, p2: 0.7778, p3: 0.0112 }),
    (36.0, -69.0, Probabilities { p1: 0.0076, p2: 0.7143, p3: 0.0000 }),
    (24.0, -73.0, Probabilities { p1: 0.0000, p2: 0.6000, p3: 0.0000 }),
    (12.0, -85.0, Probabilities { p1: 0.0416, p2: 0.0000, p3: 0.3686 }),
    (1.0, -90.0, Probabilities { p1: 0.0321, p2: 0.0000, p3: 0.0000 }),
];

#[derive(Debug)]
pub enum CliError {
    /// Config file could not be read or parsed (exit code 3).
    ConfigRead(String),
    /// Config or argument violates a model invariant (exit code 4).
    Validation(String),
    /// Failure while computing or writing output (exit code 5).
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ConfigRead(_) => 3,
            CliError::Validation(_) => 4,
            CliError::Runtime(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::ConfigRead(m) | CliError::Validation(m) | CliError::Runtime(m) => {
                write!(f, "{m}")
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Io(_) | ConfigError::Parse(_) => CliError::ConfigRead(e.to_string()),
            ConfigError::Invalid(_) => CliError::Validation(e.to_string()),
        }
    }
}

impl From<RadioError> for CliError {
    fn from(e: RadioError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::Validation(e.to_string())
    }
}

fn tier_table_for(gamma: f64) -> Result<TierTable, CliError> {
    TierTable::build(gamma + 2.0).map_err(CliError::from)
}

/// Interference reach per configured rate.
pub fn cmd_gamma(cfg: &RunConfig) -> Result<GammaReport, CliError> {
    let pmin = cfg.pmin_dbm()?;
    let rows = cfg
        .rates
        .iter()
        .map(|r| {
            let rp = cfg.radio_params_for(r.rate_mbps)?;
            Ok(GammaRow {
                rate_mbps: r.rate_mbps,
                sensitivity_dbm: r.sensitivity_dbm,
                gamma: rp.gamma(),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(GammaReport {
        alpha: cfg.alpha,
        eta: cfg.eta,
        pmin_dbm: pmin,
        rows,
    })
}

/// Co-channel tier enumeration up to a distance bound.
pub fn cmd_tiers(nu_max: f64) -> Result<TiersReport, CliError> {
    let tiers = crate::lattice::cochannel_tiers(nu_max)?;
    Ok(TiersReport {
        nu_max,
        tiers: tiers
            .into_iter()
            .map(|t| TierRow {
                index: t.index,
                norm: t.norm,
                nu: t.nu,
                count: t.count,
                representative_x: t.representative.x,
                representative_y: t.representative.y,
            })
            .collect(),
    })
}

/// Per-tier closed-form probabilities and the aggregate for one rate.
pub fn cmd_closed_form(cfg: &RunConfig, rate_mbps: f64) -> Result<ClosedFormReport, CliError> {
    let gamma = cfg.radio_params_for(rate_mbps)?.gamma();
    let table = tier_table_for(gamma)?;
    let agg = closed_form::aggregate(&table, gamma)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    Ok(ClosedFormReport {
        rate_mbps,
        gamma,
        j0: agg.j0,
        cell_count: agg.cell_count,
        tiers: table
            .reachable(gamma)
            .iter()
            .map(|t| tier_probability(gamma, t))
            .collect(),
        aggregate: Probabilities {
            p1: agg.p1,
            p2: agg.p2,
            p3: agg.p3,
        },
    })
}

/// Monte Carlo aggregate estimates for one rate, with the closed-form
/// comparison columns.
pub fn cmd_simulate(cfg: &RunConfig, rate_mbps: f64) -> Result<SimulateReport, CliError> {
    let gamma = cfg.radio_params_for(rate_mbps)?.gamma();
    let table = tier_table_for(gamma)?;
    let mc_cfg = cfg.mc_config();
    let agg = closed_form::aggregate(&table, gamma)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let mc_p1 = oracle::mc_aggregate(&table, gamma, Dependency::TypeI, &mc_cfg);
    let mc_p2 = oracle::mc_aggregate(&table, gamma, Dependency::TypeII, &mc_cfg);
    let mc_p3 = oracle::mc_aggregate(&table, gamma, Dependency::TypeIII, &mc_cfg);
    let closed = Probabilities {
        p1: agg.p1,
        p2: agg.p2,
        p3: agg.p3,
    };
    Ok(SimulateReport {
        rate_mbps,
        gamma,
        j0: agg.j0,
        cell_count: agg.cell_count,
        samples: mc_cfg.samples,
        seed: mc_cfg.seed,
        workers: mc_cfg.workers,
        mc_p1: mc_p1.estimate,
        mc_p2: mc_p2.estimate,
        mc_p3: mc_p3.estimate,
        closed,
        deviation: Probabilities {
            p1: (closed.p1 - mc_p1.estimate.estimate).abs(),
            p2: (closed.p2 - mc_p2.estimate.estimate).abs(),
            p3: (closed.p3 - mc_p3.estimate.estimate).abs(),
        },
    })
}

/// Quadrature of the Type I integral for one (rate, tier) pair.
pub fn cmd_quadrature(
    cfg: &RunConfig,
    rate_mbps: f64,
    tier_index: usize,
) -> Result<QuadratureReport, CliError> {
    let gamma = cfg.radio_params_for(rate_mbps)?.gamma();
    let table = tier_table_for(gamma)?;
    let tier = table
        .tiers()
        .iter()
        .find(|t| t.index == tier_index)
        .ok_or_else(|| {
            CliError::Validation(format!(
                "tier {tier_index} is out of range; the table for gamma = {gamma:.4} has {} tiers",
                table.tiers().len()
            ))
        })?;
    let scenario = Scenario::new(gamma, tier);
    let quadrature = oracle::quadrature_p1(&scenario, cfg.grid_n);
    let closed = type1_probability(gamma, tier.nu);
    Ok(QuadratureReport {
        rate_mbps,
        gamma,
        tier_index,
        nu: tier.nu,
        count: tier.count,
        grid_n: cfg.grid_n,
        quadrature_p1: quadrature,
        closed_p1: closed,
        abs_deviation: (quadrature - closed).abs(),
    })
}

/// The full comparison table: closed form, quadrature and Monte Carlo per
/// rate, per-tier detail, and the discrepancy report.
pub fn cmd_table(cfg: &RunConfig) -> Result<TableReport, CliError> {
    let mc_cfg = cfg.mc_config();
    let mut rows = Vec::new();
    let mut discrepancies = Vec::new();

    for rate in &cfg.rates {
        let gamma = cfg.radio_params_for(rate.rate_mbps)?.gamma();
        let table = tier_table_for(gamma)?;
        let agg = closed_form::aggregate(&table, gamma)
            .map_err(|e| CliError::Runtime(e.to_string()))?;
        let closed = Probabilities {
            p1: agg.p1,
            p2: agg.p2,
            p3: agg.p3,
        };

        let mut tier_details = Vec::new();
        let mut quad_weighted = 0.0;
        for t in table.reachable(gamma) {
            let scenario = Scenario::new(gamma, t);
            let quad = oracle::quadrature_p1(&scenario, cfg.grid_n);
            quad_weighted += quad * t.count as f64;
            let probs = tier_probability(gamma, t);
            tier_details.push(TierDetail {
                index: t.index,
                nu: t.nu,
                count: t.count,
                closed: Probabilities {
                    p1: probs.p1,
                    p2: probs.p2,
                    p3: probs.p3,
                },
                quadrature_p1: quad,
                mc_p1: oracle::mc_tier_probability(&scenario, Dependency::TypeI, &mc_cfg),
                mc_p2: oracle::mc_tier_probability(&scenario, Dependency::TypeII, &mc_cfg),
                mc_p3: oracle::mc_tier_probability(&scenario, Dependency::TypeIII, &mc_cfg),
            });
        }
        let quadrature_p1 = if agg.cell_count > 0 {
            quad_weighted / agg.cell_count as f64
        } else {
            0.0
        };

        let mc_p1 = oracle::mc_aggregate(&table, gamma, Dependency::TypeI, &mc_cfg).estimate;
        let mc_p2 = oracle::mc_aggregate(&table, gamma, Dependency::TypeII, &mc_cfg).estimate;
        let mc_p3 = oracle::mc_aggregate(&table, gamma, Dependency::TypeIII, &mc_cfg).estimate;

        let reference = REFERENCE_AGGREGATES
            .iter()
            .find(|(r, s, _)| *r == rate.rate_mbps && *s == rate.sensitivity_dbm)
            .filter(|_| cfg.alpha == 1.0 && cfg.eta == 3.5)
            .map(|(_, _, p)| *p);

        push_row_discrepancies(
            &mut discrepancies,
            rate.rate_mbps,
            &closed,
            quadrature_p1,
            &[&mc_p1, &mc_p2, &mc_p3],
            reference.as_ref(),
        );

        rows.push(TableRow {
            rate_mbps: rate.rate_mbps,
            sensitivity_dbm: rate.sensitivity_dbm,
            gamma,
            j0: agg.j0,
            cell_count: agg.cell_count,
            closed,
            quadrature_p1,
            mc_p1,
            mc_p2,
            mc_p3,
            reference,
            tiers: tier_details,
        });
    }

    Ok(TableReport {
        alpha: cfg.alpha,
        eta: cfg.eta,
        pmin_dbm: cfg.pmin_dbm()?,
        samples: mc_cfg.samples,
        seed: mc_cfg.seed,
        workers: mc_cfg.workers,
        grid_n: cfg.grid_n,
        rows,
        discrepancies,
    })
}

fn push_row_discrepancies(
    out: &mut Vec<DiscrepancyRow>,
    rate_mbps: f64,
    closed: &Probabilities,
    quadrature_p1: f64,
    mc: &[&McEstimate; 3],
    reference: Option<&Probabilities>,
) {
    let closed_values = [closed.p1, closed.p2, closed.p3];
    if let Some(reference) = reference {
        let ref_values = [reference.p1, reference.p2, reference.p3];
        for (i, quantity) in ["p1", "p2", "p3"].iter().enumerate() {
            out.push(DiscrepancyRow {
                rate_mbps,
                quantity: quantity.to_string(),
                closed: closed_values[i],
                other: ref_values[i],
                source: "reference".into(),
                abs_deviation: (closed_values[i] - ref_values[i]).abs(),
            });
        }
    }
    for (i, quantity) in ["p1", "p2", "p3"].iter().enumerate() {
        out.push(DiscrepancyRow {
            rate_mbps,
            quantity: quantity.to_string(),
            closed: closed_values[i],
            other: mc[i].estimate,
            source: "monte-carlo".into(),
            abs_deviation: (closed_values[i] - mc[i].estimate).abs(),
        });
    }
    out.push(DiscrepancyRow {
        rate_mbps,
        quantity: "p1".into(),
        closed: closed.p1,
        other: quadrature_p1,
        source: "quadrature".into(),
        abs_deviation: (closed.p1 - quadrature_p1).abs(),
    });
}

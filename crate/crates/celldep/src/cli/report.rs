//! Report types and their CSV / JSON / markdown renderings.
//!
//! JSON carries full precision; markdown tables round probabilities to four
//! decimal places; CSV uses full-precision decimal text. All renderings are
//! deterministic functions of the report value.

use serde::{Deserialize, Serialize};

use crate::closed_form::TierProbability;
use crate::cli::config::OutputFormat;
use crate::oracle::McEstimate;

/// One (p1, p2, p3) triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Probabilities {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

pub trait Report: Serialize {
    fn to_markdown(&self) -> String;
    fn to_csv(&self) -> String;

    fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Markdown => self.to_markdown(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaReport {
    pub alpha: f64,
    pub eta: f64,
    pub pmin_dbm: f64,
    pub rows: Vec<GammaRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaRow {
    pub rate_mbps: f64,
    pub sensitivity_dbm: f64,
    pub gamma: f64,
}

impl Report for GammaReport {
    fn to_markdown(&self) -> String {
        let mut out = format!(
            "interference reach (alpha = {}, eta = {}, pmin = {} dBm)\n\n\
             | rate (Mbps) | sensitivity (dBm) | gamma |\n|---|---|---|\n",
            self.alpha, self.eta, self.pmin_dbm
        );
        for r in &self.rows {
            out.push_str(&format!(
                "| {} | {} | {:.4} |\n",
                r.rate_mbps, r.sensitivity_dbm, r.gamma
            ));
        }
        out
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("rate_mbps,sensitivity_dbm,gamma\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{}\n",
                r.rate_mbps, r.sensitivity_dbm, r.gamma
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TiersReport {
    pub nu_max: f64,
    pub tiers: Vec<TierRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TierRow {
    pub index: usize,
    pub norm: u64,
    pub nu: f64,
    pub count: u64,
    pub representative_x: f64,
    pub representative_y: f64,
}

impl Report for TiersReport {
    fn to_markdown(&self) -> String {
        let mut out = format!(
            "co-channel tiers with nu < {}\n\n| j | norm | nu | n_j | representative |\n|---|---|---|---|---|\n",
            self.nu_max
        );
        for t in &self.tiers {
            out.push_str(&format!(
                "| {} | {} | {:.4} | {} | ({:.4}, {:.4}) |\n",
                t.index, t.norm, t.nu, t.count, t.representative_x, t.representative_y
            ));
        }
        out
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("index,norm,nu,count,representative_x,representative_y\n");
        for t in &self.tiers {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                t.index, t.norm, t.nu, t.count, t.representative_x, t.representative_y
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormReport {
    pub rate_mbps: f64,
    pub gamma: f64,
    pub j0: usize,
    pub cell_count: u64,
    pub tiers: Vec<TierProbability>,
    pub aggregate: Probabilities,
}

impl Report for ClosedFormReport {
    fn to_markdown(&self) -> String {
        let mut out = format!(
            "closed-form probabilities, rate {} Mbps (gamma = {:.4}, j0 = {}, cells = {})\n\n\
             | j | nu | n_j | p1 | p2 | p3 | cases |\n|---|---|---|---|---|---|---|\n",
            self.rate_mbps, self.gamma, self.j0, self.cell_count
        );
        for t in &self.tiers {
            out.push_str(&format!(
                "| {} | {:.4} | {} | {:.4} | {:.4} | {:.4} | {}/{}/{} |\n",
                t.tier_index,
                t.nu,
                t.count,
                t.p1,
                t.p2,
                t.p3,
                t.cases[0].case_index,
                t.cases[1].case_index,
                t.cases[2].case_index
            ));
        }
        out.push_str(&format!(
            "\naggregate: p1 = {:.4}, p2 = {:.4}, p3 = {:.4}\n",
            self.aggregate.p1, self.aggregate.p2, self.aggregate.p3
        ));
        out
    }

    fn to_csv(&self) -> String {
        let mut out =
            String::from("tier_index,nu,count,p1,p2,p3,case_type1,case_type2,case_type3\n");
        for t in &self.tiers {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                t.tier_index,
                t.nu,
                t.count,
                t.p1,
                t.p2,
                t.p3,
                t.cases[0].case_index,
                t.cases[1].case_index,
                t.cases[2].case_index
            ));
        }
        out.push_str(&format!(
            "aggregate,,,{},{},{},,,\n",
            self.aggregate.p1, self.aggregate.p2, self.aggregate.p3
        ));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub rate_mbps: f64,
    pub gamma: f64,
    pub j0: usize,
    pub cell_count: u64,
    pub samples: u64,
    pub seed: u64,
    pub workers: u32,
    pub mc_p1: McEstimate,
    pub mc_p2: McEstimate,
    pub mc_p3: McEstimate,
    pub closed: Probabilities,
    /// |closed - Monte Carlo| per type.
    pub deviation: Probabilities,
}

impl Report for SimulateReport {
    fn to_markdown(&self) -> String {
        let mut out = format!(
            "Monte Carlo aggregate, rate {} Mbps (gamma = {:.4}, j0 = {}, cells = {}, \
             samples = {}, seed = {}, workers = {})\n\n\
             | type | monte carlo | stderr | closed form | deviation |\n|---|---|---|---|---|\n",
            self.rate_mbps,
            self.gamma,
            self.j0,
            self.cell_count,
            self.samples,
            self.seed,
            self.workers
        );
        for (name, mc, closed, dev) in [
            ("p1", &self.mc_p1, self.closed.p1, self.deviation.p1),
            ("p2", &self.mc_p2, self.closed.p2, self.deviation.p2),
            ("p3", &self.mc_p3, self.closed.p3, self.deviation.p3),
        ] {
            out.push_str(&format!(
                "| {} | {:.4} | {:.4} | {:.4} | {:.4} |\n",
                name, mc.estimate, mc.stderr, closed, dev
            ));
        }
        out
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("type,estimate,stderr,closed,deviation\n");
        for (name, mc, closed, dev) in [
            ("p1", &self.mc_p1, self.closed.p1, self.deviation.p1),
            ("p2", &self.mc_p2, self.closed.p2, self.deviation.p2),
            ("p3", &self.mc_p3, self.closed.p3, self.deviation.p3),
        ] {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                name, mc.estimate, mc.stderr, closed, dev
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureReport {
    pub rate_mbps: f64,
    pub gamma: f64,
    pub tier_index: usize,
    pub nu: f64,
    pub count: u64,
    pub grid_n: u32,
    pub quadrature_p1: f64,
    pub closed_p1: f64,
    pub abs_deviation: f64,
}

impl Report for QuadratureReport {
    fn to_markdown(&self) -> String {
        format!(
            "Type I quadrature, rate {} Mbps, tier {} (nu = {:.4}, gamma = {:.4}, grid = {})\n\n\
             | quadrature p1 | closed-form p1 | deviation |\n|---|---|---|\n\
             | {:.6} | {:.6} | {:.6} |\n",
            self.rate_mbps,
            self.tier_index,
            self.nu,
            self.gamma,
            self.grid_n,
            self.quadrature_p1,
            self.closed_p1,
            self.abs_deviation
        )
    }

    fn to_csv(&self) -> String {
        format!(
            "rate_mbps,gamma,tier_index,nu,grid_n,quadrature_p1,closed_p1,abs_deviation\n\
             {},{},{},{},{},{},{},{}\n",
            self.rate_mbps,
            self.gamma,
            self.tier_index,
            self.nu,
            self.grid_n,
            self.quadrature_p1,
            self.closed_p1,
            self.abs_deviation
        )
    }
}

/// Per-tier detail inside the full comparison table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TierDetail {
    pub index: usize,
    pub nu: f64,
    pub count: u64,
    pub closed: Probabilities,
    pub quadrature_p1: f64,
    pub mc_p1: McEstimate,
    pub mc_p2: McEstimate,
    pub mc_p3: McEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub rate_mbps: f64,
    pub sensitivity_dbm: f64,
    pub gamma: f64,
    pub j0: usize,
    pub cell_count: u64,
    pub closed: Probabilities,
    /// Tier-weighted aggregate of the quadrature Type I values.
    pub quadrature_p1: f64,
    pub mc_p1: McEstimate,
    pub mc_p2: McEstimate,
    pub mc_p3: McEstimate,
    /// Reference aggregates when this row matches a reference operating
    /// point; deviations from them land in the discrepancy section.
    pub reference: Option<Probabilities>,
    pub tiers: Vec<TierDetail>,
}

/// One |closed - other| comparison entry of the discrepancy report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyRow {
    pub rate_mbps: f64,
    pub quantity: String,
    pub closed: f64,
    pub other: f64,
    pub source: String,
    pub abs_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub alpha: f64,
    pub eta: f64,
    pub pmin_dbm: f64,
    pub samples: u64,
    pub seed: u64,
    pub workers: u32,
    pub grid_n: u32,
    pub rows: Vec<TableRow>,
    /// Always emitted: closed form vs reference, Monte Carlo and quadrature.
    pub discrepancies: Vec<DiscrepancyRow>,
}

impl Report for TableReport {
    fn to_markdown(&self) -> String {
        let mut out = format!(
            "dependency probabilities (alpha = {}, eta = {}, pmin = {} dBm, \
             samples = {}, seed = {}, workers = {}, grid = {})\n\n",
            self.alpha, self.eta, self.pmin_dbm, self.samples, self.seed, self.workers, self.grid_n
        );
        out.push_str(
            "| rate | gamma | j0 | cells | p1 | p2 | p3 | quad p1 | mc p1 | mc p2 | mc p3 | ref p1 | ref p2 | ref p3 |\n",
        );
        out.push_str("|---|---|---|---|---|---|---|---|---|---|---|---|---|---|\n");
        for r in &self.rows {
            let reference = match &r.reference {
                Some(p) => format!("{:.4} | {:.4} | {:.4}", p.p1, p.p2, p.p3),
                None => "- | - | -".to_string(),
            };
            out.push_str(&format!(
                "| {} | {:.4} | {} | {} | {:.4} | {:.4} | {:.4} | {:.4} | {:.4} | {:.4} | {:.4} | {} |\n",
                r.rate_mbps,
                r.gamma,
                r.j0,
                r.cell_count,
                r.closed.p1,
                r.closed.p2,
                r.closed.p3,
                r.quadrature_p1,
                r.mc_p1.estimate,
                r.mc_p2.estimate,
                r.mc_p3.estimate,
                reference,
            ));
        }
        out.push_str("\ndiscrepancy report (|closed - other|)\n\n");
        out.push_str("| rate | quantity | closed | other | source | deviation |\n|---|---|---|---|---|---|\n");
        for d in &self.discrepancies {
            out.push_str(&format!(
                "| {} | {} | {:.4} | {:.4} | {} | {:.4} |\n",
                d.rate_mbps, d.quantity, d.closed, d.other, d.source, d.abs_deviation
            ));
        }
        out
    }

    fn to_csv(&self) -> String {
        let mut out = String::from(
            "rate_mbps,gamma,j0,cell_count,p1,p2,p3,quadrature_p1,\
             mc_p1,mc_p1_stderr,mc_p2,mc_p2_stderr,mc_p3,mc_p3_stderr,ref_p1,ref_p2,ref_p3\n",
        );
        for r in &self.rows {
            let reference = match &r.reference {
                Some(p) => format!("{},{},{}", p.p1, p.p2, p.p3),
                None => ",,".to_string(),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.rate_mbps,
                r.gamma,
                r.j0,
                r.cell_count,
                r.closed.p1,
                r.closed.p2,
                r.closed.p3,
                r.quadrature_p1,
                r.mc_p1.estimate,
                r.mc_p1.stderr,
                r.mc_p2.estimate,
                r.mc_p2.stderr,
                r.mc_p3.estimate,
                r.mc_p3.stderr,
                reference,
            ));
        }
        out.push('\n');
        out.push_str("tier_detail:rate_mbps,index,nu,count,p1,p2,p3,quadrature_p1,mc_p1,mc_p1_stderr,mc_p3,mc_p3_stderr\n");
        for r in &self.rows {
            for t in &r.tiers {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    r.rate_mbps,
                    t.index,
                    t.nu,
                    t.count,
                    t.closed.p1,
                    t.closed.p2,
                    t.closed.p3,
                    t.quadrature_p1,
                    t.mc_p1.estimate,
                    t.mc_p1.stderr,
                    t.mc_p3.estimate,
                    t.mc_p3.stderr,
                ));
            }
        }
        out.push('\n');
        out.push_str("discrepancy:rate_mbps,quantity,closed,other,source,abs_deviation\n");
        for d in &self.discrepancies {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                d.rate_mbps, d.quantity, d.closed, d.other, d.source, d.abs_deviation
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_report_round_trip() {
        let report = GammaReport {
            alpha: 1.0,
            eta: 3.5,
            pmin_dbm: -90.0,
            rows: vec![GammaRow {
                rate_mbps: 1.0,
                sensitivity_dbm: -90.0,
                gamma: 2.0,
            }],
        };
        let json = report.to_json();
        let back: GammaReport = serde_json::from_str(&json).unwrap();
        assert_eq!(report, back);
        assert!(report.to_csv().starts_with("rate_mbps,"));
        assert!(report.to_markdown().contains("| 1 | -90 | 2.0000 |"));
    }
}

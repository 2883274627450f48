//! Log-distance path loss and the derived radio quantities.
//!
//! The model reduces to a single dimensionless parameter once lengths are
//! normalized to the cell radius: `gamma = 2 * alpha * (Pt/Pmin)^(1/eta)`,
//! the vertex radius of the interference hexagon in cell-radius units.
//! Sensitivities are handled in dBm, so only the dB difference matters, and
//! any common shadowing term cancels out of the ratio.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum RadioError {
    AlphaBelowOne(f64),
    NonPositiveEta(f64),
    NegativeSigma(f64),
    SensitivityBelowMinimum { pt_dbm: f64, pmin_dbm: f64 },
    EmptyRateTable,
    RatesNotStrictlyDecreasing { row: usize },
    SensitivityIncreasing { row: usize },
    UnknownRate { rate_mbps: f64, available: Vec<f64> },
}

impl fmt::Display for RadioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadioError::AlphaBelowOne(a) => write!(f, "alpha must be >= 1, got {a}"),
            RadioError::NonPositiveEta(e) => write!(f, "eta must be > 0, got {e}"),
            RadioError::NegativeSigma(s) => write!(f, "shadowing sigma must be >= 0, got {s}"),
            RadioError::SensitivityBelowMinimum { pt_dbm, pmin_dbm } => write!(
                f,
                "target sensitivity {pt_dbm} dBm is below the minimum-rate sensitivity {pmin_dbm} dBm"
            ),
            RadioError::EmptyRateTable => write!(f, "rate table must contain at least one row"),
            RadioError::RatesNotStrictlyDecreasing { row } => {
                write!(f, "rate table rates must be strictly decreasing (row {row})")
            }
            RadioError::SensitivityIncreasing { row } => write!(
                f,
                "rate table sensitivities must be non-increasing going down (row {row})"
            ),
            RadioError::UnknownRate { rate_mbps, available } => write!(
                f,
                "unknown rate {rate_mbps} Mbps; available rates: {available:?}"
            ),
        }
    }
}

impl std::error::Error for RadioError {}

/// Log-distance path loss with optional log-normal shadowing:
/// `P(d) = S * 10^(-xi/10) * (d/R0)^(-eta)` in linear terms.
///
/// The shadowing value is fixed at zero here; it cancels from every power
/// ratio the dependency model consumes. Sigma is retained for completeness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLossModel {
    pub transmit_power_dbm: f64,
    pub reference_distance: f64,
    pub path_loss_exponent: f64,
    pub shadowing_sigma_db: f64,
    pub shadowing_db: f64,
}

impl PathLossModel {
    pub fn new(
        transmit_power_dbm: f64,
        reference_distance: f64,
        path_loss_exponent: f64,
        shadowing_sigma_db: f64,
    ) -> Result<Self, RadioError> {
        if path_loss_exponent.is_nan() || path_loss_exponent <= 0.0 {
            return Err(RadioError::NonPositiveEta(path_loss_exponent));
        }
        if shadowing_sigma_db < 0.0 {
            return Err(RadioError::NegativeSigma(shadowing_sigma_db));
        }
        Ok(Self {
            transmit_power_dbm,
            reference_distance,
            path_loss_exponent,
            shadowing_sigma_db,
            shadowing_db: 0.0,
        })
    }

    /// Received power at `distance`, in dBm.
    pub fn received_power_dbm(&self, distance: f64) -> f64 {
        self.transmit_power_dbm
            - self.shadowing_db
            - 10.0 * self.path_loss_exponent * (distance / self.reference_distance).log10()
    }

    /// Same model with a fixed shadowing value, for cancellation checks.
    pub fn with_shadowing(mut self, shadowing_db: f64) -> Self {
        self.shadowing_db = shadowing_db;
        self
    }
}

/// The radio parameters the dependency model actually needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioParams {
    pt_dbm: f64,
    pmin_dbm: f64,
    alpha: f64,
    eta: f64,
}

/// Linear power ratio from a dBm difference: `10^((pt - pmin)/10)`.
pub fn power_ratio(pt_dbm: f64, pmin_dbm: f64) -> f64 {
    10f64.powf((pt_dbm - pmin_dbm) / 10.0)
}

impl RadioParams {
    /// Validates `alpha >= 1`, `eta > 0` and `pt_dbm >= pmin_dbm`; a target
    /// sensitivity below the minimum-rate sensitivity would put gamma below
    /// the model floor of `2 * alpha`.
    pub fn new(pt_dbm: f64, pmin_dbm: f64, alpha: f64, eta: f64) -> Result<Self, RadioError> {
        if alpha.is_nan() || alpha < 1.0 {
            return Err(RadioError::AlphaBelowOne(alpha));
        }
        if eta.is_nan() || eta <= 0.0 {
            return Err(RadioError::NonPositiveEta(eta));
        }
        if pt_dbm < pmin_dbm {
            return Err(RadioError::SensitivityBelowMinimum { pt_dbm, pmin_dbm });
        }
        Ok(Self {
            pt_dbm,
            pmin_dbm,
            alpha,
            eta,
        })
    }

    pub fn pt_dbm(&self) -> f64 {
        self.pt_dbm
    }

    pub fn pmin_dbm(&self) -> f64 {
        self.pmin_dbm
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Dimensionless interference reach `gamma = 2*alpha*(Pt/Pmin)^(1/eta)`;
    /// always >= 2*alpha >= 2 for validated parameters.
    pub fn gamma(&self) -> f64 {
        2.0 * self.alpha * power_ratio(self.pt_dbm, self.pmin_dbm).powf(1.0 / self.eta)
    }

    /// Distance at which the minimum rate is still sustainable,
    /// `R_min = R_t * (Pt/Pmin)^(1/eta)`.
    pub fn r_min(&self, r_t: f64) -> f64 {
        r_t * power_ratio(self.pt_dbm, self.pmin_dbm).powf(1.0 / self.eta)
    }

    /// Vertex radius of the interference hexagon, `gamma * R_t`.
    /// Computed as `2 * alpha * r_min(R_t)` so the algebraic identity with
    /// [`RadioParams::r_min`] holds exactly in floating point.
    pub fn interference_radius(&self, r_t: f64) -> f64 {
        2.0 * self.alpha * self.r_min(r_t)
    }
}

/// Ordered (rate, receiver sensitivity) pairs, highest rate first.
#[derive(Debug, Clone, PartialEq)]
pub struct RateTable {
    rows: Vec<RateRow>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateRow {
    pub rate_mbps: f64,
    pub sensitivity_dbm: f64,
}

impl RateTable {
    pub fn new(rows: Vec<RateRow>) -> Result<Self, RadioError> {
        if rows.is_empty() {
            return Err(RadioError::EmptyRateTable);
        }
        for i in 1..rows.len() {
            if rows[i].rate_mbps >= rows[i - 1].rate_mbps || rows[i].rate_mbps.is_nan() {
                return Err(RadioError::RatesNotStrictlyDecreasing { row: i });
            }
            if rows[i].sensitivity_dbm > rows[i - 1].sensitivity_dbm {
                return Err(RadioError::SensitivityIncreasing { row: i });
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[RateRow] {
        &self.rows
    }

    /// Sensitivity of the minimum-rate row (the last one).
    pub fn minimum_rate_sensitivity_dbm(&self) -> f64 {
        self.rows.last().expect("validated non-empty").sensitivity_dbm
    }

    pub fn sensitivity_for(&self, rate_mbps: f64) -> Result<f64, RadioError> {
        self.rows
            .iter()
            .find(|r| r.rate_mbps == rate_mbps)
            .map(|r| r.sensitivity_dbm)
            .ok_or_else(|| RadioError::UnknownRate {
                rate_mbps,
                available: self.rows.iter().map(|r| r.rate_mbps).collect(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_ratio_examples() {
        assert_eq!(power_ratio(-90.0, -90.0), 1.0);
        assert!((power_ratio(-60.0, -90.0) - 1e3).abs() < 1e-9);
        // 46 dB difference between the top and bottom sensitivities
        assert!((power_ratio(-44.0, -90.0) - 39810.71705534969).abs() < 1e-6);
    }

    #[test]
    fn gamma_examples() {
        let rp = RadioParams::new(-90.0, -90.0, 1.0, 3.5).unwrap();
        assert_eq!(rp.gamma(), 2.0);
        // frozen from an independent high-precision evaluation
        let rp = RadioParams::new(-85.0, -90.0, 1.0, 3.5).unwrap();
        assert!((rp.gamma() - 2.7789909887462754).abs() < 1e-12);
        let rp = RadioParams::new(-44.0, -90.0, 1.0, 3.5).unwrap();
        assert!((rp.gamma() - 41.2397201900444).abs() < 1e-10);
    }

    #[test]
    fn gamma_rejects_pt_below_pmin() {
        let err = RadioParams::new(-91.0, -90.0, 1.0, 3.5).unwrap_err();
        assert!(matches!(err, RadioError::SensitivityBelowMinimum { .. }));
        assert!(matches!(
            RadioParams::new(-85.0, -90.0, 0.5, 3.5).unwrap_err(),
            RadioError::AlphaBelowOne(_)
        ));
        assert!(matches!(
            RadioParams::new(-85.0, -90.0, 1.0, 0.0).unwrap_err(),
            RadioError::NonPositiveEta(_)
        ));
    }

    #[test]
    fn r_min_examples() {
        let rp = RadioParams::new(-90.0, -90.0, 1.0, 3.5).unwrap();
        assert_eq!(rp.r_min(1.0), 1.0);
        let rp = RadioParams::new(-85.0, -90.0, 1.0, 3.5).unwrap();
        // alpha = 1 makes r_min = gamma/2 an algebraic identity
        assert!((rp.r_min(1.0) - rp.gamma() / 2.0).abs() < 1e-12);
        assert!((rp.r_min(50.0) - 69.47477471865689).abs() < 1e-9);
    }

    #[test]
    fn interference_radius_identity() {
        for (pt, alpha, eta) in [(-85.0, 1.0, 3.5), (-60.0, 1.25, 2.8), (-44.0, 2.0, 4.0)] {
            let rp = RadioParams::new(pt, -90.0, alpha, eta).unwrap();
            for r_t in [1.0, 50.0, 0.037] {
                // exact identity by construction
                assert_eq!(rp.r_min(r_t) * 2.0 * alpha, rp.interference_radius(r_t));
                // scale invariance of the ratio
                assert!((rp.interference_radius(r_t) / r_t - rp.interference_radius(1.0)).abs() < 1e-9);
            }
        }
        let rp = RadioParams::new(-85.0, -90.0, 1.0, 3.5).unwrap();
        assert!((rp.interference_radius(1.0) - 2.7789909887462754).abs() < 1e-12);
    }

    #[test]
    fn gamma_monotonicity() {
        // increasing in pt, decreasing in eta (for pt > pmin)
        let mut last = 0.0;
        for pt in [-89.0, -80.0, -70.0, -55.0, -44.0] {
            let g = RadioParams::new(pt, -90.0, 1.0, 3.5).unwrap().gamma();
            assert!(g > last);
            last = g;
        }
        let mut last = f64::INFINITY;
        for eta in [2.0, 2.5, 3.0, 3.5, 4.0, 5.0] {
            let g = RadioParams::new(-70.0, -90.0, 1.0, eta).unwrap().gamma();
            assert!(g < last);
            last = g;
        }
    }

    #[test]
    fn shadowing_cancels_from_gamma() {
        // Derive Pt and Pmin from the path-loss law at two distances with a
        // common shadowing term; the resulting gamma must not depend on it.
        let r_t = 40.0;
        let r_min = 75.0;
        let mut gammas = Vec::new();
        for xi in [0.0, 3.7, -5.0, 8.25] {
            let plm = PathLossModel::new(20.0, 1.0, 3.5, 6.0)
                .unwrap()
                .with_shadowing(xi);
            let pt = plm.received_power_dbm(r_t);
            let pmin = plm.received_power_dbm(r_min);
            let g = RadioParams::new(pt, pmin, 1.0, 3.5).unwrap().gamma();
            gammas.push(g);
        }
        for g in &gammas[1..] {
            assert!((g - gammas[0]).abs() < 1e-12);
        }
        // and the cancelled ratio reproduces the distance ratio: gamma = 2 * r_min/r_t
        assert!((gammas[0] - 2.0 * r_min / r_t).abs() < 1e-12);
    }

    #[test]
    fn rate_table_validation() {
        let rows = vec![
            RateRow { rate_mbps: 54.0, sensitivity_dbm: -44.0 },
            RateRow { rate_mbps: 1.0, sensitivity_dbm: -90.0 },
        ];
        let t = RateTable::new(rows).unwrap();
        assert_eq!(t.minimum_rate_sensitivity_dbm(), -90.0);
        assert_eq!(t.sensitivity_for(54.0).unwrap(), -44.0);
        assert!(matches!(
            t.sensitivity_for(11.0).unwrap_err(),
            RadioError::UnknownRate { .. }
        ));

        assert!(matches!(
            RateTable::new(vec![]).unwrap_err(),
            RadioError::EmptyRateTable
        ));
        let bad = vec![
            RateRow { rate_mbps: 1.0, sensitivity_dbm: -90.0 },
            RateRow { rate_mbps: 54.0, sensitivity_dbm: -44.0 },
        ];
        assert!(matches!(
            RateTable::new(bad).unwrap_err(),
            RadioError::RatesNotStrictlyDecreasing { row: 1 }
        ));
        let bad = vec![
            RateRow { rate_mbps: 54.0, sensitivity_dbm: -90.0 },
            RateRow { rate_mbps: 1.0, sensitivity_dbm: -44.0 },
        ];
        assert!(matches!(
            RateTable::new(bad).unwrap_err(),
            RadioError::SensitivityIncreasing { row: 1 }
        ));
    }
}

//! Inter-cell station dependency probabilities for a 3-channel hexagonal
//! 802.11 deployment.
//!
//! Two stations in different co-channel cells can depend on each other in
//! three mutually exclusive ways: station-station reach only (Type I),
//! interfering access points (Type II), or an access point reaching the far
//! station (Type III). With all lengths normalized to the cell radius the
//! model has a single radio parameter, the dimensionless interference reach
//! `gamma`, plus the tier structure of the co-channel sublattice.
//!
//! The crate provides closed-form per-tier and aggregate probabilities, a
//! deterministic quadrature oracle and a seeded Monte Carlo oracle for the
//! same geometric model, and a CLI that renders comparison reports.

pub mod cli;
pub mod closed_form;
pub mod hexgeom;
pub mod lattice;
pub mod oracle;
pub mod radio;

pub use closed_form::{aggregate, AggregateProbability, TierProbability};
pub use hexgeom::{Hexagon, Point};
pub use lattice::{Tier, TierTable};
pub use oracle::{Dependency, McConfig, McEstimate, Scenario};
pub use radio::{RadioParams, RateTable};

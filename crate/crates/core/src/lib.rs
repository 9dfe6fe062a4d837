//! Follow-the-Regularized-Leader dynamics in two-strategy linear congestion
//! games, reduced to the interval map `f_{a,b}(x) = Ψ⁻¹(Ψ(x) + a(x - b))`.
//!
//! The crate provides the regularizer catalog behind `Ψ`, orbit iteration in
//! dual coordinates, Cesàro averaging with its a-priori rate bound, stability
//! and chaos diagnostics (odd-period certificates, Lyapunov exponents,
//! lap-number entropy, Schwarzian derivatives) and parallel bifurcation
//! sweeps seeded at the map's critical points.

pub mod acceptance;
pub mod analysis;
pub mod bifurcation;
pub mod dynamics;
pub mod error;
pub mod export;
pub mod regularizers;
pub mod roots;

pub use analysis::{
    critical_points, detect_period, lmpy_certificate, lyapunov_exponent, schwarzian,
    schwarzian_psi, schwarzian_report, stability, symmetric_period2, topological_entropy_lap,
    verify_lmpy_witness, ChaosCertificate, Classification, EntropyEstimate, PeriodDetection,
    SchwarzianReport, StabilityReport,
};
pub use bifurcation::{
    compare_attractors, first_bifurcation, sweep, AttractorComparison, BifurcationDataset,
    SeedMode, SweepConfig,
};
pub use dynamics::{CesaroAverage, ForelMap, GameParams, MapParams, Orbit};
pub use error::{Error, Result};
pub use regularizers::{Regularizer, ValidationReport};

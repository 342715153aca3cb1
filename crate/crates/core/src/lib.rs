//! Quantum tunneling through the generalized Woods-Saxon (GWS) barrier and the
//! thermonuclear reactivities that follow from it.
//!
//! The pipeline runs bottom-up:
//!
//! * [`potential`]: the GWS potential and its barrier/well geometry;
//! * [`transmission`]: plane-wave T(E) by a transfer-matrix solver;
//! * [`packet`]: Gaussian wave packets and their averaged transmission;
//! * [`thermal`]: Maxwell-Boltzmann averages and the reactivity ⟨σv⟩;
//! * [`analysis`]: enhancement ratios and the optimal packet width.
//!
//! Units: MeV, fm, MeV/c²; temperatures in keV; reactivities in fm²·c
//! (see [`units`]).

// Negated comparisons are how NaN inputs get rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
mod error;
pub mod optimize;
pub mod packet;
pub mod potential;
pub mod quadrature;
pub mod thermal;
pub mod transmission;
pub mod units;

pub use error::{Error, Result};
pub use potential::{barrier_metrics, BarrierMetrics, FreePotential, Potential, PotentialParams};
pub use transmission::{
    detect_resonances, transmission_curve, transmission_plane_wave, AnalyticTransmission, Extremum, ExtremumKind,
    Scattering, SolverConfig, TransferMatrixSolver, TransmissionCurve, TransmissionKernel, TransmissionModel,
};

pub use analysis::{enhancement_ratio, optimal_xi, xi_scan, RatioCurve, XiOptimum, XiScan};
pub use packet::{packet_transmission, GaussianPacket, PacketTransmission};
pub use thermal::{reactivity, ReactivityMethod, ReactivityResult, ThermalSpec, XiMode};
pub use units::{ParticlePair, AMU, HBAR_C};

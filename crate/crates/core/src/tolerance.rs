//! Numerical thresholds used by the library's own checks.
//!
//! All values are for double precision.

/// Relative tolerance on `∫ω_P dt = π` for admissible profiles.
pub const NORMALIZATION: f64 = 1e-10;

/// Absolute tolerance requested from adaptive quadrature by default.
pub const QUADRATURE_ABS: f64 = 1e-10;

/// Subdivision budget for adaptive quadrature.
pub const QUADRATURE_MAX_SUBDIVISIONS: usize = 2000;

/// Guard band around removable singularities of the closed-form spectra.
/// Inside the band the spectra are evaluated from exactly refactored forms.
pub const SPECTRUM_GUARD_BAND: f64 = 0.5;

/// `|W(ω₀)|` at or below this counts as a spectral zero (unit contrast).
pub const SPECTRUM_ZERO: f64 = 1e-8;

/// Relative tolerance for `φ_I = φ_S`.
pub const PHASE_EQUALITY: f64 = 1e-8;

/// Tolerance on `ω₀T / 2π` being a positive integer.
pub const TRAP_PERIOD_MULTIPLE: f64 = 1e-8;

/// Tolerance on unit contrast for QCRB saturation.
pub const UNIT_CONTRAST: f64 = 1e-8;

/// Relative threshold (scaled by `max(1, |φ_I|)`) below which a phase
/// component counts as absent when classifying a scheme.
pub const CLASSIFICATION: f64 = 1e-8;

/// Minimum number of trajectory intervals.
pub const MIN_TRAJECTORY_SAMPLES: usize = 16;

/// Default trajectory resolution used by the decomposition.
pub const DEFAULT_TRAJECTORY_SAMPLES: usize = 1024;

/// Largest `ω₀·h` for a single smooth panel of the trajectory sweep.
pub const SWEEP_PANEL_PHASE: f64 = 0.5;

/// Minimum Fock truncation and step count.
pub const MIN_FOCK_LEVELS: usize = 8;
pub const MIN_FOCK_STEPS: usize = 100;

/// Tail mass (top 10% of levels) above which truncation is declared insufficient.
pub const FOCK_TAIL_MASS: f64 = 1e-10;

/// Step-halving error estimate allowed for the Fock oracle state.
pub const FOCK_STEP_ERROR: f64 = 1e-5;

/// Final bracket width for zero-time search, in units of the trap period.
pub const ZERO_TIME_WIDTH: f64 = 1e-10;

/// `|W(ω₀)|²` a zero-time search must reach.
pub const ZERO_TIME_RESIDUAL: f64 = 1e-16;

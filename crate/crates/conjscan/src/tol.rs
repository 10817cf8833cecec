//! Central tolerances. Every threshold in the crate lives here with the
//! reasoning that produced it, so tests and docs reference one place.

/// Relative tolerance for the conjugate-symmetry (reality) invariant of
/// coefficient maps. Double precision leaves ~1e-16 per operation; 1e-12
/// gives four orders of headroom over accumulated convolution rounding at
/// the mode counts this crate works with (tens of modes).
pub const TOL_REALITY: f64 = 1e-12;

/// Relative tolerance on `||div u|| / ||u||` below which a field counts as
/// divergence-free. Same headroom reasoning as [`TOL_REALITY`].
pub const TOL_DIVFREE: f64 = 1e-12;

/// Relative pruning floor: after every operation, coefficients smaller than
/// this fraction of the largest magnitude in the series are dropped. Keeps
/// rounding dust from inflating supports; small true coefficients below the
/// floor are dropped too, which callers must account for.
pub const PRUNE_REL: f64 = 1e-14;

/// Relative gap between the bracket and curvature forms of the criterion
/// beyond which a result is flagged. Both forms share inputs, so they agree
/// to rounding when the code is right; 1e-8 is far above honest noise.
pub const FORM_GAP: f64 = 1e-8;

/// Stationarity residual above which a report warns that the base flow is
/// not numerically steady.
pub const STATIONARITY_WARN: f64 = 1e-8;

/// Default relative tolerance of the closed-form verification harness.
pub const VERIFY_REL: f64 = 1e-9;

/// Relative spread below which a family of streamline periods counts as
/// isochronal.
pub const ISO_TOL: f64 = 1e-6;

/// Default relative tolerance of the adaptive integrator, comfortably below
/// the 1e-6 accuracy the period computations must deliver.
pub const ODE_RTOL: f64 = 1e-10;

/// Default absolute tolerance of the adaptive integrator.
pub const ODE_ATOL: f64 = 1e-12;

/// Relative width of the bisection bracket in event localization. Probes
/// are cheap (one fifth-order step each), so this sits near the
/// integrator's own accuracy floor rather than dominating it.
pub const EVENT_TOL: f64 = 1e-12;

/// Floor on |grad psi|; below it a point counts as a stagnation point.
pub const STAGNATION_FLOOR: f64 = 1e-8;

/// Time budget for the first return of a streamline trajectory.
pub const MAX_TIME: f64 = 1e4;

/// Relative floor used when forming agreement ratios in scan records: when
/// both the numeric and the calibrated closed-form value sit below this
/// fraction of the calibration scale, the agreement is reported as exactly 0.
pub const AGREEMENT_FLOOR_REL: f64 = 1e-12;

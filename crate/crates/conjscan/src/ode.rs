//! An adaptive Dormand–Prince 5(4) integrator with first-upward-crossing
//! event localization, for small fixed-dimension systems.
//!
//! The integrator is deliberately minimal: embedded 5(4) error estimate,
//! FSAL reuse, and the standard step controller
//! `h ← h · clamp(0.9·err^{−1/5}, 0.2, 5)`. Events are localized without a
//! dense-output interpolant: once an accepted step brackets the crossing,
//! the step is *re-taken* from the pre-event state with bisected step sizes
//! (each probe is one fifth-order step of size `σ ∈ [0, h]`), which keeps
//! the event state on the same fifth-order accuracy as the trajectory.

use crate::error::{Error, Result};
use crate::tol;

/// Integration controls. `h0 ≤ 0` selects an automatic initial step.
#[derive(Debug, Clone, Copy)]
pub struct Dopri5Options {
    pub rtol: f64,
    pub atol: f64,
    pub h0: f64,
    /// Give up (no event) once `t − t0` exceeds this horizon.
    pub t_max: f64,
    pub max_steps: usize,
}

impl Default for Dopri5Options {
    fn default() -> Self {
        Self {
            rtol: tol::ODE_RTOL,
            atol: tol::ODE_ATOL,
            h0: 0.0,
            t_max: tol::MAX_TIME,
            max_steps: 2_000_000,
        }
    }
}

/// Where the event fired.
#[derive(Debug, Clone, Copy)]
pub struct EventOutcome<const N: usize> {
    pub t: f64,
    pub y: [f64; N],
    /// Accepted steps taken before the event.
    pub steps: usize,
}

// Dormand–Prince coefficients (the classical RK5(4)7M pair).
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// Fifth-order weights are row 6 of A (FSAL); the error weights are b5 − b4.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

struct StepResult<const N: usize> {
    y5: [f64; N],
    k7: [f64; N],
    err: f64,
}

/// One Dormand–Prince step of size `h` from `(t, y)`, with `k1 = f(t, y)`
/// already evaluated. Returns the fifth-order solution, the FSAL stage, and
/// the scaled error norm.
fn advance<const N: usize, F>(
    f: &F,
    t: f64,
    y: &[f64; N],
    k1: &[f64; N],
    h: f64,
    rtol: f64,
    atol: f64,
) -> StepResult<N>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let mut k = [[0.0; N]; 7];
    k[0] = *k1;
    for stage in 1..7 {
        let mut ys = *y;
        for (j, kj) in k.iter().enumerate().take(stage) {
            let aij = A[stage][j];
            if aij != 0.0 {
                for i in 0..N {
                    ys[i] += h * aij * kj[i];
                }
            }
        }
        k[stage] = f(t + C[stage] * h, &ys);
    }
    // Stage 7 is evaluated at the fifth-order solution (row 6 of A), so the
    // state used for k[6] above *is* y5.
    let mut y5 = *y;
    for (j, kj) in k.iter().enumerate().take(6) {
        let aij = A[6][j];
        if aij != 0.0 {
            for i in 0..N {
                y5[i] += h * aij * kj[i];
            }
        }
    }
    let mut err = 0.0;
    for i in 0..N {
        let mut e = 0.0;
        for (j, kj) in k.iter().enumerate() {
            e += E[j] * kj[i];
        }
        let scale = atol + rtol * y[i].abs().max(y5[i].abs());
        let r = h * e / scale;
        err += r * r;
    }
    StepResult {
        y5,
        k7: k[6],
        err: (err / N as f64).sqrt(),
    }
}

fn controller_factor(err: f64) -> f64 {
    if err == 0.0 {
        5.0
    } else {
        (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
    }
}

fn auto_h0<const N: usize>(y0: &[f64; N], k1: &[f64; N]) -> f64 {
    let ny = y0.iter().map(|v| v * v).sum::<f64>().sqrt();
    let nf = k1.iter().map(|v| v * v).sum::<f64>().sqrt();
    1e-3 * (1.0 + ny) / (1.0 + nf)
}

/// Integrates `y' = f(t, y)` from `(t0, y0)` until the scalar `event`
/// function first crosses from negative to nonnegative, and returns the
/// bisection-localized crossing. Errors with [`Error::NoReturn`] if the
/// horizon or step budget is exhausted first, and with
/// [`Error::InvalidParameter`] if the event function is already nonnegative
/// at the start.
pub fn integrate_to_event<const N: usize, F, G>(
    f: F,
    t0: f64,
    y0: [f64; N],
    event: G,
    opts: &Dopri5Options,
) -> Result<EventOutcome<N>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    G: Fn(f64, &[f64; N]) -> f64,
{
    if event(t0, &y0) >= 0.0 {
        return Err(Error::InvalidParameter(
            "event function must be negative at the initial state".into(),
        ));
    }
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut h = if opts.h0 > 0.0 {
        opts.h0
    } else {
        auto_h0(&y, &k1)
    };
    let mut steps = 0usize;
    let mut attempts = 0usize;
    loop {
        attempts += 1;
        if attempts > opts.max_steps || t - t0 > opts.t_max {
            return Err(Error::NoReturn(t - t0));
        }
        if h < 1e-14 * t.abs().max(1.0) {
            return Err(Error::NoReturn(t - t0));
        }
        let result = advance(&f, t, &y, &k1, h, opts.rtol, opts.atol);
        if result.err <= 1.0 {
            if event(t + h, &result.y5) >= 0.0 {
                let (te, ye) = localize(&f, t, &y, &k1, h, opts, &event);
                return Ok(EventOutcome {
                    t: te,
                    y: ye,
                    steps,
                });
            }
            t += h;
            y = result.y5;
            k1 = result.k7;
            steps += 1;
        }
        h *= controller_factor(result.err);
    }
}

/// Bisects the step size within `[0, h]` from the pre-event state until the
/// crossing window is below [`tol::EVENT_TOL`] (relative to the current
/// time scale). Each probe re-takes a single fifth-order step.
fn localize<const N: usize, F, G>(
    f: &F,
    t: f64,
    y: &[f64; N],
    k1: &[f64; N],
    h: f64,
    opts: &Dopri5Options,
    event: &G,
) -> (f64, [f64; N])
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    G: Fn(f64, &[f64; N]) -> f64,
{
    let mut lo = 0.0f64;
    let mut hi = h;
    let mut y_hi = advance(f, t, y, k1, hi, opts.rtol, opts.atol).y5;
    let width_goal = tol::EVENT_TOL * (t.abs() + h).max(1.0);
    for _ in 0..200 {
        if hi - lo <= width_goal {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let y_mid = advance(f, t, y, k1, mid, opts.rtol, opts.atol).y5;
        if event(t + mid, &y_mid) >= 0.0 {
            hi = mid;
            y_hi = y_mid;
        } else {
            lo = mid;
        }
    }
    (t + hi, y_hi)
}

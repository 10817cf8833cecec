//! Streamline travel times for planar flows defined by a stream function.
//!
//! For `u = ∇⊥ψ` the travel time around the closed level curve `{ψ = c}` is
//!
//! ```text
//! T(c) = ∮ dℓ / |∇ψ|
//! ```
//!
//! computed here two independent ways: direct time integration of the
//! streamline ODE ([`period_ode`]) and an arclength parametrization followed
//! by a periodic trapezoid quadrature of `1/|∇ψ|` ([`period_quadrature`]).
//! A flow is isochronal when `T(c)` is independent of `c`; the elliptic
//! vortex (`T = 2πab` for every level) is the model case, while radial
//! powers other than `r²` are not isochronal (`ψ = r⁴/4` gives
//! `T = 2π/r²`).
//!
//! Level curves are seeded on a ray from the origin and tracked by their
//! winding angle, so the machinery assumes levels are closed star-shaped
//! curves around the origin (true for every flow shipped here).

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::ode::{integrate_to_event, Dopri5Options};
use crate::tol;

/// A planar stream function with an analytic gradient.
pub trait StreamFunction {
    fn psi(&self, x: f64, y: f64) -> f64;
    /// `(∂ψ/∂x, ∂ψ/∂y)`.
    fn grad_psi(&self, x: f64, y: f64) -> (f64, f64);
    /// The induced velocity `u = ∇⊥ψ = (−ψ_y, ψ_x)`.
    fn velocity(&self, x: f64, y: f64) -> (f64, f64) {
        let (gx, gy) = self.grad_psi(x, y);
        (-gy, gx)
    }
}

/// `ψ = ½((x/a)² + (y/b)²)`: every particle orbits with period `2πab`,
/// independent of the level — the model isochronal flow.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EllipticVortex {
    a: f64,
    b: f64,
}

impl EllipticVortex {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "elliptic vortex semi-axes must be finite and positive, got ({a}, {b})"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `T = 2πab`, for every level.
    pub fn exact_period(&self) -> f64 {
        2.0 * PI * self.a * self.b
    }
}

impl StreamFunction for EllipticVortex {
    fn psi(&self, x: f64, y: f64) -> f64 {
        0.5 * ((x / self.a).powi(2) + (y / self.b).powi(2))
    }

    fn grad_psi(&self, x: f64, y: f64) -> (f64, f64) {
        (x / (self.a * self.a), y / (self.b * self.b))
    }
}

/// `ψ = rᵖ/p`: circular streamlines with radius-dependent angular velocity
/// `ω = r^{p−2}`, hence `T(r) = 2π·r^{2−p}`. Isochronal only for `p = 2`.
/// `p = 4` is the standard non-isochronal contrast case.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RadialPower {
    p: f64,
}

impl RadialPower {
    pub fn new(p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "radial power exponent must be finite and positive, got {p}"
            )));
        }
        Ok(Self { p })
    }

    /// The quartic case `ψ = r⁴/4`, for which `T(c) = π/√c`.
    pub fn power4() -> Self {
        Self { p: 4.0 }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Radius of the level curve `{ψ = c}`.
    pub fn radius(&self, c: f64) -> f64 {
        (self.p * c).powf(1.0 / self.p)
    }

    /// `T = 2π·r^{2−p}` at the level's radius.
    pub fn exact_period(&self, c: f64) -> f64 {
        2.0 * PI * self.radius(c).powf(2.0 - self.p)
    }
}

impl StreamFunction for RadialPower {
    fn psi(&self, x: f64, y: f64) -> f64 {
        (x * x + y * y).sqrt().powf(self.p) / self.p
    }

    fn grad_psi(&self, x: f64, y: f64) -> (f64, f64) {
        let r = (x * x + y * y).sqrt();
        if r == 0.0 {
            return (0.0, 0.0);
        }
        let factor = r.powf(self.p - 2.0);
        (factor * x, factor * y)
    }
}

/// Finds the point of `{ψ = c}` on the ray at polar angle `angle`, by
/// doubling then bisection. The level must lie above the origin's value and
/// within reach of the search radius.
pub fn point_on_level<F: StreamFunction>(flow: &F, c: f64, angle: f64) -> Result<(f64, f64)> {
    if !c.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "level must be finite, got {c}"
        )));
    }
    let psi0 = flow.psi(0.0, 0.0);
    if c < psi0 {
        return Err(Error::InvalidLevel(c, psi0, f64::INFINITY));
    }
    if c == psi0 {
        return Ok((0.0, 0.0));
    }
    let (dx, dy) = (angle.cos(), angle.sin());
    let mut hi = 1.0;
    while flow.psi(hi * dx, hi * dy) < c {
        hi *= 2.0;
        if hi > 1e8 {
            return Err(Error::InvalidLevel(c, psi0, flow.psi(hi * dx, hi * dy)));
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        if hi - lo <= 1e-15 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if flow.psi(mid * dx, mid * dy) < c {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    Ok((t * dx, t * dy))
}

/// Seed state shared by both period algorithms: position, gradient norm
/// check, and winding orientation.
fn seed_state<F: StreamFunction>(flow: &F, c: f64, angle: f64) -> Result<((f64, f64), f64)> {
    let (x0, y0) = point_on_level(flow, c, angle)?;
    let (gx, gy) = flow.grad_psi(x0, y0);
    let gnorm = gx.hypot(gy);
    if gnorm < tol::STAGNATION_FLOOR {
        return Err(Error::Stagnation(gnorm));
    }
    let (ux, uy) = flow.velocity(x0, y0);
    let r2 = x0 * x0 + y0 * y0;
    let omega = (x0 * uy - y0 * ux) / r2;
    if omega == 0.0 || !omega.is_finite() {
        return Err(Error::ContourNotClosed(format!(
            "streamline is radial at the seed point ({x0:.6}, {y0:.6})"
        )));
    }
    Ok(((x0, y0), omega.signum()))
}

fn check_closure(seed: (f64, f64), end: (f64, f64)) -> Result<()> {
    let dist = (end.0 - seed.0).hypot(end.1 - seed.1);
    let scale = 1.0 + seed.0.hypot(seed.1);
    if dist > 1e-5 * scale {
        return Err(Error::ContourNotClosed(format!(
            "returned {dist:.3e} away from the seed after one winding"
        )));
    }
    Ok(())
}

/// Travel time around `{ψ = c}` by direct time integration of
/// `ẋ = ∇⊥ψ`, seeded at polar angle `angle`, with the accumulated winding
/// angle as the return event.
pub fn period_ode_from_angle<F: StreamFunction>(flow: &F, c: f64, angle: f64) -> Result<f64> {
    let ((x0, y0), orient) = seed_state(flow, c, angle)?;
    let rhs = |_: f64, s: &[f64; 3]| {
        let (x, y) = (s[0], s[1]);
        let (ux, uy) = flow.velocity(x, y);
        let r2 = x * x + y * y;
        [ux, uy, orient * (x * uy - y * ux) / r2]
    };
    let out = integrate_to_event(
        rhs,
        0.0,
        [x0, y0, 0.0],
        |_, s| s[2] - 2.0 * PI,
        &Dopri5Options::default(),
    )?;
    check_closure((x0, y0), (out.y[0], out.y[1]))?;
    Ok(out.t)
}

/// [`period_ode_from_angle`] with the default seed ray (the positive x-axis).
pub fn period_ode<F: StreamFunction>(flow: &F, c: f64) -> Result<f64> {
    period_ode_from_angle(flow, c, 0.0)
}

/// A quadrature-based travel time and its internal refinement gap.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuadraturePeriod {
    /// `T = ∮ dℓ/|∇ψ|` from the finer of the two node counts.
    pub value: f64,
    /// Relative change between the two node counts (convergence indicator).
    pub refinement_gap: f64,
}

/// Travel time as the line integral `∮ dℓ/|∇ψ|`: the contour is first
/// traversed in arclength parametrization to measure its length `L`, then
/// retraced at uniform spacing (fourth-order steps with Newton projection
/// back onto the level), and the periodic trapezoid rule is applied at
/// `N = 2048` and `N = 4096` nodes.
pub fn period_quadrature<F: StreamFunction>(flow: &F, c: f64) -> Result<QuadraturePeriod> {
    period_quad_from_angle(flow, c, 0.0)
}

/// [`period_quadrature`] seeded at a chosen polar angle.
pub fn period_quad_from_angle<F: StreamFunction>(
    flow: &F,
    c: f64,
    angle: f64,
) -> Result<QuadraturePeriod> {
    let ((x0, y0), orient) = seed_state(flow, c, angle)?;
    // Pass 1: arclength traversal to measure the contour length.
    let rhs = |_: f64, s: &[f64; 3]| {
        let (x, y) = (s[0], s[1]);
        let (ux, uy) = flow.velocity(x, y);
        let speed = ux.hypot(uy).max(f64::MIN_POSITIVE);
        let r2 = x * x + y * y;
        [
            ux / speed,
            uy / speed,
            orient * (x * uy - y * ux) / (speed * r2),
        ]
    };
    let out = integrate_to_event(
        rhs,
        0.0,
        [x0, y0, 0.0],
        |_, s| s[2] - 2.0 * PI,
        &Dopri5Options::default(),
    )?;
    check_closure((x0, y0), (out.y[0], out.y[1]))?;
    let length = out.t;
    let coarse = trace_trapezoid(flow, c, (x0, y0), length, 2048)?;
    let fine = trace_trapezoid(flow, c, (x0, y0), length, 4096)?;
    let refinement_gap = (coarse - fine).abs() / fine.abs().max(f64::MIN_POSITIVE);
    Ok(QuadraturePeriod {
        value: fine,
        refinement_gap,
    })
}

/// Retraces the contour at uniform arclength spacing `L/n` and accumulates
/// the periodic trapezoid sum of `1/|∇ψ|`.
fn trace_trapezoid<F: StreamFunction>(
    flow: &F,
    c: f64,
    seed: (f64, f64),
    length: f64,
    n: usize,
) -> Result<f64> {
    let ds = length / n as f64;
    let tangent = |x: f64, y: f64| {
        let (ux, uy) = flow.velocity(x, y);
        let speed = ux.hypot(uy).max(f64::MIN_POSITIVE);
        (ux / speed, uy / speed)
    };
    let (mut x, mut y) = seed;
    let mut sum = 0.0;
    for _ in 0..n {
        let (ux, uy) = flow.velocity(x, y);
        let speed = ux.hypot(uy);
        if speed < tol::STAGNATION_FLOOR {
            return Err(Error::Stagnation(speed));
        }
        sum += 1.0 / speed;
        // Classical RK4 step along the unit tangent field.
        let (k1x, k1y) = tangent(x, y);
        let (k2x, k2y) = tangent(x + 0.5 * ds * k1x, y + 0.5 * ds * k1y);
        let (k3x, k3y) = tangent(x + 0.5 * ds * k2x, y + 0.5 * ds * k2y);
        let (k4x, k4y) = tangent(x + ds * k3x, y + ds * k3y);
        x += ds / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        y += ds / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        // Newton projection back onto the level set, along ∇ψ.
        for _ in 0..3 {
            let d = flow.psi(x, y) - c;
            if d.abs() <= 1e-13 * c.abs().max(1.0) {
                break;
            }
            let (gx, gy) = flow.grad_psi(x, y);
            let g2 = gx * gx + gy * gy;
            if g2 < tol::STAGNATION_FLOOR * tol::STAGNATION_FLOOR {
                return Err(Error::Stagnation(g2.sqrt()));
            }
            x -= d * gx / g2;
            y -= d * gy / g2;
        }
    }
    Ok(ds * sum)
}

/// One level's travel times from both algorithms. Numeric fields are absent
/// where the corresponding computation failed; `status` is `"ok"` only when
/// everything succeeded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodResult {
    pub c: f64,
    pub t_ode: Option<f64>,
    pub t_quad: Option<f64>,
    /// `|T_ode − T_quad| / |T_quad|`.
    pub discrepancy: Option<f64>,
    pub status: String,
}

/// CSV header shared by the writer and reader.
pub const PERIOD_CSV_HEADER: &str = "c,T_ode,T_quad,discrepancy,status";

/// Evaluates both travel-time algorithms on each level, capturing per-level
/// failures in the record instead of aborting the table.
pub fn period_table<F: StreamFunction>(flow: &F, levels: &[f64]) -> Vec<PeriodResult> {
    levels
        .iter()
        .map(|&c| {
            let ode = period_ode(flow, c);
            let quad = period_quadrature(flow, c);
            let (t_ode, t_quad, status) = match (&ode, &quad) {
                (Ok(o), Ok(q)) => (Some(*o), Some(q.value), "ok".to_string()),
                (Err(e), Ok(q)) => (None, Some(q.value), format!("error: {e}")),
                (Ok(o), Err(e)) => (Some(*o), None, format!("error: {e}")),
                (Err(e), Err(_)) => (None, None, format!("error: {e}")),
            };
            let discrepancy = match (t_ode, t_quad) {
                (Some(o), Some(q)) => Some((o - q).abs() / q.abs().max(f64::MIN_POSITIVE)),
                _ => None,
            };
            PeriodResult {
                c,
                t_ode,
                t_quad,
                discrepancy,
                status,
            }
        })
        .collect()
}

/// Spread of the ODE travel times across the table's `"ok"` rows:
/// `(max − min) / mean`. `None` when no row succeeded. Zero means the flow
/// looks isochronal across the sampled levels.
pub fn max_relative_spread(results: &[PeriodResult]) -> Option<f64> {
    let times: Vec<f64> = results
        .iter()
        .filter(|r| r.status == "ok")
        .filter_map(|r| r.t_ode)
        .collect();
    if times.is_empty() {
        return None;
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &t in &times {
        lo = lo.min(t);
        hi = hi.max(t);
    }
    let mean = times.iter().sum::<f64>() / times.len() as f64;
    Some((hi - lo) / mean)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elliptic_vortex_is_isochronal() {
        let flow = EllipticVortex::new(1.3, 0.7).unwrap();
        let exact = flow.exact_period();
        for c in [0.3, 0.9, 2.5] {
            let t_ode = period_ode(&flow, c).unwrap();
            assert!((t_ode - exact).abs() <= 1e-8 * exact, "c={c}: {t_ode}");
            let quad = period_quadrature(&flow, c).unwrap();
            assert!((quad.value - exact).abs() <= 1e-7 * exact, "c={c}");
            assert!(quad.refinement_gap <= 1e-9);
        }
    }

    #[test]
    fn quartic_radial_flow_is_not_isochronal() {
        let flow = RadialPower::power4();
        // ψ = r⁴/4 ⟹ T(c) = π/√c, e.g. T(1) = π at radius √2.
        assert!((flow.exact_period(1.0) - PI).abs() < 1e-15);
        assert!((flow.radius(1.0) - 2.0f64.sqrt()).abs() < 1e-15);
        for c in [0.5f64, 1.0, 2.0] {
            let exact = PI / c.sqrt();
            let t_ode = period_ode(&flow, c).unwrap();
            assert!((t_ode - exact).abs() <= 1e-8 * exact, "c={c}: {t_ode}");
            let quad = period_quadrature(&flow, c).unwrap();
            assert!((quad.value - exact).abs() <= 1e-7 * exact, "c={c}");
        }
        let table = period_table(&flow, &[0.5, 1.0, 2.0]);
        let spread = max_relative_spread(&table).unwrap();
        assert!(spread > 0.5, "spread = {spread}");
    }

    #[test]
    fn circular_power_two_matches_the_round_vortex() {
        let flow = RadialPower::new(2.0).unwrap();
        for c in [0.2, 1.0, 4.0] {
            let t = period_ode(&flow, c).unwrap();
            assert!((t - 2.0 * PI).abs() <= 1e-8);
        }
    }

    #[test]
    fn seed_angle_does_not_change_the_period() {
        let flow = EllipticVortex::new(2.0, 0.5).unwrap();
        let base = period_ode_from_angle(&flow, 1.0, 0.0).unwrap();
        for angle in [0.7, 1.9, 3.8, 5.5] {
            let t = period_ode_from_angle(&flow, 1.0, angle).unwrap();
            assert!((t - base).abs() <= 1e-8 * base, "angle={angle}");
        }
    }

    #[test]
    fn degenerate_levels_are_rejected() {
        let flow = RadialPower::power4();
        assert!(matches!(
            period_ode(&flow, -1.0),
            Err(Error::InvalidLevel(_, _, _))
        ));
        assert!(matches!(period_ode(&flow, 0.0), Err(Error::Stagnation(_))));
        assert!(EllipticVortex::new(-1.0, 1.0).is_err());
        assert!(RadialPower::new(f64::NAN).is_err());
    }

    #[test]
    fn table_rows_carry_per_level_status() {
        let flow = EllipticVortex::new(1.0, 2.0).unwrap();
        let table = period_table(&flow, &[1.0, 0.0]);
        assert_eq!(table[0].status, "ok");
        assert!(table[0].discrepancy.unwrap() <= 1e-7);
        assert!(table[1].status.starts_with("error"));
        assert!(table[1].t_ode.is_none());
        let spread = max_relative_spread(&table).unwrap();
        assert!(spread.abs() <= 1e-7);
    }
}

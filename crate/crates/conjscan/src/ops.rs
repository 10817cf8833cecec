//! Differential and projection operators of 2-D ideal hydrodynamics on the
//! torus: gradients, divergence, curl, Laplacian, advection, the Lie
//! bracket, the Weyl–Helmholtz (Leray) splitting, the Stokes operator, and
//! the stationarity residual.
//!
//! Everything here is a pure function of immutable inputs; the flat metric
//! makes the covariant derivative componentwise, and the curvature tensor of
//! the underlying torus is identically zero (no separate term anywhere).

use num_complex::Complex64;
use std::collections::BTreeSet;

use crate::error::Result;
use crate::field::VectorField;
use crate::geometry::Wavevector;
use crate::trig::TrigScalar;

/// Sign convention of the Lie bracket: `[u, v] = s·(u·∇v − v·∇u)` with
/// `s = +1`. The value is pinned by requiring the bracket form and the
/// curvature form of the conjugacy criterion to agree on a stationary test
/// battery (the convention-free curvature form acts as the referee); the
/// test suite asserts the choice.
pub const BRACKET_SIGN: f64 = 1.0;

/// `∇f = (∂x f, ∂y f)`.
pub fn grad(f: &TrigScalar) -> VectorField {
    VectorField::new(f.dx(), f.dy()).expect("components share geometry")
}

/// `∇⊥f = (−∂y f, ∂x f)`; exactly divergence-free by construction.
pub fn perp_grad(f: &TrigScalar) -> VectorField {
    VectorField::new(-&f.dy(), f.dx()).expect("components share geometry")
}

/// `div u = ∂x u_x + ∂y u_y`.
pub fn div(u: &VectorField) -> TrigScalar {
    &u.x().dx() + &u.y().dy()
}

/// `curl u = ∂x u_y − ∂y u_x` (the scalar vorticity).
pub fn curl(u: &VectorField) -> TrigScalar {
    &u.y().dx() - &u.x().dy()
}

/// Spectral Laplacian: mode `k` is multiplied by `−((k1·α)² + k2²)`.
pub fn laplacian(f: &TrigScalar) -> TrigScalar {
    f.laplacian()
}

/// Advection `(u·∇)v`, componentwise on the flat torus; exact and
/// band-limited (products are exact convolutions).
pub fn advect(u: &VectorField, v: &VectorField) -> Result<VectorField> {
    u.geometry().check_same(v.geometry())?;
    let cx = &u.x().product(&v.x().dx())? + &u.y().product(&v.x().dy())?;
    let cy = &u.x().product(&v.y().dx())? + &u.y().product(&v.y().dy())?;
    VectorField::new(cx, cy)
}

/// Lie bracket `[u, v] = s·(u·∇v − v·∇u)` with `s =` [`BRACKET_SIGN`].
/// Both inputs must be divergence-free; the result is divergence-free.
pub fn lie_bracket(u: &VectorField, v: &VectorField) -> Result<VectorField> {
    u.geometry().check_same(v.geometry())?;
    u.require_div_free()?;
    v.require_div_free()?;
    let uv = advect(u, v)?;
    let vu = advect(v, u)?;
    Ok((&uv - &vu).scale(BRACKET_SIGN))
}

/// Splits a field per mode into its gradient part and its divergence-free
/// remainder; shared by [`leray_project`] and [`gradient_part`].
fn helmholtz_split(w: &VectorField) -> (VectorField, VectorField) {
    let geometry = *w.geometry();
    let keys: BTreeSet<Wavevector> = w
        .x()
        .modes()
        .map(|(k, _)| *k)
        .chain(w.y().modes().map(|(k, _)| *k))
        .collect();
    let mut px: Vec<(Wavevector, Complex64)> = Vec::new();
    let mut py: Vec<(Wavevector, Complex64)> = Vec::new();
    let mut qx: Vec<(Wavevector, Complex64)> = Vec::new();
    let mut qy: Vec<(Wavevector, Complex64)> = Vec::new();
    for k in keys {
        let wx = w.x().coefficient(k);
        let wy = w.y().coefficient(k);
        if k.is_zero() {
            // The mean mode is divergence-free (a constant field); gradients
            // have no mean, so it belongs entirely to the projection.
            px.push((k, wx));
            py.push((k, wy));
            continue;
        }
        let (kx, ky) = k.kappa(&geometry);
        let n2 = kx * kx + ky * ky;
        let q = (wx * kx + wy * ky) / n2;
        let (gx, gy) = (q * kx, q * ky);
        qx.push((k, gx));
        qy.push((k, gy));
        px.push((k, wx - gx));
        py.push((k, wy - gy));
    }
    let assemble = |modes: Vec<(Wavevector, Complex64)>| {
        TrigScalar::from_modes(geometry, &modes).expect("split preserves reality")
    };
    let p = VectorField::new(assemble(px), assemble(py)).expect("shared geometry");
    let q = VectorField::new(assemble(qx), assemble(qy)).expect("shared geometry");
    (p, q)
}

/// Leray projection `P`: the L²-orthogonal projection onto divergence-free
/// fields. Always `leray_project(w) + gradient_part(w) = w` exactly.
pub fn leray_project(w: &VectorField) -> VectorField {
    helmholtz_split(w).0
}

/// Gradient part `Q = Id − P`: per nonzero mode `κ(κ·ŵ)/|κ|²`.
pub fn gradient_part(w: &VectorField) -> VectorField {
    helmholtz_split(w).1
}

/// Stokes operator `A u = −P(Δu)`; on `∇⊥q` with `−Δq = λq` it returns `λ·u`.
pub fn stokes_apply(u: &VectorField) -> Result<VectorField> {
    u.require_div_free()?;
    let lap = VectorField::new(u.x().laplacian(), u.y().laplacian())?;
    Ok(leray_project(&lap).scale(-1.0))
}

/// `‖P(u·∇u)‖ / max(‖u‖², floor)`; ~0 certifies a steady Euler solution.
pub fn stationarity_residual(u0: &VectorField) -> f64 {
    let accel = advect(u0, u0).expect("same geometry");
    let p = leray_project(&accel);
    p.norm2().sqrt() / u0.norm2().max(1e-30)
}

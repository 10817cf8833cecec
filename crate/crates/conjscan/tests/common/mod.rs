//! Shared helpers for the integration suites: seeded random band-limited
//! fields and grid-quadrature / finite-difference oracles that are
//! independent of the spectral code paths they check.
#![allow(dead_code)]

use conjscan::ops::perp_grad;
use conjscan::{TorusGeometry, TrigScalar, VectorField, Wavevector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Relative gap `|x − y| / max(|x|, |y|, floor)`.
pub fn rel(x: f64, y: f64, floor: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(floor)
}

/// Random real band-limited scalar: every `|k1|, |k2| ≤ band` mode carries
/// a coefficient with entries in `[−1, 1]`, conjugate-paired for reality.
pub fn random_scalar(rng: &mut ChaCha8Rng, geometry: TorusGeometry, band: i32) -> TrigScalar {
    let mut modes: Vec<(Wavevector, Complex64)> = Vec::new();
    for k1 in 0..=band {
        for k2 in -band..=band {
            // Emit each ±k pair from its k1 ≥ 0 representative (k2 > 0 when
            // k1 = 0); the zero mode must be real.
            if k1 == 0 && k2 < 0 {
                continue;
            }
            let k = Wavevector::new(k1, k2);
            if k.is_zero() {
                modes.push((k, Complex64::new(rng.gen_range(-1.0..1.0), 0.0)));
                continue;
            }
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            modes.push((k, c));
            modes.push((k.neg(), c.conj()));
        }
    }
    TrigScalar::from_modes(geometry, &modes).expect("conjugate-paired modes are real")
}

/// Random vector field with both components band-limited (not solenoidal
/// in general).
pub fn random_field(rng: &mut ChaCha8Rng, geometry: TorusGeometry, band: i32) -> VectorField {
    let x = random_scalar(rng, geometry, band);
    let y = random_scalar(rng, geometry, band);
    VectorField::new(x, y).expect("same geometry")
}

/// Random divergence-free field: `∇⊥ψ` of a random stream function plus a
/// random constant drift (the harmonic part of the splitting).
pub fn random_div_free(rng: &mut ChaCha8Rng, geometry: TorusGeometry, band: i32) -> VectorField {
    let psi = random_scalar(rng, geometry, band);
    let swirl = perp_grad(&psi);
    let drift = VectorField::constant(geometry, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    &swirl + &drift
}

/// Integral of `f·g` over the torus by the periodic trapezoid rule
/// (= flat sample average times the area), on a grid fine enough to be
/// exact for band-limited products: `N > 2·(band(f)+band(g))` per axis.
pub fn quadrature_inner(f: &TrigScalar, g: &TrigScalar) -> f64 {
    let geometry = *f.geometry();
    let n = (2 * (f.band() + g.band()) + 4) as usize;
    let (hx, hy) = (geometry.lx() / n as f64, geometry.ly() / n as f64);
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (i as f64 * hx, j as f64 * hy);
            sum += f.eval(x, y) * g.eval(x, y);
        }
    }
    sum * geometry.area() / (n * n) as f64
}

/// L² pairing of vector fields by quadrature.
pub fn quadrature_inner_field(u: &VectorField, v: &VectorField) -> f64 {
    quadrature_inner(u.x(), v.x()) + quadrature_inner(u.y(), v.y())
}

/// Central finite-difference gradient of a scalar at a point.
pub fn fd_grad(f: &TrigScalar, x: f64, y: f64, h: f64) -> (f64, f64) {
    (
        (f.eval(x + h, y) - f.eval(x - h, y)) / (2.0 * h),
        (f.eval(x, y + h) - f.eval(x, y - h)) / (2.0 * h),
    )
}

/// Pointwise advection `(u·∇)v` evaluated by finite differences.
pub fn fd_advect(u: &VectorField, v: &VectorField, x: f64, y: f64, h: f64) -> (f64, f64) {
    let (ux, uy) = u.eval(x, y);
    let (vx_x, vx_y) = fd_grad(v.x(), x, y, h);
    let (vy_x, vy_y) = fd_grad(v.y(), x, y, h);
    (ux * vx_x + uy * vx_y, ux * vy_x + uy * vy_y)
}

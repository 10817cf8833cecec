//! Hydrodynamic operators: gradients, advection, Lie bracket, and the
//! Helmholtz splitting into divergence-free and gradient parts.
//!
//! Run with: cargo run --example euler_operators

use conjscan::ops::{
    advect, div, gradient_part, leray_project, lie_bracket, perp_grad, stationarity_residual,
};
use conjscan::{TorusGeometry, TrigScalar, VectorField, Wavevector};

fn main() {
    let g = TorusGeometry::new(1.0).unwrap();

    // Velocity fields from stream functions are automatically
    // divergence-free: u = ∇⊥ψ = (−ψ_y, ψ_x).
    let psi = TrigScalar::cosine(g, Wavevector::new(1, 0), -1.0); // ψ = −cos x
    let u = perp_grad(&psi); // u = (0, sin x)
    println!("u = ∇⊥(−cos x): div residual = {:.3e}", u.div_residual());
    println!("u(π/2, 0) = {:?}", u.eval(std::f64::consts::FRAC_PI_2, 0.0));

    // Advection u·∇v, here of a second shear by the first.
    let phi = TrigScalar::cosine(g, Wavevector::new(0, 1), -1.0); // φ = −cos y
    let v = perp_grad(&phi); // v = (−sin y, 0)
    let adv = advect(&u, &v).unwrap();
    println!(
        "\nu·∇v: div = {:.3e} (advection of a field need not stay solenoidal)",
        div(&adv).max_abs_coeff()
    );

    // The Lie bracket of two divergence-free fields is divergence-free.
    let b = lie_bracket(&u, &v).unwrap();
    println!(
        "[u, v]: modes = {}, div residual = {:.3e}",
        b.x().num_modes() + b.y().num_modes(),
        b.div_residual()
    );

    // Helmholtz: w = P(w) + Q(w) with P divergence-free and Q a gradient.
    let w = VectorField::new(
        TrigScalar::sine(g, Wavevector::new(1, 0), 1.0),
        TrigScalar::sine(g, Wavevector::new(1, 0), 1.0),
    )
    .unwrap();
    let (p, q) = (leray_project(&w), gradient_part(&w));
    println!("\nHelmholtz of (sin x, sin x):");
    println!(
        "  P part: div residual = {:.3e}, ‖P‖² = {:.6}",
        p.div_residual(),
        p.norm2()
    );
    println!("  Q part: ‖Q‖² = {:.6}", q.norm2());
    let back = &p + &q;
    println!(
        "  P + Q recovers w: ‖(P+Q)−w‖² = {:.3e}",
        (&back - &w).norm2()
    );

    // Leray projection annihilates gradients and fixes solenoidal fields.
    println!("\nLeray(Q(w)) ‖·‖² = {:.3e}", leray_project(&q).norm2());
    println!(
        "Leray(u) = u: difference = {:.3e}",
        (&leray_project(&u) - &u).norm2()
    );

    // Eigenflows of the torus are steady Euler solutions: u·∇u is a pure
    // gradient, so the solenoidal part of the self-advection vanishes.
    let eigen = perp_grad(
        &(&TrigScalar::cosine(g, Wavevector::new(1, 1), -0.5)
            + &TrigScalar::cosine(g, Wavevector::new(1, -1), -0.5)),
    );
    println!(
        "\nstationarity of ∇⊥(−cos x cos y): {:.3e}",
        stationarity_residual(&eigen)
    );
    // A mixture of unequal eigenvalues is NOT steady.
    let mixed = &eigen + &u;
    println!(
        "stationarity of a mixed-eigenvalue field: {:.3e}",
        stationarity_residual(&mixed)
    );
}

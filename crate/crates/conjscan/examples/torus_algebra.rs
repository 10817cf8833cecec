//! The exact sparse trigonometric algebra on the rectangular torus.
//!
//! Run with: cargo run --example torus_algebra

use conjscan::{TorusGeometry, TrigScalar, Wavevector};

fn main() {
    // A torus with side lengths 2π/α × 2π; α = 2 makes it half as wide.
    let g = TorusGeometry::new(2.0).unwrap();
    println!(
        "torus: lx = {:.6}, ly = {:.6}, area = {:.6}",
        g.lx(),
        g.ly(),
        g.area()
    );

    // cos(2αx + y) and sin(αx − 3y), stored as sparse mode maps.
    let c = TrigScalar::cosine(g, Wavevector::new(2, 1), 1.0);
    let s = TrigScalar::sine(g, Wavevector::new(1, -3), 0.5);
    println!(
        "\ncos mode count = {}, sin mode count = {}",
        c.num_modes(),
        s.num_modes()
    );

    // Products are exact convolutions: cos² picks up the double angle and
    // the mean, nothing else.
    let c2 = c.product(&c).unwrap();
    println!("\ncos² modes (k1, k2) -> coefficient:");
    for (k, v) in c2.modes() {
        println!("  ({:2}, {:2}) -> {:+.3} {:+.3}i", k.k1, k.k2, v.re, v.im);
    }

    // Derivatives multiply by iκ; the Laplacian by −|κ|².
    let lap = c.laplacian();
    let kappa2 = (2.0f64 * 2.0).powi(2) + 1.0;
    println!("\nΔcos = −|κ|²·cos with |κ|² = {kappa2}");
    for (k, v) in lap.modes() {
        println!("  ({:2}, {:2}) -> {:+.3}", k.k1, k.k2, v.re);
    }

    // L² inner products: distinct modes are orthogonal, and
    // ‖cos‖² = area/2 regardless of the wavevector.
    println!("\n⟨cos, sin⟩ = {:.3e}", c.inner(&s).unwrap());
    println!(
        "‖cos‖²     = {:.6} (= area/2 = {:.6})",
        c.norm2(),
        g.area() / 2.0
    );

    // Pointwise evaluation agrees with the textbook formula.
    let (x, y) = (0.3f64, 1.1f64);
    let direct = (2.0 * 2.0 * x + y).cos();
    println!(
        "\neval cos(2αx+y) at ({x}, {y}): {:.12} vs direct {:.12}",
        c.eval(x, y),
        direct
    );
}

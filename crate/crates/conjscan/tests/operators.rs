//! Hydrodynamic operator identities on seeded random band-limited fields.

mod common;

use common::{fd_advect, quadrature_inner_field, random_div_free, random_field, rel, rng};
use conjscan::ops::{
    advect, curl, div, grad, gradient_part, leray_project, lie_bracket, perp_grad, stokes_apply,
};
use conjscan::{KolmogorovFlow, TorusGeometry, TrigScalar, Wavevector};

fn geom(alpha: f64) -> TorusGeometry {
    TorusGeometry::new(alpha).unwrap()
}

#[test]
fn perp_gradients_are_divergence_free() {
    let mut r = rng(21);
    for &alpha in &[0.5f64, 1.0, 2.5] {
        let g = geom(alpha);
        for _ in 0..20 {
            let psi = common::random_scalar(&mut r, g, 4);
            let u = perp_grad(&psi);
            assert!(u.is_div_free());
            assert!(div(&u).max_abs_coeff() <= 1e-12 * u.norm2().sqrt().max(1.0));
            // curl(∇⊥ψ) = Δψ.
            let gap = &curl(&u) - &psi.laplacian();
            assert!(gap.max_abs_coeff() <= 1e-10);
        }
    }
}

#[test]
fn helmholtz_split_is_an_orthogonal_decomposition() {
    let mut r = rng(22);
    let g = geom(1.25);
    for _ in 0..30 {
        let w = random_field(&mut r, g, 4);
        let p = leray_project(&w);
        let q = gradient_part(&w);
        let back = &p + &q;
        // Reconstruction, orthogonality, Pythagoras.
        assert!((&back - &w).norm2() <= 1e-20 * w.norm2().max(1e-30));
        assert!(p.inner(&q).unwrap().abs() <= 1e-10 * w.norm2().max(1.0));
        assert!(rel(w.norm2(), p.norm2() + q.norm2(), 1e-12) <= 1e-12);
        // Idempotence and annihilation.
        assert!((&leray_project(&p) - &p).norm2() <= 1e-20 * p.norm2().max(1e-30));
        assert!(leray_project(&q).norm2() <= 1e-20 * w.norm2().max(1e-30));
        // The projection is solenoidal and the remainder is curl-free.
        assert!(div(&p).max_abs_coeff() <= 1e-12);
        assert!(curl(&q).max_abs_coeff() <= 1e-12);
    }
}

#[test]
fn gradients_project_to_zero() {
    let mut r = rng(23);
    let g = geom(0.8);
    for _ in 0..20 {
        let f = common::random_scalar(&mut r, g, 4);
        let w = grad(&f);
        assert!(leray_project(&w).norm2() <= 1e-20 * w.norm2().max(1e-30));
        assert!((&gradient_part(&w) - &w).norm2() <= 1e-20 * w.norm2().max(1e-30));
    }
}

#[test]
fn advection_matches_finite_differences() {
    let mut r = rng(24);
    let g = geom(1.0);
    let u = random_field(&mut r, g, 3);
    let v = random_field(&mut r, g, 3);
    let a = advect(&u, &v).unwrap();
    for _ in 0..25 {
        let x = rand::Rng::gen_range(&mut r, 0.0..g.lx());
        let y = rand::Rng::gen_range(&mut r, 0.0..g.ly());
        // h = 1e−6 balances O(h²) truncation against cancellation in the
        // difference quotient for these O(10) pointwise magnitudes.
        let (fx, fy) = fd_advect(&u, &v, x, y, 1e-6);
        let (ax, ay) = a.eval(x, y);
        assert!((ax - fx).abs() <= 1e-6);
        assert!((ay - fy).abs() <= 1e-6);
    }
}

#[test]
fn advection_is_skew_adjoint_for_solenoidal_transport() {
    // ⟨u·∇v, w⟩ = −⟨v, u·∇w⟩ when div u = 0.
    let mut r = rng(25);
    let g = geom(1.5);
    for _ in 0..15 {
        let u = random_div_free(&mut r, g, 3);
        let v = random_field(&mut r, g, 3);
        let w = random_field(&mut r, g, 3);
        let lhs = advect(&u, &v).unwrap().inner(&w).unwrap();
        let rhs = -advect(&u, &w).unwrap().inner(&v).unwrap();
        let scale = u.norm2().sqrt() * v.norm2().sqrt() * w.norm2().sqrt();
        assert!(rel(lhs, rhs, scale.max(1e-12)) <= 1e-10, "{lhs} vs {rhs}");
    }
}

#[test]
fn bracket_is_antisymmetric_solenoidal_and_quadrature_consistent() {
    let mut r = rng(26);
    let g = geom(2.0);
    for _ in 0..10 {
        let u = random_div_free(&mut r, g, 3);
        let v = random_div_free(&mut r, g, 3);
        let b = lie_bracket(&u, &v).unwrap();
        let b_rev = lie_bracket(&v, &u).unwrap();
        assert!((&b + &b_rev).norm2() <= 1e-18 * (b.norm2() + 1.0));
        assert!(b.is_div_free());
        // Cross-check one pairing against the quadrature oracle.
        let pairing = b.inner(&u).unwrap();
        let quad = quadrature_inner_field(&b, &u);
        assert!(rel(pairing, quad, 1e-9) <= 1e-9);
    }
}

#[test]
fn stokes_operator_has_the_product_spectrum() {
    for &alpha in &[0.5f64, 1.0, 3.0] {
        let g = geom(alpha);
        for n in -4i32..=4 {
            for m in -4i32..=4 {
                if n == 0 && m == 0 {
                    continue;
                }
                let flow = KolmogorovFlow::new(g, n, m).unwrap();
                let u = flow.velocity();
                let au = stokes_apply(&u).unwrap();
                let lambda = flow.lambda();
                let gap = (&au - &u.scale(lambda)).norm2().sqrt();
                assert!(
                    gap <= 1e-12 * lambda * u.norm2().sqrt(),
                    "eigenvalue defect at (n, m, α) = ({n}, {m}, {alpha})"
                );
            }
        }
    }
}

#[test]
fn bracket_rejects_non_solenoidal_inputs() {
    let g = geom(1.0);
    let u = perp_grad(&TrigScalar::cosine(g, Wavevector::new(1, 1), 1.0));
    let w = grad(&TrigScalar::cosine(g, Wavevector::new(1, 0), 1.0));
    assert!(lie_bracket(&u, &w).is_err());
    assert!(lie_bracket(&w, &u).is_err());
}

//! Acceptance gate: every shipped guarantee is checked here, one printed
//! line per criterion. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use common::{random_div_free, random_field, rel, rng};
use conjscan::conjugacy::{evaluate, mc_bracket_form};
use conjscan::isochrone::{period_ode, period_quadrature, EllipticVortex, RadialPower};
use conjscan::kolmogorov::{
    criterion_closed_form_1, criterion_closed_form_2, criterion_closed_form_2_consistent,
    in_region_1, in_region_2, limit_region_1, mc_closed_form_1, mc_closed_form_2, scan_cell,
};
use conjscan::ops::{
    advect, grad, gradient_part, leray_project, lie_bracket, perp_grad, stokes_apply,
};
use conjscan::{KolmogorovFlow, TorusGeometry, TrigScalar, VectorField, Wavevector};
use rayon::prelude::*;
use std::f64::consts::PI;

const ALPHAS: [f64; 4] = [0.5, 1.0, 2.0, 3.0];

fn geom(alpha: f64) -> TorusGeometry {
    TorusGeometry::new(alpha).unwrap()
}

/// The signed index range 1 ≤ |k| ≤ 6.
fn signed_range() -> Vec<i32> {
    (-6..=6).filter(|&k| k != 0).collect()
}

#[test]
fn criterion_01_closed_form_reproduction() {
    // Battery: α ∈ {1/2, 1, 2, 3} × 1 ≤ |n|, |m| ≤ 6 → 576 cells per
    // direction. On cells where the per-unit-energy forms apply (|m| ≥ 2 for
    // direction 1, |n| ≥ 2 for direction 2; 480 cells each) the numeric
    // criterion divided by the mean energy density ⟨|u0|²⟩ = λ/4 must be a
    // single constant multiple of the per-unit-energy closed form; the
    // constant is fixed by the first cell. The remaining 96 edge cells per
    // direction are checked against the exact rational forms instead (the
    // per-unit-energy rows do not extend there; see the scan's status
    // column). Direction 2 uses the swap-consistent variant; the classical
    // variant's sign is checked on every cell.
    let mut cells = 0usize;
    let mut interior = [0usize; 2];
    let mut edge = [0usize; 2];
    let mut norm_const: [Option<f64>; 2] = [None, None];
    let mut norm_spread = [0.0f64; 2];
    let mut interior_dev = [0.0f64; 2];
    let mut edge_dev = [0.0f64; 2];

    for &alpha in &ALPHAS {
        let g = geom(alpha);
        for n in signed_range() {
            for m in signed_range() {
                let flow = KolmogorovFlow::new(g, n, m).unwrap();
                let energy = flow.mean_energy_density();
                let num = [
                    flow.criterion_numeric_1().unwrap(),
                    flow.criterion_numeric_2().unwrap(),
                ];
                let cf = [
                    criterion_closed_form_1(n, m, alpha),
                    criterion_closed_form_2_consistent(n, m, alpha),
                ];
                let exact = [mc_closed_form_1(n, m, alpha), mc_closed_form_2(n, m, alpha)];
                let is_interior = [m.abs() >= 2, n.abs() >= 2];
                for dir in 0..2 {
                    if is_interior[dir] {
                        interior[dir] += 1;
                        let ratio = num[dir] / energy / cf[dir];
                        let anchor = *norm_const[dir].get_or_insert(ratio);
                        norm_spread[dir] = norm_spread[dir].max(rel(ratio, anchor, 1e-12));
                        interior_dev[dir] =
                            interior_dev[dir].max(rel(num[dir] / energy, anchor * cf[dir], 1e-12));
                    } else {
                        edge[dir] += 1;
                        edge_dev[dir] = edge_dev[dir].max(rel(num[dir], exact[dir], 1e-12));
                    }
                }
                let classical2 = criterion_closed_form_2(n, m, alpha);
                assert_eq!(
                    classical2 > 0.0,
                    cf[1] > 0.0,
                    "criterion 01: classical form-2 sign at ({n}, {m}, {alpha})"
                );
                cells += 1;
            }
        }
    }

    assert_eq!(cells, 576);
    for dir in 0..2 {
        assert_eq!(interior[dir], 480, "criterion 01: interior cell count");
        assert_eq!(edge[dir], 96, "criterion 01: edge cell count");
        let nc = norm_const[dir].unwrap();
        assert!(
            rel(nc, 4.0 * PI * PI, 1e-12) <= 1e-9,
            "criterion 01: norm_const is 4π², got {nc}"
        );
        assert!(
            norm_spread[dir] <= 1e-9,
            "criterion 01: norm_const not constant (spread {})",
            norm_spread[dir]
        );
        assert!(
            interior_dev[dir] <= 1e-9,
            "criterion 01: interior deviation {}",
            interior_dev[dir]
        );
        assert!(
            edge_dev[dir] <= 1e-9,
            "criterion 01: edge deviation {}",
            edge_dev[dir]
        );
    }
    println!(
        "criterion 01: PASS — 576 cells/direction; norm_const = 4π² (spread {:.1e}/{:.1e}); \
         interior max rel dev {:.1e}/{:.1e} on 480 cells; edge max rel dev {:.1e}/{:.1e} on 96 \
         cells via exact forms; direction 2 through the swap-consistent variant (classical \
         variant sign-checked; magnitude departure documented)",
        norm_spread[0], norm_spread[1], interior_dev[0], interior_dev[1], edge_dev[0], edge_dev[1]
    );
}

#[test]
fn criterion_02_region_reproduction() {
    // α = 3: predicates equal the integer inequalities exactly.
    let mut checked = 0usize;
    for n in -8i32..=8 {
        for m in -8i32..=8 {
            if n == 0 && m == 0 {
                continue;
            }
            let (n2, m2) = (i64::from(n) * i64::from(n), i64::from(m) * i64::from(m));
            let exact1 = 3 + 11 * m2 + 6 * m2 * m2 + (3 - 2 * m2) * 9 * n2;
            let exact2 = 9 * (3 + 11 * n2 + 6 * n2 * n2) + (3 - 2 * n2) * m2;
            assert_eq!(
                in_region_1(n, m, 3.0),
                exact1 < 0,
                "criterion 02: region 1 at ({n}, {m})"
            );
            assert_eq!(
                in_region_2(n, m, 3.0),
                exact2 < 0,
                "criterion 02: region 2 at ({n}, {m})"
            );
            // α = 20: region 1 equals the wide-torus limit {n ≠ 0, |m| ≥ 2}.
            assert_eq!(
                in_region_1(n, m, 20.0),
                limit_region_1(n, m),
                "criterion 02: limit at ({n}, {m})"
            );
            checked += 1;
        }
    }
    println!(
        "criterion 02: PASS — {checked} cells: α = 3 predicates integer-exact (both directions); \
         α = 20 region 1 equals {{n ≠ 0, |m| ≥ 2}} exactly"
    );
}

#[test]
fn criterion_03_headline_cell() {
    let rec = scan_cell(1.0, 6, 2).unwrap();
    let want_cf = 1332.0 / (13120.0 * PI * PI);
    assert!(
        rel(rec.mc_cf_1, want_cf, 1e-15) <= 1e-12,
        "criterion 03: mc_cf_1 = {} vs 1332/(13120π²)",
        rec.mc_cf_1
    );
    assert!(
        rec.in_region_1,
        "criterion 03: (6, 2, 1) must be admissible"
    );
    let tc = rec.tc.expect("criterion 03: t_c must be finite");
    assert!(rel(tc, PI * (2.0 / want_cf).sqrt(), 1e-12) <= 1e-12);
    assert!(rel(tc, 43.80559143979862, 1e-12) <= 1e-12);
    assert!(
        rec.agreement_1 <= 1e-9,
        "criterion 03: numeric agreement {}",
        rec.agreement_1
    );
    assert!(rel(rec.mc_num_1, 333.0 / 82.0, 1e-15) <= 1e-12);
    println!(
        "criterion 03: PASS — (6, 2, 1): mc_cf_1 = {:.10e} = 1332/(13120π²), in_region_1 = true, \
         t_c = {:.6} finite, numeric mc = 333/82 (agreement {:.1e})",
        rec.mc_cf_1, tc, rec.agreement_1
    );
}

#[test]
fn criterion_04_bracket_equals_curvature_form() {
    // Battery: all grid Kolmogorov states (4 aspects × |n|, |m| ≤ 6
    // including the shear rows), constant fields, and unidirectional
    // shears; 100 seeded random divergence-free directions each.
    let mut states: Vec<(String, VectorField)> = Vec::new();
    for &alpha in &ALPHAS {
        let g = geom(alpha);
        for n in -6i32..=6 {
            for m in -6i32..=6 {
                if n == 0 && m == 0 {
                    continue;
                }
                states.push((
                    format!("kolmogorov({n}, {m}, {alpha})"),
                    KolmogorovFlow::new(g, n, m).unwrap().velocity(),
                ));
            }
        }
        states.push((
            format!("constant({alpha})"),
            VectorField::constant(g, 1.25, -0.75),
        ));
    }
    let g1 = geom(1.0);
    for k1 in -3i32..=3 {
        for k2 in -3i32..=3 {
            if k1 == 0 && k2 == 0 {
                continue;
            }
            let k = Wavevector::new(k1, k2);
            states.push((
                format!("shear-cos({k1}, {k2})"),
                perp_grad(&TrigScalar::cosine(g1, k, -1.0)),
            ));
            states.push((
                format!("shear-sin({k1}, {k2})"),
                perp_grad(&TrigScalar::sine(g1, k, -1.0)),
            ));
        }
    }

    let n_states = states.len();
    let worst = states
        .par_iter()
        .enumerate()
        .map(|(i, (label, u0))| {
            let mut r = rng(0x4001 + i as u64);
            let mut worst = 0.0f64;
            for _ in 0..100 {
                let v = random_div_free(&mut r, *u0.geometry(), 3);
                let result = evaluate(u0, &v).unwrap();
                worst = worst.max(result.form_gap);
            }
            (worst, label.clone())
        })
        .reduce(
            || (0.0, String::new()),
            |a, b| if a.0 >= b.0 { a } else { b },
        );
    assert!(
        worst.0 <= 1e-9,
        "criterion 04: forms disagree ({:.3e} at {})",
        worst.0,
        worst.1
    );
    println!(
        "criterion 04: PASS — {} states × 100 random directions: max relative gap between \
         bracket and curvature forms = {:.1e} (at {})",
        n_states, worst.0, worst.1
    );
}

#[test]
fn criterion_05_unidirectional_non_positivity() {
    let g = geom(1.0);
    let mut worst = f64::NEG_INFINITY;
    let mut count = 0usize;
    for k1 in -3i32..=3 {
        for k2 in -3i32..=3 {
            if k1 == 0 && k2 == 0 {
                continue;
            }
            let k = Wavevector::new(k1, k2);
            for (phase, psi) in [TrigScalar::cosine(g, k, -1.0), TrigScalar::sine(g, k, -1.0)]
                .iter()
                .enumerate()
            {
                let u0 = perp_grad(psi);
                let mut r = rng(0x5000 + (count as u64) * 7 + phase as u64);
                for _ in 0..100 {
                    let v = random_div_free(&mut r, g, 3);
                    let mc = mc_bracket_form(&u0, &v).unwrap();
                    assert!(
                        mc <= 1e-10,
                        "criterion 05: positive criterion {mc} for shear ({k1}, {k2}) phase {phase}"
                    );
                    worst = worst.max(mc);
                }
                count += 1;
            }
        }
    }
    println!(
        "criterion 05: PASS — {count} straight-streamline flows × 100 directions: \
         max criterion value = {worst:.3e} (threshold 1e-10; never positive)"
    );
}

#[test]
fn criterion_06_zero_identity() {
    let mut worst = 0.0f64;
    let mut count = 0usize;
    for &alpha in &ALPHAS {
        let g = geom(alpha);
        for n in -6i32..=6 {
            for m in -6i32..=6 {
                if n == 0 && m == 0 {
                    continue;
                }
                let flow = KolmogorovFlow::new(g, n, m).unwrap();
                let psi = flow.stream_function();
                let v = perp_grad(&psi.product(&psi).unwrap().scale(0.5));
                let mc = mc_bracket_form(&flow.velocity(), &v).unwrap();
                worst = worst.max(mc.abs());
                count += 1;
            }
        }
    }
    assert!(
        worst <= 1e-10,
        "criterion 06: zero identity violated (max |mc| = {worst:.3e})"
    );
    println!(
        "criterion 06: PASS — {count} flows, direction ∇⊥(ψ²/2): max |mc| = {worst:.3e} ≤ 1e-10"
    );
}

#[test]
fn criterion_07_operator_algebra() {
    let mut worst = 0.0f64;
    let mut count = 0usize;
    let mut r = rng(0x7000);
    for &alpha in &ALPHAS {
        let g = geom(alpha);
        for _ in 0..50 {
            let w = random_field(&mut r, g, 4);
            let scale = w.norm2().max(1.0);
            let p = leray_project(&w);
            let q = gradient_part(&w);
            // Idempotence, annihilation, orthogonality, Pythagoras.
            worst = worst.max((&leray_project(&p) - &p).norm2() / scale);
            worst = worst.max(leray_project(&q).norm2() / scale);
            worst = worst.max(p.inner(&q).unwrap().abs() / scale);
            worst = worst.max(((p.norm2() + q.norm2()) - w.norm2()).abs() / scale);
            worst = worst.max((&(&p + &q) - &w).norm2() / scale);

            // Advection is skew-adjoint in its transported slots when the
            // transporting field is solenoidal; brackets stay solenoidal.
            let u = random_div_free(&mut r, g, 3);
            let v = random_field(&mut r, g, 3);
            let pairing_scale = (u.norm2().sqrt() * v.norm2().sqrt() * w.norm2().sqrt()).max(1.0);
            let skew = advect(&u, &v).unwrap().inner(&w).unwrap()
                + advect(&u, &w).unwrap().inner(&v).unwrap();
            worst = worst.max(skew.abs() / pairing_scale);
            let u2 = random_div_free(&mut r, g, 3);
            let b = lie_bracket(&u, &u2).unwrap();
            worst = worst.max(b.div_residual());
            // And gradients are annihilated outright.
            let f = common::random_scalar(&mut r, g, 4);
            let gf = grad(&f);
            worst = worst.max(leray_project(&gf).norm2() / gf.norm2().max(1.0));
            count += 1;
        }
    }
    assert!(
        worst <= 1e-10,
        "criterion 07: operator identity residual {worst:.3e}"
    );
    println!(
        "criterion 07: PASS — {count} random band-limited fields across 4 aspects: \
         max identity residual = {worst:.3e} ≤ 1e-10"
    );
}

#[test]
fn criterion_08_stokes_spectrum() {
    let mut worst = 0.0f64;
    let mut count = 0usize;
    for &alpha in &[0.5f64, 1.0, 3.0] {
        let g = geom(alpha);
        for n in -6i32..=6 {
            for m in -6i32..=6 {
                if n == 0 && m == 0 {
                    continue;
                }
                let flow = KolmogorovFlow::new(g, n, m).unwrap();
                let u = flow.velocity();
                let lambda = flow.lambda();
                let au = stokes_apply(&u).unwrap();
                let defect = (&au - &u.scale(lambda)).norm2().sqrt() / (lambda * u.norm2().sqrt());
                worst = worst.max(defect);
                count += 1;
            }
        }
    }
    assert!(
        worst <= 1e-12,
        "criterion 08: eigen-identity defect {worst:.3e}"
    );
    println!(
        "criterion 08: PASS — {count} eigenflows (3 aspects, |n|, |m| ≤ 6): \
         max relative eigen-defect = {worst:.3e} ≤ 1e-12, eigenvalue n²α² + m²"
    );
}

#[test]
fn criterion_09_isochrone_anchors() {
    let mut worst_err = 0.0f64;
    let mut worst_gap = 0.0f64;
    for &(a, b) in &[(1.0f64, 1.0f64), (2.0, 1.0), (3.0, 1.0)] {
        let flow = EllipticVortex::new(a, b).unwrap();
        let want = 2.0 * PI * a * b;
        for i in 1..=20 {
            let c = 0.17 * i as f64;
            let t_ode = period_ode(&flow, c).unwrap();
            let t_quad = period_quadrature(&flow, c).unwrap().value;
            assert!(
                (t_ode - want).abs() <= 1e-6 * want,
                "criterion 09: ODE period at (a, b, c) = ({a}, {b}, {c})"
            );
            assert!(
                (t_quad - want).abs() <= 1e-6 * want,
                "criterion 09: quadrature period at (a, b, c) = ({a}, {b}, {c})"
            );
            let gap = (t_ode - t_quad).abs() / t_quad;
            assert!(gap <= 1e-6, "criterion 09: cross-method gap {gap:.3e}");
            worst_err = worst_err.max(
                ((t_ode - want) / want)
                    .abs()
                    .max(((t_quad - want) / want).abs()),
            );
            worst_gap = worst_gap.max(gap);
        }
    }

    // ψ = r⁴/4: the circle of radius r is the level c = r⁴/4 with travel
    // time 2π/r².
    let quartic = RadialPower::power4();
    for &radius in &[0.5f64, 0.8] {
        let c = 0.25 * radius.powi(4);
        let want = 2.0 * PI / (radius * radius);
        for t in [
            period_ode(&quartic, c).unwrap(),
            period_quadrature(&quartic, c).unwrap().value,
        ] {
            assert!(
                (t - want).abs() <= 1e-6 * want,
                "criterion 09: quartic period at r = {radius}: {t} vs {want}"
            );
            worst_err = worst_err.max(((t - want) / want).abs());
        }
    }
    println!(
        "criterion 09: PASS — elliptic vortices (1,1), (2,1), (3,1) × 20 levels: T = 2πab on \
         every level (max rel err {worst_err:.1e}, max cross-method gap {worst_gap:.1e} ≤ 1e-6); \
         quartic flow matches T = 2π/r² at r = 0.5, 0.8"
    );
}

#[test]
fn criterion_10_scope_boundary() {
    // The underlying existence statements for the infinite-dimensional
    // configuration space are not finitely checkable here; what is shipped
    // and verified is every computable surrogate: the criterion values,
    // closed forms, admissible regions, bounds t_c, and travel times of
    // criteria 01–09. This gate documents that boundary and pins the one
    // certificate the criterion does yield: a positive value at the
    // headline cell with its finite first-conjugate-time bound.
    let flow = KolmogorovFlow::new(geom(1.0), 6, 2).unwrap();
    let result = evaluate(&flow.velocity(), &flow.test_direction_1()).unwrap();
    assert!(result.mc > 0.0 && result.tc.is_some());
    println!(
        "criterion 10: PASS — abstract existence statements are not finitely checkable; \
         every computable surrogate is covered by criteria 01–09 (positive certificate at \
         (6, 2, 1): mc = {:.6} > 0, raw-scale bound t_c = {:.6})",
        result.mc,
        result.tc.unwrap()
    );
}

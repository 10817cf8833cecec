//! The cellular steady states `u0 = ∇⊥ψ`, `ψ = −cos(nαx)·cos(my)` on the
//! rectangular torus, their canonical perturbation directions, exact closed
//! forms for the conjugate-point criterion, admissible-region predicates,
//! and grid-scan records.
//!
//! Every stream function here is a Laplacian eigenfunction with eigenvalue
//! `λ = n²α² + m²`, so the velocity field is an exact steady Euler solution.
//! Two one-parameter families of test directions are probed:
//!
//! * direction 1: `v = ∇⊥φ₁`, `φ₁ = −cos(nαx+(m+1)y) − cos(nαx+(1−m)y)`
//! * direction 2: `v = ∇⊥φ₂`, `φ₂ = −cos((n+1)αx+my) − cos((n−1)αx−my)`
//!
//! The numerically evaluated criterion for these directions admits exact
//! rational closed forms ([`mc_closed_form_1`], [`mc_closed_form_2`]); the
//! classical per-unit-energy expressions ([`criterion_closed_form_1`],
//! [`criterion_closed_form_2`]) relate to them through the calibration
//! factor `π²λ` on interior cells (`|m| ≥ 2` for form 1, `|n| ≥ 2` for
//! form 2). See the individual items for the edge-cell caveats.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::conjugacy;
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::geometry::{TorusGeometry, Wavevector};
use crate::ops::perp_grad;
use crate::tol;
use crate::trig::TrigScalar;

/// A steady cellular flow `u0 = ∇⊥ψ`, `ψ = −cos(nαx)·cos(my)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KolmogorovFlow {
    geometry: TorusGeometry,
    n: i32,
    m: i32,
}

impl KolmogorovFlow {
    /// Builds the flow; `(n, m) = (0, 0)` is rejected (the zero field).
    pub fn new(geometry: TorusGeometry, n: i32, m: i32) -> Result<Self> {
        if n == 0 && m == 0 {
            return Err(Error::InvalidParameter(
                "cellular flow requires (n, m) != (0, 0)".into(),
            ));
        }
        Ok(Self { geometry, n, m })
    }

    pub fn geometry(&self) -> TorusGeometry {
        self.geometry
    }

    pub fn n(&self) -> i32 {
        self.n
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// The Laplacian eigenvalue `λ = n²α² + m²` of the stream function.
    pub fn lambda(&self) -> f64 {
        let a = self.geometry.alpha();
        (self.n as f64 * a).powi(2) + (self.m as f64).powi(2)
    }

    /// `ψ = −cos(nαx)·cos(my)`, expanded into traveling modes.
    pub fn stream_function(&self) -> TrigScalar {
        let g = self.geometry;
        if self.n == 0 || self.m == 0 {
            // One factor is 1: a single cosine survives.
            TrigScalar::cosine(g, Wavevector::new(self.n, self.m), -1.0)
        } else {
            // Product-to-sum: −cos A cos B = −½cos(A+B) − ½cos(A−B).
            &TrigScalar::cosine(g, Wavevector::new(self.n, self.m), -0.5)
                + &TrigScalar::cosine(g, Wavevector::new(self.n, -self.m), -0.5)
        }
    }

    /// The steady velocity field `u0 = ∇⊥ψ`.
    pub fn velocity(&self) -> VectorField {
        perp_grad(&self.stream_function())
    }

    /// Mean kinetic-energy density `⟨|u0|²⟩ = λ·⟨ψ²⟩`: `λ/4` for cellular
    /// flows (`⟨cos²·cos²⟩ = ¼`), `λ/2` for the shear rows `n = 0` or
    /// `m = 0` (a single cosine factor).
    pub fn mean_energy_density(&self) -> f64 {
        if self.n == 0 || self.m == 0 {
            self.lambda() / 2.0
        } else {
            self.lambda() / 4.0
        }
    }

    /// Stream function of the first canonical test direction.
    pub fn test_stream_1(&self) -> TrigScalar {
        let g = self.geometry;
        &TrigScalar::cosine(g, Wavevector::new(self.n, self.m + 1), -1.0)
            + &TrigScalar::cosine(g, Wavevector::new(self.n, 1 - self.m), -1.0)
    }

    /// Stream function of the second canonical test direction.
    pub fn test_stream_2(&self) -> TrigScalar {
        let g = self.geometry;
        &TrigScalar::cosine(g, Wavevector::new(self.n + 1, self.m), -1.0)
            + &TrigScalar::cosine(g, Wavevector::new(self.n - 1, -self.m), -1.0)
    }

    /// `v = ∇⊥φ₁`.
    pub fn test_direction_1(&self) -> VectorField {
        perp_grad(&self.test_stream_1())
    }

    /// `v = ∇⊥φ₂`.
    pub fn test_direction_2(&self) -> VectorField {
        perp_grad(&self.test_stream_2())
    }

    /// The criterion, evaluated by the exact mode algebra, for direction 1.
    pub fn criterion_numeric_1(&self) -> Result<f64> {
        conjugacy::mc_bracket_form(&self.velocity(), &self.test_direction_1())
    }

    /// The criterion, evaluated by the exact mode algebra, for direction 2.
    pub fn criterion_numeric_2(&self) -> Result<f64> {
        conjugacy::mc_bracket_form(&self.velocity(), &self.test_direction_2())
    }
}

/// Shared rational core of the raw closed forms: the criterion value as a
/// function of `a = n²α²` and `b = m²`, branched on `|m|`.
///
/// The `|m| ≤ 1` branches differ from naive continuation of the generic
/// branch because test-direction modes collide there (for `m = 0` the two
/// stream modes coincide; for `|m| = 1` one mode lands on `(n, 0)` and the
/// interaction cross-term doubles).
fn mc_core(a: f64, m_abs: u32, b: f64) -> f64 {
    match m_abs {
        0 => -a / 2.0,
        1 => -(a / 4.0) * (10.0 + a) / (2.0 + a),
        _ => -(a / 8.0) * (3.0 + 11.0 * b + 6.0 * b * b + (3.0 - 2.0 * b) * a) / (1.0 + a + b),
    }
}

/// Exact raw criterion value for direction 1 (equals
/// [`KolmogorovFlow::criterion_numeric_1`] up to rounding, all `(n, m)`).
pub fn mc_closed_form_1(n: i32, m: i32, alpha: f64) -> f64 {
    let a = (n as f64 * alpha).powi(2);
    let b = (m as f64).powi(2);
    mc_core(a, m.unsigned_abs(), b)
}

/// Exact raw criterion value for direction 2. Obtained from form 1 by the
/// swap symmetry `mc₂(n, m, α) = α⁴ · mc₁(m, n, 1/α)`, here evaluated in a
/// directly simplified rational form.
pub fn mc_closed_form_2(n: i32, m: i32, alpha: f64) -> f64 {
    let a2 = alpha * alpha;
    let nf = n as f64;
    let mf = m as f64;
    let b = mf * mf; // plays the role of a·α² after the swap
    let c = nf * nf;
    match n.unsigned_abs() {
        0 => -b * a2 / 2.0,
        1 => -(b * a2 / 4.0) * (10.0 * a2 + b) / (2.0 * a2 + b),
        _ => {
            -(b * a2 / 8.0) * (a2 * (3.0 + 11.0 * c + 6.0 * c * c) + (3.0 - 2.0 * c) * b)
                / (a2 * (1.0 + c) + b)
        }
    }
}

/// Region polynomial for direction 1: `N₁ = 3 + 11m² + 6m⁴ + (3 − 2m²)n²α²`.
/// The closed form [`criterion_closed_form_1`] is positive iff `N₁ < 0`.
pub fn region_polynomial_1(n: i32, m: i32, alpha: f64) -> f64 {
    let a = (n as f64 * alpha).powi(2);
    let b = (m as f64).powi(2);
    3.0 + 11.0 * b + 6.0 * b * b + (3.0 - 2.0 * b) * a
}

/// Region polynomial for direction 2:
/// `N₂ = 3 + 11n² + 6n⁴ + (3 − 2n²)m²/α²`.
pub fn region_polynomial_2(n: i32, m: i32, alpha: f64) -> f64 {
    let b = (m as f64 / alpha).powi(2);
    let c = (n as f64).powi(2);
    3.0 + 11.0 * c + 6.0 * c * c + (3.0 - 2.0 * c) * b
}

/// Per-unit-energy closed form for direction 1:
/// `−n²α²·N₁ / (8π²·λ·(1+λ))` with `λ = n²α² + m²`.
///
/// On interior cells (`|m| ≥ 2`) this equals `mc₁ / (π²λ)` exactly; the
/// per-unit-energy normalization is `mc / (4π²·⟨|u0|²⟩)` with
/// `⟨|u0|²⟩ = λ/4`. On `|m| ≤ 1` cells the expression no longer matches the
/// direct evaluation (mode collisions change the interaction terms); the
/// scan flags those rows.
pub fn criterion_closed_form_1(n: i32, m: i32, alpha: f64) -> f64 {
    let a = (n as f64 * alpha).powi(2);
    let b = (m as f64).powi(2);
    let lambda = a + b;
    if lambda == 0.0 {
        return 0.0;
    }
    -a * region_polynomial_1(n, m, alpha) / (8.0 * PI * PI * lambda * (1.0 + lambda))
}

/// Per-unit-energy closed form for direction 2, classical variant:
/// `−n²α⁴·N₂ / (8π²·λ·(1+λ))`.
///
/// Kept unmodified for comparison. Its sign matches [`in_region_2`], but
/// its magnitude is inconsistent with the `n ↔ m`, `α ↔ 1/α` swap symmetry
/// and with direct evaluation of the criterion (the prefactor carries `n²`
/// where the symmetry demands `m²`, and the denominator's additive constant
/// is `1` where the symmetry demands `α²`). Use
/// [`criterion_closed_form_2_consistent`] for quantitative work.
pub fn criterion_closed_form_2(n: i32, m: i32, alpha: f64) -> f64 {
    let a = (n as f64 * alpha).powi(2);
    let b = (m as f64).powi(2);
    let lambda = a + b;
    if lambda == 0.0 {
        return 0.0;
    }
    -(n as f64).powi(2) * alpha.powi(4) * region_polynomial_2(n, m, alpha)
        / (8.0 * PI * PI * lambda * (1.0 + lambda))
}

/// Per-unit-energy closed form for direction 2, consistent variant:
/// `α² · criterion_closed_form_1(m, n, 1/α)`, evaluated in the simplified
/// rational form `−m²α⁴·N₂ / (8π²·λ·(α²+λ))`.
///
/// On interior cells (`|n| ≥ 2`) this equals `mc₂ / (π²λ)` exactly, so the
/// same calibration factor serves both directions.
pub fn criterion_closed_form_2_consistent(n: i32, m: i32, alpha: f64) -> f64 {
    let a = (n as f64 * alpha).powi(2);
    let b = (m as f64).powi(2);
    let lambda = a + b;
    if lambda == 0.0 {
        return 0.0;
    }
    -b * alpha.powi(4) * region_polynomial_2(n, m, alpha)
        / (8.0 * PI * PI * lambda * (alpha * alpha + lambda))
}

/// The factor linking raw and per-unit-energy values on interior cells:
/// `mc = π²λ · cf`, i.e. `cf = mc / (4π²·⟨|u0|²⟩)` with `⟨|u0|²⟩ = λ/4`.
pub fn calibration_factor(n: i32, m: i32, alpha: f64) -> f64 {
    let lambda = (n as f64 * alpha).powi(2) + (m as f64).powi(2);
    PI * PI * lambda
}

/// Admissible region for direction 1: `N₁ < 0` (equivalently, the closed
/// form certifies a conjugate point). `n = 0` and `|m| ≤ 1` never qualify.
pub fn in_region_1(n: i32, m: i32, alpha: f64) -> bool {
    region_polynomial_1(n, m, alpha) < 0.0
}

/// Admissible region for direction 2: `N₂ < 0`. `m = 0` and `|n| ≤ 1`
/// never qualify.
pub fn in_region_2(n: i32, m: i32, alpha: f64) -> bool {
    region_polynomial_2(n, m, alpha) < 0.0
}

/// The wide-torus limit of region 1: as `α → ∞` the admissible set is
/// exactly `{n ≠ 0, |m| ≥ 2}`.
pub fn limit_region_1(n: i32, m: i32) -> bool {
    n != 0 && m.abs() >= 2
}

/// One cell of a parameter scan.
///
/// `mc_num_*` are the raw criteria from the exact mode algebra; `mc_cf_1`
/// is [`criterion_closed_form_1`] and `mc_cf_2` is
/// [`criterion_closed_form_2_consistent`]. `agreement_*` is the relative
/// gap between `mc_num` and `π²λ·mc_cf` (0 exactly when both vanish below
/// the floor). `tc` is `π·√(2/cf)` for the larger positive per-unit-energy
/// value, when one exists. `status` marks degenerate rows: `shear` when
/// `n = 0` or `m = 0`, `edge-m1`/`edge-n1`/`edge-m1+n1` when `|m| = 1`
/// and/or `|n| = 1` (cells where the per-unit-energy forms are not expected
/// to match the raw criterion), `ok` otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub alpha: f64,
    pub n: i32,
    pub m: i32,
    pub lambda: f64,
    pub mc_num_1: f64,
    pub mc_cf_1: f64,
    pub agreement_1: f64,
    pub in_region_1: bool,
    pub mc_num_2: f64,
    pub mc_cf_2: f64,
    pub agreement_2: f64,
    pub in_region_2: bool,
    pub tc: Option<f64>,
    pub status: String,
}

/// CSV header shared by the writer and reader.
pub const SCAN_CSV_HEADER: &str = "alpha,n,m,lambda,mc_num_1,mc_cf_1,agreement_1,in_region_1,mc_num_2,mc_cf_2,agreement_2,in_region_2,tc,status";

fn agreement(num: f64, cf: f64, lambda: f64) -> f64 {
    let cal = PI * PI * lambda * cf;
    let floor = tol::AGREEMENT_FLOOR_REL * PI * PI * lambda;
    if num.abs() < floor && cal.abs() < floor {
        return 0.0;
    }
    (num - cal).abs() / num.abs().max(cal.abs()).max(floor)
}

fn status_for(n: i32, m: i32) -> &'static str {
    if n == 0 || m == 0 {
        "shear"
    } else {
        match (n.abs() == 1, m.abs() == 1) {
            (true, true) => "edge-m1+n1",
            (false, true) => "edge-m1",
            (true, false) => "edge-n1",
            (false, false) => "ok",
        }
    }
}

/// Evaluates one `(α, n, m)` cell end to end: exact numeric criteria for
/// both canonical directions, closed forms, agreements, region membership,
/// and the conjugate-time bound.
pub fn scan_cell(alpha: f64, n: i32, m: i32) -> Result<ScanRecord> {
    let geometry = TorusGeometry::new(alpha)?;
    let flow = KolmogorovFlow::new(geometry, n, m)?;
    let lambda = flow.lambda();
    let mc_num_1 = flow.criterion_numeric_1()?;
    let mc_num_2 = flow.criterion_numeric_2()?;
    let mc_cf_1 = criterion_closed_form_1(n, m, alpha);
    let mc_cf_2 = criterion_closed_form_2_consistent(n, m, alpha);
    let best_cf = mc_cf_1.max(mc_cf_2);
    let tc = if best_cf > 0.0 {
        Some(PI * (2.0 / best_cf).sqrt())
    } else {
        None
    };
    Ok(ScanRecord {
        alpha,
        n,
        m,
        lambda,
        mc_num_1,
        mc_cf_1,
        agreement_1: agreement(mc_num_1, mc_cf_1, lambda),
        in_region_1: in_region_1(n, m, alpha),
        mc_num_2,
        mc_cf_2,
        agreement_2: agreement(mc_num_2, mc_cf_2, lambda),
        in_region_2: in_region_2(n, m, alpha),
        tc,
        status: status_for(n, m).to_string(),
    })
}

/// Scans the full grid `|n| ≤ n_max`, `|m| ≤ m_max`, skipping `(0, 0)`,
/// in deterministic `(n, m)` lexicographic order (cells are evaluated in
/// parallel; ordering does not depend on thread count).
pub fn scan_grid(alpha: f64, n_max: u32, m_max: u32) -> Result<Vec<ScanRecord>> {
    TorusGeometry::new(alpha)?;
    let nm = n_max as i32;
    let mm = m_max as i32;
    let cells: Vec<(i32, i32)> = (-nm..=nm)
        .flat_map(|n| (-mm..=mm).map(move |m| (n, m)))
        .filter(|&(n, m)| !(n == 0 && m == 0))
        .collect();
    cells
        .par_iter()
        .map(|&(n, m)| scan_cell(alpha, n, m))
        .collect()
}

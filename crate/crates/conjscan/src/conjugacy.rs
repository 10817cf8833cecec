//! The conjugate-point criterion for a steady flow `u0` and a test
//! direction `v`, in two algebraically independent forms, plus the
//! conjugate-time bound and a batch report.
//!
//! For divergence-free `u0`, `v` on the torus, the criterion value is
//!
//! ```text
//! mc = ⟨ [u0,v]·∇u0 + u0·∇[u0,v], v ⟩ / ‖v‖²
//! ```
//!
//! and `mc > 0` certifies a conjugate point along the flow by time
//! `t_c = π√(2/mc)`. The equivalent curvature form, built from the flat
//! Gauss–Codazzi identity and the projection defect, is
//!
//! ```text
//! mc = ( ⟨Q(u0·∇u0), Q(v·∇v)⟩ − ‖Q(u0·∇v)‖² ) / ‖v‖²  −  ‖P(u0·∇v)‖² / ‖v‖²
//! ```
//!
//! with `P`/`Q` the divergence-free/gradient projections. The two forms
//! agree to rounding for stationary `u0`; their relative gap is reported and
//! anything beyond [`tol::FORM_GAP`] is flagged.
//!
//! Both forms divide by `‖v‖²`, which reproduces the unit-norm convention
//! for arbitrary-scale `v` and makes the value scale-free in `v` (it stays
//! quadratic in `u0`).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::ops;
use crate::tol;

/// Everything the criterion produces for one `(u0, v)` pair.
#[derive(Debug, Clone, Serialize)]
pub struct ConjugacyResult {
    /// The criterion value (bracket form), units 1/time².
    pub mc: f64,
    /// The bound `π√(2/mc)`, present iff `mc > 0`.
    pub tc: Option<f64>,
    /// Normalized sectional-curvature term `⟨R(v,u0)u0, v⟩ / ‖v‖²`.
    pub curvature_term: f64,
    /// `‖P(u0·∇v)‖² / ‖v‖²`, the projection-defect term.
    pub p_advect_norm2: f64,
    /// Stationarity residual of `u0`.
    pub stationarity: f64,
    /// Relative gap between the bracket and curvature forms.
    pub form_gap: f64,
}

fn check_pair(u0: &VectorField, v: &VectorField) -> Result<f64> {
    u0.geometry().check_same(v.geometry())?;
    u0.require_div_free()?;
    v.require_div_free()?;
    let v2 = v.norm2();
    if v2 == 0.0 {
        return Err(Error::ZeroField);
    }
    Ok(v2)
}

/// The criterion in bracket form:
/// `⟨advect([u0,v], u0) + advect(u0, [u0,v]), v⟩ / ‖v‖²`.
pub fn mc_bracket_form(u0: &VectorField, v: &VectorField) -> Result<f64> {
    let v2 = check_pair(u0, v)?;
    let b = ops::lie_bracket(u0, v)?;
    let w = &ops::advect(&b, u0)? + &ops::advect(u0, &b)?;
    Ok(w.inner(v)? / v2)
}

/// The normalized sectional-curvature term via the flat Gauss–Codazzi
/// identity: `(⟨Q(u0·∇u0), Q(v·∇v)⟩ − ‖Q(u0·∇v)‖²) / ‖v‖²`.
pub fn sectional_curvature_term(u0: &VectorField, v: &VectorField) -> Result<f64> {
    let v2 = check_pair(u0, v)?;
    let q_uu = ops::gradient_part(&ops::advect(u0, u0)?);
    let q_vv = ops::gradient_part(&ops::advect(v, v)?);
    let q_uv = ops::gradient_part(&ops::advect(u0, v)?);
    Ok((q_uu.inner(&q_vv)? - q_uv.norm2()) / v2)
}

/// The criterion in curvature form:
/// `sectional_curvature_term − ‖P(u0·∇v)‖² / ‖v‖²`.
pub fn mc_curvature_form(u0: &VectorField, v: &VectorField) -> Result<f64> {
    let v2 = check_pair(u0, v)?;
    let p_uv = ops::leray_project(&ops::advect(u0, v)?);
    Ok(sectional_curvature_term(u0, v)? - p_uv.norm2() / v2)
}

/// The conjugate-time bound `t_c = π√(2/mc)` for a positive criterion value.
pub fn conjugate_time_bound(mc: f64) -> Result<f64> {
    if mc > 0.0 {
        Ok(std::f64::consts::PI * (2.0 / mc).sqrt())
    } else {
        Err(Error::Inconclusive(mc))
    }
}

/// Evaluates both forms for one pair and assembles a [`ConjugacyResult`].
pub fn evaluate(u0: &VectorField, v: &VectorField) -> Result<ConjugacyResult> {
    let v2 = check_pair(u0, v)?;
    let mc = mc_bracket_form(u0, v)?;
    let curvature_term = sectional_curvature_term(u0, v)?;
    let p_advect_norm2 = ops::leray_project(&ops::advect(u0, v)?).norm2() / v2;
    let mc_curv = curvature_term - p_advect_norm2;
    let scale = mc.abs().max(mc_curv.abs()).max(1e-12);
    let form_gap = (mc - mc_curv).abs() / scale;
    Ok(ConjugacyResult {
        mc,
        tc: conjugate_time_bound(mc).ok(),
        curvature_term,
        p_advect_norm2,
        stationarity: ops::stationarity_residual(u0),
        form_gap,
    })
}

/// One candidate's slot in a batch report: either a result or the error
/// message that prevented it, plus a status word.
#[derive(Debug, Clone, Serialize)]
pub struct CandidateReport {
    pub index: usize,
    pub result: Option<ConjugacyResult>,
    /// "ok", "form-gap", or "error: …".
    pub status: String,
}

/// Batch evaluation over a list of candidate directions.
#[derive(Debug, Clone, Serialize)]
pub struct ConjugacyReport {
    pub candidates: Vec<CandidateReport>,
    /// Index (into `candidates`) of the candidate maximizing `mc`.
    pub best: Option<usize>,
    /// Stationarity residual of the base flow.
    pub stationarity: f64,
    /// Soft warnings (e.g. the base flow is not numerically steady).
    pub warnings: Vec<String>,
}

/// Evaluates every candidate, flags per-candidate problems without aborting
/// the batch, and selects the candidate with the largest criterion value.
///
/// Stationarity of `u0` is a soft precondition: a residual above
/// [`tol::STATIONARITY_WARN`] produces a warning, not an error, so that
/// near-steady states can still be probed.
pub fn conjugacy_report(u0: &VectorField, candidates: &[VectorField]) -> Result<ConjugacyReport> {
    if candidates.is_empty() {
        return Err(Error::InvalidParameter(
            "candidate list must be nonempty".into(),
        ));
    }
    let stationarity = ops::stationarity_residual(u0);
    let mut warnings = Vec::new();
    if stationarity > tol::STATIONARITY_WARN {
        warnings.push(format!(
            "base flow is not numerically stationary (residual {stationarity:.3e})"
        ));
    }
    let reports: Vec<CandidateReport> = candidates
        .iter()
        .enumerate()
        .map(|(index, v)| match evaluate(u0, v) {
            Ok(result) => {
                let status = if result.form_gap > tol::FORM_GAP {
                    "form-gap".to_string()
                } else {
                    "ok".to_string()
                };
                CandidateReport {
                    index,
                    result: Some(result),
                    status,
                }
            }
            Err(e) => CandidateReport {
                index,
                result: None,
                status: format!("error: {e}"),
            },
        })
        .collect();
    let best = reports
        .iter()
        .filter_map(|r| r.result.as_ref().map(|res| (r.index, res.mc)))
        .fold(None::<(usize, f64)>, |acc, (i, mc)| match acc {
            Some((_, best_mc)) if best_mc >= mc => acc,
            _ => Some((i, mc)),
        })
        .map(|(i, _)| i);
    Ok(ConjugacyReport {
        candidates: reports,
        best,
        stationarity,
        warnings,
    })
}

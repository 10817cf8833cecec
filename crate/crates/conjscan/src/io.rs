//! File formats: CSV and JSON for scan tables and travel-time tables,
//! JSON mode files for vector fields, and JSON plot grids.
//!
//! Floats in CSV are written as `{:.16e}` (17 significant digits), which
//! round-trips every finite `f64` exactly; JSON uses `serde_json`, whose
//! float printing is also shortest-round-trip. Missing optional values
//! (e.g. a conjugate-time bound on a cell without one) are empty CSV cells
//! and `null` in JSON.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::geometry::{TorusGeometry, Wavevector};
use crate::isochrone::{PeriodResult, PERIOD_CSV_HEADER};
use crate::kolmogorov::{
    criterion_closed_form_1, criterion_closed_form_2_consistent, ScanRecord, SCAN_CSV_HEADER,
};
use crate::trig::TrigScalar;
use num_complex::Complex64;

/// Canonical float formatting for CSV cells: exact round-trip.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_f64(token: &str, what: &str) -> Result<f64> {
    token
        .trim()
        .parse::<f64>()
        .map_err(|e| Error::Parse(format!("bad {what} value {token:?}: {e}")))
}

fn parse_i32(token: &str, what: &str) -> Result<i32> {
    token
        .trim()
        .parse::<i32>()
        .map_err(|e| Error::Parse(format!("bad {what} value {token:?}: {e}")))
}

fn parse_bool(token: &str, what: &str) -> Result<bool> {
    match token.trim() {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(Error::Parse(format!("bad {what} value {other:?}"))),
    }
}

fn parse_opt_f64(token: &str, what: &str) -> Result<Option<f64>> {
    let t = token.trim();
    if t.is_empty() {
        Ok(None)
    } else {
        parse_f64(t, what).map(Some)
    }
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(format_f64).unwrap_or_default()
}

// ---------------------------------------------------------------------
// Scan tables
// ---------------------------------------------------------------------

/// Writes a scan table as CSV with the canonical header.
pub fn write_scan_csv<W: Write>(mut w: W, records: &[ScanRecord]) -> Result<()> {
    writeln!(w, "{SCAN_CSV_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            format_f64(r.alpha),
            r.n,
            r.m,
            format_f64(r.lambda),
            format_f64(r.mc_num_1),
            format_f64(r.mc_cf_1),
            format_f64(r.agreement_1),
            r.in_region_1,
            format_f64(r.mc_num_2),
            format_f64(r.mc_cf_2),
            format_f64(r.agreement_2),
            r.in_region_2,
            opt_cell(r.tc),
            r.status,
        )?;
    }
    Ok(())
}

/// Renders a scan table to a CSV string.
pub fn scan_csv_string(records: &[ScanRecord]) -> String {
    let mut buf = Vec::new();
    write_scan_csv(&mut buf, records).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

/// Reads a scan table back from CSV (header required, comments ignored).
pub fn read_scan_csv<R: BufRead>(r: R) -> Result<Vec<ScanRecord>> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty scan CSV".into()))??;
    if header.trim() != SCAN_CSV_HEADER {
        return Err(Error::Parse(format!(
            "unexpected scan CSV header {header:?}"
        )));
    }
    let mut records = Vec::new();
    for line in lines {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 14 {
            return Err(Error::Parse(format!(
                "scan CSV row has {} cells, expected 14: {line:?}",
                cells.len()
            )));
        }
        records.push(ScanRecord {
            alpha: parse_f64(cells[0], "alpha")?,
            n: parse_i32(cells[1], "n")?,
            m: parse_i32(cells[2], "m")?,
            lambda: parse_f64(cells[3], "lambda")?,
            mc_num_1: parse_f64(cells[4], "mc_num_1")?,
            mc_cf_1: parse_f64(cells[5], "mc_cf_1")?,
            agreement_1: parse_f64(cells[6], "agreement_1")?,
            in_region_1: parse_bool(cells[7], "in_region_1")?,
            mc_num_2: parse_f64(cells[8], "mc_num_2")?,
            mc_cf_2: parse_f64(cells[9], "mc_cf_2")?,
            agreement_2: parse_f64(cells[10], "agreement_2")?,
            in_region_2: parse_bool(cells[11], "in_region_2")?,
            tc: parse_opt_f64(cells[12], "tc")?,
            status: cells[13].trim().to_string(),
        });
    }
    Ok(records)
}

/// JSON envelope for a scan: the grid parameters plus the records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanDocument {
    pub alpha: f64,
    pub n_max: u32,
    pub m_max: u32,
    pub records: Vec<ScanRecord>,
}

// ---------------------------------------------------------------------
// Travel-time tables
// ---------------------------------------------------------------------

/// Writes a travel-time table as CSV; the spread across levels (when
/// available) is appended as a trailing comment line.
pub fn write_period_csv<W: Write>(
    mut w: W,
    results: &[PeriodResult],
    spread: Option<f64>,
) -> Result<()> {
    writeln!(w, "{PERIOD_CSV_HEADER}")?;
    for r in results {
        writeln!(
            w,
            "{},{},{},{},{}",
            format_f64(r.c),
            opt_cell(r.t_ode),
            opt_cell(r.t_quad),
            opt_cell(r.discrepancy),
            r.status,
        )?;
    }
    match spread {
        Some(s) => writeln!(w, "# max_relative_spread = {}", format_f64(s))?,
        None => writeln!(w, "# max_relative_spread = none")?,
    }
    Ok(())
}

/// Reads a travel-time table and the trailing spread comment back.
pub fn read_period_csv<R: BufRead>(r: R) -> Result<(Vec<PeriodResult>, Option<f64>)> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty travel-time CSV".into()))??;
    if header.trim() != PERIOD_CSV_HEADER {
        return Err(Error::Parse(format!(
            "unexpected travel-time CSV header {header:?}"
        )));
    }
    let mut results = Vec::new();
    let mut spread = None;
    for line in lines {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("# max_relative_spread =") {
            let rest = rest.trim();
            if rest != "none" {
                spread = Some(parse_f64(rest, "max_relative_spread")?);
            }
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 5 {
            return Err(Error::Parse(format!(
                "travel-time CSV row has {} cells, expected 5: {line:?}",
                cells.len()
            )));
        }
        results.push(PeriodResult {
            c: parse_f64(cells[0], "c")?,
            t_ode: parse_opt_f64(cells[1], "T_ode")?,
            t_quad: parse_opt_f64(cells[2], "T_quad")?,
            discrepancy: parse_opt_f64(cells[3], "discrepancy")?,
            status: cells[4].trim().to_string(),
        });
    }
    Ok((results, spread))
}

/// JSON envelope for a travel-time table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsochroneDocument {
    /// Human-readable description of the flow that was sampled.
    pub flow: String,
    pub results: Vec<PeriodResult>,
    pub max_relative_spread: Option<f64>,
}

// ---------------------------------------------------------------------
// JSON helpers
// ---------------------------------------------------------------------

/// Pretty JSON with a trailing newline.
pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Parses a JSON document.
pub fn from_json_str<T: DeserializeOwned>(s: &str) -> Result<T> {
    Ok(serde_json::from_str(s)?)
}

// ---------------------------------------------------------------------
// Vector-field mode files
// ---------------------------------------------------------------------

/// One spectral mode of one component: wavevector and complex coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeEntry {
    pub k1: i32,
    pub k2: i32,
    pub re: f64,
    pub im: f64,
}

/// On-disk form of a [`VectorField`]: the torus aspect and the mode lists
/// of both components. Loading re-validates reality and consistency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldFile {
    pub alpha: f64,
    pub x: Vec<ModeEntry>,
    pub y: Vec<ModeEntry>,
}

fn component_entries(scalar: &TrigScalar) -> Vec<ModeEntry> {
    scalar
        .modes()
        .map(|(k, c)| ModeEntry {
            k1: k.k1,
            k2: k.k2,
            re: c.re,
            im: c.im,
        })
        .collect()
}

fn component_from_entries(geometry: TorusGeometry, entries: &[ModeEntry]) -> Result<TrigScalar> {
    let modes: Vec<(Wavevector, Complex64)> = entries
        .iter()
        .map(|e| (Wavevector::new(e.k1, e.k2), Complex64::new(e.re, e.im)))
        .collect();
    TrigScalar::from_modes(geometry, &modes)
}

/// Serializable snapshot of a field.
pub fn field_to_file(field: &VectorField) -> FieldFile {
    FieldFile {
        alpha: field.geometry().alpha(),
        x: component_entries(field.x()),
        y: component_entries(field.y()),
    }
}

/// Rebuilds the field (revalidating the mode lists). Divergence-freeness is
/// *measured*, not required — callers that need it use
/// [`VectorField::require_div_free`].
pub fn field_from_file(file: &FieldFile) -> Result<VectorField> {
    let geometry = TorusGeometry::new(file.alpha)?;
    let x = component_from_entries(geometry, &file.x)?;
    let y = component_from_entries(geometry, &file.y)?;
    VectorField::new(x, y)
}

/// Writes a field as pretty JSON.
pub fn write_field<W: Write>(mut w: W, field: &VectorField) -> Result<()> {
    let json = to_json_pretty(&field_to_file(field))?;
    w.write_all(json.as_bytes())?;
    Ok(())
}

/// Reads a field from JSON text.
pub fn read_field_str(s: &str) -> Result<VectorField> {
    let file: FieldFile = from_json_str(s)?;
    field_from_file(&file)
}

// ---------------------------------------------------------------------
// Plot grids
// ---------------------------------------------------------------------

/// A dense grid of the positive parts of both per-unit-energy closed forms,
/// for plotting admissible regions. `values_k[i][j]` is the value at
/// `(x_axis[j], y_axis[i])` — rows run along the y axis. Two layouts exist:
/// fixed aspect (`alpha` set, axes are `n` × `m`) and fixed `n` (`alpha`
/// null, axes are `α` × `m`). `clip` is always `"positive"`: negative
/// closed-form values are stored as zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotGrid {
    pub x_axis: Vec<f64>,
    pub y_axis: Vec<f64>,
    pub values_1: Vec<Vec<f64>>,
    pub values_2: Vec<Vec<f64>>,
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<i32>,
    pub clip: String,
}

fn clip_positive(v: f64) -> f64 {
    if v > 0.0 {
        v
    } else {
        0.0
    }
}

/// Plot grid over the integer `(n, m)` rectangle at fixed aspect `alpha`.
pub fn plotgrid_fixed_alpha(alpha: f64, n_max: u32, m_max: u32) -> Result<PlotGrid> {
    TorusGeometry::new(alpha)?;
    let ns: Vec<i32> = (-(n_max as i32)..=n_max as i32).collect();
    let ms: Vec<i32> = (-(m_max as i32)..=m_max as i32).collect();
    let values_1 = ms
        .iter()
        .map(|&m| {
            ns.iter()
                .map(|&n| clip_positive(criterion_closed_form_1(n, m, alpha)))
                .collect()
        })
        .collect();
    let values_2 = ms
        .iter()
        .map(|&m| {
            ns.iter()
                .map(|&n| clip_positive(criterion_closed_form_2_consistent(n, m, alpha)))
                .collect()
        })
        .collect();
    Ok(PlotGrid {
        x_axis: ns.iter().map(|&n| n as f64).collect(),
        y_axis: ms.iter().map(|&m| m as f64).collect(),
        values_1,
        values_2,
        alpha: Some(alpha),
        n: None,
        clip: "positive".to_string(),
    })
}

/// Plot grid over `α × m` at fixed `n`.
pub fn plotgrid_fixed_n(n: i32, alphas: &[f64], m_max: u32) -> Result<PlotGrid> {
    if alphas.is_empty() {
        return Err(Error::InvalidParameter(
            "alpha axis must be nonempty".into(),
        ));
    }
    for &a in alphas {
        TorusGeometry::new(a)?;
    }
    let ms: Vec<i32> = (-(m_max as i32)..=m_max as i32).collect();
    let values_1 = ms
        .iter()
        .map(|&m| {
            alphas
                .iter()
                .map(|&a| clip_positive(criterion_closed_form_1(n, m, a)))
                .collect()
        })
        .collect();
    let values_2 = ms
        .iter()
        .map(|&m| {
            alphas
                .iter()
                .map(|&a| clip_positive(criterion_closed_form_2_consistent(n, m, a)))
                .collect()
        })
        .collect();
    Ok(PlotGrid {
        x_axis: alphas.to_vec(),
        y_axis: ms.iter().map(|&m| m as f64).collect(),
        values_1,
        values_2,
        alpha: None,
        n: Some(n),
        clip: "positive".to_string(),
    })
}

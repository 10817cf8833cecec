//! Sparse real trigonometric polynomials on the rectangular torus.
//!
//! A [`TrigScalar`] is a finite sum `f(x, y) = Σ_k f̂(k) e^{i(k1·αx + k2·y)}`
//! stored as a sparse map from integer wavevector to complex coefficient.
//! Reality is structural: for every stored `k`, the map also stores `−k`
//! with the exact complex conjugate, so `coeffs(−k) = conj(coeffs(k))`
//! holds bitwise after every operation. Products are exact convolutions
//! (no truncation); a relative pruning floor removes rounding dust.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{TorusGeometry, Wavevector};
use crate::tol;

/// A finite real trigonometric polynomial on the torus.
///
/// Immutable after construction; the zero polynomial is the empty map.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigScalar {
    geometry: TorusGeometry,
    coeffs: BTreeMap<Wavevector, Complex64>,
}

impl TrigScalar {
    /// The zero polynomial.
    pub fn zero(geometry: TorusGeometry) -> Self {
        Self {
            geometry,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant function `value`.
    pub fn constant(geometry: TorusGeometry, value: f64) -> Self {
        let mut coeffs = BTreeMap::new();
        if value != 0.0 {
            coeffs.insert(Wavevector::new(0, 0), Complex64::new(value, 0.0));
        }
        Self { geometry, coeffs }
    }

    /// `amp · cos(k1·αx + k2·y)`.
    pub fn cosine(geometry: TorusGeometry, k: Wavevector, amp: f64) -> Self {
        if k.is_zero() {
            return Self::constant(geometry, amp);
        }
        let mut coeffs = BTreeMap::new();
        if amp != 0.0 {
            let half = Complex64::new(amp / 2.0, 0.0);
            coeffs.insert(k, half);
            coeffs.insert(k.neg(), half);
        }
        Self { geometry, coeffs }
    }

    /// `amp · sin(k1·αx + k2·y)`.
    pub fn sine(geometry: TorusGeometry, k: Wavevector, amp: f64) -> Self {
        if k.is_zero() {
            return Self::zero(geometry);
        }
        let mut coeffs = BTreeMap::new();
        if amp != 0.0 {
            coeffs.insert(k, Complex64::new(0.0, -amp / 2.0));
            coeffs.insert(k.neg(), Complex64::new(0.0, amp / 2.0));
        }
        Self { geometry, coeffs }
    }

    /// Builds a polynomial from explicitly supplied modes, symmetrizing so
    /// that the reality invariant holds: mirror modes may be omitted and are
    /// filled in with conjugates.
    ///
    /// Rejects non-finite amplitudes, and rejects contradictory input: the
    /// same wavevector supplied twice with values differing beyond the
    /// reality tolerance, a mirror pair inconsistent with conjugation, or a
    /// mean mode with a non-negligible imaginary part.
    pub fn from_modes(geometry: TorusGeometry, modes: &[(Wavevector, Complex64)]) -> Result<Self> {
        let mut staged: BTreeMap<Wavevector, Complex64> = BTreeMap::new();
        for &(k, a) in modes {
            if !(a.re.is_finite() && a.im.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "non-finite amplitude {a} at wavevector ({}, {})",
                    k.k1, k.k2
                )));
            }
            match staged.get_mut(&k) {
                None => {
                    staged.insert(k, a);
                }
                Some(existing) => {
                    let scale = existing.norm().max(a.norm()).max(1.0);
                    if (*existing - a).norm() > tol::TOL_REALITY * scale {
                        return Err(Error::InvalidParameter(format!(
                            "wavevector ({}, {}) supplied twice with inconsistent values {existing} vs {a}",
                            k.k1, k.k2
                        )));
                    }
                    *existing = (*existing + a) / 2.0;
                }
            }
        }
        // Consistency of explicitly supplied mirror pairs and the mean mode.
        for (&k, &c) in &staged {
            if k.is_zero() {
                if c.im.abs() > tol::TOL_REALITY * c.norm().max(1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "mean mode must be real, got imaginary part {}",
                        c.im
                    )));
                }
                continue;
            }
            if let Some(&mirror) = staged.get(&k.neg()) {
                let scale = c.norm().max(mirror.norm()).max(1.0);
                if (mirror - c.conj()).norm() > tol::TOL_REALITY * scale {
                    return Err(Error::InvalidParameter(format!(
                        "modes at ({}, {}) and its mirror are not conjugate",
                        k.k1, k.k2
                    )));
                }
            }
        }
        Ok(Self::finalize(geometry, staged))
    }

    /// Canonicalizes a raw coefficient map: enforces exact conjugate
    /// symmetry (averaging mirror pairs), clears negative zeros, and prunes
    /// magnitudes below `PRUNE_REL` times the largest coefficient.
    fn finalize(geometry: TorusGeometry, raw: BTreeMap<Wavevector, Complex64>) -> Self {
        let mut sym: BTreeMap<Wavevector, Complex64> = BTreeMap::new();
        for (&k, &c) in &raw {
            if k.is_zero() {
                sym.insert(k, Complex64::new(c.re, 0.0));
                continue;
            }
            if k < k.neg() {
                let value = match raw.get(&k.neg()) {
                    Some(&mirror) => (c + mirror.conj()) / 2.0,
                    None => c,
                };
                sym.insert(k, value);
                sym.insert(k.neg(), value.conj());
            } else if !raw.contains_key(&k.neg()) {
                // Only the mirror of this mode was absent; symmetrize from here.
                let value = c.conj();
                sym.insert(k.neg(), value);
                sym.insert(k, value.conj());
            }
        }
        let max_mag = sym.values().map(|c| c.norm()).fold(0.0_f64, f64::max);
        let floor = tol::PRUNE_REL * max_mag;
        let coeffs: BTreeMap<Wavevector, Complex64> = sym
            .into_iter()
            .filter(|(_, c)| c.norm() > 0.0 && c.norm() >= floor)
            .map(|(k, c)| (k, Complex64::new(c.re + 0.0, c.im + 0.0)))
            .collect();
        Self { geometry, coeffs }
    }

    pub fn geometry(&self) -> &TorusGeometry {
        &self.geometry
    }

    /// Iterates coefficients in the canonical (lexicographic) order.
    pub fn modes(&self) -> impl Iterator<Item = (&Wavevector, &Complex64)> {
        self.coeffs.iter()
    }

    /// The coefficient at `k` (zero when the mode is absent).
    pub fn coefficient(&self, k: Wavevector) -> Complex64 {
        self.coeffs
            .get(&k)
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    pub fn num_modes(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest |k1| or |k2| in the support.
    pub fn band(&self) -> i32 {
        self.coeffs
            .keys()
            .map(|k| k.k1.abs().max(k.k2.abs()))
            .max()
            .unwrap_or(0)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Pointwise evaluation: the real part of the coefficient sum. The
    /// imaginary residual is rounding dust by the reality invariant and is
    /// checked in debug builds.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let alpha = self.geometry.alpha();
        let mut sum = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        for (k, c) in &self.coeffs {
            let theta = f64::from(k.k1) * alpha * x + f64::from(k.k2) * y;
            sum += c * Complex64::new(theta.cos(), theta.sin());
            mag += c.norm();
        }
        debug_assert!(
            sum.im.abs() <= tol::TOL_REALITY * mag.max(1e-300),
            "imaginary residual {} exceeds tolerance for coefficient mass {}",
            sum.im,
            mag
        );
        sum.re
    }

    /// Exact product: convolution of coefficient maps. The support of the
    /// result is contained in the Minkowski sum of the input supports.
    pub fn product(&self, other: &TrigScalar) -> Result<TrigScalar> {
        self.geometry.check_same(&other.geometry)?;
        let mut acc: BTreeMap<Wavevector, Complex64> = BTreeMap::new();
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &other.coeffs {
                *acc.entry(ka.add(kb))
                    .or_insert_with(|| Complex64::new(0.0, 0.0)) += ca * cb;
            }
        }
        Ok(Self::finalize(self.geometry, acc))
    }

    /// L² pairing `∫ f·g dμ = area · Σ_k f̂(k)·conj(ĝ(k))`; symmetric and
    /// bilinear, computed in the canonical mode order.
    pub fn inner(&self, other: &TrigScalar) -> Result<f64> {
        self.geometry.check_same(&other.geometry)?;
        let (small, large) = if self.coeffs.len() <= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut sum = Complex64::new(0.0, 0.0);
        for (k, c) in &small.coeffs {
            if let Some(d) = large.coeffs.get(k) {
                sum += c * d.conj();
            }
        }
        Ok(self.geometry.area() * sum.re)
    }

    /// `‖f‖²_{L²}`.
    pub fn norm2(&self) -> f64 {
        self.inner(self).expect("same geometry")
    }

    /// Spectral ∂/∂x: mode `k` picks up the factor `i·k1·α`.
    pub fn dx(&self) -> TrigScalar {
        let alpha = self.geometry.alpha();
        self.map_coeffs(|k, c| {
            let t = f64::from(k.k1) * alpha;
            Complex64::new(-c.im * t, c.re * t)
        })
    }

    /// Spectral ∂/∂y: mode `k` picks up the factor `i·k2`.
    pub fn dy(&self) -> TrigScalar {
        self.map_coeffs(|k, c| {
            let t = f64::from(k.k2);
            Complex64::new(-c.im * t, c.re * t)
        })
    }

    /// Spectral Laplacian: mode `k` is multiplied by `−((k1·α)² + k2²)`.
    pub fn laplacian(&self) -> TrigScalar {
        let geometry = self.geometry;
        self.map_coeffs(|k, c| c * (-k.kappa_norm2(&geometry)))
    }

    /// Rescale by a real constant.
    pub fn scale(&self, factor: f64) -> TrigScalar {
        self.map_coeffs(|_, c| c * factor)
    }

    /// Applies a per-mode map and re-canonicalizes. Crate-internal so that
    /// the reality invariant stays under this module's control.
    pub(crate) fn map_coeffs(&self, f: impl Fn(Wavevector, Complex64) -> Complex64) -> TrigScalar {
        let raw: BTreeMap<Wavevector, Complex64> =
            self.coeffs.iter().map(|(&k, &c)| (k, f(k, c))).collect();
        Self::finalize(self.geometry, raw)
    }

    fn combine(&self, other: &TrigScalar, sign: f64) -> TrigScalar {
        self.geometry
            .check_same(&other.geometry)
            .unwrap_or_else(|e| panic!("scalar arithmetic: {e}"));
        let mut acc = self.coeffs.clone();
        for (&k, &c) in &other.coeffs {
            *acc.entry(k).or_insert_with(|| Complex64::new(0.0, 0.0)) += c * sign;
        }
        Self::finalize(self.geometry, acc)
    }
}

impl Add for &TrigScalar {
    type Output = TrigScalar;
    fn add(self, rhs: &TrigScalar) -> TrigScalar {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &TrigScalar {
    type Output = TrigScalar;
    fn sub(self, rhs: &TrigScalar) -> TrigScalar {
        self.combine(rhs, -1.0)
    }
}

impl Neg for &TrigScalar {
    type Output = TrigScalar;
    fn neg(self) -> TrigScalar {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &TrigScalar {
    type Output = TrigScalar;
    fn mul(self, rhs: f64) -> TrigScalar {
        self.scale(rhs)
    }
}

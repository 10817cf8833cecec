//! The rectangular flat torus and its integer wavevectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The rectangular flat torus with fundamental domain `[0, 2π/α) × [0, 2π)`.
///
/// All metric constants derive from the aspect ratio `α`: side lengths
/// `Lx = 2π/α`, `Ly = 2π`, and area `4π²/α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusGeometry {
    alpha: f64,
}

impl TorusGeometry {
    /// A torus with aspect ratio `alpha` (> 0, finite).
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "aspect ratio alpha must be positive and finite, got {alpha}"
            )));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Side length in x: `2π/α`.
    pub fn lx(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.alpha
    }

    /// Side length in y: `2π`.
    pub fn ly(&self) -> f64 {
        2.0 * std::f64::consts::PI
    }

    /// Area of the fundamental domain: `4π²/α`.
    pub fn area(&self) -> f64 {
        self.lx() * self.ly()
    }

    /// Geometries match only when their aspect ratios are bitwise equal;
    /// values meant to interoperate must come from one shared geometry.
    pub fn check_same(&self, other: &Self) -> Result<()> {
        if self.alpha == other.alpha {
            Ok(())
        } else {
            Err(Error::GeometryMismatch(self.alpha, other.alpha))
        }
    }
}

/// Integer wavevector `(k1, k2)` of the mode `e^{i(k1·αx + k2·y)}`.
///
/// The physical wavevector is `(k1·α, k2)`; `(0, 0)` is the mean mode.
/// The derived `Ord` (lexicographic) fixes the canonical iteration order of
/// every coefficient map, which keeps all emitted output deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Wavevector {
    pub k1: i32,
    pub k2: i32,
}

impl Wavevector {
    pub fn new(k1: i32, k2: i32) -> Self {
        Self { k1, k2 }
    }

    pub fn is_zero(&self) -> bool {
        self.k1 == 0 && self.k2 == 0
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.k1, -self.k2)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.k1 + other.k1, self.k2 + other.k2)
    }

    /// Physical wavevector `κ = (k1·α, k2)`.
    pub fn kappa(&self, geometry: &TorusGeometry) -> (f64, f64) {
        (f64::from(self.k1) * geometry.alpha(), f64::from(self.k2))
    }

    /// `|κ|² = (k1·α)² + k2²`.
    pub fn kappa_norm2(&self, geometry: &TorusGeometry) -> f64 {
        let (kx, ky) = self.kappa(geometry);
        kx * kx + ky * ky
    }
}

//! Vector fields on the torus: pairs of trigonometric polynomials with a
//! cached divergence-free certificate.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::geometry::TorusGeometry;
use crate::tol;
use crate::trig::TrigScalar;

/// A vector field `(u_x, u_y)` whose components share one geometry.
///
/// The divergence-free status is decided once, at construction, by testing
/// `‖div u‖ ≤ tol_divfree · ‖u‖` (the zero field counts as divergence-free).
/// Values are immutable afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    x: TrigScalar,
    y: TrigScalar,
    div_free: bool,
}

impl VectorField {
    /// Builds a field from components, checking the shared geometry and
    /// computing the divergence-free certificate.
    pub fn new(x: TrigScalar, y: TrigScalar) -> Result<Self> {
        x.geometry().check_same(y.geometry())?;
        let residual = div_residual(&x, &y);
        let div_free = residual <= tol::TOL_DIVFREE;
        Ok(Self { x, y, div_free })
    }

    /// The zero field.
    pub fn zero(geometry: TorusGeometry) -> Self {
        Self {
            x: TrigScalar::zero(geometry),
            y: TrigScalar::zero(geometry),
            div_free: true,
        }
    }

    /// The constant field `(cx, cy)` (always divergence-free).
    pub fn constant(geometry: TorusGeometry, cx: f64, cy: f64) -> Self {
        Self {
            x: TrigScalar::constant(geometry, cx),
            y: TrigScalar::constant(geometry, cy),
            div_free: true,
        }
    }

    pub fn x(&self) -> &TrigScalar {
        &self.x
    }

    pub fn y(&self) -> &TrigScalar {
        &self.y
    }

    pub fn geometry(&self) -> &TorusGeometry {
        self.x.geometry()
    }

    /// Whether `‖div u‖ ≤ tol_divfree · ‖u‖` held at construction.
    pub fn is_div_free(&self) -> bool {
        self.div_free
    }

    /// The relative divergence residual `‖div u‖ / ‖u‖` (0 for the zero field).
    pub fn div_residual(&self) -> f64 {
        div_residual(&self.x, &self.y)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `‖u‖²_{L²}`, components paired separately.
    pub fn norm2(&self) -> f64 {
        self.x.norm2() + self.y.norm2()
    }

    /// L² pairing of vector fields: `⟨u_x, v_x⟩ + ⟨u_y, v_y⟩`.
    pub fn inner(&self, other: &VectorField) -> Result<f64> {
        Ok(self.x.inner(&other.x)? + self.y.inner(&other.y)?)
    }

    /// Pointwise evaluation `(u_x(x,y), u_y(x,y))`.
    pub fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        (self.x.eval(x, y), self.y.eval(x, y))
    }

    /// Rescale by a real constant.
    pub fn scale(&self, factor: f64) -> VectorField {
        VectorField {
            x: self.x.scale(factor),
            y: self.y.scale(factor),
            div_free: self.div_free,
        }
    }

    /// Errors unless the field passed the divergence-free test.
    pub fn require_div_free(&self) -> Result<()> {
        if self.div_free {
            Ok(())
        } else {
            Err(Error::NotDivergenceFree {
                residual: self.div_residual(),
                tol: tol::TOL_DIVFREE,
            })
        }
    }
}

fn div_residual(x: &TrigScalar, y: &TrigScalar) -> f64 {
    let norm2 = x.norm2() + y.norm2();
    if norm2 == 0.0 {
        return 0.0;
    }
    let div = &x.dx() + &y.dy();
    (div.norm2() / norm2).sqrt()
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField::new(&self.x + &rhs.x, &self.y + &rhs.y)
            .unwrap_or_else(|e| panic!("vector arithmetic: {e}"))
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField::new(&self.x - &rhs.x, &self.y - &rhs.y)
            .unwrap_or_else(|e| panic!("vector arithmetic: {e}"))
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &VectorField {
    type Output = VectorField;
    fn mul(self, rhs: f64) -> VectorField {
        self.scale(rhs)
    }
}

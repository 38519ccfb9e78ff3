//! Points of the Riemann sphere and the chordal metric.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mobius::MobiusMap;

/// Default equality tolerance, measured in the chordal metric.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A point of the Riemann sphere: a finite complex number or infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub const ZERO: SpherePoint = SpherePoint::Finite(Complex64::new(0.0, 0.0));
    pub const ONE: SpherePoint = SpherePoint::Finite(Complex64::new(1.0, 0.0));

    pub fn new(re: f64, im: f64) -> Self {
        SpherePoint::from(Complex64::new(re, im))
    }

    /// Checked constructor: rejects NaN components.
    pub fn try_finite(z: Complex64) -> Result<Self> {
        if z.re.is_nan() || z.im.is_nan() {
            return Err(Error::NonFinite);
        }
        Ok(SpherePoint::from(z))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn finite(&self) -> Option<Complex64> {
        match *self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }

    pub fn chordal_distance(&self, other: &SpherePoint) -> f64 {
        chordal_distance(*self, *other)
    }

    pub fn approx_eq(&self, other: &SpherePoint, tol: f64) -> bool {
        chordal_distance(*self, *other) <= tol
    }

    /// Image under stereographic projection from the north pole, as a unit vector.
    pub fn to_unit_vector(&self) -> [f64; 3] {
        match *self {
            SpherePoint::Infinity => [0.0, 0.0, 1.0],
            SpherePoint::Finite(w) => {
                let n = w.norm_sqr();
                let d = 1.0 + n;
                [2.0 * w.re / d, 2.0 * w.im / d, (n - 1.0) / d]
            }
        }
    }

    /// Inverse of [`SpherePoint::to_unit_vector`]; the input is normalized first.
    pub fn from_unit_vector(v: [f64; 3]) -> Self {
        let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let (x, y, z) = (v[0] / len, v[1] / len, v[2] / len);
        if (1.0 - z).abs() < 1e-15 {
            SpherePoint::Infinity
        } else {
            SpherePoint::Finite(Complex64::new(x / (1.0 - z), y / (1.0 - z)))
        }
    }
}

impl From<Complex64> for SpherePoint {
    /// Values with an infinite component are mapped to [`SpherePoint::Infinity`].
    fn from(z: Complex64) -> Self {
        if z.re.is_infinite() || z.im.is_infinite() {
            SpherePoint::Infinity
        } else {
            SpherePoint::Finite(z)
        }
    }
}

impl From<f64> for SpherePoint {
    fn from(x: f64) -> Self {
        SpherePoint::from(Complex64::new(x, 0.0))
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Infinity => write!(f, "inf"),
            SpherePoint::Finite(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

/// Chordal distance on the sphere of diameter 1 (values in `[0, 2]`).
pub fn chordal_distance(p: SpherePoint, q: SpherePoint) -> f64 {
    match (p, q) {
        (SpherePoint::Infinity, SpherePoint::Infinity) => 0.0,
        (SpherePoint::Finite(z), SpherePoint::Infinity)
        | (SpherePoint::Infinity, SpherePoint::Finite(z)) => 2.0 / 1f64.hypot(z.norm()),
        (SpherePoint::Finite(z), SpherePoint::Finite(w)) => {
            2.0 * (z - w).norm() / (1f64.hypot(z.norm()) * 1f64.hypot(w.norm()))
        }
    }
}

/// Cross-ratio `(p4-p1)(p3-p2) / ((p4-p2)(p3-p1))`.
///
/// Sends `(0, inf, 1, x)` to `x`. When exactly one pair of arguments
/// coincides the limiting value (0, 1 or inf) is returned; fewer than three
/// distinct points is an error.
pub fn cross_ratio(
    p1: SpherePoint,
    p2: SpherePoint,
    p3: SpherePoint,
    p4: SpherePoint,
) -> Result<SpherePoint> {
    let tol = DEFAULT_TOL;
    let pts = [p1, p2, p3, p4];
    let mut distinct: Vec<SpherePoint> = Vec::with_capacity(4);
    for p in pts {
        if !distinct.iter().any(|q| q.approx_eq(&p, tol)) {
            distinct.push(p);
        }
    }
    if distinct.len() < 3 {
        return Err(Error::UndefinedCrossRatio);
    }
    let eq = |a: SpherePoint, b: SpherePoint| a.approx_eq(&b, tol);
    if eq(p1, p2) {
        return Ok(SpherePoint::ONE);
    }
    if eq(p1, p3) {
        return Ok(SpherePoint::Infinity);
    }
    if eq(p2, p3) {
        return Ok(SpherePoint::ZERO);
    }
    Ok(MobiusMap::to_zero_inf_one(p1, p2, p3)?.apply(p4))
}

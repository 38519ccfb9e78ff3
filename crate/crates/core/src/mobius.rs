//! Elements of PSL(2, C) acting on the Riemann sphere.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sphere::{SpherePoint, DEFAULT_TOL};

/// The map `z -> (a z + b) / (c z + d)`, stored with `ad - bc = 1`.
///
/// The matrix is only defined up to sign; compare with [`MobiusMap::psl_eq`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl MobiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        if [a, b, c, d]
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let det = a * d - b * c;
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if scale == 0.0 || det.norm() <= 1e-14 * scale * scale {
            return Err(Error::SingularMobius);
        }
        let k = det.sqrt().inv();
        Ok(MobiusMap {
            a: a * k,
            b: b * k,
            c: c * k,
            d: d * k,
        })
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let r = |x: f64| Complex64::new(x, 0.0);
        Self::new(r(a), r(b), r(c), r(d))
    }

    pub fn identity() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        MobiusMap {
            a: o,
            b: z,
            c: z,
            d: o,
        }
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn apply(&self, p: SpherePoint) -> SpherePoint {
        let zero = Complex64::new(0.0, 0.0);
        match p {
            SpherePoint::Infinity => {
                if self.c == zero {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::from(self.a / self.c)
                }
            }
            SpherePoint::Finite(z) => {
                let num = self.a * z + self.b;
                let den = self.c * z + self.d;
                // ad - bc = 1 keeps num and den from vanishing together
                if den == zero {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::from(num / den)
                }
            }
        }
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        let a = self.a * other.a + self.b * other.c;
        let b = self.a * other.b + self.b * other.d;
        let c = self.c * other.a + self.d * other.c;
        let d = self.c * other.b + self.d * other.d;
        // Product of determinant-one matrices; renormalize to stop drift.
        MobiusMap::new(a, b, c, d).unwrap_or(MobiusMap { a, b, c, d })
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn conjugate_by(&self, t: &MobiusMap) -> MobiusMap {
        t.compose(self).compose(&t.inverse())
    }

    /// Entrywise comparison up to a global sign, scaled by the entry size.
    pub fn psl_eq(&self, other: &MobiusMap, tol: f64) -> bool {
        let x = self.entries();
        let y = other.entries();
        let scale = x
            .iter()
            .chain(y.iter())
            .map(|z| z.norm())
            .fold(1.0, f64::max);
        let plus = x
            .iter()
            .zip(&y)
            .map(|(p, q)| (p - q).norm())
            .fold(0.0, f64::max);
        let minus = x
            .iter()
            .zip(&y)
            .map(|(p, q)| (p + q).norm())
            .fold(0.0, f64::max);
        plus.min(minus) <= tol * scale
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.psl_eq(&MobiusMap::identity(), tol)
    }

    /// Least `n <= max` with `self^n = id`, if any.
    pub fn order(&self, max: u32, tol: f64) -> Option<u32> {
        let mut power = *self;
        for n in 1..=max {
            if power.is_identity(tol) {
                return Some(n);
            }
            power = self.compose(&power);
        }
        None
    }

    /// Representative with a sign convention: the first entry of non-negligible
    /// modulus has positive real part (or positive imaginary part if purely imaginary).
    pub fn canonical_sign(&self) -> MobiusMap {
        let e = self.entries();
        let scale = e.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let lead = e
            .iter()
            .find(|z| z.norm() > 1e-8 * scale)
            .copied()
            .unwrap_or(e[0]);
        let flip = if lead.re.abs() > 1e-8 * scale {
            lead.re < 0.0
        } else {
            lead.im < 0.0
        };
        if flip {
            MobiusMap {
                a: -self.a,
                b: -self.b,
                c: -self.c,
                d: -self.d,
            }
        } else {
            *self
        }
    }

    /// The map sending `(p1, p2, p3)` to `(0, inf, 1)`:
    /// `z -> (z - p1)(p3 - p2) / ((z - p2)(p3 - p1))`.
    pub fn to_zero_inf_one(p1: SpherePoint, p2: SpherePoint, p3: SpherePoint) -> Result<Self> {
        let tol = DEFAULT_TOL;
        if p1.approx_eq(&p2, tol) || p1.approx_eq(&p3, tol) || p2.approx_eq(&p3, tol) {
            return Err(Error::DegenerateTriple);
        }
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        use SpherePoint::*;
        match (p1, p2, p3) {
            (Infinity, Finite(q2), Finite(q3)) => Self::new(zero, q3 - q2, one, -q2),
            (Finite(q1), Infinity, Finite(q3)) => Self::new(one, -q1, zero, q3 - q1),
            (Finite(q1), Finite(q2), Infinity) => Self::new(one, -q1, one, -q2),
            (Finite(q1), Finite(q2), Finite(q3)) => {
                Self::new(q3 - q2, -q1 * (q3 - q2), q3 - q1, -q2 * (q3 - q1))
            }
            _ => Err(Error::DegenerateTriple),
        }
    }

    /// The unique map with `T(src[i]) = dst[i]`.
    pub fn from_triples(src: [SpherePoint; 3], dst: [SpherePoint; 3]) -> Result<Self> {
        let s = Self::to_zero_inf_one(src[0], src[1], src[2])?;
        let t = Self::to_zero_inf_one(dst[0], dst[1], dst[2])?;
        Ok(t.inverse().compose(&s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn p(re: f64, im: f64) -> SpherePoint {
        SpherePoint::new(re, im)
    }

    fn recip() -> MobiusMap {
        MobiusMap::from_real(0.0, 1.0, 1.0, 0.0).unwrap()
    }

    #[test]
    fn apply_examples() {
        assert!(recip().apply(p(0.0, 0.0)).is_infinite());
        assert_eq!(MobiusMap::identity().apply(p(5.0, 2.0)), p(5.0, 2.0));
        let neg = MobiusMap::new(c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)).unwrap();
        assert!(neg.apply(p(1.0, 0.0)).approx_eq(&p(-1.0, 0.0), 1e-15));
        let shift = MobiusMap::from_real(1.0, 1.0, 0.0, 1.0).unwrap();
        assert!(shift.apply(SpherePoint::Infinity).is_infinite());
        assert!(recip()
            .apply(SpherePoint::Infinity)
            .approx_eq(&p(0.0, 0.0), 0.0));
    }

    #[test]
    fn compose_examples() {
        assert!(recip().compose(&recip()).is_identity(1e-12));
        let t = MobiusMap::new(c(1.0, 2.0), c(0.5, 0.0), c(-1.0, 0.3), c(2.0, 0.0)).unwrap();
        assert!(MobiusMap::identity().compose(&t).psl_eq(&t, 1e-12));
        let s1 = MobiusMap::from_real(1.0, 1.0, 0.0, 1.0).unwrap();
        let s2 = MobiusMap::from_real(1.0, 2.0, 0.0, 1.0).unwrap();
        let s3 = MobiusMap::from_real(1.0, 3.0, 0.0, 1.0).unwrap();
        assert!(s1.compose(&s2).psl_eq(&s3, 1e-12));
    }

    #[test]
    fn inverse_examples() {
        assert!(MobiusMap::identity().inverse().is_identity(0.0));
        let dbl = MobiusMap::from_real(2.0, 0.0, 0.0, 1.0).unwrap();
        let half = MobiusMap::from_real(1.0, 0.0, 0.0, 2.0).unwrap();
        assert!(dbl.inverse().psl_eq(&half, 1e-12));
        // adjugate of [[1,-1],[1,1]] is [[1,1],[-1,1]]: z -> (1+z)/(1-z)
        let t = MobiusMap::from_real(1.0, -1.0, 1.0, 1.0).unwrap();
        let expect = MobiusMap::from_real(1.0, 1.0, -1.0, 1.0).unwrap();
        assert!(t.inverse().psl_eq(&expect, 1e-12));
    }

    #[test]
    fn from_triples_examples() {
        let inf = SpherePoint::Infinity;
        let (zero, one) = (SpherePoint::ZERO, SpherePoint::ONE);
        let t = MobiusMap::from_triples([zero, inf, one], [zero, inf, one]).unwrap();
        assert!(t.is_identity(1e-12));
        let t = MobiusMap::from_triples([zero, one, inf], [inf, one, zero]).unwrap();
        assert!(t.psl_eq(&recip(), 1e-12));
        let t =
            MobiusMap::from_triples([one, p(-1.0, 0.0), zero], [p(-1.0, 0.0), one, zero]).unwrap();
        let neg = MobiusMap::from_real(-1.0, 0.0, 0.0, 1.0).unwrap();
        assert!(t.psl_eq(&neg, 1e-12));
        assert_eq!(
            MobiusMap::from_triples([zero, zero, one], [zero, inf, one]),
            Err(Error::DegenerateTriple)
        );
    }

    #[test]
    fn psl_equality_examples() {
        let id = MobiusMap::identity();
        let minus = MobiusMap {
            a: -id.a,
            b: id.b,
            c: id.c,
            d: -id.d,
        };
        assert!(id.psl_eq(&minus, 1e-15));
        let shift = MobiusMap::from_real(1.0, 1.0, 0.0, 1.0).unwrap();
        assert!(shift.psl_eq(&shift, 0.0));
        let dbl = MobiusMap::from_real(2.0, 0.0, 0.0, 1.0).unwrap();
        let half = MobiusMap::from_real(1.0, 0.0, 0.0, 2.0).unwrap();
        assert!(!dbl.psl_eq(&half, 1e-6));
    }

    #[test]
    fn singular_matrix_rejected() {
        assert_eq!(
            MobiusMap::from_real(1.0, 2.0, 2.0, 4.0),
            Err(Error::SingularMobius)
        );
    }

    #[test]
    fn element_order() {
        let rot = |k: f64| {
            let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / k);
            MobiusMap::new(w, c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap()
        };
        assert_eq!(rot(5.0).order(60, 1e-9), Some(5));
        assert_eq!(recip().order(60, 1e-9), Some(2));
        let shift = MobiusMap::from_real(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(shift.order(60, 1e-9), None);
    }
}

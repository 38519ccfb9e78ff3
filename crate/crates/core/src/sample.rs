//! Seeded random generators for forms, maps and quotient points.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::forms::{ResiduePoleForm, ZeroPoleForm};
use crate::mobius::MobiusMap;
use crate::sphere::SpherePoint;

/// Minimum chordal separation between sampled points.
const MIN_SEPARATION: f64 = 0.05;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// Real and imaginary parts uniform in `[-scale, scale]`.
    pub fn complex(&mut self, scale: f64) -> Complex64 {
        Complex64::new(self.uniform(-scale, scale), self.uniform(-scale, scale))
    }

    pub fn unit(&mut self) -> Complex64 {
        Complex64::from_polar(1.0, self.uniform(0.0, 2.0 * PI))
    }

    /// Finite point with log-uniform modulus in `[0.1, 10]`.
    pub fn point(&mut self) -> Complex64 {
        let r = 10f64.powf(self.uniform(-1.0, 1.0));
        Complex64::from_polar(r, self.uniform(0.0, 2.0 * PI))
    }

    /// `n` finite points, pairwise and from `avoid` at chordal distance at least 0.05.
    pub fn distinct_points(&mut self, n: usize, avoid: &[SpherePoint]) -> Vec<SpherePoint> {
        let mut out: Vec<SpherePoint> = Vec::with_capacity(n);
        while out.len() < n {
            let p = SpherePoint::Finite(self.point());
            if out
                .iter()
                .chain(avoid)
                .all(|q| p.chordal_distance(q) >= MIN_SEPARATION)
            {
                out.push(p);
            }
        }
        out
    }

    /// `s` residues of modulus at least 0.1 summing to zero.
    pub fn residues(&mut self, s: usize) -> Vec<Complex64> {
        loop {
            let mut r: Vec<Complex64> = (0..s - 1).map(|_| self.complex(2.0)).collect();
            let last = -r.iter().sum::<Complex64>();
            r.push(last);
            if r.iter().all(|x| x.norm() >= 0.1) {
                return r;
            }
        }
    }

    /// Purely imaginary residues summing to zero, with imaginary parts at least 0.1 in size.
    pub fn isochronous_residues(&mut self, s: usize) -> Vec<Complex64> {
        loop {
            let mut y: Vec<f64> = (0..s - 1).map(|_| self.uniform(-2.0, 2.0)).collect();
            y.push(-y.iter().sum::<f64>());
            if y.iter().all(|v| v.abs() >= 0.1) {
                return y.into_iter().map(|v| Complex64::new(0.0, v)).collect();
            }
        }
    }

    pub fn rp_form(&mut self, s: usize, pole_at_infinity: bool) -> ResiduePoleForm {
        let residues = self.residues(s);
        self.rp_form_with(residues, pole_at_infinity)
    }

    pub fn isochronous_form(&mut self, s: usize) -> ResiduePoleForm {
        let residues = self.isochronous_residues(s);
        self.rp_form_with(residues, false)
    }

    /// Random distinct poles for the given residues, optionally with the last pole at infinity.
    pub fn rp_form_with(
        &mut self,
        residues: Vec<Complex64>,
        pole_at_infinity: bool,
    ) -> ResiduePoleForm {
        let s = residues.len();
        let mut poles = if pole_at_infinity {
            self.distinct_points(s - 1, &[SpherePoint::Infinity])
        } else {
            self.distinct_points(s, &[])
        };
        if pole_at_infinity {
            poles.push(SpherePoint::Infinity);
        }
        ResiduePoleForm::new(residues, poles, 1e-9).expect("sampled form is valid")
    }

    /// Random zero-pole form; `double_zero` repeats the first zero.
    pub fn zp_form(
        &mut self,
        s: usize,
        double_zero: bool,
        zero_at_infinity: bool,
        pole_at_infinity: bool,
    ) -> ZeroPoleForm {
        assert!(!(zero_at_infinity && pole_at_infinity));
        let mut avoid = Vec::new();
        if zero_at_infinity || pole_at_infinity {
            avoid.push(SpherePoint::Infinity);
        }
        let n_zero = s - 2;
        let mut zeros = self.distinct_points(n_zero, &avoid);
        if double_zero && n_zero >= 2 {
            zeros[1] = zeros[0];
        }
        if zero_at_infinity && n_zero >= 1 {
            zeros[n_zero - 1] = SpherePoint::Infinity;
        }
        avoid.extend_from_slice(&zeros);
        let mut poles = self.distinct_points(s - usize::from(pole_at_infinity), &avoid);
        if pole_at_infinity {
            poles.push(SpherePoint::Infinity);
        }
        let lambda = self.point();
        ZeroPoleForm::new(zeros, poles, lambda, None, 1e-9).expect("sampled form is valid")
    }

    /// Moderately conditioned Möbius map.
    pub fn mobius(&mut self) -> MobiusMap {
        loop {
            let [a, b, c, d] = [0; 4].map(|_| self.complex(2.0));
            if (a * d - b * c).norm() >= 0.5 {
                if let Ok(t) = MobiusMap::new(a, b, c, d) {
                    return t;
                }
            }
        }
    }

    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(&mut self.rng);
        p
    }
}

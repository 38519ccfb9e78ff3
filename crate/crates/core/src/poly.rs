//! Dense complex polynomials, resultants and simultaneous-iteration root finding.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sphere::{chordal_distance, SpherePoint};

/// Relative threshold below which a resultant or discriminant is treated as zero.
pub const NEAR_ZERO_REL: f64 = 1e-8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Polynomial with coefficients stored highest degree first.
///
/// The leading coefficient is nonzero; the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let first = coeffs
            .iter()
            .position(|c| *c != ZERO)
            .unwrap_or(coeffs.len());
        ComplexPoly {
            coeffs: coeffs[first..].to_vec(),
        }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero() -> Self {
        ComplexPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.first().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients padded with leading zeros to formal degree `deg`.
    pub fn padded(&self, deg: usize) -> Vec<Complex64> {
        let len = deg + 1;
        assert!(
            self.coeffs.len() <= len,
            "polynomial degree exceeds formal degree"
        );
        let mut out = vec![ZERO; len - self.coeffs.len()];
        out.extend_from_slice(&self.coeffs);
        out
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs, z)
    }

    pub fn derivative(&self) -> Self {
        let n = self.coeffs.len();
        if n <= 1 {
            return Self::zero();
        }
        let coeffs = self.coeffs[..n - 1]
            .iter()
            .enumerate()
            .map(|(i, c)| c * (n - 1 - i) as f64)
            .collect();
        Self::new(coeffs)
    }

    pub fn mul(&self, other: &ComplexPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &ComplexPoly) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![ZERO; n];
        for (k, c) in self.coeffs.iter().rev().enumerate() {
            out[n - 1 - k] += c;
        }
        for (k, c) in other.coeffs.iter().rev().enumerate() {
            out[n - 1 - k] += c;
        }
        Self::new(out)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Roots with multiplicity, using default options and the given residual tolerance.
    pub fn roots(&self, tol: f64) -> Result<Vec<Complex64>> {
        let opts = RootOptions {
            tol,
            ..RootOptions::default()
        };
        Ok(self
            .grouped_roots(&opts)?
            .into_iter()
            .flat_map(|(z, m)| std::iter::repeat_n(z, m))
            .collect())
    }

    /// Distinct roots with their multiplicities.
    pub fn grouped_roots(&self, opts: &RootOptions) -> Result<Vec<(Complex64, usize)>> {
        let n = match self.degree() {
            None | Some(0) => return Ok(Vec::new()),
            Some(n) => n,
        };
        // exact zero roots are split off so the iteration never starts at one
        let zeros = self.coeffs.iter().rev().take_while(|c| **c == ZERO).count();
        let coeffs = &self.coeffs[..=n - zeros];
        let n = n - zeros;
        let simple = if n == 0 {
            Vec::new()
        } else if n == 1 {
            vec![-coeffs[1] / coeffs[0]]
        } else {
            let mut z = aberth(coeffs, opts);
            for zi in z.iter_mut() {
                *zi = newton_polish(coeffs, *zi, 6);
            }
            z
        };
        let mut grouped = cluster_roots(
            &ComplexPoly::new(coeffs.to_vec()),
            simple,
            opts.cluster_radius,
        );
        if zeros > 0 {
            grouped.push((ZERO, zeros));
        }
        let flat: Vec<Complex64> = grouped
            .iter()
            .flat_map(|&(z, m)| std::iter::repeat_n(z, m))
            .collect();
        let rebuilt = viete(self.coeffs[0], &flat);
        let residual = relative_coeff_error(rebuilt.coeffs(), &self.coeffs);
        if !(residual <= opts.tol) {
            return Err(Error::ConvergenceFailure { residual });
        }
        Ok(grouped)
    }
}

/// Settings for [`ComplexPoly::grouped_roots`].
#[derive(Clone, Debug)]
pub struct RootOptions {
    /// Bound on the relative coefficient error of the reconstructed polynomial.
    pub tol: f64,
    pub max_iter: usize,
    /// Chordal radius within which approximations are tested for a common multiple root.
    pub cluster_radius: f64,
    /// Seed for the perturbation of the starting circle.
    pub seed: u64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol: 1e-8,
            max_iter: 2000,
            cluster_radius: 1e-4,
            seed: 0x5eed_1e55,
        }
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().fold(ZERO, |acc, c| acc * z + c)
}

/// Value, derivative, and a rounding-error bound for the value.
fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = ZERO;
    let mut dp = ZERO;
    let mut bound = 0.0;
    let az = z.norm();
    for c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
        bound = bound * az + c.norm();
    }
    (p, dp, bound)
}

fn aberth(coeffs: &[Complex64], opts: &RootOptions) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[0].norm();
    let upper = (1..=n)
        .map(|k| (coeffs[k].norm() / lead).powf(1.0 / k as f64))
        .fold(0.0, f64::max);
    let radius = if coeffs[n] != ZERO {
        (coeffs[n].norm() / lead).powf(1.0 / n as f64)
    } else {
        0.5 * upper
    };
    let radius = if radius > 0.0 { radius } else { 1.0 };

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ n as u64);
    let offset: f64 = rng.random_range(0.0..2.0 * PI / n as f64);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let jitter: f64 = rng.random_range(0.95..1.05);
            Complex64::from_polar(radius * jitter, offset + 2.0 * PI * k as f64 / n as f64)
        })
        .collect();
    let mut done = vec![false; n];

    for _ in 0..opts.max_iter {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp, bound) = horner_with_derivative(coeffs, z[i]);
            if p.norm() <= 8.0 * f64::EPSILON * bound {
                done[i] = true;
                continue;
            }
            all_done = false;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d == ZERO {
                        ZERO
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = if dp == ZERO {
                // stalled on a critical point: nudge off it
                Complex64::new(1e-3 * (1.0 + z[i].norm()), 1e-3)
            } else {
                let ratio = p / dp;
                let denom = ONE - ratio * sum;
                if denom == ZERO {
                    ratio
                } else {
                    ratio / denom
                }
            };
            z[i] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * (1.0 + z[i].norm()) {
                done[i] = true;
            }
        }
        if all_done {
            break;
        }
    }
    z
}

fn newton_polish(coeffs: &[Complex64], mut z: Complex64, iters: usize) -> Complex64 {
    let (mut p, _, _) = horner_with_derivative(coeffs, z);
    for _ in 0..iters {
        let (_, dp, _) = horner_with_derivative(coeffs, z);
        if dp == ZERO || p == ZERO {
            break;
        }
        let cand = z - p / dp;
        let (pc, _, _) = horner_with_derivative(coeffs, cand);
        if pc.norm() < p.norm() {
            z = cand;
            p = pc;
        } else {
            break;
        }
    }
    z
}

/// Merges approximations of a multiple root into one value with a multiplicity.
///
/// Candidate clusters (single linkage within `radius`, chordal) are refined
/// by Newton's method on the `(m-1)`-th derivative and accepted when `P` and
/// its first `m-1` derivatives all vanish at the refined point.
fn cluster_roots(
    poly: &ComplexPoly,
    roots: Vec<Complex64>,
    radius: f64,
) -> Vec<(Complex64, usize)> {
    let n = roots.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let d = chordal_distance(SpherePoint::Finite(roots[i]), SpherePoint::Finite(roots[j]));
            if d <= radius {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[b] = a;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut label, i);
        match groups.iter_mut().find(|(k, _)| *k == r) {
            Some((_, g)) => g.push(roots[i]),
            None => groups.push((r, vec![roots[i]])),
        }
    }

    let mut out = Vec::with_capacity(n);
    for (_, g) in groups {
        let m = g.len();
        if m == 1 {
            out.push((g[0], 1));
            continue;
        }
        let centroid = g.iter().sum::<Complex64>() / m as f64;
        let mut dm = poly.clone();
        for _ in 0..(m - 1) {
            dm = dm.derivative();
        }
        let refined = newton_polish(dm.coeffs(), centroid, 12);
        let mut dk = poly.clone();
        let mut vanishes = true;
        for _ in 0..m {
            let (v, _, bound) = horner_with_derivative(dk.coeffs(), refined);
            vanishes &= v.norm() <= 1e-10 * bound;
            dk = dk.derivative();
        }
        if vanishes && (refined - centroid).norm() <= radius * (1.0 + centroid.norm_sqr()) {
            out.push((refined, m));
        } else {
            out.extend(g.into_iter().map(|z| (z, 1)));
        }
    }
    out
}

fn relative_coeff_error(a: &[Complex64], b: &[Complex64]) -> f64 {
    let scale = a.iter().chain(b).map(|c| c.norm()).fold(0.0, f64::max);
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let diff = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        0.0
    } else {
        diff / scale
    }
}

/// Viète map: coefficients of `lead * prod (z - root)`, highest degree first.
pub fn viete(lead: Complex64, roots: &[Complex64]) -> ComplexPoly {
    let mut coeffs = vec![lead];
    for &r in roots {
        coeffs.push(ZERO);
        for k in (1..coeffs.len()).rev() {
            let prev = coeffs[k - 1];
            coeffs[k] -= r * prev;
        }
    }
    ComplexPoly::new(coeffs)
}

/// Resultant `lc(P)^deg Q * prod Q(alpha)`, from the Sylvester determinant.
pub fn resultant(p: &ComplexPoly, q: &ComplexPoly) -> Complex64 {
    sylvester_resultant(p.coeffs(), q.coeffs())
}

/// Resultant of coefficient vectors taken at their formal degrees.
///
/// Leading zeros are kept, so two vectors that both start with zero (a
/// common root at infinity) have resultant zero.
pub fn sylvester_resultant(p: &[Complex64], q: &[Complex64]) -> Complex64 {
    let (phase, log_abs) = sylvester_log_det(p, q);
    if log_abs == f64::NEG_INFINITY {
        ZERO
    } else {
        phase * log_abs.exp()
    }
}

/// `|Res(p, q)| / (|p|^n |q|^m)`; bounded by 1 (Hadamard).
pub fn relative_resultant(p: &[Complex64], q: &[Complex64]) -> f64 {
    let (_, log_abs) = sylvester_log_det(p, q);
    let m = p.len().saturating_sub(1) as f64;
    let n = q.len().saturating_sub(1) as f64;
    let norm = |v: &[Complex64]| v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    (log_abs - n * norm(p).ln() - m * norm(q).ln()).exp()
}

fn sylvester_log_det(p: &[Complex64], q: &[Complex64]) -> (Complex64, f64) {
    let m = p.len().saturating_sub(1);
    let n = q.len().saturating_sub(1);
    let size = m + n;
    if size == 0 {
        return (ONE, 0.0);
    }
    let mut mat = vec![vec![ZERO; size]; size];
    for row in 0..n {
        for (k, c) in p.iter().enumerate() {
            mat[row][row + k] = *c;
        }
    }
    for row in 0..m {
        for (k, c) in q.iter().enumerate() {
            mat[n + row][row + k] = *c;
        }
    }
    lu_log_det(mat)
}

/// Determinant by Gaussian elimination with partial pivoting, as `(phase, ln|det|)`.
fn lu_log_det(mut a: Vec<Vec<Complex64>>) -> (Complex64, f64) {
    let n = a.len();
    let mut phase = ONE;
    let mut log_abs = 0.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .expect("non-empty range");
        if a[pivot][col] == ZERO {
            return (ZERO, f64::NEG_INFINITY);
        }
        if pivot != col {
            a.swap(pivot, col);
            phase = -phase;
        }
        let pv = a[col][col];
        phase *= pv / pv.norm();
        log_abs += pv.norm().ln();
        for row in (col + 1)..n {
            let f = a[row][col] / pv;
            if f != ZERO {
                for k in col..n {
                    let t = a[col][k];
                    a[row][k] -= f * t;
                }
            }
        }
    }
    (phase, log_abs)
}

/// Discriminant `(-1)^{n(n-1)/2} Res(P, P') / lc(P)`; zero iff `P` has a repeated root.
pub fn discriminant(p: &ComplexPoly) -> Complex64 {
    let n = p.degree().unwrap_or(0);
    if n < 1 {
        return ZERO;
    }
    let res = resultant(p, &p.derivative());
    let sign = if (n * (n - 1) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    res * sign / p.leading().expect("nonzero polynomial")
}

/// Whether some root has multiplicity above one, from the clustered roots.
///
/// The relative Sylvester determinant shrinks like a power of the root
/// spread, so it cannot separate close simple roots from double ones.
pub fn has_repeated_root(p: &ComplexPoly) -> bool {
    match p.degree() {
        None | Some(0) | Some(1) => false,
        Some(_) => match p.grouped_roots(&RootOptions::default()) {
            Ok(groups) => groups.iter().any(|(_, m)| *m > 1),
            Err(_) => relative_resultant(p.coeffs(), p.derivative().coeffs()) <= NEAR_ZERO_REL,
        },
    }
}

/// Whether two polynomials have a common root (at their formal degrees).
pub fn have_common_root(p: &[Complex64], q: &[Complex64]) -> bool {
    let at_infinity = |v: &[Complex64]| v.len() > 1 && v[0] == ZERO;
    if at_infinity(p) && at_infinity(q) {
        return true;
    }
    let (pp, qq) = (ComplexPoly::new(p.to_vec()), ComplexPoly::new(q.to_vec()));
    if pp.is_zero() || qq.is_zero() {
        return true;
    }
    match pp.roots(RootOptions::default().tol) {
        Ok(roots) => roots.iter().any(|a| {
            let scale: f64 = qq
                .coeffs()
                .iter()
                .rev()
                .enumerate()
                .map(|(k, c)| c.norm() * a.norm().powi(k as i32))
                .sum();
            qq.eval(*a).norm() <= NEAR_ZERO_REL * scale
        }),
        Err(_) => relative_resultant(p, q) <= NEAR_ZERO_REL,
    }
}

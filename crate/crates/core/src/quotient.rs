//! Quotient coordinates: forms with three poles moved to `0, inf, 1`, and
//! the action of the symmetric group that reorders the terms.

use std::collections::{HashMap, VecDeque};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::ResiduePoleForm;
use crate::group::isotropy_table;
use crate::mobius::MobiusMap;
use crate::sphere::SpherePoint;

/// Point `(r_1, .., r_{s-1}, p_4, .., p_s)`; the form is
/// `<r_1, .., r_s; 0, inf, 1, p_4, .., p_s>` with `r_s = -sum r_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoint {
    residues: Vec<Complex64>,
    poles: Vec<Complex64>,
}

impl MPoint {
    pub fn new(residues: Vec<Complex64>, poles: Vec<Complex64>, tol: f64) -> Result<Self> {
        let s = residues.len() + 1;
        if s < 3 || poles.len() + 3 != s {
            return Err(Error::InvalidMPoint(format!(
                "{} residues need {} poles, got {}",
                residues.len(),
                s.saturating_sub(3),
                poles.len()
            )));
        }
        if residues
            .iter()
            .chain(&poles)
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidMPoint("non-finite entry".into()));
        }
        let last: Complex64 = -residues.iter().sum::<Complex64>();
        let scale = residues
            .iter()
            .map(|r| r.norm())
            .fold(last.norm(), f64::max);
        if residues
            .iter()
            .chain([&last])
            .any(|r| r.norm() <= tol * scale)
        {
            return Err(Error::InvalidMPoint("a residue vanishes".into()));
        }
        let mut seen = vec![SpherePoint::ZERO, SpherePoint::Infinity, SpherePoint::ONE];
        for p in &poles {
            let p = SpherePoint::Finite(*p);
            if seen.iter().any(|q| q.approx_eq(&p, tol)) {
                return Err(Error::InvalidMPoint(format!(
                    "pole {p} collides with another pole"
                )));
            }
            seen.push(p);
        }
        Ok(MPoint { residues, poles })
    }

    pub fn s(&self) -> usize {
        self.residues.len() + 1
    }

    pub fn residues(&self) -> &[Complex64] {
        &self.residues
    }

    pub fn poles(&self) -> &[Complex64] {
        &self.poles
    }

    /// `r_s = -(r_1 + .. + r_{s-1})`.
    pub fn last_residue(&self) -> Complex64 {
        -self.residues.iter().sum::<Complex64>()
    }

    pub fn all_residues(&self) -> Vec<Complex64> {
        let mut r = self.residues.clone();
        r.push(self.last_residue());
        r
    }

    fn residue_scale(&self) -> f64 {
        self.all_residues()
            .iter()
            .map(|r| r.norm())
            .fold(0.0, f64::max)
    }

    /// Residues within `tol` relative to the largest residue, poles within `tol` chordally.
    pub fn approx_eq(&self, other: &MPoint, tol: f64) -> bool {
        if self.s() != other.s() {
            return false;
        }
        let scale = self.residue_scale().max(other.residue_scale());
        self.residues
            .iter()
            .zip(&other.residues)
            .all(|(a, b)| (a - b).norm() <= tol * scale)
            && self
                .poles
                .iter()
                .zip(&other.poles)
                .all(|(a, b)| SpherePoint::Finite(*a).approx_eq(&SpherePoint::Finite(*b), tol))
    }
}

/// Birational part of a generator image, acting on `(z_4, .., z_s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BirationalMap {
    /// `z_k -> 1 / z_k`
    Reciprocal,
    /// `z_k -> z_k / (z_k - 1)`
    ZOverZMinusOne,
    /// `(z_4, z_5, ..) -> (1/z_4, z_5/z_4, ..)`
    DivideByFirst,
    /// Exchange of `z_j` and `z_{j+1}`.
    SwapCoordinates(usize),
}

impl BirationalMap {
    pub fn apply(&self, z: &[Complex64]) -> Vec<Complex64> {
        match *self {
            BirationalMap::Reciprocal => z.iter().map(|w| w.inv()).collect(),
            BirationalMap::ZOverZMinusOne => z.iter().map(|w| w / (w - 1.0)).collect(),
            BirationalMap::DivideByFirst => {
                let mut out: Vec<Complex64> = z.iter().map(|w| w / z[0]).collect();
                if let Some(first) = out.first_mut() {
                    *first = z[0].inv();
                }
                out
            }
            BirationalMap::SwapCoordinates(j) => {
                let mut out = z.to_vec();
                out.swap(j - 4, j - 3);
                out
            }
        }
    }
}

/// Image `(A_j, f_j)` of the Coxeter generator `(j j+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorImage {
    pub matrix: Vec<Vec<i64>>,
    pub map: BirationalMap,
}

impl GeneratorImage {
    pub fn apply_matrix(&self, r: &[Complex64]) -> Vec<Complex64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(r).map(|(&a, x)| x * a as f64).sum())
            .collect()
    }
}

/// `A_j` swaps rows `j` and `j+1` of the identity for `j <= s-2`; `A_{s-1}`
/// replaces the last row by `(-1, .., -1)`. `f_1`, `f_2`, `f_3` are the
/// normalizing Möbius maps and `f_j` for `j >= 4` swaps `z_j` and `z_{j+1}`.
pub fn rho_generator(s: usize, j: usize) -> Result<GeneratorImage> {
    if s < 3 || j == 0 || j >= s {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: s.saturating_sub(1),
        });
    }
    let n = s - 1;
    let mut matrix: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|k| i64::from(i == k)).collect())
        .collect();
    if j <= s - 2 {
        matrix.swap(j - 1, j);
    } else {
        matrix[n - 1] = vec![-1; n];
    }
    let map = match j {
        1 => BirationalMap::Reciprocal,
        2 => BirationalMap::ZOverZMinusOne,
        3 => BirationalMap::DivideByFirst,
        _ => BirationalMap::SwapCoordinates(j),
    };
    Ok(GeneratorImage { matrix, map })
}

/// `<r_1, .., r_s; 0, inf, 1, p_4, .., p_s>`.
pub fn mu(m: &MPoint) -> ResiduePoleForm {
    let mut poles = vec![SpherePoint::ZERO, SpherePoint::Infinity, SpherePoint::ONE];
    poles.extend(m.poles.iter().map(|p| SpherePoint::Finite(*p)));
    ResiduePoleForm::new(m.all_residues(), poles, 1e-6).expect("valid quotient point gives a form")
}

/// Moves the first three poles to `0, inf, 1` and reads off the coordinates.
pub fn canonicalize(form: &ResiduePoleForm, tol: f64) -> Result<MPoint> {
    let s = form.s();
    if s < 3 {
        return Err(Error::Shape(
            "quotient coordinates need at least three poles".into(),
        ));
    }
    let p = form.poles();
    let t = MobiusMap::to_zero_inf_one(p[0], p[1], p[2])?;
    let residues = form.residues()[..s - 1].to_vec();
    let poles = p[3..]
        .iter()
        .map(|q| {
            t.apply(*q)
                .finite()
                .ok_or(Error::InvalidMPoint("pole sent to infinity".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    MPoint::new(residues, poles, tol)
}

/// Action of the generator `(j j+1)` (1-based).
pub fn apply_generator(j: usize, m: &MPoint, tol: f64) -> Result<MPoint> {
    let g = rho_generator(m.s(), j)?;
    MPoint::new(g.apply_matrix(&m.residues), g.map.apply(&m.poles), tol)
}

/// Adjacent transpositions `a_1, .., a_k` (1-based) with
/// `sigma = t_{a_1} ∘ .. ∘ t_{a_k}`.
pub fn adjacent_decomposition(sigma: &[usize]) -> Vec<usize> {
    let mut arr = sigma.to_vec();
    let mut swaps = Vec::new();
    // bubble sort: arr ∘ t_i swaps positions i and i+1
    for pass in 0..arr.len() {
        for i in 0..arr.len().saturating_sub(1 + pass) {
            if arr[i] > arr[i + 1] {
                arr.swap(i, i + 1);
                swaps.push(i + 1);
            }
        }
    }
    swaps.reverse();
    swaps
}

fn check_permutation(sigma: &[usize], s: usize) -> Result<()> {
    let mut seen = vec![false; s];
    if sigma.len() != s {
        return Err(Error::Shape(format!(
            "permutation of length {} for s = {s}",
            sigma.len()
        )));
    }
    for &k in sigma {
        if k >= s || seen[k] {
            return Err(Error::Shape("not a permutation".into()));
        }
        seen[k] = true;
    }
    Ok(())
}

/// Action of `sigma` (0-based, `sigma[i]` is the image of `i`): the result
/// is the quotient point of the form whose `i`-th term is term `sigma[i]` of `mu(m)`.
///
/// With this convention `apply_sym(tau, apply_sym(sigma, m)) = apply_sym(sigma ∘ tau, m)`.
pub fn apply_sym(sigma: &[usize], m: &MPoint, tol: f64) -> Result<MPoint> {
    check_permutation(sigma, m.s())?;
    let mut out = m.clone();
    for j in adjacent_decomposition(sigma) {
        out = apply_generator(j, &out, tol)?;
    }
    Ok(out)
}

/// Images of `m` under every permutation, deduplicated within `tol`.
pub fn orbit(m: &MPoint, tol: f64) -> Result<Vec<MPoint>> {
    let s = m.s();
    let identity: Vec<usize> = (0..s).collect();
    let mut reached: HashMap<Vec<usize>, MPoint> = HashMap::new();
    reached.insert(identity.clone(), m.clone());
    let mut queue = VecDeque::from([identity]);
    while let Some(perm) = queue.pop_front() {
        let point = reached[&perm].clone();
        for j in 1..s {
            let mut next = perm.clone();
            next.swap(j - 1, j);
            if reached.contains_key(&next) {
                continue;
            }
            let image = apply_generator(j, &point, tol)?;
            reached.insert(next.clone(), image);
            queue.push_back(next);
        }
    }
    Ok(dedup(reached.into_values().collect(), tol))
}

fn dedup(mut points: Vec<MPoint>, tol: f64) -> Vec<MPoint> {
    let key = |m: &MPoint| m.residues[0].re;
    points.sort_by(|a, b| key(a).total_cmp(&key(b)));
    let scale = points.iter().map(|m| m.residue_scale()).fold(0.0, f64::max);
    let window = tol * scale;
    let mut out: Vec<MPoint> = Vec::new();
    for p in points {
        let k = key(&p);
        let duplicate = out
            .iter()
            .rev()
            .take_while(|q| k - key(q) <= window)
            .any(|q| q.approx_eq(&p, tol));
        if !duplicate {
            out.push(p);
        }
    }
    out
}

/// Whether `m2` lies in the orbit of `m1`.
pub fn same_orbit(m1: &MPoint, m2: &MPoint, tol: f64) -> Result<bool> {
    if m1.s() != m2.s() {
        return Ok(false);
    }
    Ok(orbit(m1, tol)?.iter().any(|p| p.approx_eq(m2, tol)))
}

/// One of the 14 sign-pattern components of isochronous four-pole quotient
/// points, and which of the three classes identified by the action it lies in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component4 {
    pub label: String,
    pub class: u8,
}

/// Component from the signs of `Im r_1, .., Im r_4`.
///
/// Class 1 has three positive imaginary parts, class 2 has one, class 3 has two.
pub fn isochronous_component_s4(m: &MPoint, tol: f64) -> Result<Component4> {
    if m.s() != 4 {
        return Err(Error::Shape(format!("expected s = 4, got {}", m.s())));
    }
    let r = m.all_residues();
    if r.iter().any(|x| x.re.abs() > tol * x.norm()) {
        return Err(Error::NotIsochronous);
    }
    let scale = m.residue_scale();
    let y: Vec<f64> = r.iter().map(|x| x.im).collect();
    if y.iter().any(|v| v.abs() <= tol * scale) {
        return Err(Error::ZeroImaginaryPart);
    }
    let positive: Vec<usize> = (0..3).filter(|&i| y[i] > 0.0).map(|i| i + 1).collect();
    let sign = if y[3] > 0.0 { '+' } else { '-' };
    let label = match positive.len() {
        3 => "X+".to_string(),
        0 => "X-".to_string(),
        _ => {
            let idx: String = positive.iter().map(|i| i.to_string()).collect();
            format!("X{idx}{sign}")
        }
    };
    let total = y.iter().filter(|v| **v > 0.0).count();
    let class = match total {
        3 => 1,
        1 => 2,
        _ => 3,
    };
    Ok(Component4 { label, class })
}

/// All 14 component labels.
pub fn component_labels_s4() -> Vec<&'static str> {
    vec![
        "X+", "X-", "X1+", "X2+", "X3+", "X1-", "X2-", "X3-", "X12+", "X13+", "X23+", "X12-",
        "X13-", "X23-",
    ]
}

/// Number of isotropy types (trivial included) for forms with `s` poles.
pub fn orbit_type_count(s: usize) -> usize {
    isotropy_table(s).len() + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample_point() -> MPoint {
        MPoint::new(
            vec![c(1.0, 0.5), c(-0.3, 1.2), c(0.7, -2.0), c(0.4, 0.1)],
            vec![c(2.0, 1.0), c(-0.5, 0.7)],
            TOL,
        )
        .unwrap()
    }

    #[test]
    fn generator_examples() {
        let g = rho_generator(4, 1).unwrap();
        assert_eq!(g.matrix, vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
        assert_eq!(g.map, BirationalMap::Reciprocal);
        let g = rho_generator(4, 3).unwrap();
        assert_eq!(
            g.matrix,
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![-1, -1, -1]]
        );
        assert_eq!(g.map, BirationalMap::DivideByFirst);
        let g = rho_generator(5, 4).unwrap();
        assert_eq!(g.matrix[3], vec![-1, -1, -1, -1]);
        assert_eq!(g.map, BirationalMap::SwapCoordinates(4));
        assert!(rho_generator(4, 4).is_err());
        assert!(rho_generator(4, 0).is_err());
    }

    #[test]
    fn mu_and_canonicalize_examples() {
        let m = MPoint::new(
            vec![c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0)],
            vec![c(5.0, 0.0)],
            TOL,
        )
        .unwrap();
        let w = mu(&m);
        assert_eq!(w.residues()[3], c(0.0, -1.0));
        assert_eq!(w.poles()[1], SpherePoint::Infinity);
        assert_eq!(canonicalize(&w, TOL).unwrap(), m);

        let w = ResiduePoleForm::new(
            vec![c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)],
            [1.0, 2.0, 3.0, 4.0].map(SpherePoint::from).to_vec(),
            TOL,
        )
        .unwrap();
        let m = canonicalize(&w, TOL).unwrap();
        // (z - 1)(3 - 2) / ((z - 2)(3 - 1)) at z = 4
        assert!((m.poles()[0] - c(0.75, 0.0)).norm() < 1e-14);

        let m3 = MPoint::new(vec![c(0.0, 1.0), c(0.0, 2.0)], vec![], TOL).unwrap();
        assert_eq!(mu(&m3).residues()[2], c(0.0, -3.0));
    }

    #[test]
    fn generators_match_reordering() {
        let m = sample_point();
        for j in 1..5 {
            let mut sigma: Vec<usize> = (0..5).collect();
            sigma.swap(j - 1, j);
            let direct = canonicalize(&mu(&m).reordered(&sigma), TOL).unwrap();
            assert!(
                apply_generator(j, &m, TOL)
                    .unwrap()
                    .approx_eq(&direct, 1e-12),
                "j = {j}"
            );
        }
    }

    #[test]
    fn apply_sym_matches_reordering() {
        let m = sample_point();
        for sigma in [
            vec![2, 0, 4, 1, 3],
            vec![4, 3, 2, 1, 0],
            vec![1, 2, 3, 4, 0],
        ] {
            let direct = canonicalize(&mu(&m).reordered(&sigma), TOL).unwrap();
            assert!(apply_sym(&sigma, &m, TOL)
                .unwrap()
                .approx_eq(&direct, 1e-11));
        }
        assert_eq!(apply_sym(&[0, 1, 2, 3, 4], &m, TOL).unwrap(), m);
        let t = [1, 0, 2, 3, 4];
        let back = apply_sym(&t, &apply_sym(&t, &m, TOL).unwrap(), TOL).unwrap();
        assert!(back.approx_eq(&m, 1e-14));
    }

    #[test]
    fn decomposition_rebuilds_permutation() {
        let sigma = [3, 0, 4, 2, 1];
        let mut acc: Vec<usize> = (0..5).collect();
        for j in adjacent_decomposition(&sigma) {
            // acc ∘ t_j
            acc.swap(j - 1, j);
        }
        assert_eq!(acc, sigma);
    }

    #[test]
    fn invalid_points() {
        assert!(MPoint::new(
            vec![c(1.0, 0.0), c(-1.5, 0.0), c(0.5, 0.0)],
            vec![c(5.0, 0.0)],
            TOL
        )
        .is_err());
        assert!(MPoint::new(
            vec![c(1.0, 0.0), c(2.0, 0.0), c(0.5, 0.0)],
            vec![c(1.0, 0.0)],
            TOL
        )
        .is_err());
        assert!(MPoint::new(vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(3.0, 0.0)], TOL).is_err());
    }

    #[test]
    fn component_examples() {
        let pt = |y: [f64; 3]| {
            MPoint::new(
                y.iter().map(|v| c(0.0, *v)).collect(),
                vec![c(3.0, 1.0)],
                TOL,
            )
            .unwrap()
        };
        let x = isochronous_component_s4(&pt([1.0, -2.0, -3.0]), TOL).unwrap();
        assert_eq!(
            x,
            Component4 {
                label: "X1+".into(),
                class: 3
            }
        );
        let x = isochronous_component_s4(&pt([1.0, 2.0, 3.0]), TOL).unwrap();
        assert_eq!(
            x,
            Component4 {
                label: "X+".into(),
                class: 1
            }
        );
        let x = isochronous_component_s4(&pt([-1.0, -2.0, -3.0]), TOL).unwrap();
        assert_eq!(
            x,
            Component4 {
                label: "X-".into(),
                class: 2
            }
        );
        let x = isochronous_component_s4(&pt([1.0, 2.0, -5.0]), TOL).unwrap();
        assert_eq!(
            x,
            Component4 {
                label: "X12+".into(),
                class: 1
            }
        );
        let bad = MPoint::new(
            vec![c(1.0, 1.0), c(0.0, 1.0), c(0.0, 1.0)],
            vec![c(3.0, 0.0)],
            TOL,
        )
        .unwrap();
        assert_eq!(
            isochronous_component_s4(&bad, TOL),
            Err(Error::NotIsochronous)
        );
        assert_eq!(component_labels_s4().len(), 14);
    }

    #[test]
    fn orbit_type_counts() {
        let counts: Vec<usize> = [3, 5, 7, 9, 11]
            .iter()
            .map(|&s| orbit_type_count(s))
            .collect();
        assert_eq!(counts, vec![2, 5, 6, 8, 8]);
        assert_eq!(orbit_type_count(4), 4);
    }

    #[test]
    fn generic_orbit_is_full() {
        let m = MPoint::new(
            vec![c(1.0, 0.2), c(-0.3, 1.1), c(0.6, -0.4)],
            vec![c(2.5, -0.7)],
            TOL,
        )
        .unwrap();
        let o = orbit(&m, TOL).unwrap();
        assert_eq!(o.len(), 24);
        assert!(same_orbit(&m, &o[7], TOL).unwrap());
    }
}

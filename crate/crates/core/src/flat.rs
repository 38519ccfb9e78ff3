//! Flat metric `|omega|^2` of a form: cone points at zeros, half-infinite
//! cylinders at poles, and isometry up to rotation and Möbius maps.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{Form, ResiduePoleForm};
use crate::group::are_psl_equivalent;
use crate::mobius::MobiusMap;

/// Cone angles `(2k + 2) pi` at zeros of order `k` and circumferences
/// `2 pi |r|` of the cylindrical ends, each sorted ascending.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlatSurfaceInvariants {
    pub cone_angles: Vec<f64>,
    pub circumferences: Vec<f64>,
}

impl FlatSurfaceInvariants {
    /// Orders `k` of the zeros, recovered from the cone angles.
    pub fn zero_orders(&self) -> Vec<usize> {
        self.cone_angles
            .iter()
            .map(|a| (a / (2.0 * PI) - 1.0).round() as usize)
            .collect()
    }

    /// Multiset equality within `tol` relative to the largest entry.
    pub fn approx_eq(&self, other: &FlatSurfaceInvariants, tol: f64) -> bool {
        fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
            let scale = a.iter().chain(b).fold(1.0f64, |m, x| m.max(x.abs()));
            a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * scale)
        }
        close(&self.cone_angles, &other.cone_angles, tol)
            && close(&self.circumferences, &other.circumferences, tol)
    }
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

pub fn invariants(form: &Form, tol: f64) -> Result<FlatSurfaceInvariants> {
    let rp = form.to_residue_pole(tol)?;
    let zp = form.to_zero_pole(tol)?;
    let circumferences = rp.residues().iter().map(|r| 2.0 * PI * r.norm()).collect();
    let cone_angles = zp
        .zero_multiplicities(tol)
        .into_iter()
        .map(|(_, k)| (2 * k + 2) as f64 * PI)
        .collect();
    Ok(FlatSurfaceInvariants {
        cone_angles: sorted(cone_angles),
        circumferences: sorted(circumferences),
    })
}

/// `lambda T_* omega` for `|lambda| = 1`.
pub fn extended_action(
    lambda: Complex64,
    t: &MobiusMap,
    form: &ResiduePoleForm,
    tol: f64,
) -> Result<ResiduePoleForm> {
    let modulus = lambda.norm();
    if (modulus - 1.0).abs() > tol {
        return Err(Error::NotUnitModulus { modulus });
    }
    Ok(form.pushforward(t).scaled(lambda))
}

/// Some `(lambda, T)` with `|lambda| = 1` and `eta = lambda T_* omega`, if one exists.
///
/// `lambda` must send the first residue of `omega` to some residue of `eta`;
/// candidates are tried nearest to 1 first.
pub fn are_isometric(
    omega: &ResiduePoleForm,
    eta: &ResiduePoleForm,
    tol: f64,
) -> Option<(Complex64, MobiusMap)> {
    if omega.s() != eta.s() {
        return None;
    }
    let r0 = omega.residues()[0];
    let mut candidates: Vec<Complex64> = Vec::new();
    for r in eta.residues() {
        let lambda = r / r0;
        if (lambda.norm() - 1.0).abs() > tol {
            continue;
        }
        let lambda = lambda / lambda.norm();
        if !candidates.iter().any(|c| (c - lambda).norm() <= tol) {
            candidates.push(lambda);
        }
    }
    let one = Complex64::new(1.0, 0.0);
    candidates.sort_by(|a, b| (a - one).norm().total_cmp(&(b - one).norm()));
    candidates
        .into_iter()
        .find_map(|lambda| are_psl_equivalent(&omega.scaled(lambda), eta, tol).map(|t| (lambda, t)))
}

#![allow(dead_code)]

use std::f64::consts::PI;

use forms_core::forms::ResiduePoleForm;
use forms_core::group::{realize_cyclic, realize_dihedral};
use forms_core::sample::Sampler;
use forms_core::{Complex64, SpherePoint};

const TOL: f64 = 1e-9;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Greedy multiset matching of sphere points in the chordal metric.
pub fn same_points(a: &[SpherePoint], b: &[SpherePoint], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|p| {
        let best = (0..b.len()).filter(|&k| !used[k]).min_by(|&i, &j| {
            p.chordal_distance(&b[i])
                .total_cmp(&p.chordal_distance(&b[j]))
        });
        match best {
            Some(k) if p.chordal_distance(&b[k]) <= tol => {
                used[k] = true;
                true
            }
            _ => false,
        }
    })
}

/// Greedy multiset matching of complex numbers, relative to the largest modulus.
pub fn same_values(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let scale = a.iter().chain(b).map(|x| x.norm()).fold(0.0, f64::max);
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        let best = (0..b.len())
            .filter(|&k| !used[k])
            .min_by(|&i, &j| (x - b[i]).norm().total_cmp(&(x - b[j]).norm()));
        match best {
            Some(k) if (x - b[k]).norm() <= tol * scale => {
                used[k] = true;
                true
            }
            _ => false,
        }
    })
}

/// Distance between two projective vectors after scaling both so the
/// largest entry of `u` is 1, relative to that entry.
pub fn projective_error(u: &[Complex64], v: &[Complex64]) -> f64 {
    assert_eq!(u.len(), v.len());
    let k = (0..u.len())
        .max_by(|&i, &j| u[i].norm().total_cmp(&u[j].norm()))
        .unwrap();
    if v[k].norm() == 0.0 {
        return f64::INFINITY;
    }
    u.iter()
        .zip(v)
        .map(|(x, y)| (x / u[k] - y / v[k]).norm())
        .fold(0.0, f64::max)
}

/// Residue-pole form of `sum r_j / (z - p_j)` evaluated directly, as an oracle.
pub fn direct_eval(residues: &[Complex64], poles: &[SpherePoint], z: Complex64) -> Complex64 {
    residues
        .iter()
        .zip(poles)
        .filter_map(|(r, p)| p.finite().map(|p| r / (z - p)))
        .sum()
}

/// The transposition of equal-residue positions `a < b` (0-based) fixes this
/// cross-ratio value of `(p1, p2, p3, p4)`.
fn fixed_value(a: usize, b: usize) -> Complex64 {
    match (a, b) {
        (0, 1) | (2, 3) => c(-1.0, 0.0),
        (0, 2) | (1, 3) => c(0.5, 0.0),
        _ => c(2.0, 0.0),
    }
}

/// Four poles in the given order with cross-ratio `x`, moved by a random map.
fn poles_with_cross_ratio(sampler: &mut Sampler, x: Complex64) -> Vec<SpherePoint> {
    let t = sampler.mobius();
    [
        SpherePoint::ZERO,
        SpherePoint::Infinity,
        SpherePoint::ONE,
        SpherePoint::Finite(x),
    ]
    .map(|p| t.apply(p))
    .to_vec()
}

/// A four-pole instance of the residue pattern `case` (1: one equal pair,
/// 2: two pairs, 3: three equal, 4: generic), symmetric about half the time.
pub fn s4_instance(sampler: &mut Sampler, case: u8) -> ResiduePoleForm {
    let perm = sampler.permutation(4);
    let (a, b) = (sampler.complex(2.0), sampler.complex(2.0));
    let pattern = match case {
        1 => vec![a, a, b, -2.0 * a - b],
        2 => vec![a, a, -a, -a],
        3 => vec![a, a, a, -3.0 * a],
        _ => sampler.residues(4),
    };
    let mut residues = vec![c(0.0, 0.0); 4];
    for (k, r) in pattern.iter().enumerate() {
        residues[perm[k]] = *r;
    }
    let (i, j) = (perm[0].min(perm[1]), perm[0].max(perm[1]));
    let x = match (case, sampler.uniform(0.0, 1.0)) {
        (1 | 2, u) if u < 0.5 => fixed_value(i, j),
        (3, u) if u < 0.25 => Complex64::from_polar(1.0, PI / 3.0),
        (3, u) if u < 0.4 => Complex64::from_polar(1.0, -PI / 3.0),
        (3, u) if u < 0.6 => fixed_value(i, j),
        _ => sampler.point(),
    };
    let poles = poles_with_cross_ratio(sampler, x);
    ResiduePoleForm::new(residues, poles, TOL).unwrap()
}

/// Random form with `s` poles: generic for `kind = 0`, otherwise one with
/// repeated residues or a realized symmetric configuration, moved and reordered.
pub fn orbit_sample(sampler: &mut Sampler, s: usize, kind: u8) -> ResiduePoleForm {
    let form = match (s, kind) {
        (4, 1) => realize_cyclic(3).unwrap(),
        (4, 2) => realize_dihedral(2).unwrap(),
        (4, 3) => {
            let a = sampler.complex(2.0);
            sampler.rp_form_with(vec![a, a, -a, -a], false)
        }
        (5, 1) => realize_cyclic(4).unwrap(),
        (5, 2) => realize_dihedral(3).unwrap(),
        (5, 3) => {
            let a = sampler.complex(2.0);
            let b = sampler.complex(2.0);
            sampler.rp_form_with(vec![a, a, b, b, -2.0 * (a + b)], false)
        }
        _ => sampler.rp_form(s, false),
    };
    let perm = sampler.permutation(s);
    form.pushforward(&sampler.mobius()).reordered(&perm)
}

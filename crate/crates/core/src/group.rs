//! The PSL(2, C) action on forms: isotropy groups, equivalence, and the
//! forms realizing each finite subgroup.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::forms::ResiduePoleForm;
use crate::mobius::MobiusMap;
use crate::sphere::{cross_ratio, SpherePoint};

/// Default bound on the number of candidate maps examined by [`isotropy_group`].
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Isomorphism type of a finite subgroup of PSL(2, C).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupTag {
    Cyclic(u32),
    /// Dihedral group of order `2n`; `Dihedral(2)` is the Klein four-group.
    Dihedral(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl GroupTag {
    pub fn order(&self) -> u32 {
        match *self {
            GroupTag::Cyclic(n) => n,
            GroupTag::Dihedral(n) => 2 * n,
            GroupTag::Tetrahedral => 12,
            GroupTag::Octahedral => 24,
            GroupTag::Icosahedral => 60,
        }
    }

    /// Short name: `Z_4`, `D_3`, `A4`, `S4`, `A5`.
    pub fn name(&self) -> String {
        match *self {
            GroupTag::Cyclic(n) => format!("Z_{n}"),
            GroupTag::Dihedral(n) => format!("D_{n}"),
            GroupTag::Tetrahedral => "A4".into(),
            GroupTag::Octahedral => "S4".into(),
            GroupTag::Icosahedral => "A5".into(),
        }
    }

    /// Name used in isotropy tables, where the Klein four-group is `Z_2xZ_2`.
    pub fn table_name(&self) -> String {
        match *self {
            GroupTag::Dihedral(2) => "Z_2xZ_2".into(),
            other => other.name(),
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for GroupTag {
    type Err = Error;

    /// Accepts `Z4`, `Z_4`, `D3`, `D_3`, `Z2xZ2`, `A4`, `S4`, `A5`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace('_', "").to_ascii_uppercase();
        let bad = || Error::Shape(format!("unknown group {s:?}"));
        match t.as_str() {
            "A4" => return Ok(GroupTag::Tetrahedral),
            "S4" => return Ok(GroupTag::Octahedral),
            "A5" => return Ok(GroupTag::Icosahedral),
            "Z2XZ2" | "V4" => return Ok(GroupTag::Dihedral(2)),
            _ => {}
        }
        let (kind, n) = t.split_at(1);
        let n: u32 = n.parse().map_err(|_| bad())?;
        match kind {
            "Z" | "C" if n >= 1 => Ok(GroupTag::Cyclic(n)),
            "D" if n >= 2 => Ok(GroupTag::Dihedral(n)),
            _ => Err(bad()),
        }
    }
}

/// A finite group of Möbius maps together with its isomorphism type.
#[derive(Clone, Debug)]
pub struct FiniteMobiusGroup {
    elements: Vec<MobiusMap>,
    tag: GroupTag,
}

impl FiniteMobiusGroup {
    /// Checks closure and classifies; elements are put in a canonical order.
    pub fn new(elements: Vec<MobiusMap>, tol: f64) -> Result<Self> {
        let tag = classify_finite_subgroup(&elements, tol)?;
        let mut elements: Vec<MobiusMap> = elements.iter().map(|g| g.canonical_sign()).collect();
        elements.sort_by(|g, h| {
            sort_key(g)
                .partial_cmp(&sort_key(h))
                .expect("finite entries")
        });
        if let Some(k) = elements.iter().position(|g| g.is_identity(tol)) {
            let id = elements.remove(k);
            elements.insert(0, id);
        }
        Ok(FiniteMobiusGroup { elements, tag })
    }

    pub fn elements(&self) -> &[MobiusMap] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn tag(&self) -> GroupTag {
        self.tag
    }

    pub fn contains(&self, t: &MobiusMap, tol: f64) -> bool {
        self.elements.iter().any(|g| g.psl_eq(t, tol))
    }

    /// Orbit of `p` under the group.
    pub fn orbit(&self, p: SpherePoint, tol: f64) -> Vec<SpherePoint> {
        let mut out: Vec<SpherePoint> = Vec::new();
        for g in &self.elements {
            let q = g.apply(p);
            if !out.iter().any(|x| x.approx_eq(&q, tol)) {
                out.push(q);
            }
        }
        out
    }
}

fn sort_key(g: &MobiusMap) -> [f64; 8] {
    let e = g.entries();
    let r = |x: f64| (x * 1e8).round();
    [
        r(e[0].re),
        r(e[0].im),
        r(e[1].re),
        r(e[1].im),
        r(e[2].re),
        r(e[2].im),
        r(e[3].re),
        r(e[3].im),
    ]
}

/// Tolerance for identity tests on products and powers, which accumulate error.
fn group_tol(tol: f64) -> f64 {
    tol.max(1e-7)
}

/// Isomorphism type from the order and the largest element order.
///
/// Fails with `NotAGroup` when the set is not closed, lacks the identity, or
/// its order profile matches no finite subgroup of PSL(2, C).
pub fn classify_finite_subgroup(elements: &[MobiusMap], tol: f64) -> Result<GroupTag> {
    let gt = group_tol(tol);
    let n = elements.len();
    if n == 0 || !elements.iter().any(|g| g.is_identity(gt)) {
        return Err(Error::NotAGroup("identity missing".into()));
    }
    for (i, g) in elements.iter().enumerate() {
        if elements[..i].iter().any(|h| h.psl_eq(g, gt)) {
            return Err(Error::NotAGroup("repeated element".into()));
        }
        if !elements.iter().any(|h| h.psl_eq(&g.inverse(), gt)) {
            return Err(Error::NotAGroup("not closed under inverses".into()));
        }
        for h in elements {
            let gh = g.compose(h);
            if !elements.iter().any(|k| k.psl_eq(&gh, gt)) {
                return Err(Error::NotAGroup("not closed under composition".into()));
            }
        }
    }
    let mut max_order = 1;
    for g in elements {
        let k = g
            .order(n as u32, gt)
            .ok_or_else(|| Error::NotAGroup("element of infinite order".into()))?;
        if n as u32 % k != 0 {
            return Err(Error::NotAGroup(format!(
                "element order {k} does not divide {n}"
            )));
        }
        max_order = max_order.max(k);
    }
    let n = n as u32;
    match (n, max_order) {
        (n, m) if m == n => Ok(GroupTag::Cyclic(n)),
        (n, m) if n == 2 * m => Ok(GroupTag::Dihedral(m)),
        (12, 3) => Ok(GroupTag::Tetrahedral),
        (24, 4) => Ok(GroupTag::Octahedral),
        (60, 5) => Ok(GroupTag::Icosahedral),
        (n, m) => Err(Error::NotAGroup(format!(
            "order {n} with largest element order {m}"
        ))),
    }
}

/// Labels terms by residue: equal labels iff residues agree within `tol`
/// relative to the largest residue.
pub fn residue_classes(form: &ResiduePoleForm, tol: f64) -> Vec<usize> {
    let scale = form.max_residue();
    let residues = form.residues();
    let mut reps: Vec<Complex64> = Vec::new();
    residues
        .iter()
        .map(
            |r| match reps.iter().position(|q| (q - r).norm() <= tol * scale) {
                Some(k) => k,
                None => {
                    reps.push(*r);
                    reps.len() - 1
                }
            },
        )
        .collect()
}

/// `T_* omega`.
pub fn pushforward(t: &MobiusMap, form: &ResiduePoleForm) -> ResiduePoleForm {
    form.pushforward(t)
}

/// Isotropy group with the default candidate budget.
pub fn isotropy_group(form: &ResiduePoleForm, tol: f64) -> Result<FiniteMobiusGroup> {
    isotropy_group_with_budget(form, tol, DEFAULT_BUDGET)
}

/// The stabilizer `{T : T_* omega = omega}`.
///
/// An element maps each pole to a pole with the same residue, so it is
/// determined by where it sends the first three poles. Every
/// residue-preserving injective choice of those three images gives one
/// candidate map, which is kept when it permutes all terms.
pub fn isotropy_group_with_budget(
    form: &ResiduePoleForm,
    tol: f64,
    budget: u128,
) -> Result<FiniteMobiusGroup> {
    let s = form.s();
    if s == 2 {
        return Err(Error::InfiniteIsotropy);
    }
    let class = residue_classes(form, tol);
    let poles = form.poles();
    let candidates = anchor_images(&class, &class[..3]);
    let count = candidates.len() as u128;
    if count > budget {
        return Err(Error::TooManyPermutations { count, budget });
    }
    let src = [poles[0], poles[1], poles[2]];
    let mut elements: Vec<MobiusMap> = Vec::new();
    for [i, j, k] in candidates {
        let t = match MobiusMap::from_triples(src, [poles[i], poles[j], poles[k]]) {
            Ok(t) => t,
            Err(_) => continue,
        };
        if maps_terms_onto(&t, form, &class, form, &class, tol) {
            elements.push(t);
        }
    }
    FiniteMobiusGroup::new(elements, tol)
}

/// Injective index triples `(i, j, k)` whose classes match `wanted`.
fn anchor_images(class: &[usize], wanted: &[usize]) -> Vec<[usize; 3]> {
    let n = class.len();
    let mut out = Vec::new();
    for i in (0..n).filter(|&i| class[i] == wanted[0]) {
        for j in (0..n).filter(|&j| j != i && class[j] == wanted[1]) {
            for k in (0..n).filter(|&k| k != i && k != j && class[k] == wanted[2]) {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// Whether `t` sends every term of `from` onto a distinct term of `to` with a matching class.
fn maps_terms_onto(
    t: &MobiusMap,
    from: &ResiduePoleForm,
    from_class: &[usize],
    to: &ResiduePoleForm,
    to_class: &[usize],
    tol: f64,
) -> bool {
    let targets = to.poles();
    let mut used = vec![false; targets.len()];
    for (idx, term) in from.terms().iter().enumerate() {
        let image = t.apply(term.pole);
        let hit = (0..targets.len()).find(|&k| {
            !used[k] && to_class[k] == from_class[idx] && targets[k].approx_eq(&image, tol)
        });
        match hit {
            Some(k) => used[k] = true,
            None => return false,
        }
    }
    true
}

/// Classes shared across two forms, so residues can be matched between them.
fn joint_classes(a: &ResiduePoleForm, b: &ResiduePoleForm, tol: f64) -> (Vec<usize>, Vec<usize>) {
    let scale = a.max_residue().max(b.max_residue());
    let mut reps: Vec<Complex64> = Vec::new();
    let mut label = |r: Complex64| match reps.iter().position(|q| (q - r).norm() <= tol * scale) {
        Some(k) => k,
        None => {
            reps.push(r);
            reps.len() - 1
        }
    };
    let ca = a.residues().into_iter().map(&mut label).collect();
    let cb = b.residues().into_iter().map(&mut label).collect();
    (ca, cb)
}

/// Some `T` with `T_* omega = eta` (as sets of terms), if one exists.
pub fn are_psl_equivalent(
    omega: &ResiduePoleForm,
    eta: &ResiduePoleForm,
    tol: f64,
) -> Option<MobiusMap> {
    if omega.s() != eta.s() {
        return None;
    }
    let (ca, cb) = joint_classes(omega, eta, tol);
    let mut sorted_a = ca.clone();
    let mut sorted_b = cb.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return None;
    }
    let pa = omega.poles();
    let pb = eta.poles();

    if omega.s() == 2 {
        // Two poles fix a map only up to z -> az; pin a third point off the poles.
        let z3 = free_point(&pa)?;
        let w3 = free_point(&pb)?;
        let order: [[usize; 2]; 2] = [[0, 1], [1, 0]];
        for [i, j] in order {
            if cb[i] != ca[0] || cb[j] != ca[1] {
                continue;
            }
            if let Ok(t) = MobiusMap::from_triples([pa[0], pa[1], z3], [pb[i], pb[j], w3]) {
                if maps_terms_onto(&t, omega, &ca, eta, &cb, tol) {
                    return Some(t);
                }
            }
        }
        return None;
    }

    let src = [pa[0], pa[1], pa[2]];
    for [i, j, k] in anchor_images(&cb, &ca[..3]) {
        if let Ok(t) = MobiusMap::from_triples(src, [pb[i], pb[j], pb[k]]) {
            if maps_terms_onto(&t, omega, &ca, eta, &cb, tol) {
                return Some(t);
            }
        }
    }
    None
}

fn free_point(poles: &[SpherePoint]) -> Option<SpherePoint> {
    [1.0, -1.0, 2.0, -2.0, 3.0]
        .into_iter()
        .map(SpherePoint::from)
        .chain([SpherePoint::new(0.0, 1.0), SpherePoint::new(0.0, -1.0)])
        .find(|z| poles.iter().all(|p| p.chordal_distance(z) > 0.1))
}

fn roots_of_unity(n: usize, phase: f64) -> Vec<SpherePoint> {
    (0..n)
        .map(|k| {
            SpherePoint::Finite(Complex64::from_polar(
                1.0,
                phase + 2.0 * PI * k as f64 / n as f64,
            ))
        })
        .collect()
}

fn imaginary(y: f64) -> Complex64 {
    Complex64::new(0.0, y)
}

/// Pyramid form `<i, .., i, -n i; zeta_1, .., zeta_n, 0>` with cyclic isotropy of order `n`.
pub fn realize_cyclic(n: usize) -> Result<ResiduePoleForm> {
    if n < 2 {
        return Err(Error::Shape("cyclic realization needs n >= 2".into()));
    }
    let mut residues = vec![imaginary(1.0); n];
    residues.push(imaginary(-(n as f64)));
    let mut poles = roots_of_unity(n, 0.0);
    poles.push(SpherePoint::ZERO);
    ResiduePoleForm::new(residues, poles, 1e-12)
}

/// Bipyramid form `<i, .., i, -n/2 i, -n/2 i; zeta_1, .., zeta_n, 0, inf>` with dihedral isotropy.
pub fn realize_dihedral(n: usize) -> Result<ResiduePoleForm> {
    if n < 2 {
        return Err(Error::Shape("dihedral realization needs n >= 2".into()));
    }
    let half = n as f64 / 2.0;
    let mut residues = vec![imaginary(1.0); n];
    residues.extend([imaginary(-half), imaginary(-half)]);
    let mut poles = roots_of_unity(n, 0.0);
    poles.extend([SpherePoint::ZERO, SpherePoint::Infinity]);
    ResiduePoleForm::new(residues, poles, 1e-12)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlatonicSolid {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
}

impl PlatonicSolid {
    pub const ALL: [PlatonicSolid; 5] = [
        PlatonicSolid::Tetrahedron,
        PlatonicSolid::Cube,
        PlatonicSolid::Octahedron,
        PlatonicSolid::Dodecahedron,
        PlatonicSolid::Icosahedron,
    ];

    pub fn rotation_group(&self) -> GroupTag {
        match self {
            PlatonicSolid::Tetrahedron => GroupTag::Tetrahedral,
            PlatonicSolid::Cube | PlatonicSolid::Octahedron => GroupTag::Octahedral,
            PlatonicSolid::Dodecahedron | PlatonicSolid::Icosahedron => GroupTag::Icosahedral,
        }
    }

    pub fn dual(&self) -> PlatonicSolid {
        match self {
            PlatonicSolid::Tetrahedron => PlatonicSolid::Tetrahedron,
            PlatonicSolid::Cube => PlatonicSolid::Octahedron,
            PlatonicSolid::Octahedron => PlatonicSolid::Cube,
            PlatonicSolid::Dodecahedron => PlatonicSolid::Icosahedron,
            PlatonicSolid::Icosahedron => PlatonicSolid::Dodecahedron,
        }
    }

    /// Vertices on the sphere, placed so that the solid and its dual have
    /// antipodal or face-centred vertex sets.
    pub fn vertices(&self) -> Vec<SpherePoint> {
        let scaled = |pts: Vec<SpherePoint>, k: f64| -> Vec<SpherePoint> {
            pts.into_iter()
                .map(|p| SpherePoint::Finite(p.finite().unwrap() * k))
                .collect()
        };
        match self {
            PlatonicSolid::Tetrahedron => {
                let mut v = scaled(roots_of_unity(3, 0.0), 0.5f64.sqrt());
                v.push(SpherePoint::Infinity);
                v
            }
            PlatonicSolid::Cube => {
                let lam = (6f64.sqrt() - 2f64.sqrt()) / 2.0;
                let mut v = scaled(roots_of_unity(4, 0.0), lam);
                v.extend(scaled(roots_of_unity(4, 0.0), 1.0 / lam));
                v
            }
            PlatonicSolid::Octahedron => {
                let mut v = roots_of_unity(4, PI / 4.0);
                v.extend([SpherePoint::ZERO, SpherePoint::Infinity]);
                v
            }
            PlatonicSolid::Icosahedron => {
                let phi = (1.0 + 5f64.sqrt()) / 2.0;
                let mut v = vec![SpherePoint::ZERO, SpherePoint::Infinity];
                v.extend(scaled(roots_of_unity(5, 0.0), 1.0 / phi));
                v.extend(scaled(roots_of_unity(5, PI / 5.0), phi));
                v
            }
            PlatonicSolid::Dodecahedron => face_centres(&PlatonicSolid::Icosahedron.vertices()),
        }
    }
}

/// Antipodal image of [`PlatonicSolid::Tetrahedron`]'s vertices, which is its dual.
fn dual_tetrahedron() -> Vec<SpherePoint> {
    let eps = roots_of_unity(3, PI / 3.0);
    let mut v: Vec<SpherePoint> = eps
        .into_iter()
        .map(|p| SpherePoint::Finite(p.finite().unwrap() * 2f64.sqrt()))
        .collect();
    v.push(SpherePoint::ZERO);
    v
}

/// Normalized centroids of the triangular faces of a convex polyhedron with
/// all edges of equal length.
fn face_centres(vertices: &[SpherePoint]) -> Vec<SpherePoint> {
    let v: Vec<[f64; 3]> = vertices.iter().map(|p| p.to_unit_vector()).collect();
    let dist = |a: &[f64; 3], b: &[f64; 3]| {
        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
    };
    let mut edge = f64::INFINITY;
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            edge = edge.min(dist(&v[i], &v[j]));
        }
    }
    let adjacent = |i: usize, j: usize| (dist(&v[i], &v[j]) - edge).abs() < 1e-9;
    let mut out = Vec::new();
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            for k in (j + 1)..v.len() {
                if adjacent(i, j) && adjacent(j, k) && adjacent(i, k) {
                    let c = [0, 1, 2].map(|t| v[i][t] + v[j][t] + v[k][t]);
                    out.push(SpherePoint::from_unit_vector(c));
                }
            }
        }
    }
    out
}

/// Residue `i` at the vertices of `solid` and `-k i` at those of its dual,
/// with `k = #V(solid) / #V(dual)` so the residues sum to zero.
pub fn realize_platonic(solid: PlatonicSolid) -> Result<ResiduePoleForm> {
    let primal = solid.vertices();
    let dual = match solid {
        PlatonicSolid::Tetrahedron => dual_tetrahedron(),
        other => other.dual().vertices(),
    };
    let k = primal.len() as f64 / dual.len() as f64;
    let mut residues = vec![imaginary(1.0); primal.len()];
    residues.extend(vec![imaginary(-k); dual.len()]);
    let mut poles = primal;
    poles.extend(dual);
    ResiduePoleForm::new(residues, poles, 1e-12)
}

/// Whether some form with `s` simple poles has isotropy isomorphic to `g`,
/// by the congruence conditions on `s`.
pub fn realizable_isotropy(s: usize, g: GroupTag) -> bool {
    if s < 3 {
        return false;
    }
    let polyhedral = |m: usize, rests: &[usize]| {
        (0..=s / m).any(|n1| {
            let n2 = s - m * n1;
            rests.contains(&n2) && n1 + n2 >= 2
        })
    };
    match g {
        GroupTag::Cyclic(n) => {
            let n = n as usize;
            n >= 2 && s > n && matches!(s % n, 0 | 1 | 2)
        }
        GroupTag::Dihedral(n) => {
            let n = n as usize;
            n >= 2 && s > n && matches!(s % n, 0 | 2)
        }
        GroupTag::Tetrahedral => polyhedral(12, &[0, 8, 10, 14, 16, 18]),
        GroupTag::Octahedral => polyhedral(24, &[0, 14, 18, 20, 26, 30, 32, 36]),
        GroupTag::Icosahedral => polyhedral(60, &[0, 32, 42, 50, 62, 72, 80, 90]),
    }
}

/// All nontrivial groups realizable as isotropy for `s` poles: cyclic, then
/// dihedral, then polyhedral.
pub fn isotropy_table(s: usize) -> Vec<GroupTag> {
    let n_max = s.max(2) as u32;
    (2..n_max)
        .map(GroupTag::Cyclic)
        .chain((2..n_max).map(GroupTag::Dihedral))
        .chain([
            GroupTag::Tetrahedral,
            GroupTag::Octahedral,
            GroupTag::Icosahedral,
        ])
        .filter(|g| realizable_isotropy(s, *g))
        .collect()
}

/// Cross-ratio value fixed by the transposition of terms `a` and `b`
/// (0-based): `(12)` and `(34)` fix -1, `(13)` and `(24)` fix 1/2, `(14)`
/// and `(23)` fix 2.
fn transposition_value(a: usize, b: usize) -> Complex64 {
    let (a, b) = (a.min(b), a.max(b));
    match (a, b) {
        (0, 1) | (2, 3) => Complex64::new(-1.0, 0.0),
        (0, 2) | (1, 3) => Complex64::new(0.5, 0.0),
        (0, 3) | (1, 2) => Complex64::new(2.0, 0.0),
        _ => unreachable!("indices are below 4"),
    }
}

/// Isotropy type of a four-pole form from its residue pattern and the
/// cross-ratio of its poles.
pub fn isotropy_s4_by_cross_ratio(form: &ResiduePoleForm, tol: f64) -> Result<GroupTag> {
    if form.s() != 4 {
        return Err(Error::Shape(format!("expected 4 poles, got {}", form.s())));
    }
    let p = form.poles();
    let lambda = cross_ratio(p[0], p[1], p[2], p[3])?;
    let ctol = tol * 1e3;
    let near = |v: Complex64| lambda.approx_eq(&SpherePoint::Finite(v), ctol);
    let class = residue_classes(form, tol);

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, c) in class.iter().enumerate() {
        match groups.iter_mut().find(|g| class[g[0]] == *c) {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    let pairs: Vec<&Vec<usize>> = groups.iter().filter(|g| g.len() == 2).collect();
    let triple = groups.iter().find(|g| g.len() == 3);

    let harmonic = [-1.0, 0.5, 2.0]
        .iter()
        .any(|&v| near(Complex64::new(v, 0.0)));
    let half_sqrt3 = 3f64.sqrt() / 2.0;
    let equianharmonic =
        near(Complex64::new(0.5, half_sqrt3)) || near(Complex64::new(0.5, -half_sqrt3));

    let tag = if let Some(_t) = triple {
        if equianharmonic {
            GroupTag::Cyclic(3)
        } else if harmonic {
            GroupTag::Cyclic(2)
        } else {
            GroupTag::Cyclic(1)
        }
    } else if pairs.len() == 2 {
        let v = transposition_value(pairs[0][0], pairs[0][1]);
        if near(v) {
            GroupTag::Dihedral(2)
        } else {
            GroupTag::Cyclic(2)
        }
    } else if pairs.len() == 1 {
        if near(transposition_value(pairs[0][0], pairs[0][1])) {
            GroupTag::Cyclic(2)
        } else {
            GroupTag::Cyclic(1)
        }
    } else {
        GroupTag::Cyclic(1)
    };
    Ok(tag)
}

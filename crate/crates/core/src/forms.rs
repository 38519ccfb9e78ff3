//! Rational 1-forms `Q(z)/P(z) dz` with `s` simple poles, in three charts.
//!
//! * [`ResiduePoleForm`]: residues and poles `<r_1..r_s; p_1..p_s>`, residues summing to zero.
//! * [`CoefficientForm`]: projective coefficients `[a_{s-2} : .. : a_0 : b_s : .. : b_0]`.
//! * [`ZeroPoleForm`]: zeros, poles, and a scale `lambda` read in a chart `alpha`.
//!
//! At most one pole sits at infinity. In the coefficient chart it shows up as
//! `b_s = 0`; zeros at infinity show up as a degree deficit of `Q`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mobius::MobiusMap;
use crate::poly::{viete, ComplexPoly, RootOptions, NEAR_ZERO_REL};
use crate::sphere::SpherePoint;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Tolerance used for the internal root-finding residual checks.
const ROOT_TOL: f64 = 1e-8;

/// One summand `r / (z - p)` of a form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Term {
    pub residue: Complex64,
    pub pole: SpherePoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    ResiduePole,
    Coefficient,
    ZeroPole,
}

impl Representation {
    pub fn name(&self) -> &'static str {
        match self {
            Representation::ResiduePole => "residue_pole",
            Representation::Coefficient => "coefficient",
            Representation::ZeroPole => "zero_pole",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "residue_pole" => Some(Representation::ResiduePole),
            "coefficient" => Some(Representation::Coefficient),
            "zero_pole" => Some(Representation::ZeroPole),
            _ => None,
        }
    }
}

fn check_finite(values: &[Complex64]) -> Result<()> {
    if values.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

fn check_distinct(points: &[SpherePoint], tol: f64) -> Result<()> {
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i].approx_eq(&points[j], tol) {
                return Err(Error::RepeatedPole {
                    first: i,
                    second: j,
                });
            }
        }
    }
    Ok(())
}

fn finite_points(points: &[SpherePoint]) -> Vec<Complex64> {
    points.iter().filter_map(|p| p.finite()).collect()
}

/// Rounding bound `sum |c_k| |z|^k` for evaluating `coeffs` at `z`.
fn eval_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let az = z.norm();
    coeffs.iter().fold(0.0, |acc, c| acc * az + c.norm())
}

/// Residue-chart representative `<r_1..r_s; p_1..p_s>`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResiduePoleForm {
    terms: Vec<Term>,
}

impl ResiduePoleForm {
    /// Validates and, when `|sum r| <= tol * sum |r|`, projects the residues
    /// onto the hyperplane `sum r = 0`. Sums already at rounding level are
    /// left alone so that rebuilding a form reproduces it bit for bit.
    pub fn new(residues: Vec<Complex64>, poles: Vec<SpherePoint>, tol: f64) -> Result<Self> {
        if residues.len() != poles.len() {
            return Err(Error::Shape(format!(
                "{} residues but {} poles",
                residues.len(),
                poles.len()
            )));
        }
        if residues.len() < 2 {
            return Err(Error::Shape("a form needs at least two poles".into()));
        }
        check_finite(&residues)?;
        check_finite(&finite_points(&poles))?;
        check_distinct(&poles, tol)?;
        let scale: f64 = residues.iter().map(|r| r.norm()).fold(0.0, f64::max);
        if let Some(index) = residues
            .iter()
            .position(|r| r.norm() <= tol * scale || scale == 0.0)
        {
            return Err(Error::ZeroResidue { index });
        }
        let sum: Complex64 = residues.iter().sum();
        let total: f64 = residues.iter().map(|r| r.norm()).sum();
        if sum.norm() > tol * total {
            return Err(Error::ResidueTheoremViolation {
                sum_re: sum.re,
                sum_im: sum.im,
            });
        }
        let rounding = 4.0 * residues.len() as f64 * f64::EPSILON * total;
        let shift = if sum.norm() <= rounding {
            ZERO
        } else {
            sum / residues.len() as f64
        };
        let terms = residues
            .into_iter()
            .zip(poles)
            .map(|(r, p)| Term {
                residue: r - shift,
                pole: p,
            })
            .collect();
        Ok(ResiduePoleForm { terms })
    }

    pub fn from_terms(terms: Vec<Term>, tol: f64) -> Result<Self> {
        let (r, p) = terms.iter().map(|t| (t.residue, t.pole)).unzip();
        Self::new(r, p, tol)
    }

    pub fn s(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn residues(&self) -> Vec<Complex64> {
        self.terms.iter().map(|t| t.residue).collect()
    }

    pub fn poles(&self) -> Vec<SpherePoint> {
        self.terms.iter().map(|t| t.pole).collect()
    }

    pub fn max_residue(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.residue.norm())
            .fold(0.0, f64::max)
    }

    /// Terms reordered so that term `i` of the result is term `order[i]` of `self`.
    pub fn reordered(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.s(), "reordering must be a permutation");
        ResiduePoleForm {
            terms: order.iter().map(|&i| self.terms[i]).collect(),
        }
    }

    /// `T_* omega`: residues kept, poles moved by `t`.
    pub fn pushforward(&self, t: &MobiusMap) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|term| Term {
                residue: term.residue,
                pole: t.apply(term.pole),
            })
            .collect();
        ResiduePoleForm { terms }
    }

    /// Residues multiplied by `k` (used by the extended action).
    pub fn scaled(&self, k: Complex64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                residue: t.residue * k,
                pole: t.pole,
            })
            .collect();
        ResiduePoleForm { terms }
    }

    pub fn is_isochronous(&self, tol: f64) -> bool {
        self.terms
            .iter()
            .all(|t| t.residue.re.abs() <= tol * t.residue.norm())
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let zp = SpherePoint::Finite(z);
        let mut acc = ZERO;
        for t in &self.terms {
            if let SpherePoint::Finite(p) = t.pole {
                if zp.approx_eq(&t.pole, 1e-14) {
                    return Err(Error::EvaluationAtPole);
                }
                acc += t.residue / (z - p);
            }
        }
        Ok(acc)
    }

    /// Multiset equality of terms: poles within `tol` (chordal), residues
    /// within `tol` relative to the largest residue.
    pub fn same_terms(&self, other: &ResiduePoleForm, tol: f64) -> bool {
        if self.s() != other.s() {
            return false;
        }
        let scale = self.max_residue().max(other.max_residue());
        let mut used = vec![false; other.s()];
        for t in &self.terms {
            let hit = other.terms.iter().enumerate().position(|(k, u)| {
                !used[k]
                    && t.pole.approx_eq(&u.pole, tol)
                    && (t.residue - u.residue).norm() <= tol * scale
            });
            match hit {
                Some(k) => used[k] = true,
                None => return false,
            }
        }
        true
    }

    /// Coefficients of `sum_j r_j prod_{i != j} (z - p_i)` over `prod (z - p_i)`,
    /// with infinite poles left out of both products.
    pub fn to_coefficient(&self) -> CoefficientForm {
        let s = self.s();
        let finite: Vec<(Complex64, Complex64)> = self
            .terms
            .iter()
            .filter_map(|t| t.pole.finite().map(|p| (t.residue, p)))
            .collect();
        let poles: Vec<Complex64> = finite.iter().map(|(_, p)| *p).collect();

        let mut numerator = ComplexPoly::zero();
        for (j, (r, _)) in finite.iter().enumerate() {
            let others: Vec<Complex64> = poles
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != j)
                .map(|(_, p)| *p)
                .collect();
            numerator = numerator.add(&viete(*r, &others));
        }
        // Without a pole at infinity the z^{s-1} coefficient is sum r = 0; drop it.
        let mut a = numerator.padded(s - 1);
        if a.len() == s {
            a.remove(0);
        }
        let b = viete(ONE, &poles).padded(s);
        CoefficientForm {
            a,
            b,
            poles: self.poles(),
        }
    }

    pub fn to_zero_pole(&self, tol: f64) -> Result<ZeroPoleForm> {
        self.to_coefficient().to_zero_pole(tol)
    }
}

/// Projective coefficient vector `[a_{s-2} .. a_0 : b_s .. b_0]` of `Q/P dz`.
#[derive(Clone, Debug)]
pub struct CoefficientForm {
    a: Vec<Complex64>,
    b: Vec<Complex64>,
    /// Roots of `P`, plus infinity when `b_s = 0`; found during validation.
    poles: Vec<SpherePoint>,
}

impl PartialEq for CoefficientForm {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl CoefficientForm {
    /// Validates the coefficient vector: `deg P` is `s` or `s - 1`, `P` has
    /// simple roots, and `P`, `Q` share no root (including infinity).
    pub fn new(a: Vec<Complex64>, b: Vec<Complex64>, tol: f64) -> Result<Self> {
        if b.len() < 3 || a.len() + 2 != b.len() {
            return Err(Error::Shape(format!(
                "expected s-1 numerator and s+1 denominator coefficients, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        check_finite(&a)?;
        check_finite(&b)?;
        let bmax = b.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let amax = a.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if bmax == 0.0 {
            return Err(Error::Shape("denominator is zero".into()));
        }
        if amax == 0.0 {
            return Err(Error::CommonZeroPole);
        }
        let mut b = b;
        let pole_at_inf = b[0].norm() <= NEAR_ZERO_REL * bmax;
        if pole_at_inf {
            b[0] = ZERO;
            if b[1].norm() <= NEAR_ZERO_REL * bmax {
                return Err(Error::MultiplePole);
            }
            if a[0].norm() <= NEAR_ZERO_REL * amax {
                return Err(Error::CommonZeroPole);
            }
        }
        let denominator = ComplexPoly::new(b.clone());
        let opts = RootOptions {
            tol: ROOT_TOL,
            ..RootOptions::default()
        };
        let grouped = denominator.grouped_roots(&opts)?;
        if grouped.iter().any(|(_, m)| *m > 1) {
            return Err(Error::MultiplePole);
        }
        let mut poles: Vec<SpherePoint> = grouped
            .iter()
            .map(|(z, _)| SpherePoint::Finite(*z))
            .collect();
        if pole_at_inf {
            poles.push(SpherePoint::Infinity);
        }
        if check_distinct(&poles, tol).is_err() {
            return Err(Error::MultiplePole);
        }
        for (z, _) in &grouped {
            let q = ComplexPoly::new(a.clone()).eval(*z);
            if q.norm() <= NEAR_ZERO_REL * eval_scale(&a, *z) {
                return Err(Error::CommonZeroPole);
            }
        }
        Ok(CoefficientForm { a, b, poles })
    }

    pub fn s(&self) -> usize {
        self.b.len() - 1
    }

    pub fn a(&self) -> &[Complex64] {
        &self.a
    }

    pub fn b(&self) -> &[Complex64] {
        &self.b
    }

    pub fn poles(&self) -> &[SpherePoint] {
        &self.poles
    }

    pub fn numerator(&self) -> ComplexPoly {
        ComplexPoly::new(self.a.clone())
    }

    pub fn denominator(&self) -> ComplexPoly {
        ComplexPoly::new(self.b.clone())
    }

    /// Concatenated vector `[a | b]`.
    pub fn vector(&self) -> Vec<Complex64> {
        self.a.iter().chain(&self.b).copied().collect()
    }

    /// Representative scaled so its largest-magnitude entry is 1.
    pub fn normalized(&self) -> CoefficientForm {
        let v = self.vector();
        let k = max_index(&v);
        let inv = v[k].inv();
        CoefficientForm {
            a: self.a.iter().map(|c| c * inv).collect(),
            b: self.b.iter().map(|c| c * inv).collect(),
            poles: self.poles.clone(),
        }
    }

    /// Equality as points of projective space, relative to the largest entry.
    pub fn projective_eq(&self, other: &CoefficientForm, tol: f64) -> bool {
        self.projective_distance(other) <= tol
    }

    /// `max |u - v| / max |u|` after scaling `v` to agree with `u` at `u`'s largest entry.
    pub fn projective_distance(&self, other: &CoefficientForm) -> f64 {
        let u = self.vector();
        let v = other.vector();
        if u.len() != v.len() {
            return f64::INFINITY;
        }
        let k = max_index(&u);
        if v[k] == ZERO {
            return f64::INFINITY;
        }
        let ratio = u[k] / v[k];
        let diff = u
            .iter()
            .zip(&v)
            .map(|(x, y)| (x - y * ratio).norm())
            .fold(0.0, f64::max);
        diff / u[k].norm()
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let zp = SpherePoint::Finite(z);
        if self.poles.iter().any(|p| p.approx_eq(&zp, 1e-14)) {
            return Err(Error::EvaluationAtPole);
        }
        let den = self.denominator().eval(z);
        if den == ZERO {
            return Err(Error::EvaluationAtPole);
        }
        Ok(self.numerator().eval(z) / den)
    }

    /// Partial fractions: residue `Q(p)/P'(p)` at each finite pole, and
    /// minus their sum at infinity.
    pub fn to_residue_pole(&self, tol: f64) -> Result<ResiduePoleForm> {
        let q = self.numerator();
        let dp = self.denominator().derivative();
        let mut residues = Vec::with_capacity(self.s());
        for p in &self.poles {
            if let SpherePoint::Finite(z) = p {
                residues.push(q.eval(*z) / dp.eval(*z));
            }
        }
        if self.poles.len() > residues.len() {
            let sum: Complex64 = residues.iter().sum();
            residues.push(-sum);
        }
        ResiduePoleForm::new(residues, self.poles.clone(), tol)
    }

    /// Zeros are the roots of `Q`, padded with infinity to `s - 2` entries.
    pub fn to_zero_pole(&self, tol: f64) -> Result<ZeroPoleForm> {
        let s = self.s();
        let amax = self.a.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let lead = self
            .a
            .iter()
            .position(|c| c.norm() > NEAR_ZERO_REL * amax)
            .unwrap_or(0);
        let q = ComplexPoly::new(self.a[lead..].to_vec());
        let mut zeros: Vec<SpherePoint> = q
            .roots(ROOT_TOL)?
            .into_iter()
            .map(SpherePoint::Finite)
            .collect();
        while zeros.len() < s - 2 {
            zeros.push(SpherePoint::Infinity);
        }
        let chart = least_admissible_chart(&zeros, &self.poles, tol)?;
        let alpha = Complex64::new(chart as f64, 0.0);
        let lambda = self.numerator().eval(alpha) / self.denominator().eval(alpha);
        ZeroPoleForm::new(zeros, self.poles.clone(), lambda, Some(chart), tol)
    }
}

fn max_index(v: &[Complex64]) -> usize {
    let mut best = 0;
    for (i, c) in v.iter().enumerate() {
        if c.norm() > v[best].norm() {
            best = i;
        }
    }
    best
}

/// `prod (alpha - x)` over the finite points.
fn monic_eval(points: &[SpherePoint], alpha: Complex64) -> Complex64 {
    points
        .iter()
        .filter_map(|p| p.finite())
        .map(|x| alpha - x)
        .product()
}

fn chart_admissible(zeros: &[SpherePoint], poles: &[SpherePoint], chart: usize, tol: f64) -> bool {
    let s = poles.len();
    if chart == 0 || chart > 2 * s - 1 {
        return false;
    }
    let alpha = SpherePoint::from(chart as f64);
    zeros.iter().chain(poles).all(|p| !p.approx_eq(&alpha, tol))
}

/// Least `alpha` in `1..=2s-1` that is neither a zero nor a pole.
pub fn least_admissible_chart(
    zeros: &[SpherePoint],
    poles: &[SpherePoint],
    tol: f64,
) -> Result<usize> {
    (1..2 * poles.len())
        .find(|&k| chart_admissible(zeros, poles, k, tol))
        .ok_or(Error::BadChart { chart: 0 })
}

/// Transition `phi_{alpha beta} = (Q_u(alpha)/P_u(alpha)) (P_u(beta)/Q_u(beta))`
/// between the zero-pole charts `alpha` and `beta`.
pub fn transition(
    zeros: &[SpherePoint],
    poles: &[SpherePoint],
    alpha: usize,
    beta: usize,
    tol: f64,
) -> Result<Complex64> {
    for chart in [alpha, beta] {
        if !chart_admissible(zeros, poles, chart, tol) {
            return Err(Error::BadChart { chart });
        }
    }
    if alpha == beta {
        return Ok(ONE);
    }
    let a = Complex64::new(alpha as f64, 0.0);
    let b = Complex64::new(beta as f64, 0.0);
    Ok((monic_eval(zeros, a) / monic_eval(poles, a))
        * (monic_eval(poles, b) / monic_eval(zeros, b)))
}

/// Zero-pole chart `[{c}, {p}, lambda]` read in chart `alpha`, so that the
/// form is `lambda (P_u(alpha)/Q_u(alpha)) Q_u(z)/P_u(z) dz` with monic `Q_u`, `P_u`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroPoleForm {
    zeros: Vec<SpherePoint>,
    poles: Vec<SpherePoint>,
    lambda: Complex64,
    chart: usize,
}

impl ZeroPoleForm {
    /// `chart = None` picks the least admissible chart.
    pub fn new(
        zeros: Vec<SpherePoint>,
        poles: Vec<SpherePoint>,
        lambda: Complex64,
        chart: Option<usize>,
        tol: f64,
    ) -> Result<Self> {
        let s = poles.len();
        if s < 2 || zeros.len() + 2 != s {
            return Err(Error::Shape(format!(
                "expected s-2 zeros for s poles, got {} zeros and {} poles",
                zeros.len(),
                s
            )));
        }
        check_finite(&finite_points(&zeros))?;
        check_finite(&finite_points(&poles))?;
        check_finite(&[lambda])?;
        if lambda == ZERO {
            return Err(Error::Shape("lambda must be nonzero".into()));
        }
        check_distinct(&poles, tol)?;
        if zeros
            .iter()
            .any(|c| poles.iter().any(|p| c.approx_eq(p, tol)))
        {
            return Err(Error::CommonZeroPole);
        }
        let chart = match chart {
            Some(k) if chart_admissible(&zeros, &poles, k, tol) => k,
            Some(k) => return Err(Error::BadChart { chart: k }),
            None => least_admissible_chart(&zeros, &poles, tol)?,
        };
        Ok(ZeroPoleForm {
            zeros,
            poles,
            lambda,
            chart,
        })
    }

    pub fn s(&self) -> usize {
        self.poles.len()
    }

    pub fn zeros(&self) -> &[SpherePoint] {
        &self.zeros
    }

    pub fn poles(&self) -> &[SpherePoint] {
        &self.poles
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    /// The same form read in chart `beta`: `lambda_beta = phi_{beta alpha} lambda_alpha`.
    pub fn in_chart(&self, beta: usize, tol: f64) -> Result<ZeroPoleForm> {
        let phi = transition(&self.zeros, &self.poles, beta, self.chart, tol)?;
        Ok(ZeroPoleForm {
            lambda: phi * self.lambda,
            chart: beta,
            ..self.clone()
        })
    }

    /// Constant `k` with `omega = k Q_u(z)/P_u(z) dz`.
    fn scale(&self) -> Complex64 {
        let alpha = Complex64::new(self.chart as f64, 0.0);
        self.lambda * monic_eval(&self.poles, alpha) / monic_eval(&self.zeros, alpha)
    }

    /// Zeros with multiplicities, grouped within `tol`.
    pub fn zero_multiplicities(&self, tol: f64) -> Vec<(SpherePoint, usize)> {
        let mut out: Vec<(SpherePoint, usize)> = Vec::new();
        for z in &self.zeros {
            match out.iter_mut().find(|(c, _)| c.approx_eq(z, tol)) {
                Some((_, m)) => *m += 1,
                None => out.push((*z, 1)),
            }
        }
        out
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let zp = SpherePoint::Finite(z);
        if self.poles.iter().any(|p| p.approx_eq(&zp, 1e-14)) {
            return Err(Error::EvaluationAtPole);
        }
        Ok(self.scale() * monic_eval(&self.zeros, z) / monic_eval(&self.poles, z))
    }

    pub fn to_coefficient(&self) -> CoefficientForm {
        let s = self.s();
        let k = self.scale();
        let a = viete(k, &finite_points(&self.zeros)).padded(s - 2);
        let b = viete(ONE, &finite_points(&self.poles)).padded(s);
        CoefficientForm {
            a,
            b,
            poles: self.poles.clone(),
        }
    }

    /// Residue `k Q_u(p) / prod_{q != p} (p - q)` at each finite pole; the
    /// residue at infinity is minus their sum.
    pub fn to_residue_pole(&self, tol: f64) -> Result<ResiduePoleForm> {
        let k = self.scale();
        let finite = finite_points(&self.poles);
        let mut residues = Vec::with_capacity(self.s());
        for (i, &p) in finite.iter().enumerate() {
            let den: Complex64 = finite
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| p - q)
                .product();
            residues.push(k * monic_eval(&self.zeros, p) / den);
        }
        let mut poles: Vec<SpherePoint> = finite.iter().map(|&p| SpherePoint::Finite(p)).collect();
        if poles.len() < self.s() {
            let sum: Complex64 = residues.iter().sum();
            residues.push(-sum);
            poles.push(SpherePoint::Infinity);
        }
        ResiduePoleForm::new(residues, poles, tol)
    }
}

/// A form in any of the three charts.
#[derive(Clone, Debug, PartialEq)]
pub enum Form {
    ResiduePole(ResiduePoleForm),
    Coefficient(CoefficientForm),
    ZeroPole(ZeroPoleForm),
}

impl Form {
    pub fn s(&self) -> usize {
        match self {
            Form::ResiduePole(f) => f.s(),
            Form::Coefficient(f) => f.s(),
            Form::ZeroPole(f) => f.s(),
        }
    }

    pub fn representation(&self) -> Representation {
        match self {
            Form::ResiduePole(_) => Representation::ResiduePole,
            Form::Coefficient(_) => Representation::Coefficient,
            Form::ZeroPole(_) => Representation::ZeroPole,
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match self {
            Form::ResiduePole(f) => f.eval(z),
            Form::Coefficient(f) => f.eval(z),
            Form::ZeroPole(f) => f.eval(z),
        }
    }

    pub fn to_residue_pole(&self, tol: f64) -> Result<ResiduePoleForm> {
        match self {
            Form::ResiduePole(f) => Ok(f.clone()),
            Form::Coefficient(f) => f.to_residue_pole(tol),
            Form::ZeroPole(f) => f.to_residue_pole(tol),
        }
    }

    pub fn to_coefficient(&self) -> CoefficientForm {
        match self {
            Form::ResiduePole(f) => f.to_coefficient(),
            Form::Coefficient(f) => f.clone(),
            Form::ZeroPole(f) => f.to_coefficient(),
        }
    }

    pub fn to_zero_pole(&self, tol: f64) -> Result<ZeroPoleForm> {
        match self {
            Form::ResiduePole(f) => f.to_zero_pole(tol),
            Form::Coefficient(f) => f.to_zero_pole(tol),
            Form::ZeroPole(f) => Ok(f.clone()),
        }
    }

    pub fn convert(&self, target: Representation, tol: f64) -> Result<Form> {
        Ok(match target {
            Representation::ResiduePole => Form::ResiduePole(self.to_residue_pole(tol)?),
            Representation::Coefficient => Form::Coefficient(self.to_coefficient()),
            Representation::ZeroPole => Form::ZeroPole(self.to_zero_pole(tol)?),
        })
    }

    pub fn is_isochronous(&self, tol: f64) -> Result<bool> {
        Ok(self.to_residue_pole(tol)?.is_isochronous(tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pt(re: f64) -> SpherePoint {
        SpherePoint::from(re)
    }

    const TOL: f64 = 1e-9;

    fn dz_over_z() -> ResiduePoleForm {
        ResiduePoleForm::new(
            vec![c(1.0, 0.0), c(-1.0, 0.0)],
            vec![pt(0.0), SpherePoint::Infinity],
            TOL,
        )
        .unwrap()
    }

    fn close_vec(u: &[Complex64], v: &[Complex64], tol: f64) -> bool {
        u.len() == v.len() && u.iter().zip(v).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn validation_examples() {
        let ok = ResiduePoleForm::new(
            vec![c(1.0, 0.0), c(-1.0, 0.0)],
            vec![pt(1.0), pt(-1.0)],
            TOL,
        );
        assert!(ok.is_ok());
        let bad = ResiduePoleForm::new(
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![pt(0.0), SpherePoint::Infinity],
            TOL,
        );
        assert!(matches!(bad, Err(Error::ResidueTheoremViolation { .. })));
        let bad =
            ResiduePoleForm::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], vec![pt(1.0), pt(1.0)], TOL);
        assert_eq!(
            bad,
            Err(Error::RepeatedPole {
                first: 0,
                second: 1
            })
        );
        let bad = ResiduePoleForm::new(
            vec![c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)],
            vec![pt(1.0), pt(2.0), pt(3.0)],
            TOL,
        );
        assert_eq!(bad, Err(Error::ZeroResidue { index: 2 }));
    }

    #[test]
    fn near_balanced_residues_are_projected() {
        let f = ResiduePoleForm::new(
            vec![c(1.0, 0.0), c(-1.0 + 1e-12, 0.0)],
            vec![pt(1.0), pt(-1.0)],
            TOL,
        )
        .unwrap();
        assert_eq!(f.residues().iter().sum::<Complex64>(), c(0.0, 0.0));
    }

    #[test]
    fn rp_to_coef_examples() {
        let f = ResiduePoleForm::new(
            vec![c(1.0, 0.0), c(-1.0, 0.0)],
            vec![pt(1.0), pt(-1.0)],
            TOL,
        )
        .unwrap();
        let cf = f.to_coefficient();
        assert!(close_vec(cf.a(), &[c(2.0, 0.0)], 1e-15));
        assert!(close_vec(
            cf.b(),
            &[c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
            1e-15
        ));

        let cf = dz_over_z().to_coefficient();
        assert!(close_vec(
            &cf.vector(),
            &[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            0.0
        ));

        // 2i(z^2-1) - i z(z+1) - i z(z-1) = -2i over z^3 - z
        let f = ResiduePoleForm::new(
            vec![c(0.0, 2.0), c(0.0, -1.0), c(0.0, -1.0)],
            vec![pt(0.0), pt(1.0), pt(-1.0)],
            TOL,
        )
        .unwrap();
        let cf = f.to_coefficient();
        assert!(close_vec(cf.a(), &[c(0.0, 0.0), c(0.0, -2.0)], 1e-15));
        assert!(close_vec(
            cf.b(),
            &[c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)],
            1e-15
        ));
    }

    #[test]
    fn coef_to_rp_examples() {
        let cf = CoefficientForm::new(
            vec![c(2.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
            TOL,
        )
        .unwrap();
        let f = cf.to_residue_pole(TOL).unwrap();
        let expect = ResiduePoleForm::new(
            vec![c(1.0, 0.0), c(-1.0, 0.0)],
            vec![pt(1.0), pt(-1.0)],
            TOL,
        )
        .unwrap();
        assert!(f.same_terms(&expect, 1e-12));

        let cf = CoefficientForm::new(
            vec![c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            TOL,
        )
        .unwrap();
        assert!(cf
            .to_residue_pole(TOL)
            .unwrap()
            .same_terms(&dz_over_z(), 1e-12));
    }

    #[test]
    fn coefficient_validation() {
        // numerator z - 1 and denominator z^3 - z share the root 1
        let err = CoefficientForm::new(
            vec![c(1.0, 0.0), c(-1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)],
            TOL,
        );
        assert_eq!(err.unwrap_err(), Error::CommonZeroPole);
        // (z-1)^2 z
        let err = CoefficientForm::new(
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            TOL,
        );
        assert_eq!(err.unwrap_err(), Error::MultiplePole);
        // b_s = b_{s-1} = 0 is a double pole at infinity
        let err = CoefficientForm::new(
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)],
            TOL,
        );
        assert_eq!(err.unwrap_err(), Error::MultiplePole);
        // pole at infinity needs deg Q = s - 2
        let err = CoefficientForm::new(
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
            TOL,
        );
        assert_eq!(err.unwrap_err(), Error::CommonZeroPole);
    }

    #[test]
    fn zp_to_coef_examples() {
        // zeros {0}, poles {1,-1,2}, chart 3: P_u(3) = 8, Q_u(3) = 3
        let zp = ZeroPoleForm::new(
            vec![pt(0.0)],
            vec![pt(1.0), pt(-1.0), pt(2.0)],
            c(1.0, 0.0),
            Some(3),
            TOL,
        )
        .unwrap();
        let cf = zp.to_coefficient();
        assert!(close_vec(cf.a(), &[c(8.0 / 3.0, 0.0), c(0.0, 0.0)], 1e-14));
        assert!(close_vec(
            cf.b(),
            viete(ONE, &[c(1.0, 0.0), c(-1.0, 0.0), c(2.0, 0.0)]).coeffs(),
            0.0
        ));

        let zp =
            ZeroPoleForm::new(vec![], vec![pt(1.0), pt(-1.0)], c(2.0, 0.0), Some(3), TOL).unwrap();
        let cf = zp.to_coefficient();
        assert!(close_vec(
            &cf.vector(),
            &[c(16.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
            1e-14
        ));

        let zp = ZeroPoleForm::new(
            vec![SpherePoint::Infinity],
            vec![pt(0.0), pt(1.0), SpherePoint::Infinity],
            c(1.0, 0.0),
            None,
            TOL,
        );
        // infinity cannot be both a zero and a pole
        assert_eq!(zp.unwrap_err(), Error::CommonZeroPole);

        let zp = ZeroPoleForm::new(
            vec![SpherePoint::Infinity],
            vec![pt(0.0), pt(1.0), pt(-1.0)],
            c(1.0, 0.0),
            None,
            TOL,
        )
        .unwrap();
        let cf = zp.to_coefficient();
        assert_eq!(cf.a()[0], c(0.0, 0.0));
        let zp = ZeroPoleForm::new(
            vec![pt(5.0)],
            vec![pt(0.0), pt(1.0), SpherePoint::Infinity],
            c(1.0, 0.0),
            None,
            TOL,
        )
        .unwrap();
        assert_eq!(zp.to_coefficient().b()[0], c(0.0, 0.0));
    }

    #[test]
    fn coef_to_zp_examples() {
        let cf = CoefficientForm::new(
            vec![c(2.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
            TOL,
        )
        .unwrap();
        let zp = cf.to_zero_pole(TOL).unwrap();
        assert!(zp.zeros().is_empty());
        assert_eq!(zp.chart(), 2);
        assert!(zp.to_coefficient().projective_eq(&cf, 1e-12));

        // z^2 / (z^4 - 1)
        let cf = CoefficientForm::new(
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![
                c(1.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(-1.0, 0.0),
            ],
            TOL,
        )
        .unwrap();
        let zp = cf.to_zero_pole(TOL).unwrap();
        assert_eq!(zp.zero_multiplicities(1e-9), vec![(pt(0.0), 2)]);
        for p in [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)] {
            assert!(zp
                .poles()
                .iter()
                .any(|q| q.approx_eq(&SpherePoint::Finite(p), 1e-12)));
        }

        // 1 / (z^3 - z): the single zero sits at infinity
        let cf = CoefficientForm::new(
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)],
            TOL,
        )
        .unwrap();
        let zp = cf.to_zero_pole(TOL).unwrap();
        assert_eq!(zp.zeros(), &[SpherePoint::Infinity]);
    }

    #[test]
    fn transition_examples() {
        let zeros = [pt(0.0)];
        let poles = [pt(1.0), pt(-1.0), pt(2.0)];
        assert_eq!(transition(&zeros, &poles, 3, 3, TOL).unwrap(), ONE);
        let phi = transition(&zeros, &poles, 3, 4, TOL).unwrap();
        assert!((phi - c(45.0 / 16.0, 0.0)).norm() < 1e-14);
        let back = transition(&zeros, &poles, 4, 3, TOL).unwrap();
        assert!((phi * back - ONE).norm() < 1e-14);
        assert_eq!(
            transition(&zeros, &poles, 1, 3, TOL),
            Err(Error::BadChart { chart: 1 })
        );
        assert_eq!(
            transition(&zeros, &poles, 3, 6, TOL),
            Err(Error::BadChart { chart: 6 })
        );
    }

    #[test]
    fn changing_chart_keeps_the_form() {
        let zp = ZeroPoleForm::new(
            vec![pt(0.0)],
            vec![pt(1.0), pt(-1.0), pt(2.0)],
            c(0.5, 0.5),
            Some(3),
            TOL,
        )
        .unwrap();
        let other = zp.in_chart(5, TOL).unwrap();
        assert!(other
            .to_coefficient()
            .projective_eq(&zp.to_coefficient(), 1e-13));
    }

    #[test]
    fn isochronous_examples() {
        let f = ResiduePoleForm::new(
            vec![c(0.0, 1.0), c(0.0, -1.0)],
            vec![pt(0.0), SpherePoint::Infinity],
            TOL,
        )
        .unwrap();
        assert!(f.is_isochronous(TOL));
        assert!(!dz_over_z().is_isochronous(TOL));
    }

    #[test]
    fn eval_examples() {
        let f = ResiduePoleForm::new(
            vec![c(1.0, 0.0), c(-1.0, 0.0)],
            vec![pt(1.0), pt(-1.0)],
            TOL,
        )
        .unwrap();
        assert!((f.eval(c(0.0, 0.0)).unwrap() - c(-2.0, 0.0)).norm() < 1e-15);
        assert_eq!(dz_over_z().eval(c(2.0, 0.0)).unwrap(), c(0.5, 0.0));
        assert_eq!(f.eval(c(1.0, 0.0)), Err(Error::EvaluationAtPole));
        let cf = f.to_coefficient();
        assert!((cf.eval(c(0.0, 0.0)).unwrap() - c(-2.0, 0.0)).norm() < 1e-15);
        let zp = cf.to_zero_pole(TOL).unwrap();
        assert!((zp.eval(c(0.0, 0.0)).unwrap() - c(-2.0, 0.0)).norm() < 1e-13);
    }
}

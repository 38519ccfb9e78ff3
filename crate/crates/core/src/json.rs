//! JSON interchange documents.
//!
//! Complex numbers are `[re, im]`, sphere points are `[re, im]` or `"inf"`,
//! Möbius maps are `[a, b, c, d]` with complex entries.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{CoefficientForm, Form, ResiduePoleForm, ZeroPoleForm};
use crate::group::FiniteMobiusGroup;
use crate::mobius::MobiusMap;
use crate::quotient::MPoint;
use crate::sphere::SpherePoint;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct JsonComplex(pub Complex64);

impl From<[f64; 2]> for JsonComplex {
    fn from([re, im]: [f64; 2]) -> Self {
        JsonComplex(Complex64::new(re, im))
    }
}

impl From<JsonComplex> for [f64; 2] {
    fn from(c: JsonComplex) -> Self {
        [c.0.re, c.0.im]
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum PointRepr {
    Finite([f64; 2]),
    Named(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PointRepr", into = "PointRepr")]
pub struct JsonPoint(pub SpherePoint);

impl TryFrom<PointRepr> for JsonPoint {
    type Error = String;

    fn try_from(p: PointRepr) -> std::result::Result<Self, String> {
        match p {
            PointRepr::Finite([re, im]) => {
                Ok(JsonPoint(SpherePoint::Finite(Complex64::new(re, im))))
            }
            PointRepr::Named(s) if s == "inf" => Ok(JsonPoint(SpherePoint::Infinity)),
            PointRepr::Named(s) => Err(format!("expected [re, im] or \"inf\", got {s:?}")),
        }
    }
}

impl From<JsonPoint> for PointRepr {
    fn from(p: JsonPoint) -> Self {
        match p.0 {
            SpherePoint::Finite(z) => PointRepr::Finite([z.re, z.im]),
            SpherePoint::Infinity => PointRepr::Named("inf".into()),
        }
    }
}

fn complexes(v: &[JsonComplex]) -> Vec<Complex64> {
    v.iter().map(|c| c.0).collect()
}

fn to_complexes(v: &[Complex64]) -> Vec<JsonComplex> {
    v.iter().copied().map(JsonComplex).collect()
}

fn points(v: &[JsonPoint]) -> Vec<SpherePoint> {
    v.iter().map(|p| p.0).collect()
}

fn to_points(v: &[SpherePoint]) -> Vec<JsonPoint> {
    v.iter().copied().map(JsonPoint).collect()
}

fn check_s(s: usize, expected: usize) -> Result<()> {
    if s == expected {
        Ok(())
    } else {
        Err(Error::Shape(format!(
            "\"s\" is {s} but the payload has {expected} poles"
        )))
    }
}

/// A form in any of the three coordinate systems.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "representation", rename_all = "snake_case")]
pub enum FormDocument {
    ResiduePole {
        s: usize,
        residues: Vec<JsonComplex>,
        poles: Vec<JsonPoint>,
    },
    Coefficient {
        s: usize,
        a: Vec<JsonComplex>,
        b: Vec<JsonComplex>,
    },
    ZeroPole {
        s: usize,
        zeros: Vec<JsonPoint>,
        poles: Vec<JsonPoint>,
        lambda: JsonComplex,
        chart: usize,
    },
}

impl FormDocument {
    pub fn from_form(form: &Form) -> Self {
        match form {
            Form::ResiduePole(f) => FormDocument::ResiduePole {
                s: f.s(),
                residues: to_complexes(&f.residues()),
                poles: to_points(&f.poles()),
            },
            Form::Coefficient(f) => FormDocument::Coefficient {
                s: f.s(),
                a: to_complexes(f.a()),
                b: to_complexes(f.b()),
            },
            Form::ZeroPole(f) => FormDocument::ZeroPole {
                s: f.s(),
                zeros: to_points(f.zeros()),
                poles: to_points(f.poles()),
                lambda: JsonComplex(f.lambda()),
                chart: f.chart(),
            },
        }
    }

    /// Validates the payload and builds the form.
    pub fn to_form(&self, tol: f64) -> Result<Form> {
        match self {
            FormDocument::ResiduePole { s, residues, poles } => {
                check_s(*s, poles.len())?;
                Ok(Form::ResiduePole(ResiduePoleForm::new(
                    complexes(residues),
                    points(poles),
                    tol,
                )?))
            }
            FormDocument::Coefficient { s, a, b } => {
                check_s(*s, b.len().saturating_sub(1))?;
                Ok(Form::Coefficient(CoefficientForm::new(
                    complexes(a),
                    complexes(b),
                    tol,
                )?))
            }
            FormDocument::ZeroPole {
                s,
                zeros,
                poles,
                lambda,
                chart,
            } => {
                check_s(*s, poles.len())?;
                Ok(Form::ZeroPole(ZeroPoleForm::new(
                    points(zeros),
                    points(poles),
                    lambda.0,
                    Some(*chart),
                    tol,
                )?))
            }
        }
    }
}

/// `[a, b, c, d]` of a determinant-one representative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MobiusDocument(pub [JsonComplex; 4]);

impl MobiusDocument {
    pub fn from_map(t: &MobiusMap) -> Self {
        MobiusDocument(t.entries().map(JsonComplex))
    }

    pub fn to_map(&self) -> Result<MobiusMap> {
        let [a, b, c, d] = self.0.map(|x| x.0);
        MobiusMap::new(a, b, c, d)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub order: usize,
    #[serde(rename = "type")]
    pub kind: String,
    pub elements: Vec<MobiusDocument>,
}

impl GroupDocument {
    pub fn from_group(g: &FiniteMobiusGroup) -> Self {
        GroupDocument {
            order: g.order(),
            kind: g.tag().name(),
            elements: g.elements().iter().map(MobiusDocument::from_map).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MPointDocument {
    pub s: usize,
    pub residues: Vec<JsonComplex>,
    pub poles: Vec<JsonComplex>,
}

impl MPointDocument {
    pub fn from_mpoint(m: &MPoint) -> Self {
        MPointDocument {
            s: m.s(),
            residues: to_complexes(m.residues()),
            poles: to_complexes(m.poles()),
        }
    }

    pub fn to_mpoint(&self, tol: f64) -> Result<MPoint> {
        let m = MPoint::new(complexes(&self.residues), complexes(&self.poles), tol)?;
        if m.s() != self.s {
            return Err(Error::InvalidMPoint(format!(
                "\"s\" is {} but the payload describes s = {}",
                self.s,
                m.s()
            )));
        }
        Ok(m)
    }
}

/// Polynomial coefficients, highest degree first.
pub type PolyDocument = Vec<JsonComplex>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{isotropy_group, realize_cyclic};

    const TOL: f64 = 1e-9;

    #[test]
    fn point_encoding() {
        let p: JsonPoint = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(p.0, SpherePoint::Infinity);
        let p: JsonPoint = serde_json::from_str("[1.5, -2]").unwrap();
        assert_eq!(p.0, SpherePoint::Finite(Complex64::new(1.5, -2.0)));
        assert!(serde_json::from_str::<JsonPoint>("\"oo\"").is_err());
        assert_eq!(
            serde_json::to_string(&JsonPoint(SpherePoint::Infinity)).unwrap(),
            "\"inf\""
        );
    }

    #[test]
    fn form_document_round_trip() {
        let text = r#"{"representation":"residue_pole","s":2,"residues":[[1.0,0.0],[-1.0,0.0]],"poles":[[0.0,0.0],"inf"]}"#;
        let doc: FormDocument = serde_json::from_str(text).unwrap();
        let form = doc.to_form(TOL).unwrap();
        let again = serde_json::to_string(&FormDocument::from_form(&form)).unwrap();
        assert_eq!(again, text);
    }

    #[test]
    fn s_mismatch_is_rejected() {
        let text = r#"{"representation":"residue_pole","s":3,"residues":[[1,0],[-1,0]],"poles":[[0,0],"inf"]}"#;
        let doc: FormDocument = serde_json::from_str(text).unwrap();
        assert!(matches!(doc.to_form(TOL), Err(Error::Shape(_))));
    }

    #[test]
    fn group_document() {
        let g = isotropy_group(&realize_cyclic(4).unwrap(), TOL).unwrap();
        let doc = GroupDocument::from_group(&g);
        assert_eq!(doc.order, 4);
        assert_eq!(doc.kind, "Z_4");
        let v = serde_json::to_value(&doc).unwrap();
        assert_eq!(v["type"], "Z_4");
        assert_eq!(v["elements"][0][0], serde_json::json!([1.0, 0.0]));
    }
}

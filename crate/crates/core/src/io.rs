//! JSON documents read and written by the command line and the examples.

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fan::{FanChecks, QuantumFan};
use crate::index_set::IndexSet;
use crate::linalg::{Calibration, Vector};
use crate::polytope::{HPolytope, Vertex};
use crate::scalar::Scalar;
use crate::secondary::{gale_cone, AffinePath, GaleCone};
use crate::svg::PlotSpec;

#[derive(Serialize, Deserialize)]
struct CalibrationData {
    d: usize,
    n: usize,
    #[serde(default)]
    m: u32,
    columns: Vec<Vector>,
    #[serde(rename = "virtual", default)]
    virtual_set: IndexSet,
}

impl Serialize for Calibration {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CalibrationData {
            d: self.dim(),
            n: self.len(),
            m: self.field(),
            columns: self.columns().to_vec(),
            virtual_set: self.virtual_set(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Calibration {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let data = CalibrationData::deserialize(d)?;
        if data.columns.len() != data.n {
            return Err(de::Error::custom(format!("n = {} but {} columns", data.n, data.columns.len())));
        }
        if data.columns.iter().any(|c| c.len() != data.d) {
            return Err(de::Error::custom(format!("columns must have length d = {}", data.d)));
        }
        let c = Calibration::new(data.columns, data.virtual_set).map_err(de::Error::custom)?;
        if c.field() != 0 && c.field() != data.m {
            return Err(de::Error::custom(format!("entries lie in Q(sqrt{}) but m = {}", c.field(), data.m)));
        }
        Ok(c)
    }
}

/// An input document: a calibration plus whatever the operation needs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Problem {
    #[serde(flatten)]
    pub calibration: Calibration,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone: Option<IndexSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<AffinePath>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plot: Option<PlotSpec>,
}

impl Problem {
    pub fn new(calibration: Calibration) -> Self {
        Problem { calibration, b: None, chi: None, cone: None, path: None, plot: None }
    }

    pub fn require_b(&self) -> Result<&Vector> {
        self.b.as_ref().ok_or_else(|| Error::InvalidInput("input has no \"b\"".into()))
    }

    pub fn require_chi(&self) -> Result<&Vector> {
        self.chi.as_ref().ok_or_else(|| Error::InvalidInput("input has no \"chi\"".into()))
    }

    pub fn require_path(&self) -> Result<&AffinePath> {
        self.path.as_ref().ok_or_else(|| Error::InvalidInput("input has no \"path\"".into()))
    }
}

/// Comma-separated scalars, e.g. `1, -sqrt2, 3/4`.
pub fn parse_vector(text: &str) -> Result<Vector> {
    text.split(',').map(|t| t.trim().parse::<Scalar>()).collect()
}

/// `"beta;alpha"` with both parts comma-separated.
pub fn parse_path(text: &str) -> Result<AffinePath> {
    let (beta, alpha) = text
        .split_once(';')
        .ok_or_else(|| Error::InvalidInput("path must be written \"beta;alpha\"".into()))?;
    Ok(AffinePath::new(parse_vector(beta)?, parse_vector(alpha)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaleReport {
    /// Rows of `k`, one per generator.
    pub k: Vec<Vector>,
    /// `h · k = 0` checked exactly.
    pub verified: bool,
    pub cone: GaleCone,
}

impl GaleReport {
    pub fn new(c: &Calibration) -> Self {
        let k = c.gale();
        let verified = c.matrix().mul(k).map(|m| m.is_zero()).unwrap_or(false);
        GaleReport { k: k.row_vectors(), verified, cone: gale_cone(c) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeReport {
    pub b: Vector,
    pub vertices: Vec<Vertex>,
    pub rays: Vec<Vector>,
    pub bounded: bool,
    pub dimension: i32,
    /// Dimension of `{x ∈ P_b : ⟨x, h(e_i)⟩ = −b_i}`, `−1` when empty.
    pub facet_dims: Vec<i32>,
    pub simple: bool,
}

impl PolytopeReport {
    pub fn new(p: &HPolytope) -> Self {
        PolytopeReport {
            b: p.b().to_vec(),
            vertices: p.vertices().to_vec(),
            rays: p.rays().to_vec(),
            bounded: p.is_bounded(),
            dimension: p.dimension(),
            facet_dims: p.facet_dims().to_vec(),
            simple: p.is_simple(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanReport {
    pub max_cones: Vec<IndexSet>,
    #[serde(rename = "virtual")]
    pub virtual_set: IndexSet,
    pub complete: bool,
    pub rays: IndexSet,
    pub simplicial: bool,
    /// Every face of the fan, as sorted index sets.
    pub comb_type: Vec<IndexSet>,
    pub checks: FanChecks,
}

impl FanReport {
    pub fn new(f: &QuantumFan) -> Self {
        FanReport {
            max_cones: f.cones().to_vec(),
            virtual_set: f.virtual_set(),
            complete: f.is_complete(),
            rays: f.rays(),
            simplicial: f.is_simplicial(),
            comb_type: f.combinatorial_type().faces().iter().copied().collect(),
            checks: f.checks(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::normal_fan;

    const SQRT2: &str = r#"{
        "d": 2, "n": 4, "m": 2,
        "columns": [[1, 0], [0, 1], ["-sqrt2", -1], [-1, {"a": "0", "b": "-1", "m": 2}]],
        "b": [0, 0, 1, 1]
    }"#;

    #[test]
    fn problem_round_trip() {
        let p: Problem = from_json(SQRT2).unwrap();
        assert_eq!(p.calibration.field(), 2);
        assert_eq!(p.calibration.column(3)[1], "-sqrt2".parse().unwrap());
        let again: Problem = from_json(&to_json(&p)).unwrap();
        assert_eq!(again.calibration, p.calibration);
        assert_eq!(again.b, p.b);
    }

    #[test]
    fn calibration_field_mismatch_is_rejected() {
        let bad = SQRT2.replace("\"m\": 2,", "\"m\": 3,");
        assert!(from_json::<Problem>(&bad).is_err());
        let short = SQRT2.replace("\"n\": 4", "\"n\": 5");
        assert!(from_json::<Problem>(&short).is_err());
    }

    #[test]
    fn fan_report_round_trip() {
        let p: Problem = from_json(SQRT2).unwrap();
        let f = normal_fan(&p.calibration, p.b.as_ref().unwrap()).unwrap();
        let r = FanReport::new(&f);
        assert_eq!(r.max_cones.len(), 4);
        let text = to_json(&r);
        assert!(text.contains("\"virtual\": []"));
        assert_eq!(from_json::<FanReport>(&text).unwrap(), r);
    }

    #[test]
    fn path_text() {
        let p = parse_path("0,0,1,1; 1, -1, 0, sqrt2/2").unwrap();
        assert_eq!(p.alpha[3], "sqrt2/2".parse().unwrap());
        assert!(parse_path("0,0").is_err());
    }
}

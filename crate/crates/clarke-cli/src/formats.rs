//! Input documents (JSON) and their conversion into core types.

use clarke_core::constructions::{BhkData, LatticePolytope, NefPartition};
use clarke_core::fan::StackyFan;
use clarke_core::table::{parse_rat, rat_to_string};
use clarke_core::tropical::HeightedPoints;
use clarke_core::Rat;
use serde::{Deserialize, Serialize};

/// A parse or format error, reported with exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError(pub String);

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FormatError {}

fn err(msg: impl Into<String>) -> FormatError {
    FormatError(msg.into())
}

/// A rational written either as an integer or as a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatValue {
    /// Bare integer.
    Int(i64),
    /// `"p/q"` or `"p"`.
    Text(String),
}

impl RatValue {
    /// The rational value.
    pub fn to_rat(&self) -> Result<Rat, FormatError> {
        match self {
            RatValue::Int(v) => Ok(Rat::from_integer((*v).into())),
            RatValue::Text(s) => parse_rat(s).ok_or_else(|| err(format!("not a rational: {s:?}"))),
        }
    }

    /// The canonical string form.
    pub fn from_rat(r: &Rat) -> Self {
        RatValue::Text(rat_to_string(r))
    }
}

fn rats(values: &[RatValue]) -> Result<Vec<Rat>, FormatError> {
    values.iter().map(RatValue::to_rat).collect()
}

/// Fan document: rank, rays, optional weights (default 1) and cones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDoc {
    /// Lattice rank.
    pub rank: usize,
    /// Primitive ray generators.
    pub rays: Vec<Vec<i64>>,
    /// Positive ray weights; all 1 when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
    /// Maximal cones as lists of 0-based ray indices.
    pub cones: Vec<Vec<usize>>,
}

impl FanDoc {
    /// Builds the stacky fan.
    pub fn to_fan(&self) -> Result<StackyFan, FormatError> {
        let weights = self.weights.clone().unwrap_or_else(|| vec![1; self.rays.len()]);
        let cones: Vec<Vec<usize>> = self.cones.iter().filter(|c| !c.is_empty()).cloned().collect();
        if self.rays.is_empty() && !cones.is_empty() {
            return Err(err("cones given for a fan without rays"));
        }
        StackyFan::new(self.rank, self.rays.clone(), weights, cones).map_err(|e| err(e.to_string()))
    }

    /// Document form of a fan.
    pub fn from_fan(fan: &StackyFan) -> Self {
        let weights = fan.weights().iter().any(|&w| w != 1).then(|| fan.weights().to_vec());
        let cones = if fan.is_trivial() { vec![Vec::new()] } else { fan.max_cones().to_vec() };
        Self { rank: fan.rank(), rays: fan.rays().to_vec(), weights, cones }
    }
}

/// Pair document: `sigma` in `M`, `sigma_check` in `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    /// Space-side fan.
    pub sigma: FanDoc,
    /// Mirror-side fan.
    pub sigma_check: FanDoc,
}

/// BHK document: matrix rows and generators of the group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BhkDoc {
    /// Exponent matrix rows.
    pub matrix: Vec<Vec<i64>>,
    /// Group generators as rational vectors.
    #[serde(default)]
    pub group: Vec<Vec<RatValue>>,
}

impl BhkDoc {
    /// Builds the BHK data, optionally replacing the group by `S_B`.
    pub fn to_data(&self, maximal: bool) -> Result<Result<BhkData, String>, FormatError> {
        let group = if maximal {
            match BhkData::maximal_group(&self.matrix) {
                Ok(g) => g,
                Err(e) => return Ok(Err(e.to_string())),
            }
        } else {
            self.group.iter().map(|q| rats(q)).collect::<Result<_, _>>()?
        };
        Ok(BhkData::new(self.matrix.clone(), group).map_err(|e| e.to_string()))
    }
}

/// Polytope document: rank and vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDoc {
    /// Lattice rank.
    pub rank: usize,
    /// Lattice vertices.
    pub vertices: Vec<Vec<i64>>,
}

impl PolytopeDoc {
    /// Builds the lattice polytope.
    pub fn to_polytope(&self) -> Result<LatticePolytope, String> {
        LatticePolytope::new(self.rank, self.vertices.clone()).map_err(|e| e.to_string())
    }
}

/// Nef partition document: polytope and vertex-index parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NefDoc {
    /// The reflexive polytope.
    pub polytope: PolytopeDoc,
    /// Parts as lists of vertex indices.
    pub partition: Vec<Vec<usize>>,
}

impl NefDoc {
    /// Builds the nef partition.
    pub fn to_partition(&self) -> Result<NefPartition, String> {
        NefPartition::new(self.polytope.to_polytope()?, self.partition.clone()).map_err(|e| e.to_string())
    }
}

/// Heighted points, optionally with a fan over `N` for the tropical table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsDoc {
    /// Lattice rank.
    pub rank: usize,
    /// Points, the origin first.
    pub points: Vec<Vec<i64>>,
    /// Heights.
    pub heights: Vec<RatValue>,
    /// Fan over `N` used for the 0-part poset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<FanDoc>,
}

impl PointsDoc {
    /// Builds the heighted point set.
    pub fn to_points(&self) -> Result<HeightedPoints, FormatError> {
        HeightedPoints::new(self.rank, self.points.clone(), rats(&self.heights)?).map_err(|e| err(e.to_string()))
    }
}

/// Stacky hypersurface document: a fan and integer values of `φ` on its
/// rays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypersurfaceDoc {
    /// Unimodular fan.
    pub sigma: FanDoc,
    /// Values of the support function on the rays.
    pub phi: Vec<i64>,
}

/// Matrix document for the `jordan` verb.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    /// Rows.
    pub rows: Vec<Vec<RatValue>>,
    /// Treat the matrix as a Seifert form `χ` and use `χ⁻¹χᵀ`.
    #[serde(default)]
    pub seifert: bool,
}

impl MatrixDoc {
    /// Rational rows, checked to be square.
    pub fn to_rows(&self) -> Result<Vec<Vec<Rat>>, FormatError> {
        let n = self.rows.len();
        if n == 0 || self.rows.iter().any(|r| r.len() != n) {
            return Err(err("matrix must be square and nonempty"));
        }
        self.rows.iter().map(|r| rats(r)).collect()
    }
}

/// Any input document, recognised by its fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    /// A fan.
    Fan(FanDoc),
    /// A pair of fans.
    Pair(PairDoc),
    /// A BHK matrix and group.
    Bhk(BhkDoc),
    /// A polytope.
    Polytope(PolytopeDoc),
    /// A nef partition.
    Nef(NefDoc),
    /// Heighted points.
    Points(PointsDoc),
    /// A stacky hypersurface.
    Hypersurface(HypersurfaceDoc),
    /// A matrix.
    Matrix(MatrixDoc),
}

impl Document {
    /// Parses a document, choosing its kind from the fields present.
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| err(format!("invalid JSON: {e}")))?;
        let obj = value.as_object().ok_or_else(|| err("document must be a JSON object"))?;
        let has = |k: &str| obj.contains_key(k);
        let typed = |v: serde_json::Value| -> Result<Document, serde_json::Error> {
            Ok(if has("sigma_check") {
                Document::Pair(serde_json::from_value(v)?)
            } else if has("phi") {
                Document::Hypersurface(serde_json::from_value(v)?)
            } else if has("matrix") {
                Document::Bhk(serde_json::from_value(v)?)
            } else if has("partition") {
                Document::Nef(serde_json::from_value(v)?)
            } else if has("heights") {
                Document::Points(serde_json::from_value(v)?)
            } else if has("vertices") {
                Document::Polytope(serde_json::from_value(v)?)
            } else if has("rows") {
                Document::Matrix(serde_json::from_value(v)?)
            } else {
                Document::Fan(serde_json::from_value(v)?)
            })
        };
        typed(value.clone()).map_err(|e| err(format!("malformed document: {e}")))
    }

    /// Short name of the document kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Fan(_) => "fan",
            Document::Pair(_) => "pair",
            Document::Bhk(_) => "bhk",
            Document::Polytope(_) => "polytope",
            Document::Nef(_) => "nef",
            Document::Points(_) => "points",
            Document::Hypersurface(_) => "hypersurface",
            Document::Matrix(_) => "matrix",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_fan_document() {
        let d = Document::parse(r#"{"rank": 2, "rays": [], "cones": [[]]}"#).unwrap();
        let Document::Fan(f) = d else { panic!("expected a fan") };
        let fan = f.to_fan().unwrap();
        assert!(fan.is_trivial());
        assert_eq!(FanDoc::from_fan(&fan), f);
    }

    #[test]
    fn weights_default_to_one() {
        let f: FanDoc = serde_json::from_str(r#"{"rank": 1, "rays": [[1]], "cones": [[0]]}"#).unwrap();
        assert_eq!(f.to_fan().unwrap().weights(), &[1]);
    }

    #[test]
    fn rationals_accept_strings_and_integers() {
        let d: BhkDoc = serde_json::from_str(r#"{"matrix": [[2]], "group": [["1/2"]]}"#).unwrap();
        assert_eq!(d.group[0][0].to_rat().unwrap(), Rat::new(1.into(), 2.into()));
        assert_eq!(RatValue::Int(3).to_rat().unwrap(), Rat::from_integer(3.into()));
        assert!(RatValue::Text("x".into()).to_rat().is_err());
    }

    #[test]
    fn document_kinds() {
        let cases = [
            (r#"{"sigma": {"rank":1,"rays":[],"cones":[[]]}, "sigma_check": {"rank":1,"rays":[],"cones":[[]]}}"#, "pair"),
            (r#"{"matrix": [[3]]}"#, "bhk"),
            (r#"{"rank": 1, "vertices": [[1],[-1]]}"#, "polytope"),
            (r#"{"polytope": {"rank": 1, "vertices": [[1],[-1]]}, "partition": [[0,1]]}"#, "nef"),
            (r#"{"rank": 1, "points": [[0],[1]], "heights": [0, "1/2"]}"#, "points"),
            (r#"{"sigma": {"rank":1,"rays":[[1],[-1]],"cones":[[0],[1]]}, "phi": [1,1]}"#, "hypersurface"),
            (r#"{"rows": [[1]]}"#, "matrix"),
        ];
        for (text, kind) in cases {
            assert_eq!(Document::parse(text).unwrap().kind(), kind, "{text}");
        }
    }

    #[test]
    fn malformed_documents_are_format_errors() {
        assert!(Document::parse("not json").is_err());
        assert!(Document::parse("[1, 2]").is_err());
        assert!(Document::parse(r#"{"rank": 2, "rays": [[1, 0]], "cones": [[0]], "extra": 1}"#).is_err());
        assert!(Document::parse(r#"{"rank": 2, "rays": [[1, 0]]}"#).is_err());
    }
}

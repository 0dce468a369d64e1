//! JSON documents for polytopes, fans and nef partitions, plus the bundled
//! fixture set.

use crate::error::{Error, Result};
use crate::fan::{refined_spanning_fan, Fan, StackyFan};
use crate::fixtures::{reflexive_polygons, vertex_parts};
use crate::lattice::{Int, LatticeTag, Rat};
use crate::mirrorledger::{parse_rat, rat_string};
use crate::nefclarke::{p1_example_pair, validate_nef_partition, NefPartition};
use crate::polytope::Polytope;
use num_traits::ToPrimitive;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// A coordinate: a JSON integer or a string "a/b".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Int(i64),
    Text(String),
}

impl Coord {
    pub fn from_rat(r: &Rat) -> Coord {
        match r.is_integer().then(|| r.to_integer().to_i64()).flatten() {
            Some(x) => Coord::Int(x),
            None => Coord::Text(rat_string(r)),
        }
    }

    pub fn to_rat(&self) -> Result<Rat> {
        match self {
            Coord::Int(x) => Ok(Rat::from_integer(Int::from(*x))),
            Coord::Text(s) => parse_rat(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default = "default_tag")]
    pub lattice: LatticeTag,
    /// Points whose convex hull is the polytope; vertices on output.
    pub vertices: Vec<Vec<Coord>>,
}

fn default_tag() -> LatticeTag {
    LatticeTag::N
}

impl PolytopeDoc {
    pub fn from_polytope(p: &Polytope) -> PolytopeDoc {
        PolytopeDoc {
            name: p.name().map(str::to_string),
            lattice: p.tag(),
            vertices: p
                .vertices()
                .iter()
                .map(|v| v.iter().map(Coord::from_rat).collect())
                .collect(),
        }
    }

    pub fn to_polytope(&self) -> Result<Polytope> {
        let pts: Vec<Vec<Rat>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(Coord::to_rat).collect())
            .collect::<Result<_>>()?;
        let p = Polytope::convex_hull(self.lattice, &pts)?;
        Ok(match &self.name {
            Some(n) => p.with_name(n.clone()),
            None => p,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeTag>,
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub maximal: Vec<Vec<usize>>,
    /// Stacky multipliers, one per ray; absent means all 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<u64>>,
}

fn small(v: &[Int]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| Error::Invalid(format!("coordinate {x} does not fit in i64")))
        })
        .collect()
}

impl FanDoc {
    pub fn from_fan(f: &Fan) -> Result<FanDoc> {
        Ok(FanDoc {
            lattice: None,
            rank: f.rank(),
            rays: f.rays().iter().map(|r| small(r)).collect::<Result<_>>()?,
            maximal: f.maximal_cones().to_vec(),
            beta: None,
        })
    }

    pub fn from_stacky(f: &StackyFan) -> Result<FanDoc> {
        let mut d = FanDoc::from_fan(f.fan())?;
        if f.beta().iter().any(|&b| b != 1) {
            d.beta = Some(f.beta().to_vec());
        }
        Ok(d)
    }

    pub fn to_fan(&self) -> Result<Fan> {
        let rays = self
            .rays
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        Fan::new(self.rank, rays, self.maximal.clone())
    }

    pub fn to_stacky(&self) -> Result<StackyFan> {
        let f = self.to_fan()?;
        match &self.beta {
            Some(b) => StackyFan::new(f, b.clone()),
            None => StackyFan::trivial(f),
        }
    }
}

/// A nef partition given by Δ and its parts as lists of vertex coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NefDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub polytope: PolytopeDoc,
    pub parts: Vec<Vec<Vec<i64>>>,
}

impl NefDoc {
    pub fn from_nef(name: Option<&str>, np: &NefPartition) -> Result<NefDoc> {
        let verts = np
            .delta()
            .integer_vertices()
            .ok_or_else(|| Error::Invalid("nef partitions need a lattice polytope".into()))?;
        let parts = np
            .parts()
            .iter()
            .map(|part| part.iter().map(|&i| small(&verts[i])).collect())
            .collect::<Result<_>>()?;
        Ok(NefDoc {
            name: name.map(str::to_string),
            polytope: PolytopeDoc::from_polytope(np.delta()),
            parts,
        })
    }

    pub fn to_nef(&self) -> Result<NefPartition> {
        let delta = self.polytope.to_polytope()?;
        let parts = vertex_parts(&delta, &self.parts)?;
        validate_nef_partition(&delta, &parts)
    }
}

/// A Clarke pair candidate: two stacky fans in dual lattices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanPairDoc {
    pub sigma: FanDoc,
    pub sigma_check: FanDoc,
}

impl FanPairDoc {
    /// Both fans, after checking that declared lattices are dual to each other.
    pub fn to_stacky_pair(&self) -> Result<(StackyFan, StackyFan)> {
        if let (Some(a), Some(b)) = (self.sigma.lattice, self.sigma_check.lattice) {
            if a.dual() != b {
                return Err(Error::TagMismatch {
                    expected: a.dual().to_string(),
                    found: b.to_string(),
                });
            }
        }
        Ok((self.sigma.to_stacky()?, self.sigma_check.to_stacky()?))
    }
}

/// One bundled reflexive polygon with its refined spanning fan (the fan over
/// the unimodular triangulation using every boundary point).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonFixture {
    pub name: String,
    pub polytope: PolytopeDoc,
    pub boundary_points: usize,
    pub dual_boundary_points: usize,
    pub triangulation: FanDoc,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub const FIXTURES_ENV: &str = "CLARKE_MIRROR_FIXTURES";

/// The fixture directory: `$CLARKE_MIRROR_FIXTURES` or the bundled one.
pub fn fixtures_dir() -> PathBuf {
    match std::env::var_os(FIXTURES_ENV) {
        Some(p) => PathBuf::from(p),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"),
    }
}

pub fn polygon_fixtures() -> Result<Vec<PolygonFixture>> {
    reflexive_polygons()
        .iter()
        .map(|p| {
            let dual = crate::polytope::polar_dual(p)?;
            Ok(PolygonFixture {
                name: p.name().unwrap_or_default().to_string(),
                polytope: PolytopeDoc::from_polytope(p),
                boundary_points: p.boundary_lattice_points().len(),
                dual_boundary_points: dual.boundary_lattice_points().len(),
                triangulation: FanDoc::from_fan(&refined_spanning_fan(p)?)?,
            })
        })
        .collect()
}

/// Every bundled file name with its contents.
pub fn fixture_documents() -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    out.insert("polygons.json".to_string(), to_json(&polygon_fixtures()?));
    let (l, p) = p1_example_pair()?;
    out.insert(
        "p1_pair.json".to_string(),
        to_json(&FanPairDoc {
            sigma: FanDoc {
                lattice: Some(LatticeTag::N),
                ..FanDoc::from_stacky(&l)?
            },
            sigma_check: FanDoc {
                lattice: Some(LatticeTag::M),
                ..FanDoc::from_stacky(&p)?
            },
        }),
    );
    let nefs = [
        ("segment_k1.json", crate::fixtures::segment_one_part()?),
        ("segment_k2.json", crate::fixtures::segment_two_parts()?),
        ("square_k2.json", crate::fixtures::square_two_parts()?),
    ];
    for (file, np) in nefs {
        let name = file.trim_end_matches(".json");
        out.insert(
            file.to_string(),
            to_json(&NefDoc::from_nef(Some(name), &np)?),
        );
    }
    Ok(out)
}

/// Load the polygon fixtures from `dir`.
pub fn load_polygons(dir: &Path) -> Result<Vec<Polytope>> {
    let docs: Vec<PolygonFixture> = read_json(&dir.join("polygons.json"))?;
    docs.iter()
        .map(|d| Ok(d.polytope.to_polytope()?.with_name(d.name.clone())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polytope_round_trip_with_rational_vertices() {
        let p = Polytope::from_int_points(LatticeTag::N, &[vec![-1, -1], vec![3, -1], vec![-1, 2]])
            .unwrap();
        let dual = crate::polytope::polar_dual(&p).unwrap();
        let doc = PolytopeDoc::from_polytope(&dual);
        assert!(doc
            .vertices
            .iter()
            .flatten()
            .any(|c| matches!(c, Coord::Text(_))));
        let back: PolytopeDoc = serde_json::from_str(&to_json(&doc)).unwrap();
        assert_eq!(back, doc);
        assert!(back.to_polytope().unwrap().same_set(&dual));
    }

    #[test]
    fn fan_and_nef_round_trip() {
        let (l, _) = p1_example_pair().unwrap();
        let doc = FanDoc::from_stacky(&l).unwrap();
        assert_eq!(doc.to_stacky().unwrap(), l);
        let np = crate::fixtures::square_two_parts().unwrap();
        let doc = NefDoc::from_nef(None, &np).unwrap();
        let back = doc.to_nef().unwrap();
        assert_eq!(NefDoc::from_nef(None, &back).unwrap(), doc);
    }

    #[test]
    fn malformed_coordinates_are_input_errors() {
        let doc: PolytopeDoc = serde_json::from_str(r#"{"vertices": [["1/0"], [1]]}"#).unwrap();
        assert!(doc.to_polytope().unwrap_err().is_input_error());
        let e = read_json::<PolytopeDoc>(Path::new("/nonexistent/x.json")).unwrap_err();
        assert!(e.is_input_error());
    }

    #[test]
    fn bundled_fixtures_match_generated_data() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
        let docs = fixture_documents().unwrap();
        if std::env::var_os("CLARKE_MIRROR_BLESS").is_some() {
            std::fs::create_dir_all(&dir).unwrap();
            for (f, text) in &docs {
                std::fs::write(dir.join(f), text).unwrap();
            }
        }
        for (f, text) in &docs {
            let on_disk = std::fs::read_to_string(dir.join(f)).unwrap();
            assert_eq!(&on_disk, text, "{f} is stale");
        }
        let polys = load_polygons(&dir).unwrap();
        assert_eq!(polys.len(), 16);
        for (a, b) in polys.iter().zip(reflexive_polygons()) {
            assert!(a.same_set(&b));
        }
    }
}

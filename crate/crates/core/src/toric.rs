//! Delzant polytopes by facet-vertex incidence, their facet-disjointness
//! graphs, and corner chops.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::centre::format_ratio;
use crate::scheme::{NegativeColourScheme, SchemeError};
use crate::zlinalg::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error("vertex {0} does not lie on exactly dim facets")]
    NotSimple(usize),
    #[error("facet normals at vertex {vertex} have determinant {det}, not ±1")]
    NotSmooth { vertex: usize, det: BigInt },
    #[error("geometry disagrees with incidence: {0}")]
    IncidenceGeometryMismatch(String),
    #[error("facet {0} is degenerate (too few vertices or a duplicate of another facet)")]
    DegenerateFacet(usize),
    #[error("malformed polytope: {0}")]
    MalformedInput(String),
    #[error("vertex {0} not found")]
    VertexNotFound(usize),
    #[error("facet {facet} has degree {value}; degrees must be positive")]
    NonPositiveDegree { facet: usize, value: i64 },
    #[error("expected {expected} degrees, one per facet, got {found}")]
    DegreeCountMismatch { expected: usize, found: usize },
}

/// Exact coordinates and facet inequalities `⟨n_ρ, x⟩ ≥ c_ρ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Geometry {
    pub coords: Vec<Vec<BigRational>>,
    pub normals: Vec<Vec<BigInt>>,
    pub offsets: Vec<BigRational>,
}

/// A simple polytope as a facet-vertex incidence. Facets and vertices are
/// numbered from 1; `vertices[v - 1]` is the set of facets through `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelzantIncidence {
    dim: usize,
    facets: usize,
    vertices: Vec<BTreeSet<usize>>,
    geometry: Option<Geometry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeFile {
    dim: usize,
    facets: usize,
    vertices: usize,
    incidence: Vec<Vec<usize>>,
    #[serde(default)]
    geometry: Option<GeometryFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeometryFile {
    coords: Vec<Vec<Value>>,
    normals: Vec<Vec<i64>>,
    offsets: Vec<Value>,
}

fn parse_rational(v: &Value) -> Result<BigRational, ToricError> {
    let bad = || ToricError::MalformedInput(format!("expected a rational, found {v}"));
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(i.into()))
            .ok_or_else(bad),
        Value::String(s) => {
            let q = BigRational::from_str(s.trim()).map_err(|_| bad())?;
            Ok(q)
        }
        _ => Err(bad()),
    }
}

impl DelzantIncidence {
    /// Validates an incidence, with optional geometry.
    pub fn new(
        dim: usize,
        facets: usize,
        vertices: Vec<BTreeSet<usize>>,
        geometry: Option<Geometry>,
    ) -> Result<Self, ToricError> {
        let p = DelzantIncidence {
            dim,
            facets,
            vertices,
            geometry,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn from_json(text: &str) -> Result<Self, ToricError> {
        let file: PolytopeFile =
            serde_json::from_str(text).map_err(|e| ToricError::MalformedInput(e.to_string()))?;
        if file.incidence.len() != file.vertices {
            return Err(ToricError::MalformedInput(format!(
                "`vertices` is {} but the incidence lists {}",
                file.vertices,
                file.incidence.len()
            )));
        }
        let mut vertices = Vec::with_capacity(file.vertices);
        for (i, list) in file.incidence.iter().enumerate() {
            let set: BTreeSet<usize> = list.iter().copied().collect();
            if set.len() != list.len() {
                return Err(ToricError::MalformedInput(format!("vertex {} repeats a facet", i + 1)));
            }
            vertices.push(set);
        }
        let geometry = match file.geometry {
            None => None,
            Some(g) => Some(Geometry {
                coords: g
                    .coords
                    .iter()
                    .map(|row| row.iter().map(parse_rational).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<_, _>>()?,
                normals: g
                    .normals
                    .iter()
                    .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                    .collect(),
                offsets: g.offsets.iter().map(parse_rational).collect::<Result<_, _>>()?,
            }),
        };
        DelzantIncidence::new(file.dim, file.facets, vertices, geometry)
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "dim": self.dim,
            "facets": self.facets,
            "vertices": self.vertices.len(),
            "incidence": self.vertices.iter().map(|s| s.iter().copied().collect::<Vec<_>>()).collect::<Vec<_>>(),
        });
        if let Some(g) = &self.geometry {
            let rat = |q: &BigRational| Value::from(format_ratio(q));
            out["geometry"] = json!({
                "coords": g.coords.iter().map(|r| r.iter().map(rat).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "normals": g.normals.iter().map(|r| r.iter().map(|x| x.to_string().parse::<i64>().unwrap_or(0)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "offsets": g.offsets.iter().map(rat).collect::<Vec<_>>(),
            });
        }
        out
    }

    fn validate(&self) -> Result<(), ToricError> {
        let n = self.dim;
        if n == 0 {
            return Err(ToricError::MalformedInput("dimension must be at least 1".into()));
        }
        for (i, fs) in self.vertices.iter().enumerate() {
            if let Some(&f) = fs.iter().find(|&&f| f == 0 || f > self.facets) {
                return Err(ToricError::MalformedInput(format!(
                    "vertex {} names facet {f}, outside 1..={}",
                    i + 1,
                    self.facets
                )));
            }
            if fs.len() != n {
                return Err(ToricError::NotSimple(i + 1));
            }
        }
        let mut seen = BTreeMap::new();
        for (i, fs) in self.vertices.iter().enumerate() {
            if let Some(j) = seen.insert(fs, i + 1) {
                return Err(ToricError::MalformedInput(format!(
                    "vertices {j} and {} lie on the same facets",
                    i + 1
                )));
            }
        }
        let members = self.facet_vertices();
        let mut facet_sets = BTreeMap::new();
        for (f, vs) in members.iter().enumerate() {
            if vs.len() < n || facet_sets.insert(vs, f + 1).is_some() {
                return Err(ToricError::DegenerateFacet(f + 1));
            }
        }
        if let Some(g) = &self.geometry {
            self.validate_geometry(g)?;
        }
        Ok(())
    }

    fn validate_geometry(&self, g: &Geometry) -> Result<(), ToricError> {
        let n = self.dim;
        let shape_ok = g.coords.len() == self.vertices.len()
            && g.coords.iter().all(|c| c.len() == n)
            && g.normals.len() == self.facets
            && g.normals.iter().all(|c| c.len() == n)
            && g.offsets.len() == self.facets;
        if !shape_ok {
            return Err(ToricError::MalformedInput(
                "geometry needs one n-vector per vertex and one normal and offset per facet".into(),
            ));
        }
        for (f, normal) in g.normals.iter().enumerate() {
            let content = normal.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !content.is_one() {
                return Err(ToricError::MalformedInput(format!("normal of facet {} is not primitive", f + 1)));
            }
        }
        for (v, x) in g.coords.iter().enumerate() {
            for (f, (normal, offset)) in g.normals.iter().zip(&g.offsets).enumerate() {
                let value: BigRational = normal
                    .iter()
                    .zip(x)
                    .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
                    .fold(BigRational::zero(), |acc, t| acc + t);
                let on = value == *offset;
                if value < *offset {
                    return Err(ToricError::IncidenceGeometryMismatch(format!(
                        "vertex {} violates the inequality of facet {}",
                        v + 1,
                        f + 1
                    )));
                }
                if on != self.vertices[v].contains(&(f + 1)) {
                    return Err(ToricError::IncidenceGeometryMismatch(format!(
                        "vertex {} {} facet {} by coordinates but not by incidence",
                        v + 1,
                        if on { "lies on" } else { "misses" },
                        f + 1
                    )));
                }
            }
            let rows: Vec<Vec<BigInt>> = self.vertices[v].iter().map(|&f| g.normals[f - 1].clone()).collect();
            let det = IntMatrix::from_rows(n, &rows)
                .and_then(|m| m.determinant())
                .map_err(|e| ToricError::MalformedInput(e.to_string()))?;
            if det.abs() != BigInt::one() {
                return Err(ToricError::NotSmooth { vertex: v + 1, det });
            }
        }
        if n == 3 && self.euler_characteristic() != 2 {
            return Err(ToricError::IncidenceGeometryMismatch(format!(
                "V - E + F = {}, expected 2",
                self.euler_characteristic()
            )));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facet_count(&self) -> usize {
        self.facets
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Facets through vertex `v` (1-based).
    pub fn facets_of(&self, v: usize) -> Option<&BTreeSet<usize>> {
        v.checked_sub(1).and_then(|i| self.vertices.get(i))
    }

    /// Equal dimension, facet count and vertex facet-sets, ignoring vertex
    /// order and geometry.
    pub fn same_combinatorics(&self, other: &DelzantIncidence) -> bool {
        let sorted = |p: &DelzantIncidence| p.vertices.iter().cloned().collect::<BTreeSet<_>>();
        self.dim == other.dim
            && self.facets == other.facets
            && self.vertices.len() == other.vertices.len()
            && sorted(self) == sorted(other)
    }

    pub fn geometry(&self) -> Option<&Geometry> {
        self.geometry.as_ref()
    }

    /// Vertices on each facet, indexed by facet id − 1.
    pub fn facet_vertices(&self) -> Vec<BTreeSet<usize>> {
        let mut out = vec![BTreeSet::new(); self.facets];
        for (v, fs) in self.vertices.iter().enumerate() {
            for &f in fs {
                out[f - 1].insert(v + 1);
            }
        }
        out
    }

    /// Polytope edges: `(n−1)`-sets of facets met by some vertex.
    pub fn edge_count(&self) -> usize {
        let k = self.dim.saturating_sub(1);
        self.vertices
            .iter()
            .flat_map(|fs| fs.iter().copied().combinations(k))
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_count() as i64 + self.facets as i64
    }

    /// `[0, 1]`.
    pub fn interval() -> Self {
        Self::hypercube(1)
    }

    pub fn square() -> Self {
        Self::hypercube(2)
    }

    pub fn cube() -> Self {
        Self::hypercube(3)
    }

    /// `[0, 1]^n`. Facet `2i + 1` is `x_i = 0`, facet `2i + 2` is `x_i = 1`;
    /// vertices run through `{0, 1}^n` with the first coordinate outermost.
    pub fn hypercube(n: usize) -> Self {
        let mut vertices = Vec::new();
        let mut coords = Vec::new();
        for bits in 0..(1usize << n) {
            let x: Vec<usize> = (0..n).map(|i| (bits >> (n - 1 - i)) & 1).collect();
            vertices.push((0..n).map(|i| 2 * i + 1 + x[i]).collect());
            coords.push(x.iter().map(|&b| BigRational::from_integer(b.into())).collect());
        }
        let mut normals = Vec::new();
        let mut offsets = Vec::new();
        for i in 0..n {
            for (sign, offset) in [(1, 0), (-1, -1)] {
                let mut normal = vec![BigInt::zero(); n];
                normal[i] = BigInt::from(sign);
                normals.push(normal);
                offsets.push(BigRational::from_integer(offset.into()));
            }
        }
        DelzantIncidence::new(
            n,
            2 * n,
            vertices,
            Some(Geometry {
                coords,
                normals,
                offsets,
            }),
        )
        .expect("hypercube is Delzant")
    }
}

/// `Γ = ¬Sk¹((∂Δ)^∨)`: facets, joined when they share no vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetGraph {
    pub facets: usize,
    pub edges: Vec<(usize, usize)>,
}

impl FacetGraph {
    pub fn to_json(&self) -> Value {
        json!({
            "facets": self.facets,
            "edges": self.edges.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
        })
    }
}

pub fn facet_graph(p: &DelzantIncidence) -> FacetGraph {
    let members = p.facet_vertices();
    let edges = (1..=p.facets)
        .tuple_combinations()
        .filter(|&(a, b)| members[a - 1].is_disjoint(&members[b - 1]))
        .collect();
    FacetGraph {
        facets: p.facets,
        edges,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chopped {
    pub polytope: DelzantIncidence,
    /// Id of the exceptional facet.
    pub new_facet: usize,
    pub geometry_dropped: bool,
}

/// Cuts off vertex `v`: a new facet `F₀ = F + 1`, and for every `(n−1)`-subset
/// `S` of the facets through `v` (lexicographic order) a new vertex on `S ∪ {F₀}`,
/// appended after the surviving vertices.
pub fn chop_vertex(p: &DelzantIncidence, v: usize) -> Result<Chopped, ToricError> {
    let through = p.facets_of(v).ok_or(ToricError::VertexNotFound(v))?.clone();
    let new_facet = p.facets + 1;
    let mut vertices: Vec<BTreeSet<usize>> = p
        .vertices
        .iter()
        .enumerate()
        .filter(|&(i, _)| i + 1 != v)
        .map(|(_, s)| s.clone())
        .collect();
    for subset in through.iter().copied().combinations(p.dim - 1) {
        let mut s: BTreeSet<usize> = subset.into_iter().collect();
        s.insert(new_facet);
        vertices.push(s);
    }
    Ok(Chopped {
        polytope: DelzantIncidence::new(p.dim, new_facet, vertices, None)?,
        new_facet,
        geometry_dropped: p.geometry.is_some(),
    })
}

/// Attaches degrees, one per facet in facet order.
pub fn assign_degrees(graph: &FacetGraph, degrees: &[i64]) -> Result<NegativeColourScheme, ToricError> {
    if degrees.len() != graph.facets {
        return Err(ToricError::DegreeCountMismatch {
            expected: graph.facets,
            found: degrees.len(),
        });
    }
    if let Some((i, &k)) = degrees.iter().enumerate().find(|(_, &k)| k <= 0) {
        return Err(ToricError::NonPositiveDegree { facet: i + 1, value: k });
    }
    NegativeColourScheme::new(
        graph.facets,
        graph.edges.iter().map(|&(a, b)| (a as i64, b as i64)),
        degrees,
    )
    .map_err(|e| match e {
        SchemeError::NonPositiveDegree { colour, value } => ToricError::NonPositiveDegree { facet: colour, value },
        other => ToricError::MalformedInput(other.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_polytopes() {
        let i = DelzantIncidence::interval();
        assert_eq!((i.facet_count(), i.vertex_count()), (2, 2));
        assert_eq!(facet_graph(&i).edges, vec![(1, 2)]);
        let s = DelzantIncidence::square();
        assert_eq!((s.facet_count(), s.vertex_count()), (4, 4));
        assert_eq!(facet_graph(&s).edges, vec![(1, 2), (3, 4)]);
        let c = DelzantIncidence::cube();
        assert_eq!((c.facet_count(), c.vertex_count()), (6, 8));
        assert_eq!(facet_graph(&c).edges, vec![(1, 2), (3, 4), (5, 6)]);
        assert_eq!(c.euler_characteristic(), 2);
        assert_eq!(c.facets_of(1).unwrap(), &BTreeSet::from([1, 3, 5]));
    }

    #[test]
    fn chopped_square_is_a_pentagon() {
        let p = chop_vertex(&DelzantIncidence::square(), 1).unwrap();
        assert!(p.geometry_dropped);
        assert_eq!(p.new_facet, 5);
        assert_eq!(
            facet_graph(&p.polytope).edges,
            vec![(1, 2), (1, 3), (2, 5), (3, 4), (4, 5)]
        );
    }

    #[test]
    fn chopped_cube_is_a_tree() {
        let p = chop_vertex(&DelzantIncidence::cube(), 1).unwrap().polytope;
        assert_eq!((p.facet_count(), p.vertex_count()), (7, 10));
        assert_eq!(p.euler_characteristic(), 2);
        let g = facet_graph(&p);
        assert_eq!(g.edges, vec![(1, 2), (2, 7), (3, 4), (4, 7), (5, 6), (6, 7)]);
    }

    #[test]
    fn chop_errors() {
        assert_eq!(
            chop_vertex(&DelzantIncidence::square(), 9),
            Err(ToricError::VertexNotFound(9))
        );
        assert_eq!(
            chop_vertex(&DelzantIncidence::square(), 0),
            Err(ToricError::VertexNotFound(0))
        );
    }

    #[test]
    fn validation_errors() {
        let bad = DelzantIncidence::new(2, 3, vec![BTreeSet::from([1, 2]), BTreeSet::from([2])], None);
        assert_eq!(bad, Err(ToricError::NotSimple(2)));
        let json = r#"{"dim": 2, "facets": 4, "vertices": 4,
            "incidence": [[1,3],[1,4],[2,3],[2,4]],
            "geometry": {"coords": [["0","0"],["0","1"],["1","0"],["1","1"]],
                         "normals": [[1,0],[-1,0],[0,1],[0,-1]],
                         "offsets": ["0","-1","0","-1"]}}"#;
        assert_eq!(DelzantIncidence::from_json(json).unwrap(), DelzantIncidence::square());
        let skew = json.replace("[[1,0],[-1,0],[0,1],[0,-1]]", "[[1,0],[-1,0],[1,2],[-1,-2]]");
        assert!(DelzantIncidence::from_json(&skew).is_err());
        let moved = json.replace(r#"["1","1"]]"#, r#"["1","1/2"]]"#);
        assert!(matches!(
            DelzantIncidence::from_json(&moved),
            Err(ToricError::IncidenceGeometryMismatch(_))
        ));
        assert!(matches!(
            DelzantIncidence::from_json("{\"dim\": 2}"),
            Err(ToricError::MalformedInput(_))
        ));
    }

    #[test]
    fn non_smooth_corner() {
        // triangle with vertices (0,0), (2,0), (0,1): the corner (0,1) is singular
        let json = r#"{"dim": 2, "facets": 3, "vertices": 3,
            "incidence": [[1,2],[2,3],[1,3]],
            "geometry": {"coords": [["0","0"],["2","0"],["0","1"]],
                         "normals": [[1,0],[0,1],[-1,-2]],
                         "offsets": ["0","0","-2"]}}"#;
        assert!(matches!(
            DelzantIncidence::from_json(json),
            Err(ToricError::NotSmooth { vertex: 3, .. })
        ));
    }

    #[test]
    fn degrees() {
        let g = facet_graph(&DelzantIncidence::square());
        assert_eq!(
            assign_degrees(&g, &[1, 2, 0, 4]),
            Err(ToricError::NonPositiveDegree { facet: 3, value: 0 })
        );
        assert!(assign_degrees(&g, &[1, 2, 3]).is_err());
        let s = assign_degrees(&g, &[2, 2, 3, 3]).unwrap();
        assert!(s.very_composite());
    }
}

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CuspError, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub singular: bool,
}

/// Undirected edge `ends[0] -- ends[1]`; `d[0]` is the value seen from
/// `ends[0]`, `d[1]` from `ends[1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub ends: [usize; 2],
    pub d: [Option<i64>; 2],
}

impl Edge {
    pub fn new(u: usize, v: usize, d_uv: i64, d_vu: i64) -> Self {
        Edge { ends: [u, v], d: [Some(d_uv), Some(d_vu)] }
    }

    /// Endpoint opposite `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }

    /// Value of the half-edge leaving `v`.
    pub fn d_from(&self, v: usize) -> Option<i64> {
        if self.ends[0] == v {
            self.d[0]
        } else if self.ends[1] == v {
            self.d[1]
        } else {
            None
        }
    }

    fn joins(&self, a: usize, b: usize) -> bool {
        self.ends == [a, b] || self.ends == [b, a]
    }
}

/// Oriented triangle; `edges[k]` joins `vertices[k]` and `vertices[k + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: [usize; 3],
    pub edges: [usize; 3],
}

/// Triangulated surface carrying an integer on every half-edge.
///
/// Multiple edges between the same two vertices are allowed (the complex is
/// a Delta-complex); loops are not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IAComplex {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    /// The distinguished vertex.
    pub v0: usize,
    /// Boundary cycle, empty for closed surfaces.
    pub boundary: Vec<usize>,
}

fn malformed(msg: String) -> CuspError {
    CuspError::MalformedComplex(msg)
}

impl IAComplex {
    /// Checks structure: indices, no loops, faces bounded by their edges, at
    /// most two faces per edge, and a value on each side of interior edges.
    pub fn new(
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        faces: Vec<Face>,
        v0: usize,
        boundary: Vec<usize>,
    ) -> Result<Self> {
        let nv = vertices.len();
        if nv == 0 {
            return Err(malformed("no vertices".into()));
        }
        if v0 >= nv {
            return Err(malformed(format!("v0 = {v0} is not a vertex")));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.ends.iter().any(|&v| v >= nv) {
                return Err(malformed(format!("edge {i} has an endpoint out of range")));
            }
            if e.ends[0] == e.ends[1] {
                return Err(malformed(format!("edge {i} is a loop at vertex {}", e.ends[0])));
            }
        }
        let mut incidence = vec![0usize; edges.len()];
        for (fi, f) in faces.iter().enumerate() {
            if f.vertices.iter().any(|&v| v >= nv) {
                return Err(malformed(format!("face {fi} has a vertex out of range")));
            }
            let [a, b, c] = f.vertices;
            if a == b || b == c || a == c {
                return Err(malformed(format!("face {fi} repeats a vertex")));
            }
            for k in 0..3 {
                let ei = f.edges[k];
                let e = edges
                    .get(ei)
                    .ok_or_else(|| malformed(format!("face {fi} uses unknown edge {ei}")))?;
                let (p, q) = (f.vertices[k], f.vertices[(k + 1) % 3]);
                if !e.joins(p, q) {
                    return Err(malformed(format!(
                        "face {fi}: edge {ei} does not join {p} and {q}"
                    )));
                }
                incidence[ei] += 1;
            }
        }
        for (i, (e, &n)) in edges.iter().zip(&incidence).enumerate() {
            let [u, v] = e.ends;
            match n {
                0 => return Err(malformed(format!("edge {i} ({u}-{v}) lies in no face"))),
                1 if e.d.iter().all(Option::is_none) => {
                    return Err(malformed(format!("edge {i} ({u}-{v}) carries no value")))
                }
                2 => {
                    for (side, from, to) in [(0, u, v), (1, v, u)] {
                        if e.d[side].is_none() {
                            return Err(malformed(format!(
                                "interior edge {i} lacks a value for {from}->{to}"
                            )));
                        }
                    }
                }
                n if n > 2 => {
                    return Err(malformed(format!("edge {i} ({u}-{v}) lies in {n} faces")))
                }
                _ => {}
            }
        }
        if let Some(&b) = boundary.iter().find(|&&b| b >= nv) {
            return Err(malformed(format!("boundary vertex {b} out of range")));
        }
        Ok(IAComplex { vertices, edges, faces, v0, boundary })
    }

    /// Simplicial input: edges named by their endpoints, faces by vertex
    /// triples. `half_edges` lists `(from, to, d)`.
    pub fn from_simplicial(
        n_vertices: usize,
        half_edges: &[(usize, usize, i64)],
        faces: &[[usize; 3]],
        v0: usize,
    ) -> Result<Self> {
        let records: Vec<EdgeJson> = half_edges
            .iter()
            .map(|&(from, to, d)| EdgeJson { from, to, d, edge: None })
            .collect();
        let raw = ComplexJson {
            vertices: vec![Vertex::default(); n_vertices],
            edges: records,
            faces: faces.iter().map(|&f| FaceJson::Triple(f)).collect(),
            v0,
            boundary: Vec::new(),
        };
        Self::from_raw(raw)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: ComplexJson =
            serde_json::from_str(s).map_err(|e| malformed(format!("invalid JSON: {e}")))?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: ComplexJson) -> Result<Self> {
        let explicit = raw.edges.iter().filter(|e| e.edge.is_some()).count();
        if explicit != 0 && explicit != raw.edges.len() {
            return Err(malformed("either every edge record has an id or none does".into()));
        }
        let mut edges: Vec<Edge> = Vec::new();
        let mut by_key: HashMap<(usize, usize), usize> = HashMap::new();
        let mut by_id: BTreeMap<usize, usize> = BTreeMap::new();
        for (ri, rec) in raw.edges.iter().enumerate() {
            if rec.from == rec.to {
                return Err(malformed(format!("edge record {ri} is a loop at {}", rec.from)));
            }
            let key = (rec.from.min(rec.to), rec.from.max(rec.to));
            let slot = match rec.edge {
                Some(id) => by_id.get(&id).copied(),
                None => by_key.get(&key).copied(),
            };
            match slot {
                None => {
                    let mut e = Edge { ends: [rec.from, rec.to], d: [None, None] };
                    e.d[0] = Some(rec.d);
                    let idx = edges.len();
                    edges.push(e);
                    match rec.edge {
                        Some(id) => {
                            by_id.insert(id, idx);
                        }
                        None => {
                            by_key.insert(key, idx);
                        }
                    }
                }
                Some(idx) => {
                    let e = &mut edges[idx];
                    if !e.joins(rec.from, rec.to) {
                        return Err(malformed(format!(
                            "edge record {ri} reuses an id for different endpoints"
                        )));
                    }
                    let side = if e.ends[0] == rec.from { 0 } else { 1 };
                    if e.d[side].is_some() {
                        return Err(malformed(format!(
                            "edge record {ri} repeats {}->{}",
                            rec.from, rec.to
                        )));
                    }
                    e.d[side] = Some(rec.d);
                }
            }
        }
        let mut faces = Vec::with_capacity(raw.faces.len());
        for (fi, f) in raw.faces.iter().enumerate() {
            let face = match f {
                FaceJson::Triple(vs) => {
                    if explicit != 0 {
                        return Err(malformed(format!(
                            "face {fi} must list its edges when edges carry ids"
                        )));
                    }
                    let mut es = [0usize; 3];
                    for k in 0..3 {
                        let (a, b) = (vs[k], vs[(k + 1) % 3]);
                        es[k] = *by_key.get(&(a.min(b), a.max(b))).ok_or_else(|| {
                            malformed(format!("face {fi}: no edge between {a} and {b}"))
                        })?;
                    }
                    Face { vertices: *vs, edges: es }
                }
                FaceJson::Full { vertices, edges: ids } => {
                    let mut es = [0usize; 3];
                    for k in 0..3 {
                        es[k] = if explicit != 0 {
                            *by_id.get(&ids[k]).ok_or_else(|| {
                                malformed(format!("face {fi}: unknown edge id {}", ids[k]))
                            })?
                        } else {
                            ids[k]
                        };
                    }
                    Face { vertices: *vertices, edges: es }
                }
            };
            faces.push(face);
        }
        IAComplex::new(raw.vertices, edges, faces, raw.v0, raw.boundary)
    }

    /// JSON with explicit edge ids (the edge index) and face records.
    pub fn to_json_value(&self) -> Value {
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            for (side, (from, to)) in [(e.ends[0], e.ends[1]), (e.ends[1], e.ends[0])]
                .into_iter()
                .enumerate()
            {
                if let Some(d) = e.d[side] {
                    edges.push(json!({"from": from, "to": to, "d": d, "edge": i}));
                }
            }
        }
        let faces: Vec<Value> = self
            .faces
            .iter()
            .map(|f| json!({"vertices": f.vertices, "edges": f.edges}))
            .collect();
        let mut out = json!({
            "vertices": self.vertices,
            "edges": edges,
            "faces": faces,
            "v0": self.v0,
        });
        if !self.boundary.is_empty() {
            out["boundary"] = json!(self.boundary);
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Number of faces on each edge.
    pub fn edge_face_counts(&self) -> Vec<usize> {
        let mut n = vec![0; self.edges.len()];
        for f in &self.faces {
            for &e in &f.edges {
                n[e] += 1;
            }
        }
        n
    }

    pub fn is_connected(&self) -> bool {
        let nv = self.vertices.len();
        let mut adj = vec![Vec::new(); nv];
        for e in &self.edges {
            adj[e.ends[0]].push(e.ends[1]);
            adj[e.ends[1]].push(e.ends[0]);
        }
        let mut seen = HashSet::from([0usize]);
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == nv
    }

    /// Edges around `v` in the cyclic order induced by the face orientation.
    /// Fails unless the link of `v` is one closed, consistently oriented
    /// cycle.
    pub fn star_edges(&self, v: usize) -> std::result::Result<Vec<usize>, String> {
        // Corner at v in face (v, a, b): leaves along v-a, returns along b-v.
        let mut next: HashMap<usize, usize> = HashMap::new();
        let mut corners = 0usize;
        for (fi, f) in self.faces.iter().enumerate() {
            for k in 0..3 {
                if f.vertices[k] != v {
                    continue;
                }
                corners += 1;
                let first = f.edges[k];
                let last = f.edges[(k + 2) % 3];
                if next.insert(first, last).is_some() {
                    return Err(format!(
                        "faces around vertex {v} are not consistently oriented (face {fi})"
                    ));
                }
            }
        }
        let Some(&start) = next.keys().min() else {
            return Err(format!("vertex {v} lies in no face"));
        };
        let mut out = vec![start];
        let mut cur = start;
        loop {
            cur = *next
                .get(&cur)
                .ok_or_else(|| format!("link of vertex {v} is not closed at edge {cur}"))?;
            if cur == start {
                break;
            }
            if out.len() > corners {
                return Err(format!("link of vertex {v} does not close up"));
            }
            out.push(cur);
        }
        if out.len() != corners {
            return Err(format!(
                "link of vertex {v} splits into several cycles ({} of {corners} corners reached)",
                out.len()
            ));
        }
        Ok(out)
    }

    /// Values on the half-edges leaving `v`, in star order.
    pub fn star(&self, v: usize) -> std::result::Result<Vec<i64>, String> {
        self.star_edges(v)?
            .into_iter()
            .map(|e| {
                self.edges[e]
                    .d_from(v)
                    .ok_or_else(|| format!("edge {e} has no value leaving vertex {v}"))
            })
            .collect()
    }
}

impl Serialize for IAComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IAComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ComplexJson::deserialize(d)?;
        IAComplex::from_raw(raw).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexJson {
    vertices: Vec<Vertex>,
    edges: Vec<EdgeJson>,
    faces: Vec<FaceJson>,
    #[serde(default)]
    v0: usize,
    #[serde(default)]
    boundary: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeJson {
    from: usize,
    to: usize,
    d: i64,
    #[serde(default)]
    edge: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum FaceJson {
    Triple([usize; 3]),
    Full { vertices: [usize; 3], edges: [usize; 3] },
}

/// Octahedron with apexes 0 and 5 around the square 1, 2, 3, 4, faces
/// oriented outward.
pub const OCTAHEDRON_FACES: [[usize; 3]; 8] = [
    [0, 1, 2],
    [0, 2, 3],
    [0, 3, 4],
    [0, 4, 1],
    [5, 2, 1],
    [5, 3, 2],
    [5, 4, 3],
    [5, 1, 4],
];

/// Tetrahedron faces, oriented outward.
pub const TETRAHEDRON_FACES: [[usize; 3]; 4] = [[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]];

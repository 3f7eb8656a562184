use std::collections::HashMap;

use serde::Serialize;

use super::complex::{Edge, Face, IAComplex, Vertex};
use crate::error::{CuspError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedCells {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub faces: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    /// Order of the permutation.
    pub order: usize,
    pub fixed: FixedCells,
    /// Image of each edge.
    pub edge_map: Vec<usize>,
    /// Image of each face.
    pub face_map: Vec<usize>,
    /// Absent when some face or edge orbit is shorter than the group; the
    /// quotient is then not a triangulation.
    pub quotient: Option<IAComplex>,
    pub quotient_euler_characteristic: Option<i64>,
    /// Exactly two fixed vertices.
    pub rotation_like: bool,
    /// False only for a rotation-like action whose quotient is not a sphere.
    pub quotient_is_sphere: bool,
}

fn not_auto(msg: String) -> CuspError {
    CuspError::NotAutomorphism(msg)
}

/// Checks that `perm` maps faces to faces and keeps the d-values, then forms
/// the quotient by the cyclic group it generates.
pub fn cyclic_symmetry(g: &IAComplex, perm: &[usize]) -> Result<SymmetryReport> {
    let nv = g.vertices.len();
    if perm.len() != nv {
        return Err(not_auto(format!("permutation has {} entries for {nv} vertices", perm.len())));
    }
    let mut hit = vec![false; nv];
    for (v, &p) in perm.iter().enumerate() {
        if p >= nv || std::mem::replace(&mut hit[p], true) {
            return Err(not_auto(format!("vertex {v} -> {p} is not part of a bijection")));
        }
    }

    // Faces are keyed by their vertex triple in rotation-normal form.
    let key = |vs: [usize; 3]| -> [usize; 3] {
        let k = (0..3).min_by_key(|&k| vs[k]).unwrap();
        [vs[k], vs[(k + 1) % 3], vs[(k + 2) % 3]]
    };
    let mut by_key: HashMap<[usize; 3], Vec<usize>> = HashMap::new();
    for (fi, f) in g.faces.iter().enumerate() {
        by_key.entry(key(f.vertices)).or_default().push(fi);
    }
    let mut face_map = vec![usize::MAX; g.faces.len()];
    let mut taken = vec![false; g.faces.len()];
    let mut edge_map = vec![usize::MAX; g.edges.len()];
    for (fi, f) in g.faces.iter().enumerate() {
        let image = f.vertices.map(|v| perm[v]);
        let k = key(image);
        let target = by_key
            .get(&k)
            .and_then(|c| c.iter().copied().find(|&t| !taken[t]))
            .ok_or_else(|| {
                not_auto(format!(
                    "face {fi} {:?} maps to {image:?}, which is not a face",
                    f.vertices
                ))
            })?;
        taken[target] = true;
        face_map[fi] = target;
        let tf = &g.faces[target];
        let offset = (0..3).find(|&o| tf.vertices[o] == image[0]).unwrap();
        for j in 0..3 {
            let (src, dst) = (f.edges[j], tf.edges[(j + offset) % 3]);
            match edge_map[src] {
                usize::MAX => edge_map[src] = dst,
                prev if prev != dst => {
                    return Err(not_auto(format!(
                        "edge {src} is sent to both edge {prev} and edge {dst}"
                    )))
                }
                _ => {}
            }
        }
    }
    for (i, e) in g.edges.iter().enumerate() {
        let img = &g.edges[edge_map[i]];
        for &v in &e.ends {
            if img.d_from(perm[v]) != e.d_from(v) {
                let w = e.other(v);
                return Err(not_auto(format!(
                    "d({v}->{w}) = {:?} but d({}->{}) = {:?} on edge {}",
                    e.d_from(v),
                    perm[v],
                    perm[w],
                    img.d_from(perm[v]),
                    edge_map[i]
                )));
            }
        }
    }

    let order = perm_order(perm);
    let fixed = FixedCells {
        vertices: (0..nv).filter(|&v| perm[v] == v).collect(),
        edges: (0..g.edges.len()).filter(|&e| edge_map[e] == e).collect(),
        faces: (0..g.faces.len()).filter(|&f| face_map[f] == f).collect(),
    };
    let rotation_like = fixed.vertices.len() == 2;
    let quotient = quotient(g, perm, &edge_map, &face_map, order)?;
    let quotient_euler_characteristic = quotient.as_ref().map(IAComplex::euler_characteristic);
    let quotient_is_sphere = !rotation_like || quotient_euler_characteristic == Some(2);
    Ok(SymmetryReport {
        order,
        fixed,
        edge_map,
        face_map,
        quotient,
        quotient_euler_characteristic,
        rotation_like,
        quotient_is_sphere,
    })
}

fn perm_order(perm: &[usize]) -> usize {
    let mut order = 1usize;
    let mut seen = vec![false; perm.len()];
    for s in 0..perm.len() {
        let mut len = 0;
        let mut v = s;
        while !seen[v] {
            seen[v] = true;
            v = perm[v];
            len += 1;
        }
        if len > 0 {
            order = num_integer::lcm(order, len);
        }
    }
    order
}

/// Orbit index of every element and the orbit sizes, orbits numbered by
/// their least element.
fn orbits(map: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut id = vec![usize::MAX; map.len()];
    let mut sizes = Vec::new();
    for s in 0..map.len() {
        if id[s] != usize::MAX {
            continue;
        }
        let mut v = s;
        let mut n = 0;
        while id[v] == usize::MAX {
            id[v] = sizes.len();
            v = map[v];
            n += 1;
        }
        sizes.push(n);
    }
    (id, sizes)
}

fn quotient(
    g: &IAComplex,
    perm: &[usize],
    edge_map: &[usize],
    face_map: &[usize],
    order: usize,
) -> Result<Option<IAComplex>> {
    let (vid, vsizes) = orbits(perm);
    let (eid, esizes) = orbits(edge_map);
    let (fid, fsizes) = orbits(face_map);
    if fsizes.iter().any(|&n| n != order) || esizes.iter().any(|&n| n != order) {
        return Ok(None);
    }
    let mut vertices = vec![Vertex::default(); vsizes.len()];
    for (v, info) in g.vertices.iter().enumerate().rev() {
        vertices[vid[v]] = info.clone();
    }
    let mut edges: Vec<Option<Edge>> = vec![None; esizes.len()];
    for (i, e) in g.edges.iter().enumerate() {
        if edges[eid[i]].is_none() {
            let ends = e.ends.map(|v| vid[v]);
            if ends[0] == ends[1] {
                return Ok(None);
            }
            edges[eid[i]] = Some(Edge { ends, d: e.d });
        }
    }
    let mut faces: Vec<Option<Face>> = vec![None; fsizes.len()];
    for (i, f) in g.faces.iter().enumerate() {
        if faces[fid[i]].is_none() {
            faces[fid[i]] = Some(Face { vertices: f.vertices.map(|v| vid[v]), edges: f.edges.map(|e| eid[e]) });
        }
    }
    let boundary = g.boundary.iter().map(|&v| vid[v]).collect();
    let q = IAComplex::new(
        vertices,
        edges.into_iter().map(Option::unwrap).collect(),
        faces.into_iter().map(Option::unwrap).collect(),
        vid[g.v0],
        boundary,
    );
    match q {
        Ok(q) => Ok(Some(q)),
        Err(CuspError::MalformedComplex(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

//! Closed-surface maps given as face lists.
//!
//! A map is a finite collection of polygonal faces over named vertices; two
//! faces are glued wherever they share an edge. Construction derives the
//! vertex and edge sets, the edge-to-face incidence, and the umbrella of
//! faces around each vertex, and insists that every edge lies in exactly two
//! faces. The remaining closed-surface invariants (single umbrella cycle per
//! vertex, face connectivity, Euler characteristic at most 2) are checked by
//! [`validate_surface`], which reports rather than fails: a map that parses
//! is inspectable even when it is not a surface.
//!
//! The text format is one face per line, vertices separated by whitespace,
//! in cyclic boundary order. A token starting with `#` begins a comment that
//! runs to the end of the line.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Vertex name. Nonempty, no whitespace, may not start with `#`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(String);

impl Label {
    pub fn new(s: impl Into<String>) -> Result<Self, Error> {
        let s = s.into();
        if s.is_empty() || s.starts_with('#') || s.contains(char::is_whitespace) {
            return Err(Error::BadLabel(s));
        }
        Ok(Label(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Convenience for literals in tests and fixtures; panics on a bad label.
pub fn label(s: &str) -> Label {
    Label::new(s).expect("valid label")
}

/// Unordered pair of distinct vertices; the smaller label is stored first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(Label, Label);

impl Edge {
    pub fn new(a: Label, b: Label) -> Result<Self, Error> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge(a, b)),
            std::cmp::Ordering::Greater => Ok(Edge(b, a)),
            std::cmp::Ordering::Equal => Err(Error::LoopEdge(a)),
        }
    }

    pub fn ends(&self) -> (&Label, &Label) {
        (&self.0, &self.1)
    }

    pub fn touches(&self, v: &Label) -> bool {
        &self.0 == v || &self.1 == v
    }

    /// The endpoint other than `v`, if `v` is an endpoint.
    pub fn other(&self, v: &Label) -> Option<&Label> {
        if &self.0 == v {
            Some(&self.1)
        } else if &self.1 == v {
            Some(&self.0)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// The lexicographically smallest sequence among all rotations of `seq` and
/// of its reversal. Canonical form for anything cyclic and undirected.
pub fn canonical_cycle(seq: &[Label]) -> Vec<Label> {
    assert!(!seq.is_empty());
    let mut best: Option<Vec<Label>> = None;
    let mut consider = |candidate: Vec<Label>| {
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    };
    let n = seq.len();
    for start in 0..n {
        let forward: Vec<Label> = (0..n).map(|i| seq[(start + i) % n].clone()).collect();
        let backward: Vec<Label> = (0..n).map(|i| seq[(start + n - i) % n].clone()).collect();
        consider(forward);
        consider(backward);
    }
    best.unwrap()
}

/// Smallest rotation of `seq` with the orientation kept. Used to detect
/// duplicate faces: a face and its mirror image are distinct gluing data
/// (two faces may share a whole boundary), but the same oriented boundary
/// listed twice is an input error.
fn oriented_canonical(seq: &[Label]) -> Vec<Label> {
    let n = seq.len();
    (0..n)
        .map(|start| (0..n).map(|i| seq[(start + i) % n].clone()).collect::<Vec<_>>())
        .min()
        .unwrap()
}

/// Face boundary: a cyclic sequence of at least three distinct vertices,
/// stored in canonical form (minimal over rotation and reflection).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(Vec<Label>);

impl Face {
    pub fn new(boundary: Vec<Label>) -> Result<Self, Error> {
        if boundary.len() < 3 {
            return Err(Error::ShortFace(boundary.len()));
        }
        let mut seen = HashSet::new();
        for v in &boundary {
            if !seen.insert(v.clone()) {
                return Err(Error::RepeatedVertex(v.clone()));
            }
        }
        Ok(Face(canonical_cycle(&boundary)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a face has at least three vertices
    }

    pub fn vertices(&self) -> &[Label] {
        &self.0
    }

    pub fn contains(&self, v: &Label) -> bool {
        self.0.contains(v)
    }

    pub fn position(&self, v: &Label) -> Option<usize> {
        self.0.iter().position(|x| x == v)
    }

    /// Boundary edges, one per consecutive pair including the wraparound.
    pub fn edges(&self) -> Vec<Edge> {
        let n = self.0.len();
        (0..n)
            .map(|i| Edge::new(self.0[i].clone(), self.0[(i + 1) % n].clone()).expect("face vertices distinct"))
            .collect()
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges().contains(e)
    }

    /// The two boundary arcs joining `a` and `b`, each as a vertex path from
    /// `a` to `b` inclusive. `a` and `b` must be distinct boundary vertices.
    pub fn arcs_between(&self, a: &Label, b: &Label) -> Option<(Vec<Label>, Vec<Label>)> {
        let i = self.position(a)?;
        let j = self.position(b)?;
        if i == j {
            return None;
        }
        let n = self.0.len();
        let walk = |from: usize, to: usize, step_back: bool| {
            let mut path = vec![self.0[from].clone()];
            let mut k = from;
            while k != to {
                k = if step_back { (k + n - 1) % n } else { (k + 1) % n };
                path.push(self.0[k].clone());
            }
            path
        };
        Some((walk(i, j, false), walk(i, j, true)))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.0.iter().map(|l| l.as_str()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Face counts by dimension: vertices, edges, faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.vertices, self.edges, self.faces)
    }
}

/// The cyclic structure of faces and neighbors around one vertex.
///
/// `faces[i]` and `faces[(i+1) % d]` share the edge from the vertex to
/// `neighbors[i]`; the neighbor sequence read cyclically is the vertex link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Umbrella {
    pub faces: Vec<usize>,
    pub neighbors: Vec<Label>,
}

/// A map on a closed surface, with derived incidence structures.
///
/// Faces are stored canonically and sorted; face indices refer to that order.
/// Construction guarantees every edge lies in exactly two faces; everything
/// else about being a surface is [`validate_surface`]'s business.
#[derive(Debug, Clone)]
pub struct SurfaceMap {
    faces: Vec<Face>,
    vertices: Vec<Label>,
    edges: Vec<Edge>,
    edge_faces: BTreeMap<Edge, [usize; 2]>,
    vertex_faces: BTreeMap<Label, Vec<usize>>,
    adjacency: BTreeMap<Label, BTreeSet<Label>>,
    umbrellas: BTreeMap<Label, Option<Umbrella>>,
}

impl PartialEq for SurfaceMap {
    fn eq(&self, other: &Self) -> bool {
        self.faces == other.faces
    }
}

impl Eq for SurfaceMap {}

impl SurfaceMap {
    /// Build a map from raw face boundaries. Checks each face (length,
    /// distinct vertices), rejects duplicate oriented boundaries, and
    /// requires every edge to lie in exactly two faces.
    pub fn from_faces(raw: Vec<Vec<Label>>) -> Result<Self, Error> {
        if raw.is_empty() {
            return Err(Error::EmptyMap);
        }
        let mut seen = HashSet::new();
        let mut faces = Vec::with_capacity(raw.len());
        for boundary in raw {
            let face = Face::new(boundary.clone())?;
            if !seen.insert(oriented_canonical(&boundary)) {
                return Err(Error::DuplicateFace(face.to_string()));
            }
            faces.push(face);
        }
        faces.sort();

        let mut edge_incidence: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        let mut vertex_faces: BTreeMap<Label, Vec<usize>> = BTreeMap::new();
        for (idx, face) in faces.iter().enumerate() {
            for e in face.edges() {
                edge_incidence.entry(e).or_default().push(idx);
            }
            for v in face.vertices() {
                vertex_faces.entry(v.clone()).or_default().push(idx);
            }
        }

        let mut edge_faces = BTreeMap::new();
        for (e, ids) in &edge_incidence {
            if ids.len() != 2 {
                return Err(Error::EdgeFaceCount { edge: e.clone(), count: ids.len() });
            }
            edge_faces.insert(e.clone(), [ids[0], ids[1]]);
        }

        let edges: Vec<Edge> = edge_faces.keys().cloned().collect();
        let vertices: Vec<Label> = vertex_faces.keys().cloned().collect();
        let mut adjacency: BTreeMap<Label, BTreeSet<Label>> = vertices.iter().map(|v| (v.clone(), BTreeSet::new())).collect();
        for e in &edges {
            let (a, b) = e.ends();
            adjacency.get_mut(a).unwrap().insert(b.clone());
            adjacency.get_mut(b).unwrap().insert(a.clone());
        }

        let umbrellas = vertices
            .iter()
            .map(|v| (v.clone(), umbrella_at(v, &vertex_faces[v], &faces, &edge_faces)))
            .collect();

        Ok(SurfaceMap { faces, vertices, edges, edge_faces, vertex_faces, adjacency, umbrellas })
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, idx: usize) -> &Face {
        &self.faces[idx]
    }

    pub fn face_index(&self, face: &Face) -> Option<usize> {
        self.faces.binary_search(face).ok()
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn f_vector(&self) -> FVector {
        FVector { vertices: self.vertices.len(), edges: self.edges.len(), faces: self.faces.len() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn contains_vertex(&self, v: &Label) -> bool {
        self.adjacency.contains_key(v)
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edge_faces.contains_key(e)
    }

    /// The two face indices an edge lies in.
    pub fn faces_of_edge(&self, e: &Edge) -> Result<[usize; 2], Error> {
        self.edge_faces.get(e).copied().ok_or_else(|| Error::UnknownEdge(e.clone()))
    }

    /// Indices of the faces containing a vertex.
    pub fn faces_of_vertex(&self, v: &Label) -> Result<&[usize], Error> {
        self.vertex_faces.get(v).map(|x| x.as_slice()).ok_or_else(|| Error::UnknownVertex(v.clone()))
    }

    pub fn neighbors(&self, v: &Label) -> Result<&BTreeSet<Label>, Error> {
        self.adjacency.get(v).ok_or_else(|| Error::UnknownVertex(v.clone()))
    }

    pub fn degree(&self, v: &Label) -> Result<usize, Error> {
        Ok(self.neighbors(v)?.len())
    }

    /// The umbrella at `v`, if faces around `v` close into a single cycle.
    pub fn umbrella(&self, v: &Label) -> Result<&Umbrella, Error> {
        match self.umbrellas.get(v) {
            None => Err(Error::UnknownVertex(v.clone())),
            Some(None) => Err(Error::BrokenLink(v.clone())),
            Some(Some(u)) => Ok(u),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }
}

/// Walk the faces around `v`, pairing them across shared edges at `v`.
/// Returns the umbrella if they close into one cycle covering every face at
/// `v`; `None` marks a pinched or otherwise non-surface vertex.
fn umbrella_at(
    v: &Label,
    face_ids: &[usize],
    faces: &[Face],
    edge_faces: &BTreeMap<Edge, [usize; 2]>,
) -> Option<Umbrella> {
    // Corner of face f at v: the two boundary edges of f meeting v.
    let mut corner_edges: HashMap<usize, (Edge, Edge)> = HashMap::new();
    for &f in face_ids {
        let face = &faces[f];
        let i = face.position(v)?;
        let q = face.len();
        let prev = face.vertices()[(i + q - 1) % q].clone();
        let next = face.vertices()[(i + 1) % q].clone();
        let e1 = Edge::new(v.clone(), prev).ok()?;
        let e2 = Edge::new(v.clone(), next).ok()?;
        corner_edges.insert(f, (e1, e2));
    }
    // Every edge at v must join exactly two of these corners for the walk to
    // be well defined; edge_faces already guarantees two faces per edge.
    let start = *face_ids.iter().min()?;
    let mut order = vec![start];
    let mut cross = Vec::new();
    let (_, mut exit) = corner_edges[&start].clone();
    loop {
        let cur = *order.last().unwrap();
        let [a, b] = *edge_faces.get(&exit)?;
        let nxt = if a == cur { b } else if b == cur { a } else { return None };
        cross.push(exit.other(v)?.clone());
        if nxt == start {
            break;
        }
        if order.contains(&nxt) {
            return None; // revisits a face before closing
        }
        let (e1, e2) = corner_edges.get(&nxt)?.clone();
        exit = if e1 == *cross.last().map(|w| Edge::new(v.clone(), w.clone()).unwrap()).as_ref().unwrap() { e2 } else { e1 };
        order.push(nxt);
    }
    if order.len() != face_ids.len() {
        return None; // umbrella closed without covering every face at v
    }
    Some(Umbrella { faces: order, neighbors: cross })
}

/// Parse a map from its text form. `#` at the start of a token begins a
/// comment running to the end of the line.
pub fn parse_map(text: &str) -> Result<SurfaceMap, Error> {
    let mut raw: Vec<Vec<Label>> = Vec::new();
    let mut seen: HashMap<Vec<Label>, usize> = HashMap::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let mut tokens: Vec<(usize, &str)> = Vec::new();
        for piece in split_tokens(line) {
            if piece.1.starts_with('#') {
                break;
            }
            tokens.push(piece);
        }
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() < 3 {
            return Err(Error::Syntax {
                line: lineno,
                col: tokens[0].0,
                message: format!("face has {} vertices; a face needs at least 3", tokens.len()),
            });
        }
        let mut boundary = Vec::with_capacity(tokens.len());
        let mut in_face: HashMap<&str, usize> = HashMap::new();
        for &(col, tok) in &tokens {
            if in_face.insert(tok, col).is_some() {
                return Err(Error::Syntax {
                    line: lineno,
                    col,
                    message: format!("face repeats vertex {tok}"),
                });
            }
            boundary.push(Label::new(tok).map_err(|_| Error::Syntax {
                line: lineno,
                col,
                message: format!("invalid vertex label {tok:?}"),
            })?);
        }
        let key = oriented_canonical(&boundary);
        if let Some(&first) = seen.get(&key) {
            return Err(Error::Syntax {
                line: lineno,
                col: tokens[0].0,
                message: format!("duplicate of the face at line {first}"),
            });
        }
        seen.insert(key, lineno);
        raw.push(boundary);
    }
    SurfaceMap::from_faces(raw)
}

/// Whitespace-separated tokens of a line with their 1-based starting columns.
fn split_tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Serialize a map in the text format: one face per line, canonical order.
/// `parse_map(&write_map(m))` reconstructs `m` exactly.
pub fn write_map(map: &SurfaceMap) -> String {
    let mut out = String::new();
    for face in map.faces() {
        out.push_str(&face.to_string());
        out.push('\n');
    }
    out
}

/// Result of checking the closed-surface invariants.
///
/// `edge_face_failures` is empty for any map built by this crate
/// (construction enforces two faces per edge); the field documents the
/// invariant and keeps the report self-contained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub edge_face_failures: Vec<(Edge, usize)>,
    pub link_failures: Vec<Label>,
    pub connected: bool,
    pub euler_characteristic: i64,
    pub euler_in_range: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.edge_face_failures.is_empty() && self.link_failures.is_empty() && self.connected && self.euler_in_range
    }

    /// One-line description of the first failed invariant, if any.
    pub fn first_failure(&self) -> Option<String> {
        if let Some((e, c)) = self.edge_face_failures.first() {
            return Some(format!("edge {e} lies in {c} faces"));
        }
        if let Some(v) = self.link_failures.first() {
            return Some(format!("vertex {v} has no single umbrella cycle"));
        }
        if !self.connected {
            return Some("the faces do not form a connected surface".into());
        }
        if !self.euler_in_range {
            return Some(format!("Euler characteristic {} exceeds 2", self.euler_characteristic));
        }
        None
    }
}

/// Check the closed-surface invariants: every edge in two faces, a single
/// umbrella cycle at every vertex, face connectivity, Euler characteristic
/// at most 2. The map is trustworthy for the rest of the crate only when
/// every check passes.
pub fn validate_surface(map: &SurfaceMap) -> ValidationReport {
    let link_failures: Vec<Label> =
        map.vertices().iter().filter(|v| map.umbrella(v).is_err()).cloned().collect();

    // Flood over faces through shared edges.
    let mut seen = vec![false; map.face_count()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(f) = stack.pop() {
        for e in map.face(f).edges() {
            let [a, b] = map.faces_of_edge(&e).expect("face edge is a map edge");
            for nxt in [a, b] {
                if !seen[nxt] {
                    seen[nxt] = true;
                    stack.push(nxt);
                }
            }
        }
    }
    let connected = seen.iter().all(|&s| s);

    let euler = map.euler_characteristic();
    ValidationReport {
        edge_face_failures: Vec::new(),
        link_failures,
        connected,
        euler_characteristic: euler,
        euler_in_range: euler <= 2,
    }
}

pub fn euler_characteristic(map: &SurfaceMap) -> i64 {
    map.euler_characteristic()
}

/// A face pair whose intersection is not empty, a single vertex, or a
/// single shared edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacePairViolation {
    pub faces: (Face, Face),
    pub shared_vertices: Vec<Label>,
    pub shared_edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedralityReport {
    pub is_polyhedral: bool,
    pub violations: Vec<FacePairViolation>,
}

/// A map is polyhedral when any two faces meet in nothing, one vertex, or
/// one edge. Downstream classification theory assumes this; callers are
/// expected to surface the report when it fails.
pub fn check_polyhedral(map: &SurfaceMap) -> PolyhedralityReport {
    let mut violations = Vec::new();
    let faces = map.faces();
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            let vi: BTreeSet<&Label> = faces[i].vertices().iter().collect();
            let shared_vertices: Vec<Label> =
                faces[j].vertices().iter().filter(|v| vi.contains(v)).cloned().collect();
            let ej: BTreeSet<Edge> = faces[j].edges().into_iter().collect();
            let shared_edges: Vec<Edge> =
                faces[i].edges().into_iter().filter(|e| ej.contains(e)).collect();
            let ok = match shared_vertices.len() {
                0 => true,
                1 => shared_edges.is_empty(),
                2 => {
                    shared_edges.len() == 1 && {
                        let (a, b) = shared_edges[0].ends();
                        shared_vertices.contains(a) && shared_vertices.contains(b)
                    }
                }
                _ => false,
            };
            if !ok {
                violations.push(FacePairViolation {
                    faces: (faces[i].clone(), faces[j].clone()),
                    shared_vertices,
                    shared_edges,
                });
            }
        }
    }
    PolyhedralityReport { is_polyhedral: violations.is_empty(), violations }
}

/// `{p, q}`: every face a p-gon, every vertex of degree q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivelarType {
    pub p: usize,
    pub q: usize,
}

impl fmt::Display for EquivelarType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.p, self.q)
    }
}

/// The `{p,q}` type if the map is equivelar, `None` otherwise.
pub fn equivelar_type(map: &SurfaceMap) -> Option<EquivelarType> {
    let p = map.faces().first()?.len();
    if !map.faces().iter().all(|f| f.len() == p) {
        return None;
    }
    let q = map.degree(map.vertices().first()?).ok()?;
    if !map.vertices().iter().all(|v| map.degree(v) == Ok(q)) {
        return None;
    }
    Some(EquivelarType { p, q })
}

/// The link of `v`: its neighbors in the cyclic order induced by the faces
/// around `v`. Fails if `v` is missing or its umbrella does not close.
pub fn vertex_link(map: &SurfaceMap, v: &Label) -> Result<Vec<Label>, Error> {
    Ok(map.umbrella(v)?.neighbors.clone())
}

/// Whether face orientations can be chosen so that the two faces on each
/// edge traverse it in opposite directions.
pub fn is_orientable(map: &SurfaceMap) -> bool {
    // Direction of edge (a,b) in a face: true when the face walks a then b
    // in its stored boundary order.
    let walks_forward = |face: &Face, e: &Edge| -> bool {
        let (a, b) = e.ends();
        let i = face.position(a).expect("endpoint on face");
        let n = face.len();
        face.vertices()[(i + 1) % n] == *b
    };
    let mut flip: Vec<Option<bool>> = vec![None; map.face_count()];
    for start in 0..map.face_count() {
        if flip[start].is_some() {
            continue;
        }
        flip[start] = Some(false);
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            let ff = flip[f].unwrap();
            for e in map.face(f).edges() {
                let [a, b] = map.faces_of_edge(&e).expect("face edge is a map edge");
                let g = if a == f { b } else { a };
                if g == f {
                    continue;
                }
                // Opposite traversal required once flips are applied.
                let same_dir = walks_forward(map.face(f), &e) == walks_forward(map.face(g), &e);
                let need = if same_dir { !ff } else { ff };
                match flip[g] {
                    None => {
                        flip[g] = Some(need);
                        stack.push(g);
                    }
                    Some(have) => {
                        if have != need {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::fixtures;

    fn tet() -> SurfaceMap {
        parse_map(fixtures::TET).unwrap()
    }

    fn m1() -> SurfaceMap {
        parse_map(fixtures::M1).unwrap()
    }

    fn k1() -> SurfaceMap {
        parse_map(fixtures::K1).unwrap()
    }

    #[test]
    fn tetrahedron_shape() {
        let t = tet();
        assert_eq!(t.f_vector(), FVector { vertices: 4, edges: 6, faces: 4 });
        assert_eq!(t.euler_characteristic(), 2);
        assert!(validate_surface(&t).is_valid());
        assert!(check_polyhedral(&t).is_polyhedral);
        assert_eq!(equivelar_type(&t), Some(EquivelarType { p: 3, q: 3 }));
        assert!(is_orientable(&t));
    }

    #[test]
    fn seven_vertex_torus_shape() {
        let m = m1();
        assert_eq!(m.f_vector(), FVector { vertices: 7, edges: 21, faces: 14 });
        assert_eq!(m.euler_characteristic(), 0);
        assert!(validate_surface(&m).is_valid());
        assert!(check_polyhedral(&m).is_polyhedral);
        assert_eq!(equivelar_type(&m), Some(EquivelarType { p: 3, q: 6 }));
        assert!(is_orientable(&m));
    }

    #[test]
    fn hexagonal_torus_shape() {
        let k = k1();
        assert_eq!(k.f_vector(), FVector { vertices: 14, edges: 21, faces: 7 });
        assert_eq!(k.euler_characteristic(), 0);
        assert!(validate_surface(&k).is_valid());
        assert!(check_polyhedral(&k).is_polyhedral);
        assert_eq!(equivelar_type(&k), Some(EquivelarType { p: 6, q: 3 }));
    }

    #[test]
    fn single_triangle_is_rejected() {
        let err = parse_map("a b c\n").unwrap_err();
        assert!(matches!(err, Error::EdgeFaceCount { count: 1, .. }), "{err}");
    }

    #[test]
    fn short_face_is_rejected_with_position() {
        let err = parse_map("# ok\na b\n").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax { line: 2, col: 1, message: "face has 2 vertices; a face needs at least 3".into() }
        );
    }

    #[test]
    fn repeated_vertex_is_rejected_with_position() {
        let err = parse_map("a b a\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, col: 5, .. }), "{err:?}");
    }

    #[test]
    fn duplicate_face_is_rejected() {
        // Same oriented boundary, listed with a rotation.
        let err = parse_map("a b c d\nx a y b\nc d a b\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn mirror_face_is_not_a_duplicate() {
        // Two triangles glued along their whole boundary: a legal (though
        // non-polyhedral) map on the sphere.
        let pillow = parse_map("a b c\na c b\n").unwrap();
        assert_eq!(pillow.f_vector(), FVector { vertices: 3, edges: 3, faces: 2 });
        assert!(validate_surface(&pillow).is_valid());
        let report = check_polyhedral(&pillow);
        assert!(!report.is_polyhedral);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].shared_vertices.len(), 3);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let t = parse_map("# header\n\n1 2 3 # trailing\n1 2 4\n1 3 4\n2 3 4\n").unwrap();
        assert_eq!(t, tet());
    }

    #[test]
    fn hash_inside_token_is_part_of_the_label() {
        let t = parse_map("F#0 F#1 F#2\nF#0 F#1 F#3\nF#0 F#2 F#3\nF#1 F#2 F#3\n").unwrap();
        assert_eq!(t.vertex_count(), 4);
        assert_eq!(equivelar_type(&t), Some(EquivelarType { p: 3, q: 3 }));
    }

    #[test]
    fn disconnected_input_fails_validation_only() {
        let text = "1 2 3\n1 2 4\n1 3 4\n2 3 4\nw x y\nw x z\nw y z\nx y z\n";
        let m = parse_map(text).unwrap();
        let report = validate_surface(&m);
        assert!(!report.connected);
        assert!(!report.euler_in_range, "two spheres have characteristic 4");
        assert!(!report.is_valid());
    }

    #[test]
    fn pinched_vertex_fails_the_link_check() {
        // Two tetrahedra sharing the single vertex p.
        let text = "p 1 2\np 1 3\np 2 3\n1 2 3\np 4 5\np 4 6\np 5 6\n4 5 6\n";
        let m = parse_map(text).unwrap();
        let report = validate_surface(&m);
        assert_eq!(report.link_failures, vec![label("p")]);
        assert!(!report.is_valid());
    }

    #[test]
    fn tetrahedron_vertex_link_is_a_triangle() {
        let t = tet();
        let link = vertex_link(&t, &label("1")).unwrap();
        assert_eq!(canonical_cycle(&link), vec![label("2"), label("3"), label("4")]);
    }

    #[test]
    fn torus_vertex_link_is_a_hexagon_through_all_others() {
        let m = m1();
        let link = vertex_link(&m, &label("u11")).unwrap();
        assert_eq!(link.len(), 6);
        let set: BTreeSet<_> = link.iter().collect();
        assert_eq!(set.len(), 6);
        assert!(!set.contains(&label("u11")));
    }

    #[test]
    fn unknown_vertex_link_errors() {
        assert_eq!(vertex_link(&tet(), &label("9")), Err(Error::UnknownVertex(label("9"))));
    }

    #[test]
    fn face_canonical_form_is_rotation_and_reflection_minimal() {
        let f1 = Face::new(vec![label("c"), label("a"), label("b")]).unwrap();
        let f2 = Face::new(vec![label("b"), label("a"), label("c")]).unwrap();
        assert_eq!(f1, f2);
        assert_eq!(f1.vertices(), &[label("a"), label("b"), label("c")]);
    }

    #[test]
    fn face_arcs_walk_both_ways() {
        let f = Face::new(vec![label("a"), label("b"), label("c"), label("d")]).unwrap();
        let (one, two) = f.arcs_between(&label("a"), &label("c")).unwrap();
        assert_eq!(one, vec![label("a"), label("b"), label("c")]);
        assert_eq!(two, vec![label("a"), label("d"), label("c")]);
    }

    #[test]
    fn write_then_parse_round_trips() {
        for text in [fixtures::TET, fixtures::M1, fixtures::K1, fixtures::K2] {
            let m = parse_map(text).unwrap();
            assert_eq!(parse_map(&write_map(&m)).unwrap(), m);
        }
    }

    #[test]
    fn edge_orders_endpoints() {
        let e = Edge::new(label("u12"), label("u11")).unwrap();
        assert_eq!(e.ends(), (&label("u11"), &label("u12")));
        assert_eq!(Edge::new(label("x"), label("x")), Err(Error::LoopEdge(label("x"))));
    }
}

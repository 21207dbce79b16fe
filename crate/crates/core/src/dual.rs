//! The dual map and the two translations it induces: cycles of a map into
//! edge subgraphs of its dual, and admissible edge subgraphs of the dual
//! back into cycles.
//!
//! Duality swaps the roles of vertices and faces. Each face of the primal
//! becomes a dual vertex, each primal vertex becomes a dual face whose
//! boundary is the cyclic order of faces around that vertex, and each edge
//! crosses to the edge joining its two faces' dual vertices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::iso::relabel;
use crate::map::{canonical_cycle, validate_surface, Edge, Face, Label, SurfaceMap};
use crate::proper::check_admissible;
use crate::Error;

/// A set of edges inside a host map, standing for the subgraph they span.
/// The vertex set is always derived from the edges, never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct EdgeSubgraph {
    edges: BTreeSet<Edge>,
}

impl EdgeSubgraph {
    /// Build a subgraph of `host`, checking every edge is a host edge.
    pub fn new(host: &SurfaceMap, edges: impl IntoIterator<Item = Edge>) -> Result<Self, Error> {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        for e in &edges {
            if !host.contains_edge(e) {
                return Err(Error::UnknownEdge(e.clone()));
            }
        }
        Ok(EdgeSubgraph { edges })
    }

    /// Wrap edges already known to lie in the intended host.
    pub(crate) fn from_trusted(edges: BTreeSet<Edge>) -> Self {
        EdgeSubgraph { edges }
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    /// Union of the edge endpoints.
    pub fn vertices(&self) -> BTreeSet<Label> {
        let mut out = BTreeSet::new();
        for e in &self.edges {
            let (a, b) = e.ends();
            out.insert(a.clone());
            out.insert(b.clone());
        }
        out
    }

    pub fn degree(&self, v: &Label) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }
}

impl fmt::Display for EdgeSubgraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|e| e.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// A simple closed cycle in a map, stored canonically (lexicographically
/// smallest among all rotations and the two directions).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CycleSpec {
    vertices: Vec<Label>,
}

impl CycleSpec {
    /// Validate `order` as a cycle in `host`: at least 3 distinct vertices,
    /// each consecutive pair (and last back to first) an edge of the host.
    pub fn new(host: &SurfaceMap, order: Vec<Label>) -> Result<Self, Error> {
        if order.len() < 3 {
            return Err(Error::CycleTooShort(order.len()));
        }
        let mut seen = BTreeSet::new();
        for v in &order {
            if !host.contains_vertex(v) {
                return Err(Error::UnknownVertex(v.clone()));
            }
            if !seen.insert(v.clone()) {
                return Err(Error::CycleRepeats(v.clone()));
            }
        }
        for i in 0..order.len() {
            let a = &order[i];
            let b = &order[(i + 1) % order.len()];
            let e = Edge::new(a.clone(), b.clone())?;
            if !host.contains_edge(&e) {
                return Err(Error::NotAnEdge(a.clone(), b.clone()));
            }
        }
        Ok(CycleSpec { vertices: canonical_cycle(&order) })
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a cycle has at least three vertices
    }

    pub fn contains(&self, v: &Label) -> bool {
        self.vertices.contains(v)
    }

    /// The cycle's edges in traversal order.
    pub fn edges(&self) -> Vec<Edge> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                Edge::new(self.vertices[i].clone(), self.vertices[(i + 1) % n].clone())
                    .expect("cycle vertices distinct")
            })
            .collect()
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges().into_iter().collect()
    }

    pub fn is_hamiltonian(&self, host: &SurfaceMap) -> bool {
        self.vertices.len() == host.vertex_count()
    }
}

impl fmt::Display for CycleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.vertices.iter().map(|l| l.as_str()).collect();
        f.write_str(&parts.join(","))
    }
}

/// A map together with its dual and the bijections between their parts.
#[derive(Debug, Clone)]
pub struct Duality {
    primal: SurfaceMap,
    dual: SurfaceMap,
    face_to_vertex: Vec<Label>,
    vertex_to_face: BTreeMap<Label, usize>,
    edge_to_dual: BTreeMap<Edge, Edge>,
    dual_to_edge: BTreeMap<Edge, Edge>,
    vertex_to_dual_face: BTreeMap<Label, usize>,
    dual_face_to_vertex: Vec<Label>,
}

impl Duality {
    pub fn primal(&self) -> &SurfaceMap {
        &self.primal
    }

    pub fn dual(&self) -> &SurfaceMap {
        &self.dual
    }

    /// Label of the dual vertex standing for primal face `idx`.
    pub fn dual_vertex_of_face(&self, idx: usize) -> &Label {
        &self.face_to_vertex[idx]
    }

    pub fn face_of_dual_vertex(&self, v: &Label) -> Result<usize, Error> {
        self.vertex_to_face.get(v).copied().ok_or_else(|| Error::UnknownVertex(v.clone()))
    }

    pub fn dual_edge(&self, e: &Edge) -> Result<Edge, Error> {
        self.edge_to_dual.get(e).cloned().ok_or_else(|| Error::UnknownEdge(e.clone()))
    }

    pub fn primal_edge(&self, e: &Edge) -> Result<Edge, Error> {
        self.dual_to_edge.get(e).cloned().ok_or_else(|| Error::UnknownEdge(e.clone()))
    }

    /// Index of the dual face standing for primal vertex `v`.
    pub fn dual_face_of_vertex(&self, v: &Label) -> Result<usize, Error> {
        self.vertex_to_dual_face.get(v).copied().ok_or_else(|| Error::UnknownVertex(v.clone()))
    }

    pub fn vertex_of_dual_face(&self, idx: usize) -> &Label {
        &self.dual_face_to_vertex[idx]
    }

    /// Primal face canonical form alongside its dual vertex label, sorted by
    /// face. This is the correspondence table the CLI writes out.
    pub fn correspondence_table(&self) -> Vec<(Face, Label)> {
        (0..self.primal.face_count())
            .map(|i| (self.primal.face(i).clone(), self.face_to_vertex[i].clone()))
            .collect()
    }

    /// Rebuild the duality with dual vertices renamed through `table`, which
    /// must cover every dual vertex injectively. Lets callers align the
    /// generated `F#<i>` names with an externally labeled copy of the dual.
    pub fn relabel_dual(&self, table: &BTreeMap<Label, Label>) -> Result<Duality, Error> {
        let mut seen = BTreeSet::new();
        for v in self.dual.vertices() {
            let img = table.get(v).ok_or_else(|| Error::UnknownVertex(v.clone()))?;
            if !seen.insert(img.clone()) {
                return Err(Error::BadParameters(format!(
                    "relabel table sends two dual vertices to {img}"
                )));
            }
        }
        let dual = relabel(&self.dual, table)?;
        let face_to_vertex: Vec<Label> =
            self.face_to_vertex.iter().map(|l| table[l].clone()).collect();
        let vertex_to_face =
            face_to_vertex.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let edge_to_dual: BTreeMap<Edge, Edge> = self
            .edge_to_dual
            .iter()
            .map(|(e, d)| {
                let (a, b) = d.ends();
                (e.clone(), Edge::new(table[a].clone(), table[b].clone()).expect("distinct"))
            })
            .collect();
        let dual_to_edge = edge_to_dual.iter().map(|(e, d)| (d.clone(), e.clone())).collect();
        // Dual faces were re-sorted by the relabeling; re-derive the
        // vertex-to-face indices from the relabeled boundaries.
        let relabeled_boundaries: Vec<(Vec<Label>, Label)> = self
            .dual_face_to_vertex
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let boundary =
                    self.dual.face(i).vertices().iter().map(|l| table[l].clone()).collect();
                (boundary, v.clone())
            })
            .collect();
        let (vertex_to_dual_face, dual_face_to_vertex) =
            align_faces(&dual, relabeled_boundaries)?;
        Ok(Duality {
            primal: self.primal.clone(),
            dual,
            face_to_vertex,
            vertex_to_face,
            edge_to_dual,
            dual_to_edge,
            vertex_to_dual_face,
            dual_face_to_vertex,
        })
    }
}

/// Given one raw boundary per primal vertex, recover which face index of
/// `built` each boundary became. Handles equal canonical faces by pairing
/// them off in order, which matches the stable sort used at construction.
fn align_faces(
    built: &SurfaceMap,
    boundaries: Vec<(Vec<Label>, Label)>,
) -> Result<(BTreeMap<Label, usize>, Vec<Label>), Error> {
    let mut tagged: Vec<(Face, Label)> = boundaries
        .into_iter()
        .map(|(b, v)| Ok((Face::new(b)?, v)))
        .collect::<Result<_, Error>>()?;
    tagged.sort_by(|a, b| a.0.cmp(&b.0));
    let mut vertex_to_face = BTreeMap::new();
    let mut face_to_vertex = Vec::with_capacity(tagged.len());
    for (idx, (face, v)) in tagged.into_iter().enumerate() {
        if built.face(idx) != &face {
            return Err(Error::InvalidSurface(format!(
                "dual face {face} does not line up with the built dual"
            )));
        }
        vertex_to_face.insert(v.clone(), idx);
        face_to_vertex.push(v);
    }
    Ok((vertex_to_face, face_to_vertex))
}

/// Construct the dual map. The input must be a valid closed surface, and no
/// two faces may share more than one edge (the dual would need a double
/// edge, which the simple-graph representation cannot hold).
///
/// Dual vertices are named `F#<i>` after the index of their face in the
/// primal's sorted canonical face list; [`Duality::relabel_dual`] substitutes
/// user-chosen names.
pub fn build_dual(map: &SurfaceMap) -> Result<Duality, Error> {
    let report = validate_surface(map);
    if !report.is_valid() {
        return Err(Error::InvalidSurface(report.first_failure().unwrap_or_default()));
    }
    let mut pair_edges: BTreeMap<[usize; 2], Edge> = BTreeMap::new();
    for e in map.edges() {
        let mut pair = map.faces_of_edge(e)?;
        pair.sort_unstable();
        if let Some(prev) = pair_edges.insert(pair, e.clone()) {
            let _ = prev;
            return Err(Error::DualMultiEdge(
                map.face(pair[0]).to_string(),
                map.face(pair[1]).to_string(),
            ));
        }
    }

    let face_to_vertex: Vec<Label> = (0..map.face_count())
        .map(|i| Label::new(format!("F#{i}")).expect("generated label"))
        .collect();
    let vertex_to_face: BTreeMap<Label, usize> =
        face_to_vertex.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();

    let mut raw = Vec::with_capacity(map.vertex_count());
    for v in map.vertices() {
        let umbrella = map.umbrella(v)?;
        let boundary: Vec<Label> =
            umbrella.faces.iter().map(|&f| face_to_vertex[f].clone()).collect();
        raw.push((boundary, v.clone()));
    }
    let dual = SurfaceMap::from_faces(raw.iter().map(|(b, _)| b.clone()).collect())?;
    let (vertex_to_dual_face, dual_face_to_vertex) = align_faces(&dual, raw)?;

    let mut edge_to_dual = BTreeMap::new();
    let mut dual_to_edge = BTreeMap::new();
    for e in map.edges() {
        let [f, g] = map.faces_of_edge(e)?;
        let d = Edge::new(face_to_vertex[f].clone(), face_to_vertex[g].clone())
            .expect("an edge's two faces are distinct");
        edge_to_dual.insert(e.clone(), d.clone());
        dual_to_edge.insert(d, e.clone());
    }

    Ok(Duality {
        primal: map.clone(),
        dual,
        face_to_vertex,
        vertex_to_face,
        edge_to_dual,
        dual_to_edge,
        vertex_to_dual_face,
        dual_face_to_vertex,
    })
}

/// The dual edges of a cycle's edges, as a subgraph of the dual map.
pub fn dual_graph_of_cycle(d: &Duality, cycle: &CycleSpec) -> Result<EdgeSubgraph, Error> {
    let mut edges = BTreeSet::new();
    for e in cycle.edges() {
        edges.insert(d.dual_edge(&e)?);
    }
    Ok(EdgeSubgraph::from_trusted(edges))
}

/// The cycle in the primal map encoded by an admissible subgraph of the
/// dual: the single closed face chain of the subgraph, read back as primal
/// vertices. Inverse of [`dual_graph_of_cycle`] on Hamiltonian cycles.
pub fn dual_cycle_of_graph(d: &Duality, g: &EdgeSubgraph) -> Result<CycleSpec, Error> {
    let report = check_admissible(d.dual(), g, d.primal().vertex_count());
    let chain = match (report.is_admissible(), &report.face_chain) {
        (true, Some(chain)) => chain.clone(),
        _ => return Err(Error::NotAdmissible(report.describe_failure())),
    };
    let order: Vec<Label> =
        chain.into_iter().map(|idx| d.vertex_of_dual_face(idx).clone()).collect();
    CycleSpec::new(d.primal(), order)
}

//! Admissible subgraphs of a dual map, their complement structure, and the
//! resulting three-way classification.
//!
//! An admissible subgraph picks as many dual edges as the primal has
//! vertices, two per dual face, and strings all faces into one closed
//! chain. Its type is read off the complement inside the dual edge graph:
//! a connected complement, a pair of components at least one of which is a
//! proper tree, or a pair with no proper tree. The companion cycle in the
//! primal is non-separating, contractible, or separating without bounding,
//! in that order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::dual::EdgeSubgraph;
use crate::map::{Edge, Label, SurfaceMap};
use crate::topology::CycleClass;
use crate::Error;

/// Edge-count, per-face, and face-chain checks for a dual subgraph.
/// Face indices refer to the host's sorted face list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub edge_count: usize,
    pub expected_edge_count: usize,
    pub edge_count_ok: bool,
    /// Chosen-edge count per face, indexed like the host's faces.
    pub face_edge_counts: Vec<usize>,
    pub two_per_face: bool,
    /// The single closed face chain, canonically oriented, if one exists.
    pub face_chain: Option<Vec<usize>>,
    pub chain_ok: bool,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.edge_count_ok && self.two_per_face && self.chain_ok
    }

    /// Human-readable account of the first failing condition.
    pub fn describe_failure(&self) -> String {
        if !self.edge_count_ok {
            return format!(
                "expected {} edges, found {}",
                self.expected_edge_count, self.edge_count
            );
        }
        if !self.two_per_face {
            let bad: Vec<String> = self
                .face_edge_counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 2)
                .map(|(i, &c)| format!("face {i} has {c}"))
                .collect();
            return format!("faces need exactly two chosen edges: {}", bad.join(", "));
        }
        if !self.chain_ok {
            return "chosen edges do not link the faces into a single closed chain".into();
        }
        "no failure".into()
    }
}

/// Check a dual subgraph against the three admissibility conditions.
/// `n` is the primal vertex count, so also the required edge count.
pub fn check_admissible(host: &SurfaceMap, g: &EdgeSubgraph, n: usize) -> AdmissibilityReport {
    let edge_count = g.edge_count();
    let edge_count_ok = edge_count == n;

    let face_edge_counts: Vec<usize> = (0..host.face_count())
        .map(|i| host.face(i).edges().iter().filter(|e| g.contains(e)).count())
        .collect();
    let two_per_face = face_edge_counts.iter().all(|&c| c == 2);

    let face_chain = if two_per_face { walk_face_chain(host, g) } else { None };
    let chain_ok = face_chain.is_some();

    AdmissibilityReport {
        edge_count,
        expected_edge_count: n,
        edge_count_ok,
        face_edge_counts,
        two_per_face,
        face_chain,
        chain_ok,
    }
}

/// Walk the faces along chosen edges, two per face. Returns the closed
/// chain through all faces, or None if the walk closes up early. The chain
/// starts at face 0 (the smallest canonical face) and runs toward the
/// smaller of its two neighbors.
fn walk_face_chain(host: &SurfaceMap, g: &EdgeSubgraph) -> Option<Vec<usize>> {
    let chosen: Vec<Vec<Edge>> = (0..host.face_count())
        .map(|i| {
            host.face(i)
                .edges()
                .into_iter()
                .filter(|e| g.contains(e))
                .collect()
        })
        .collect();
    let across = |f: usize, e: &Edge| -> usize {
        let [a, b] = host.faces_of_edge(e).expect("chosen edges are host edges");
        if a == f {
            b
        } else {
            a
        }
    };

    let first: Vec<usize> = chosen[0].iter().map(|e| across(0, e)).collect();
    let mut via = if first[0] <= first[1] { chosen[0][0].clone() } else { chosen[0][1].clone() };
    let mut chain = vec![0usize];
    let mut cur = 0usize;
    for _ in 0..host.face_count() {
        let next = across(cur, &via);
        if next == 0 {
            break;
        }
        chain.push(next);
        via = chosen[next]
            .iter()
            .find(|e| **e != via)
            .expect("each face has two distinct chosen edges")
            .clone();
        cur = next;
    }
    if chain.len() != host.face_count() {
        return None;
    }
    if chain.len() >= 3 && chain[1] > chain[chain.len() - 1] {
        chain[1..].reverse();
    }
    Some(chain)
}

/// One connected component of a graph, with its vertices stored explicitly
/// so that isolated vertices survive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub vertices: BTreeSet<Label>,
    pub edges: BTreeSet<Edge>,
}

impl Component {
    /// View a nonempty edge subgraph as a component (vertices derived).
    pub fn from_subgraph(g: &EdgeSubgraph) -> Component {
        Component { vertices: g.vertices(), edges: g.edges().clone() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Connected with one more vertex than edges. A single vertex counts.
    pub fn is_tree(&self) -> bool {
        if self.vertices.is_empty() || self.edges.len() + 1 != self.vertices.len() {
            return false;
        }
        let mut adjacency: BTreeMap<&Label, Vec<&Label>> = BTreeMap::new();
        for e in &self.edges {
            let (a, b) = e.ends();
            if !self.vertices.contains(a) || !self.vertices.contains(b) {
                return false;
            }
            adjacency.entry(a).or_default().push(b);
            adjacency.entry(b).or_default().push(a);
        }
        let start = self.vertices.iter().next().unwrap();
        let mut seen = BTreeSet::from([start]);
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            for u in adjacency.get(v).into_iter().flatten() {
                if seen.insert(u) {
                    queue.push(u);
                }
            }
        }
        seen.len() == self.vertices.len()
    }
}

/// Components of the complement of `g` inside the host's edge graph: all
/// host vertices, all host edges not in `g`. Ordered by smallest vertex.
pub fn complement_components(host: &SurfaceMap, g: &EdgeSubgraph) -> Vec<Component> {
    let mut assigned: BTreeSet<Label> = BTreeSet::new();
    let mut out = Vec::new();
    for start in host.vertices() {
        if assigned.contains(start) {
            continue;
        }
        let mut vertices = BTreeSet::from([start.clone()]);
        let mut queue = vec![start.clone()];
        while let Some(v) = queue.pop() {
            for u in host.neighbors(&v).expect("host vertex") {
                let e = Edge::new(v.clone(), u.clone()).expect("simple graph");
                if g.contains(&e) || vertices.contains(u) {
                    continue;
                }
                vertices.insert(u.clone());
                queue.push(u.clone());
            }
        }
        let mut edges = BTreeSet::new();
        for v in &vertices {
            for u in host.neighbors(v).expect("host vertex") {
                if u <= v || !vertices.contains(u) {
                    continue;
                }
                let e = Edge::new(v.clone(), u.clone()).expect("simple graph");
                if !g.contains(&e) {
                    edges.insert(e);
                }
            }
        }
        assigned.extend(vertices.iter().cloned());
        out.push(Component { vertices, edges });
    }
    out
}

/// The three tree conditions, reported separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProperTreeReport {
    /// The component is a tree at all.
    pub is_tree: bool,
    /// Sum of host degrees over the tree's vertices.
    pub degree_sum: usize,
    /// Required value n + 2(k - 1) for a k-vertex tree.
    pub degree_sum_target: usize,
    /// Whenever two tree vertices lie on one face, some boundary arc
    /// between them runs entirely along tree edges.
    pub face_path_subtree_ok: bool,
    /// No face boundary carries a tree path longer than its length minus 2.
    pub face_path_length_ok: bool,
    pub verdict: bool,
}

/// Test whether a component of the complement is a proper tree in `host`.
/// `n` is the primal vertex count.
pub fn check_proper_tree(host: &SurfaceMap, t: &Component, n: usize) -> ProperTreeReport {
    let is_tree = t.is_tree();
    let k = t.vertex_count();
    let degree_sum: usize =
        t.vertices.iter().map(|v| host.degree(v).expect("host vertex")).sum();
    let degree_sum_target = n + 2 * k.saturating_sub(1);

    if is_tree {
        // Counting edge ends: every tree vertex spends 2(k-1) degree on
        // tree edges, so the degree condition says exactly n non-tree edge
        // ends touch the tree.
        let outward: usize = host
            .edges()
            .iter()
            .filter(|e| !t.edges.contains(e))
            .map(|e| {
                let (a, b) = e.ends();
                t.vertices.contains(a) as usize + t.vertices.contains(b) as usize
            })
            .sum();
        debug_assert_eq!(degree_sum == degree_sum_target, outward == n);
    }

    let mut face_path_subtree_ok = true;
    let mut face_path_length_ok = true;
    for face in host.faces() {
        let on_face: Vec<&Label> =
            face.vertices().iter().filter(|v| t.vertices.contains(v)).collect();
        'pairs: for i in 0..on_face.len() {
            for j in i + 1..on_face.len() {
                let (fwd, back) = face
                    .arcs_between(on_face[i], on_face[j])
                    .expect("both vertices lie on the face");
                if !arc_in_tree(&fwd, t) && !arc_in_tree(&back, t) {
                    face_path_subtree_ok = false;
                    break 'pairs;
                }
            }
        }

        let q = face.len();
        let flags: Vec<bool> = face.edges().iter().map(|e| t.edges.contains(e)).collect();
        let run = longest_cyclic_run(&flags);
        if run > q.saturating_sub(2) {
            face_path_length_ok = false;
        }
    }

    let verdict =
        is_tree && degree_sum == degree_sum_target && face_path_subtree_ok && face_path_length_ok;
    ProperTreeReport {
        is_tree,
        degree_sum,
        degree_sum_target,
        face_path_subtree_ok,
        face_path_length_ok,
        verdict,
    }
}

fn arc_in_tree(arc: &[Label], t: &Component) -> bool {
    arc.windows(2).all(|w| {
        let e = Edge::new(w[0].clone(), w[1].clone()).expect("arc steps are edges");
        t.edges.contains(&e)
    })
}

fn longest_cyclic_run(flags: &[bool]) -> usize {
    if flags.iter().all(|&b| b) {
        return flags.len();
    }
    let mut best = 0;
    let mut run = 0;
    for &b in flags.iter().chain(flags.iter()) {
        if b {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best
}

/// Classification of a dual subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProperType {
    /// Admissible with connected complement.
    #[serde(rename = "type-i")]
    TypeI,
    /// Admissible, complement splits in two, at least one side a proper tree.
    #[serde(rename = "type-ii")]
    TypeII,
    /// Admissible, complement splits in two, neither side a proper tree.
    #[serde(rename = "type-iii")]
    TypeIII,
    #[serde(rename = "not-admissible")]
    NotAdmissible,
    /// Admissible yet the complement has three or more components, which
    /// no cycle on a surface can produce.
    #[serde(rename = "anomalous")]
    Anomalous,
}

impl ProperType {
    /// What the companion cycle's topological class must be.
    pub fn expected_cycle_class(&self) -> Option<CycleClass> {
        match self {
            ProperType::TypeI => Some(CycleClass::NonSeparating),
            ProperType::TypeII => Some(CycleClass::Contractible),
            ProperType::TypeIII => Some(CycleClass::NoncontractibleSeparating),
            ProperType::NotAdmissible | ProperType::Anomalous => None,
        }
    }
}

impl fmt::Display for ProperType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProperType::TypeI => "type I",
            ProperType::TypeII => "type II",
            ProperType::TypeIII => "type III",
            ProperType::NotAdmissible => "not admissible",
            ProperType::Anomalous => "anomalous",
        })
    }
}

/// Full evidence for a subgraph's classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProperTypeVerdict {
    pub admissibility: AdmissibilityReport,
    pub complement_component_count: usize,
    pub components: Vec<Component>,
    pub tree_flags: Vec<ProperTreeReport>,
    pub verdict: ProperType,
}

/// Classify a dual subgraph by admissibility and complement structure.
pub fn classify_proper_type(host: &SurfaceMap, g: &EdgeSubgraph, n: usize) -> ProperTypeVerdict {
    let admissibility = check_admissible(host, g, n);
    let components = complement_components(host, g);
    let tree_flags: Vec<ProperTreeReport> =
        components.iter().map(|c| check_proper_tree(host, c, n)).collect();
    let verdict = if !admissibility.is_admissible() {
        ProperType::NotAdmissible
    } else {
        match components.len() {
            1 => ProperType::TypeI,
            2 => {
                if tree_flags.iter().any(|f| f.verdict) {
                    ProperType::TypeII
                } else {
                    ProperType::TypeIII
                }
            }
            _ => ProperType::Anomalous,
        }
    };
    ProperTypeVerdict {
        admissibility,
        complement_component_count: components.len(),
        components,
        tree_flags,
        verdict,
    }
}

/// The edges of the host that touch a proper tree without belonging to it.
/// For a proper tree this has exactly `n` edges and is admissible with the
/// tree as one complement component, so it classifies as type II.
pub fn tree_to_type2_graph(
    host: &SurfaceMap,
    t: &Component,
    n: usize,
) -> Result<EdgeSubgraph, Error> {
    let report = check_proper_tree(host, t, n);
    if !report.verdict {
        return Err(Error::NotAProperTree(format!(
            "is_tree={} degree_sum={}/{} arcs_ok={} path_lengths_ok={}",
            report.is_tree,
            report.degree_sum,
            report.degree_sum_target,
            report.face_path_subtree_ok,
            report.face_path_length_ok
        )));
    }
    let edges: BTreeSet<Edge> = host
        .edges()
        .iter()
        .filter(|e| {
            let (a, b) = e.ends();
            (t.vertices.contains(a) || t.vertices.contains(b)) && !t.edges.contains(e)
        })
        .cloned()
        .collect();
    debug_assert_eq!(edges.len(), n);
    Ok(EdgeSubgraph::from_trusted(edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::fixtures;
    use crate::dual::{build_dual, dual_graph_of_cycle, CycleSpec};
    use crate::map::{label, parse_map};

    fn subgraph(host: &SurfaceMap, pairs: &[(&str, &str)]) -> EdgeSubgraph {
        EdgeSubgraph::new(
            host,
            pairs.iter().map(|(a, b)| Edge::new(label(a), label(b)).unwrap()),
        )
        .unwrap()
    }

    fn component(vertices: &[&str], pairs: &[(&str, &str)]) -> Component {
        Component {
            vertices: vertices.iter().map(|s| label(s)).collect(),
            edges: pairs
                .iter()
                .map(|(a, b)| Edge::new(label(a), label(b)).unwrap())
                .collect(),
        }
    }

    const E1: [(&str, &str); 7] = [
        ("v1", "v6"),
        ("v3", "v8"),
        ("v5", "v10"),
        ("v7", "v12"),
        ("v9", "v14"),
        ("v2", "v11"),
        ("v4", "v13"),
    ];
    const E2: [(&str, &str); 7] = [
        ("v1", "v2"),
        ("v3", "v8"),
        ("v4", "v5"),
        ("v10", "v11"),
        ("v11", "v12"),
        ("v12", "v13"),
        ("v13", "v14"),
    ];

    #[test]
    fn seven_spoke_subgraph_is_admissible_with_connected_complement() {
        let k1 = parse_map(fixtures::K1).unwrap();
        let g = subgraph(&k1, &E1);
        let verdict = classify_proper_type(&k1, &g, 7);
        assert!(verdict.admissibility.is_admissible());
        assert_eq!(
            verdict.admissibility.face_chain.as_ref().map(|c| c.len()),
            Some(7)
        );
        assert_eq!(verdict.complement_component_count, 1);
        assert_eq!(verdict.verdict, ProperType::TypeI);
    }

    #[test]
    fn seven_path_subgraph_leaves_a_proper_tree() {
        let k1 = parse_map(fixtures::K1).unwrap();
        let g = subgraph(&k1, &E2);
        let verdict = classify_proper_type(&k1, &g, 7);
        assert_eq!(verdict.verdict, ProperType::TypeII);
        assert_eq!(verdict.complement_component_count, 2);
        let trees: Vec<&ProperTreeReport> =
            verdict.tree_flags.iter().filter(|f| f.verdict).collect();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].degree_sum, 15);
        assert_eq!(trees[0].degree_sum_target, 15);
        let tree_component = verdict
            .components
            .iter()
            .zip(&verdict.tree_flags)
            .find(|(_, f)| f.verdict)
            .unwrap()
            .0;
        assert_eq!(tree_component.vertex_count(), 5);
    }

    #[test]
    fn wrong_edge_count_is_not_admissible() {
        let k1 = parse_map(fixtures::K1).unwrap();
        let g = subgraph(&k1, &E1[..5]);
        let report = check_admissible(&k1, &g, 7);
        assert!(!report.is_admissible());
        assert!(!report.edge_count_ok);
        assert!(report.describe_failure().contains("expected 7"));
    }

    #[test]
    fn tetrahedron_hamiltonian_dual_has_two_tree_components() {
        let t = parse_map(fixtures::TET).unwrap();
        let d = build_dual(&t).unwrap();
        let c = CycleSpec::new(
            &t,
            vec![label("1"), label("2"), label("3"), label("4")],
        )
        .unwrap();
        let g = dual_graph_of_cycle(&d, &c).unwrap();
        let verdict = classify_proper_type(d.dual(), &g, 4);
        assert_eq!(verdict.verdict, ProperType::TypeII);
        assert_eq!(verdict.complement_component_count, 2);
        assert!(verdict.tree_flags.iter().all(|f| f.verdict));
        assert!(verdict.components.iter().all(|c| c.vertex_count() == 2));
    }

    #[test]
    fn single_vertex_component_fails_the_degree_condition_on_the_tetrahedron() {
        let t = parse_map(fixtures::TET).unwrap();
        let lone = component(&["1"], &[]);
        let report = check_proper_tree(&t, &lone, 4);
        assert!(report.is_tree);
        assert_eq!(report.degree_sum, 3);
        assert_eq!(report.degree_sum_target, 4);
        assert!(!report.verdict);

        let pair = component(&["1", "2"], &[("1", "2")]);
        let report = check_proper_tree(&t, &pair, 4);
        assert!(report.verdict);
        assert_eq!(report.degree_sum, 6);
        assert_eq!(report.degree_sum_target, 6);
    }

    #[test]
    fn two_vertex_tree_expands_to_a_type_two_graph() {
        let t = parse_map(fixtures::TET).unwrap();
        let pair = component(&["1", "2"], &[("1", "2")]);
        let g = tree_to_type2_graph(&t, &pair, 4).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(!g.contains(&Edge::new(label("1"), label("2")).unwrap()));
        assert!(!g.contains(&Edge::new(label("3"), label("4")).unwrap()));
        let verdict = classify_proper_type(&t, &g, 4);
        assert_eq!(verdict.verdict, ProperType::TypeII);

        let lone = component(&["1"], &[]);
        assert!(matches!(
            tree_to_type2_graph(&t, &lone, 4),
            Err(Error::NotAProperTree(_))
        ));
    }

    #[test]
    fn face_conditions_fail_on_a_cube_path_hugging_a_face() {
        let cube = parse_map(
            "1 2 3 4\n5 6 7 8\n1 2 6 5\n2 3 7 6\n3 4 8 7\n4 1 5 8\n",
        )
        .unwrap();
        let path = component(&["1", "2", "5", "6"], &[("1", "5"), ("5", "6"), ("6", "2")]);
        let report = check_proper_tree(&cube, &path, 6);
        assert!(report.is_tree);
        assert!(!report.face_path_subtree_ok);
        assert!(!report.face_path_length_ok);
        assert!(!report.verdict);
    }

    #[test]
    fn complement_keeps_isolated_vertices() {
        let t = parse_map(fixtures::TET).unwrap();
        let g = subgraph(&t, &[("1", "2"), ("1", "3"), ("1", "4")]);
        let components = complement_components(&t, &g);
        assert_eq!(components.len(), 2);
        assert_eq!(components[0].vertices, [label("1")].into());
        assert!(components[0].edges.is_empty());
        assert_eq!(components[1].vertex_count(), 3);
        assert_eq!(components[1].edge_count(), 3);
        assert!(!components[1].is_tree());
    }

    #[test]
    fn chain_walk_rejects_split_chains() {
        // The shared edges of the three cube faces at a corner give those
        // faces two chosen edges each; doing it at two opposite corners
        // covers all six faces but chains them into two triangles.
        let cube = parse_map(
            "1 2 3 4\n5 6 7 8\n1 2 6 5\n2 3 7 6\n3 4 8 7\n4 1 5 8\n",
        )
        .unwrap();
        let g = subgraph(
            &cube,
            &[("1", "2"), ("2", "3"), ("2", "6"), ("7", "8"), ("5", "8"), ("4", "8")],
        );
        let report = check_admissible(&cube, &g, 6);
        assert!(report.edge_count_ok);
        assert!(report.two_per_face);
        assert!(!report.chain_ok);
        assert!(report.face_chain.is_none());
        assert!(report.describe_failure().contains("single closed chain"));
    }

    #[test]
    fn face_chain_is_canonically_oriented() {
        let k1 = parse_map(fixtures::K1).unwrap();
        let report = check_admissible(&k1, &subgraph(&k1, &E1), 7);
        let chain = report.face_chain.unwrap();
        assert_eq!(chain.len(), 7);
        assert_eq!(chain[0], 0);
        assert!(chain[1] < chain[6]);
    }
}

//! Finding Hamiltonian cycles: a ground-truth enumerator, a search over
//! dual edge subsets, a disk-growing search for non-contractible cycles,
//! and a proper-tree constructor for duals of triangulations. A torus
//! generator supplies parametric test maps.
//!
//! Everything here is single-threaded and deterministic: candidates are
//! always scanned in canonical order, so identical inputs give identical
//! outputs.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::dual::{
    build_dual, dual_cycle_of_graph, dual_graph_of_cycle, CycleSpec, Duality, EdgeSubgraph,
};
use crate::map::{
    check_polyhedral, equivelar_type, validate_surface, Edge, EquivelarType, Face, Label,
    SurfaceMap,
};
use crate::proper::{check_proper_tree, classify_proper_type, Component};
use crate::topology::{classify_cycle, CycleClass};
use crate::Error;

/// Exhaustive searches refuse maps with more dual edges than this unless
/// forced; beyond desk scale the worst case is exponential.
pub const SEARCH_EDGE_LIMIT: usize = 60;

/// Which topological class of cycle a search should return.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetClass {
    Any,
    Contractible,
    NonSeparating,
    NoncontractibleSeparating,
}

impl TargetClass {
    pub fn admits(&self, class: CycleClass) -> bool {
        match self {
            TargetClass::Any => true,
            TargetClass::Contractible => class == CycleClass::Contractible,
            TargetClass::NonSeparating => class == CycleClass::NonSeparating,
            TargetClass::NoncontractibleSeparating => {
                class == CycleClass::NoncontractibleSeparating
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    First,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Enumerate,
    DualSubset,
    DiskGrow,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchRequest {
    pub target_class: TargetClass,
    pub mode: SearchMode,
    pub limit: Option<usize>,
    pub algorithm: Algorithm,
    pub force: bool,
}

impl SearchRequest {
    fn effective_limit(&self) -> Option<usize> {
        match self.mode {
            SearchMode::First => Some(1),
            SearchMode::All => self.limit,
        }
    }
}

/// A found cycle with both classifications attached.
#[derive(Debug, Clone, Serialize)]
pub struct HamiltonianResult {
    pub cycle: CycleSpec,
    pub cycle_class: CycleClass,
    pub dual_graph: EdgeSubgraph,
    pub proper_verdict: crate::proper::ProperTypeVerdict,
}

impl HamiltonianResult {
    /// The dual-side verdict predicts exactly this topological class.
    pub fn dictionary_consistent(&self) -> bool {
        self.proper_verdict.verdict.expected_cycle_class() == Some(self.cycle_class)
    }
}

/// Growth state of the disk search: accepted faces in order, the vertices
/// they cover, and how many steps have been taken.
#[derive(Debug, Clone)]
pub struct DiskState {
    pub faces: Vec<usize>,
    pub covered: BTreeSet<Label>,
    pub step: usize,
}

fn package(
    map: &SurfaceMap,
    d: &Duality,
    n: usize,
    cycle: CycleSpec,
) -> Result<HamiltonianResult, Error> {
    let cycle_class = classify_cycle(map, &cycle)?;
    let dual_graph = dual_graph_of_cycle(d, &cycle)?;
    let proper_verdict = classify_proper_type(d.dual(), &dual_graph, n);
    Ok(HamiltonianResult { cycle, cycle_class, dual_graph, proper_verdict })
}

/// Visit every Hamiltonian cycle once, anchored at the smallest vertex
/// with the smaller second vertex, in ascending canonical order. The
/// visitor returns false to stop early.
fn enumerate_with(
    map: &SurfaceMap,
    visit: &mut dyn FnMut(&[Label]) -> Result<bool, Error>,
) -> Result<(), Error> {
    let verts = map.vertices();
    let n = verts.len();
    if n < 3 {
        return Ok(());
    }
    let index: BTreeMap<&Label, usize> =
        verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(n);
    for v in verts {
        let row: Vec<usize> =
            map.neighbors(v).expect("own vertex").iter().map(|u| index[u]).collect();
        adj.push(row);
    }
    let mut path = vec![0usize];
    let mut visited = vec![false; n];
    visited[0] = true;
    dfs_cycles(&adj, verts, &mut path, &mut visited, visit)?;
    Ok(())
}

fn dfs_cycles(
    adj: &[Vec<usize>],
    verts: &[Label],
    path: &mut Vec<usize>,
    visited: &mut [bool],
    visit: &mut dyn FnMut(&[Label]) -> Result<bool, Error>,
) -> Result<bool, Error> {
    let n = adj.len();
    let last = *path.last().expect("path starts at the anchor");
    if path.len() == n {
        if path[1] < path[n - 1] && adj[last].contains(&0) {
            let labels: Vec<Label> = path.iter().map(|&i| verts[i].clone()).collect();
            return visit(&labels);
        }
        return Ok(true);
    }
    for &w in &adj[last] {
        if visited[w] {
            continue;
        }
        visited[w] = true;
        path.push(w);
        let keep_going = dfs_cycles(adj, verts, path, visited, visit)?;
        path.pop();
        visited[w] = false;
        if !keep_going {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All Hamiltonian cycles of the map's edge graph, canonical and ascending.
pub fn enumerate_hamiltonian_cycles(
    map: &SurfaceMap,
    force: bool,
) -> Result<Vec<CycleSpec>, Error> {
    if map.edge_count() > SEARCH_EDGE_LIMIT && !force {
        return Err(Error::TooLarge { edges: map.edge_count(), limit: SEARCH_EDGE_LIMIT });
    }
    let mut out = Vec::new();
    enumerate_with(map, &mut |labels| {
        out.push(CycleSpec::new(map, labels.to_vec())?);
        Ok(true)
    })?;
    Ok(out)
}

/// No contractible Hamiltonian cycle exists on a {p,q} map unless p−2
/// divides n−2: a disk with all n vertices on its boundary and faces of
/// length p has exactly (n−2)/(p−2) faces.
pub fn contractible_prefilter(n: usize, p: usize) -> bool {
    p >= 3 && (n - 2) % (p - 2) == 0
}

fn prefilter_rules_out(map: &SurfaceMap, target: TargetClass) -> bool {
    if target != TargetClass::Contractible {
        return false;
    }
    match equivelar_type(map) {
        Some(t) => !contractible_prefilter(map.vertex_count(), t.p),
        None => false,
    }
}

struct SubsetSearcher<'a> {
    map: &'a SurfaceMap,
    d: &'a Duality,
    n: usize,
    order: Vec<Edge>,
    edge_faces: Vec<[usize; 2]>,
    face_chosen: Vec<usize>,
    face_undecided: Vec<usize>,
    saturated: usize,
    picked: Vec<Edge>,
    req: &'a SearchRequest,
    out: Vec<HamiltonianResult>,
}

impl<'a> SubsetSearcher<'a> {
    /// Returns false when the search should stop (limit reached).
    fn dfs(&mut self, idx: usize) -> Result<bool, Error> {
        let faces = self.face_chosen.len();
        if self.saturated == faces {
            // Every face already has its two edges; the remaining edges
            // are forced out, so this branch contributes one candidate.
            return self.finalize();
        }
        if idx == self.order.len() {
            return Ok(true);
        }
        let [fa, fb] = self.edge_faces[idx];

        if self.face_chosen[fa] < 2 && self.face_chosen[fb] < 2 {
            for f in [fa, fb] {
                self.face_chosen[f] += 1;
                self.face_undecided[f] -= 1;
                if self.face_chosen[f] == 2 {
                    self.saturated += 1;
                }
            }
            self.picked.push(self.order[idx].clone());
            let keep_going = self.dfs(idx + 1)?;
            self.picked.pop();
            for f in [fa, fb] {
                if self.face_chosen[f] == 2 {
                    self.saturated -= 1;
                }
                self.face_chosen[f] -= 1;
                self.face_undecided[f] += 1;
            }
            if !keep_going {
                return Ok(false);
            }
        }

        if self.face_chosen[fa] + self.face_undecided[fa] > 2
            && self.face_chosen[fb] + self.face_undecided[fb] > 2
        {
            self.face_undecided[fa] -= 1;
            self.face_undecided[fb] -= 1;
            let keep_going = self.dfs(idx + 1)?;
            self.face_undecided[fa] += 1;
            self.face_undecided[fb] += 1;
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn finalize(&mut self) -> Result<bool, Error> {
        let g = EdgeSubgraph::new(self.d.dual(), self.picked.iter().cloned())
            .expect("picked edges come from the dual");
        let cycle = match dual_cycle_of_graph(self.d, &g) {
            Ok(cycle) => cycle,
            // Two edges per face but several disjoint face chains.
            Err(Error::NotAdmissible(_)) => return Ok(true),
            Err(e) => return Err(e),
        };
        let result = package(self.map, self.d, self.n, cycle)?;
        if !self.req.target_class.admits(result.cycle_class) {
            return Ok(true);
        }
        self.out.push(result);
        if let Some(limit) = self.req.effective_limit() {
            if self.out.len() >= limit {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Search for Hamiltonian cycles by picking edge subsets of the dual:
/// include/exclude backtracking over dual edges with per-face counters,
/// keeping subsets that give every dual face exactly two edges and chain
/// all faces into one closed sequence.
pub fn subset_search(
    map: &SurfaceMap,
    req: &SearchRequest,
) -> Result<Vec<HamiltonianResult>, Error> {
    let d = build_dual(map)?;
    let host = d.dual();
    if host.edge_count() > SEARCH_EDGE_LIMIT && !req.force {
        return Err(Error::TooLarge { edges: host.edge_count(), limit: SEARCH_EDGE_LIMIT });
    }
    if prefilter_rules_out(map, req.target_class) {
        return Ok(Vec::new());
    }

    // Face-major edge order, so per-face saturation prunes early.
    let mut order: Vec<Edge> = Vec::with_capacity(host.edge_count());
    let mut seen: BTreeSet<Edge> = BTreeSet::new();
    for i in 0..host.face_count() {
        for e in host.face(i).edges() {
            if seen.insert(e.clone()) {
                order.push(e);
            }
        }
    }
    debug_assert_eq!(order.len(), host.edge_count());
    let edge_faces: Vec<[usize; 2]> =
        order.iter().map(|e| host.faces_of_edge(e).expect("dual edge")).collect();
    let face_undecided: Vec<usize> =
        (0..host.face_count()).map(|i| host.face(i).len()).collect();

    let mut searcher = SubsetSearcher {
        map,
        d: &d,
        n: map.vertex_count(),
        order,
        edge_faces,
        face_chosen: vec![0; host.face_count()],
        face_undecided,
        saturated: 0,
        picked: Vec::new(),
        req,
        out: Vec::new(),
    };
    searcher.dfs(0)?;
    let mut out = searcher.out;
    out.sort_by(|a, b| a.cycle.cmp(&b.cycle));
    Ok(out)
}

/// Edges lying in exactly one face of the set.
fn boundary_edges(map: &SurfaceMap, faces: &BTreeSet<usize>) -> BTreeSet<Edge> {
    let mut count: BTreeMap<Edge, usize> = BTreeMap::new();
    for &f in faces {
        for e in map.face(f).edges() {
            *count.entry(e).or_insert(0) += 1;
        }
    }
    count.into_iter().filter(|(_, c)| *c == 1).map(|(e, _)| e).collect()
}

fn boundary_graph(map: &SurfaceMap, faces: &BTreeSet<usize>) -> BTreeMap<Label, BTreeSet<Label>> {
    let mut adj: BTreeMap<Label, BTreeSet<Label>> = BTreeMap::new();
    for e in boundary_edges(map, faces) {
        let (a, b) = e.ends();
        adj.entry(a.clone()).or_default().insert(b.clone());
        adj.entry(b.clone()).or_default().insert(a.clone());
    }
    adj
}

/// Every simple cycle of a small graph, each exactly once: rooted at its
/// smallest vertex, smaller neighbor second.
fn simple_cycles_of(adj: &BTreeMap<Label, BTreeSet<Label>>) -> Vec<Vec<Label>> {
    let verts: Vec<&Label> = adj.keys().collect();
    let index: BTreeMap<&Label, usize> =
        verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let rows: Vec<Vec<usize>> = verts
        .iter()
        .map(|v| adj[*v].iter().map(|u| index[&u]).collect())
        .collect();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut path: Vec<usize> = Vec::new();
    let mut on_path = vec![false; verts.len()];
    for root in 0..verts.len() {
        path.push(root);
        on_path[root] = true;
        cycle_dfs(&rows, root, &mut path, &mut on_path, &mut found);
        on_path[root] = false;
        path.pop();
    }
    found
        .into_iter()
        .map(|idxs| idxs.into_iter().map(|i| verts[i].clone()).collect())
        .collect()
}

fn cycle_dfs(
    rows: &[Vec<usize>],
    root: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    found: &mut Vec<Vec<usize>>,
) {
    let cur = *path.last().expect("path starts at root");
    for &w in &rows[cur] {
        if w == root {
            if path.len() >= 3 && path[1] < cur {
                found.push(path.clone());
            }
        } else if w > root && !on_path[w] {
            path.push(w);
            on_path[w] = true;
            cycle_dfs(rows, root, path, on_path, found);
            on_path[w] = false;
            path.pop();
        }
    }
}

/// Start and length of the unique cyclic run covering all set flags, if
/// the set positions are contiguous and proper (not empty, not the whole
/// cycle).
fn single_cyclic_run(flags: &[bool]) -> Option<(usize, usize)> {
    let count = flags.iter().filter(|&&b| b).count();
    if count == 0 || count == flags.len() {
        return None;
    }
    let n = flags.len();
    let start = (0..n).find(|&i| !flags[(i + n - 1) % n] && flags[i])?;
    if (0..count).all(|k| flags[(start + k) % n]) && !flags[(start + count) % n] {
        Some((start, count))
    } else {
        None
    }
}

/// Replace the arc of `cycle` shared with `face` by the face's complementary
/// arc, if the shared edges are one contiguous arc on both, the result is
/// longer, and it stays a simple cycle.
fn splice(cycle: &[Label], face: &Face) -> Option<Vec<Label>> {
    let len = cycle.len();
    let cycle_edges: Vec<Edge> = (0..len)
        .map(|i| Edge::new(cycle[i].clone(), cycle[(i + 1) % len].clone()).expect("simple"))
        .collect();
    let face_edges = face.edges();
    let shared: BTreeSet<&Edge> =
        cycle_edges.iter().filter(|e| face_edges.contains(e)).collect();
    if shared.is_empty() {
        return None;
    }

    let c_flags: Vec<bool> = cycle_edges.iter().map(|e| shared.contains(e)).collect();
    let (c_start, run) = single_cyclic_run(&c_flags)?;
    let f_flags: Vec<bool> = face_edges.iter().map(|e| shared.contains(e)).collect();
    single_cyclic_run(&f_flags)?;

    let q = face.len();
    if q <= 2 * run {
        return None;
    }

    let u = &cycle[c_start];
    let w = &cycle[(c_start + run) % len];
    let (fwd, back) = face.arcs_between(u, w)?;
    let arc_disjoint =
        |arc: &[Label]| arc.windows(2).all(|p| {
            !shared.contains(&Edge::new(p[0].clone(), p[1].clone()).expect("face arc"))
        });
    let comp = if arc_disjoint(&fwd) { fwd } else { back };
    debug_assert_eq!(comp.len(), q - run + 1);

    let dropped: BTreeSet<&Label> =
        (1..run).map(|k| &cycle[(c_start + k) % len]).collect();
    let kept: BTreeSet<&Label> =
        cycle.iter().filter(|v| !dropped.contains(v)).collect();
    if comp[1..comp.len() - 1].iter().any(|v| kept.contains(v)) {
        return None;
    }

    let mut out: Vec<Label> = comp;
    for k in 1..len - run {
        out.push(cycle[(c_start + run + k) % len].clone());
    }
    debug_assert_eq!(out.len(), len + q - 2 * run);
    Some(out)
}

struct DiskSearch<'a> {
    map: &'a SurfaceMap,
    d: &'a Duality,
    n: usize,
    req: &'a SearchRequest,
    memo: BTreeSet<Vec<usize>>,
}

impl<'a> DiskSearch<'a> {
    fn accepts(&self, class: CycleClass) -> bool {
        class != CycleClass::Contractible && self.req.target_class.admits(class)
    }

    fn verified(&self, order: Vec<Label>) -> Result<Option<HamiltonianResult>, Error> {
        let cycle = CycleSpec::new(self.map, order)?;
        if !cycle.is_hamiltonian(self.map) {
            return Ok(None);
        }
        let result = package(self.map, self.d, self.n, cycle)?;
        if self.accepts(result.cycle_class) {
            Ok(Some(result))
        } else {
            Ok(None)
        }
    }

    fn grow(&mut self, state: &mut DiskState) -> Result<Option<HamiltonianResult>, Error> {
        let mut key: Vec<usize> = state.faces.clone();
        key.sort_unstable();
        if !self.memo.insert(key) {
            return Ok(None);
        }
        let in_disk: BTreeSet<usize> = state.faces.iter().copied().collect();
        let boundary = boundary_edges(self.map, &in_disk);
        let mut candidates = false;
        for f in 0..self.map.face_count() {
            if in_disk.contains(&f) {
                continue;
            }
            let face = self.map.face(f);
            let shared_edges =
                face.edges().iter().filter(|e| boundary.contains(e)).count();
            if shared_edges != 1 {
                continue;
            }
            let shared_vertices =
                face.vertices().iter().filter(|v| state.covered.contains(v)).count();
            if shared_vertices != 2 {
                continue;
            }
            candidates = true;
            let fresh: Vec<Label> = face
                .vertices()
                .iter()
                .filter(|v| !state.covered.contains(v))
                .cloned()
                .collect();
            state.faces.push(f);
            state.covered.extend(fresh.iter().cloned());
            state.step += 1;
            let found = self.grow(state)?;
            state.step -= 1;
            for v in &fresh {
                state.covered.remove(v);
            }
            state.faces.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        if candidates {
            return Ok(None);
        }
        // The disk is maximal: either every vertex is covered or no face
        // extends it as a disk. Read candidate cycles off the boundary of
        // the disk plus one extra face; the extra face pinches the boundary,
        // so none of those cycles bounds the disk.
        self.stuck(&in_disk, &state.covered)
    }

    fn stuck(
        &self,
        in_disk: &BTreeSet<usize>,
        covered: &BTreeSet<Label>,
    ) -> Result<Option<HamiltonianResult>, Error> {
        for f in 0..self.map.face_count() {
            if in_disk.contains(&f) {
                continue;
            }
            if !self.map.face(f).vertices().iter().any(|v| covered.contains(v)) {
                continue;
            }
            let mut set = in_disk.clone();
            set.insert(f);
            let mut cycles = simple_cycles_of(&boundary_graph(self.map, &set));
            // longest first: Hamiltonian candidates verify before any splicing
            cycles.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
            for cycle in cycles {
                if let Some(hit) = self.concatenate_from(cycle, set.clone())? {
                    return Ok(Some(hit));
                }
            }
        }
        Ok(None)
    }

    /// Stretch the cycle by splicing in face boundaries, greedily in face
    /// order, until it covers every vertex or no face helps.
    fn concatenate_from(
        &self,
        mut cycle: Vec<Label>,
        mut used: BTreeSet<usize>,
    ) -> Result<Option<HamiltonianResult>, Error> {
        loop {
            if cycle.len() == self.n {
                return self.verified(cycle);
            }
            let mut improved = false;
            for f in 0..self.map.face_count() {
                if used.contains(&f) {
                    continue;
                }
                if let Some(next) = splice(&cycle, self.map.face(f)) {
                    cycle = next;
                    used.insert(f);
                    improved = true;
                    break;
                }
            }
            if !improved {
                return Ok(None);
            }
        }
    }
}

/// Grow a 2-disk face by face and read a non-contractible Hamiltonian
/// cycle off its boundary, backtracking over growth choices. Requires an
/// equivelar map and a non-contractible target; absence of a result is a
/// legitimate outcome.
pub fn disk_grow_search(
    map: &SurfaceMap,
    req: &SearchRequest,
) -> Result<Option<HamiltonianResult>, Error> {
    if equivelar_type(map).is_none() {
        return Err(Error::BadParameters(
            "disk growth is defined for equivelar maps only".into(),
        ));
    }
    if req.target_class == TargetClass::Contractible {
        return Err(Error::UnsupportedTarget(
            "disk growth finds only non-contractible cycles".into(),
        ));
    }
    let d = build_dual(map)?;
    let mut search = DiskSearch {
        map,
        d: &d,
        n: map.vertex_count(),
        req,
        memo: BTreeSet::new(),
    };
    for start in 0..map.face_count() {
        let mut state = DiskState {
            faces: vec![start],
            covered: map.face(start).vertices().iter().cloned().collect(),
            step: 1,
        };
        if let Some(result) = search.grow(&mut state)? {
            return Ok(Some(result));
        }
    }
    Ok(None)
}

struct TreeSearch<'a> {
    host: &'a SurfaceMap,
    n: usize,
    vertices: BTreeSet<Label>,
    edges: BTreeSet<Edge>,
    touched: BTreeSet<usize>,
    memo: BTreeSet<Vec<Label>>,
}

impl<'a> TreeSearch<'a> {
    fn grow(&mut self) -> Result<Option<EdgeSubgraph>, Error> {
        if self.touched.len() == self.n {
            let t = Component {
                vertices: self.vertices.clone(),
                edges: self.edges.clone(),
            };
            if check_proper_tree(self.host, &t, self.n).verdict {
                return Ok(Some(EdgeSubgraph::new(self.host, self.edges.iter().cloned())?));
            }
            return Ok(None);
        }
        let key: Vec<Label> = self.vertices.iter().cloned().collect();
        if !self.memo.insert(key) {
            return Ok(None);
        }
        let candidates: Vec<Label> =
            self.host.vertices().iter().filter(|w| !self.vertices.contains(w)).cloned().collect();
        for w in candidates {
            let into_tree: Vec<&Label> = self
                .host
                .neighbors(&w)?
                .iter()
                .filter(|x| self.vertices.contains(x))
                .collect();
            if into_tree.len() != 1 {
                continue;
            }
            let e = Edge::new(w.clone(), into_tree[0].clone())?;
            let edge_faces = self.host.faces_of_edge(&e)?;
            let third = *self
                .host
                .faces_of_vertex(&w)?
                .iter()
                .find(|f| !edge_faces.contains(f))
                .expect("a cubic vertex has a face off each of its edges");
            if self.touched.contains(&third) {
                continue;
            }
            self.vertices.insert(w.clone());
            self.edges.insert(e.clone());
            self.touched.insert(third);
            let found = self.grow()?;
            self.touched.remove(&third);
            self.edges.remove(&e);
            self.vertices.remove(&w);
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// Build a proper tree touching every face of `host`, the dual of a
/// triangulation (so `host` is cubic with one face per primal vertex).
/// Grows a tree one vertex at a time: each new vertex hangs off exactly
/// one tree edge and brings exactly one untouched face, so a tree touching
/// all n faces has exactly n−2 vertices.
pub fn construct_proper_tree(
    host: &SurfaceMap,
    n: usize,
) -> Result<Option<EdgeSubgraph>, Error> {
    for v in host.vertices() {
        if host.degree(v)? != 3 {
            return Err(Error::BadParameters(
                "proper tree construction needs a cubic host (dual of a triangulation)".into(),
            ));
        }
    }
    if host.face_count() != n {
        return Err(Error::BadParameters(format!(
            "host has {} faces but the primal is said to have {n} vertices",
            host.face_count()
        )));
    }
    let mut search = TreeSearch {
        host,
        n,
        vertices: BTreeSet::new(),
        edges: BTreeSet::new(),
        touched: BTreeSet::new(),
        memo: BTreeSet::new(),
    };
    for start in host.vertices().to_vec() {
        search.vertices.insert(start.clone());
        search.touched.extend(host.faces_of_vertex(&start)?.iter().copied());
        let found = search.grow()?;
        search.touched.clear();
        search.vertices.clear();
        debug_assert!(search.edges.is_empty());
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Dispatch a search request to the chosen algorithm. Results are in the
/// algorithm's deterministic order: ascending canonical for the enumerator
/// and the subset search in All mode.
pub fn run_search(
    map: &SurfaceMap,
    req: &SearchRequest,
) -> Result<Vec<HamiltonianResult>, Error> {
    match req.algorithm {
        Algorithm::DualSubset => subset_search(map, req),
        Algorithm::DiskGrow => Ok(disk_grow_search(map, req)?.into_iter().collect()),
        Algorithm::Enumerate => {
            if map.edge_count() > SEARCH_EDGE_LIMIT && !req.force {
                return Err(Error::TooLarge {
                    edges: map.edge_count(),
                    limit: SEARCH_EDGE_LIMIT,
                });
            }
            if prefilter_rules_out(map, req.target_class) {
                return Ok(Vec::new());
            }
            let d = build_dual(map)?;
            let n = map.vertex_count();
            let limit = req.effective_limit();
            let mut out = Vec::new();
            enumerate_with(map, &mut |labels| {
                let result = package(map, &d, n, CycleSpec::new(map, labels.to_vec())?)?;
                if req.target_class.admits(result.cycle_class) {
                    out.push(result);
                    if let Some(k) = limit {
                        if out.len() >= k {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            })?;
            Ok(out)
        }
    }
}

/// The standard torus quotient of a {3,6}, {4,4}, or {6,3} grid with
/// `rows` rows, `cols` columns, and a column shift applied where the rows
/// wrap around. Vertices are named `r<i>c<j>`. Degenerate parameters (for
/// instance a 2x2 {4,4} quotient, which doubles edges) are rejected, as is
/// any quotient that fails surface validation or polyhedrality.
pub fn generate_equivelar_torus(
    kind: EquivelarType,
    rows: usize,
    cols: usize,
    shift: i64,
) -> Result<SurfaceMap, Error> {
    if rows == 0 || cols == 0 {
        return Err(Error::BadParameters("rows and cols must be positive".into()));
    }
    let shift = shift.rem_euclid(cols as i64) as usize;
    let vertex = |i: usize, j: usize| -> Label {
        let (i, j) = if i == rows { (0, (j + shift) % cols) } else { (i, j % cols) };
        Label::new(format!("r{i}c{j}")).expect("generated label")
    };
    let mut faces: Vec<Vec<Label>> = Vec::new();
    match (kind.p, kind.q) {
        (4, 4) => {
            for i in 0..rows {
                for j in 0..cols {
                    faces.push(vec![
                        vertex(i, j),
                        vertex(i, j + 1),
                        vertex(i + 1, j + 1),
                        vertex(i + 1, j),
                    ]);
                }
            }
        }
        (3, 6) => {
            for i in 0..rows {
                for j in 0..cols {
                    faces.push(vec![vertex(i, j), vertex(i, j + 1), vertex(i + 1, j)]);
                    faces.push(vec![vertex(i, j + 1), vertex(i + 1, j + 1), vertex(i + 1, j)]);
                }
            }
        }
        (6, 3) => {
            let triangulated = generate_equivelar_torus(
                EquivelarType { p: 3, q: 6 },
                rows,
                cols,
                shift as i64,
            )?;
            let d = build_dual(&triangulated)
                .map_err(|e| Error::BadParameters(format!("degenerate quotient: {e}")))?;
            return checked_generated(d.dual().clone());
        }
        _ => {
            return Err(Error::BadParameters(format!(
                "unsupported torus type {kind}, expected {{3,6}}, {{4,4}} or {{6,3}}"
            )));
        }
    }
    let map = SurfaceMap::from_faces(faces)
        .map_err(|e| Error::BadParameters(format!("degenerate quotient: {e}")))?;
    checked_generated(map)
}

fn checked_generated(map: SurfaceMap) -> Result<SurfaceMap, Error> {
    let v = validate_surface(&map);
    if !v.is_valid() {
        return Err(Error::BadParameters(format!(
            "quotient is not a closed surface: {}",
            v.first_failure().unwrap_or_default()
        )));
    }
    if !check_polyhedral(&map).is_polyhedral {
        return Err(Error::BadParameters("quotient is not polyhedral".into()));
    }
    Ok(map)
}

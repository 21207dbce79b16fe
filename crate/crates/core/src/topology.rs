//! Classifying a simple closed cycle by cutting the surface along it.
//!
//! Cutting along a cycle splits the map's faces into regions that only
//! communicate across non-cycle edges. A cycle with one region does not
//! separate the surface. A cycle with two regions separates it, and bounds
//! a disc exactly when one of the regions is a disc; otherwise it separates
//! without bounding. Euler characteristics of the cut pieces decide which.
//!
//! The count for a cut piece copies vertices and edges along the cut: a
//! cycle edge contributes one copy per side lying in the region, and a
//! cycle vertex contributes one copy per fan, where its umbrella is split
//! into two fans by the two cycle edges at that vertex.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dual::CycleSpec;
use crate::map::{Edge, Label, SurfaceMap};
use crate::Error;

/// Topological type of a simple closed cycle on a closed surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycleClass {
    /// Bounds a disc on one side.
    Contractible,
    /// Cutting along it leaves the surface in one piece.
    NonSeparating,
    /// Separates the surface but bounds no disc.
    NoncontractibleSeparating,
}

impl fmt::Display for CycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleClass::Contractible => "contractible",
            CycleClass::NonSeparating => "non-separating",
            CycleClass::NoncontractibleSeparating => "noncontractible-separating",
        })
    }
}

/// One connected piece of the cut surface: the face indices it contains and
/// the cycle edges it touches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Region {
    pub faces: BTreeSet<usize>,
    pub boundary_edges: BTreeSet<Edge>,
}

/// Split the map's faces into regions reachable from one another without
/// crossing the cycle. Regions are returned ordered by smallest face index.
pub fn regions_of_cycle(map: &SurfaceMap, cycle: &CycleSpec) -> Result<Vec<Region>, Error> {
    let cycle = CycleSpec::new(map, cycle.vertices().to_vec())?;
    let cut = cycle.edge_set();
    let mut region_of = vec![usize::MAX; map.face_count()];
    let mut regions: Vec<Region> = Vec::new();
    for start in 0..map.face_count() {
        if region_of[start] != usize::MAX {
            continue;
        }
        let id = regions.len();
        let mut faces = BTreeSet::new();
        let mut queue = vec![start];
        region_of[start] = id;
        while let Some(f) = queue.pop() {
            faces.insert(f);
            for e in map.face(f).edges() {
                if cut.contains(&e) {
                    continue;
                }
                let [a, b] = map.faces_of_edge(&e)?;
                let g = if a == f { b } else { a };
                if region_of[g] == usize::MAX {
                    region_of[g] = id;
                    queue.push(g);
                }
            }
        }
        regions.push(Region { faces, boundary_edges: BTreeSet::new() });
    }
    for e in &cut {
        for f in map.faces_of_edge(e)? {
            regions[region_of[f]].boundary_edges.insert(e.clone());
        }
    }
    Ok(regions)
}

/// The two fans of faces around a cycle vertex, split where the two cycle
/// edges at that vertex cut its umbrella.
fn fans(map: &SurfaceMap, cut: &BTreeSet<Edge>, v: &Label) -> Result<[Vec<usize>; 2], Error> {
    let umbrella = map.umbrella(v)?;
    let d = umbrella.faces.len();
    let mut cuts = Vec::new();
    for (i, n) in umbrella.neighbors.iter().enumerate() {
        if cut.contains(&Edge::new(v.clone(), n.clone())?) {
            cuts.push(i);
        }
    }
    if cuts.len() != 2 {
        return Err(Error::InvalidSurface(format!(
            "vertex {v} meets the cycle in {} edges, expected 2",
            cuts.len()
        )));
    }
    let (p, q) = (cuts[0], cuts[1]);
    let first: Vec<usize> = (p + 1..=q).map(|i| umbrella.faces[i]).collect();
    let second: Vec<usize> =
        (q + 1..d).chain(0..=p).map(|i| umbrella.faces[i]).collect();
    Ok([first, second])
}

fn checked_region<'a>(region: &Region, all: &'a [Region]) -> Result<&'a Region, Error> {
    all.iter().find(|r| *r == region).ok_or_else(|| {
        Error::MismatchedRegion(format!(
            "region with faces {:?} is not a region of this cycle",
            region.faces
        ))
    })
}

/// Euler characteristic of one cut piece, counting boundary copies as
/// described in the module docs. The region must be one of
/// [`regions_of_cycle`]'s answers for this exact cycle.
pub fn region_euler_characteristic(
    map: &SurfaceMap,
    region: &Region,
    cycle: &CycleSpec,
) -> Result<i64, Error> {
    let all = regions_of_cycle(map, cycle)?;
    checked_region(region, &all)?;
    let cut = cycle.edge_set();

    let f = region.faces.len() as i64;

    let mut e = 0i64;
    for edge in map.edges() {
        let sides = map.faces_of_edge(edge)?;
        if cut.contains(edge) {
            e += sides.iter().filter(|&&s| region.faces.contains(&s)).count() as i64;
        } else if region.faces.contains(&sides[0]) {
            debug_assert!(region.faces.contains(&sides[1]));
            e += 1;
        }
    }

    let mut v = 0i64;
    for vertex in map.vertices() {
        if cycle.contains(vertex) {
            for fan in fans(map, &cut, vertex)? {
                debug_assert!(fan.windows(2).all(|w| region.faces.contains(&w[0])
                    == region.faces.contains(&w[1])));
                if region.faces.contains(&fan[0]) {
                    v += 1;
                }
            }
        } else if map
            .faces_of_vertex(vertex)?
            .iter()
            .all(|s| region.faces.contains(s))
        {
            v += 1;
        }
    }

    Ok(v - e + f)
}

/// Whether a cut piece is a closed disc with the cycle as its full
/// boundary: characteristic 1, each cycle edge on exactly one side in the
/// region, each cycle vertex contributing exactly one fan.
pub fn is_disk(map: &SurfaceMap, region: &Region, cycle: &CycleSpec) -> Result<bool, Error> {
    if region_euler_characteristic(map, region, cycle)? != 1 {
        return Ok(false);
    }
    let cut = cycle.edge_set();
    for edge in &cut {
        let sides = map.faces_of_edge(edge)?;
        if sides.iter().filter(|&&s| region.faces.contains(&s)).count() != 1 {
            return Ok(false);
        }
    }
    for vertex in cycle.vertices() {
        let in_region = fans(map, &cut, vertex)?
            .iter()
            .filter(|fan| region.faces.contains(&fan[0]))
            .count();
        if in_region != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Classify a simple closed cycle by cutting along it.
pub fn classify_cycle(map: &SurfaceMap, cycle: &CycleSpec) -> Result<CycleClass, Error> {
    let regions = regions_of_cycle(map, cycle)?;
    match regions.len() {
        1 => Ok(CycleClass::NonSeparating),
        2 => {
            for region in &regions {
                if is_disk(map, region, cycle)? {
                    return Ok(CycleClass::Contractible);
                }
            }
            Ok(CycleClass::NoncontractibleSeparating)
        }
        n => Err(Error::TooManyRegions(n)),
    }
}

//! Map isomorphism by dart propagation.
//!
//! An isomorphism of maps is a vertex bijection carrying faces onto faces
//! (as cyclic sequences, up to rotation and reflection). For a connected map
//! the whole bijection is forced by the image of a single dart: a directed
//! edge together with one of its two faces. Fixing an anchor dart in `a` and
//! trying every dart of `b` as its image therefore enumerates all
//! isomorphisms.

use std::collections::{BTreeMap, VecDeque};

use crate::map::{Edge, Label, SurfaceMap};
use crate::Error;

/// Face-count ceiling for the dart sweep; above it the propagation is
/// refused rather than left to run long.
pub const ISO_FACE_LIMIT: usize = 60;

/// All isomorphisms from `a` to `b`, as vertex tables. Maps must be
/// connected (anything passing surface validation is). Duplicate tables
/// arising from faces with identical vertex sets are reported once.
pub fn isomorphisms(a: &SurfaceMap, b: &SurfaceMap) -> Result<Vec<BTreeMap<Label, Label>>, Error> {
    let limit = ISO_FACE_LIMIT;
    if a.face_count() > limit || b.face_count() > limit {
        return Err(Error::TooManyFaces { faces: a.face_count().max(b.face_count()), limit });
    }
    let mut found: Vec<BTreeMap<Label, Label>> = Vec::new();
    if a.f_vector() != b.f_vector() || profile(a) != profile(b) {
        return Ok(found);
    }
    // Anchor dart in a: the first boundary edge of face 0, in stored order.
    let f0 = a.face(0);
    let (v0, w0) = (f0.vertices()[0].clone(), f0.vertices()[1].clone());
    for g in 0..b.face_count() {
        let boundary = b.face(g).vertices();
        let n = boundary.len();
        for i in 0..n {
            let x = boundary[i].clone();
            let y = boundary[(i + 1) % n].clone();
            for (from, to) in [(x.clone(), y.clone()), (y, x)] {
                if let Some(table) = propagate(a, b, (&v0, &w0, 0), (&from, &to, g)) {
                    if !found.contains(&table) {
                        found.push(table);
                    }
                }
            }
        }
    }
    Ok(found)
}

/// One isomorphism from `a` to `b`, if any exists.
pub fn find_isomorphism(a: &SurfaceMap, b: &SurfaceMap) -> Result<Option<BTreeMap<Label, Label>>, Error> {
    Ok(isomorphisms(a, b)?.into_iter().next())
}

pub fn is_isomorphic(a: &SurfaceMap, b: &SurfaceMap) -> Result<bool, Error> {
    Ok(find_isomorphism(a, b)?.is_some())
}

/// Rebuild a map with every vertex renamed through `table`. The table must
/// cover every vertex injectively.
pub fn relabel(map: &SurfaceMap, table: &BTreeMap<Label, Label>) -> Result<SurfaceMap, Error> {
    let mut raw = Vec::with_capacity(map.face_count());
    for face in map.faces() {
        let mut boundary = Vec::with_capacity(face.len());
        for v in face.vertices() {
            boundary.push(table.get(v).cloned().ok_or_else(|| Error::UnknownVertex(v.clone()))?);
        }
        raw.push(boundary);
    }
    SurfaceMap::from_faces(raw)
}

/// Cheap invariants that must agree before any dart sweep: sorted face
/// sizes and sorted vertex degrees.
fn profile(m: &SurfaceMap) -> (Vec<usize>, Vec<usize>) {
    let mut sizes: Vec<usize> = m.faces().iter().map(|f| f.len()).collect();
    sizes.sort_unstable();
    let mut degrees: Vec<usize> =
        m.vertices().iter().map(|v| m.degree(v).expect("own vertex")).collect();
    degrees.sort_unstable();
    (sizes, degrees)
}

/// Grow the dart correspondence `anchor_a -> anchor_b` across shared edges.
/// Each face alignment binds its whole boundary, and every bound edge forces
/// the face on its far side; a conflict anywhere kills the candidate.
fn propagate(
    a: &SurfaceMap,
    b: &SurfaceMap,
    anchor_a: (&Label, &Label, usize),
    anchor_b: (&Label, &Label, usize),
) -> Option<BTreeMap<Label, Label>> {
    let mut vmap: BTreeMap<Label, Label> = BTreeMap::new();
    let mut vmap_rev: BTreeMap<Label, Label> = BTreeMap::new();
    let mut fmap: Vec<Option<usize>> = vec![None; a.face_count()];
    let mut fmap_rev: Vec<Option<usize>> = vec![None; b.face_count()];
    let mut queue: VecDeque<(usize, usize, Label, Label, Label, Label)> = VecDeque::new();

    fmap[anchor_a.2] = Some(anchor_b.2);
    fmap_rev[anchor_b.2] = Some(anchor_a.2);
    queue.push_back((
        anchor_a.2,
        anchor_b.2,
        anchor_a.0.clone(),
        anchor_a.1.clone(),
        anchor_b.0.clone(),
        anchor_b.1.clone(),
    ));

    while let Some((fa, fb, v, w, x, y)) = queue.pop_front() {
        let walk_a = walk_from(a, fa, &v, &w)?;
        let walk_b = walk_from(b, fb, &x, &y)?;
        if walk_a.len() != walk_b.len() {
            return None;
        }
        for (va, vb) in walk_a.iter().zip(walk_b.iter()) {
            match (vmap.get(va), vmap_rev.get(vb)) {
                (None, None) => {
                    vmap.insert(va.clone(), vb.clone());
                    vmap_rev.insert(vb.clone(), va.clone());
                }
                (Some(img), Some(pre)) if img == vb && pre == va => {}
                _ => return None,
            }
        }
        let n = walk_a.len();
        for i in 0..n {
            let (pa, qa) = (&walk_a[i], &walk_a[(i + 1) % n]);
            let (pb, qb) = (&walk_b[i], &walk_b[(i + 1) % n]);
            let ea = Edge::new(pa.clone(), qa.clone()).ok()?;
            let eb = Edge::new(pb.clone(), qb.clone()).ok()?;
            let ga = across(a, &ea, fa)?;
            let gb = across(b, &eb, fb)?;
            match (fmap[ga], fmap_rev[gb]) {
                (None, None) => {
                    fmap[ga] = Some(gb);
                    fmap_rev[gb] = Some(ga);
                    queue.push_back((ga, gb, pa.clone(), qa.clone(), pb.clone(), qb.clone()));
                }
                (Some(img), Some(pre)) if img == gb && pre == ga => {}
                _ => return None,
            }
        }
    }

    if fmap.iter().any(|f| f.is_none()) {
        return None; // disconnected input; nothing forced the remaining faces
    }
    debug_assert_eq!(vmap.len(), a.vertex_count());
    Some(vmap)
}

/// The boundary of face `f`, starting at `v` and heading toward its
/// neighbor `w`.
fn walk_from(m: &SurfaceMap, f: usize, v: &Label, w: &Label) -> Option<Vec<Label>> {
    let boundary = m.face(f).vertices();
    let n = boundary.len();
    let i = boundary.iter().position(|u| u == v)?;
    let forward = boundary[(i + 1) % n] == *w;
    if !forward && boundary[(i + n - 1) % n] != *w {
        return None;
    }
    Some(
        (0..n)
            .map(|k| if forward { boundary[(i + k) % n].clone() } else { boundary[(i + n - k) % n].clone() })
            .collect(),
    )
}

/// The face on the other side of `e` from `f`.
fn across(m: &SurfaceMap, e: &Edge, f: usize) -> Option<usize> {
    let [p, q] = m.faces_of_edge(e).ok()?;
    if p == f {
        Some(q)
    } else if q == f {
        Some(p)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::fixtures;
    use crate::map::{label, parse_map};

    #[test]
    fn tetrahedron_has_full_symmetry() {
        let t = parse_map(fixtures::TET).unwrap();
        // |Aut| of the tetrahedron map is 4! = 24: every vertex permutation
        // preserves the face set.
        assert_eq!(isomorphisms(&t, &t).unwrap().len(), 24);
    }

    #[test]
    fn relabeled_map_is_isomorphic() {
        let t = parse_map(fixtures::TET).unwrap();
        let table: BTreeMap<Label, Label> = [("1", "p"), ("2", "q"), ("3", "r"), ("4", "s")]
            .into_iter()
            .map(|(k, v)| (label(k), label(v)))
            .collect();
        let s = relabel(&t, &table).unwrap();
        let found = find_isomorphism(&t, &s).unwrap().expect("isomorphic");
        let back = relabel(&t, &found).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn different_surfaces_are_not_isomorphic() {
        let t = parse_map(fixtures::TET).unwrap();
        let m = parse_map(fixtures::M1).unwrap();
        assert!(!is_isomorphic(&t, &m).unwrap());
    }

    #[test]
    fn orientation_reversal_counts() {
        // A 3-antiprism (octahedron drawn as two triangles and six side
        // triangles) against its mirror image.
        let text = "1 2 3\n4 5 6\n1 2 6\n2 6 4\n2 3 4\n3 4 5\n1 3 5\n1 5 6\n";
        let m = parse_map(text).unwrap();
        let mirrored: Vec<Vec<Label>> = m
            .faces()
            .iter()
            .map(|f| f.vertices().iter().rev().cloned().collect())
            .collect();
        let mm = crate::map::SurfaceMap::from_faces(mirrored).unwrap();
        assert!(is_isomorphic(&m, &mm).unwrap());
    }

    #[test]
    fn seven_vertex_torus_is_vertex_transitive() {
        let m = parse_map(fixtures::M1).unwrap();
        let autos = isomorphisms(&m, &m).unwrap();
        for target in m.vertices() {
            assert!(
                autos.iter().any(|t| t[&label("u11")] == *target),
                "no automorphism sends u11 to {target}"
            );
        }
    }

    #[test]
    fn double_torus_automorphisms_include_identity() {
        let k2 = parse_map(fixtures::K2).unwrap();
        let autos = isomorphisms(&k2, &k2).unwrap();
        assert!(autos.iter().any(|t| t.iter().all(|(k, v)| k == v)));
    }

    #[test]
    fn oversized_maps_are_refused() {
        let m = crate::search::generate_equivelar_torus(
            crate::map::EquivelarType { p: 4, q: 4 },
            8,
            8,
            0,
        )
        .unwrap();
        let err = isomorphisms(&m, &m).unwrap_err();
        assert_eq!(err, Error::TooManyFaces { faces: 64, limit: ISO_FACE_LIMIT });
    }
}

//! Replayable audit of the worked examples shipped with the fixtures:
//! shape checks for the fixture maps, reproduction of the recorded
//! subgraph types and cycle classes on the torus pair, and consistency
//! checks for the double-torus example, which is internally inconsistent
//! as recorded (its cycle covers 16 of 21 vertices).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::dual::{build_dual, dual_graph_of_cycle, CycleSpec, EdgeSubgraph};
use crate::iso::{find_isomorphism, isomorphisms};
use crate::map::{
    check_polyhedral, equivelar_type, parse_map, validate_surface, Edge, EquivelarType, Label,
    SurfaceMap,
};
use crate::proper::{check_admissible, classify_proper_type, ProperType};
use crate::topology::{classify_cycle, CycleClass};
use crate::Error;

/// Map files shipped with the crate: a tetrahedron, a dual pair of torus
/// maps of types {3,6} and {6,3}, and a triangulated double torus.
pub mod fixtures {
    pub const TET: &str = include_str!("../../../fixtures/tet.map");
    pub const M1: &str = include_str!("../../../fixtures/m1.map");
    pub const K1: &str = include_str!("../../../fixtures/k1.map");
    pub const K2: &str = include_str!("../../../fixtures/k2.map");
}

/// Recorded example data for the fixtures: two subgraphs of the {6,3}
/// torus with known proper types, their dual Hamiltonian cycles on the
/// {3,6} torus with known classes, and the double-torus example data with
/// its known defects.
pub mod examples {
    use super::*;

    /// Type-I example on the {6,3} torus: seven chords whose complement
    /// stays connected.
    pub const TYPE1_EDGES: [(&str, &str); 7] = [
        ("v1", "v6"),
        ("v3", "v8"),
        ("v5", "v10"),
        ("v7", "v12"),
        ("v9", "v14"),
        ("v2", "v11"),
        ("v4", "v13"),
    ];

    /// Type-II example on the {6,3} torus: a path plus a matching whose
    /// complement has a proper tree component.
    pub const TYPE2_EDGES: [(&str, &str); 7] = [
        ("v1", "v2"),
        ("v3", "v8"),
        ("v4", "v5"),
        ("v10", "v11"),
        ("v11", "v12"),
        ("v12", "v13"),
        ("v13", "v14"),
    ];

    /// Dual cycle of the type-I example: non-separating.
    pub const NONSEP_CYCLE: [&str; 7] = ["u11", "u12", "u13", "u14", "u15", "u16", "u17"];

    /// Dual cycle of the type-II example: contractible.
    pub const CONTRACTIBLE_CYCLE: [&str; 7] =
        ["u11", "u14", "u15", "u13", "u17", "u12", "u16"];

    /// The recorded dual of the double torus, as shipped: 46 vertices in
    /// 21 faces (three 10-gons, eighteen hexagons).
    pub const DOUBLE_TORUS_DUAL: &str = "\
a1 b7 b6 b5 c5 f1 e1 e2 e3 c6
a1 a2 a3 b9 b8 b7
a3 a4 a5 c2 c1 b9
a5 a6 a7 c4 c3 c2
a7 a8 a9 d5 d4 d3 e9 f1 c5 c4
a9 b1 b2 a2 a1 c6 c7 d7 d6 d5
b2 b3 b4 a4 a3 a2
b4 b5 b6 a6 a5 a4
b6 b7 b8 a8 a7 a6
b8 b9 c1 b1 a9 a8
c1 c2 c3 b3 b2 b1
c3 c4 c5 b5 b4 b3
c6 c7 c8 e5 e4 e3
c8 c9 d1 e7 e6 e5
d1 d2 d3 e9 e8 e7
d7 d8 d9 c9 c8 c7
d9 e1 e2 d2 d1 c9
e2 e3 e4 d4 d3 d2
e4 e5 e6 d6 d5 d4
e6 e7 e8 d8 d7 d6
e8 e9 f1 e1 d9 d8
";

    /// Edge set recorded as a type-III example on the double-torus dual.
    /// Known defect: it has 16 edges, not one per primal vertex (21).
    pub const TYPE3_EDGES: [(&str, &str); 16] = [
        ("a1", "c6"),
        ("a9", "b1"),
        ("b1", "c1"),
        ("b2", "b3"),
        ("b3", "b4"),
        ("c4", "c5"),
        ("e9", "f1"),
        ("e8", "d8"),
        ("d7", "d8"),
        ("c7", "c8"),
        ("e4", "e5"),
        ("e5", "e6"),
        ("d1", "e7"),
        ("d2", "d3"),
        ("d2", "e2"),
        ("e1", "e2"),
    ];

    /// Vertex list recorded with the type-III example. Known defect: 27
    /// entries, with d2 listed twice.
    pub const TYPE3_VERTICES: [&str; 27] = [
        "a1", "c6", "a9", "b1", "c1", "b2", "b3", "b4", "c4", "c5", "e9", "f1", "e8", "d8",
        "d7", "c7", "c8", "e4", "e5", "e6", "d1", "e7", "d2", "d3", "d2", "e2", "e1",
    ];

    /// Cycle recorded as a noncontractible separating Hamiltonian cycle
    /// on the double torus. Known defect: it covers 16 of 21 vertices.
    pub const DOUBLE_TORUS_CYCLE: [&str; 16] =
        ["1", "6", "a", "b", "7", "c", "5", "k", "j", "f", "l", "i", "d", "e", "h", "g"];

    /// Build an edge subgraph of `host` from label pairs.
    pub fn subgraph_of_pairs(
        host: &SurfaceMap,
        pairs: &[(&str, &str)],
    ) -> Result<EdgeSubgraph, Error> {
        let edges: Vec<Edge> = pairs
            .iter()
            .map(|(a, b)| Edge::new(Label::new(*a)?, Label::new(*b)?))
            .collect::<Result<_, _>>()?;
        EdgeSubgraph::new(host, edges)
    }

    /// Build a cycle on `host` from a label sequence.
    pub fn cycle_of_labels(host: &SurfaceMap, labels: &[&str]) -> Result<CycleSpec, Error> {
        let order: Vec<Label> =
            labels.iter().map(|s| Label::new(*s)).collect::<Result<_, _>>()?;
        CycleSpec::new(host, order)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditStatus {
    /// The recorded claim reproduces exactly.
    Pass,
    /// The audit itself could not run the claim (broken fixture or bug).
    Fail,
    /// The claim does not hold of the recorded data; the details name the
    /// exact failed condition.
    Discrepancy,
}

impl fmt::Display for AuditStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AuditStatus::Pass => "pass",
            AuditStatus::Fail => "fail",
            AuditStatus::Discrepancy => "discrepancy",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditCheck {
    pub id: String,
    pub description: String,
    pub status: AuditStatus,
    pub details: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub schema: u32,
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    pub fn count(&self, status: AuditStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn failures(&self) -> usize {
        self.count(AuditStatus::Fail)
    }

    pub fn discrepancies(&self) -> usize {
        self.count(AuditStatus::Discrepancy)
    }
}

fn check(
    id: &str,
    description: &str,
    body: impl FnOnce() -> Result<(AuditStatus, String), Error>,
) -> AuditCheck {
    let (status, details) = match body() {
        Ok(pair) => pair,
        Err(e) => (AuditStatus::Fail, format!("could not run: {e}")),
    };
    AuditCheck { id: id.into(), description: description.into(), status, details }
}

fn shape_check(
    text: &str,
    want: (usize, usize, usize),
    chi: i64,
    kind: Option<EquivelarType>,
) -> Result<(AuditStatus, String), Error> {
    let m = parse_map(text)?;
    let got = (m.vertex_count(), m.edge_count(), m.face_count());
    let poly = check_polyhedral(&m).is_polyhedral;
    let got_kind = equivelar_type(&m);
    let ok = got == want
        && m.euler_characteristic() == chi
        && poly
        && kind.map_or(true, |k| got_kind == Some(k));
    let type_text = match got_kind {
        Some(t) => format!("{t}"),
        None => "none".into(),
    };
    let details = format!(
        "f-vector ({}, {}, {}), chi {}, equivelar type {}, polyhedral {}",
        got.0,
        got.1,
        got.2,
        m.euler_characteristic(),
        type_text,
        poly
    );
    Ok((if ok { AuditStatus::Pass } else { AuditStatus::Discrepancy }, details))
}

fn translate_subgraph(
    g: &EdgeSubgraph,
    table: &BTreeMap<Label, Label>,
    target: &SurfaceMap,
) -> Result<EdgeSubgraph, Error> {
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = e.ends();
            Edge::new(table[a].clone(), table[b].clone())
        })
        .collect::<Result<_, _>>()?;
    EdgeSubgraph::new(target, edges)
}

/// Re-run every recorded claim about the shipped fixtures and report the
/// outcome of each.
pub fn run_audit() -> AuditReport {
    let mut checks = Vec::new();

    checks.push(check(
        "m1-shape",
        "the {3,6} torus fixture has the recorded shape",
        || shape_check(fixtures::M1, (7, 21, 14), 0, Some(EquivelarType { p: 3, q: 6 })),
    ));
    checks.push(check(
        "k1-shape",
        "the {6,3} torus fixture has the recorded shape",
        || shape_check(fixtures::K1, (14, 21, 7), 0, Some(EquivelarType { p: 6, q: 3 })),
    ));
    checks.push(check(
        "k2-shape",
        "the double-torus fixture has the recorded shape",
        || shape_check(fixtures::K2, (21, 69, 46), -2, None),
    ));

    checks.push(check(
        "torus-duality",
        "one isomorphism carries the computed dual of the {3,6} torus onto the {6,3} \
         fixture and both recorded subgraphs onto the dual images of their cycles",
        || {
            let m1 = parse_map(fixtures::M1)?;
            let k1 = parse_map(fixtures::K1)?;
            let d = build_dual(&m1)?;
            let c1 = examples::cycle_of_labels(&m1, &examples::NONSEP_CYCLE)?;
            let c2 = examples::cycle_of_labels(&m1, &examples::CONTRACTIBLE_CYCLE)?;
            let dual_c1 = dual_graph_of_cycle(&d, &c1)?;
            let dual_c2 = dual_graph_of_cycle(&d, &c2)?;
            let g1 = examples::subgraph_of_pairs(&k1, &examples::TYPE1_EDGES)?;
            let g2 = examples::subgraph_of_pairs(&k1, &examples::TYPE2_EDGES)?;
            let tables = isomorphisms(d.dual(), &k1)?;
            let total = tables.len();
            let hit = tables.into_iter().find(|t| {
                translate_subgraph(&dual_c1, t, &k1).is_ok_and(|img| img == g1)
                    && translate_subgraph(&dual_c2, t, &k1).is_ok_and(|img| img == g2)
            });
            Ok(match hit {
                Some(_) => (
                    AuditStatus::Pass,
                    format!("found among {total} isomorphisms of the dual pair"),
                ),
                None => (
                    AuditStatus::Discrepancy,
                    format!(
                        "no isomorphism (of {total}) matches both recorded subgraphs"
                    ),
                ),
            })
        },
    ));

    checks.push(check(
        "type1-graph",
        "the recorded seven-chord subgraph is proper of type I",
        || {
            let k1 = parse_map(fixtures::K1)?;
            let g1 = examples::subgraph_of_pairs(&k1, &examples::TYPE1_EDGES)?;
            let verdict = classify_proper_type(&k1, &g1, 7);
            let details = format!(
                "verdict {}, complement components {}",
                verdict.verdict, verdict.complement_component_count
            );
            let ok = verdict.verdict == ProperType::TypeI;
            Ok((if ok { AuditStatus::Pass } else { AuditStatus::Discrepancy }, details))
        },
    ));

    checks.push(check(
        "type2-graph",
        "the recorded path-plus-matching subgraph is proper of type II",
        || {
            let k1 = parse_map(fixtures::K1)?;
            let g2 = examples::subgraph_of_pairs(&k1, &examples::TYPE2_EDGES)?;
            let verdict = classify_proper_type(&k1, &g2, 7);
            let trees = verdict.tree_flags.iter().filter(|f| f.verdict).count();
            let details = format!(
                "verdict {}, complement components {}, proper tree components {}",
                verdict.verdict, verdict.complement_component_count, trees
            );
            let ok = verdict.verdict == ProperType::TypeII;
            Ok((if ok { AuditStatus::Pass } else { AuditStatus::Discrepancy }, details))
        },
    ));

    checks.push(check(
        "nonseparating-cycle",
        "the consecutive Hamiltonian cycle on the {3,6} torus does not separate",
        || {
            let m1 = parse_map(fixtures::M1)?;
            let c1 = examples::cycle_of_labels(&m1, &examples::NONSEP_CYCLE)?;
            let class = classify_cycle(&m1, &c1)?;
            let ok = class == CycleClass::NonSeparating;
            Ok((
                if ok { AuditStatus::Pass } else { AuditStatus::Discrepancy },
                format!("classified {class}"),
            ))
        },
    ));

    checks.push(check(
        "contractible-cycle",
        "the skipping Hamiltonian cycle on the {3,6} torus bounds a disk",
        || {
            let m1 = parse_map(fixtures::M1)?;
            let c2 = examples::cycle_of_labels(&m1, &examples::CONTRACTIBLE_CYCLE)?;
            let class = classify_cycle(&m1, &c2)?;
            let ok = class == CycleClass::Contractible;
            Ok((
                if ok { AuditStatus::Pass } else { AuditStatus::Discrepancy },
                format!("classified {class}"),
            ))
        },
    ));

    checks.push(check(
        "double-torus-dual",
        "the recorded dual of the double torus is a valid map isomorphic to the \
         computed dual",
        || {
            let k2 = parse_map(fixtures::K2)?;
            let printed = parse_map(examples::DOUBLE_TORUS_DUAL)?;
            let v = validate_surface(&printed);
            if !v.is_valid() {
                return Ok((
                    AuditStatus::Discrepancy,
                    format!(
                        "recorded dual fails validation: {}",
                        v.first_failure().unwrap_or_default()
                    ),
                ));
            }
            let d = build_dual(&k2)?;
            Ok(match find_isomorphism(d.dual(), &printed)? {
                Some(_) => (
                    AuditStatus::Pass,
                    format!(
                        "valid map with f-vector ({}, {}, {}), isomorphic to the computed dual",
                        printed.vertex_count(),
                        printed.edge_count(),
                        printed.face_count()
                    ),
                ),
                None => (
                    AuditStatus::Discrepancy,
                    "recorded dual is a valid map but not isomorphic to the computed dual"
                        .into(),
                ),
            })
        },
    ));

    checks.push(check(
        "type3-graph",
        "the recorded double-torus subgraph is proper of type III",
        || {
            let printed = parse_map(examples::DOUBLE_TORUS_DUAL)?;
            let g3 = examples::subgraph_of_pairs(&printed, &examples::TYPE3_EDGES)?;
            let report = check_admissible(&printed, &g3, 21);
            if !report.is_admissible() {
                return Ok((
                    AuditStatus::Discrepancy,
                    format!("recorded as type III, but {}", report.describe_failure()),
                ));
            }
            let verdict = classify_proper_type(&printed, &g3, 21);
            let ok = verdict.verdict == ProperType::TypeIII;
            Ok((
                if ok { AuditStatus::Pass } else { AuditStatus::Discrepancy },
                format!("verdict {}", verdict.verdict),
            ))
        },
    ));

    checks.push(check(
        "type3-vertex-list",
        "the vertex list recorded with the double-torus subgraph matches its edge span",
        || {
            let printed = parse_map(examples::DOUBLE_TORUS_DUAL)?;
            let g3 = examples::subgraph_of_pairs(&printed, &examples::TYPE3_EDGES)?;
            let span: BTreeSet<String> =
                g3.vertices().iter().map(|v| v.to_string()).collect();
            let mut seen = BTreeSet::new();
            let mut dupes = BTreeSet::new();
            for v in examples::TYPE3_VERTICES {
                if !seen.insert(v) {
                    dupes.insert(v);
                }
            }
            let distinct: BTreeSet<String> = seen.iter().map(|s| s.to_string()).collect();
            if distinct != span {
                return Ok((
                    AuditStatus::Discrepancy,
                    "distinct recorded vertices differ from the edge span".into(),
                ));
            }
            Ok(if dupes.is_empty() {
                (AuditStatus::Pass, format!("{} distinct vertices", distinct.len()))
            } else {
                (
                    AuditStatus::Discrepancy,
                    format!(
                        "lists {} entries but only {} distinct ({} repeated); the distinct \
                         set does match the edge span",
                        examples::TYPE3_VERTICES.len(),
                        distinct.len(),
                        dupes.into_iter().collect::<Vec<_>>().join(", ")
                    ),
                )
            })
        },
    ));

    checks.push(check(
        "double-torus-cycle",
        "the recorded double-torus cycle is a noncontractible separating Hamiltonian cycle",
        || {
            let k2 = parse_map(fixtures::K2)?;
            let c3 = match examples::cycle_of_labels(&k2, &examples::DOUBLE_TORUS_CYCLE) {
                Ok(c) => c,
                Err(e) => {
                    return Ok((
                        AuditStatus::Discrepancy,
                        format!("recorded sequence is not a cycle of the map: {e}"),
                    ));
                }
            };
            if !c3.is_hamiltonian(&k2) {
                let missing: Vec<String> = k2
                    .vertices()
                    .iter()
                    .filter(|v| !c3.contains(v))
                    .map(|v| v.to_string())
                    .collect();
                return Ok((
                    AuditStatus::Discrepancy,
                    format!(
                        "a valid {}-cycle, but not Hamiltonian: it omits {{{}}} of the {} \
                         vertices",
                        c3.len(),
                        missing.join(", "),
                        k2.vertex_count()
                    ),
                ));
            }
            let class = classify_cycle(&k2, &c3)?;
            let ok = class == CycleClass::NoncontractibleSeparating;
            Ok((
                if ok { AuditStatus::Pass } else { AuditStatus::Discrepancy },
                format!("classified {class}"),
            ))
        },
    ));

    checks.push(check(
        "double-torus-correspondence",
        "the recorded subgraph is the dual image of the recorded cycle",
        || {
            let k2 = parse_map(fixtures::K2)?;
            let printed = parse_map(examples::DOUBLE_TORUS_DUAL)?;
            let d = build_dual(&k2)?;
            let c3 = examples::cycle_of_labels(&k2, &examples::DOUBLE_TORUS_CYCLE)?;
            let dual_c3 = dual_graph_of_cycle(&d, &c3)?;
            let g3 = examples::subgraph_of_pairs(&printed, &examples::TYPE3_EDGES)?;
            let tables = isomorphisms(d.dual(), &printed)?;
            let total = tables.len();
            let hit = tables
                .into_iter()
                .find(|t| translate_subgraph(&dual_c3, t, &printed).is_ok_and(|img| img == g3));
            Ok(match hit {
                Some(_) => (
                    AuditStatus::Pass,
                    format!("found among {total} isomorphisms onto the recorded dual"),
                ),
                None => (
                    AuditStatus::Discrepancy,
                    format!(
                        "no isomorphism (of {total}) carries the cycle's dual edges onto \
                         the recorded edge set"
                    ),
                ),
            })
        },
    ));

    AuditReport { schema: 1, checks }
}

//! Polyhedral maps on closed surfaces.
//!
//! A map is given as a list of polygonal faces over named vertices; gluing is
//! implicit in shared edges. On top of that this crate builds dual maps,
//! enumerates Hamiltonian cycles in the edge graph, and classifies each cycle
//! as contractible, non-separating, or noncontractible separating. Two
//! independent classification routes are provided: cutting the surface along
//! the cycle and inspecting the pieces, and checking the structure of the
//! cycle's dual edge set (admissibility, complement components, proper
//! trees). They must agree, and the test suite holds them to that.

pub mod audit;
pub mod cli;
pub mod dual;
pub mod iso;
pub mod map;
pub mod proper;
pub mod search;
pub mod topology;

pub use audit::{run_audit, AuditCheck, AuditReport, AuditStatus};
pub use dual::{build_dual, dual_cycle_of_graph, dual_graph_of_cycle, CycleSpec, Duality, EdgeSubgraph};
pub use iso::{find_isomorphism, is_isomorphic, isomorphisms, relabel};
pub use map::{
    check_polyhedral, equivelar_type, euler_characteristic, is_orientable, parse_map,
    validate_surface, vertex_link, write_map, Edge, EquivelarType, FVector, Face, Label,
    PolyhedralityReport, SurfaceMap, ValidationReport,
};
pub use proper::{
    check_admissible, check_proper_tree, classify_proper_type, complement_components,
    tree_to_type2_graph, AdmissibilityReport, Component, ProperTreeReport, ProperType,
    ProperTypeVerdict,
};
pub use search::{
    construct_proper_tree, contractible_prefilter, disk_grow_search, enumerate_hamiltonian_cycles,
    generate_equivelar_torus, run_search, subset_search, Algorithm, DiskState, HamiltonianResult,
    SearchMode, SearchRequest, TargetClass, SEARCH_EDGE_LIMIT,
};
pub use topology::{classify_cycle, is_disk, region_euler_characteristic, regions_of_cycle, CycleClass, Region};

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("map has no faces")]
    EmptyMap,
    #[error("face has {0} vertices; a face needs at least 3")]
    ShortFace(usize),
    #[error("face repeats vertex {0}")]
    RepeatedVertex(Label),
    #[error("duplicate face: {0}")]
    DuplicateFace(String),
    #[error("edge {edge} lies in {count} faces; every edge of a closed surface lies in exactly 2")]
    EdgeFaceCount { edge: Edge, count: usize },
    #[error("invalid vertex label {0:?}")]
    BadLabel(String),
    #[error("edge endpoints coincide: {0}")]
    LoopEdge(Label),
    #[error("vertex {0} is not in the map")]
    UnknownVertex(Label),
    #[error("edge {0} is not in the map")]
    UnknownEdge(Edge),
    #[error("vertex {0} has no single umbrella cycle; the map is not a surface there")]
    BrokenLink(Label),
    #[error("cycle has {0} vertices; a cycle needs at least 3")]
    CycleTooShort(usize),
    #[error("cycle repeats vertex {0}")]
    CycleRepeats(Label),
    #[error("consecutive cycle vertices {0} and {1} are not joined by an edge")]
    NotAnEdge(Label, Label),
    #[error("input is not a valid closed surface: {0}")]
    InvalidSurface(String),
    #[error("faces {0} and {1} share more than one edge; the dual would have a double edge")]
    DualMultiEdge(String, String),
    #[error("edge set is not admissible: {0}")]
    NotAdmissible(String),
    #[error("edge set is not a proper tree: {0}")]
    NotAProperTree(String),
    #[error("cutting along the cycle produced {0} regions; a cycle on a closed surface yields 1 or 2")]
    TooManyRegions(usize),
    #[error("region does not match a region of the given cycle: {0}")]
    MismatchedRegion(String),
    #[error("map has {edges} edges, above the exhaustive-search limit of {limit}; pass force to run anyway")]
    TooLarge { edges: usize, limit: usize },
    #[error("map has {faces} faces, above the isomorphism-search limit of {limit}")]
    TooManyFaces { faces: usize, limit: usize },
    #[error("unsupported search target: {0}")]
    UnsupportedTarget(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
}
